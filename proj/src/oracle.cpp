#include "oracle.hpp"

#include "errors.hpp"

#include <Eigen/LU>

namespace wdde {

DenseSystem assemble_dense(const ProblemSpec& ps, const FiberFunction& f) {
    const Kernel& k = ps.kernel;
    const long N = k.max_delay, d = k.d;
    const long ell = ell_of(f.offset, ps.window);
    const long blocks = ell + 2 * N + 1;

    DenseSystem sys;
    sys.n_lo = -N;
    sys.a = Matrix::Zero(blocks * d, blocks * d);
    sys.b = Vector::Zero(blocks * d);

    const bool solve_mode = ps.mode == Mode::SolveInvertibleAlpha;
    for (long i = 0; i < blocks; ++i) {
        const long n = sys.n_lo + i;
        for (long kk = -N; kk <= N; ++kk) {
            const long m = n + kk;
            if (!chi_index(m, ell)) continue;
            sys.a.block(i * d, (m - sys.n_lo) * d, d, d) += k.c(kk);
        }
        if (solve_mode) {
            sys.a.block(i * d, i * d, d, d) += k.alpha;
            sys.b.segment(i * d, d) = f.at(n);
        } else if (n >= 0 && n <= ell) {
            sys.b.segment(i * d, d) = f.at(n);
        } else {
            sys.a.block(i * d, i * d, d, d) -= Matrix::Identity(d, d);
        }
    }
    return sys;
}

SolveReport solve_dense(const ProblemSpec& ps, const SolveOptions& opt) {
    SolveReport rep;
    rep.mode = ps.mode;
    rep.method = "dense";
    const Kernel& k = ps.kernel;
    const long N = k.max_delay, d = k.d;
    const bool solve_mode = ps.mode == Mode::SolveInvertibleAlpha;

    Eigen::PartialPivLU<Matrix> alpha_lu;
    if (solve_mode) alpha_lu.compute(k.alpha);

    for (const auto& f : ps.rhs) {
        const long ell = ell_of(f.offset, ps.window);
        DenseSystem sys = assemble_dense(ps, f);

        SingularityCheck check = check_invertible(sys.a, opt.sv_threshold);
        rep.gates.push_back(GateDiag{"dense", f.offset, check.abs_det, check.ratio});
        if (!check.ok) throw SingularSystem("dense", check.ratio);

        Vector x = sys.a.partialPivLu().solve(sys.b);
        auto block_at = [&](long n) { return x.segment((n - sys.n_lo) * d, d); };

        if (solve_mode) {
            FiberFunction u;
            u.offset = f.offset;
            u.n_lo = f.n_lo;
            for (long n = f.n_lo; n <= f.n_hi(); ++n) {
                if (n >= -N && n <= ell + N)
                    u.samples.push_back(block_at(n));
                else
                    u.samples.push_back(alpha_lu.solve(f.at(n)));
            }
            rep.u.push_back(std::move(u));
        } else {
            FiberFunction p{f.offset, -N, {}};
            for (long n = -N; n <= -1; ++n) p.samples.push_back(block_at(n));
            FiberFunction u{f.offset, 0, {}};
            for (long n = 0; n <= ell; ++n) u.samples.push_back(block_at(n));
            FiberFunction q{f.offset, ell + 1, {}};
            for (long n = ell + 1; n <= ell + N; ++n) q.samples.push_back(block_at(n));
            rep.p.push_back(std::move(p));
            rep.u.push_back(std::move(u));
            rep.q.push_back(std::move(q));
        }
    }

    ResidualStats stats = compute_residual(ps, rep);
    rep.residual_max = stats.residual_max;
    rep.residual_rel = stats.residual_rel;
    rep.f_scale = stats.f_scale;
    return rep;
}

} // namespace wdde
