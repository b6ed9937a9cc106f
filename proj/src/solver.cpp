#include "solver.hpp"

#include "box.hpp"
#include "errors.hpp"
#include "words.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cstdint>
#include <map>

namespace wdde {

namespace {

void run_gate(std::vector<GateDiag>& gates, const std::string& name,
              std::optional<double> offset, const Matrix& m, double threshold,
              double scale_hint = 0.0) {
    SingularityCheck check = check_invertible(m, threshold, scale_hint);
    gates.push_back(GateDiag{name, offset, check.abs_det, check.ratio});
    if (!check.ok) throw SingularSystem(name, check.ratio);
}

double max_sigma(const std::vector<Matrix>& ms) {
    double s = 0.0;
    for (const auto& m : ms) s = std::max(s, sigma_max(m));
    return s;
}

// ---------------------------------------------------------------------------
// Single-delay reduction.  Along one fiber every in-window value is affine in
// one boundary block (phi in solve mode, the left box value p in range mode):
// u(n) = l[n] phi + v[n].  The first two entries come from the edge equations
// (the n = 0 step has no second-neighbour term, its left neighbour sits
// outside the window); after that both sequences follow the reduced pair
//   beta = -c1^-1 (alpha + c0),  gamma = -c1^-1 c_-1
// (alpha dropped in range mode).

struct N1Reduction {
    Matrix beta;
    Matrix gamma;
    std::vector<Matrix> l;
    std::vector<Vector> v; // left empty when built without a right-hand side
};

N1Reduction n1_reduce(const Kernel& k, const Matrix& c1i, long ell, bool with_alpha,
                      const FiberFunction* f) {
    N1Reduction red;
    Matrix head = with_alpha ? Matrix(k.alpha + k.c(0)) : k.c(0);
    red.beta = -c1i * head;
    red.gamma = -c1i * k.c(-1);

    red.l.reserve(static_cast<size_t>(ell) + 1);
    red.l.push_back(with_alpha ? Matrix(-c1i * k.alpha) : c1i);
    if (ell >= 1) red.l.push_back(red.beta * red.l[0]);
    for (long n = 1; n < ell; ++n)
        red.l.push_back(red.beta * red.l[static_cast<size_t>(n)] +
                        red.gamma * red.l[static_cast<size_t>(n - 1)]);

    if (f) {
        red.v.reserve(static_cast<size_t>(ell) + 1);
        red.v.push_back(with_alpha ? Vector(c1i * f->at(-1)) : Vector(Vector::Zero(k.d)));
        if (ell >= 1) red.v.push_back(red.beta * red.v[0] + c1i * f->at(0));
        for (long n = 1; n < ell; ++n)
            red.v.push_back(red.beta * red.v[static_cast<size_t>(n)] +
                            red.gamma * red.v[static_cast<size_t>(n - 1)] + c1i * f->at(n));
    }
    return red;
}

Matrix c1_inverse(const Kernel& k) { return k.c(1).partialPivLu().inverse(); }

void n1_solve_fiber(const ProblemSpec& ps, const Matrix& c1i,
                    const Eigen::PartialPivLU<Matrix>& alpha_lu, const FiberFunction& f,
                    const SolveOptions& opt, SolveReport& rep) {
    const Kernel& k = ps.kernel;
    const long ell = ell_of(f.offset, ps.window);
    N1Reduction red = n1_reduce(k, c1i, ell, true, &f);
    auto delta = delta_seq(red.beta, red.gamma, ell + 2);
    Matrix theta = k.c(1) * delta[static_cast<size_t>(ell + 2)] * c1i * k.alpha;

    // Scale hint: on 1x1 matrices the raw singular-value ratio of a nonzero
    // scalar is 1, so a structurally-zero theta drowned in rounding noise
    // would pass; compare sigma_min against the natural size of theta's
    // factors instead.
    double hint =
        max_sigma(delta) * sigma_max(k.c(1)) * sigma_max(c1i) * sigma_max(k.alpha);
    run_gate(rep.gates, "theta", f.offset, theta, opt.sv_threshold, hint);

    Vector rhs = f.at(ell) - (k.alpha + k.c(0)) * red.v[static_cast<size_t>(ell)];
    if (ell >= 1) rhs -= k.c(-1) * red.v[static_cast<size_t>(ell - 1)];
    Vector phi = theta.partialPivLu().solve(rhs);

    FiberFunction u;
    u.offset = f.offset;
    u.n_lo = f.n_lo;
    for (long n = f.n_lo; n <= f.n_hi(); ++n) {
        if (n == -1) {
            u.samples.push_back(phi);
        } else if (n >= 0 && n <= ell) {
            u.samples.push_back(red.l[static_cast<size_t>(n)] * phi +
                                red.v[static_cast<size_t>(n)]);
        } else if (n == ell + 1) {
            const Vector& u_ell = u.samples[static_cast<size_t>(ell - f.n_lo)];
            u.samples.push_back(alpha_lu.solve(f.at(n) - k.c(-1) * u_ell));
        } else {
            u.samples.push_back(alpha_lu.solve(f.at(n)));
        }
    }
    rep.u.push_back(std::move(u));
}

void n1_range_fiber(const ProblemSpec& ps, const Matrix& c1i, const FiberFunction& g,
                    const SolveOptions& opt, SolveReport& rep) {
    const Kernel& k = ps.kernel;
    const long ell = ell_of(g.offset, ps.window);
    N1Reduction red = n1_reduce(k, c1i, ell, false, &g);
    auto delta = delta_seq(red.beta, red.gamma, ell + 2);
    Matrix cramer = -delta[static_cast<size_t>(ell + 2)] * c1i;
    double hint = sigma_max(c1i) * max_sigma(delta);
    run_gate(rep.gates, "theta", g.offset, cramer, opt.sv_threshold, hint);

    Vector rhs = g.at(ell) - k.c(0) * red.v[static_cast<size_t>(ell)];
    if (ell >= 1) rhs -= k.c(-1) * red.v[static_cast<size_t>(ell - 1)];
    Vector pval = cramer.partialPivLu().solve(c1i * rhs);

    FiberFunction u;
    u.offset = g.offset;
    u.n_lo = 0;
    for (long n = 0; n <= ell; ++n)
        u.samples.push_back(red.l[static_cast<size_t>(n)] * pval +
                            red.v[static_cast<size_t>(n)]);

    FiberFunction p{g.offset, -1, {pval}};
    FiberFunction q{g.offset, ell + 1, {k.c(-1) * u.samples[static_cast<size_t>(ell)]}};
    rep.u.push_back(std::move(u));
    rep.p.push_back(std::move(p));
    rep.q.push_back(std::move(q));
}

// ---------------------------------------------------------------------------
// General reduction.  The state vector stacks 2N consecutive blocks
//   U(n) = (u(n+N-1), ..., u(n-N));
// the window equation at index n, solved for its most advanced value, gives
// the transition U(n+1) = A(n) U(n) + B(n).  A(n) depends on n only through
// the 2N window gates of its first block row, so factors are memoized by that
// gate pattern (the all-open interior matrix is built once).

class BlockCompanion {
public:
    BlockCompanion(const Kernel& kernel, long ell, Matrix cN_inv)
        : k_(kernel), ell_(ell), cNi_(std::move(cN_inv)) {}

    const Matrix& factor(long n) {
        std::uint64_t mask = 0;
        for (long j = 1; j <= 2 * k_.max_delay; ++j)
            if (chi_index(n + k_.max_delay - j, ell_)) mask |= 1ull << (j - 1);
        auto it = memo_.find(mask);
        if (it == memo_.end()) it = memo_.emplace(mask, build(mask)).first;
        return it->second;
    }

    const Matrix& cN_inv() const { return cNi_; }

private:
    Matrix build(std::uint64_t mask) const {
        const long N = k_.max_delay, d = k_.d;
        Matrix a = Matrix::Zero(2 * N * d, 2 * N * d);
        for (long j = 1; j <= 2 * N; ++j) {
            Matrix blk = Matrix::Zero(d, d);
            if (mask >> (j - 1) & 1) blk = k_.c(N - j);
            if (j == N) blk += k_.alpha;
            if (!blk.isZero(0.0)) a.block(0, (j - 1) * d, d, d) = -(cNi_ * blk);
        }
        for (long r = 2; r <= 2 * N; ++r)
            a.block((r - 1) * d, (r - 2) * d, d, d) = Matrix::Identity(d, d);
        return a;
    }

    const Kernel& k_;
    long ell_;
    Matrix cNi_;
    std::map<std::uint64_t, Matrix> memo_;
};

// Stacked closure rows: equations at n = ell - N + i for i = 1..N, written
// against the blocks of U(ell - N + 1).  Block (i, p) multiplies u(ell+1-p):
// the window gate of that index shuts the coefficient part down at columns
// p >= ell + 2; the alpha part (diagonal in that sense) is never gated.
Matrix build_closure_rows(const Kernel& k, long ell) {
    const long N = k.max_delay, d = k.d;
    Matrix dm = Matrix::Zero(N * d, 2 * N * d);
    for (long i = 1; i <= N; ++i) {
        for (long p = 1; p <= 2 * N; ++p) {
            Matrix blk = Matrix::Zero(d, d);
            long kk = N + 1 - i - p;
            if (kk >= -N && kk <= N && chi_index(ell + 1 - p, ell)) blk = k.c(kk);
            if (p == N + 1 - i) blk += k.alpha;
            if (!blk.isZero(0.0)) dm.block((i - 1) * d, (p - 1) * d, d, d) = blk;
        }
    }
    return dm;
}

void general_solve_fiber(const ProblemSpec& ps, const Matrix& cNi,
                         const Eigen::PartialPivLU<Matrix>& alpha_lu, const FiberFunction& f,
                         const SolveOptions& opt, SolveReport& rep) {
    const Kernel& k = ps.kernel;
    const long N = k.max_delay, d = k.d;
    const long ell = ell_of(f.offset, ps.window);
    const long dim = 2 * N * d;

    BlockCompanion comp(k, ell, cNi);
    Matrix c = Matrix::Identity(dim, dim);
    Vector fvec = Vector::Zero(dim);
    std::vector<Matrix> top_c;
    std::vector<Vector> top_f;
    top_c.reserve(static_cast<size_t>(ell) + 1);
    top_f.reserve(static_cast<size_t>(ell) + 1);
    for (long n = -N; n <= ell - N; ++n) {
        const Matrix& a = comp.factor(n);
        c = a * c;
        fvec = a * fvec;
        fvec.head(d) += cNi * f.at(n);
        top_c.push_back(c.topRows(d));
        top_f.push_back(fvec.head(d));
    }

    Matrix dm = build_closure_rows(k, ell);
    Matrix theta = dm * c;
    Matrix theta1 = theta.leftCols(N * d);
    double hint = sigma_max(dm) * std::max(1.0, sigma_max(c));
    run_gate(rep.gates, "theta", f.offset, theta1, opt.sv_threshold, hint);

    // Start-state blocks below the boundary band never feed a gated entry;
    // fill them from the outside relation anyway when f covers them.
    Vector tail = Vector::Zero(N * d);
    for (long j = N + 1; j <= 2 * N; ++j)
        if (f.covers(-j)) tail.segment((j - N - 1) * d, d) = alpha_lu.solve(f.at(-j));

    Vector rhs(N * d);
    for (long i = 1; i <= N; ++i) rhs.segment((i - 1) * d, d) = f.at(ell - N + i);
    rhs -= dm * fvec;
    rhs -= theta.rightCols(N * d) * tail;
    Vector phi = theta1.partialPivLu().solve(rhs);

    Vector u0(dim);
    u0.head(N * d) = phi;
    u0.tail(N * d) = tail;

    FiberFunction interior;
    interior.offset = f.offset;
    interior.n_lo = 0;
    for (long n = 0; n <= ell; ++n)
        interior.samples.push_back(top_c[static_cast<size_t>(n)] * u0 +
                                   top_f[static_cast<size_t>(n)]);

    FiberFunction u;
    u.offset = f.offset;
    u.n_lo = f.n_lo;
    for (long n = f.n_lo; n <= f.n_hi(); ++n) {
        if (n >= -N && n <= -1) {
            u.samples.push_back(phi.segment((-n - 1) * d, d));
        } else if (n >= 0 && n <= ell) {
            u.samples.push_back(interior.at(n));
        } else if (n > ell && n <= ell + N) {
            u.samples.push_back(alpha_lu.solve(f.at(n) - box_at_direct(k, interior, ell, n)));
        } else {
            u.samples.push_back(alpha_lu.solve(f.at(n)));
        }
    }
    rep.u.push_back(std::move(u));
}

void general_range_fiber(const ProblemSpec& ps, const Matrix& cNi, const FiberFunction& g,
                         const SolveOptions& opt, SolveReport& rep) {
    const Kernel& k = ps.kernel;
    const long N = k.max_delay, d = k.d;
    const long ell = ell_of(g.offset, ps.window);
    const long dim = 2 * N * d;

    // One affine pass: column 0 accumulates the known forcing, column block j
    // the coefficient of the unknown left box value p(-N-1+j).
    BlockCompanion comp(k, ell, cNi);
    Matrix faff = Matrix::Zero(dim, 1 + N * d);
    std::vector<Matrix> tops;
    tops.reserve(static_cast<size_t>(ell) + 1);
    for (long n = -N; n <= ell - N; ++n) {
        const Matrix& a = comp.factor(n);
        faff = a * faff;
        if (n < 0)
            faff.block(0, 1 + (n + N) * d, d, d) += cNi;
        else
            faff.block(0, 0, d, 1) += cNi * g.at(n);
        tops.push_back(faff.topRows(d));
    }

    Matrix dm = build_closure_rows(k, ell);
    Matrix df = dm * faff;
    Matrix theta = -df.rightCols(N * d);
    Vector rhs = df.col(0);
    for (long i = 1; i <= N; ++i) {
        long n = ell - N + i;
        if (n < 0)
            theta.block((i - 1) * d, (n + N) * d, d, d) += Matrix::Identity(d, d);
        else
            rhs.segment((i - 1) * d, d) -= g.at(n);
    }
    double hint = sigma_max(dm) * std::max(1.0, sigma_max(faff.rightCols(N * d))) + 1.0;
    run_gate(rep.gates, "theta", g.offset, theta, opt.sv_threshold, hint);
    Vector pvec = theta.partialPivLu().solve(rhs);

    Vector ext(1 + N * d);
    ext(0) = Complex{1.0, 0.0};
    ext.tail(N * d) = pvec;

    FiberFunction u;
    u.offset = g.offset;
    u.n_lo = 0;
    for (long n = 0; n <= ell; ++n)
        u.samples.push_back(tops[static_cast<size_t>(n)] * ext);

    FiberFunction p;
    p.offset = g.offset;
    p.n_lo = -N;
    for (long j = 1; j <= N; ++j) p.samples.push_back(pvec.segment((j - 1) * d, d));

    FiberFunction q;
    q.offset = g.offset;
    q.n_lo = ell + 1;
    for (long i = 1; i <= N; ++i) q.samples.push_back(box_at_direct(k, u, ell, ell + i));

    rep.u.push_back(std::move(u));
    rep.p.push_back(std::move(p));
    rep.q.push_back(std::move(q));
}

void finish(const ProblemSpec& ps, SolveReport& rep) {
    ResidualStats stats = compute_residual(ps, rep);
    rep.residual_max = stats.residual_max;
    rep.residual_rel = stats.residual_rel;
    rep.f_scale = stats.f_scale;
}

} // namespace

SolveReport solve_n1(const ProblemSpec& ps, const SolveOptions& opt) {
    if (ps.kernel.max_delay != 1) throw ProblemError("n1 method needs max delay N = 1");
    SolveReport rep;
    rep.mode = ps.mode;
    rep.method = "n1";
    const Kernel& k = ps.kernel;
    run_gate(rep.gates, "c1", std::nullopt, k.c(1), opt.sv_threshold);
    Matrix c1i = c1_inverse(k);
    if (ps.mode == Mode::SolveInvertibleAlpha) {
        run_gate(rep.gates, "alpha", std::nullopt, k.alpha, opt.sv_threshold);
        Eigen::PartialPivLU<Matrix> alpha_lu(k.alpha);
        for (const auto& f : ps.rhs) n1_solve_fiber(ps, c1i, alpha_lu, f, opt, rep);
    } else {
        for (const auto& g : ps.rhs) n1_range_fiber(ps, c1i, g, opt, rep);
    }
    finish(ps, rep);
    return rep;
}

SolveReport solve_general(const ProblemSpec& ps, const SolveOptions& opt) {
    SolveReport rep;
    rep.mode = ps.mode;
    rep.method = "general";
    const Kernel& k = ps.kernel;
    run_gate(rep.gates, "cN", std::nullopt, k.c(k.max_delay), opt.sv_threshold);
    Matrix cNi = k.c(k.max_delay).partialPivLu().inverse();
    if (ps.mode == Mode::SolveInvertibleAlpha) {
        run_gate(rep.gates, "alpha", std::nullopt, k.alpha, opt.sv_threshold);
        Eigen::PartialPivLU<Matrix> alpha_lu(k.alpha);
        for (const auto& f : ps.rhs) general_solve_fiber(ps, cNi, alpha_lu, f, opt, rep);
    } else {
        for (const auto& g : ps.rhs) general_range_fiber(ps, cNi, g, opt, rep);
    }
    finish(ps, rep);
    return rep;
}

SolveReport solve_auto(const ProblemSpec& ps, const SolveOptions& opt) {
    return ps.kernel.max_delay == 1 ? solve_n1(ps, opt) : solve_general(ps, opt);
}

Matrix n1_theta_closed(const Kernel& k, long ell) {
    Matrix c1i = c1_inverse(k);
    Matrix beta = -c1i * (k.alpha + k.c(0));
    Matrix gamma = -c1i * k.c(-1);
    auto delta = delta_seq(beta, gamma, ell + 2);
    return k.c(1) * delta[static_cast<size_t>(ell + 2)] * c1i * k.alpha;
}

Matrix n1_theta_direct(const Kernel& k, long ell) {
    Matrix c1i = c1_inverse(k);
    N1Reduction red = n1_reduce(k, c1i, ell, true, nullptr);
    Matrix theta = (k.alpha + k.c(0)) * red.l[static_cast<size_t>(ell)];
    if (ell >= 1) theta += k.c(-1) * red.l[static_cast<size_t>(ell - 1)];
    return theta;
}

Matrix n1_range_cramer_closed(const Kernel& k, long ell) {
    Matrix c1i = c1_inverse(k);
    Matrix beta = -c1i * k.c(0);
    Matrix gamma = -c1i * k.c(-1);
    auto delta = delta_seq(beta, gamma, ell + 2);
    return -delta[static_cast<size_t>(ell + 2)] * c1i;
}

Matrix n1_range_cramer_direct(const Kernel& k, long ell) {
    Matrix c1i = c1_inverse(k);
    N1Reduction red = n1_reduce(k, c1i, ell, false, nullptr);
    Matrix t = k.c(0) * red.l[static_cast<size_t>(ell)];
    if (ell >= 1) t += k.c(-1) * red.l[static_cast<size_t>(ell - 1)];
    return c1i * t;
}

GeneralClosure general_closure_parts(const Kernel& k, long ell) {
    const long N = k.max_delay, d = k.d;
    Matrix cNi = k.c(N).partialPivLu().inverse();
    BlockCompanion comp(k, ell, cNi);
    Matrix c = Matrix::Identity(2 * N * d, 2 * N * d);
    for (long n = -N; n <= ell - N; ++n) c = comp.factor(n) * c;
    Matrix dm = build_closure_rows(k, ell);
    Matrix theta = dm * c;
    return GeneralClosure{c, dm, theta.leftCols(N * d), theta.rightCols(N * d)};
}

ResidualStats compute_residual(const ProblemSpec& ps, const SolveReport& rep) {
    ResidualStats st;
    const Kernel& k = ps.kernel;
    const long N = k.max_delay;
    for (const auto& f : ps.rhs) {
        const FiberFunction* u = find_fiber(rep.u, f.offset, ps.window.epsilon);
        if (!u)
            throw ProblemError("report carries no u fiber at offset " + std::to_string(f.offset));
        const long ell = ell_of(f.offset, ps.window);
        for (long n = f.n_lo; n <= f.n_hi(); ++n)
            st.f_scale = std::max(st.f_scale, f.at(n).norm());

        if (ps.mode == Mode::SolveInvertibleAlpha) {
            for (long n = f.n_lo; n <= f.n_hi(); ++n) {
                Vector r = k.alpha * u->at(n) + box_at_direct(k, *u, ell, n) - f.at(n);
                st.residual_max = std::max(st.residual_max, r.norm());
            }
        } else {
            const FiberFunction* p = find_fiber(rep.p, f.offset, ps.window.epsilon);
            const FiberFunction* q = find_fiber(rep.q, f.offset, ps.window.epsilon);
            if (!p || !q)
                throw ProblemError("report carries no p/q fibers at offset " +
                                   std::to_string(f.offset));
            for (long n = -N; n <= ell + N; ++n) {
                Vector target = n < 0 ? p->at(n) : n <= ell ? f.at(n) : q->at(n);
                Vector r = box_at_direct(k, *u, ell, n) - target;
                st.residual_max = std::max(st.residual_max, r.norm());
            }
        }
    }
    st.residual_rel = st.residual_max / (1.0 + st.f_scale);
    return st;
}

} // namespace wdde
