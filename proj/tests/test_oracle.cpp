#include "errors.hpp"
#include "oracle.hpp"
#include "solver.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace wdde;
using namespace wdde::testsupport;

namespace {

ProblemSpec ones_solve_problem() {
    ProblemSpec ps;
    ps.mode = Mode::SolveInvertibleAlpha;
    ps.window = make_window(0.0, 2.0, 1.0);
    ps.kernel.d = 1;
    ps.kernel.max_delay = 1;
    ps.kernel.alpha = Matrix::Identity(1, 1);
    for (int i = 0; i < 3; ++i) ps.kernel.coeffs.push_back(Matrix::Ones(1, 1));
    ps.rhs.push_back(FiberFunction{0.0, -1, std::vector<Vector>(5, Vector::Ones(1))});
    return ps;
}

} // namespace

TEST_CASE("dense assembly lays out the gated band") {
    ProblemSpec ps = ones_solve_problem();
    DenseSystem sys = assemble_dense(ps, ps.rhs[0]);
    CHECK(sys.n_lo == -1);
    REQUIRE(sys.a.rows() == 5);
    REQUIRE(sys.a.cols() == 5);

    Matrix expected(5, 5);
    expected << 1, 1, 0, 0, 0, //
        0, 2, 1, 0, 0,         //
        0, 1, 2, 1, 0,         //
        0, 0, 1, 2, 0,         //
        0, 0, 0, 1, 1;
    CHECK(rel_err(sys.a, expected) == 0.0);
    CHECK((sys.b - Vector::Ones(5)).norm() == 0.0);
}

TEST_CASE("dense assembly: bandwidth and exterior columns") {
    ProblemSpec ps = random_problem(909090, 2, 2, 4, Mode::SolveInvertibleAlpha);
    const Kernel& k = ps.kernel;
    long N = k.max_delay, d = k.d;
    long ell = ell_of(ps.rhs[0].offset, ps.window);
    DenseSystem sys = assemble_dense(ps, ps.rhs[0]);
    long blocks = ell + 2 * N + 1;
    REQUIRE(sys.a.rows() == blocks * d);

    for (long i = 0; i < blocks; ++i) {
        for (long j = 0; j < blocks; ++j) {
            Matrix blk = sys.a.block(i * d, j * d, d, d);
            if ((i > j ? i - j : j - i) > N) {
                CHECK(blk.isZero(0.0));
                continue;
            }
            long row_n = sys.n_lo + i, col_n = sys.n_lo + j;
            Matrix want = Matrix::Zero(d, d);
            if (chi_index(col_n, ell)) want = k.c(col_n - row_n);
            if (i == j) want += k.alpha;
            CHECK(rel_err(blk, want) == 0.0);
        }
    }
}

TEST_CASE("dense assembly in range mode marks outputs with -I rows") {
    ProblemSpec ps = ones_solve_problem();
    ps.mode = Mode::RangeOfBox;
    ps.kernel.alpha.setZero();
    ps.rhs[0].n_lo = 0;
    ps.rhs[0].samples.assign(3, Vector::Ones(1));

    DenseSystem sys = assemble_dense(ps, ps.rhs[0]);
    Matrix expected(5, 5);
    expected << -1, 1, 0, 0, 0, //
        0, 1, 1, 0, 0,          //
        0, 1, 1, 1, 0,          //
        0, 0, 1, 1, 0,          //
        0, 0, 0, 1, -1;
    CHECK(rel_err(sys.a, expected) == 0.0);
    Vector want_b(5);
    want_b << 0, 1, 1, 1, 0;
    CHECK((sys.b - want_b).norm() == 0.0);
}

TEST_CASE("reference solution matches the fixture") {
    SolveReport rep = solve_dense(ones_solve_problem());
    CHECK(rep.method == "dense");
    const double expected[5] = {0.5, 0.5, 0.0, 0.5, 0.5};
    for (long n = -1; n <= 3; ++n)
        CHECK(std::abs(rep.u[0].at(n)(0) - Complex(expected[n + 1], 0.0)) < 1e-12);
    CHECK(rep.residual_rel < 1e-12);
    REQUIRE(rep.gates.size() == 1);
    CHECK(rep.gates[0].name == "dense");
    CHECK(rep.gates[0].offset.has_value());
}

TEST_CASE("structured and dense routes agree on random problems") {
    for (std::uint64_t seed = 1; seed <= 24; ++seed) {
        long d = 1 + static_cast<long>(seed % 2);
        long nn = 1 + static_cast<long>(seed % 3);

        ProblemSpec ps = random_problem(split_seed(1111, seed), d, nn, 6,
                                        Mode::SolveInvertibleAlpha, 2);
        SolveReport fast = solve_auto(ps);
        SolveReport ref = solve_dense(ps);
        REQUIRE(fast.u.size() == ref.u.size());
        for (size_t i = 0; i < fast.u.size(); ++i)
            for (long n = fast.u[i].n_lo; n <= fast.u[i].n_hi(); ++n)
                CHECK((fast.u[i].at(n) - ref.u[i].at(n)).norm() <
                      1e-8 * (1.0 + ref.u[i].at(n).norm()));

        ProblemSpec pr = random_problem(split_seed(2222, seed), d, nn, 6, Mode::RangeOfBox, 2);
        SolveReport rfast = solve_auto(pr);
        SolveReport rref = solve_dense(pr);
        for (size_t i = 0; i < rfast.u.size(); ++i) {
            long ell = ell_of(pr.rhs[i].offset, pr.window);
            for (long n = 0; n <= ell; ++n)
                CHECK((rfast.u[i].at(n) - rref.u[i].at(n)).norm() <
                      1e-8 * (1.0 + rref.u[i].at(n).norm()));
            for (long n = -nn; n <= -1; ++n)
                CHECK((rfast.p[i].at(n) - rref.p[i].at(n)).norm() <
                      1e-8 * (1.0 + rref.p[i].at(n).norm()));
            for (long n = ell + 1; n <= ell + nn; ++n)
                CHECK((rfast.q[i].at(n) - rref.q[i].at(n)).norm() <
                      1e-8 * (1.0 + rref.q[i].at(n).norm()));
        }
    }
}

TEST_CASE("reference route refuses the resonant kernel too") {
    Complex w = std::polar(1.0, 2.0 * M_PI / 5.0);
    ProblemSpec ps;
    ps.mode = Mode::SolveInvertibleAlpha;
    ps.window = make_window(0.0, 3.0, 1.0);
    ps.kernel.d = 1;
    ps.kernel.max_delay = 1;
    ps.kernel.alpha = Matrix::Identity(1, 1);
    ps.kernel.coeffs.assign(3, Matrix::Zero(1, 1));
    ps.kernel.c(-1)(0, 0) = w;
    ps.kernel.c(0)(0, 0) = -2.0 - w;
    ps.kernel.c(1)(0, 0) = 1.0;
    ps.rhs.push_back(FiberFunction{0.0, -1, std::vector<Vector>(6, Vector::Ones(1))});

    try {
        solve_dense(ps);
        CHECK(false);
    } catch (const SingularSystem& e) {
        CHECK(e.name() == "dense");
        CHECK(e.ratio() < 1e-12);
    }
}
