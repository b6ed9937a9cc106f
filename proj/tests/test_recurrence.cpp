#include "recurrence.hpp"
#include "support.hpp"
#include "words.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace wdde;
using namespace wdde::testsupport;

TEST_CASE("left_product multiplies in step order") {
    Matrix a(2, 2), b(2, 2);
    a << 1, 1, 0, 1;
    b << 1, 0, 2, 1;
    Matrix p = left_product({a, b}); // applied a first, then b
    CHECK(rel_err(p, b * a) == 0.0);
    CHECK(rel_err(p, a * b) > 0.1); // the pair does not commute
    CHECK_THROWS_AS(left_product({}), std::invalid_argument);
}

TEST_CASE("affine stepping and its closed forms coincide") {
    Rng rng(61);
    for (long d : {1L, 3L}) {
        std::vector<Matrix> ms;
        std::vector<Vector> gs;
        for (int k = 0; k < 7; ++k) {
            ms.push_back(rng.cgaussian_matrix(d, d));
            gs.push_back(rng.cgaussian_vector(d));
        }
        Vector w0 = rng.cgaussian_vector(d);

        auto w = iterate_affine(ms, gs, w0);
        REQUIRE(w.size() == 8);
        CHECK((w[0] - w0).norm() == 0.0);
        CHECK((nonstationary_closed_form(ms, gs, w0) - w.back()).norm() <
              1e-10 * (1.0 + w.back().norm()));

        // Homogeneous endpoint is the ordered product against w0.
        std::vector<Vector> zeros(ms.size(), Vector::Zero(d));
        CHECK((nonstationary_closed_form(ms, zeros, w0) - left_product(ms) * w0).norm() <
              1e-10 * (1.0 + w0.norm()));

        // Constant matrix: the stationary form agrees with plain stepping.
        Matrix m = rng.cgaussian_matrix(d, d);
        std::vector<Matrix> repeated(7, m);
        auto wc = iterate_affine(repeated, gs, w0);
        CHECK((stationary_closed_form(m, gs, w0, 7) - wc.back()).norm() <
              1e-9 * (1.0 + wc.back().norm()));
    }
    CHECK_THROWS_AS(iterate_affine({Matrix::Identity(2, 2)}, {}, Vector::Zero(2)),
                    std::invalid_argument);
}

TEST_CASE("companion powers carry the pair sequence in block form") {
    Rng rng(62);
    for (long d : {1L, 2L, 3L}) {
        Matrix beta = rng.cgaussian_matrix(d, d);
        Matrix gamma = rng.cgaussian_matrix(d, d);
        Matrix lift = companion_lift(beta, gamma);

        Matrix direct = lift;
        for (long n = 1; n <= 8; ++n) {
            CHECK(rel_err(direct, companion_power_via_delta(beta, gamma, n)) < 1e-9);
            direct = lift * direct;
        }
    }
    CHECK_THROWS_AS(companion_power_via_delta(Matrix::Identity(1, 1), Matrix::Identity(1, 1), 0),
                    std::invalid_argument);
}

TEST_CASE("companion_lift has the advertised block layout") {
    Matrix beta(2, 2), gamma(2, 2);
    beta << 1, 2, 3, 4;
    gamma << 5, 6, 7, 8;
    Matrix m = companion_lift(beta, gamma);
    REQUIRE(m.rows() == 4);
    CHECK(rel_err(m.topLeftCorner(2, 2), beta) == 0.0);
    CHECK(rel_err(m.topRightCorner(2, 2), gamma) == 0.0);
    CHECK(m.bottomLeftCorner(2, 2).isIdentity(0.0));
    CHECK(m.bottomRightCorner(2, 2).isZero(0.0));
}

TEST_CASE("second-order stepping matches its delta-weighted closed form") {
    Rng rng(63);
    for (long d : {1L, 2L}) {
        Matrix beta = rng.cgaussian_matrix(d, d);
        Matrix gamma = rng.cgaussian_matrix(d, d);
        Vector w0 = rng.cgaussian_vector(d);
        Vector w1 = rng.cgaussian_vector(d);
        std::vector<Vector> gs;
        for (int k = 0; k < 10; ++k) gs.push_back(rng.cgaussian_vector(d));

        auto w = iterate_second_order(beta, gamma, w0, w1, gs, 9);
        REQUIRE(w.size() == 10);
        for (long n = 0; n <= 9; ++n) {
            Vector closed = second_order_closed_form(beta, gamma, w0, w1, gs, n);
            CHECK((closed - w[static_cast<size_t>(n)]).norm() <
                  1e-9 * (1.0 + w[static_cast<size_t>(n)].norm()));
        }

        // The forcing at step 0 never enters: the recurrence starts at k = 1.
        auto gs2 = gs;
        gs2[0] = Vector::Zero(d);
        auto w2 = iterate_second_order(beta, gamma, w0, w1, gs2, 9);
        CHECK((w2.back() - w.back()).norm() == 0.0);
    }
    CHECK_THROWS_AS(iterate_second_order(Matrix::Identity(1, 1), Matrix::Identity(1, 1),
                                         Vector::Zero(1), Vector::Zero(1), {}, 3),
                    std::invalid_argument);
}

TEST_CASE("homogeneous second-order run reproduces the pair sequence columns") {
    // With w0 = 0, w1 = e_j and no forcing, step n lands on delta[n] e_j.
    Rng rng(64);
    Matrix beta = rng.cgaussian_matrix(2, 2);
    Matrix gamma = rng.cgaussian_matrix(2, 2);
    auto delta = delta_seq(beta, gamma, 7);
    std::vector<Vector> gs(8, Vector::Zero(2));
    for (long j = 0; j < 2; ++j) {
        Vector e = Vector::Zero(2);
        e(j) = 1.0;
        auto w = iterate_second_order(beta, gamma, Vector::Zero(2), e, gs, 7);
        for (long n = 0; n <= 7; ++n)
            CHECK((w[static_cast<size_t>(n)] - delta[static_cast<size_t>(n)].col(j)).norm() <
                  1e-9);
    }
}
