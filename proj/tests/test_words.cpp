#include "support.hpp"
#include "words.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

using namespace wdde;
using namespace wdde::testsupport;

TEST_CASE("small word sets are exactly the expected ones") {
    auto d0 = enumerate_delta_words(0);
    CHECK(d0.empty());

    auto d1 = enumerate_delta_words(1);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].runs.empty());
    CHECK(d1[0].display() == "1");

    auto d4 = enumerate_delta_words(4);
    REQUIRE(d4.size() == 3);
    CHECK(d4[0].runs == std::vector<long>{3});
    CHECK(d4[1].runs == std::vector<long>{1, 1});
    CHECK(d4[2].runs == std::vector<long>{0, 1, 1});
    CHECK(d4[0].display() == "b^3");
    CHECK(d4[1].display() == "b g");
    CHECK(d4[2].display() == "g b");

    auto d5 = enumerate_delta_words(5);
    REQUIRE(d5.size() == 5);
    CHECK(d5[0].runs == std::vector<long>{4});
    CHECK(d5[1].runs == std::vector<long>{2, 1});
    CHECK(d5[2].runs == std::vector<long>{1, 1, 1});
    CHECK(d5[3].runs == std::vector<long>{0, 1, 2});
    CHECK(d5[4].runs == std::vector<long>{0, 2});
    CHECK(d5[3].display() == "g b^2");
    CHECK(d5[4].display() == "g^2");
}

TEST_CASE("word counts follow the fibonacci numbers") {
    CHECK(fibonacci(0) == 0);
    CHECK(fibonacci(1) == 1);
    CHECK(fibonacci(2) == 1);
    CHECK(fibonacci(10) == 55);
    CHECK(fibonacci(20) == 6765);
    CHECK_THROWS_AS(fibonacci(-1), std::domain_error);

    for (long n = 0; n <= 20; ++n)
        CHECK(static_cast<long long>(enumerate_delta_words(n).size()) == fibonacci(n));
}

TEST_CASE("words are canonical, distinct, and of the right weight") {
    for (long n = 1; n <= 14; ++n) {
        auto words = enumerate_delta_words(n);
        std::set<std::vector<long>> seen;
        for (const auto& w : words) {
            CHECK(seen.insert(w.runs).second); // no duplicates
            for (size_t i = 1; i < w.runs.size(); ++i) CHECK(w.runs[i] >= 1);
            if (!w.runs.empty() && w.runs.size() > 1) CHECK(w.runs[0] >= 0);
            if (!w.runs.empty() && w.runs.size() == 1) CHECK(w.runs[0] >= 1);
            CHECK(w.b_degree() + 2 * w.g_degree() == n - 1);
        }
    }
}

TEST_CASE("run statistics of a handmade word") {
    WordMonomial w{{0, 2, 3, 1, 2}}; // g^2 b^3 g b^2
    CHECK(w.b_degree() == 5);
    CHECK(w.g_degree() == 3);
    CHECK(w.b_slots() == 2);
    CHECK(w.g_slots() == 2);
    CHECK(w.slot_product() == 12);
    CHECK(w.display() == "g^2 b^3 g b^2");
}

TEST_CASE("left and right stepping produce the same matrices") {
    Rng rng(7101);
    for (long d : {1L, 2L, 3L}) {
        Matrix b = rng.cgaussian_matrix(d, d);
        Matrix g = rng.cgaussian_matrix(d, d);
        auto left = delta_seq(b, g, 12, DeltaSide::Left);
        auto right = delta_seq(b, g, 12, DeltaSide::Right);
        REQUIRE(left.size() == 13);
        CHECK(left[0].isZero(0.0));
        CHECK(left[1].isIdentity(0.0));
        for (size_t k = 0; k < left.size(); ++k) CHECK(rel_err(left[k], right[k]) < 1e-12);
    }
}

TEST_CASE("word expansion reassembles the stepped sequence") {
    Rng rng(88);
    for (long d : {1L, 2L, 3L}) {
        Matrix b = rng.cgaussian_matrix(d, d);
        Matrix g = rng.cgaussian_matrix(d, d);
        auto seq = delta_seq(b, g, 10);
        for (long n = 0; n <= 10; ++n) {
            Matrix sum = Matrix::Zero(d, d);
            for (const auto& w : enumerate_delta_words(n)) sum += eval_word(w, b, g);
            CHECK(rel_err(sum, seq[static_cast<size_t>(n)]) < 1e-10);
            CHECK(rel_err(MatricialPolynomial::delta(n).eval(b, g), seq[static_cast<size_t>(n)]) <
                  1e-10);
        }
    }
}

TEST_CASE("scalar sequences with known terms") {
    Matrix b(1, 1), g(1, 1);

    // beta = -2, gamma = -1: both characteristic roots sit at -1 and the
    // terms grow linearly with alternating sign.
    b(0, 0) = -2.0;
    g(0, 0) = -1.0;
    auto seq = delta_seq(b, g, 6);
    CHECK(seq[2](0, 0) == Complex(-2.0, 0.0));
    CHECK(seq[3](0, 0) == Complex(3.0, 0.0));
    CHECK(seq[4](0, 0) == Complex(-4.0, 0.0));
    CHECK(seq[6](0, 0) == Complex(-6.0, 0.0));
    CHECK_THROWS_AS(binet_scalar_delta({-2.0, 0.0}, {-1.0, 0.0}, 4), std::domain_error);

    b(0, 0) = 1.0;
    g(0, 0) = 1.0;
    CHECK(delta_seq(b, g, 6)[6](0, 0) == Complex(8.0, 0.0));
    CHECK(std::abs(binet_scalar_delta({1.0, 0.0}, {1.0, 0.0}, 6) - Complex(8.0, 0.0)) < 1e-10);

    b(0, 0) = 2.0;
    g(0, 0) = 1.0;
    CHECK(delta_seq(b, g, 4)[4](0, 0) == Complex(12.0, 0.0));
    CHECK(std::abs(binet_scalar_delta({2.0, 0.0}, {1.0, 0.0}, 4) - Complex(12.0, 0.0)) < 1e-10);
}

TEST_CASE("closed form tracks the stepped scalars for random pairs") {
    Rng rng(515);
    for (int i = 0; i < 50; ++i) {
        Complex beta = rng.cgaussian();
        Complex gamma = rng.cgaussian();
        Matrix b(1, 1), g(1, 1);
        b(0, 0) = beta;
        g(0, 0) = gamma;
        auto seq = delta_seq(b, g, 12);
        for (long n = 0; n <= 12; ++n) {
            Complex closed = binet_scalar_delta(beta, gamma, n);
            double scale = std::max(1.0, std::abs(seq[static_cast<size_t>(n)](0, 0)));
            CHECK(std::abs(closed - seq[static_cast<size_t >(n)](0, 0)) / scale < 1e-10);
        }
    }
}

TEST_CASE("coefficient sums of the fourth term") {
    auto poly = MatricialPolynomial::delta(4);
    CHECK(poly.k_sum(3, 0) == Complex(1.0, 0.0));
    CHECK(poly.k_sum(1, 1) == Complex(2.0, 0.0));
    CHECK(poly.k_sum(0, 2) == Complex(0.0, 0.0));
    CHECK(poly.k_tilde_sum(3, 0, 1, 0) == Complex(3.0, 0.0));
    CHECK(poly.k_tilde_sum(1, 1, 1, 1) == Complex(2.0, 0.0));

    auto kt = poly.k_table();
    CHECK(kt.size() == 2);
    CHECK(kt[{3, 0}] == Complex(1.0, 0.0));
    CHECK(kt[{1, 1}] == Complex(2.0, 0.0));

    CHECK(poly.psi(1.0, 1.0) == Complex(3.0, 0.0));
    CHECK(poly.psi_tilde(1.0, 1.0, 1.0, 1.0) == Complex(5.0, 0.0));
    CHECK(poly.is_generic());
}

TEST_CASE("the commutator polynomial has cancelling sums") {
    MatricialPolynomial comm;
    comm.terms.push_back({WordMonomial{{1, 1}}, Complex(1.0, 0.0)});     // b g
    comm.terms.push_back({WordMonomial{{0, 1, 1}}, Complex(-1.0, 0.0)}); // g b
    CHECK(comm.k_sum(1, 1) == Complex(0.0, 0.0));
    CHECK(comm.k_tilde_sum(1, 1, 1, 1) == Complex(0.0, 0.0));
    CHECK(!comm.is_generic());

    // The matrices themselves do not cancel for a non-commuting pair.
    Rng rng(3);
    Matrix b = rng.cgaussian_matrix(2, 2);
    Matrix g = rng.cgaussian_matrix(2, 2);
    CHECK(comm.eval(b, g).norm() > 1e-3);
}

TEST_CASE("upper-triangular model: diagonal part") {
    // On the pair (x I + z E12, y I + t E12) every word evaluates to an upper
    // triangular matrix with constant diagonal x^p y^q, so the diagonal of any
    // combination is the two-variable collapse.
    Rng rng(99);
    for (long n : {2L, 4L, 7L}) {
        auto poly = MatricialPolynomial::delta(n);
        Complex x = rng.cgaussian(), y = rng.cgaussian();
        Complex z = rng.cgaussian(), t = rng.cgaussian();
        for (long d : {2L, 3L}) {
            Matrix b = x * Matrix::Identity(d, d);
            Matrix g = y * Matrix::Identity(d, d);
            b(0, 1) += z;
            g(0, 1) += t;
            Matrix actual = poly.eval(b, g);
            Matrix model = poly.jordan_pair_specialize(x, y, z, t, d);
            for (long i = 0; i < d; ++i)
                CHECK(std::abs(actual(i, i) - model(i, i)) < 1e-10 * (1.0 + std::abs(model(i, i))));
        }
    }
    CHECK_THROWS_AS(MatricialPolynomial::delta(3).jordan_pair_specialize(1.0, 1.0, 1.0, 1.0, 1),
                    std::domain_error);
}

TEST_CASE("upper-triangular model: corner part for single-run powers") {
    // For a word with one run the slot-weighted collapse reproduces the
    // corner of the matrix product exactly: (x I + z E)^a has corner
    // a x^{a-1} z. Multi-run words depart from the product's corner, so the
    // corner check stays on pure powers.
    Rng rng(123);
    for (long a = 1; a <= 5; ++a) {
        MatricialPolynomial pb, pg;
        pb.terms.push_back({WordMonomial{{a}}, Complex(2.0, -1.0)});
        pg.terms.push_back({WordMonomial{{0, a}}, Complex(0.5, 3.0)});
        Complex x = rng.cgaussian(), y = rng.cgaussian();
        Complex z = rng.cgaussian(), t = rng.cgaussian();
        Matrix b = x * Matrix::Identity(2, 2);
        Matrix g = y * Matrix::Identity(2, 2);
        b(0, 1) += z;
        g(0, 1) += t;
        for (const auto& poly : {pb, pg}) {
            Matrix actual = poly.eval(b, g);
            Matrix model = poly.jordan_pair_specialize(x, y, z, t, 2);
            CHECK(std::abs(actual(0, 1) - model(0, 1)) < 1e-10 * (1.0 + std::abs(actual(0, 1))));
        }
    }

    // The all-ones corner of the fourth term: slot weights give 3 + 2 = 5,
    // while the matrix product's corner carries the derivative weight 7.
    auto d4 = MatricialPolynomial::delta(4);
    Matrix b = Matrix::Identity(2, 2), g = Matrix::Identity(2, 2);
    b(0, 1) = 1.0;
    g(0, 1) = 1.0;
    CHECK(d4.jordan_pair_specialize(1.0, 1.0, 1.0, 1.0, 2)(0, 1) == Complex(5.0, 0.0));
    CHECK(d4.eval(b, g)(0, 1) == Complex(7.0, 0.0));
}

TEST_CASE("genericity screening flags the right pair defects") {
    SUBCASE("commuting pair") {
        Matrix b = Matrix::Identity(2, 2), g = 2.0 * Matrix::Identity(2, 2);
        auto failures = genericity_check_pair(b, g, 6, 1e-12);
        REQUIRE(failures.size() == 1);
        CHECK(failures[0].check == "commutator");
        CHECK(failures[0].n == -1);
    }
    SUBCASE("singular gamma") {
        Matrix b = Matrix::Identity(2, 2);
        Matrix g = Matrix::Zero(2, 2);
        g(0, 0) = 1.0;
        auto failures = genericity_check_pair(b, g, 4, 1e-12);
        bool saw_gamma = false;
        for (const auto& f : failures) saw_gamma = saw_gamma || f.check == "gamma";
        CHECK(saw_gamma);
    }
    SUBCASE("a singular term in the sequence") {
        Matrix b(2, 2), g(2, 2);
        b << 1, 1, 0, 1;
        // third term = b^2 + g, arranged to be rank one
        g << -1, -2, 1, -1;
        auto failures = genericity_check_pair(b, g, 3, 1e-12);
        REQUIRE(failures.size() == 1);
        CHECK(failures[0].check == "delta");
        CHECK(failures[0].n == 3);
    }
    SUBCASE("random pairs are clean") {
        auto report = sample_genericity(2, 8, 60, 20260821, 1e-12);
        CHECK(report.all_ok());
        CHECK(report.trials == 60);
        CHECK(report.d == 2);
    }
    SUBCASE("scalar draws skip the commutator check") {
        auto report = sample_genericity(1, 6, 40, 5, 1e-12);
        for (const auto& f : report.failures) CHECK(f.check != "commutator");
    }
    SUBCASE("argument guards") {
        CHECK_THROWS_AS(sample_genericity(0, 6, 1, 1, 1e-12), std::domain_error);
        CHECK_THROWS_AS(sample_genericity(2, 1, 1, 1, 1e-12), std::domain_error);
    }
}

TEST_CASE("screening is deterministic in the seed") {
    auto a = sample_genericity(2, 6, 25, 77, 1e-12);
    auto b = sample_genericity(2, 6, 25, 77, 1e-12);
    CHECK(a.failures.size() == b.failures.size());
    auto c = sample_genericity(2, 6, 25, 78, 1e-12);
    CHECK(c.trials == 25); // different seed still runs the full sweep
}
