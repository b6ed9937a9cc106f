#pragma once

#include "linalg.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace wdde {

// A word in two noncommuting letters b, g, stored as run-length exponents of
// the alternating form b^{m0} g^{m1} b^{m2} ...  Canonical encoding:
//   - empty `runs` is the empty word (identity),
//   - runs[0] == 0 means the word starts with g,
//   - every other exponent is >= 1.
struct WordMonomial {
    std::vector<long> runs;

    long b_degree() const;      // total exponent of b
    long g_degree() const;      // total exponent of g
    long b_slots() const;       // number of maximal b-runs
    long g_slots() const;       // number of maximal g-runs
    long slot_product() const;  // product of all nonzero run exponents
    std::string display() const;

    bool operator==(const WordMonomial&) const = default;
};

// Words of the n-th term of the two-sided sequence
//   d_0 = 0,  d_1 = 1,  d_{k+1} = b d_k + g d_{k-1}.
// Every word appears with coefficient 1; the count is the n-th Fibonacci
// number and each word satisfies b_degree + 2 * g_degree == n - 1.
std::vector<WordMonomial> enumerate_delta_words(long n);

Matrix eval_word(const WordMonomial& w, const Matrix& b, const Matrix& g);

long long fibonacci(long n); // f(1) = f(2) = 1

// Linear combination of words with complex coefficients.
struct MatricialPolynomial {
    std::vector<std::pair<WordMonomial, Complex>> terms;

    static MatricialPolynomial delta(long n);

    Matrix eval(const Matrix& b, const Matrix& g) const;

    // Sum of coefficients over words of bidegree (p, q), and the slot-weighted
    // variant restricted to words with r b-runs and s g-runs.
    Complex k_sum(long p, long q) const;
    Complex k_tilde_sum(long p, long q, long r, long s) const;
    std::map<std::pair<long, long>, Complex> k_table() const;
    std::map<std::tuple<long, long, long, long>, Complex> k_tilde_table() const;

    // Commutative collapses: psi(x, y) substitutes scalars for both letters;
    // psi_tilde additionally grades each term by its run structure.
    Complex psi(Complex x, Complex y) const;
    Complex psi_tilde(Complex x, Complex y, Complex z, Complex t) const;

    // d x d upper-triangular model of the polynomial evaluated on the pair
    //   b = x I + z E12,  g = y I + t E12:
    // psi(x, y) on the diagonal, psi_tilde(x, y, z, t) in the corner.
    Matrix jordan_pair_specialize(Complex x, Complex y, Complex z, Complex t, long d) const;

    // Nonzero k_table entry and nonzero k_tilde_table entry both exist.
    bool is_generic(double tol = 0.0) const;
};

// Matrix delta sequence d_0..d_n.  Left and right recurrences
//   d_{k+1} = b d_k + g d_{k-1}      (Left)
//   d_{k+1} = d_k b + d_{k-1} g      (Right)
// produce the same matrices; both are exposed so that can be tested.
enum class DeltaSide { Left, Right };
std::vector<Matrix> delta_seq(const Matrix& beta, const Matrix& gamma, long n,
                              DeltaSide side = DeltaSide::Left);

// Closed form for scalar beta, gamma via the characteristic roots
//   lambda = (beta +- sqrt(beta^2 + 4 gamma)) / 2.
// Throws std::domain_error when the discriminant is exactly zero.
Complex binet_scalar_delta(Complex beta, Complex gamma, long n);

// Random-pair screening: draw complex Gaussian pairs and record every draw
// for which some d_n (2 <= n <= n_max) or gamma fails the singular-value
// gate, or (d >= 2) the pair nearly commutes.
struct GenericityFailure {
    long trial = 0;
    long n = 0;          // delta index, or -1 for the gamma / commutator checks
    double value = 0.0;  // offending ratio or relative commutator norm
    std::string check;   // "delta", "gamma", "commutator"
};

struct GenericityReport {
    long d = 0;
    long n_max = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    double threshold = 0.0;
    std::vector<GenericityFailure> failures;
    bool all_ok() const { return failures.empty(); }
};

std::vector<GenericityFailure> genericity_check_pair(const Matrix& beta, const Matrix& gamma,
                                                     long n_max, double threshold,
                                                     long trial = 0);

GenericityReport sample_genericity(long d, long n_max, long trials, std::uint64_t seed,
                                   double threshold);

} // namespace wdde
