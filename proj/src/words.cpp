#include "words.hpp"

#include <stdexcept>

namespace wdde {

namespace {

// Letter of run i: b on even positions, g on odd ones.
bool is_b_run(size_t i) { return i % 2 == 0; }

WordMonomial prepend_b(WordMonomial w) {
    if (w.runs.empty())
        w.runs = {1};
    else if (w.runs[0] == 0)
        w.runs[0] = 1;
    else
        ++w.runs[0];
    return w;
}

WordMonomial prepend_g(WordMonomial w) {
    if (w.runs.empty())
        w.runs = {0, 1};
    else if (w.runs[0] == 0)
        ++w.runs[1];
    else
        w.runs.insert(w.runs.begin(), {0, 1});
    return w;
}

} // namespace

long WordMonomial::b_degree() const {
    long p = 0;
    for (size_t i = 0; i < runs.size(); i += 2) p += runs[i];
    return p;
}

long WordMonomial::g_degree() const {
    long q = 0;
    for (size_t i = 1; i < runs.size(); i += 2) q += runs[i];
    return q;
}

long WordMonomial::b_slots() const {
    long r = 0;
    for (size_t i = 0; i < runs.size(); i += 2)
        if (runs[i] > 0) ++r;
    return r;
}

long WordMonomial::g_slots() const {
    long s = 0;
    for (size_t i = 1; i < runs.size(); i += 2)
        if (runs[i] > 0) ++s;
    return s;
}

long WordMonomial::slot_product() const {
    long prod = 1;
    for (long m : runs)
        if (m > 0) prod *= m;
    return prod;
}

std::string WordMonomial::display() const {
    if (runs.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < runs.size(); ++i) {
        if (runs[i] == 0) continue;
        if (!out.empty()) out += ' ';
        out += is_b_run(i) ? 'b' : 'g';
        if (runs[i] > 1) out += '^' + std::to_string(runs[i]);
    }
    return out;
}

std::vector<WordMonomial> enumerate_delta_words(long n) {
    if (n < 0) throw std::domain_error("delta word index must be >= 0");
    // w[k] holds the word set of d_k; d_0 is empty, d_1 is the identity word.
    std::vector<std::vector<WordMonomial>> w(static_cast<size_t>(std::max<long>(n, 1)) + 1);
    w[0] = {};
    if (n >= 1) w[1] = {WordMonomial{}};
    for (long k = 2; k <= n; ++k) {
        auto& out = w[static_cast<size_t>(k)];
        out.reserve(w[static_cast<size_t>(k - 1)].size() + w[static_cast<size_t>(k - 2)].size());
        for (const auto& word : w[static_cast<size_t>(k - 1)]) out.push_back(prepend_b(word));
        for (const auto& word : w[static_cast<size_t>(k - 2)]) out.push_back(prepend_g(word));
    }
    return w[static_cast<size_t>(n)];
}

Matrix eval_word(const WordMonomial& w, const Matrix& b, const Matrix& g) {
    const long d = b.rows();
    Matrix acc = Matrix::Identity(d, d);
    for (size_t i = 0; i < w.runs.size(); ++i) {
        const Matrix& letter = is_b_run(i) ? b : g;
        for (long m = 0; m < w.runs[i]; ++m) acc = acc * letter;
    }
    return acc;
}

long long fibonacci(long n) {
    if (n < 0) throw std::domain_error("fibonacci index must be >= 0");
    long long a = 0, b = 1; // f(0), f(1)
    for (long k = 0; k < n; ++k) {
        long long next = a + b;
        a = b;
        b = next;
    }
    return a;
}

MatricialPolynomial MatricialPolynomial::delta(long n) {
    MatricialPolynomial poly;
    for (auto& w : enumerate_delta_words(n)) poly.terms.emplace_back(std::move(w), Complex{1.0, 0.0});
    return poly;
}

Matrix MatricialPolynomial::eval(const Matrix& b, const Matrix& g) const {
    const long d = b.rows();
    Matrix acc = Matrix::Zero(d, d);
    for (const auto& [word, kappa] : terms) acc += kappa * eval_word(word, b, g);
    return acc;
}

Complex MatricialPolynomial::k_sum(long p, long q) const {
    Complex acc{};
    for (const auto& [word, kappa] : terms)
        if (word.b_degree() == p && word.g_degree() == q) acc += kappa;
    return acc;
}

Complex MatricialPolynomial::k_tilde_sum(long p, long q, long r, long s) const {
    Complex acc{};
    for (const auto& [word, kappa] : terms)
        if (word.b_degree() == p && word.g_degree() == q && word.b_slots() == r &&
            word.g_slots() == s)
            acc += static_cast<double>(word.slot_product()) * kappa;
    return acc;
}

std::map<std::pair<long, long>, Complex> MatricialPolynomial::k_table() const {
    std::map<std::pair<long, long>, Complex> table;
    for (const auto& [word, kappa] : terms) table[{word.b_degree(), word.g_degree()}] += kappa;
    return table;
}

std::map<std::tuple<long, long, long, long>, Complex> MatricialPolynomial::k_tilde_table() const {
    std::map<std::tuple<long, long, long, long>, Complex> table;
    for (const auto& [word, kappa] : terms)
        table[{word.b_degree(), word.g_degree(), word.b_slots(), word.g_slots()}] +=
            static_cast<double>(word.slot_product()) * kappa;
    return table;
}

Complex MatricialPolynomial::psi(Complex x, Complex y) const {
    Complex acc{};
    for (const auto& [key, coeff] : k_table())
        acc += coeff * std::pow(x, key.first) * std::pow(y, key.second);
    return acc;
}

Complex MatricialPolynomial::psi_tilde(Complex x, Complex y, Complex z, Complex t) const {
    Complex acc{};
    for (const auto& [key, coeff] : k_tilde_table()) {
        auto [p, q, r, s] = key;
        acc += coeff * std::pow(x, p - r) * std::pow(y, q - s) * std::pow(z, r) * std::pow(t, s);
    }
    return acc;
}

Matrix MatricialPolynomial::jordan_pair_specialize(Complex x, Complex y, Complex z, Complex t,
                                                   long d) const {
    if (d < 2) throw std::domain_error("jordan pair model needs d >= 2");
    Matrix m = psi(x, y) * Matrix::Identity(d, d);
    m(0, 1) = psi_tilde(x, y, z, t);
    return m;
}

bool MatricialPolynomial::is_generic(double tol) const {
    bool has_k = false, has_k_tilde = false;
    for (const auto& [key, coeff] : k_table())
        if (std::abs(coeff) > tol) has_k = true;
    for (const auto& [key, coeff] : k_tilde_table())
        if (std::abs(coeff) > tol) has_k_tilde = true;
    return has_k && has_k_tilde;
}

std::vector<Matrix> delta_seq(const Matrix& beta, const Matrix& gamma, long n, DeltaSide side) {
    if (n < 0) throw std::domain_error("delta sequence length must be >= 0");
    const long d = beta.rows();
    std::vector<Matrix> seq;
    seq.reserve(static_cast<size_t>(n) + 1);
    seq.push_back(Matrix::Zero(d, d));
    if (n >= 1) seq.push_back(Matrix::Identity(d, d));
    for (long k = 2; k <= n; ++k) {
        const Matrix& prev = seq[static_cast<size_t>(k - 1)];
        const Matrix& prev2 = seq[static_cast<size_t>(k - 2)];
        seq.push_back(side == DeltaSide::Left ? Matrix(beta * prev + gamma * prev2)
                                              : Matrix(prev * beta + prev2 * gamma));
    }
    return seq;
}

Complex binet_scalar_delta(Complex beta, Complex gamma, long n) {
    Complex disc = beta * beta + 4.0 * gamma;
    if (disc == Complex{0.0, 0.0})
        throw std::domain_error("coincident characteristic roots: beta^2 + 4 gamma == 0");
    Complex root = std::sqrt(disc);
    Complex lp = (beta + root) / 2.0;
    Complex lm = (beta - root) / 2.0;
    return (std::pow(lp, n) - std::pow(lm, n)) / root;
}

std::vector<GenericityFailure> genericity_check_pair(const Matrix& beta, const Matrix& gamma,
                                                     long n_max, double threshold, long trial) {
    std::vector<GenericityFailure> failures;
    const long d = beta.rows();

    auto gate = check_invertible(gamma, threshold);
    if (!gate.ok) failures.push_back({trial, -1, gate.ratio, "gamma"});

    auto seq = delta_seq(beta, gamma, n_max);
    for (long n = 2; n <= n_max; ++n) {
        auto check = check_invertible(seq[static_cast<size_t>(n)], threshold);
        if (!check.ok) failures.push_back({trial, n, check.ratio, "delta"});
    }

    if (d >= 2) {
        double scale = beta.norm() * gamma.norm();
        double comm = (beta * gamma - gamma * beta).norm();
        if (comm < threshold * scale) failures.push_back({trial, -1, comm, "commutator"});
    }
    return failures;
}

GenericityReport sample_genericity(long d, long n_max, long trials, std::uint64_t seed,
                                   double threshold) {
    if (d < 1) throw std::domain_error("dimension must be >= 1");
    if (n_max < 2) throw std::domain_error("n_max must be >= 2");
    GenericityReport report{d, n_max, trials, seed, threshold, {}};
    for (long trial = 0; trial < trials; ++trial) {
        Rng rng(split_seed(seed, static_cast<std::uint64_t>(trial)));
        Matrix beta = rng.cgaussian_matrix(d, d);
        Matrix gamma = rng.cgaussian_matrix(d, d);
        auto failures = genericity_check_pair(beta, gamma, n_max, threshold, trial);
        report.failures.insert(report.failures.end(), failures.begin(), failures.end());
    }
    return report;
}

} // namespace wdde
