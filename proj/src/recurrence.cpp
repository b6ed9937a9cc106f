#include "recurrence.hpp"

#include "words.hpp"

#include <stdexcept>

namespace wdde {

Matrix left_product(const std::vector<Matrix>& ms) {
    if (ms.empty()) throw std::invalid_argument("left_product needs at least one factor");
    Matrix p = Matrix::Identity(ms[0].rows(), ms[0].cols());
    for (const auto& m : ms) p = m * p;
    return p;
}

std::vector<Vector> iterate_affine(const std::vector<Matrix>& ms, const std::vector<Vector>& gs,
                                   const Vector& w0) {
    if (ms.size() != gs.size())
        throw std::invalid_argument("iterate_affine: one forcing term per step");
    std::vector<Vector> w;
    w.reserve(ms.size() + 1);
    w.push_back(w0);
    for (size_t k = 0; k < ms.size(); ++k) w.push_back(ms[k] * w.back() + gs[k]);
    return w;
}

Vector nonstationary_closed_form(const std::vector<Matrix>& ms, const std::vector<Vector>& gs,
                                 const Vector& w0) {
    if (ms.size() != gs.size())
        throw std::invalid_argument("nonstationary_closed_form: one forcing term per step");
    const size_t n = ms.size();
    if (n == 0) return w0;
    Vector acc = Vector::Zero(w0.size());
    Matrix suffix = Matrix::Identity(ms[0].rows(), ms[0].cols());
    for (size_t k = n; k-- > 0;) {
        acc += suffix * gs[k];
        suffix = suffix * ms[k];
    }
    return acc + suffix * w0;
}

Vector stationary_closed_form(const Matrix& m, const std::vector<Vector>& gs, const Vector& w0,
                              long n) {
    if (n < 0) throw std::invalid_argument("stationary_closed_form: negative step count");
    if (gs.size() < static_cast<size_t>(n))
        throw std::invalid_argument("stationary_closed_form: one forcing term per step");
    std::vector<Matrix> powers;
    powers.reserve(static_cast<size_t>(n) + 1);
    powers.push_back(Matrix::Identity(m.rows(), m.cols()));
    for (long j = 1; j <= n; ++j) powers.push_back(m * powers.back());
    Vector w = powers[static_cast<size_t>(n)] * w0;
    for (long k = 0; k < n; ++k) w += powers[static_cast<size_t>(n - 1 - k)] * gs[static_cast<size_t>(k)];
    return w;
}

Matrix companion_lift(const Matrix& beta, const Matrix& gamma) {
    const long d = beta.rows();
    Matrix m = Matrix::Zero(2 * d, 2 * d);
    m.topLeftCorner(d, d) = beta;
    m.topRightCorner(d, d) = gamma;
    m.bottomLeftCorner(d, d) = Matrix::Identity(d, d);
    return m;
}

Matrix companion_power_via_delta(const Matrix& beta, const Matrix& gamma, long n) {
    if (n < 1) throw std::invalid_argument("companion_power_via_delta needs n >= 1");
    const long d = beta.rows();
    auto delta = delta_seq(beta, gamma, n + 1);
    Matrix m(2 * d, 2 * d);
    m.topLeftCorner(d, d) = delta[static_cast<size_t>(n + 1)];
    m.topRightCorner(d, d) = delta[static_cast<size_t>(n)] * gamma;
    m.bottomLeftCorner(d, d) = delta[static_cast<size_t>(n)];
    m.bottomRightCorner(d, d) = delta[static_cast<size_t>(n - 1)] * gamma;
    return m;
}

std::vector<Vector> iterate_second_order(const Matrix& beta, const Matrix& gamma, const Vector& w0,
                                         const Vector& w1, const std::vector<Vector>& gs, long n) {
    if (n < 1) throw std::invalid_argument("iterate_second_order needs n >= 1");
    if (n >= 2 && gs.size() < static_cast<size_t>(n))
        throw std::invalid_argument("iterate_second_order: forcing terms g[1..n-1] required");
    std::vector<Vector> w;
    w.reserve(static_cast<size_t>(n) + 1);
    w.push_back(w0);
    w.push_back(w1);
    for (long k = 1; k < n; ++k)
        w.push_back(beta * w[static_cast<size_t>(k)] + gamma * w[static_cast<size_t>(k - 1)] +
                    gs[static_cast<size_t>(k)]);
    return w;
}

Vector second_order_closed_form(const Matrix& beta, const Matrix& gamma, const Vector& w0,
                                const Vector& w1, const std::vector<Vector>& gs, long n) {
    if (n < 0) throw std::invalid_argument("second_order_closed_form: negative index");
    if (n == 0) return w0;
    if (n == 1) return w1;
    if (gs.size() < static_cast<size_t>(n))
        throw std::invalid_argument("second_order_closed_form: forcing terms g[1..n-1] required");
    auto delta = delta_seq(beta, gamma, n);
    Vector w = delta[static_cast<size_t>(n)] * w1 + delta[static_cast<size_t>(n - 1)] * (gamma * w0);
    for (long k = 1; k < n; ++k) w += delta[static_cast<size_t>(n - k)] * gs[static_cast<size_t>(k)];
    return w;
}

} // namespace wdde
