#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace wdde {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline double sigma_max(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

struct SingularityCheck {
    double smin = 0.0;
    double smax = 0.0;
    double ratio = 0.0;     // smin / smax, 0 when smax == 0
    double abs_det = 0.0;
    bool ok = false;
};

// Scale-aware invertibility gate: accepted iff smin >= threshold * max(smax, scale_hint).
// The hint matters for 1x1 matrices, where smin/smax alone carries no scale.
inline SingularityCheck check_invertible(const Matrix& m, double threshold, double scale_hint = 0.0) {
    SingularityCheck c;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    c.smax = sv(0);
    c.smin = sv(sv.size() - 1);
    c.abs_det = std::abs(m.partialPivLu().determinant());
    const double scale = std::max(c.smax, scale_hint);
    c.ratio = scale > 0.0 ? c.smin / scale : 0.0;
    c.ok = scale > 0.0 && c.smin >= threshold * scale;
    return c;
}

inline double rel_err(const Matrix& a, const Matrix& b) {
    double scale = std::max({1.0, a.norm(), b.norm()});
    return (a - b).norm() / scale;
}

// Deterministic complex-Gaussian source. Box-Muller over mt19937_64 so that
// seeded runs are bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return double(eng_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Complex cgaussian() {
        double re = gaussian();
        double im = gaussian();
        return {re, im};
    }

    Matrix cgaussian_matrix(long rows, long cols) {
        Matrix m(rows, cols);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) m(i, j) = cgaussian();
        return m;
    }

    Vector cgaussian_vector(long n) {
        Vector v(n);
        for (long i = 0; i < n; ++i) v(i) = cgaussian();
        return v;
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// splitmix64, used to derive independent per-trial seeds from one root seed.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace wdde
