#include "fiber.hpp"

#include <cmath>

namespace wdde {

Window make_window(double t0, double tf, double epsilon) {
    if (!(epsilon > 0.0)) throw ProblemError("epsilon must be positive");
    if (!(tf > t0)) throw ProblemError("window requires tf > t0");
    Window w{t0, tf, epsilon, 0};
    long m = static_cast<long>(std::floor((tf - t0) / epsilon));
    // Guard the floor against rounding: step_count is defined by the inequality itself.
    while (t0 + static_cast<double>(m + 1) * epsilon <= tf) ++m;
    while (m > 0 && t0 + static_cast<double>(m) * epsilon > tf) --m;
    w.step_count = m;
    if (w.step_count < 1)
        throw ProblemError("degenerate window: tf - t0 < epsilon (step count 0)");
    return w;
}

FiberCoordinate fiber_of(double t, const Window& w) {
    double delta = t - w.t0;
    long n = static_cast<long>(std::floor(delta / w.epsilon));
    double off = delta - static_cast<double>(n) * w.epsilon;
    if (off < 0.0) {
        --n;
        off = delta - static_cast<double>(n) * w.epsilon;
    }
    if (off >= w.epsilon) {
        ++n;
        off = delta - static_cast<double>(n) * w.epsilon;
    }
    if (off < 0.0) off = 0.0;
    return {off, n};
}

long ell_of(double offset, const Window& w) {
    double tau = w.t0 + offset;
    long n = static_cast<long>(std::floor((w.tf - tau) / w.epsilon));
    while (tau + static_cast<double>(n + 1) * w.epsilon <= w.tf) ++n;
    while (n > 0 && tau + static_cast<double>(n) * w.epsilon > w.tf) --n;
    return n;
}

bool Kernel::operator==(const Kernel& o) const {
    if (d != o.d || max_delay != o.max_delay) return false;
    if (alpha != o.alpha) return false;
    if (coeffs.size() != o.coeffs.size()) return false;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != o.coeffs[i]) return false;
    return true;
}

bool FiberFunction::operator==(const FiberFunction& o) const {
    if (offset != o.offset || n_lo != o.n_lo) return false;
    if (samples.size() != o.samples.size()) return false;
    for (size_t i = 0; i < samples.size(); ++i)
        if (samples[i] != o.samples[i]) return false;
    return true;
}

bool ProblemSpec::operator==(const ProblemSpec& o) const {
    return kernel == o.kernel && window == o.window && mode == o.mode && rhs == o.rhs;
}

const FiberFunction* find_fiber(const std::vector<FiberFunction>& fibers, double offset, double epsilon) {
    const double tol = 1e-9 * epsilon;
    for (const auto& f : fibers)
        if (std::abs(f.offset - offset) <= tol) return &f;
    return nullptr;
}

void validate_problem(const ProblemSpec& ps, double sv_threshold) {
    const Kernel& k = ps.kernel;
    if (k.d < 1) throw ProblemError("dimension d must be >= 1");
    if (k.max_delay < 1) throw ProblemError("delay reach N must be >= 1");
    if (k.alpha.rows() != k.d || k.alpha.cols() != k.d)
        throw ProblemError("inconsistent dimensions", "/alpha");
    if (static_cast<long>(k.coeffs.size()) != 2 * k.max_delay + 1)
        throw ProblemError("coefficient map must cover k = -N..N", "/c");
    for (long j = -k.max_delay; j <= k.max_delay; ++j)
        if (k.c(j).rows() != k.d || k.c(j).cols() != k.d)
            throw ProblemError("inconsistent dimensions", "/c/" + std::to_string(j));
    if (k.c(k.max_delay).isZero(0.0) && k.c(-k.max_delay).isZero(0.0))
        throw ProblemError("N not tight: c[N] and c[-N] are both zero");

    if (ps.mode == Mode::SolveInvertibleAlpha) {
        auto chk = check_invertible(k.alpha, sv_threshold);
        if (!chk.ok) throw ProblemError("alpha not invertible (mode solve)");
    } else {
        if (!k.alpha.isZero(0.0))
            throw ProblemError("alpha must be exactly zero in mode range", "/alpha");
    }

    if (ps.rhs.empty()) throw ProblemError("no fibers given", "/fibers");
    for (size_t i = 0; i < ps.rhs.size(); ++i) {
        const FiberFunction& f = ps.rhs[i];
        const std::string path = "/fibers/" + std::to_string(i);
        if (!(f.offset >= 0.0 && f.offset < ps.window.epsilon))
            throw ProblemError("fiber offset must lie in [0, epsilon)", path + "/offset");
        for (size_t j = 0; j < i; ++j)
            if (ps.rhs[j].offset == f.offset)
                throw ProblemError("duplicate fiber offset", path + "/offset");
        if (f.samples.empty()) throw ProblemError("fiber has no samples", path + "/f");
        for (size_t s = 0; s < f.samples.size(); ++s)
            if (f.samples[s].size() != k.d)
                throw ProblemError("inconsistent dimensions",
                                   path + "/f/" + std::to_string(f.n_lo + static_cast<long>(s)));

        long ell = ell_of(f.offset, ps.window);
        if (ps.mode == Mode::SolveInvertibleAlpha) {
            long lo = -k.max_delay, hi = ell + k.max_delay;
            if (f.n_lo > lo || f.n_hi() < hi)
                throw ProblemError("fiber coverage: need indices [" + std::to_string(lo) + "," +
                                       std::to_string(hi) + "], got [" + std::to_string(f.n_lo) +
                                       "," + std::to_string(f.n_hi()) + "]",
                                   path + "/f");
        } else {
            // Range mode: samples are the interior data g only; the exterior
            // bands are outputs (p, q), so their presence is an error.
            if (f.n_lo != 0 || f.n_hi() != ell)
                throw ProblemError("fiber coverage: range mode needs exactly indices [0," +
                                       std::to_string(ell) + "], got [" + std::to_string(f.n_lo) +
                                       "," + std::to_string(f.n_hi()) + "]",
                                   path + "/f");
        }
    }
}

} // namespace wdde
