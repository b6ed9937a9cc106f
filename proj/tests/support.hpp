#pragma once

#include "fiber.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

// Shared draw helpers for the randomized suites.  Everything is seeded
// explicitly so failures replay.
namespace wdde::testsupport {

// Draws are kept diagonally dominant in the leading coefficient so the step
// factors stay mildly conditioned; raw unit gaussians make the accumulated
// products blow up exponentially in the step count and drown the comparisons
// in amplified roundoff.
inline Kernel random_kernel(Rng& rng, long d, long max_delay, bool with_alpha) {
    Kernel k;
    k.d = d;
    k.max_delay = max_delay;
    k.alpha = with_alpha
                  ? Matrix(Matrix::Identity(d, d) + 0.25 * rng.cgaussian_matrix(d, d))
                  : Matrix(Matrix::Zero(d, d));
    for (long i = -max_delay; i <= max_delay; ++i) {
        if (i == max_delay)
            k.coeffs.push_back(Matrix::Identity(d, d) + 0.25 * rng.cgaussian_matrix(d, d));
        else
            k.coeffs.push_back(0.35 * rng.cgaussian_matrix(d, d));
    }
    return k;
}

inline Window random_window(Rng& rng, long m_max) {
    double eps = 0.3 + rng.uniform();
    double t0 = 2.0 * rng.uniform() - 1.0;
    long m = 1 + static_cast<long>(rng.uniform() * static_cast<double>(m_max));
    m = std::min(m, m_max);
    double frac = 0.05 + 0.9 * rng.uniform();
    return make_window(t0, t0 + (static_cast<double>(m) + frac) * eps, eps);
}

inline std::vector<double> random_offsets(Rng& rng, const Window& w, long count) {
    std::vector<double> offsets;
    while (static_cast<long>(offsets.size()) < count) {
        double off = rng.uniform() * w.epsilon * 0.999;
        bool clash = false;
        for (double o : offsets)
            if (std::abs(o - off) < 1e-6 * w.epsilon) clash = true;
        if (!clash) offsets.push_back(off);
    }
    return offsets;
}

inline FiberFunction random_fiber(Rng& rng, long d, double offset, long n_lo, long n_hi) {
    FiberFunction f;
    f.offset = offset;
    f.n_lo = n_lo;
    for (long n = n_lo; n <= n_hi; ++n) f.samples.push_back(rng.cgaussian_vector(d));
    return f;
}

inline ProblemSpec random_problem(std::uint64_t seed, long d, long max_delay, long m_max,
                                  Mode mode, long fibers = 1) {
    Rng rng(seed);
    ProblemSpec ps;
    ps.mode = mode;
    ps.window = random_window(rng, m_max);
    ps.kernel = random_kernel(rng, d, max_delay, mode == Mode::SolveInvertibleAlpha);
    for (double off : random_offsets(rng, ps.window, fibers)) {
        long ell = ell_of(off, ps.window);
        if (mode == Mode::SolveInvertibleAlpha)
            ps.rhs.push_back(random_fiber(rng, d, off, -max_delay, ell + max_delay));
        else
            ps.rhs.push_back(random_fiber(rng, d, off, 0, ell));
    }
    validate_problem(ps);
    return ps;
}

// Piecewise-constant function of the real line with given jump locations;
// values[i] rules (knots[i-1], knots[i]).  Side +1 gives the right limit
// (the value at the point itself under the right-continuous convention),
// side -1 the left limit.
struct StepFunction {
    std::vector<double> knots;
    std::vector<Vector> values;

    const Vector& at(double t, int side) const {
        size_t idx = 0;
        for (size_t i = 0; i < knots.size(); ++i) {
            bool passed = side > 0 ? t >= knots[i] : t > knots[i];
            if (passed) idx = i + 1;
        }
        return values[idx];
    }
};

inline StepFunction random_step_function(Rng& rng, long d, long jumps, double lo, double hi) {
    StepFunction s;
    for (long i = 0; i < jumps; ++i) s.knots.push_back(lo + rng.uniform() * (hi - lo));
    std::sort(s.knots.begin(), s.knots.end());
    for (long i = 0; i <= jumps; ++i) s.values.push_back(rng.cgaussian_vector(d));
    return s;
}

// One-sided window gate: the closed interval's indicator, approached from
// side > 0 (from the right) or side < 0 (from the left).
inline bool chi_limit(double t, const Window& w, int side) {
    return side > 0 ? (t >= w.t0 && t < w.tf) : (t > w.t0 && t <= w.tf);
}

// One-sided limit of the window operator applied to a real-line function.
inline Vector box_limit(const Kernel& k, const Window& w, const StepFunction& u, double t,
                        int side) {
    Vector acc = Vector::Zero(k.d);
    for (long j = -k.max_delay; j <= k.max_delay; ++j) {
        double s = t + static_cast<double>(j) * w.epsilon;
        if (!chi_limit(s, w, side)) continue;
        acc += k.c(j) * u.at(s, side);
    }
    return acc;
}

} // namespace wdde::testsupport
