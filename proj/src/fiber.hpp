#pragma once

#include "errors.hpp"
#include "linalg.hpp"

#include <vector>

namespace wdde {

// Time window [t0, tf] stepped by epsilon. step_count = max{n : t0 + n*eps <= tf},
// required >= 1. Both endpoints are inside the window (chi is 1 on both).
struct Window {
    double t0 = 0.0;
    double tf = 0.0;
    double epsilon = 0.0;
    long step_count = 0;

    bool operator==(const Window&) const = default;
};

Window make_window(double t0, double tf, double epsilon);

// chi: characteristic function of [t0, tf], closed on both ends.
inline int chi(double t, const Window& w) { return (t >= w.t0 && t <= w.tf) ? 1 : 0; }

// A real time t decomposed as t = t0 + offset + index*epsilon with offset in [0, epsilon).
struct FiberCoordinate {
    double offset = 0.0;
    long index = 0;
};

FiberCoordinate fiber_of(double t, const Window& w);

// Horizon of the fiber through t0 + offset: the largest n with
// t0 + offset + n*eps <= tf. Takes only the values step_count and step_count - 1.
long ell_of(double offset, const Window& w);

// chi at a grid point of a fiber with horizon ell, as an exact integer test.
inline int chi_index(long n, long ell) { return (n >= 0 && n <= ell) ? 1 : 0; }

// Kernel of the equation alpha*u(t) + sum_k c_k u(t + k*eps) chi(t + k*eps) = f(t):
// alpha and the coefficients c_{-N} ... c_N, all d x d complex.
struct Kernel {
    long d = 0;
    long max_delay = 0;              // N
    Matrix alpha;
    std::vector<Matrix> coeffs;      // size 2N+1, entry k+N holds c_k

    const Matrix& c(long k) const { return coeffs[static_cast<size_t>(k + max_delay)]; }
    Matrix& c(long k) { return coeffs[static_cast<size_t>(k + max_delay)]; }

    bool operator==(const Kernel& o) const;
};

// Samples of a C^d-valued function along one fiber: a contiguous index range
// [n_lo, n_hi] of grid points t0 + offset + n*eps. Lookups outside the range
// signal MissingSample; there is no implicit zero.
struct FiberFunction {
    double offset = 0.0;
    long n_lo = 0;
    std::vector<Vector> samples;

    long n_hi() const { return n_lo + static_cast<long>(samples.size()) - 1; }
    bool covers(long n) const { return n >= n_lo && n <= n_hi() && !samples.empty(); }
    const Vector& at(long n) const {
        if (!covers(n)) throw MissingSample(offset, n);
        return samples[static_cast<size_t>(n - n_lo)];
    }

    bool operator==(const FiberFunction& o) const;
};

const FiberFunction* find_fiber(const std::vector<FiberFunction>& fibers, double offset, double epsilon);

enum class Mode { SolveInvertibleAlpha, RangeOfBox };

struct ProblemSpec {
    Kernel kernel;
    Window window;
    Mode mode = Mode::SolveInvertibleAlpha;
    std::vector<FiberFunction> rhs;

    bool operator==(const ProblemSpec& o) const;
};

// Structural checks shared by the parser and the solvers: matrix shapes,
// N tightness, offset ranges, fiber coverage per mode. Throws ProblemError.
void validate_problem(const ProblemSpec& ps, double sv_threshold = 1e-12);

} // namespace wdde
