#pragma once

#include "fiber.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wdde {

struct SolveOptions {
    double sv_threshold = 1e-12;
};

// One singular-value gate that was passed on the way to a solution.  Gates on
// per-fiber closure matrices carry the fiber offset; global ones do not.
struct GateDiag {
    std::string name; // "alpha", "c1", "cN", "theta", "dense"
    std::optional<double> offset;
    double abs_det = 0.0;
    double sv_ratio = 0.0;
};

struct SolveReport {
    Mode mode = Mode::SolveInvertibleAlpha;
    std::string method;            // "n1", "general", "dense"
    std::vector<FiberFunction> u;  // per rhs fiber; range mode covers [0, ell]
    std::vector<FiberFunction> p;  // range mode only: box values on [-N, -1]
    std::vector<FiberFunction> q;  // range mode only: box values on [ell+1, ell+N]
    double residual_max = 0.0;
    double residual_rel = 0.0;
    double f_scale = 0.0;
    std::vector<GateDiag> gates;
};

// Structured solvers.  solve_n1 / solve_general dispatch on the problem mode;
// solve_auto additionally picks n1 exactly when the kernel has max_delay 1.
SolveReport solve_n1(const ProblemSpec& ps, const SolveOptions& opt = {});
SolveReport solve_general(const ProblemSpec& ps, const SolveOptions& opt = {});
SolveReport solve_auto(const ProblemSpec& ps, const SolveOptions& opt = {});

// Closure matrix of the single-delay reduction, by its two routes: assembled
// from the delta sequence of the reduced pair, and read off the forward
// elimination.  They agree; both are exposed so that can be checked.
Matrix n1_theta_closed(const Kernel& kernel, long ell);
Matrix n1_theta_direct(const Kernel& kernel, long ell);
// Same pair of routes for the range-mode closure matrix (alpha plays no part).
Matrix n1_range_cramer_closed(const Kernel& kernel, long ell);
Matrix n1_range_cramer_direct(const Kernel& kernel, long ell);

// Closure pieces of the general reduction for one fiber, exposed for tests:
// the stacked end equations D against the accumulated transition (C, F).
// theta1 is the closure matrix actually solved; theta2 collects the columns
// against the never-active start components and vanishes identically.
struct GeneralClosure {
    Matrix c;
    Matrix d;
    Matrix theta1;
    Matrix theta2;
};
GeneralClosure general_closure_parts(const Kernel& kernel, long ell);

struct ResidualStats {
    double residual_max = 0.0;
    double residual_rel = 0.0;
    double f_scale = 0.0;
};

// Plug a candidate solution back into the equation on every sampled grid
// point of every rhs fiber.  In range mode the report's p/q fibers supply the
// expected box values outside the window.
ResidualStats compute_residual(const ProblemSpec& ps, const SolveReport& report);

} // namespace wdde
