#pragma once

#include "fiber.hpp"

#include <utility>
#include <vector>

namespace wdde {

// The window sum applied to a sampled fiber of u at grid index n:
//   sum_k c(k) u(n + k) over k in [-N, N] with n + k inside [0, ell].
// box_at_direct gates every term separately; box_at_piecewise first collapses
// the gates to one contiguous k-interval.  Both read u only at surviving
// indices, so u need not be sampled outside [0, ell].
Vector box_at_direct(const Kernel& kernel, const FiberFunction& u, long ell, long n);
Vector box_at_piecewise(const Kernel& kernel, const FiberFunction& u, long ell, long n);

// Real-argument forms: split t into fiber offset and index against the
// window, pick the fiber of u with that offset, and evaluate there.
Vector apply_box_direct(const Kernel& kernel, const Window& window,
                        const std::vector<FiberFunction>& u, double t);
Vector apply_box_piecewise(const Kernel& kernel, const Window& window,
                           const std::vector<FiberFunction>& u, double t);

// Box values over the whole active grid of each fiber, indices -N .. ell + N.
std::vector<FiberFunction> apply_box_grid(const Kernel& kernel, const Window& window,
                                          const std::vector<FiberFunction>& u,
                                          bool piecewise = true);

// Everything the box produces lives inside [t0 - N eps, tf + N eps]; outside
// that interval every gate is shut.
std::pair<double, double> box_support_bounds(const Window& window, long max_delay);

// Upper bound on the number of jump points of the box of a piecewise
// continuous u with u_jumps interior jumps: the gates contribute two ends per
// shift, each jump of u reappears once per shift.
long discontinuity_budget(long max_delay, long u_jumps);

} // namespace wdde
