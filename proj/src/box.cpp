#include "box.hpp"

#include "errors.hpp"

#include <algorithm>

namespace wdde {

Vector box_at_direct(const Kernel& kernel, const FiberFunction& u, long ell, long n) {
    Vector acc = Vector::Zero(kernel.d);
    for (long k = -kernel.max_delay; k <= kernel.max_delay; ++k) {
        if (!chi_index(n + k, ell)) continue;
        acc += kernel.c(k) * u.at(n + k);
    }
    return acc;
}

Vector box_at_piecewise(const Kernel& kernel, const FiberFunction& u, long ell, long n) {
    Vector acc = Vector::Zero(kernel.d);
    const long lo = std::max(-kernel.max_delay, -n);
    const long hi = std::min(kernel.max_delay, ell - n);
    for (long k = lo; k <= hi; ++k) acc += kernel.c(k) * u.at(n + k);
    return acc;
}

namespace {

Vector apply_box_at(const Kernel& kernel, const Window& window,
                    const std::vector<FiberFunction>& u, double t, bool piecewise) {
    FiberCoordinate fc = fiber_of(t, window);
    const FiberFunction* fiber = find_fiber(u, fc.offset, window.epsilon);
    if (!fiber)
        throw ProblemError("no fiber of u at offset " + std::to_string(fc.offset));
    long ell = ell_of(fc.offset, window);
    return piecewise ? box_at_piecewise(kernel, *fiber, ell, fc.index)
                     : box_at_direct(kernel, *fiber, ell, fc.index);
}

} // namespace

Vector apply_box_direct(const Kernel& kernel, const Window& window,
                        const std::vector<FiberFunction>& u, double t) {
    return apply_box_at(kernel, window, u, t, false);
}

Vector apply_box_piecewise(const Kernel& kernel, const Window& window,
                           const std::vector<FiberFunction>& u, double t) {
    return apply_box_at(kernel, window, u, t, true);
}

std::vector<FiberFunction> apply_box_grid(const Kernel& kernel, const Window& window,
                                          const std::vector<FiberFunction>& u, bool piecewise) {
    std::vector<FiberFunction> out;
    out.reserve(u.size());
    for (const auto& fiber : u) {
        long ell = ell_of(fiber.offset, window);
        FiberFunction g;
        g.offset = fiber.offset;
        g.n_lo = -kernel.max_delay;
        for (long n = -kernel.max_delay; n <= ell + kernel.max_delay; ++n)
            g.samples.push_back(piecewise ? box_at_piecewise(kernel, fiber, ell, n)
                                          : box_at_direct(kernel, fiber, ell, n));
        out.push_back(std::move(g));
    }
    return out;
}

std::pair<double, double> box_support_bounds(const Window& window, long max_delay) {
    return {window.t0 - static_cast<double>(max_delay) * window.epsilon,
            window.tf + static_cast<double>(max_delay) * window.epsilon};
}

long discontinuity_budget(long max_delay, long u_jumps) {
    return (4 * max_delay + 2) + (2 * max_delay + 1) * u_jumps;
}

} // namespace wdde
