#include "ptorbit/complex_branch.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ptorbit {

Complex asinh_principal(Complex u) {
    if (!is_finite(u)) {
        throw std::invalid_argument("asinh_principal: non-finite argument");
    }
    return std::log(u + std::sqrt(u * u + 1.0));
}

namespace {

Complex branch_candidate(Complex principal, int n) {
    const double pi = std::numbers::pi;
    const Complex flipped = (n % 2 == 0) ? principal : -principal;
    return flipped + Complex(0.0, n * pi);
}

} // namespace

Complex asinh_tracked(Complex u, BranchContext& ctx, int window) {
    const Complex w0 = asinh_principal(u);

    // Search around the family accepted last step; the index itself may
    // drift without bound along open broken-phase paths.
    int best_n = ctx.branch_family;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int n = ctx.branch_family - window; n <= ctx.branch_family + window;
         ++n) {
        const double d = std::abs(branch_candidate(w0, n) - ctx.previous_value);
        if (d < best_dist) {
            best_dist = d;
            best_n = n;
        }
    }

    // Minimal spacing between distinct candidates, |2 w0 -+ i pi| for
    // adjacent n. Shrinks to zero at the branch points u = +-i.
    const double pi = std::numbers::pi;
    const double spacing =
        std::min(std::abs(2.0 * w0 - Complex(0.0, pi)),
                 std::abs(2.0 * w0 + Complex(0.0, pi)));
    if (best_dist > 0.5 * spacing) {
        throw BranchStepError(best_dist, spacing);
    }

    const Complex w = branch_candidate(w0, best_n);
    ctx.previous_value = w;
    ctx.branch_family = best_n;
    return w;
}

} // namespace ptorbit
