#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "rainbow/baselines.hpp"

namespace rainbow {

namespace {

// 1 - (1 + y/2)e^{-y}, written to stay accurate for small y.
double complement(double y) { return -std::expm1(-y) - 0.5 * y * std::exp(-y); }

double g(double y) { return (1.0 + 0.5 * y) * std::exp(-y); }

// Root of the increasing function f on (0, inf), bracketed by doubling.
template <class F>
double solve_increasing(F f, double x_for_message) {
    double hi = 1.0;
    int guard = 0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (++guard > 64) throw std::domain_error("wastlund: no bracket at x = " + std::to_string(x_for_message));
    }
    std::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve(f, 0.0, hi, f(0.0), f(hi),
                                                    boost::math::tools::eps_tolerance<double>(52), iters);
    if (iters >= 200) throw std::domain_error("wastlund: root solve did not converge at x = " + std::to_string(x_for_message));
    return 0.5 * (a + b);
}

}  // namespace

double wastlund_y(double x) {
    if (!(x > 0.0)) throw std::domain_error("wastlund_y: x must be positive (y(0) is infinite)");
    // g(y) = 1 - g(x). Solve on whichever side avoids cancellation: for
    // small g(x) as complement(y) = g(x), otherwise as g(y) = complement(x).
    const double gx = g(x);
    if (gx == 0.0) return 0.0;
    if (gx <= 0.5) return solve_increasing([gx](double y) { return complement(y) - gx; }, x);
    const double cx = complement(x);
    if (cx == 0.0) throw std::domain_error("wastlund_y: x too small, y overflows");
    return solve_increasing([cx](double y) { return cx - g(y); }, x);
}

double wastlund_constant(const WastlundOptions& opts) {
    if (opts.intervals < 2 || opts.intervals % 2 != 0)
        throw std::invalid_argument("wastlund_constant: intervals must be even and >= 2");
    // The curve is symmetric about y = x (y(y(x)) = x), so the area under it is
    // x*^2 + 2 * int_{x*}^inf y dx, with x* the fixed point (2 + x)e^{-x} = 1.
    // This keeps the quadrature away from the logarithmic singularity at 0.
    auto fixed = [](double x) { return (2.0 + x) * std::exp(-x) - 1.0; };
    std::uintmax_t iters = 200;
    auto [lo, hi] = boost::math::tools::toms748_solve(fixed, 0.5, 3.0, boost::math::tools::eps_tolerance<double>(52), iters);
    const double xs = 0.5 * (lo + hi);

    const double a = xs;
    const double b = opts.upper;
    const auto m = opts.intervals;
    const double h = (b - a) / static_cast<double>(m);
    double sum = wastlund_y(a) + wastlund_y(b);
    for (std::size_t i = 1; i < m; ++i) sum += (i % 2 ? 4.0 : 2.0) * wastlund_y(a + h * static_cast<double>(i));
    const double body = sum * h / 3.0;
    // For large x, y ~ x e^{-x}; the remaining tail is (X + 1)e^{-X}.
    const double tail = (b + 1.0) * std::exp(-b);
    return 0.5 * (xs * xs + 2.0 * (body + tail));
}

double zeta3() {
    constexpr int terms = 100000;
    double s = 0.0;
    for (int k = terms; k >= 1; --k) {
        const double kd = k;
        s += 1.0 / (kd * kd * kd);
    }
    // Euler-Maclaurin tail: sum_{k>N} k^-3 ~ 1/(2N^2) - 1/(2N^3) + 1/(4N^4).
    const double nd = terms;
    return s + 1.0 / (2 * nd * nd) - 1.0 / (2 * nd * nd * nd) + 1.0 / (4 * nd * nd * nd * nd);
}

}  // namespace rainbow
