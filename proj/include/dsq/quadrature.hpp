#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dsq/error.hpp"

namespace dsq {

struct QuadratureOptions {
    // Relative to the L1 norm of the integrand; for the O(1)-normalized
    // integrands used here this is at least as strict as the same absolute value.
    double tolerance = 1e-12;
    unsigned max_depth = 20;
};

// Adaptive 61-point Gauss-Kronrod on [a, b]. Works for real and complex integrands.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    double l1 = 0.0;
    auto r = gauss_kronrod<double, 61>::integrate(f, a, b, opt.max_depth, opt.tolerance, &err, &l1);
    if (!std::isfinite(std::abs(r)) || !std::isfinite(err))
        throw NumericError("quadrature produced a non-finite value on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");
    return r;
}

// Same, split at the sorted breakpoints (which include both end points). The
// tolerance applies to the whole range: a first non-adaptive pass estimates
// the total L1 norm and each piece gets the matching absolute error budget, so
// a short piece carrying a negligible share of the integral is not refined
// against its own roundoff.
template <class F>
auto integrate_pieces(F&& f, std::span<const double> points, const QuadratureOptions& opt = {}) {
    using boost::math::quadrature::gauss_kronrod;
    using R = std::invoke_result_t<F&, double>;
    const std::size_t n = points.size() < 2 ? 0 : points.size() - 1;
    std::vector<double> l1(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(points[i + 1] > points[i])) continue;
        gauss_kronrod<double, 61>::integrate(f, points[i], points[i + 1], 0, 0.0, nullptr, &l1[i]);
        total += l1[i];
    }
    R sum{};
    for (std::size_t i = 0; i < n; ++i) {
        if (!(points[i + 1] > points[i])) continue;
        QuadratureOptions local = opt;
        if (l1[i] > 0.0) local.tolerance = std::min(1e-3, opt.tolerance * total / l1[i]);
        sum += integrate(f, points[i], points[i + 1], local);
    }
    return sum;
}

// Principal value of the integral of f(w) / (w - pole) over [lo, hi], lo < pole < hi.
//
// The singular part f(pole) / (w - pole) is integrated analytically. The
// regular remainder (f(w) - f(pole)) / (w - pole) is integrated adaptively
// outside [pole - excision, pole + excision]; inside the window it is
// replaced by f(pole + excision) - f(pole - excision), which is exact to
// O(excision^3).
double principal_value(const std::function<double(double)>& f, double pole, double lo, double hi,
                       double excision, const QuadratureOptions& opt = {});

}  // namespace dsq
