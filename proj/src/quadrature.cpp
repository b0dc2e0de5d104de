#include "dsq/quadrature.hpp"

namespace dsq {

double principal_value(const std::function<double(double)>& f, double pole, double lo, double hi,
                       double excision, const QuadratureOptions& opt) {
    if (!(lo < pole && pole < hi)) throw ParameterError("principal_value: pole outside (lo, hi)");
    if (!(excision > 0.0) || pole - excision <= lo || pole + excision >= hi)
        throw ParameterError("principal_value: excision window does not fit inside (lo, hi)");

    const double f0 = f(pole);
    auto remainder = [&](double w) { return (f(w) - f0) / (w - pole); };

    double sum = integrate(remainder, lo, pole - excision, opt);
    sum += integrate(remainder, pole + excision, hi, opt);
    sum += f(pole + excision) - f(pole - excision);
    sum += f0 * std::log((hi - pole) / (pole - lo));
    if (!std::isfinite(sum)) throw NumericError("principal_value: non-finite result");
    return sum;
}

}  // namespace dsq
