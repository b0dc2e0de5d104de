#include "dsq/bogoliubov.hpp"

#include <cmath>
#include <numbers>

#include "dsq/error.hpp"

namespace dsq {

Dispersion dispersion(double k) {
    if (k < 0.0) throw ParameterError("dispersion: k must be non-negative");
    const double root = std::sqrt(k * k + 2.0);
    // d/dk [k sqrt(k^2 + 2)] = 2 (k^2 + 1) / sqrt(k^2 + 2); finite at k = 0
    return {k * root, 2.0 * (k * k + 1.0) / root};
}

double resonant_wavevector(double omega0) {
    if (!(omega0 > 0.0)) throw ParameterError("resonant_wavevector: no resonance for omega0 <= 0");
    // k^2 = sqrt(1 + w^2) - 1, written without cancellation
    const double w2 = omega0 * omega0;
    return std::sqrt(w2 / (std::sqrt(1.0 + w2) + 1.0));
}

namespace {

constexpr double inv_sqrt_4pi = 0.28209479177387814;  // 1 / sqrt(4 pi)

std::complex<double> bracket(double k, double eps, double y, double sign) {
    const double t = std::tanh(y);
    const double c = std::cosh(y);
    const double sech2 = 1.0 / (c * c);
    const std::complex<double> lin(0.5 * k, t);
    return (k * k + sign * 2.0 * eps) * lin + k * sech2;
}

void require_positive(double k) {
    if (!(k > 0.0)) throw ParameterError("mode amplitudes are singular at k = 0");
}

}  // namespace

std::complex<double> mode_u(double k, double x, double center) {
    require_positive(k);
    const double eps = dispersion(k).eps;
    const double y = x - center;
    return std::polar(inv_sqrt_4pi / eps, k * y) * bracket(k, eps, y, +1.0);
}

std::complex<double> mode_v(double k, double x, double center) {
    require_positive(k);
    const double eps = dispersion(k).eps;
    const double y = x - center;
    return std::polar(inv_sqrt_4pi / eps, -k * y) * bracket(k, eps, y, -1.0);
}

ModeAmplitudes mode_amplitudes(double k, std::span<const double> x, double center) {
    require_positive(k);
    ModeAmplitudes out;
    out.u.reserve(x.size());
    out.v.reserve(x.size());
    for (double xi : x) {
        out.u.push_back(mode_u(k, xi, center));
        out.v.push_back(mode_v(k, xi, center));
    }
    return out;
}

}  // namespace dsq
