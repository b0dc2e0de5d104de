#include "dsq/boundstates.hpp"

#include <cmath>
#include <numbers>

#include "dsq/error.hpp"
#include "dsq/quadrature.hpp"

namespace dsq {

int bound_state_count(double nu) {
    if (!(nu > 0.0)) throw ParameterError("nu must be positive");
    // nu = 1/3 lands on the integer 2 exactly; absorb the rounding of sqrt
    const double x = nu + 1.0 + std::sqrt(nu * (1.0 + nu));
    return static_cast<int>(std::floor(x + 1e-12));
}

bool qubit_window(double nu) { return nu >= 1.0 / 3.0 - 1e-15 && nu < 0.8; }

PtSpectrum pt_spectrum(double nu, double mass_ratio) {
    if (!(mass_ratio > 0.0)) throw ParameterError("mass_ratio must be positive");
    PtSpectrum s;
    s.count = bound_state_count(nu);
    s.qubit_ok = qubit_window(nu);
    s.energies.reserve(static_cast<std::size_t>(s.count));
    for (int n = 0; n < s.count; ++n) {
        const double dn = nu - n;
        s.energies.push_back(-dn * dn / (2.0 * mass_ratio));
    }
    return s;
}

double log_sech(double y) {
    const double a = std::abs(y);
    return -(a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2);
}

double wannier_a0(double alpha) {
    if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
    const double log_norm =
        0.5 * std::log(std::numbers::pi) + std::lgamma(alpha) - std::lgamma(alpha + 0.5);
    return std::exp(-0.5 * log_norm);
}

WannierPair::WannierPair(double alpha, double center) : alpha_(alpha), center_(center) {
    a0_ = wannier_a0(alpha);
    const double a = alpha;
    auto integrand = [a](double y) {
        const double t = std::tanh(y);
        return t * t * std::exp(2.0 * a * log_sech(y));
    };
    const double pts[] = {-half_width, 0.0, half_width};
    const double tanh2_norm = integrate_pieces(integrand, pts);
    a1_ = 1.0 / std::sqrt(a0_ * a0_ * tanh2_norm);
}

double WannierPair::phi0(double x) const {
    return a0_ * std::exp(alpha_ * log_sech(x - center_));
}

double WannierPair::phi1(double x) const { return a1_ * std::tanh(x - center_) * phi0(x); }

std::vector<double> WannierPair::sample_phi0(std::span<const double> x) const {
    std::vector<double> out;
    out.reserve(x.size());
    for (double xi : x) out.push_back(phi0(xi));
    return out;
}

std::vector<double> WannierPair::sample_phi1(std::span<const double> x) const {
    std::vector<double> out;
    out.reserve(x.size());
    for (double xi : x) out.push_back(phi1(xi));
    return out;
}

WannierPair wannier_pair(double alpha, double center) {
    if (!(alpha > 0.0)) throw ParameterError("wannier_pair: alpha must be positive");
    return WannierPair(alpha, center);
}

double dipole_element(const WannierPair& pair) {
    const double c = pair.center();
    auto integrand = [&](double x) { return pair.phi1(x) * (x - c) * pair.phi0(x); };
    const double pts[] = {c - WannierPair::half_width, c, c + WannierPair::half_width};
    return integrate_pieces(integrand, pts);
}

}  // namespace dsq
