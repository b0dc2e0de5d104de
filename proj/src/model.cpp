#include "dsq/model.hpp"

#include <cmath>

#include "dsq/error.hpp"

namespace dsq {

std::string_view to_string(WannierConvention c) {
    switch (c) {
        case WannierConvention::MainText: return "main_text";
        case WannierConvention::AppendixB: return "appendix_b";
        case WannierConvention::ExactPT: return "exact_pt";
    }
    return "main_text";
}

WannierConvention wannier_convention_from_string(std::string_view s) {
    if (s == "main_text" || s == "MainText") return WannierConvention::MainText;
    if (s == "appendix_b" || s == "AppendixB") return WannierConvention::AppendixB;
    if (s == "exact_pt" || s == "ExactPT") return WannierConvention::ExactPT;
    throw ParameterError("unknown wannier_convention '" + std::string(s) + "'");
}

void ModelParams::validate() const {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw ParameterError("nu must be positive");
    if (!(mass_ratio > 0.0) || !std::isfinite(mass_ratio))
        throw ParameterError("mass_ratio must be positive");
    if (!(n0_xi > 0.0) || !std::isfinite(n0_xi)) throw ParameterError("n0_xi must be positive");
    if (physical_xi_m && !(*physical_xi_m > 0.0)) throw ParameterError("physical_xi_m must be positive");
    if (physical_mu_hz && !(*physical_mu_hz > 0.0)) throw ParameterError("physical_mu_hz must be positive");
    if (physical_gamma_hz && !(*physical_gamma_hz > 0.0))
        throw ParameterError("physical_gamma_hz must be positive");
}

double ModelParams::alpha() const { return wannier_alpha(nu, wannier); }

double ModelParams::chi_over_g() const {
    // The main-text nu formula and the Poschl-Teller matching differ by a factor 2.
    const double pt = nu * (nu + 1.0) / mass_ratio;
    return wannier == WannierConvention::MainText ? pt : 0.5 * pt;
}

double ModelParams::omega0() const { return qubit_gap(nu, mass_ratio).omega0; }

double derive_nu(double chi_over_g, double mass_ratio) {
    if (chi_over_g < 0.0 || !std::isfinite(chi_over_g))
        throw ParameterError("chi_over_g must be non-negative");
    if (!(mass_ratio > 0.0)) throw ParameterError("mass_ratio must be positive");
    const double s = 4.0 * chi_over_g * mass_ratio;
    // (-1 + sqrt(1 + s)) / 2 without cancellation for small s
    return 0.5 * s / (1.0 + std::sqrt(1.0 + s));
}

double chi_over_g_from_nu(double nu, double mass_ratio) {
    if (nu < 0.0) throw ParameterError("nu must be non-negative");
    if (!(mass_ratio > 0.0)) throw ParameterError("mass_ratio must be positive");
    return nu * (nu + 1.0) / mass_ratio;
}

double wannier_alpha(double nu, WannierConvention c) {
    switch (c) {
        case WannierConvention::MainText: return std::sqrt(nu * (nu + 1.0));
        case WannierConvention::AppendixB: return std::sqrt(2.0 * nu * (nu + 1.0));
        case WannierConvention::ExactPT: return nu;
    }
    return std::sqrt(nu * (nu + 1.0));
}

GapResult qubit_gap(double nu, double mass_ratio) {
    if (!(mass_ratio > 0.0)) throw ParameterError("mass_ratio must be positive");
    const double w = (2.0 * nu - 1.0) / (2.0 * mass_ratio);
    return {w, w > 0.0};
}

namespace {

double scale_for(const ModelParams& p, QuantityKind kind) {
    auto need = [](const std::optional<double>& v, const char* what) {
        if (!v) throw CalibrationError(std::string("no physical calibration: ") + what + " unset");
        return *v;
    };
    switch (kind) {
        case QuantityKind::Length: return need(p.physical_xi_m, "physical_xi_m");
        case QuantityKind::Rate: return need(p.physical_mu_hz, "physical_mu_hz");
        case QuantityKind::Time: return 1.0 / need(p.physical_mu_hz, "physical_mu_hz");
        case QuantityKind::GammaRate: return need(p.physical_gamma_hz, "physical_gamma_hz");
        case QuantityKind::GammaTime: return 1.0 / need(p.physical_gamma_hz, "physical_gamma_hz");
    }
    throw ParameterError("unknown quantity kind");
}

}  // namespace

double to_physical(const ModelParams& p, double value, QuantityKind kind) {
    return value * scale_for(p, kind);
}

double to_dimensionless(const ModelParams& p, double value, QuantityKind kind) {
    return value / scale_for(p, kind);
}

}  // namespace dsq
