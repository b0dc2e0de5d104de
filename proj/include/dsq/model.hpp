#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace dsq {

// Internal units: hbar = xi = mu = m_psi = 1. Every module downstream of this
// one consumes dimensionless quantities only.

enum class WannierConvention {
    MainText,   // alpha = sqrt(nu (nu + 1))
    AppendixB,  // alpha = sqrt(2 nu (nu + 1))
    ExactPT,    // alpha = nu, the Poschl-Teller ground-state exponent
};

std::string_view to_string(WannierConvention c);
WannierConvention wannier_convention_from_string(std::string_view s);

struct ModelParams {
    double nu = 0.75;
    double mass_ratio = 1.56;  // m_phi / m_psi
    WannierConvention wannier = WannierConvention::MainText;
    double n0_xi = 50.0;

    std::optional<double> physical_xi_m;      // healing length [m]
    std::optional<double> physical_mu_hz;     // mu / hbar [1/s]
    std::optional<double> physical_gamma_hz;  // single-qubit decay rate gamma [1/s]

    // Throws ParameterError when an invariant is violated.
    void validate() const;

    double alpha() const;
    // chi / g implied by nu under the selected convention.
    double chi_over_g() const;
    double omega0() const;
};

// nu from the BEC-impurity coupling: nu (nu + 1) = chi m_phi / (g m_psi).
double derive_nu(double chi_over_g, double mass_ratio);

// Inverse of derive_nu.
double chi_over_g_from_nu(double nu, double mass_ratio);

double wannier_alpha(double nu, WannierConvention c);

// Qubit gap omega0 = (2 nu - 1) / (2 m_r) in units of mu / hbar.
struct GapResult {
    double omega0;
    bool positive;  // false when nu <= 1/2: no resolvable second level
};
GapResult qubit_gap(double nu, double mass_ratio);

enum class QuantityKind {
    Length,     // units of xi
    Rate,       // units of mu / hbar
    Time,       // units of hbar / mu
    GammaRate,  // units of gamma
    GammaTime,  // units of 1 / gamma
};

// Map a dimensionless quantity to SI (meters, Hz, seconds). Throws
// CalibrationError when the needed scale is unset.
double to_physical(const ModelParams& p, double value, QuantityKind kind);
double to_dimensionless(const ModelParams& p, double value, QuantityKind kind);

}  // namespace dsq
