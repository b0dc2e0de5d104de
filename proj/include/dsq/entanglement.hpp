#pragma once

#include "dsq/dynamics.hpp"
#include "dsq/error.hpp"

namespace dsq {

enum class ConcurrenceBranch { General, C1, C2, UndrivenFormula, SteadyFormula };

const char* to_string(ConcurrenceBranch b);

struct ConcurrenceResult {
    double value = 0.0;
    ConcurrenceBranch branch = ConcurrenceBranch::General;
};

// Raised when an X-state routine receives a matrix with other coherences.
class XShapeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Wootters concurrence from the spectrum of rho (sy x sy) rho* (sy x sy).
ConcurrenceResult concurrence(const DensityMatrix4& rho);

struct ClosedForms {
    double c1;  // 2 (|rho_14| - sqrt(rho_22 rho_33))
    double c2;  // 2 (|rho_23| - sqrt(rho_11 rho_44))
    ConcurrenceResult best;  // max{0, c1, c2}
};

ClosedForms concurrence_closed_forms(const DensityMatrix4& rho, double tol = 1e-10);

// C(t) = exp(-gamma t) sqrt(sinh^2(Gamma t) + sin^2(2 eta t)) for a single initial excitation.
double undriven_concurrence_formula(const Rates& rates, double t);

// Steady-state concurrence of symmetric resonant pumping.
double steady_concurrence_formula(const Rates& rates, double omega_rabi);

}  // namespace dsq
