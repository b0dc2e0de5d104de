#include "dsq/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace dsq {

namespace {

using cd = std::complex<double>;

const Matrix4c& sigma_yy() {
    static const Matrix4c m = [] {
        Matrix4c r = Matrix4c::Zero();
        // sy x sy in the |ee>, |eg>, |ge>, |gg> ordering
        r(0, 3) = -1.0;
        r(1, 2) = 1.0;
        r(2, 1) = 1.0;
        r(3, 0) = -1.0;
        return r;
    }();
    return m;
}

}  // namespace

const char* to_string(ConcurrenceBranch b) {
    switch (b) {
        case ConcurrenceBranch::General: return "general";
        case ConcurrenceBranch::C1: return "c1";
        case ConcurrenceBranch::C2: return "c2";
        case ConcurrenceBranch::UndrivenFormula: return "undriven_formula";
        case ConcurrenceBranch::SteadyFormula: return "steady_formula";
    }
    return "unknown";
}

ConcurrenceResult concurrence(const DensityMatrix4& rho) {
    validate(rho);
    const Matrix4c r = dicke_transform(rho, Basis::Computational).m;
    const Matrix4c& yy = sigma_yy();
    const Matrix4c tilde = yy * r.conjugate() * yy;
    Eigen::ComplexEigenSolver<Matrix4c> es(r * tilde, false);
    if (es.info() != Eigen::Success) throw NumericError("concurrence: eigenvalue solver failed");

    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) {
        const cd e = es.eigenvalues()(i);
        if (std::abs(e.imag()) > 1e-9) throw NumericError("concurrence: complex spectrum of rho rho~");
        lam[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, e.real()));
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    const double c = lam[0] - lam[1] - lam[2] - lam[3];
    return {std::clamp(c, 0.0, 1.0), ConcurrenceBranch::General};
}

ClosedForms concurrence_closed_forms(const DensityMatrix4& rho, double tol) {
    validate(rho);
    const Matrix4c r = dicke_transform(rho, Basis::Computational).m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const bool x_slot = i == j || i + j == 3;
            if (!x_slot && std::abs(r(i, j)) > tol)
                throw XShapeError("not an X state; use the general concurrence routine");
        }
    ClosedForms f;
    f.c1 = 2.0 * (std::abs(r(0, 3)) - std::sqrt(std::max(0.0, r(1, 1).real() * r(2, 2).real())));
    f.c2 = 2.0 * (std::abs(r(1, 2)) - std::sqrt(std::max(0.0, r(0, 0).real() * r(3, 3).real())));
    if (f.c1 <= 0.0 && f.c2 <= 0.0) f.best = {0.0, ConcurrenceBranch::General};
    else if (f.c1 >= f.c2) f.best = {std::min(f.c1, 1.0), ConcurrenceBranch::C1};
    else f.best = {std::min(f.c2, 1.0), ConcurrenceBranch::C2};
    return f;
}

double undriven_concurrence_formula(const Rates& rates, double t) {
    if (t < 0.0) throw ParameterError("undriven_concurrence_formula: t must be non-negative");
    // exp(-gamma t) sinh(Gamma t) written without overflow for large t
    const double g = rates.gamma;
    const double a = std::abs(rates.Gamma);
    const double sh = 0.5 * (std::exp((a - g) * t) - std::exp(-(a + g) * t));
    const double sn = std::exp(-g * t) * std::sin(2.0 * rates.eta * t);
    return std::sqrt(sh * sh + sn * sn);
}

double steady_concurrence_formula(const Rates& rates, double omega_rabi) {
    if (omega_rabi < 0.0) throw ParameterError("steady_concurrence_formula: omega_rabi must be non-negative");
    const double g = rates.gamma;
    const double w2 = omega_rabi * omega_rabi;
    const double u = std::abs(cd(rates.Gamma, 2.0 * rates.eta));
    const double up = g + rates.Gamma;
    const double den = w2 * w2 + g * g * (w2 + 0.25 * (up * up + 4.0 * rates.eta * rates.eta));
    if (den == 0.0) return 0.0;
    return 0.5 * std::max(0.0, w2 * (g * u - w2) / den);
}

}  // namespace dsq
