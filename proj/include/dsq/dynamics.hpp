#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "dsq/couplings.hpp"

namespace dsq {

// Computational basis |ee>, |eg>, |ge>, |gg> (qubit 1 first, e before g).
// Dicke basis |e>, |s>, |a>, |g> with |s>, |a> = (|eg> +- |ge>) / sqrt(2).
enum class Basis { Computational, Dicke };

using Matrix4c = Eigen::Matrix4cd;
using Matrix16c = Eigen::Matrix<std::complex<double>, 16, 16>;

struct DensityMatrix4 {
    Matrix4c m = Matrix4c::Zero();
    Basis basis = Basis::Computational;

    std::complex<double> operator()(int r, int c) const { return m(r, c); }

    static DensityMatrix4 projector(int index, Basis b = Basis::Computational);
    static DensityMatrix4 pure(const Eigen::Vector4cd& psi, Basis b = Basis::Computational);
};

struct DensityChecks {
    double hermiticity;  // max |rho - rho^dagger|
    double trace_error;  // |tr rho - 1|
    double min_eigenvalue;
};

DensityChecks density_checks(const DensityMatrix4& rho);

// Throws ValidationError unless Hermitian and unit trace within tol and
// min eigenvalue >= -positivity_tol.
void validate(const DensityMatrix4& rho, double tol = 1e-10, double positivity_tol = 1e-9);

struct DriveParams {
    double omega_rabi = 0.0;  // units of gamma
    double detuning = 0.0;    // omega0 - omega_d, units of gamma
    bool symmetric = true;
    double omega_rabi_2 = 0.0;  // second qubit, used only when symmetric = false
};

// Rates in units of gamma: (gamma, Gamma, eta).
struct Rates {
    double gamma = 1.0;
    double Gamma = 0.0;
    double eta = 0.0;
};

Rates rates_from(const RateSet& r);

// Orthogonal and self-inverse Dicke transform U.
const Matrix4c& dicke_matrix();

DensityMatrix4 dicke_transform(const DensityMatrix4& rho, Basis target);

// d rho / dt of the two-qubit master equation with collective damping,
// exchange coupling and the rotating-frame magnetic drive (computational basis).
// Throws ParameterError if |Gamma| > gamma.
Matrix4c liouvillian_apply(const Matrix4c& rho, const Rates& rates, const DriveParams& drive = {});
Matrix4c liouvillian_apply(const DensityMatrix4& rho, const Rates& rates, const DriveParams& drive = {});

// Column-major vectorization: vec(d rho / dt) = L vec(rho).
Matrix16c superoperator(const Rates& rates, const DriveParams& drive = {});

struct EvolveOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-13;
    bool check_states = true;  // validate every output state
};

// States at the requested times (units 1/gamma, ascending, starting at or after 0).
std::vector<DensityMatrix4> evolve(const DensityMatrix4& rho0, const Rates& rates,
                                   const DriveParams& drive, const std::vector<double>& t_grid,
                                   const EvolveOptions& opt = {});

// Initial data of the undriven analytic solution, Dicke elements.
struct UndrivenInit {
    double ee = 0.0;
    double ss = 0.0;
    double aa = 0.0;
    std::complex<double> sa = 0.0;
};

UndrivenInit undriven_init_from(const DensityMatrix4& rho);

// (exp(-a t) - exp(-b t)) / (b - a), continuous through a = b.
double decay_difference(double a, double b, double t);

DensityMatrix4 analytic_undriven(const UndrivenInit& init, const Rates& rates, double t);

struct SteadyState {
    DensityMatrix4 rho;
    bool unique = true;
    double smallest_singular = 0.0;
    double second_singular = 0.0;
    double residual = 0.0;  // max |L rho|
};

SteadyState steady_state(const Rates& rates, const DriveParams& drive);

}  // namespace dsq
