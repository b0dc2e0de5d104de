#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dsq {

struct Dispersion {
    double eps;             // epsilon_k in units of mu
    double group_velocity;  // d eps / dk in units of xi mu / hbar
};

// Bogoliubov spectrum eps = sqrt(k^2 (k^2 + 2)) with xi = mu = 1.
Dispersion dispersion(double k);

// The unique k0 > 0 with eps(k0) = omega0. Throws ParameterError if omega0 <= 0.
double resonant_wavevector(double omega0);

// Local-density mode amplitudes of a soliton centred at `center`. The plane-wave
// phase is referenced to the centre, exp(+-i k (x - center)).
std::complex<double> mode_u(double k, double x, double center);
std::complex<double> mode_v(double k, double x, double center);

struct ModeAmplitudes {
    std::vector<std::complex<double>> u;
    std::vector<std::complex<double>> v;
};

// Evaluates u_k, v_k on a grid. Throws ParameterError for k <= 0 (1/eps singularity).
ModeAmplitudes mode_amplitudes(double k, std::span<const double> x, double center);

}  // namespace dsq
