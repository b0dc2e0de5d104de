#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "dsq/boundstates.hpp"
#include "dsq/model.hpp"
#include "dsq/quadrature.hpp"

namespace dsq {

// Impurity bands (l, m), each 0 or 1.
struct BandPair {
    int l;
    int m;
};

// Site indices (i, j), each 1 or 2. The amplitude g^{(ij)} uses the Wannier
// functions of site j and the soliton factor tanh(x - x_i) u_k^{(i)} of site i.
struct SitePair {
    int i;
    int j;
};

// Soliton centroids x_1 = -d/2, x_2 = +d/2.
std::array<double, 2> soliton_positions(double d);

// sqrt(n0) chi in units with xi = mu = 1.
double coupling_prefactor(const ModelParams& p);

// g_{lm,k}^{(ij)}(d) = sqrt(n0) chi * integral phi_l^{(j)} phi_m^{(j)} tanh(x - x_i) u_k^{(i)} dx.
std::complex<double> coupling_amplitude(BandPair lm, SitePair ij, double k, double d,
                                        const ModelParams& params,
                                        const QuadratureOptions& opt = {});

struct CouplingSpectrum {
    std::vector<double> k_grid;
    // g[band_index][site_index][k], band_index = 2 l + m, site_index = 2 (i-1) + (j-1)
    std::array<std::array<std::vector<std::complex<double>>, 4>, 4> g;
    double d = 0.0;

    const std::complex<double>& at(BandPair lm, SitePair ij, std::size_t k_index) const;
};

// Log-spaced grid from k_min to k_max (1/xi).
std::vector<double> log_k_grid(double k_min = 1e-4, double k_max = 20.0, std::size_t points = 400);

CouplingSpectrum coupling_spectrum(double d, const ModelParams& params,
                                   std::vector<double> k_grid = log_k_grid(),
                                   const QuadratureOptions& opt = {});

// Rate kernel K_ij(k) = Re integral G_i(x) conj(G_j(x)) dx of the on-site emission
// densities G_j = phi0^{(j)} phi1^{(j)} tanh(x - x_j) u_k^{(j)}. The LDA modes of
// distinct positions are treated as independent reservoir channels, so rates
// are spatial overlaps of the two qubits' emission densities.
struct RateKernel {
    double k11;
    double k22;
    double k12;
};

RateKernel collective_kernel(const WannierPair& reference, double k, double d,
                             const QuadratureOptions& opt = {});

struct RateOptions {
    double omega_max_factor = 50.0;  // upper limit of the principal-value integral, in omega0
    double k_min = 1e-4;
    double excision = 1e-3;
    QuadratureOptions quadrature{};
    // The frequency integral sees the inner quadrature error as noise, so it
    // runs at a looser tolerance than the spatial integrals.
    QuadratureOptions frequency_quadrature{1e-10, 14};
};

struct RateSet {
    double gamma = 1.0;  // rate unit
    double gamma_over_omega0 = 0.0;
    double Gamma_over_gamma = 0.0;
    double eta_over_gamma = 0.0;
    double d = 0.0;
    double k0 = 0.0;
    double omega0 = 0.0;
    std::optional<double> gamma_hz;
    // |eta| contributed by the principal-value integrand between omega_max and
    // 4 omega_max; diagnostic for the truncation of the frequency integral.
    double eta_tail_estimate = 0.0;
};

// Collective damping and coherent coupling relative to the single-qubit rate.
// Throws ParameterError if omega0 <= 0 (no resonant phonon).
RateSet rate_set(double d, const ModelParams& params, const RateOptions& opt = {});

// Absolute single-qubit emission rate in units of mu / hbar, with one healing
// length per local reservoir channel.
double absolute_gamma(const ModelParams& params, const QuadratureOptions& opt = {});

struct RwaReport {
    double g00_over_g01 = 0.0;
    double g11_over_g01 = 0.0;
    double gamma_over_omega0 = 0.0;
    double k0 = 0.0;
    bool degenerate = false;  // zero coupling: ratios are NaN
};

RwaReport rwa_report(const ModelParams& params, const QuadratureOptions& opt = {});

}  // namespace dsq
