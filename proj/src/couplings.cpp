#include "dsq/couplings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dsq/bogoliubov.hpp"
#include "dsq/error.hpp"

namespace dsq {

namespace {

void check_band(int b) {
    if (b != 0 && b != 1) throw ParameterError("band index must be 0 or 1");
}

void check_site(int s) {
    if (s != 1 && s != 2) throw ParameterError("site index must be 1 or 2");
}

std::vector<double> sorted_points(std::initializer_list<double> inner, double pad) {
    std::vector<double> pts(inner);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const double lo = pts.front() - pad;
    const double hi = pts.back() + pad;
    pts.insert(pts.begin(), lo);
    pts.push_back(hi);
    return pts;
}

}  // namespace

std::array<double, 2> soliton_positions(double d) { return {-0.5 * d, 0.5 * d}; }

double coupling_prefactor(const ModelParams& p) { return p.chi_over_g() / std::sqrt(p.n0_xi); }

std::complex<double> coupling_amplitude(BandPair lm, SitePair ij, double k, double d,
                                        const ModelParams& params, const QuadratureOptions& opt) {
    check_band(lm.l);
    check_band(lm.m);
    check_site(ij.i);
    check_site(ij.j);
    if (!(k > 0.0)) throw ParameterError("coupling_amplitude: k must be positive");

    const double pref = coupling_prefactor(params);
    if (pref == 0.0) return {0.0, 0.0};

    const auto pos = soliton_positions(d);
    const double xi = pos[ij.i - 1];
    const double xj = pos[ij.j - 1];
    const WannierPair pair = wannier_pair(params.alpha(), xj);

    auto integrand = [&](double x) {
        return pair.phi(lm.l, x) * pair.phi(lm.m, x) * std::tanh(x - xi) * mode_u(k, x, xi);
    };
    const auto pts = sorted_points({xi, xj}, WannierPair::half_width);
    return pref * integrate_pieces(integrand, pts, opt);
}

const std::complex<double>& CouplingSpectrum::at(BandPair lm, SitePair ij, std::size_t k_index) const {
    return g.at(static_cast<std::size_t>(2 * lm.l + lm.m))
        .at(static_cast<std::size_t>(2 * (ij.i - 1) + (ij.j - 1)))
        .at(k_index);
}

std::vector<double> log_k_grid(double k_min, double k_max, std::size_t points) {
    if (!(k_min > 0.0) || !(k_max > k_min) || points < 2)
        throw ParameterError("log_k_grid: need 0 < k_min < k_max and at least two points");
    std::vector<double> ks(points);
    const double step = std::log(k_max / k_min) / static_cast<double>(points - 1);
    for (std::size_t n = 0; n < points; ++n) ks[n] = k_min * std::exp(step * static_cast<double>(n));
    ks.back() = k_max;
    return ks;
}

CouplingSpectrum coupling_spectrum(double d, const ModelParams& params, std::vector<double> k_grid,
                                   const QuadratureOptions& opt) {
    CouplingSpectrum s;
    s.d = d;
    s.k_grid = std::move(k_grid);
    for (int l = 0; l < 2; ++l)
        for (int m = 0; m < 2; ++m)
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= 2; ++j) {
                    auto& row = s.g[static_cast<std::size_t>(2 * l + m)]
                                   [static_cast<std::size_t>(2 * (i - 1) + (j - 1))];
                    row.reserve(s.k_grid.size());
                    for (double k : s.k_grid)
                        row.push_back(coupling_amplitude({l, m}, {i, j}, k, d, params, opt));
                }
    return s;
}

RateKernel collective_kernel(const WannierPair& reference, double k, double d,
                             const QuadratureOptions& opt) {
    if (!(k > 0.0)) throw ParameterError("collective_kernel: k must be positive");
    const auto pos = soliton_positions(d);
    const double c = reference.center();

    auto density = [&](double x, double xj) {
        const double y = x - xj + c;
        return reference.phi0(y) * reference.phi1(y) * std::tanh(x - xj) * mode_u(k, x, xj);
    };

    const auto self_pts = sorted_points({0.0}, WannierPair::half_width);
    const double k11 = integrate_pieces(
        [&](double x) { return std::norm(density(x, 0.0)); }, self_pts, opt);

    const auto pair_pts = sorted_points({pos[0], 0.0, pos[1]}, WannierPair::half_width);
    const double k12 = integrate_pieces(
        [&](double x) { return std::real(density(x, pos[0]) * std::conj(density(x, pos[1]))); },
        pair_pts, opt);

    return {k11, k11, k12};
}

double absolute_gamma(const ModelParams& params, const QuadratureOptions& opt) {
    const double w0 = params.omega0();
    if (!(w0 > 0.0)) throw ParameterError("absolute_gamma: no resonance for omega0 <= 0");
    const double k0 = resonant_wavevector(w0);
    const WannierPair pair = wannier_pair(params.alpha(), 0.0);
    const double pref = coupling_prefactor(params);
    const RateKernel kern = collective_kernel(pair, k0, 0.0, opt);
    return 2.0 * pref * pref * kern.k11 / dispersion(k0).group_velocity;
}

RateSet rate_set(double d, const ModelParams& params, const RateOptions& opt) {
    params.validate();
    const double w0 = params.omega0();
    if (!(w0 > 0.0)) throw ParameterError("rate_set: no resonance for omega0 <= 0");
    if (!(opt.omega_max_factor > 1.0)) throw ParameterError("rate_set: omega_max_factor must exceed 1");

    RateSet r;
    r.d = d;
    r.omega0 = w0;
    r.k0 = resonant_wavevector(w0);
    r.gamma_hz = params.physical_gamma_hz;

    const WannierPair pair = wannier_pair(params.alpha(), 0.0);
    const double vg0 = dispersion(r.k0).group_velocity;
    const RateKernel at_k0 = collective_kernel(pair, r.k0, d, opt.quadrature);
    if (!(at_k0.k11 > 0.0)) throw NumericError("rate_set: vanishing single-qubit rate kernel");
    r.Gamma_over_gamma = at_k0.k12 / at_k0.k11;

    // eta_12 / gamma = v_g(k0) / (4 pi K_11(k0)) * PV integral of K_12(k(w)) / v_g(k(w)) / (w - w0) dw
    auto spectral = [&](double w) {
        const double k = resonant_wavevector(w);
        return collective_kernel(pair, k, d, opt.quadrature).k12 / dispersion(k).group_velocity;
    };
    const double w_min = dispersion(opt.k_min).eps;
    const double w_max = opt.omega_max_factor * w0;
    const double pv = principal_value(spectral, w0, w_min, w_max, opt.excision,
                                      opt.frequency_quadrature);
    const double scale = vg0 / (4.0 * std::numbers::pi * at_k0.k11);
    r.eta_over_gamma = scale * pv;

    const double tail = integrate([&](double w) { return spectral(w) / (w - w0); }, w_max,
                                  4.0 * w_max, opt.frequency_quadrature);
    r.eta_tail_estimate = std::abs(scale * tail);

    const double pref = coupling_prefactor(params);
    r.gamma_over_omega0 = 2.0 * pref * pref * at_k0.k11 / vg0 / w0;
    return r;
}

RwaReport rwa_report(const ModelParams& params, const QuadratureOptions& opt) {
    RwaReport rep;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double w0 = params.omega0();
    if (coupling_prefactor(params) == 0.0 || !(w0 > 0.0)) {
        rep.degenerate = true;
        rep.g00_over_g01 = rep.g11_over_g01 = rep.gamma_over_omega0 = nan;
        rep.k0 = w0 > 0.0 ? resonant_wavevector(w0) : nan;
        return rep;
    }
    rep.k0 = resonant_wavevector(w0);
    const SitePair onsite{1, 1};
    const double g01 = std::abs(coupling_amplitude({0, 1}, onsite, rep.k0, 0.0, params, opt));
    const double g00 = std::abs(coupling_amplitude({0, 0}, onsite, rep.k0, 0.0, params, opt));
    const double g11 = std::abs(coupling_amplitude({1, 1}, onsite, rep.k0, 0.0, params, opt));
    if (g01 == 0.0) {
        rep.degenerate = true;
        rep.g00_over_g01 = rep.g11_over_g01 = nan;
    } else {
        rep.g00_over_g01 = g00 / g01;
        rep.g11_over_g01 = g11 / g01;
    }
    rep.gamma_over_omega0 = absolute_gamma(params, opt) / w0;
    return rep;
}

}  // namespace dsq
