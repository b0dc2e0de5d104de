#pragma once

#include <span>
#include <vector>

namespace dsq {

// Poschl-Teller spectrum of the soliton trap, E'_n = -(nu - n)^2 / (2 m_r),
// measured from the chi n0 offset.
struct PtSpectrum {
    std::vector<double> energies;
    int count = 0;
    bool qubit_ok = false;  // exactly two levels: 1/3 <= nu < 4/5
};

PtSpectrum pt_spectrum(double nu, double mass_ratio);

int bound_state_count(double nu);
bool qubit_window(double nu);

// phi0 = A0 sech^alpha(x - c), phi1 = A1 tanh(x - c) phi0, both unit-normalized.
class WannierPair {
public:
    WannierPair(double alpha, double center);

    double alpha() const { return alpha_; }
    double a0() const { return a0_; }
    double a1() const { return a1_; }
    double center() const { return center_; }

    double phi0(double x) const;
    double phi1(double x) const;
    double phi(int band, double x) const { return band == 0 ? phi0(x) : phi1(x); }

    std::vector<double> sample_phi0(std::span<const double> x) const;
    std::vector<double> sample_phi1(std::span<const double> x) const;

    // Integration window outside which both profiles are numerically zero.
    static constexpr double half_width = 40.0;

private:
    double alpha_;
    double center_;
    double a0_;
    double a1_;
};

// Throws ParameterError for alpha <= 0.
WannierPair wannier_pair(double alpha, double center = 0.0);

// Closed form A0 = (sqrt(pi) Gamma(alpha) / Gamma(alpha + 1/2))^(-1/2).
double wannier_a0(double alpha);

// log(sech(y)), stable for large |y|.
double log_sech(double y);

// C_alpha = integral of phi1 (x - c) phi0; positive for phi1 >= 0 at x > c.
double dipole_element(const WannierPair& pair);

}  // namespace dsq
