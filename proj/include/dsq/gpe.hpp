#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dsq/model.hpp"

namespace dsq {

enum class Boundary { Periodic, BoxWalls };

// Uniform periodic grid x_n = -length/2 + n * spacing. With BoxWalls a smooth
// wall potential confines the condensate to |x| < box_length / 2.
struct Grid1D {
    double length = 64.0;
    std::size_t points = 1024;
    Boundary boundary = Boundary::Periodic;
    double box_length = 0.0;  // BoxWalls only

    double spacing() const { return length / static_cast<double>(points); }
    double x(std::size_t n) const { return -0.5 * length + spacing() * static_cast<double>(n); }
    std::vector<double> coordinates() const;
    // Index of -x(n); the grid is symmetric about x = 0.
    std::size_t mirror(std::size_t n) const { return (points - n) % points; }

    // points a power of two and >= 256, spacing <= 1/8, walls inside the grid.
    void validate() const;
};

// Smallest power-of-two grid over `length` with spacing <= max_spacing.
Grid1D grid_for(double length, double max_spacing = 0.125, Boundary b = Boundary::Periodic,
                double box_length = 0.0);

struct LatticeField {
    Grid1D grid;
    std::vector<std::complex<double>> values;
    double reference_density = 1.0;  // plateau n0; the nonlinearity is g = 1 / n0

    double norm() const;
    std::vector<double> density() const;
    std::vector<double> phase() const;
};

struct WallSpec {
    double height = 50.0;  // units of mu
    double width = 1.0;    // units of xi
};

// Zero for Periodic; height [1 + tanh((|x| - box/2) / width)] / 2 for BoxWalls.
std::vector<double> wall_potential(const Grid1D& grid, const WallSpec& walls = {});

enum class TimeMode { RealTime, ImaginaryTime };

// Strang split-step for i psi_t = -psi_xx / 2 + (V + |psi|^2 / n0) psi. In
// imaginary time the norm is restored after every step. Throws ParameterError
// if dt > 0.1 spacing^2 and NumericError on a non-finite field.
LatticeField split_step_evolve(const LatticeField& field, std::span<const double> potential, double dt,
                               std::size_t steps, TimeMode mode);

// Energy functional of the condensate field.
double gpe_energy(const LatticeField& field, std::span<const double> potential);

// Product of tanh(x - x_j) factors, times the Thomas-Fermi wall envelope,
// then imaginary-time smoothing at fixed chemical potential for `smoothing_time`.
LatticeField imprint_solitons(const Grid1D& grid, std::span<const double> positions, double n0,
                              double smoothing_time = 0.5, const WallSpec& walls = {});

// Optional back-action term chi |phi|^2 for the condensate potential.
std::vector<double> backaction_potential(const LatticeField& impurity, double chi);

enum class ImpurityDepth {
    ExactPT,      // nu (nu + 1) / (2 m_r): the analytic spectrum is exact
    FromCoupling  // chi n0 from the selected nu convention
};

struct RelaxOptions {
    double dtau = 5e-3;
    double max_tau = 400.0;
    double tolerance = 1e-10;  // relative energy change per check
    std::size_t check_every = 20;
    ImpurityDepth depth = ImpurityDepth::ExactPT;
};

struct ImpurityStates {
    LatticeField phi0;
    LatticeField phi1;
    double energies[2] = {0.0, 0.0};  // relative to the chi n0 offset
    bool bound[2] = {false, false};
    bool converged[2] = {false, false};
    double depth = 0.0;
    std::vector<double> history0;  // Rayleigh quotients at each check
    std::vector<double> history1;
};

// Impurity bound states in the frozen soliton potential -depth (1 - |psi|^2 / n0).
// The soliton must be centred at x = 0.
ImpurityStates relax_impurity(const LatticeField& soliton_field, const ModelParams& params,
                              const RelaxOptions& opt = {});

// Pure-grid impurity solve for a given potential (used by relax_impurity).
double impurity_energy(const LatticeField& phi, std::span<const double> potential, double mass_ratio);

struct MultiSolitonOptions {
    double n0 = 1.0;
    double max_spacing = 0.1;
    double dt_factor = 0.1;  // dt = dt_factor * spacing^2
    std::size_t samples = 101;
    double wall_margin = 8.0;
    WallSpec walls{};
};

struct CentroidTracks {
    std::vector<double> t;
    std::vector<std::vector<double>> x;  // x[sample][soliton]
    std::vector<double> initial;
    bool lost = false;
    std::optional<double> loss_time;
    Grid1D grid;
    double dt = 0.0;

    std::vector<double> max_displacement() const;
};

// Density minima by parabolic interpolation, searched within
// +-window of each guess.
std::vector<double> locate_minima(const LatticeField& field, std::span<const double> guesses, double window);

// Number of density minima deeper than depth_fraction * n0 inside the box.
std::size_t count_dips(const LatticeField& field, double depth_fraction = 0.5);

CentroidTracks multi_soliton_experiment(std::size_t count, double spacing, double box_length, double t_final,
                                        const MultiSolitonOptions& opt = {});

}  // namespace dsq
