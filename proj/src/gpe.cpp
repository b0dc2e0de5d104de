#include "dsq/gpe.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include <fftw3.h>

#include "dsq/error.hpp"

namespace dsq {

namespace {

using cd = std::complex<double>;

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// In-place transforms on an internal buffer; backward includes the 1/N factor.
class Fft {
public:
    explicit Fft(std::size_t n) : n_(n) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        buf_ = fftw_alloc_complex(n);
        const int ni = static_cast<int>(n);
        fwd_ = fftw_plan_dft_1d(ni, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(ni, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    // psi <- IFFT(mult * FFT(psi))
    void filter(std::vector<cd>& psi, const std::vector<cd>& mult) {
        cd* b = reinterpret_cast<cd*>(buf_);
        std::copy(psi.begin(), psi.end(), b);
        fftw_execute(fwd_);
        for (std::size_t i = 0; i < n_; ++i) b[i] *= mult[i];
        fftw_execute(bwd_);
        std::copy(b, b + n_, psi.begin());
    }

    std::vector<cd> forward(const std::vector<cd>& psi) {
        cd* b = reinterpret_cast<cd*>(buf_);
        std::copy(psi.begin(), psi.end(), b);
        fftw_execute(fwd_);
        return {b, b + n_};
    }

private:
    std::size_t n_;
    fftw_complex* buf_ = nullptr;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

std::vector<double> wavenumbers(const Grid1D& g) {
    const std::size_t n = g.points;
    std::vector<double> k(n);
    const double base = 2.0 * std::numbers::pi / g.length;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = i < n / 2 ? static_cast<double>(i) : static_cast<double>(i) - static_cast<double>(n);
        k[i] = base * m;
    }
    return k;
}

double sum_density(const std::vector<cd>& psi) {
    double s = 0.0;
    for (const cd& v : psi) s += std::norm(v);
    return s;
}

void check_potential(const Grid1D& g, std::span<const double> v) {
    if (v.size() != g.points) throw ParameterError("potential size does not match the grid");
}

void project_parity(std::vector<cd>& phi, const Grid1D& g, int sign) {
    std::vector<cd> out(phi.size());
    for (std::size_t n = 0; n < phi.size(); ++n) out[n] = 0.5 * (phi[n] + double(sign) * phi[g.mirror(n)]);
    phi.swap(out);
}

void normalize(std::vector<cd>& phi, double dx, double target = 1.0) {
    const double s = sum_density(phi) * dx;
    if (!(s > 0.0) || !std::isfinite(s)) throw NumericError("field norm vanished or diverged");
    const double f = std::sqrt(target / s);
    for (cd& v : phi) v *= f;
}

}  // namespace

std::vector<double> Grid1D::coordinates() const {
    std::vector<double> xs(points);
    for (std::size_t n = 0; n < points; ++n) xs[n] = x(n);
    return xs;
}

void Grid1D::validate() const {
    if (points < 256 || (points & (points - 1)) != 0)
        throw ParameterError("grid points must be a power of two and at least 256");
    if (!(length > 0.0)) throw ParameterError("grid length must be positive");
    if (spacing() > 0.125 + 1e-12) throw ParameterError("grid spacing exceeds xi/8");
    if (boundary == Boundary::BoxWalls && !(box_length > 0.0 && box_length <= length - 4.0))
        throw ParameterError("box length must be positive and leave at least 2 xi per side for the walls");
}

Grid1D grid_for(double length, double max_spacing, Boundary b, double box_length) {
    if (!(length > 0.0) || !(max_spacing > 0.0)) throw ParameterError("grid_for: invalid length or spacing");
    std::size_t n = 256;
    while (length / static_cast<double>(n) > max_spacing) n *= 2;
    Grid1D g{length, n, b, box_length};
    g.validate();
    return g;
}

double LatticeField::norm() const { return sum_density(values) * grid.spacing(); }

std::vector<double> LatticeField::density() const {
    std::vector<double> d(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) d[i] = std::norm(values[i]);
    return d;
}

std::vector<double> LatticeField::phase() const {
    std::vector<double> p(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) p[i] = std::arg(values[i]);
    return p;
}

std::vector<double> wall_potential(const Grid1D& grid, const WallSpec& walls) {
    std::vector<double> v(grid.points, 0.0);
    if (grid.boundary != Boundary::BoxWalls) return v;
    const double edge = 0.5 * grid.box_length;
    for (std::size_t n = 0; n < grid.points; ++n)
        v[n] = 0.5 * walls.height * (1.0 + std::tanh((std::abs(grid.x(n)) - edge) / walls.width));
    return v;
}

namespace {

// Imaginary time either restores the norm each step or, with fixed_mu, evolves
// under H - mu (mu = 1) so the plateau density is preserved instead.
LatticeField split_step(const LatticeField& field, std::span<const double> potential, double dt,
                        std::size_t steps, TimeMode mode, bool fixed_mu) {
    const Grid1D& g = field.grid;
    g.validate();
    check_potential(g, potential);
    const double dx = g.spacing();
    if (!(dt > 0.0)) throw ParameterError("split_step_evolve: dt must be positive");
    if (dt > 0.1 * dx * dx * (1.0 + 1e-9))
        throw ParameterError("split_step_evolve: dt exceeds 0.1 spacing^2");
    if (!(field.reference_density > 0.0)) throw ParameterError("split_step_evolve: reference density must be positive");

    const bool imag = mode == TimeMode::ImaginaryTime;
    const double gnl = 1.0 / field.reference_density;
    const std::size_t n = g.points;
    const auto k = wavenumbers(g);
    std::vector<cd> kin(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double e = 0.5 * k[i] * k[i] * dt;
        kin[i] = (imag ? cd(std::exp(-e), 0.0) : std::polar(1.0, -e)) * inv_n;
    }

    LatticeField out = field;
    std::vector<cd>& psi = out.values;
    const double target = field.norm();
    Fft fft(n);
    const double h = 0.5 * dt;
    const double shift = fixed_mu ? 1.0 : 0.0;

    auto half_step = [&]() {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = (potential[i] + gnl * std::norm(psi[i]) - shift) * h;
            psi[i] *= imag ? cd(std::exp(-w), 0.0) : std::polar(1.0, -w);
            acc += std::norm(psi[i]);
        }
        return acc;
    };

    for (std::size_t s = 0; s < steps; ++s) {
        half_step();
        fft.filter(psi, kin);
        const double acc = half_step();
        if (!std::isfinite(acc)) {
            std::ostringstream msg;
            msg << "split_step_evolve: field diverged at step " << s;
            throw NumericError(msg.str());
        }
        if (imag && !fixed_mu) normalize(psi, dx, target);
    }
    return out;
}

}  // namespace

LatticeField split_step_evolve(const LatticeField& field, std::span<const double> potential, double dt,
                               std::size_t steps, TimeMode mode) {
    return split_step(field, potential, dt, steps, mode, false);
}

double gpe_energy(const LatticeField& field, std::span<const double> potential) {
    const Grid1D& g = field.grid;
    check_potential(g, potential);
    const double dx = g.spacing();
    const auto k = wavenumbers(g);
    Fft fft(g.points);
    const auto hat = fft.forward(field.values);
    double kinetic = 0.0;
    for (std::size_t i = 0; i < g.points; ++i) kinetic += 0.5 * k[i] * k[i] * std::norm(hat[i]);
    kinetic *= dx / static_cast<double>(g.points);
    const double gnl = 1.0 / field.reference_density;
    double pot = 0.0;
    for (std::size_t i = 0; i < g.points; ++i) {
        const double d = std::norm(field.values[i]);
        pot += (potential[i] + 0.5 * gnl * d) * d;
    }
    return kinetic + pot * dx;
}

LatticeField imprint_solitons(const Grid1D& grid, std::span<const double> positions, double n0,
                              double smoothing_time, const WallSpec& walls) {
    grid.validate();
    if (!(n0 > 0.0)) throw ParameterError("imprint_solitons: n0 must be positive");
    if (positions.empty()) throw ParameterError("imprint_solitons: no positions");
    std::vector<double> sorted(positions.begin(), positions.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] - sorted[i - 1] < 1.0) throw ParameterError("imprint_solitons: overlapping positions");
    const double limit = grid.boundary == Boundary::BoxWalls ? 0.5 * grid.box_length - 1.0 : 0.5 * grid.length;
    if (std::abs(sorted.front()) >= limit || std::abs(sorted.back()) >= limit)
        throw ParameterError("imprint_solitons: position outside the box");
    if (grid.boundary == Boundary::Periodic && sorted.size() % 2 != 0)
        throw ParameterError("imprint_solitons: a periodic grid needs an even number of solitons");

    const auto v = wall_potential(grid, walls);
    LatticeField f;
    f.grid = grid;
    f.reference_density = n0;
    f.values.resize(grid.points);
    for (std::size_t n = 0; n < grid.points; ++n) {
        double amp = std::sqrt(n0 * std::max(0.0, 1.0 - v[n]));
        for (double p : sorted) amp *= std::tanh(grid.x(n) - p);
        f.values[n] = amp;
    }
    if (smoothing_time > 0.0) {
        const double dx = grid.spacing();
        const auto steps = static_cast<std::size_t>(std::ceil(smoothing_time / (0.1 * dx * dx)));
        f = split_step(f, v, smoothing_time / static_cast<double>(steps), steps, TimeMode::ImaginaryTime, true);
    }
    return f;
}

std::vector<double> backaction_potential(const LatticeField& impurity, double chi) {
    std::vector<double> v(impurity.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = chi * std::norm(impurity.values[i]);
    return v;
}

double impurity_energy(const LatticeField& phi, std::span<const double> potential, double mass_ratio) {
    const Grid1D& g = phi.grid;
    check_potential(g, potential);
    const double dx = g.spacing();
    const auto k = wavenumbers(g);
    Fft fft(g.points);
    const auto hat = fft.forward(phi.values);
    double kinetic = 0.0;
    for (std::size_t i = 0; i < g.points; ++i) kinetic += k[i] * k[i] * std::norm(hat[i]);
    kinetic *= 0.5 / mass_ratio * dx / static_cast<double>(g.points);
    double pot = 0.0;
    for (std::size_t i = 0; i < g.points; ++i) pot += potential[i] * std::norm(phi.values[i]);
    return (kinetic + pot * dx) / phi.norm();
}

ImpurityStates relax_impurity(const LatticeField& soliton_field, const ModelParams& params,
                              const RelaxOptions& opt) {
    params.validate();
    const Grid1D& g = soliton_field.grid;
    g.validate();
    if (!(opt.dtau > 0.0) || !(opt.max_tau > 0.0) || opt.check_every == 0)
        throw ParameterError("relax_impurity: invalid relaxation options");

    const auto dens = soliton_field.density();
    // Only the core depletion traps the impurity; wall depletion is excluded.
    const double core = 0.25 * (g.boundary == Boundary::BoxWalls ? g.box_length : g.length);
    std::size_t imin = g.points / 2;
    for (std::size_t n = 0; n < g.points; ++n)
        if (std::abs(g.x(n)) < core && dens[n] < dens[imin]) imin = n;
    if (std::abs(g.x(imin)) > g.spacing() + 1e-12)
        throw ParameterError("relax_impurity: soliton must be centred at x = 0");

    ImpurityStates r;
    r.depth = opt.depth == ImpurityDepth::ExactPT ? params.nu * (params.nu + 1.0) / (2.0 * params.mass_ratio)
                                                  : params.chi_over_g();
    const double n0 = soliton_field.reference_density;
    std::vector<double> v(g.points, 0.0);
    for (std::size_t n = 0; n < g.points; ++n) {
        if (std::abs(g.x(n)) < core) v[n] = -r.depth * (1.0 - dens[n] / n0);
    }
    for (std::size_t n = 0; n < g.points; ++n) v[n] = 0.5 * (v[n] + v[g.mirror(n)]);

    const std::size_t n = g.points;
    const double dx = g.spacing();
    const auto k = wavenumbers(g);
    std::vector<cd> kin(n);
    std::vector<cd> pot_half(n);
    for (std::size_t i = 0; i < n; ++i) {
        kin[i] = std::exp(-0.5 * k[i] * k[i] / params.mass_ratio * opt.dtau) / static_cast<double>(n);
        pot_half[i] = std::exp(-0.5 * v[i] * opt.dtau);
    }
    Fft fft(n);
    const auto total = static_cast<std::size_t>(std::ceil(opt.max_tau / opt.dtau));

    auto relax = [&](int parity, LatticeField& phi, double& energy, bool& converged, std::vector<double>& hist) {
        phi.grid = g;
        phi.reference_density = 1.0;
        phi.values.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = g.x(i);
            phi.values[i] = (parity > 0 ? 1.0 : x) / std::cosh(x);
        }
        normalize(phi.values, dx);
        double prev = impurity_energy(phi, v, params.mass_ratio);
        hist.push_back(prev);
        for (std::size_t s = 1; s <= total; ++s) {
            for (std::size_t i = 0; i < n; ++i) phi.values[i] *= pot_half[i];
            fft.filter(phi.values, kin);
            for (std::size_t i = 0; i < n; ++i) phi.values[i] *= pot_half[i];
            project_parity(phi.values, g, parity);
            normalize(phi.values, dx);
            if (s % opt.check_every == 0) {
                const double e = impurity_energy(phi, v, params.mass_ratio);
                hist.push_back(e);
                if (std::abs(e - prev) <= opt.tolerance * std::abs(e)) {
                    energy = e;
                    converged = true;
                    return;
                }
                prev = e;
            }
        }
        energy = impurity_energy(phi, v, params.mass_ratio);
    };

    relax(+1, r.phi0, r.energies[0], r.converged[0], r.history0);
    relax(-1, r.phi1, r.energies[1], r.converged[1], r.history1);
    for (int b = 0; b < 2; ++b) r.bound[b] = r.energies[b] < 0.0;
    return r;
}

std::vector<double> CentroidTracks::max_displacement() const {
    std::vector<double> m(initial.size(), 0.0);
    for (const auto& row : x)
        for (std::size_t j = 0; j < row.size() && j < m.size(); ++j) m[j] = std::max(m[j], std::abs(row[j] - initial[j]));
    return m;
}

std::vector<double> locate_minima(const LatticeField& field, std::span<const double> guesses, double window) {
    const Grid1D& g = field.grid;
    const auto d = field.density();
    const double dx = g.spacing();
    std::vector<double> out;
    out.reserve(guesses.size());
    for (double guess : guesses) {
        const auto lo = static_cast<long>(std::ceil((guess - window + 0.5 * g.length) / dx));
        const auto hi = static_cast<long>(std::floor((guess + window + 0.5 * g.length) / dx));
        const long last = static_cast<long>(g.points) - 2;
        long best = std::clamp(lo, 1L, last);
        for (long i = std::max(lo, 1L); i <= std::min(hi, last); ++i)
            if (d[static_cast<std::size_t>(i)] < d[static_cast<std::size_t>(best)]) best = i;
        const auto b = static_cast<std::size_t>(best);
        const double den = d[b - 1] - 2.0 * d[b] + d[b + 1];
        const double off = den > 0.0 ? 0.5 * (d[b - 1] - d[b + 1]) / den : 0.0;
        out.push_back(g.x(b) + std::clamp(off, -0.5, 0.5) * dx);
    }
    return out;
}

std::size_t count_dips(const LatticeField& field, double depth_fraction) {
    const Grid1D& g = field.grid;
    const auto d = field.density();
    const double limit = g.boundary == Boundary::BoxWalls ? 0.5 * g.box_length - 3.0 : 0.5 * g.length;
    const double thr = depth_fraction * field.reference_density;
    std::size_t c = 0;
    for (std::size_t i = 1; i + 1 < g.points; ++i) {
        if (std::abs(g.x(i)) >= limit) continue;
        if (d[i] < thr && d[i] < d[i - 1] && d[i] <= d[i + 1]) ++c;
    }
    return c;
}

CentroidTracks multi_soliton_experiment(std::size_t count, double spacing, double box_length, double t_final,
                                        const MultiSolitonOptions& opt) {
    if (count == 0) throw ParameterError("multi_soliton_experiment: count must be positive");
    if (!(spacing >= 1.0)) throw ParameterError("multi_soliton_experiment: spacing must be at least xi");
    if (!(static_cast<double>(count) * spacing < 0.9 * box_length))
        throw ParameterError("multi_soliton_experiment: solitons do not fit in 0.9 of the box");
    if (!(t_final > 0.0)) throw ParameterError("multi_soliton_experiment: t_final must be positive");
    if (opt.samples < 2) throw ParameterError("multi_soliton_experiment: need at least two samples");

    CentroidTracks tr;
    tr.grid = grid_for(box_length + 2.0 * opt.wall_margin, opt.max_spacing, Boundary::BoxWalls, box_length);
    const double dx = tr.grid.spacing();
    std::vector<double> pos(count);
    for (std::size_t j = 0; j < count; ++j)
        pos[j] = (static_cast<double>(j) - 0.5 * static_cast<double>(count - 1)) * spacing;

    LatticeField f = imprint_solitons(tr.grid, pos, opt.n0, 0.5, opt.walls);
    const auto v = wall_potential(tr.grid, opt.walls);

    const std::size_t intervals = opt.samples - 1;
    const double dt_max = opt.dt_factor * dx * dx;
    const auto per_sample = static_cast<std::size_t>(std::ceil(t_final / (dt_max * static_cast<double>(intervals))));
    tr.dt = t_final / static_cast<double>(per_sample * intervals);

    const double window = 0.45 * spacing;
    tr.initial = locate_minima(f, pos, window);
    tr.t.push_back(0.0);
    tr.x.push_back(tr.initial);
    for (std::size_t s = 1; s <= intervals; ++s) {
        f = split_step_evolve(f, v, tr.dt, per_sample, TimeMode::RealTime);
        const double t = tr.dt * static_cast<double>(per_sample * s);
        tr.t.push_back(t);
        tr.x.push_back(locate_minima(f, tr.x.back(), window));
        if (!tr.lost && count_dips(f) < count) {
            tr.lost = true;
            tr.loss_time = t;
        }
    }
    return tr;
}

}  // namespace dsq
