#include "dsq/dynamics.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "dsq/error.hpp"

namespace dsq {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

struct Operators {
    Matrix4c sm1, sm2, sp1, sp2, sz_sum;
};

const Operators& ops() {
    static const Operators o = [] {
        Eigen::Matrix2cd sm = Eigen::Matrix2cd::Zero();
        sm(1, 0) = 1.0;  // |g><e|
        Eigen::Matrix2cd sz = Eigen::Matrix2cd::Zero();
        sz(0, 0) = 1.0;
        sz(1, 1) = -1.0;
        const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
        auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
            Matrix4c r;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) r.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
            return r;
        };
        Operators o;
        o.sm1 = kron(sm, id);
        o.sm2 = kron(id, sm);
        o.sp1 = o.sm1.adjoint();
        o.sp2 = o.sm2.adjoint();
        o.sz_sum = kron(sz, id) + kron(id, sz);
        return o;
    }();
    return o;
}

void check_rates(const Rates& r) {
    if (!(r.gamma > 0.0)) throw ParameterError("rates: gamma must be positive");
    if (std::abs(r.Gamma) > r.gamma * (1.0 + 1e-12))
        throw ParameterError("rates: |Gamma| exceeds gamma, dissipator not positive");
    if (!std::isfinite(r.eta)) throw ParameterError("rates: eta not finite");
}

void check_drive(const DriveParams& d) {
    if (!(d.omega_rabi >= 0.0) || !(d.omega_rabi_2 >= 0.0))
        throw ParameterError("drive: Rabi frequency must be non-negative");
    if (!std::isfinite(d.detuning)) throw ParameterError("drive: detuning not finite");
}

Matrix4c hamiltonian(const Rates& r, const DriveParams& d) {
    const auto& o = ops();
    const double w2 = d.symmetric ? d.omega_rabi : d.omega_rabi_2;
    Matrix4c h = -0.5 * d.omega_rabi * (o.sp1 + o.sm1) - 0.5 * w2 * (o.sp2 + o.sm2);
    h += 0.5 * d.detuning * o.sz_sum;
    h += r.eta * (o.sp1 * o.sm2 + o.sp2 * o.sm1);
    return h;
}

Matrix4c apply(const Matrix4c& rho, const Matrix4c& h, const Rates& r) {
    const auto& o = ops();
    Matrix4c out = -I * (h * rho - rho * h);
    const std::array<const Matrix4c*, 2> sm{&o.sm1, &o.sm2};
    const std::array<const Matrix4c*, 2> sp{&o.sp1, &o.sp2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double g = i == j ? r.gamma : r.Gamma;
            if (g == 0.0) continue;
            const Matrix4c pm = *sp[i] * *sm[j];
            out += g * (*sm[j] * rho * *sp[i] - 0.5 * (pm * rho + rho * pm));
        }
    return out;
}

using State = std::array<double, 32>;

}  // namespace

DensityMatrix4 DensityMatrix4::projector(int index, Basis b) {
    if (index < 0 || index > 3) throw ParameterError("projector index must be 0..3");
    DensityMatrix4 r;
    r.basis = b;
    r.m(index, index) = 1.0;
    return r;
}

DensityMatrix4 DensityMatrix4::pure(const Eigen::Vector4cd& psi, Basis b) {
    const double n = psi.squaredNorm();
    if (!(n > 0.0)) throw ParameterError("pure state vector has zero norm");
    DensityMatrix4 r;
    r.basis = b;
    r.m = psi * psi.adjoint() / n;
    return r;
}

DensityChecks density_checks(const DensityMatrix4& rho) {
    DensityChecks c;
    c.hermiticity = (rho.m - rho.m.adjoint()).cwiseAbs().maxCoeff();
    c.trace_error = std::abs(rho.m.trace() - 1.0);
    const Matrix4c h = 0.5 * (rho.m + rho.m.adjoint());
    c.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Matrix4c>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
    return c;
}

void validate(const DensityMatrix4& rho, double tol, double positivity_tol) {
    if (!rho.m.allFinite()) throw ValidationError("density matrix has non-finite entries");
    const DensityChecks c = density_checks(rho);
    std::ostringstream msg;
    if (c.hermiticity > tol) msg << "not Hermitian (" << c.hermiticity << ")";
    else if (c.trace_error > tol) msg << "trace differs from 1 by " << c.trace_error;
    else if (c.min_eigenvalue < -positivity_tol) msg << "negative eigenvalue " << c.min_eigenvalue;
    else return;
    throw ValidationError("invalid density matrix: " + msg.str());
}

Rates rates_from(const RateSet& r) {
    return {r.gamma, r.Gamma_over_gamma * r.gamma, r.eta_over_gamma * r.gamma};
}

const Matrix4c& dicke_matrix() {
    static const Matrix4c u = [] {
        const double h = std::sqrt(0.5);
        Matrix4c m = Matrix4c::Zero();
        m(0, 0) = 1.0;
        m(1, 1) = h;
        m(1, 2) = h;
        m(2, 1) = h;
        m(2, 2) = -h;
        m(3, 3) = 1.0;
        return m;
    }();
    return u;
}

DensityMatrix4 dicke_transform(const DensityMatrix4& rho, Basis target) {
    if (rho.basis == target) return rho;
    const Matrix4c& u = dicke_matrix();
    return {u * rho.m * u.adjoint(), target};
}

Matrix4c liouvillian_apply(const Matrix4c& rho, const Rates& rates, const DriveParams& drive) {
    check_rates(rates);
    check_drive(drive);
    return apply(rho, hamiltonian(rates, drive), rates);
}

Matrix4c liouvillian_apply(const DensityMatrix4& rho, const Rates& rates, const DriveParams& drive) {
    if (rho.basis != Basis::Computational)
        throw ParameterError("liouvillian_apply expects the computational basis");
    return liouvillian_apply(rho.m, rates, drive);
}

Matrix16c superoperator(const Rates& rates, const DriveParams& drive) {
    check_rates(rates);
    check_drive(drive);
    const Matrix4c h = hamiltonian(rates, drive);
    Matrix16c s;
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) {
            Matrix4c e = Matrix4c::Zero();
            e(r, c) = 1.0;
            const Matrix4c img = apply(e, h, rates);
            s.col(4 * c + r) = Eigen::Map<const Eigen::Matrix<cd, 16, 1>>(img.data());
        }
    return s;
}

std::vector<DensityMatrix4> evolve(const DensityMatrix4& rho0, const Rates& rates,
                                   const DriveParams& drive, const std::vector<double>& t_grid,
                                   const EvolveOptions& opt) {
    namespace ode = boost::numeric::odeint;
    validate(rho0);
    if (t_grid.empty()) return {};
    if (t_grid.front() < 0.0) throw ParameterError("evolve: times must be non-negative");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] >= t_grid[i - 1])) throw ParameterError("evolve: times must be ascending");

    const DensityMatrix4 start = dicke_transform(rho0, Basis::Computational);
    const Matrix16c s = superoperator(rates, drive);
    Eigen::Matrix<double, 32, 32> real_form;
    real_form << s.real(), -s.imag(), s.imag(), s.real();

    State x;
    for (int n = 0; n < 16; ++n) {
        x[n] = start.m.data()[n].real();
        x[16 + n] = start.m.data()[n].imag();
    }
    auto rhs = [&](const State& in, State& out, double) {
        Eigen::Map<const Eigen::Matrix<double, 32, 1>> v(in.data());
        Eigen::Map<Eigen::Matrix<double, 32, 1>> dv(out.data());
        dv.noalias() = real_form * v;
    };

    std::vector<double> times;
    times.reserve(t_grid.size() + 1);
    const bool prepend = t_grid.front() > 0.0;
    if (prepend) times.push_back(0.0);
    times.insert(times.end(), t_grid.begin(), t_grid.end());

    std::vector<DensityMatrix4> out;
    out.reserve(t_grid.size());
    std::size_t seen = 0;
    auto observe = [&](const State& st, double) {
        if (prepend && seen++ == 0) return;
        DensityMatrix4 r;
        for (int n = 0; n < 16; ++n) r.m.data()[n] = cd(st[n], st[16 + n]);
        out.push_back(rho0.basis == Basis::Dicke ? dicke_transform(r, Basis::Dicke) : r);
    };

    const double span = times.back() - times.front();
    const double dt0 = span > 0.0 ? std::min(1e-3, span) : 1e-3;
    try {
        ode::integrate_times(
            ode::make_controlled(opt.abs_tol, opt.rel_tol, ode::runge_kutta_dopri5<State>()), rhs, x,
            times.begin(), times.end(), dt0, observe);
    } catch (const std::exception& e) {
        throw NumericError(std::string("evolve: integrator failed: ") + e.what());
    }

    if (opt.check_states) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            try {
                validate(out[i]);
            } catch (const ValidationError& e) {
                std::ostringstream msg;
                msg << "evolve: state at t=" << t_grid[i] << " violates invariants: " << e.what();
                throw NumericError(msg.str());
            }
        }
    }
    return out;
}

UndrivenInit undriven_init_from(const DensityMatrix4& rho) {
    const DensityMatrix4 d = dicke_transform(rho, Basis::Dicke);
    return {d.m(0, 0).real(), d.m(1, 1).real(), d.m(2, 2).real(), d.m(1, 2)};
}

double decay_difference(double a, double b, double t) {
    const double delta = b - a;
    if (delta == 0.0) return t * std::exp(-a * t);
    return -std::exp(-a * t) * std::expm1(-delta * t) / delta;
}

DensityMatrix4 analytic_undriven(const UndrivenInit& init, const Rates& rates, double t) {
    check_rates(rates);
    if (t < 0.0) throw ParameterError("analytic_undriven: t must be non-negative");
    const double g = rates.gamma;
    const double up = g + rates.Gamma;
    const double down = g - rates.Gamma;

    DensityMatrix4 r;
    r.basis = Basis::Dicke;
    const double ee = std::exp(-2.0 * g * t) * init.ee;
    const double ss = std::exp(-up * t) * init.ss + up * decay_difference(up, 2.0 * g, t) * init.ee;
    const double aa = std::exp(-down * t) * init.aa + down * decay_difference(down, 2.0 * g, t) * init.ee;
    const cd sa = std::exp(-(g + 2.0 * I * rates.eta) * t) * init.sa;
    r.m(0, 0) = ee;
    r.m(1, 1) = ss;
    r.m(2, 2) = aa;
    r.m(3, 3) = 1.0 - ee - ss - aa;
    r.m(1, 2) = sa;
    r.m(2, 1) = std::conj(sa);
    return r;
}

SteadyState steady_state(const Rates& rates, const DriveParams& drive) {
    const Matrix16c s = superoperator(rates, drive);
    Eigen::JacobiSVD<Matrix16c> svd(s, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();

    SteadyState out;
    out.smallest_singular = sv(15);
    out.second_singular = sv(14);
    out.unique = out.smallest_singular < 1e-12 && out.second_singular > 1e-6;

    Eigen::Matrix<cd, 16, 1> v = svd.matrixV().col(15);
    Matrix4c rho = Eigen::Map<const Matrix4c>(v.data());
    const cd tr = rho.trace();
    if (std::abs(tr) < 1e-14) throw NumericError("steady_state: null vector has zero trace");
    rho /= tr;
    rho = (0.5 * (rho + rho.adjoint())).eval();
    out.rho = {rho, Basis::Computational};
    out.residual = apply(rho, hamiltonian(rates, drive), rates).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace dsq
