#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "dsq/bogoliubov.hpp"
#include "dsq/error.hpp"

using namespace dsq;
using doctest::Approx;

namespace {

double bisect_k(double omega) {
    double lo = 0.0;
    double hi = 1.0;
    while (dispersion(hi).eps < omega) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (dispersion(mid).eps < omega ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("dispersion examples") {
    CHECK(dispersion(1.0).eps == Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(dispersion(0.0).eps == 0.0);
    CHECK(dispersion(0.01).eps / 0.01 == Approx(1.41425).epsilon(1e-5));
    CHECK_THROWS_AS(dispersion(-1.0), ParameterError);
}

TEST_CASE("dispersion properties") {
    double prev = -1.0;
    for (double k = 0.0; k <= 20.0; k += 0.01) {
        const auto d = dispersion(k);
        CHECK(d.eps > prev);
        prev = d.eps;
        CHECK(d.group_velocity > 0.0);
        if (k > 0.0) {
            const double h = 1e-6 * std::max(1.0, k);
            const double fd = (dispersion(k + h).eps - dispersion(k - std::min(h, k)).eps) / (h + std::min(h, k));
            CHECK(d.group_velocity == Approx(fd).epsilon(1e-6));
        }
    }
    CHECK(dispersion(1e-6).group_velocity >= std::sqrt(2.0) - 1e-9);
    CHECK(dispersion(20.0).group_velocity / 40.0 == Approx(1.0).epsilon(0.05));
}

TEST_CASE("resonant wavevector") {
    CHECK(resonant_wavevector(0.16026) == Approx(0.11295).epsilon(2e-4));
    CHECK(resonant_wavevector(0.16026) == Approx(bisect_k(0.16026)).epsilon(1e-12));
    CHECK(resonant_wavevector(std::sqrt(3.0)) == Approx(1.0).epsilon(1e-14));
    CHECK(resonant_wavevector(1e-12) < 1e-11);
    CHECK_THROWS_AS(resonant_wavevector(0.0), ParameterError);
    CHECK_THROWS_AS(resonant_wavevector(-0.2), ParameterError);
    for (double w : {1e-6, 1e-3, 0.16026, 1.0, 8.0, 400.0}) {
        CHECK(dispersion(resonant_wavevector(w)).eps == Approx(w).epsilon(1e-12));
    }
    for (double k = 1e-4; k < 20.0; k *= 1.37) CHECK(resonant_wavevector(dispersion(k).eps) == Approx(k).epsilon(1e-10));
}

TEST_CASE("mode amplitudes") {
    const double k = 0.7;
    const double eps = dispersion(k).eps;
    const double pref = 1.0 / std::sqrt(4.0 * std::numbers::pi) / eps;

    // at the centre the tanh term drops out and sech^2 = 1
    const auto u0 = mode_u(k, 1.5, 1.5);
    CHECK(u0.real() == Approx(pref * ((k * k + 2 * eps) * 0.5 * k + k)).epsilon(1e-14));
    CHECK(std::abs(u0.imag()) < 1e-15);
    const auto v0 = mode_v(k, 1.5, 1.5);
    CHECK(v0.real() == Approx(pref * ((k * k - 2 * eps) * 0.5 * k + k)).epsilon(1e-14));

    std::vector<double> xs;
    for (double x = -30.0; x <= 30.0; x += 0.37) xs.push_back(x);
    const double d = 2.5;
    const auto shifted = mode_amplitudes(k, xs, 0.5 * d);
    std::vector<double> ys;
    for (double x : xs) ys.push_back(x - 0.5 * d);
    const auto base = mode_amplitudes(k, ys, 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(std::abs(shifted.u[i] - base.u[i]) < 1e-12);
        CHECK(std::abs(shifted.v[i] - base.v[i]) < 1e-12);
    }

    // far-field flatness of |u|^2 - |v|^2
    for (double c : {0.0, 3.0}) {
        const double ref = std::norm(mode_u(k, c + 10.0, c)) - std::norm(mode_v(k, c + 10.0, c));
        for (double y = 10.0; y < 60.0; y += 0.5) {
            for (double s : {-1.0, 1.0}) {
                const double x = c + s * y;
                const double w = std::norm(mode_u(k, x, c)) - std::norm(mode_v(k, x, c));
                CHECK(std::abs(w - ref) <= 1e-6 * std::abs(ref));
            }
        }
    }

    // parity: reflection about the centre conjugates the amplitude
    for (double y = 0.0; y < 8.0; y += 0.3) {
        const double c = -1.2;
        CHECK(std::abs(mode_u(k, c - y, c) - std::conj(mode_u(k, c + y, c))) < 1e-14);
        CHECK(std::abs(mode_v(k, c - y, c) - std::conj(mode_v(k, c + y, c))) < 1e-14);
    }

    CHECK_THROWS_AS(mode_u(0.0, 0.0, 0.0), ParameterError);
    CHECK_THROWS_AS(mode_amplitudes(-1.0, xs, 0.0), ParameterError);
}
