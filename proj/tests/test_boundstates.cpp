#include "doctest.h"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dsq/boundstates.hpp"
#include "dsq/error.hpp"
#include "dsq/model.hpp"
#include "dsq/quadrature.hpp"

using namespace dsq;
using doctest::Approx;

namespace {

// 2F1(2 + 2a, b; c; -1) via the Pfaff transform 2^{-(2+2a)} 2F1(2 + 2a, c - b; c; 1/2),
// summed as a plain power series (c - b = 1 for every term used here).
double f21_at_minus_one(double a, double b, double c) {
    const double p = 2.0 + 2.0 * a;
    const double q = c - b;
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < 400; ++n) {
        term *= (p + n) * (q + n) / ((c + n) * (n + 1.0)) * 0.5;
        sum += term;
        if (std::abs(term) < 1e-18 * sum) break;
    }
    return std::pow(2.0, -p) * sum;
}

// Normalization of tanh sech^a from the hypergeometric closed form.
double a1_hypergeometric(double a) {
    const double a0 = wannier_a0(a);
    const double bracket = f21_at_minus_one(a, a, 1 + a) / a - 2.0 * f21_at_minus_one(a, 1 + a, 2 + a) / (1 + a) +
                           f21_at_minus_one(a, 2 + a, 3 + a) / (2 + a);
    return 1.0 / std::sqrt(std::pow(2.0, 2.0 * a) * a0 * a0 * bracket);
}

double a1_unscaled(double a) {
    const double a0 = wannier_a0(a);
    const double bracket = f21_at_minus_one(a, a, 1 + a) / a - f21_at_minus_one(a, 1 + a, 2 + a) / (1 + a) +
                           f21_at_minus_one(a, 2 + a, 3 + a) / (2 + a);
    return 1.0 / std::sqrt(std::pow(2.0, 2.0 * (1.0 + a)) * a0 * a0 * bracket);
}

double tanh_sinh(const std::function<double(double)>& f, double lo, double hi) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, lo, hi, 1e-14);
}

}  // namespace

TEST_CASE("pt_spectrum examples") {
    const auto s = pt_spectrum(0.75, 1.56);
    REQUIRE(s.count == 2);
    CHECK(s.qubit_ok);
    CHECK(s.energies[0] == Approx(-0.18029).epsilon(1e-4));
    CHECK(s.energies[1] == Approx(-0.02003).epsilon(1e-3));
    CHECK(pt_spectrum(1.0 / 3.0, 1.0).count == 2);
    CHECK(pt_spectrum(1.0 / 3.0, 1.0).qubit_ok);
    const auto low = pt_spectrum(0.3, 1.0);
    CHECK(low.count == 1);
    CHECK_FALSE(low.qubit_ok);
    CHECK_FALSE(pt_spectrum(0.8, 1.0).qubit_ok);
    CHECK_FALSE(pt_spectrum(0.9, 1.0).qubit_ok);
    CHECK_THROWS_AS(pt_spectrum(0.0, 1.0), ParameterError);
}

TEST_CASE("pt_spectrum properties") {
    int prev = 0;
    for (double nu = 0.05; nu < 4.0; nu += 0.0137) {
        const auto s = pt_spectrum(nu, 1.56);
        CHECK(s.count >= prev);
        prev = s.count;
        CHECK(s.count == static_cast<int>(std::floor(nu + 1 + std::sqrt(nu * (1 + nu)) + 1e-12)));
        for (std::size_t i = 1; i < s.energies.size(); ++i) {
            // strictly increasing while n < nu; the count formula may list levels past the well top
            if (nu - static_cast<double>(i) > 0.0) CHECK(s.energies[i] > s.energies[i - 1]);
        }
        if (s.count >= 2) CHECK(s.energies[1] - s.energies[0] == Approx(qubit_gap(nu, 1.56).omega0).epsilon(1e-13));
        if (nu >= 1.0 / 3.0 && nu < 0.8) {
            CHECK(s.count == 2);
            CHECK(s.qubit_ok);
            for (double e : s.energies) CHECK(e < 0.0);
        }
    }
}

TEST_CASE("wannier normalization constants") {
    CHECK(wannier_a0(1.0) == Approx(std::sqrt(0.5)).epsilon(1e-14));
    for (double a : {0.3, 0.5, 0.75, 0.9682, 1.0, 1.5, 2.0, 3.3}) {
        const auto p = wannier_pair(a);
        CAPTURE(a);
        CHECK(p.a1() == Approx(a1_hypergeometric(a)).epsilon(1e-8));
        CHECK(p.a1() == Approx(std::sqrt(2 * a + 1)).epsilon(1e-10));
    }
    // prefactor 2^{2(1+a)} with middle weight 1 does not normalize phi1
    CHECK(std::abs(a1_unscaled(1.0) - wannier_pair(1.0).a1()) > 0.5);
    CHECK_THROWS_AS(wannier_pair(0.0), ParameterError);
    CHECK_THROWS_AS(wannier_pair(-1.0), ParameterError);
}

TEST_CASE("wannier profiles") {
    for (double a : {0.5, 0.9682, 1.0, 2.0}) {
        for (double c : {0.0, -1.25, 3.0}) {
            const auto p = wannier_pair(a, c);
            CAPTURE(a);
            CAPTURE(c);
            const double pts[] = {c - 40, c, c + 40};
            const double n0 = integrate_pieces([&](double x) { return p.phi0(x) * p.phi0(x); }, pts);
            const double n1 = integrate_pieces([&](double x) { return p.phi1(x) * p.phi1(x); }, pts);
            const double ov = integrate_pieces([&](double x) { return p.phi0(x) * p.phi1(x); }, pts);
            CHECK(std::abs(n0 - 1.0) < 1e-10);
            CHECK(std::abs(n1 - 1.0) < 1e-10);
            CHECK(std::abs(ov) < 1e-12);
            for (double y : {0.1, 0.7, 2.5, 9.0}) {
                CHECK(p.phi0(c + y) == Approx(p.phi0(c - y)).epsilon(1e-14));
                CHECK(p.phi1(c + y) == Approx(-p.phi1(c - y)).epsilon(1e-14));
                CHECK(p.phi1(c + y) > 0.0);
            }
            double last0 = p.phi0(c + 2.0);
            double last1 = std::abs(p.phi1(c + 2.0));
            for (double y = 2.1; y < 30.0; y += 0.1) {
                CHECK(p.phi0(c + y) < last0);
                CHECK(std::abs(p.phi1(c - y)) < last1);
                last0 = p.phi0(c + y);
                last1 = std::abs(p.phi1(c - y));
            }
        }
    }
}

TEST_CASE("dipole element") {
    for (double a : {0.5, 1.0, 1.5, 2.0}) {
        const auto p = wannier_pair(a);
        const double c = dipole_element(p);
        CHECK(c > 0.0);
        CHECK(c == Approx(std::sqrt(2 * a + 1) / (2 * a)).epsilon(1e-10));
        // split at the centre so the endpoint clustering resolves the peak
        auto f = [&](double x) { return p.phi1(x) * x * p.phi0(x); };
        const double ts = tanh_sinh(f, -40, 0) + tanh_sinh(f, 0, 40);
        CHECK(std::abs(c - ts) < 1e-9);
        const double even = integrate([&](double x) { return p.phi0(x) * x * p.phi0(x); }, -40.0, 40.0);
        CHECK(std::abs(even) < 1e-12);
    }
    CHECK(dipole_element(wannier_pair(1.0)) == Approx(0.8660).epsilon(1e-4));
    const auto shifted = wannier_pair(1.0, 2.0);
    CHECK(dipole_element(shifted) == Approx(dipole_element(wannier_pair(1.0))).epsilon(1e-12));
}

// The range 0.6 <= C <= 0.86 on alpha in [0.5, 2] is not reproduced by the
// normalized ansatz: C(0.5) = sqrt(2) and C(2) = 0.559.
TEST_CASE("dipole element within 0.6 to 0.86" * doctest::should_fail()) {
    for (double a = 0.5; a <= 2.0 + 1e-12; a += 0.25) {
        const double c = dipole_element(wannier_pair(a));
        CHECK(c >= 0.6);
        CHECK(c <= 0.86);
    }
}
