#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wedgecas/casimir_polder.hpp"
#include "oracle_reference.hpp"

using namespace wedgecas;

namespace {
double rel(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}
}  // namespace

TEST_CASE("closed-form potential: plate law, midplane value, medium scaling") {
    const DipoleParams dip(1.0);

    // p = 1: only the first bracket term survives; with z = r sin(theta),
    // U = -3 alpha0 / (32 pi^2 sqrt(eps mu) eps z^4)
    for (double theta : {0.2, 0.9, kPi / 2}) {
        const Medium med(2.25, 1.0);
        const double z = 1.4 * std::sin(theta);
        const double plate = -3.0 / (32.0 * kPi * kPi * 1.5 * 2.25 * z * z * z * z);
        CHECK(rel(u_closed(WedgeGeometry(1), med, dip, 1.4, theta).u, plate) < 1e-13);
    }

    // p = 2 midplane: bracket = 24 - 12 - 0.5 = 11.5
    const WedgeGeometry g2(2);
    const double mid = u_closed(g2, Medium::vacuum(), dip, 1.0, g2.alpha() / 2).u;
    CHECK(rel(mid, -11.5 / (16.0 * kPi * kPi)) < 1e-13);
    CHECK(mid < 0.0);

    // medium scaling: U * sqrt(eps mu) * eps is medium-independent
    const double base = u_closed(g2, Medium::vacuum(), dip, 1.0, 0.5).u;
    for (auto med : {Medium(2.25, 1.0), Medium(2.0, 2.0), Medium(4.0, 0.25)}) {
        const double v = u_closed(g2, med, dip, 1.0, 0.5).u *
                         med.refractive_index() * med.epsilon;
        CHECK(rel(v, base) < 1e-13);
    }

    // U < 0 everywhere in the interior
    for (int p : {1, 2, 3, 5}) {
        const WedgeGeometry g(p);
        for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            CHECK(u_closed(g, Medium(2.25, 1.0), dip, 0.8, f * g.alpha()).u < 0.0);
        }
    }

    // mirror symmetry about the midplane
    for (int p : {2, 3, 4}) {
        const WedgeGeometry g(p);
        const double a = u_closed(g, Medium::vacuum(), dip, 1.0, 0.3 * g.alpha()).u;
        const double b = u_closed(g, Medium::vacuum(), dip, 1.0, 0.7 * g.alpha()).u;
        CHECK(rel(a, b) < 1e-12);
    }

    // wall divergence: U sin^4(p theta) -> -(3/2) p^4 alpha0/(16 pi^2 r^4)
    {
        const WedgeGeometry g(3);
        const double r = 1.1;
        const double coeff = -1.5 * 81.0 / (16.0 * kPi * kPi * std::pow(r, 4));
        for (double theta : {1e-3, 1e-4}) {
            const double s = std::sin(3 * theta);
            const double v = u_closed(g, Medium::vacuum(), dip, r, theta).u * s * s * s * s;
            CHECK(rel(v, coeff) < 1e-5);
        }
    }

    // on-wall evaluation rejected
    CHECK_THROWS_AS(u_closed(g2, Medium::vacuum(), dip, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(u_closed(g2, Medium::vacuum(), dip, 1.0, g2.alpha()), DomainError);
}

TEST_CASE("transverse force: gradient structure") {
    const DipoleParams dip(2.0);
    const WedgeGeometry g(3);
    const Medium med(2.25, 1.0);

    // midplane: azimuthal component vanishes by symmetry
    const auto midf = transverse_force(g, med, dip, 1.0, g.alpha() / 2);
    CHECK(std::abs(midf.f_theta) < 1e-12 * std::abs(midf.f_r));

    // radial component scales as r^-5
    const auto f1 = transverse_force(g, med, dip, 1.0, 0.3);
    const auto f2 = transverse_force(g, med, dip, 2.0, 0.3);
    CHECK(rel(f2.f_r * 32.0, f1.f_r) < 1e-12);

    // analytic gradient matches centered finite differences at O(h^2)
    auto u_of_r = [&](double r) { return u_closed(g, med, dip, r, 0.3).u; };
    auto u_of_th = [&](double th) { return u_closed(g, med, dip, 1.0, th).u; };
    const double fr_fd1 = -testref::fd_first(u_of_r, 1.0, 1e-4);
    const double fr_fd2 = -testref::fd_first(u_of_r, 1.0, 5e-5);
    CHECK(rel(fr_fd1, f1.f_r) < 1e-6);
    CHECK(std::abs(fr_fd2 - f1.f_r) < 0.3 * std::abs(fr_fd1 - f1.f_r));
    const double fth_fd = -testref::fd_first(u_of_th, 0.3, 1e-5) / 1.0;
    CHECK(rel(fth_fd, f1.f_theta) < 1e-5);

    // azimuthal force points toward the nearer wall
    CHECK(transverse_force(g, med, dip, 1.0, 0.2 * g.alpha()).f_theta < 0.0);
    CHECK(transverse_force(g, med, dip, 1.0, 0.8 * g.alpha()).f_theta > 0.0);

    // deflection weakens as sqrt(eps mu) eps grows
    double prev = std::abs(transverse_force(g, Medium::vacuum(), dip, 1.0, 0.3).f_theta);
    for (auto med2 : {Medium(1.5, 1.0), Medium(2.25, 1.0), Medium(4.0, 1.0)}) {
        const double f = std::abs(transverse_force(g, med2, dip, 1.0, 0.3).f_theta);
        CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("mode sum: m = 0 term and medium prefactor") {
    const DipoleParams dip(1.0);
    QuadratureSpec quad;

    // at large p only m = 0 survives: U ~ -alpha0 p/(4 pi^2 sqrt(eps mu) eps)
    //   * Int rho^3 (1/2) I'_0(rho r_<) K'_0(rho r_>) drho
    const WedgeGeometry g40(40);
    const PointSplit s(0.5, 1.0, g40.alpha() / 2, g40.alpha() / 2);
    const double got = u_modesum(g40, Medium::vacuum(), dip, s, quad);
    auto integrand = [&](double rho) {
        return rho * rho * rho * 0.5 * bessel_ik(1, rho * 0.5).i *
               (-bessel_ik(1, rho).k);
    };
    const double ref = -40.0 / (4.0 * kPi * kPi) *
                       integrate_semi_infinite(integrand, 0.5, quad).value;
    CHECK(rel(got, ref) < 5e-9);

    // medium dependence is exactly the (sqrt(eps mu) eps)^{-1} prefactor
    const WedgeGeometry g2(2);
    const PointSplit s2(0.9, 1.0, 0.4, 0.4);
    const double vac = u_modesum(g2, Medium::vacuum(), dip, s2, quad);
    const double med = u_modesum(g2, Medium(2.25, 1.0), dip, s2, quad);
    CHECK(rel(med * 1.5 * 2.25, vac) < 1e-12);

    // angular splits rejected (the reduction fixes theta = theta')
    CHECK_THROWS_AS(
        u_modesum(g2, Medium::vacuum(), dip, PointSplit(0.9, 1.0, 0.4, 0.3), quad),
        DomainError);
}

TEST_CASE("regularized oracle vs closed form") {
    const DipoleParams dip(1.0);
    QuadratureSpec quad;

    // p = 1 reduces to the closed form identically
    const WedgeGeometry g1(1);
    CHECK(u_regularized_oracle(g1, Medium::vacuum(), dip, 1.0, 0.7, quad) ==
          u_closed(g1, Medium::vacuum(), dip, 1.0, 0.7).u);

    // p = 2 midplane: the oracle pipeline lands on the closed form
    const WedgeGeometry g2(2);
    const double theta = g2.alpha() / 2;
    const double closed = u_closed(g2, Medium::vacuum(), dip, 1.0, theta).u;
    const double oracle = u_regularized_oracle(g2, Medium::vacuum(), dip, 1.0, theta, quad);
    CHECK(rel(oracle, closed) < 1e-3);

    // end to end in a medium: the whole pipeline carries (sqrt(eps mu) eps)^-1
    const Medium med(2.0, 2.0);
    const double closed_med = u_closed(g2, med, dip, 1.0, theta).u;
    const double oracle_med = u_regularized_oracle(g2, med, dip, 1.0, theta, quad);
    CHECK(rel(oracle_med, closed_med) < 1e-3);
    CHECK(rel(closed_med * med.refractive_index() * med.epsilon, closed) < 1e-13);
}
