#pragma once

// Closed-form results: the regularized wedge tensor, the dimensional wall
// surface-force density, and the cosmic-string analog.

#include <cmath>

#include "wedgecas/geometry.hpp"
#include "wedgecas/stress_tensor.hpp"

namespace wedgecas {

namespace detail {

// (x + 11)(x - 1) with x = (pi/alpha)^2
inline double wedge_polynomial(double p_real) {
    const double x = p_real * p_real;
    return (x + 11.0) * (x - 1.0);
}

}  // namespace detail

// Regularized energy-momentum tensor of the medium-filled wedge:
// C diag(1, -3, 1, 1) with C = (p^2+11)(p^2-1) / (720 pi^2 sqrt(eps mu) r^4),
// diagonal ordered (Theta_rr, Theta_thth, Theta_zz, -w). Vanishes for
// alpha = pi, and epsilon mu = 1 reproduces the vacuum tensor exactly.
inline StressTensor theta_tensor(const WedgeAngle& angle, const Medium& medium,
                                 double r) {
    if (!(r > 0.0)) throw DomainError("theta_tensor: r must be positive");
    const double c = detail::wedge_polynomial(angle.p_real()) /
                     (720.0 * kPi * kPi * medium.refractive_index() * r * r * r * r);
    StressTensor out;
    out.r_r = c;
    out.theta_theta = -3.0 * c;
    out.z_z = c;
    out.energy_density = -c;  // fourth diagonal entry is -w = +c
    return out;
}

inline StressTensor theta_tensor(const WedgeGeometry& geom, const Medium& medium,
                                 double r) {
    return theta_tensor(WedgeAngle(geom), medium, r);
}

struct SurfaceForce {
    double value = 0.0;  // pressure in the selected unit system
    double r = 0.0;      // distance from the cusp, in the system's length unit
    double alpha = 0.0;
    Medium medium;
    UnitSystem units;
};

// Normal force density on a wall at distance r from the cusp:
// sigma(r) = hbar c / (720 pi^2 sqrt(eps mu) r^4) (pi^2/alpha^2 + 11)
//            (pi^2/alpha^2 - 1),
// equal to -Theta_thth at the wall in natural units. Attractive (positive)
// for alpha < pi. r is in the unit system's length unit (cm for cgs, m for
// SI); the result is in dyn/cm^2, Pa, or 1/length^4.
inline SurfaceForce surface_force_density(const WedgeAngle& angle, const Medium& medium,
                                          double r, const UnitSystem& units) {
    if (!(r > 0.0)) throw DomainError("surface_force_density: r must be positive");
    SurfaceForce out;
    out.r = r;
    out.alpha = angle.alpha();
    out.medium = medium;
    out.units = units;
    out.value = units.hbar_c() * detail::wedge_polynomial(angle.p_real()) /
                (720.0 * kPi * kPi * medium.refractive_index() * r * r * r * r);
    return out;
}

inline SurfaceForce surface_force_density(const WedgeGeometry& geom,
                                          const Medium& medium, double r,
                                          const UnitSystem& units) {
    return surface_force_density(WedgeAngle(geom), medium, r, units);
}

// Straight cosmic string: beta = (1 - 4 G mu_string)^{-1}.
struct StringParams {
    double beta = 1.0;

    static StringParams from_beta(double beta) {
        if (!(beta > 0.0)) throw DomainError("StringParams: beta must be positive");
        return StringParams{beta};
    }
    static StringParams from_g_mu(double g_mu) {
        if (!(g_mu >= 0.0) || g_mu >= 0.25)
            throw DomainError("StringParams: G mu must lie in [0, 1/4)");
        return StringParams{1.0 / (1.0 - 4.0 * g_mu)};
    }
    double g_mu() const { return 0.25 * (1.0 - 1.0 / beta); }
};

// Vacuum tensor outside a straight cosmic string:
// (1/(720 pi^2 r^4)) (beta^2 + 11)(beta^2 - 1) diag(1, -3, 1, 1).
// Identifying beta with pi/alpha gives the vacuum wedge tensor.
inline StressTensor string_tensor(const StringParams& params, double r) {
    if (!(params.beta >= 1.0))
        throw DomainError("string_tensor: beta must be >= 1 (flat space is beta = 1)");
    if (!(r > 0.0)) throw DomainError("string_tensor: r must be positive");
    const double c = detail::wedge_polynomial(params.beta) /
                     (720.0 * kPi * kPi * r * r * r * r);
    StressTensor out;
    out.r_r = c;
    out.theta_theta = -3.0 * c;
    out.z_z = c;
    out.energy_density = -c;
    return out;
}

}  // namespace wedgecas
