#pragma once

// Interaction energy of a static polarizable dipole held inside the
// medium-filled wedge: U = -(1/2) alpha(0) <E^2>. The medium enters only
// through the prefactor (sqrt(eps mu) eps)^{-1}. Regularization is the
// p-difference against the single-plate (p = 1) case, whose closed form is
// known independently.

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "wedgecas/geometry.hpp"
#include "wedgecas/mode_sum.hpp"
#include "wedgecas/quadrature.hpp"

namespace wedgecas {

struct DipoleParams {
    double alpha0 = 1.0;  // static polarizability

    DipoleParams() = default;
    explicit DipoleParams(double a0) : alpha0(a0) {
        if (!(a0 > 0.0)) throw DomainError("DipoleParams: alpha0 must be positive");
    }
};

struct PolderResult {
    double u = 0.0;        // interaction energy
    double f_r = 0.0;      // -dU/dr
    double f_theta = 0.0;  // -(1/r) dU/dtheta, toward the nearer wall
};

namespace detail {

// bracket of the closed form: (3/2) p^4/sin^4(p th) - p^2(p^2-1)/sin^2(p th)
//                             - (1/90)(p^2+11)(p^2-1)
inline double polder_bracket(int p, double theta) {
    const double s = std::sin(p * theta);
    const double s2 = s * s;
    const double p2 = static_cast<double>(p) * p;
    return 1.5 * p2 * p2 / (s2 * s2) - p2 * (p2 - 1.0) / s2 -
           (p2 + 11.0) * (p2 - 1.0) / 90.0;
}

inline double polder_bracket_dtheta(int p, double theta) {
    const double s = std::sin(p * theta);
    const double c = std::cos(p * theta);
    const double p2 = static_cast<double>(p) * p;
    const double s3 = s * s * s;
    return c * (-6.0 * p2 * p2 * p / (s3 * s * s) + 2.0 * p2 * p * (p2 - 1.0) / s3);
}

}  // namespace detail

// Closed-form potential and its analytic gradient. Diverges on the walls;
// sin(p theta) = 0 is rejected.
inline PolderResult u_closed(const WedgeGeometry& geom, const Medium& medium,
                             const DipoleParams& dip, double r, double theta) {
    if (!(r > 0.0)) throw DomainError("u_closed: r must be positive");
    if (!geom.interior_angle(theta))
        throw DomainError("u_closed: theta must lie strictly inside the wedge");
    const int p = geom.p();
    if (std::abs(std::sin(p * theta)) < 1e-300)
        throw DomainError("u_closed: on-wall evaluation, U diverges");

    const double a = dip.alpha0 /
                     (16.0 * kPi * kPi * medium.refractive_index() * medium.epsilon);
    const double r4 = r * r * r * r;
    const double b = detail::polder_bracket(p, theta);
    PolderResult out;
    out.u = -a * b / r4;
    out.f_r = -4.0 * a * b / (r4 * r);
    out.f_theta = (a / (r4 * r)) * detail::polder_bracket_dtheta(p, theta);
    return out;
}

inline PolderResult transverse_force(const WedgeGeometry& geom, const Medium& medium,
                                     const DipoleParams& dip, double r, double theta) {
    return u_closed(geom, medium, dip, r, theta);
}

namespace detail {

// Unregularized spectral sum of Eq.-level products at theta = theta':
// Sum'_m [ I'K' cos(2 nu theta) - (nu^2/(rho^2 r r')) IK cos(2 nu theta)
//          - 2 IK sin^2(nu theta) ], nu = m p.
inline double polder_spectral_sum(IkCache& cache, int p, double rho,
                                  const PointSplit& split, double theta) {
    const double rr = split.r() * split.r_prime();
    return sum_primed(
        [&](int m) {
            const int nu = m * p;
            const double c2 = std::cos(2.0 * nu * theta);
            const double s = std::sin(nu * theta);
            return cache.dik(nu) * c2 -
                   (static_cast<double>(nu) * nu / (rho * rho * rr)) * cache.ik(nu) * c2 -
                   2.0 * cache.ik(nu) * s * s;
        },
        mode_sum_spec());
}

}  // namespace detail

// Point-split mode sum for U (unregularized; diverges as the split closes).
// The split must be radial: the reduction sets theta = theta'.
inline double u_modesum(const WedgeGeometry& geom, const Medium& medium,
                        const DipoleParams& dip, const PointSplit& split,
                        const QuadratureSpec& quad = {}) {
    if (split.theta() != split.theta_prime())
        throw DomainError("u_modesum: requires theta = theta'");
    if (split.coincident())
        throw DomainError("u_modesum: point split must be non-coincident");
    const int p = geom.p();
    const double theta = split.theta();
    const double decay = split.r_greater() - split.r_less();

    auto integrand = [&](double rho) {
        detail::IkCache cache(rho * split.r_less(), rho * split.r_greater());
        return rho * rho * rho *
               detail::polder_spectral_sum(cache, p, rho, split, theta);
    };
    const auto res = integrate_semi_infinite(integrand, decay, quad);
    const double pref = -dip.alpha0 * p /
                        (4.0 * kPi * kPi * medium.refractive_index() * medium.epsilon);
    return pref * res.value;
}

// Regularized potential by the oracle pipeline: Delta(eta) =
// U^{wedge}(split_eta) - U^{p=1}(split_eta) extrapolated eta -> 0, plus the
// exact single-plate closed form added back. The difference of the two
// primed sums is taken inside one rho integral (the unregularized values
// diverge as the split closes; integrating them separately would lose the
// wedge part to quadrature error).
inline double u_regularized_oracle(const WedgeGeometry& geom, const Medium& medium,
                                   const DipoleParams& dip, double r, double theta,
                                   const QuadratureSpec& quad = {},
                                   ExtrapolationSpec extrap = {}) {
    if (!(r > 0.0)) throw DomainError("u_regularized_oracle: r must be positive");
    if (!geom.interior_angle(theta))
        throw DomainError("u_regularized_oracle: theta must be interior");
    const int p = geom.p();
    const double plate = u_closed(WedgeGeometry(1), medium, dip, r, theta).u;
    if (p == 1) return plate;

    std::vector<std::pair<double, double>> samples;
    double eta = extrap.base_delta;
    for (int level = 0; level < extrap.levels; ++level, eta /= extrap.ratio) {
        const PointSplit split = PointSplit::radial(r, eta, theta);

        // cancellation noise scales with the unregularized sums, whose
        // integral goes like (r_> - r_<)^-4
        const double gap = split.r_greater() - split.r_less();
        QuadratureSpec lquad = quad;
        lquad.abs_tol = std::max(
            quad.abs_tol,
            200.0 * std::numeric_limits<double>::epsilon() / (gap * gap * gap * gap));

        // surviving images: angular separations 2 pi n/p and 2 theta + 2 pi n/p
        // (n = 1..p-1) at the split radii
        double decay = 1e300;
        for (int n = 1; n < p; ++n) {
            for (double ang : {2.0 * kPi * n / p, 2.0 * theta + 2.0 * kPi * n / p}) {
                decay = std::min(decay,
                                 image_term_geometry(split.r_less(), split.r_greater(),
                                                     ang)
                                     .R);
            }
        }

        auto integrand = [&](double rho) {
            if (rho * decay > 50.0) return 0.0;  // below double noise
            detail::IkCache cache(rho * split.r_less(), rho * split.r_greater());
            const double wedge = detail::polder_spectral_sum(cache, p, rho, split, theta);
            const double half_space =
                detail::polder_spectral_sum(cache, 1, rho, split, theta);
            return rho * rho * rho * (p * wedge - half_space);
        };
        const auto res = integrate_semi_infinite(integrand, decay, lquad);
        const double pref =
            -dip.alpha0 / (4.0 * kPi * kPi * medium.refractive_index() * medium.epsilon);
        samples.emplace_back(eta, pref * res.value);
    }
    extrap.power = 2.0;  // even series in eta for the symmetric radial split
    if (extrap.tol == 0.0) extrap.tol = 1e-3;  // demand convergence by default
    const double delta = extrapolate_coincidence(samples, extrap).value;
    return delta + plate;
}

}  // namespace wedgecas
