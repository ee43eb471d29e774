#pragma once

// Point-split mode-sum machinery at imaginary frequency: the rotated field
// product kernels, the diagonal stress brackets in both the order-sum form
// (I_nu K_nu) and the image form (K_0 of the image distances), contact-term
// subtraction, and the regularized-tensor oracles.
//
// Conventions. After the rotation omega -> i omega_hat, q -> i rho, the
// oscillatory products map as (i pi/2) J H -> I K and
// (i pi/2) J' H' -> -I' K'. The axial/frequency plane is integrated in polar
// coordinates; the quarter-circle angular moments of k^2 and eps mu
// omega_hat^2 both equal rho^2/2, entering through the axial fraction
// t = k^2/rho^2 (kernels are linear in t, so t = 1/2 is the exact average).
//
// Every diagonal stress combination reduces to a bracket
//   a * rho^2 + b * (1/(r r')) d_theta d_theta' + d * d_r d_r'
// applied to I_nu(rho r_<) K_nu(rho r_>) cos nu(psi) (order sum) or to
// K_0(rho R_n) (image sum), with weights per component:
//   theta_theta (-1, +1, -1), r_r (-1, -1, +1), z_z (+1, 0, 0), w (-1, 0, 0).

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "wedgecas/bessel.hpp"
#include "wedgecas/geometry.hpp"
#include "wedgecas/quadrature.hpp"
#include "wedgecas/stress_tensor.hpp"

namespace wedgecas {

struct BracketWeights {
    double value;    // coefficient of rho^2 * (identity)
    double angular;  // coefficient of (1/(r r')) d_theta d_theta'
    double radial;   // coefficient of d_r d_r'
};

inline BracketWeights bracket_weights(StressComponent c) {
    switch (c) {
        case StressComponent::theta_theta: return {-1.0, +1.0, -1.0};
        case StressComponent::r_r: return {-1.0, -1.0, +1.0};
        case StressComponent::z_z: return {+1.0, 0.0, 0.0};
        case StressComponent::energy_density: return {-1.0, 0.0, 0.0};
    }
    return {0.0, 0.0, 0.0};
}

namespace detail {

// Product table I_nu(a) K_nu(b), grown on demand.
class IkCache {
public:
    IkCache(double a, double b) : a_(a), b_(b) {}
    double ik(int nu) {
        ensure(nu);
        return tab_.ik[nu];
    }
    double dik(int nu) {
        ensure(nu);
        return tab_.dik[nu];
    }

private:
    void ensure(int nu) {
        if (nu > have_) {
            const int target = std::max({2 * have_, nu + 16, 64});
            tab_ = ik_products(target, a_, b_);
            have_ = target;
        }
    }
    double a_, b_;
    IkProductTable tab_;
    int have_ = -1;
};

inline SumSpec mode_sum_spec() {
    SumSpec s;
    s.rel_tol = 1e-15;
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Order-sum (I K) side
// ---------------------------------------------------------------------------

// Bracket applied to I_nu K_nu cos(nu psi): the angular operator yields
// nu^2 cos(nu psi), the radial one rho^2 I' K'.
inline double bracket_mode_value(const BracketWeights& w, int nu, double rho,
                                 double rr_prime, double cos_nu_psi, double P,
                                 double PD) {
    const double rho2 = rho * rho;
    return (w.value * rho2 * P +
            w.angular * (static_cast<double>(nu) * nu / rr_prime) * P +
            w.radial * rho2 * PD) *
           cos_nu_psi;
}

// theta-theta spectral term for mode m at radial wavenumber rho:
// [-rho^2 (I K + I' K') + nu^2/(r r') I K] cos(nu psi), nu = m p,
// Bessel arguments (rho r_<, rho r_>).
inline double thetatheta_spectral_term(ModeIndex m, double rho, const PointSplit& split,
                                       const WedgeGeometry& geom) {
    const int nu = m.order(geom);
    const auto tab = ik_products(nu, rho * split.r_less(), rho * split.r_greater());
    return bracket_mode_value(bracket_weights(StressComponent::theta_theta), nu, rho,
                              split.r() * split.r_prime(),
                              std::cos(nu * split.psi()), tab.ik[nu], tab.dik[nu]);
}

// ---------------------------------------------------------------------------
// Rotated field product kernels (explicit theta, theta' dependence)
// ---------------------------------------------------------------------------

enum class FieldComponent { e_r, e_theta, e_z, h_r, h_theta, h_z };

// Imaginary-frequency image of the effective two-point products, normalized
// so that <X^2> = 1/(2 pi alpha sqrt(eps mu)) Sum'_m Int rho drho k_X and
// (1/2)[eps E_r - eps E_th + eps E_z + mu H_r - mu H_th + mu H_z] reproduces
// the theta-theta bracket above, independently of the axial fraction t.
inline double rotated_product_kernel(FieldComponent f, int m, double rho,
                                     double axial_fraction, const PointSplit& s,
                                     const WedgeGeometry& g, const Medium& med,
                                     double P, double PD) {
    const int nu = m * g.p();
    const double t = axial_fraction;
    const double rho2 = rho * rho;
    const double nu2_rr = static_cast<double>(nu) * nu / (s.r() * s.r_prime());
    const double cc = std::cos(nu * s.theta()) * std::cos(nu * s.theta_prime());
    const double ss = std::sin(nu * s.theta()) * std::sin(nu * s.theta_prime());
    switch (f) {
        case FieldComponent::e_r:
            return 2.0 * (-t * rho2 * PD + (1.0 - t) * nu2_rr * P) / med.epsilon * ss;
        case FieldComponent::e_theta:
            return 2.0 * ((1.0 - t) * rho2 * PD - t * nu2_rr * P) / med.epsilon * cc;
        case FieldComponent::e_z:
            return -2.0 * rho2 * P / med.epsilon * ss;
        case FieldComponent::h_r:
            return 2.0 * (-t * rho2 * PD + (1.0 - t) * nu2_rr * P) / med.mu * cc;
        case FieldComponent::h_theta:
            return 2.0 * ((1.0 - t) * rho2 * PD - t * nu2_rr * P) / med.mu * ss;
        case FieldComponent::h_z:
            return -2.0 * rho2 * P / med.mu * cc;
    }
    return 0.0;
}

inline double rotated_product_kernel(FieldComponent f, int m, double rho,
                                     double axial_fraction, const PointSplit& s,
                                     const WedgeGeometry& g, const Medium& med) {
    const int nu = m * g.p();
    const auto tab = ik_products(nu, rho * s.r_less(), rho * s.r_greater());
    return rotated_product_kernel(f, m, rho, axial_fraction, s, g, med, tab.ik[nu],
                                  tab.dik[nu]);
}

// Diagonal stress term assembled from the six kernels at the angular average
// t = 1/2. Algebraically equal to bracket_mode_value with the component's
// weights; kept as a distinct route for cross-checks (it carries the full
// theta, theta' and medium dependence of the kernels).
inline double stress_spectral_term_kernels(StressComponent c, int m, double rho,
                                           const PointSplit& s, const WedgeGeometry& g,
                                           const Medium& med, double P, double PD) {
    // sign patterns: S_ik = -E_i D_k - H_i B_k + (1/2) delta_ik (E.D + H.B)
    double se_r = 1.0, se_th = 1.0, se_z = 1.0;
    switch (c) {
        case StressComponent::r_r: se_r = -1.0; break;
        case StressComponent::theta_theta: se_th = -1.0; break;
        case StressComponent::z_z: se_z = -1.0; break;
        case StressComponent::energy_density: break;
    }
    const double t = 0.5;
    const double e_part =
        se_r * rotated_product_kernel(FieldComponent::e_r, m, rho, t, s, g, med, P, PD) +
        se_th * rotated_product_kernel(FieldComponent::e_theta, m, rho, t, s, g, med, P, PD) +
        se_z * rotated_product_kernel(FieldComponent::e_z, m, rho, t, s, g, med, P, PD);
    const double h_part =
        se_r * rotated_product_kernel(FieldComponent::h_r, m, rho, t, s, g, med, P, PD) +
        se_th * rotated_product_kernel(FieldComponent::h_theta, m, rho, t, s, g, med, P, PD) +
        se_z * rotated_product_kernel(FieldComponent::h_z, m, rho, t, s, g, med, P, PD);
    return 0.5 * (med.epsilon * e_part + med.mu * h_part);
}

// ---------------------------------------------------------------------------
// Image (K_0) side
// ---------------------------------------------------------------------------

// Chain-rule data for one image distance R(r, r', ang) with
// R^2 = r^2 + r'^2 - 2 r r' cos(ang).
struct ImageTermGeometry {
    double R;
    double dr_dr, dr_drp, d2r_drdrp;
    double dth_prod;  // (dR/dtheta)(dR/dtheta') = -(r r' sin ang)^2 / R^2
    double d2r_dthdthp;
};

inline ImageTermGeometry image_term_geometry(double r, double rp, double ang) {
    ImageTermGeometry g{};
    const double c = std::cos(ang), s = std::sin(ang);
    const double R2 = r * r + rp * rp - 2.0 * r * rp * c;
    g.R = std::sqrt(R2);
    const double R = g.R, R3 = R2 * R;
    g.dr_dr = (r - rp * c) / R;
    g.dr_drp = (rp - r * c) / R;
    g.d2r_drdrp = -c / R - (r - rp * c) * (rp - r * c) / R3;
    const double rrs = r * rp * s;
    g.dth_prod = -(rrs * rrs) / R2;
    g.d2r_dthdthp = -r * rp * c / R + rrs * rrs / R3;
    return g;
}

// Bracket applied to K_0(rho R) through the chain rule;
// K_0' = -K_1, K_0'' = K_0 + K_1/u.
inline double bracket_image_value(const BracketWeights& w, double rho,
                                  const ImageTermGeometry& g, double rr_prime) {
    const double u = rho * g.R;
    const double k0 = bessel_k0(u);
    const double k1 = bessel_k1(u);
    const double rho2 = rho * rho;
    double out = w.value * rho2 * k0;
    if (w.radial != 0.0 || w.angular != 0.0) {
        const double k0pp = k0 + k1 / u;
        const double k0p = -k1;
        if (w.radial != 0.0)
            out += w.radial *
                   (rho2 * k0pp * g.dr_dr * g.dr_drp + rho * k0p * g.d2r_drdrp);
        if (w.angular != 0.0)
            out += w.angular *
                   (rho2 * k0pp * g.dth_prod + rho * k0p * g.d2r_dthdthp) / rr_prime;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graf addition theorem (standalone check surface)
// ---------------------------------------------------------------------------

// Sum_{n=0}^{p-1} K_0(rho R_n)
inline double graf_image_sum(double rho, const PointSplit& split,
                             const WedgeGeometry& geom) {
    const auto images = image_distances(split, geom);
    double sum = 0.0;
    for (double R : images.distances) sum += bessel_k0(rho * R);
    return sum;
}

// 2 p Sum'_m I_{mp}(rho r_<) K_{mp}(rho r_>) cos(m p psi)
inline double graf_order_sum(double rho, const PointSplit& split,
                             const WedgeGeometry& geom) {
    detail::IkCache cache(rho * split.r_less(), rho * split.r_greater());
    const double psi = split.psi();
    const int p = geom.p();
    const double sum = sum_primed(
        [&](int m) {
            const int nu = m * p;
            return cache.ik(nu) * std::cos(nu * psi);
        },
        detail::mode_sum_spec());
    return 2.0 * p * sum;
}

// ---------------------------------------------------------------------------
// Point-split stress evaluations (order-sum and image routes)
// ---------------------------------------------------------------------------

namespace detail {

inline void require_noncoincident(const PointSplit& s, const char* who) {
    if (s.coincident())
        throw DomainError(std::string(who) + ": point split must be non-coincident");
}

}  // namespace detail

// <S_c(r)> by the order sum: p/(2 pi^2 sqrt(eps mu)) Sum'_m Int rho drho ...
inline double s_component_modesum(StressComponent c, const WedgeGeometry& geom,
                                  const Medium& medium, const PointSplit& split,
                                  const QuadratureSpec& quad = {}) {
    detail::require_noncoincident(split, "s_component_modesum");
    const auto w = bracket_weights(c);
    const int p = geom.p();
    const double rr = split.r() * split.r_prime();
    const double psi = split.psi();
    const double decay = image_distances(split, geom).distances[0];

    auto integrand = [&](double rho) {
        detail::IkCache cache(rho * split.r_less(), rho * split.r_greater());
        const double inner = sum_primed(
            [&](int m) {
                const int nu = m * p;
                return bracket_mode_value(w, nu, rho, rr, std::cos(nu * psi),
                                          cache.ik(nu), cache.dik(nu));
            },
            detail::mode_sum_spec());
        return rho * inner;
    };
    const auto res = integrate_semi_infinite(integrand, decay, quad);
    return p / (2.0 * kPi * kPi * medium.refractive_index()) * res.value;
}

inline double s_thetatheta_modesum(const WedgeGeometry& geom, const Medium& medium,
                                   const PointSplit& split,
                                   const QuadratureSpec& quad = {}) {
    return s_component_modesum(StressComponent::theta_theta, geom, medium, split, quad);
}

// Per-image contributions of the Graf-reduced form, prefactor included:
// term_n = 1/(4 pi^2 sqrt(eps mu)) Int rho drho [bracket K_0(rho R_n)].
inline std::vector<double> s_component_image_terms(StressComponent c,
                                                   const WedgeGeometry& geom,
                                                   const Medium& medium,
                                                   const PointSplit& split,
                                                   const QuadratureSpec& quad = {}) {
    detail::require_noncoincident(split, "s_component_image_terms");
    const auto w = bracket_weights(c);
    const double rr = split.r() * split.r_prime();
    const double pref = 1.0 / (4.0 * kPi * kPi * medium.refractive_index());

    std::vector<double> terms;
    terms.reserve(geom.p());
    for (int n = 0; n < geom.p(); ++n) {
        const double ang = split.psi() + 2.0 * kPi * n / geom.p();
        const auto g = image_term_geometry(split.r(), split.r_prime(), ang);
        auto integrand = [&](double rho) {
            return rho * bracket_image_value(w, rho, g, rr);
        };
        const auto res = integrate_semi_infinite(integrand, g.R, quad);
        terms.push_back(pref * res.value);
    }
    return terms;
}

inline double s_component_images(StressComponent c, const WedgeGeometry& geom,
                                 const Medium& medium, const PointSplit& split,
                                 const QuadratureSpec& quad = {}) {
    double sum = 0.0;
    for (double t : s_component_image_terms(c, geom, medium, split, quad)) sum += t;
    return sum;
}

inline double s_thetatheta_images(const WedgeGeometry& geom, const Medium& medium,
                                  const PointSplit& split,
                                  const QuadratureSpec& quad = {}) {
    return s_component_images(StressComponent::theta_theta, geom, medium, split, quad);
}

// Boundary-free contact term: the same quantity for the homogeneous medium,
// equal to the wedge evaluation at alpha = pi (p = 1).
inline double contact_term(const Medium& medium, const PointSplit& split,
                           const QuadratureSpec& quad = {}) {
    return s_thetatheta_modesum(WedgeGeometry(1), medium, split, quad);
}

// ---------------------------------------------------------------------------
// Regularized tensor, image route (coincidence limit taken analytically:
// only the n = 1..p-1 images survive the contact subtraction, each finite)
// ---------------------------------------------------------------------------

inline double regularized_component_oracle(StressComponent c, const WedgeGeometry& geom,
                                           const Medium& medium, double r,
                                           const QuadratureSpec& quad = {}) {
    if (!(r > 0.0)) throw DomainError("regularized_component_oracle: r must be > 0");
    if (geom.p() == 1) return 0.0;
    const auto w = bracket_weights(c);
    const auto images = coincidence_images(r, geom);
    const double pref = 1.0 / (4.0 * kPi * kPi * medium.refractive_index());
    double sum = 0.0;
    for (int n = 1; n < geom.p(); ++n) {
        const auto g = image_term_geometry(r, r, 2.0 * kPi * n / geom.p());
        auto integrand = [&](double rho) {
            return rho * bracket_image_value(w, rho, g, r * r);
        };
        const auto res = integrate_semi_infinite(integrand, images.distances[n - 1], quad);
        sum += pref * res.value;
    }
    return sum;
}

inline double regularized_thetatheta_oracle(const WedgeGeometry& geom,
                                            const Medium& medium, double r,
                                            const QuadratureSpec& quad = {}) {
    return regularized_component_oracle(StressComponent::theta_theta, geom, medium, r,
                                        quad);
}

inline StressTensor regularized_tensor_oracle(const WedgeGeometry& geom,
                                              const Medium& medium, double r,
                                              const QuadratureSpec& quad = {}) {
    StressTensor out;
    out.r_r = regularized_component_oracle(StressComponent::r_r, geom, medium, r, quad);
    out.theta_theta =
        regularized_component_oracle(StressComponent::theta_theta, geom, medium, r, quad);
    out.z_z = regularized_component_oracle(StressComponent::z_z, geom, medium, r, quad);
    out.energy_density = regularized_component_oracle(StressComponent::energy_density,
                                                      geom, medium, r, quad);
    return out;
}

// ---------------------------------------------------------------------------
// Regularized tensor, splitting route (independent validation path):
// D_c(eta) = S_c^{wedge}(split_eta) - S_c^{contact}(split_eta), extrapolated
// eta -> 0. The difference of the two primed sums is taken inside a single
// rho integral; integrating the two routes separately and subtracting would
// commit quadrature error relative to the (divergent) unregularized values.
// The spectral terms here come from the six-kernel assembly, so the full
// theta and medium dependence of Eqs.-level kernels is exercised.
// ---------------------------------------------------------------------------

inline double regularized_component_splitting(StressComponent c,
                                              const WedgeGeometry& geom,
                                              const Medium& medium, double r,
                                              double theta,
                                              const QuadratureSpec& quad = {},
                                              ExtrapolationSpec extrap = {}) {
    if (!(r > 0.0)) throw DomainError("regularized_component_splitting: r must be > 0");
    if (!geom.interior_angle(theta))
        throw DomainError("regularized_component_splitting: theta must be interior");
    if (geom.p() == 1) return 0.0;
    const WedgeGeometry half_space(1);
    const int p = geom.p();

    std::vector<std::pair<double, double>> samples;
    double eta = extrap.base_delta;
    for (int level = 0; level < extrap.levels; ++level, eta /= extrap.ratio) {
        const PointSplit split = PointSplit::radial(r, eta, theta);

        // the difference integrand carries the cancellation noise of the
        // unregularized sums, whose integral scales like the contact value
        // ~ (r_> - r_<)^-4; quadrature cannot resolve below that noise
        const double gap = split.r_greater() - split.r_less();
        QuadratureSpec lquad = quad;
        lquad.abs_tol = std::max(
            quad.abs_tol,
            200.0 * std::numeric_limits<double>::epsilon() / (gap * gap * gap * gap));

        // difference decays with the nearest surviving image
        const auto imgs = image_distances(split, geom).distances;
        double decay = imgs[1];
        for (size_t n = 2; n < imgs.size(); ++n) decay = std::min(decay, imgs[n]);

        auto integrand = [&](double rho) {
            if (rho * decay > 50.0) return 0.0;  // below double noise
            detail::IkCache cache(rho * split.r_less(), rho * split.r_greater());
            const double wedge_sum = sum_primed(
                [&](int m) {
                    const int nu = m * p;
                    return stress_spectral_term_kernels(c, m, rho, split, geom, medium,
                                                        cache.ik(nu), cache.dik(nu));
                },
                detail::mode_sum_spec());
            const double contact_sum = sum_primed(
                [&](int m) {
                    return stress_spectral_term_kernels(c, m, rho, split, half_space,
                                                        medium, cache.ik(m),
                                                        cache.dik(m));
                },
                detail::mode_sum_spec());
            return rho * (p * wedge_sum - contact_sum);
        };
        const auto res = integrate_semi_infinite(integrand, decay, lquad);
        samples.emplace_back(eta,
                             res.value / (2.0 * kPi * kPi * medium.refractive_index()));
    }
    extrap.power = 2.0;  // even series in eta for the symmetric radial split
    if (extrap.tol == 0.0) extrap.tol = 3e-6;  // demand convergence by default
    return extrapolate_coincidence(samples, extrap).value;
}

inline double regularized_thetatheta_splitting(const WedgeGeometry& geom,
                                               const Medium& medium, double r,
                                               double theta,
                                               const QuadratureSpec& quad = {},
                                               const ExtrapolationSpec& extrap = {}) {
    return regularized_component_splitting(StressComponent::theta_theta, geom, medium,
                                           r, theta, quad, extrap);
}

// Angular-splitting cross-check: r = r', psi -> 0 through the image form.
// The contact (n = 0) image is dropped rather than subtracted, and the
// finite images are extrapolated in psi; even in psi by the R_n <-> R_{p-n}
// reflection symmetry.
inline double regularized_component_angular(StressComponent c,
                                            const WedgeGeometry& geom,
                                            const Medium& medium, double r,
                                            const QuadratureSpec& quad = {},
                                            ExtrapolationSpec extrap = {}) {
    if (!(r > 0.0)) throw DomainError("regularized_component_angular: r must be > 0");
    if (geom.p() == 1) return 0.0;
    const auto w = bracket_weights(c);
    const double pref = 1.0 / (4.0 * kPi * kPi * medium.refractive_index());

    std::vector<std::pair<double, double>> samples;
    double psi = extrap.base_delta;
    for (int level = 0; level < extrap.levels; ++level, psi /= extrap.ratio) {
        double value = 0.0;
        for (int n = 1; n < geom.p(); ++n) {
            const auto g = image_term_geometry(r, r, psi + 2.0 * kPi * n / geom.p());
            auto integrand = [&](double rho) {
                return rho * bracket_image_value(w, rho, g, r * r);
            };
            value += pref * integrate_semi_infinite(integrand, g.R, quad).value;
        }
        samples.emplace_back(psi, value);
    }
    extrap.power = 2.0;
    if (extrap.tol == 0.0) extrap.tol = 3e-6;
    return extrapolate_coincidence(samples, extrap).value;
}

inline StressTensor regularized_tensor_splitting(const WedgeGeometry& geom,
                                                 const Medium& medium, double r,
                                                 double theta,
                                                 const QuadratureSpec& quad = {},
                                                 const ExtrapolationSpec& extrap = {}) {
    StressTensor out;
    out.r_r = regularized_component_splitting(StressComponent::r_r, geom, medium, r,
                                              theta, quad, extrap);
    out.theta_theta = regularized_component_splitting(StressComponent::theta_theta,
                                                      geom, medium, r, theta, quad,
                                                      extrap);
    out.z_z = regularized_component_splitting(StressComponent::z_z, geom, medium, r,
                                              theta, quad, extrap);
    out.energy_density = regularized_component_splitting(
        StressComponent::energy_density, geom, medium, r, theta, quad, extrap);
    return out;
}

}  // namespace wedgecas
