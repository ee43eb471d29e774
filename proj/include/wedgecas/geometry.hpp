#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "wedgecas/errors.hpp"

namespace wedgecas {

inline constexpr double kPi = std::numbers::pi_v<double>;

// Perfectly conducting wedge of opening angle alpha = pi/p, walls at
// theta = 0 and theta = alpha, cusp on the z axis. Only integer p is
// representable; the image-sum reduction is valid for nothing else.
class WedgeGeometry {
public:
    explicit WedgeGeometry(int p) : p_(p) {
        if (p < 1)
            throw DomainError("WedgeGeometry: p must be a positive integer, got " +
                              std::to_string(p));
    }

    int p() const { return p_; }
    double alpha() const { return kPi / p_; }
    // half-space bounded by a single plane plate
    bool is_half_space() const { return p_ == 1; }

    bool interior_angle(double theta) const { return theta > 0.0 && theta < alpha(); }

private:
    int p_;
};

// Opening angle for the closed-form expressions, which are analytic in
// alpha and not tied to integer p. Oracle routes never accept this type.
class WedgeAngle {
public:
    explicit WedgeAngle(double alpha) : alpha_(alpha) {
        if (!(alpha > 0.0) || alpha > kPi)
            throw DomainError("WedgeAngle: alpha must lie in (0, pi]");
    }
    WedgeAngle(const WedgeGeometry& g) : alpha_(g.alpha()) {}  // NOLINT(runtime/explicit)

    double alpha() const { return alpha_; }
    double p_real() const { return kPi / alpha_; }

private:
    double alpha_;
};

// Nondispersive isotropic medium filling the wedge.
struct Medium {
    double epsilon = 1.0;
    double mu = 1.0;

    Medium() = default;
    Medium(double eps, double mu_) : epsilon(eps), mu(mu_) {
        if (!(eps > 0.0) || !(mu_ > 0.0))
            throw DomainError("Medium: epsilon and mu must be positive");
    }

    double refractive_index() const { return std::sqrt(epsilon * mu); }
    static Medium vacuum() { return Medium(1.0, 1.0); }
};

// Two spatial evaluation points (r, theta), (r', theta'), separated radially
// and/or azimuthally. Wall angles are only reachable through the dedicated
// surface-force entry points, never through interior().
class PointSplit {
public:
    static PointSplit interior(const WedgeGeometry& geom, double r, double r_prime,
                               double theta, double theta_prime) {
        if (!geom.interior_angle(theta) || !geom.interior_angle(theta_prime))
            throw DomainError("PointSplit: angles must lie strictly inside (0, alpha)");
        return PointSplit(r, r_prime, theta, theta_prime);
    }

    PointSplit(double r, double r_prime, double theta, double theta_prime)
        : r_(r), r_prime_(r_prime), theta_(theta), theta_prime_(theta_prime) {
        if (!(r > 0.0) || !(r_prime > 0.0))
            throw DomainError("PointSplit: radii must be positive");
    }

    double r() const { return r_; }
    double r_prime() const { return r_prime_; }
    double theta() const { return theta_; }
    double theta_prime() const { return theta_prime_; }

    double r_less() const { return std::min(r_, r_prime_); }
    double r_greater() const { return std::max(r_, r_prime_); }
    double xi() const { return r_less() / r_greater(); }
    double psi() const { return theta_ - theta_prime_; }

    bool coincident() const { return r_ == r_prime_ && theta_ == theta_prime_; }

    // Symmetric radial split about r: r_< = r e^-eta, r_> = r e^+eta,
    // theta = theta' = theta. xi = e^-2eta.
    static PointSplit radial(double r, double eta, double theta) {
        if (!(eta > 0.0)) throw DomainError("PointSplit::radial: eta must be positive");
        return PointSplit(r * std::exp(-eta), r * std::exp(eta), theta, theta);
    }

private:
    double r_, r_prime_, theta_, theta_prime_;
};

// Mode label m with Bessel order nu_m = m p.
struct ModeIndex {
    int m = 0;
    int order(const WedgeGeometry& geom) const { return m * geom.p(); }
};

// Image distances R_n, n = 0..p-1, of the Graf reduction.
struct ImageSet {
    std::vector<double> distances;
};

// R_n = sqrt(r^2 + r'^2 - 2 r r' cos(psi + 2 pi n / p)), n = 0..p-1.
inline ImageSet image_distances(const PointSplit& split, const WedgeGeometry& geom) {
    ImageSet out;
    out.distances.reserve(geom.p());
    const double r = split.r(), rp = split.r_prime(), psi = split.psi();
    for (int n = 0; n < geom.p(); ++n) {
        const double ang = psi + 2.0 * kPi * n / geom.p();
        const double rr2 = r * r + rp * rp - 2.0 * r * rp * std::cos(ang);
        out.distances.push_back(std::sqrt(std::max(rr2, 0.0)));
    }
    return out;
}

// Nonzero image distances at coincidence: a_n = 2 r sin(pi n / p), n = 1..p-1.
// p = 1 has no images; the regularized wedge term is zero and callers handle
// that case explicitly.
inline ImageSet coincidence_images(double r, const WedgeGeometry& geom) {
    if (!(r > 0.0)) throw DomainError("coincidence_images: r must be positive");
    if (geom.p() < 2)
        throw DomainError("coincidence_images: p = 1 has no nonzero images");
    ImageSet out;
    out.distances.reserve(geom.p() - 1);
    for (int n = 1; n < geom.p(); ++n)
        out.distances.push_back(2.0 * r * std::sin(kPi * n / geom.p()));
    return out;
}

// Unit selection for dimensional output. Internals are natural units
// (hbar = c = 1, Heaviside-Lorentz); conversion happens only at output
// boundaries.
struct UnitSystem {
    enum class Kind { natural, cgs, si };
    Kind kind = Kind::natural;

    static constexpr double hbar_si = 1.054571817e-34;  // J s
    static constexpr double c_si = 2.99792458e8;        // m/s

    double hbar() const {
        switch (kind) {
            case Kind::natural: return 1.0;
            case Kind::si: return hbar_si;
            case Kind::cgs: return hbar_si * 1e7;  // erg s
        }
        return 1.0;
    }
    double c() const {
        switch (kind) {
            case Kind::natural: return 1.0;
            case Kind::si: return c_si;
            case Kind::cgs: return c_si * 1e2;  // cm/s
        }
        return 1.0;
    }

    // hbar*c in the system's energy*length unit: J*m (SI), erg*cm (cgs), 1 (natural).
    double hbar_c() const {
        switch (kind) {
            case Kind::natural: return 1.0;
            case Kind::si: return hbar_si * c_si;
            case Kind::cgs: return hbar_si * c_si * 1e7 * 1e2;
        }
        return 1.0;
    }

    const char* pressure_unit() const {
        switch (kind) {
            case Kind::natural: return "1/length^4";
            case Kind::si: return "Pa";
            case Kind::cgs: return "dyn/cm^2";
        }
        return "";
    }
    const char* length_unit() const {
        switch (kind) {
            case Kind::natural: return "length";
            case Kind::si: return "m";
            case Kind::cgs: return "cm";
        }
        return "";
    }

    static UnitSystem natural() { return UnitSystem{Kind::natural}; }
    static UnitSystem cgs() { return UnitSystem{Kind::cgs}; }
    static UnitSystem si() { return UnitSystem{Kind::si}; }
};

}  // namespace wedgecas
