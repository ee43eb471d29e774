#pragma once

#include <array>

namespace wedgecas {

// Diagonal energy-momentum components in natural units (length^-4).
// The diagonal is reported in the order (Theta_rr, Theta_thetatheta,
// Theta_zz, -w), where w is the energy density.
struct StressTensor {
    double r_r = 0.0;
    double theta_theta = 0.0;
    double z_z = 0.0;
    double energy_density = 0.0;  // w

    std::array<double, 4> diagonal() const {
        return {r_r, theta_theta, z_z, -energy_density};
    }
    // 1 - 3 + 1 + 1 pattern; vanishes for the regularized wedge tensor
    double diagonal_sum() const { return r_r + theta_theta + z_z - energy_density; }
};

enum class StressComponent { r_r, theta_theta, z_z, energy_density };

inline constexpr StressComponent kStressComponents[4] = {
    StressComponent::r_r, StressComponent::theta_theta, StressComponent::z_z,
    StressComponent::energy_density};

inline const char* to_string(StressComponent c) {
    switch (c) {
        case StressComponent::r_r: return "Theta_rr";
        case StressComponent::theta_theta: return "Theta_thth";
        case StressComponent::z_z: return "Theta_zz";
        case StressComponent::energy_density: return "w";
    }
    return "?";
}

}  // namespace wedgecas
