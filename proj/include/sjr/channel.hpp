#ifndef SJR_CHANNEL_HPP
#define SJR_CHANNEL_HPP

// Small-scale fading models for the satellite-to-ground links: the Rician
// channel, its Gamma power-gain approximation, the elevation-dependent LOS
// probability, and samplers for all of them.

#include "sjr/rng.hpp"

namespace sjr::channel {

enum class PathState { kLos, kNlos };

/// Gamma power-gain parameters per propagation state. The channel power
/// gain in state v is Gamma-distributed with shape m_v and scale omega_v,
/// so the mean power is m_v * omega_v (1 for the default parameter set).
struct FadingSpec {
    double m_los = 3.0;
    double omega_los = 1.0 / 3.0;
    double m_nlos = 2.0;
    double omega_nlos = 0.5;

    double shape(PathState v) const { return v == PathState::kLos ? m_los : m_nlos; }
    double scale(PathState v) const { return v == PathState::kLos ? omega_los : omega_nlos; }

    /// Throws std::invalid_argument unless all four parameters are > 0.
    void validate() const;
};

/// Rician channel h = sqrt(los_power) e^{j phi} + sqrt(scatter_power) h',
/// with h' circular complex Gaussian of unit power and phi uniform on
/// [-pi, pi]. k_factor is the linear LOS-to-scattered power ratio; the two
/// power levels always sum to 1.
struct RicianSpec {
    double k_factor = 0.0;

    // los_power is derived from scatter_power so the two always sum to 1
    // exactly, also in floating point.
    double los_power() const { return 1.0 - scatter_power(); }
    double scatter_power() const { return 1.0 / (k_factor + 1.0); }

    void validate() const;
};

/// Environment geometry constant for the LOS probability model.
struct Environment {
    double beta = 0.35;

    static Environment suburban() { return {0.57}; }
    static Environment urban() { return {0.35}; }
    static Environment dense_urban() { return {0.048}; }

    void validate() const;
};

/// Gamma shape matching the first two moments of a Rician power gain with
/// factor K: (K^2 + K + 1) / (2K + 1). Equals 1 at K = 0 and approaches
/// K/2 for large K.
double rician_to_nakagami_m(double k_factor);

/// LOS probability exp(-beta * cot(theta)) for elevation theta in
/// (0, 90] degrees. Monotone increasing in theta; 1 at zenith.
double los_probability(double elevation_deg, const Environment& env);

/// Elevation angle (degrees) with cot(theta) = horizontal_distance / height.
double elevation_from_geometry(double horizontal_distance_m, double obstacle_height_m);

/// One Gamma(shape, scale) power-gain draw. E = shape*scale,
/// Var = shape*scale^2.
double sample_power_gain(double shape, double scale, rng::PhiloxStream& stream);

/// One Rician power draw |h|^2 with unit mean.
double sample_rician_power(const RicianSpec& spec, rng::PhiloxStream& stream);

}  // namespace sjr::channel

#endif
