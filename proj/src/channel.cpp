#include "sjr/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace sjr::channel {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;
}  // namespace

void FadingSpec::validate() const {
    if (!(m_los > 0.0 && omega_los > 0.0 && m_nlos > 0.0 && omega_nlos > 0.0)) {
        throw std::invalid_argument("FadingSpec: all shape/scale parameters must be > 0");
    }
}

void RicianSpec::validate() const {
    if (!(k_factor >= 0.0)) {
        throw std::invalid_argument("RicianSpec: k_factor must be >= 0");
    }
}

void Environment::validate() const {
    if (!(beta >= 0.0)) {
        throw std::invalid_argument("Environment: beta must be >= 0");
    }
}

double rician_to_nakagami_m(double k_factor) {
    if (!(k_factor >= 0.0)) {
        throw std::domain_error("rician_to_nakagami_m: requires K >= 0");
    }
    return (k_factor * k_factor + k_factor + 1.0) / (2.0 * k_factor + 1.0);
}

double los_probability(double elevation_deg, const Environment& env) {
    env.validate();
    if (!(elevation_deg > 0.0 && elevation_deg <= 90.0)) {
        throw std::domain_error("los_probability: elevation must be in (0, 90] degrees");
    }
    const double theta = elevation_deg * kDegToRad;
    return std::exp(-env.beta * std::cos(theta) / std::sin(theta));
}

double elevation_from_geometry(double horizontal_distance_m, double obstacle_height_m) {
    if (!(horizontal_distance_m > 0.0) || !(obstacle_height_m > 0.0)) {
        throw std::domain_error("elevation_from_geometry: inputs must be > 0");
    }
    return std::atan(obstacle_height_m / horizontal_distance_m) / kDegToRad;
}

double sample_power_gain(double shape, double scale, rng::PhiloxStream& stream) {
    if (!(shape > 0.0 && scale > 0.0)) {
        throw std::domain_error("sample_power_gain: shape and scale must be > 0");
    }
    return scale * stream.next_gamma(shape);
}

double sample_rician_power(const RicianSpec& spec, rng::PhiloxStream& stream) {
    spec.validate();
    const double phi = (2.0 * stream.next_double() - 1.0) * kPi;
    const double amp_los = std::sqrt(spec.los_power());
    // Unit-power complex scatter component: independent N(0, 1/2) per axis.
    const double sigma = std::sqrt(spec.scatter_power() * 0.5);
    const double re = amp_los * std::cos(phi) + sigma * stream.next_normal();
    const double im = amp_los * std::sin(phi) + sigma * stream.next_normal();
    return re * re + im * im;
}

}  // namespace sjr::channel
