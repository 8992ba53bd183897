#include "sjr/linkbudget.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sjr/specfun.hpp"

namespace sjr::linkbudget {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void LinkSpec::validate(const char* name) const {
    auto fail = [&](const char* what) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s: %s", name, what);
        throw std::invalid_argument(buf);
    };
    if (!(frequency_hz > 0.0)) fail("frequency_hz must be > 0");
    if (!(distance_m > 0.0)) fail("distance_m must be > 0");
    if (!(elevation_deg > 0.0 && elevation_deg <= 90.0)) {
        fail("elevation_deg must be in (0, 90]");
    }
    if (!(alpha_los > 0.0)) fail("alpha_los must be > 0");
    if (!(alpha_nlos > 0.0)) fail("alpha_nlos must be > 0");
    if (!(shadow_sigma_db >= 0.0)) fail("shadow_sigma_db must be >= 0");
    if (!(antenna_aperture_wl >= 0.0)) fail("antenna_aperture_wl must be >= 0");
    if (antenna_aperture_wl > 0.0 &&
        !(antenna_boresight_deg > 0.0 && antenna_boresight_deg <= 90.0)) {
        fail("antenna_boresight_deg must be in (0, 90] when the aperture is set");
    }
    env.validate();
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) {
    if (!(linear > 0.0)) {
        throw std::domain_error("linear_to_db: requires a positive value");
    }
    return 10.0 * std::log10(linear);
}

double fspl_db(double frequency_hz, double distance_m) {
    return simplified_pathloss_db(frequency_hz, distance_m, 2.0);
}

double simplified_pathloss_db(double frequency_hz, double distance_m, double alpha) {
    if (!(frequency_hz > 0.0) || !(distance_m > 0.0) || !(alpha > 0.0)) {
        throw std::domain_error("simplified_pathloss_db: inputs must be > 0");
    }
    return 32.45 + 20.0 * std::log10(frequency_hz / 1e6) +
           10.0 * alpha * std::log10(distance_m / 1e3);
}

double antenna_loss_db(double aperture_radius_wavelengths, double boresight_angle_deg) {
    if (!(aperture_radius_wavelengths > 0.0)) {
        throw std::domain_error("antenna_loss_db: aperture radius must be > 0");
    }
    if (!(boresight_angle_deg > 0.0 && boresight_angle_deg <= 90.0)) {
        throw std::domain_error("antenna_loss_db: angle must be in (0, 90] degrees");
    }
    const double x =
        2.0 * kPi * aperture_radius_wavelengths * std::sin(boresight_angle_deg * kPi / 180.0);
    // J1(x)/x -> 1/2 as x -> 0, so the pattern value tends to 0 dB.
    if (x < 1e-8) return 0.0;
    const double ratio = specfun::bessel_j1(x) / x;
    return 10.0 * std::log10(4.0 * ratio * ratio);
}

double sample_shadowing_db(double sigma_db, rng::PhiloxStream& stream) {
    if (!(sigma_db >= 0.0)) {
        throw std::domain_error("sample_shadowing_db: sigma must be >= 0");
    }
    if (sigma_db == 0.0) return 0.0;
    return sigma_db * stream.next_normal();
}

double composite_pathloss_linear(const LinkBudgetReport& report) {
    const double total_db =
        report.pl_prop_db + report.pl_shad_db + report.pl_ant_db + report.pl_other_db;
    if (!std::isfinite(total_db)) {
        throw std::domain_error("composite_pathloss_linear: components must be finite");
    }
    return db_to_linear(-total_db);
}

double link_coefficient(const LinkSpec& spec, channel::PathState state) {
    const double alpha =
        state == channel::PathState::kLos ? spec.alpha_los : spec.alpha_nlos;
    const double pl_db = simplified_pathloss_db(spec.frequency_hz, spec.distance_m, alpha);
    return db_to_linear(spec.tx_power_db + spec.tx_gain_db + spec.rx_gain_db - pl_db);
}

LinkCoefficients make_coefficients(const LinkSpec& spec) {
    return {link_coefficient(spec, channel::PathState::kLos),
            link_coefficient(spec, channel::PathState::kNlos)};
}

}  // namespace sjr::linkbudget
