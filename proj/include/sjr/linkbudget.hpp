#ifndef SJR_LINKBUDGET_HPP
#define SJR_LINKBUDGET_HPP

// Deterministic power arithmetic: free-space and exponent-generalized path
// loss, the circular-aperture antenna pattern, shadowing draws, and the
// per-state linear link coefficients that feed the jamming analytics.
//
// Unit conventions: the public API takes SI units (Hz, m, degrees); the
// 32.45 dB constant fixes MHz and km inside the formulas, converted at the
// formula boundary. Transmit powers are relative dB with an unspecified
// reference; only power ratios enter the signal-to-jamming ratio, so the
// reference cancels.

#include "sjr/channel.hpp"
#include "sjr/rng.hpp"

namespace sjr::linkbudget {

/// One radio link, as configured.
struct LinkSpec {
    double tx_power_db = 0.0;
    double tx_gain_db = 0.0;
    double rx_gain_db = 0.0;
    double frequency_hz = 2e9;
    double distance_m = 1e3;
    double elevation_deg = 90.0;
    channel::Environment env{};
    double alpha_los = 2.0;
    double alpha_nlos = 2.2;
    bool forced_los = false;

    // Full-budget extras; inert at their defaults. The analytics use the
    // exponent path loss only, so these enter Monte Carlo full-budget runs
    // and budget reports exclusively.
    double shadow_sigma_db = 0.0;
    double other_loss_db = 0.0;
    double antenna_aperture_wl = 0.0;  // 0 disables the aperture pattern
    double antenna_boresight_deg = 0.0;

    void validate(const char* name) const;
};

/// Loss components of one link realization, in dB (losses positive).
struct LinkBudgetReport {
    double pl_prop_db = 0.0;
    double pl_shad_db = 0.0;
    double pl_ant_db = 0.0;
    double pl_other_db = 0.0;
};

double db_to_linear(double db);
double linear_to_db(double linear);

/// Free-space path loss 32.45 + 20 log10(f_MHz) + 20 log10(d_km), in dB.
/// Also serves as the inter-satellite link loss.
double fspl_db(double frequency_hz, double distance_m);

/// Exponent-generalized path loss
/// 32.45 + 20 log10(f_MHz) + 10 alpha log10(d_km); equals fspl_db at
/// alpha = 2.
double simplified_pathloss_db(double frequency_hz, double distance_m, double alpha);

/// Circular-aperture pattern value 10 log10(4 |J1(x)/x|^2),
/// x = 2 pi eta sin(omega). Always <= 0 dB; 0 at boresight (the limit
/// J1(x)/x -> 1/2 is taken analytically).
double antenna_loss_db(double aperture_radius_wavelengths, double boresight_angle_deg);

/// Zero-mean Gaussian shadowing draw with standard deviation sigma dB.
double sample_shadowing_db(double sigma_db, rng::PhiloxStream& stream);

/// Linear composite 10^(-(prop + shad + ant + other)/10).
double composite_pathloss_linear(const LinkBudgetReport& report);

/// Linear link coefficient for the given propagation state:
/// 10^((Pt + Gt + Gr)/10) * 10^(-pathloss/10) with the state's exponent.
double link_coefficient(const LinkSpec& spec, channel::PathState state);

/// Both per-state coefficients of one link.
struct LinkCoefficients {
    double los = 0.0;
    double nlos = 0.0;

    double get(channel::PathState v) const {
        return v == channel::PathState::kLos ? los : nlos;
    }
};

LinkCoefficients make_coefficients(const LinkSpec& spec);

}  // namespace sjr::linkbudget

#endif
