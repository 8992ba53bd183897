#ifndef SJR_CONFIG_HPP
#define SJR_CONFIG_HPP

// Flat key = value configuration for the command-line front end, plus the
// grid syntax used by the sweep commands. The defaults describe the
// documented reference setup (2 GHz downlink at 550/600 km against a
// forced-LOS jammer at 20 km); a config file only lists overrides.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sjr/analytics.hpp"

namespace sjr::config {

/// Parse or validation failure; `key` names the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key, const std::string& what)
        : std::runtime_error("config key '" + key + "': " + what), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Resolved settings. beta applies to every link.
struct Settings {
    int scenario = 1;
    double frequency_hz = 2e9;
    double beta = 0.35;
    double m_los = 3.0;
    double omega_los = 1.0 / 3.0;
    double m_nlos = 2.0;
    double omega_nlos = 0.5;

    struct Link {
        double power_db = 0.0;
        double tx_gain_db = 0.0;
        double rx_gain_db = 0.0;
        double distance_m = 0.0;
        double elevation_deg = 0.0;
        double alpha_los = 2.0;
        double alpha_nlos = 2.2;
        bool forced_los = false;
        double shadow_sigma_db = 0.0;
        double other_loss_db = 0.0;
        double antenna_aperture_wl = 0.0;
        double antenna_boresight_deg = 45.0;
    };
    Link tg{10.0, 0, 0, 550e3, 60.0, 2.0, 2.2, false, 0, 0, 0, 45.0};
    Link rg{10.0, 0, 0, 600e3, 50.0, 2.0, 2.2, false, 0, 0, 0, 45.0};
    Link hg{-10.0, 0, 0, 20e3, 45.0, 2.0, 2.2, true, 0, 0, 0, 45.0};
};

/// Defaults only.
Settings defaults();

/// Parse `key = value` lines ('#' comments and blank lines ignored) on top
/// of the defaults. Unknown keys and malformed values raise ConfigError.
Settings parse_text(const std::string& text);

/// Read and parse a config file. A missing or unreadable file raises
/// ConfigError keyed by the path.
Settings load_file(const std::string& path);

/// Apply one `key`, `value` override (same key set as the file format).
void apply_override(Settings& s, const std::string& key, const std::string& value);

/// Resolve a beta preset name (suburban / urban / dense-urban) or a numeric
/// literal.
double parse_beta(const std::string& name_or_value);

/// Canonical `key = value` listing of every setting; parse_text(echo(s))
/// reproduces s exactly.
std::string echo(const Settings& s);

/// Scenario configuration for the analytics and Monte Carlo layers.
/// Validates link parameters; failures surface as ConfigError.
analytics::ScenarioConfig to_scenario(const Settings& s,
                                      std::vector<double> threshold_grid_db = {});

/// Inclusive sweep grid "start:stop:step".
struct Grid {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> points() const;
};

/// Parse "a:b:step" with b >= a and step > 0; throws ConfigError keyed by
/// "grid" otherwise.
Grid parse_grid(const std::string& text);

/// Locale-independent floating point formatting helpers for CSV output.
std::string format_double(double v);

}  // namespace sjr::config

#endif
