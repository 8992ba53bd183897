#include "sjr/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace sjr::config {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    // std::from_chars for doubles does not accept "1e9"-style text with
    // leading '+' or stray spaces; strtod does but is locale sensitive.
    // from_chars is locale independent, so normalize the one gap (leading
    // '+') and use it.
    const char* first = v.c_str();
    if (*first == '+') ++first;
    double out = 0.0;
    const char* last = v.c_str() + v.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw ConfigError(key, "expected a number, got '" + value + "'");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError(key, "expected true or false, got '" + value + "'");
}

struct KeyEntry {
    const char* name;
    std::function<void(Settings&, const std::string&)> set;
    std::function<std::string(const Settings&)> get;
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

#define SJR_DOUBLE_KEY(name, field)                                              \
    KeyEntry{name,                                                               \
             [](Settings& s, const std::string& v) { s.field = parse_double(name, v); }, \
             [](const Settings& s) { return format_double(s.field); }}
#define SJR_BOOL_KEY(name, field)                                                \
    KeyEntry{name,                                                               \
             [](Settings& s, const std::string& v) { s.field = parse_bool(name, v); }, \
             [](const Settings& s) { return bool_str(s.field); }}

#define SJR_LINK_KEYS(prefix, link)                                              \
    SJR_DOUBLE_KEY(prefix "_power_db", link.power_db),                           \
    SJR_DOUBLE_KEY(prefix "_tx_gain_db", link.tx_gain_db),                       \
    SJR_DOUBLE_KEY(prefix "_rx_gain_db", link.rx_gain_db),                       \
    SJR_DOUBLE_KEY(prefix "_distance_m", link.distance_m),                       \
    SJR_DOUBLE_KEY(prefix "_elevation_deg", link.elevation_deg),                 \
    SJR_DOUBLE_KEY(prefix "_alpha_los", link.alpha_los),                         \
    SJR_DOUBLE_KEY(prefix "_alpha_nlos", link.alpha_nlos),                       \
    SJR_BOOL_KEY(prefix "_forced_los", link.forced_los),                         \
    SJR_DOUBLE_KEY(prefix "_shadow_sigma_db", link.shadow_sigma_db),             \
    SJR_DOUBLE_KEY(prefix "_other_loss_db", link.other_loss_db),                 \
    SJR_DOUBLE_KEY(prefix "_antenna_aperture_wl", link.antenna_aperture_wl),     \
    SJR_DOUBLE_KEY(prefix "_antenna_boresight_deg", link.antenna_boresight_deg)

const std::vector<KeyEntry>& key_table() {
    static const std::vector<KeyEntry> table = {
        KeyEntry{"scenario",
                 [](Settings& s, const std::string& v) {
                     const double d = parse_double("scenario", v);
                     if (d != 1.0 && d != 2.0) {
                         throw ConfigError("scenario", "must be 1 or 2");
                     }
                     s.scenario = static_cast<int>(d);
                 },
                 [](const Settings& s) { return std::to_string(s.scenario); }},
        SJR_DOUBLE_KEY("frequency_hz", frequency_hz),
        KeyEntry{"beta",
                 [](Settings& s, const std::string& v) { s.beta = parse_beta(v); },
                 [](const Settings& s) { return format_double(s.beta); }},
        SJR_DOUBLE_KEY("m_los", m_los),
        SJR_DOUBLE_KEY("omega_los", omega_los),
        SJR_DOUBLE_KEY("m_nlos", m_nlos),
        SJR_DOUBLE_KEY("omega_nlos", omega_nlos),
        SJR_LINK_KEYS("tg", tg),
        SJR_LINK_KEYS("rg", rg),
        SJR_LINK_KEYS("hg", hg),
    };
    return table;
}

#undef SJR_DOUBLE_KEY
#undef SJR_BOOL_KEY
#undef SJR_LINK_KEYS

}  // namespace

Settings defaults() { return Settings{}; }

double parse_beta(const std::string& name_or_value) {
    const std::string v = trim(name_or_value);
    if (v == "suburban") return channel::Environment::suburban().beta;
    if (v == "urban") return channel::Environment::urban().beta;
    if (v == "dense-urban" || v == "dense_urban") {
        return channel::Environment::dense_urban().beta;
    }
    const double beta = parse_double("beta", v);
    if (!(beta >= 0.0)) throw ConfigError("beta", "must be >= 0");
    return beta;
}

void apply_override(Settings& s, const std::string& key, const std::string& value) {
    for (const auto& entry : key_table()) {
        if (key == entry.name) {
            entry.set(s, value);
            return;
        }
    }
    throw ConfigError(key, "unknown key");
}

Settings parse_text(const std::string& text) {
    Settings s = defaults();
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line, "line " + std::to_string(lineno) +
                                        ": expected key = value");
        }
        apply_override(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return s;
}

Settings load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

std::string echo(const Settings& s) {
    std::string out;
    for (const auto& entry : key_table()) {
        out += entry.name;
        out += " = ";
        out += entry.get(s);
        out += '\n';
    }
    return out;
}

namespace {

linkbudget::LinkSpec to_link(const Settings& s, const Settings::Link& link) {
    linkbudget::LinkSpec spec;
    spec.tx_power_db = link.power_db;
    spec.tx_gain_db = link.tx_gain_db;
    spec.rx_gain_db = link.rx_gain_db;
    spec.frequency_hz = s.frequency_hz;
    spec.distance_m = link.distance_m;
    spec.elevation_deg = link.elevation_deg;
    spec.env = channel::Environment{s.beta};
    spec.alpha_los = link.alpha_los;
    spec.alpha_nlos = link.alpha_nlos;
    spec.forced_los = link.forced_los;
    spec.shadow_sigma_db = link.shadow_sigma_db;
    spec.other_loss_db = link.other_loss_db;
    spec.antenna_aperture_wl = link.antenna_aperture_wl;
    spec.antenna_boresight_deg = link.antenna_boresight_deg;
    return spec;
}

}  // namespace

analytics::ScenarioConfig to_scenario(const Settings& s,
                                      std::vector<double> threshold_grid_db) {
    analytics::ScenarioConfig cfg;
    cfg.scenario = s.scenario == 2 ? analytics::Scenario::kRelay
                                   : analytics::Scenario::kDirect;
    cfg.tg = to_link(s, s.tg);
    if (s.scenario == 2) cfg.rg = to_link(s, s.rg);
    cfg.hg = to_link(s, s.hg);
    cfg.fading = channel::FadingSpec{s.m_los, s.omega_los, s.m_nlos, s.omega_nlos};
    cfg.threshold_grid_db = std::move(threshold_grid_db);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("scenario", e.what());
    }
    return cfg;
}

std::vector<double> Grid::points() const {
    const auto count =
        static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + step * i);
    return out;
}

Grid parse_grid(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw ConfigError("grid", "expected start:stop:step, got '" + text + "'");
    }
    Grid g;
    g.start = parse_double("grid", text.substr(0, c1));
    g.stop = parse_double("grid", text.substr(c1 + 1, c2 - c1 - 1));
    g.step = parse_double("grid", text.substr(c2 + 1));
    if (!(g.step > 0.0)) throw ConfigError("grid", "step must be > 0");
    if (!(g.stop >= g.start)) throw ConfigError("grid", "stop must be >= start");
    return g;
}

std::string format_double(double v) {
    char buf[40];
    if (v == std::floor(v) && std::fabs(v) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Trim to the shortest representation that round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        char probe[40];
        const int len = std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        double back = 0.0;
        if (std::from_chars(probe, probe + len, back).ec == std::errc() && back == v) {
            return probe;
        }
    }
    return buf;
}

}  // namespace sjr::config
