#ifndef SJR_TESTS_FIXTURES_HPP
#define SJR_TESTS_FIXTURES_HPP

// Shared scenario builders for the test suites: the documented reference
// setup (the config-module defaults) and a fully symmetric setup whose
// jamming probability at gamma = 1 is exactly 1/2.

#include <vector>

#include "sjr/config.hpp"

namespace fixtures {

inline std::vector<double> db_grid(double start, double stop, double step) {
    sjr::config::Grid g{start, stop, step};
    return g.points();
}

inline sjr::analytics::ScenarioConfig reference_scenario(
    int scenario, std::vector<double> grid = db_grid(-20, 40, 1)) {
    auto settings = sjr::config::defaults();
    settings.scenario = scenario;
    return sjr::config::to_scenario(settings, std::move(grid));
}

inline sjr::analytics::ScenarioConfig symmetric_scenario(
    std::vector<double> grid = {0.0}) {
    auto settings = sjr::config::defaults();
    settings.scenario = 1;
    settings.m_nlos = settings.m_los = 2.4;
    settings.omega_nlos = settings.omega_los = 0.7;
    settings.tg.power_db = settings.hg.power_db = 5.0;
    settings.tg.distance_m = settings.hg.distance_m = 100e3;
    settings.tg.alpha_los = settings.hg.alpha_los = 2.0;
    settings.tg.alpha_nlos = settings.hg.alpha_nlos = 2.0;
    settings.tg.forced_los = settings.hg.forced_los = true;
    return sjr::config::to_scenario(settings, std::move(grid));
}

}  // namespace fixtures

#endif
