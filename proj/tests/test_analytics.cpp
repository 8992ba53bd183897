#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "sjr/analytics.hpp"
#include "sjr/rng.hpp"

using namespace sjr::analytics;
using sjr::channel::FadingSpec;
using sjr::channel::PathState;
using sjr::linkbudget::db_to_linear;
using sjr::linkbudget::LinkCoefficients;
using sjr::rng::PhiloxStream;

namespace {

struct CondCase {
    LinkCoefficients useful;
    LinkCoefficients jammer;
    LosMix jammer_mix;
    FadingSpec fading;
    PathState state;
    double gamma_linear;
};

// Random but valid conditional-probability setups covering forced and mixed
// jammers, both useful states, and a wide rho range.
CondCase random_case(PhiloxStream& rng, int i) {
    CondCase c;
    c.fading.m_los = 0.6 + 4.4 * rng.next_double();
    c.fading.m_nlos = 0.6 + 4.4 * rng.next_double();
    c.fading.omega_los = 0.2 + 2.3 * rng.next_double();
    c.fading.omega_nlos = 0.2 + 2.3 * rng.next_double();
    c.useful.los = db_to_linear(-140.0 + 20.0 * rng.next_double());
    c.useful.nlos = c.useful.los * db_to_linear(-8.0 * rng.next_double());
    c.jammer.los = db_to_linear(-135.0 + 20.0 * rng.next_double());
    c.jammer.nlos = c.jammer.los * db_to_linear(-8.0 * rng.next_double());
    if (rng.next_double() < 0.3) {
        c.jammer_mix = {1.0, 0.0};
    } else {
        const double p = rng.next_double();
        c.jammer_mix = {p, 1.0 - p};
    }
    c.state = i % 2 == 0 ? PathState::kLos : PathState::kNlos;
    c.gamma_linear = db_to_linear(-25.0 + 50.0 * rng.next_double());
    return c;
}

// Direct Monte Carlo estimate of the conditional jamming probability:
// draws the jammer state and both gains, counts threshold crossings.
double conditional_mc(const CondCase& c, std::uint64_t n, std::uint64_t seed) {
    const int workers = 2;
    std::vector<std::uint64_t> hits(workers, 0);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
            std::uint64_t count = 0;
            for (std::uint64_t i = lo; i < hi; ++i) {
                PhiloxStream st(seed, i);
                const double hu = c.fading.scale(c.state) *
                                  st.next_gamma(c.fading.shape(c.state));
                const bool jlos =
                    c.jammer_mix.p_los == 1.0 || st.next_double() < c.jammer_mix.p_los;
                const PathState js = jlos ? PathState::kLos : PathState::kNlos;
                const double hj = c.fading.scale(js) * st.next_gamma(c.fading.shape(js));
                const double du = c.state == PathState::kLos ? c.useful.los : c.useful.nlos;
                const double dj = js == PathState::kLos ? c.jammer.los : c.jammer.nlos;
                if (du * hu < c.gamma_linear * dj * hj) ++count;
            }
            hits[w] = count;
        });
    }
    for (auto& t : pool) t.join();
    std::uint64_t total = 0;
    for (const auto h : hits) total += h;
    return static_cast<double>(total) / static_cast<double>(n);
}

}  // namespace

TEST_CASE("conditional probability: limits and symmetry") {
    const auto cfg = fixtures::reference_scenario(1);
    const auto cu = sjr::linkbudget::make_coefficients(cfg.tg);
    const auto cj = sjr::linkbudget::make_coefficients(cfg.hg);
    const LosMix forced{1.0, 0.0};

    CHECK(jam_prob_conditional(cu, cj, forced, cfg.fading, PathState::kLos, 1e-30) ==
          doctest::Approx(0.0));
    CHECK_THROWS_AS(
        jam_prob_conditional(cu, cj, forced, cfg.fading, PathState::kLos, 0.0),
        std::domain_error);

    // Identical budgets and iid fading at gamma = 1: exactly even odds.
    const LinkCoefficients same{1e-14, 1e-14};
    const FadingSpec iid{2.4, 0.7, 2.4, 0.7};
    CHECK(jam_prob_conditional(same, same, forced, iid, PathState::kLos, 1.0) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("conditional probability: reference values") {
    const auto cfg = fixtures::reference_scenario(1);
    const auto cu = sjr::linkbudget::make_coefficients(cfg.tg);
    const auto cj = sjr::linkbudget::make_coefficients(cfg.hg);
    const LosMix forced{1.0, 0.0};

    CHECK(jam_prob_conditional(cu, cj, forced, cfg.fading, PathState::kLos, 10.0) ==
          doctest::Approx(0.99997820545536873).epsilon(1e-12));
    CHECK(jam_prob_conditional(cu, cj, forced, cfg.fading, PathState::kLos, 0.1) ==
          doctest::Approx(0.37154560274250565).epsilon(1e-12));
    CHECK(jam_prob_conditional(cu, cj, forced, cfg.fading, PathState::kNlos, 10.0) ==
          doctest::Approx(0.99999930657074622).epsilon(1e-12));
}

TEST_CASE("closed form against the quadrature oracle, 50 random setups") {
    PhiloxStream rng(4242, 0);
    for (int i = 0; i < 50; ++i) {
        const CondCase c = random_case(rng, i);
        const double closed = jam_prob_conditional(c.useful, c.jammer, c.jammer_mix,
                                                   c.fading, c.state, c.gamma_linear);
        const double quad = jam_prob_quadrature(c.useful, c.jammer, c.jammer_mix,
                                                c.fading, c.state, c.gamma_linear);
        CHECK(std::fabs(closed - quad) <= 1e-6);
        CHECK(closed >= 0.0);
        CHECK(closed <= 1.0);
    }
}

TEST_CASE("quadrature oracle: symmetric case") {
    const LinkCoefficients same{2e-14, 2e-14};
    const FadingSpec iid{3.0, 1.0 / 3.0, 3.0, 1.0 / 3.0};
    const double q =
        jam_prob_quadrature(same, same, {1.0, 0.0}, iid, PathState::kLos, 1.0);
    CHECK(std::fabs(q - 0.5) <= 1e-7);
}

TEST_CASE("quadrature oracle agrees with direct Monte Carlo within 3 sigma"
          * doctest::timeout(600)) {
    PhiloxStream rng(777, 0);
    const std::uint64_t n = 10'000'000;
    for (int i = 0; i < 20; ++i) {
        const CondCase c = random_case(rng, i);
        const double quad = jam_prob_quadrature(c.useful, c.jammer, c.jammer_mix,
                                                c.fading, c.state, c.gamma_linear);
        const double mc = conditional_mc(c, n, 1000 + i);
        const double sigma =
            std::sqrt(std::max(quad * (1.0 - quad), 1e-12) / static_cast<double>(n));
        CHECK(std::fabs(quad - mc) <= 3.0 * sigma);
    }
}

TEST_CASE("legacy closed-form variant is retained but wrong") {
    // Symmetric setup whose true conditional probability is 1/2; the legacy
    // reduction evaluates to -2 there, which is why it is not the default.
    const LinkCoefficients same{1e-14, 1e-14};
    const FadingSpec iid{3.0, 1.0 / 3.0, 3.0, 1.0 / 3.0};
    const double legacy =
        jam_prob_conditional(same, same, {1.0, 0.0}, iid, PathState::kLos, 1.0,
                             CondClosedForm::kLegacy);
    CHECK(legacy == doctest::Approx(-2.0).epsilon(1e-9));
    const double quad =
        jam_prob_quadrature(same, same, {1.0, 0.0}, iid, PathState::kLos, 1.0);
    CHECK(std::fabs(legacy - quad) > 1.0);
}

TEST_CASE("per-link probability: zenith reduces to the LOS conditional") {
    auto cfg = fixtures::reference_scenario(1);
    cfg.tg.elevation_deg = 90.0;
    const auto cu = sjr::linkbudget::make_coefficients(cfg.tg);
    const auto cj = sjr::linkbudget::make_coefficients(cfg.hg);
    const double g = db_to_linear(3.0);
    const double via_link = jam_prob_link(cfg.tg, cfg.hg, cfg.fading, g);
    const double via_cond = jam_prob_conditional(cu, cj, los_mix_for(cfg.hg),
                                                 cfg.fading, PathState::kLos, g);
    CHECK(via_link == doctest::Approx(via_cond).epsilon(1e-15));
}

TEST_CASE("per-link probability: reference value and quadrature cross-check") {
    const auto cfg = fixtures::reference_scenario(1);
    CHECK(jam_prob_link(cfg.tg, cfg.hg, cfg.fading, 0.1) ==
          doctest::Approx(0.46167836185139523).epsilon(1e-12));

    // beta = 0 on both links: pure LOS mixture; cross-check the quadrature.
    auto pure = cfg;
    pure.tg.env.beta = 0.0;
    pure.hg.env.beta = 0.0;
    pure.hg.forced_los = false;
    const auto cu = sjr::linkbudget::make_coefficients(pure.tg);
    const auto cj = sjr::linkbudget::make_coefficients(pure.hg);
    for (const double gdb : {-12.0, -3.0, 4.0}) {
        const double g = db_to_linear(gdb);
        const double link = jam_prob_link(pure.tg, pure.hg, pure.fading, g);
        const double quad = jam_prob_quadrature(cu, cj, {1.0, 0.0}, pure.fading,
                                                PathState::kLos, g);
        CHECK(std::fabs(link - quad) <= 1e-6);
    }
}

TEST_CASE("scenario delegation and usage errors") {
    const auto direct = fixtures::reference_scenario(1);
    const auto relay = fixtures::reference_scenario(2);
    const double g = db_to_linear(-5.0);

    CHECK(jam_prob_scenario1(direct, g) ==
          jam_prob_link(direct.tg, direct.hg, direct.fading, g));
    CHECK_THROWS_AS(jam_prob_scenario1(relay, g), std::invalid_argument);
    CHECK_THROWS_AS(jam_prob_scenario2(direct, g), std::invalid_argument);

    auto broken = relay;
    broken.rg.reset();
    CHECK_THROWS_AS(jam_prob_scenario2(broken, g), std::invalid_argument);
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("forced-LOS jammer equals an explicit zenith jammer") {
    auto forced = fixtures::reference_scenario(1);
    auto zenith = forced;
    zenith.hg.forced_los = false;
    zenith.hg.elevation_deg = 90.0;
    for (const double gdb : {-15.0, -5.0, 5.0}) {
        const double g = db_to_linear(gdb);
        CHECK(jam_prob_scenario1(forced, g) == jam_prob_scenario1(zenith, g));
    }
}

TEST_CASE("relay scenario: exact product law") {
    const auto relay = fixtures::reference_scenario(2);
    for (const double gdb : {-18.0, -9.0, -1.0, 6.0, 25.0}) {
        const double g = db_to_linear(gdb);
        const double p_tg = jam_prob_link(relay.tg, relay.hg, relay.fading, g);
        const double p_rg = jam_prob_link(*relay.rg, relay.hg, relay.fading, g);
        const double p2 = jam_prob_scenario2(relay, g);
        CHECK(std::fabs(p2 - p_tg * p_rg) <= 1e-15);
        CHECK(p2 <= std::min(p_tg, p_rg) + 1e-15);
    }
    CHECK(jam_prob_scenario2(relay, 0.1) ==
          doctest::Approx(0.261242316564454).epsilon(1e-9));

    // Identical direct and relay links square the per-link value.
    auto twin = relay;
    twin.rg = twin.tg;
    const double g = db_to_linear(-6.0);
    const double p = jam_prob_link(twin.tg, twin.hg, twin.fading, g);
    CHECK(jam_prob_scenario2(twin, g) == doctest::Approx(p * p).epsilon(1e-14));
}

TEST_CASE("curve evaluation") {
    auto cfg = fixtures::reference_scenario(1, {10.0});
    const auto single = sjr_cdf_curve(cfg);
    REQUIRE(single.p_jam.size() == 1);
    CHECK(single.p_jam[0] == jam_prob_scenario1(cfg, db_to_linear(10.0)));

    cfg.threshold_grid_db = fixtures::db_grid(-20, 40, 1);
    const auto curve = sjr_cdf_curve(cfg);
    REQUIRE(curve.p_jam.size() == 61);
    for (std::size_t i = 0; i < curve.p_jam.size(); ++i) {
        CHECK(curve.p_jam[i] >= 0.0);
        CHECK(curve.p_jam[i] <= 1.0);
        CHECK(curve.p_jam_los_cond[i] >= 0.0);
        CHECK(curve.p_jam_nlos_cond[i] <= 1.0);
        if (i > 0) CHECK(curve.p_jam[i] >= curve.p_jam[i - 1] - 1e-12);
    }

    cfg.threshold_grid_db = {0.0, 0.0};
    CHECK_THROWS_AS(sjr_cdf_curve(cfg), std::invalid_argument);
}

TEST_CASE("probability range over random parameters") {
    PhiloxStream rng(6060, 0);
    for (int i = 0; i < 200; ++i) {
        const CondCase c = random_case(rng, i);
        const double p = jam_prob_conditional(c.useful, c.jammer, c.jammer_mix,
                                              c.fading, c.state, c.gamma_linear);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("monotone in threshold and in jammer power") {
    auto cfg = fixtures::reference_scenario(1);
    double prev = 0.0;
    for (double gdb = -30.0; gdb <= 40.0; gdb += 0.5) {
        const double p = jam_prob_scenario1(cfg, db_to_linear(gdb));
        CHECK(p >= prev - 1e-12);
        prev = p;
    }

    const double g = db_to_linear(-8.0);
    double prev_p = 0.0;
    for (double boost = -10.0; boost <= 30.0; boost += 2.5) {
        auto stronger = cfg;
        stronger.hg.tx_power_db += boost;
        const double p = jam_prob_scenario1(stronger, g);
        CHECK(p >= prev_p - 1e-12);
        prev_p = p;
    }
}

TEST_CASE("joint power scaling leaves probabilities unchanged") {
    const auto base = fixtures::reference_scenario(2);
    for (const double shift : {-40.0, -7.3, 13.7, 60.0}) {
        auto scaled = base;
        scaled.tg.tx_power_db += shift;
        scaled.rg->tx_power_db += shift;
        scaled.hg.tx_power_db += shift;
        for (const double gdb : {-15.0, -6.0, 0.0, 9.0}) {
            const double g = db_to_linear(gdb);
            CHECK(std::fabs(jam_prob_scenario2(scaled, g) -
                            jam_prob_scenario2(base, g)) <= 1e-12);
        }
    }
}
