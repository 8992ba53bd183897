#include "sjr/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace sjr::mc {

using analytics::Scenario;
using analytics::ScenarioConfig;
using channel::PathState;

namespace {

struct LinkCtx {
    linkbudget::LinkCoefficients coeffs;
    bool forced_los = false;
    double p_los = 1.0;
    double sigma_db = 0.0;
    double det_gain_db = 0.0;  // aperture pattern + fixed other losses
};

LinkCtx make_ctx(const linkbudget::LinkSpec& spec, BudgetMode mode) {
    LinkCtx ctx;
    ctx.coeffs = linkbudget::make_coefficients(spec);
    ctx.forced_los = spec.forced_los;
    ctx.p_los = spec.forced_los
                    ? 1.0
                    : channel::los_probability(spec.elevation_deg, spec.env);
    if (mode == BudgetMode::kFullBudget) {
        ctx.sigma_db = spec.shadow_sigma_db;
        double pattern_db = 0.0;
        if (spec.antenna_aperture_wl > 0.0) {
            pattern_db = linkbudget::antenna_loss_db(spec.antenna_aperture_wl,
                                                     spec.antenna_boresight_deg);
        }
        // The pattern value is <= 0 dB relative to boresight and acts as a
        // signed gain; other losses are positive dB and subtract.
        ctx.det_gain_db = pattern_db - spec.other_loss_db;
    }
    return ctx;
}

struct SimCtx {
    bool relay = false;
    bool independent_jammer = true;
    bool full_budget = false;
    LinkCtx tg, rg, hg;
    const channel::FadingSpec* fading = nullptr;
};

PathState draw_state(const LinkCtx& link, rng::PhiloxStream& st) {
    if (link.forced_los) return PathState::kLos;
    return st.next_double() < link.p_los ? PathState::kLos : PathState::kNlos;
}

double draw_gain(const channel::FadingSpec& f, PathState v, rng::PhiloxStream& st) {
    return channel::sample_power_gain(f.shape(v), f.scale(v), st);
}

// One SJR realization. Draw order is fixed so that the direct-link draws
// coincide between the two scenarios for a given sample index, and so that
// a full-budget run with inert extras consumes exactly the simplified
// stream.
double one_sjr(const SimCtx& c, std::uint64_t seed, std::uint64_t index) {
    rng::PhiloxStream st(seed, index);
    const channel::FadingSpec& f = *c.fading;

    const PathState tg_state = draw_state(c.tg, st);
    const double h_tg = draw_gain(f, tg_state, st);
    const PathState j_tg_state = draw_state(c.hg, st);
    const double h_j_tg = draw_gain(f, j_tg_state, st);

    PathState rg_state{}, j_rg_state{};
    double h_rg = 0.0, h_j_rg = 0.0;
    if (c.relay) {
        rg_state = draw_state(c.rg, st);
        h_rg = draw_gain(f, rg_state, st);
        if (c.independent_jammer) {
            j_rg_state = draw_state(c.hg, st);
            h_j_rg = draw_gain(f, j_rg_state, st);
        } else {
            j_rg_state = j_tg_state;
            h_j_rg = h_j_tg;
        }
    }

    double extra_tg = 1.0, extra_rg = 1.0, extra_hg = 1.0;
    if (c.full_budget) {
        double sh_tg = 0.0, sh_hg = 0.0, sh_rg = 0.0;
        if (c.tg.sigma_db > 0.0) sh_tg = linkbudget::sample_shadowing_db(c.tg.sigma_db, st);
        if (c.hg.sigma_db > 0.0) sh_hg = linkbudget::sample_shadowing_db(c.hg.sigma_db, st);
        if (c.relay && c.rg.sigma_db > 0.0) {
            sh_rg = linkbudget::sample_shadowing_db(c.rg.sigma_db, st);
        }
        extra_tg = linkbudget::db_to_linear(c.tg.det_gain_db - sh_tg);
        extra_hg = linkbudget::db_to_linear(c.hg.det_gain_db - sh_hg);
        if (c.relay) extra_rg = linkbudget::db_to_linear(c.rg.det_gain_db - sh_rg);
    }

    const double jam_tg = c.hg.coeffs.get(j_tg_state) * h_j_tg * extra_hg;
    const double sjr_tg = c.tg.coeffs.get(tg_state) * h_tg * extra_tg / jam_tg;
    if (!c.relay) return sjr_tg;

    const double jam_rg = c.hg.coeffs.get(j_rg_state) * h_j_rg * extra_hg;
    const double sjr_rg = c.rg.coeffs.get(rg_state) * h_rg * extra_rg / jam_rg;
    return std::max(sjr_tg, sjr_rg);
}

SimCtx make_sim_ctx(const ScenarioConfig& cfg, const McConfig& mc) {
    cfg.validate();
    mc.validate();
    SimCtx c;
    c.relay = cfg.scenario == Scenario::kRelay;
    c.independent_jammer = mc.jammer_draw == JammerDraw::kIndependentPerLink;
    c.full_budget = mc.budget_mode == BudgetMode::kFullBudget;
    c.tg = make_ctx(cfg.tg, mc.budget_mode);
    if (c.relay) c.rg = make_ctx(*cfg.rg, mc.budget_mode);
    c.hg = make_ctx(cfg.hg, mc.budget_mode);
    c.fading = &cfg.fading;
    return c;
}

int resolve_threads(int threads, std::uint64_t samples) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    const std::uint64_t max_useful = std::max<std::uint64_t>(1, samples / 4096);
    return static_cast<int>(std::min<std::uint64_t>(threads, max_useful));
}

}  // namespace

void McConfig::validate() const {
    if (samples < 1) throw std::invalid_argument("McConfig: samples must be >= 1");
}

std::vector<double> simulate_sjr(const ScenarioConfig& cfg, const McConfig& mc,
                                 int threads) {
    const SimCtx ctx = make_sim_ctx(cfg, mc);
    std::vector<double> out(mc.samples);
    const int nthreads = resolve_threads(threads, mc.samples);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (mc.samples + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        const std::uint64_t lo = t * chunk;
        const std::uint64_t hi = std::min<std::uint64_t>(mc.samples, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&ctx, &out, seed = mc.seed, lo, hi] {
            for (std::uint64_t i = lo; i < hi; ++i) out[i] = one_sjr(ctx, seed, i);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

namespace {

void check_grid(std::span<const double> grid_db) {
    if (grid_db.empty()) {
        throw std::invalid_argument("empirical_cdf: grid must be nonempty");
    }
    for (std::size_t i = 1; i < grid_db.size(); ++i) {
        if (!(grid_db[i] > grid_db[i - 1])) {
            throw std::invalid_argument("empirical_cdf: grid must be strictly increasing");
        }
    }
}

EmpiricalCdf cdf_from_counts(std::span<const double> grid_db,
                             const std::vector<std::uint64_t>& bucket_counts,
                             std::uint64_t n, std::uint64_t seed) {
    EmpiricalCdf out;
    out.thresholds_db.assign(grid_db.begin(), grid_db.end());
    out.cdf.resize(grid_db.size());
    out.n = n;
    out.seed = seed;
    std::uint64_t below = 0;
    for (std::size_t i = 0; i < grid_db.size(); ++i) {
        below += bucket_counts[i];
        out.cdf[i] = static_cast<double>(below) / static_cast<double>(n);
    }
    return out;
}

// Index of the first grid threshold strictly above the sample, i.e. the
// first CDF point this sample counts toward.
std::size_t bucket_of(double sjr_linear, const std::vector<double>& grid_linear) {
    return static_cast<std::size_t>(
        std::upper_bound(grid_linear.begin(), grid_linear.end(), sjr_linear) -
        grid_linear.begin());
}

std::vector<double> grid_to_linear(std::span<const double> grid_db) {
    std::vector<double> out(grid_db.size());
    for (std::size_t i = 0; i < grid_db.size(); ++i) {
        out[i] = linkbudget::db_to_linear(grid_db[i]);
    }
    return out;
}

}  // namespace

EmpiricalCdf empirical_cdf(std::span<const double> samples_linear,
                           std::span<const double> grid_db, std::uint64_t seed) {
    if (samples_linear.empty()) {
        throw std::invalid_argument("empirical_cdf: sample set must be nonempty");
    }
    check_grid(grid_db);
    const std::vector<double> grid_linear = grid_to_linear(grid_db);
    std::vector<std::uint64_t> counts(grid_db.size() + 1, 0);
    for (const double s : samples_linear) ++counts[bucket_of(s, grid_linear)];
    return cdf_from_counts(grid_db, counts, samples_linear.size(), seed);
}

EmpiricalCdf mc_cdf(const ScenarioConfig& cfg, const McConfig& mc,
                    std::span<const double> grid_db, int threads) {
    check_grid(grid_db);
    const SimCtx ctx = make_sim_ctx(cfg, mc);
    const std::vector<double> grid_linear = grid_to_linear(grid_db);
    const int nthreads = resolve_threads(threads, mc.samples);
    std::vector<std::vector<std::uint64_t>> local(
        nthreads, std::vector<std::uint64_t>(grid_db.size() + 1, 0));
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (mc.samples + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        const std::uint64_t lo = t * chunk;
        const std::uint64_t hi = std::min<std::uint64_t>(mc.samples, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&ctx, &grid_linear, &counts = local[t], seed = mc.seed, lo, hi] {
            for (std::uint64_t i = lo; i < hi; ++i) {
                ++counts[bucket_of(one_sjr(ctx, seed, i), grid_linear)];
            }
        });
    }
    for (auto& th : pool) th.join();
    // Order-independent integer merge keeps the result identical for any
    // worker count.
    std::vector<std::uint64_t> counts(grid_db.size() + 1, 0);
    for (const auto& part : local) {
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += part[i];
    }
    return cdf_from_counts(grid_db, counts, mc.samples, mc.seed);
}

DeviationReport compare(const analytics::JamProbCurve& analytic,
                        const EmpiricalCdf& empirical) {
    if (analytic.thresholds_db.size() != empirical.thresholds_db.size() ||
        !std::equal(analytic.thresholds_db.begin(), analytic.thresholds_db.end(),
                    empirical.thresholds_db.begin())) {
        throw std::invalid_argument("compare: analytic and empirical grids differ");
    }
    DeviationReport report;
    report.stderr_per_point.reserve(analytic.thresholds_db.size());
    for (std::size_t i = 0; i < analytic.thresholds_db.size(); ++i) {
        const double p = analytic.p_jam[i];
        const double dev = std::fabs(p - empirical.cdf[i]);
        if (dev > report.max_abs_dev) {
            report.max_abs_dev = dev;
            report.gamma_db_at_max = analytic.thresholds_db[i];
        }
        report.stderr_per_point.push_back(
            std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(empirical.n)));
    }
    return report;
}

}  // namespace sjr::mc
