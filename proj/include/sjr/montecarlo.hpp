#ifndef SJR_MONTECARLO_HPP
#define SJR_MONTECARLO_HPP

// Brute-force validation path: samples propagation states and channel
// gains per the scenario configuration, forms signal-to-jamming ratios,
// and reduces them to empirical CDFs over a threshold grid.
//
// Every sample draws from its own counter-based stream keyed by
// (seed, sample index), so results are bit-identical regardless of how the
// sample range is chunked across workers.

#include <cstdint>
#include <span>
#include <vector>

#include "sjr/analytics.hpp"

namespace sjr::mc {

/// How the jammer realization is drawn for the relay scenario's two links.
/// kIndependentPerLink matches the analytic product form; kSharedAcrossLinks
/// reuses one physical jammer draw for both links (sensitivity study).
enum class JammerDraw { kSharedAcrossLinks, kIndependentPerLink };

/// kSimplified uses the exponent path loss only (what the analytics model).
/// kFullBudget additionally samples per-link shadowing and applies the
/// aperture pattern and fixed other losses.
enum class BudgetMode { kSimplified, kFullBudget };

struct McConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    JammerDraw jammer_draw = JammerDraw::kIndependentPerLink;
    BudgetMode budget_mode = BudgetMode::kSimplified;

    void validate() const;
};

struct EmpiricalCdf {
    std::vector<double> thresholds_db;
    std::vector<double> cdf;  ///< fraction of samples strictly below each threshold
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

struct DeviationReport {
    double max_abs_dev = 0.0;
    double gamma_db_at_max = 0.0;
    ///< binomial standard error sqrt(p(1-p)/n) at the analytic p, per point
    std::vector<double> stderr_per_point;
};

/// Linear SJR realizations, one per sample. `threads` <= 0 picks the
/// hardware concurrency; the result does not depend on it.
std::vector<double> simulate_sjr(const analytics::ScenarioConfig& cfg,
                                 const McConfig& mc, int threads = 0);

/// Reduce linear SJR samples to an empirical CDF over a dB threshold grid.
/// Throws std::invalid_argument on an empty sample set or non-increasing
/// grid.
EmpiricalCdf empirical_cdf(std::span<const double> samples_linear,
                           std::span<const double> grid_db, std::uint64_t seed = 0);

/// Streaming equivalent of empirical_cdf(simulate_sjr(...)): accumulates
/// per-point counts without retaining samples, so arbitrarily large runs
/// use constant memory.
EmpiricalCdf mc_cdf(const analytics::ScenarioConfig& cfg, const McConfig& mc,
                    std::span<const double> grid_db, int threads = 0);

/// Max absolute deviation between an analytic curve and an empirical CDF on
/// the same grid, plus per-point binomial standard errors.
DeviationReport compare(const analytics::JamProbCurve& analytic,
                        const EmpiricalCdf& empirical);

}  // namespace sjr::mc

#endif
