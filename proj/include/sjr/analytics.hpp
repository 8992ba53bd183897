#ifndef SJR_ANALYTICS_HPP
#define SJR_ANALYTICS_HPP

// Closed-form jamming probabilities.
//
// The core quantity is the probability that the signal-to-jamming ratio of
// one link falls below a threshold, conditioned on the propagation states
// of the useful link and the jammer link. With Gamma power gains on both
// sides this is a regularized incomplete beta function, evaluated through
// the Gauss hypergeometric series. An adaptive-quadrature evaluation of the
// defining expectation is provided as an independent cross-check.

#include <optional>
#include <vector>

#include "sjr/channel.hpp"
#include "sjr/linkbudget.hpp"

namespace sjr::analytics {

enum class Scenario { kDirect = 1, kRelay = 2 };

/// Full evaluation setup: the useful link(s), the jammer link, the shared
/// fading parameters, and the threshold grid.
struct ScenarioConfig {
    Scenario scenario = Scenario::kDirect;
    linkbudget::LinkSpec tg;
    std::optional<linkbudget::LinkSpec> rg;
    linkbudget::LinkSpec hg;
    channel::FadingSpec fading;
    std::vector<double> threshold_grid_db;

    /// Throws std::invalid_argument on an inconsistent setup (relay without
    /// an rg link, non-increasing grid, invalid link parameters).
    void validate() const;
};

/// Analytic curve over the threshold grid. p_jam_los_cond / p_jam_nlos_cond
/// are the probabilities conditioned on the direct (T-G) link being in
/// LOS / NLOS state.
struct JamProbCurve {
    std::vector<double> thresholds_db;
    std::vector<double> p_jam;
    std::vector<double> p_jam_los_cond;
    std::vector<double> p_jam_nlos_cond;
};

/// LOS/NLOS mixing weights of one link.
struct LosMix {
    double p_los = 1.0;
    double p_nlos = 0.0;
};

/// Mixing weights for a link spec: (1, 0) if forced LOS, else the
/// elevation-dependent LOS probability.
LosMix los_mix_for(const linkbudget::LinkSpec& spec);

/// Closed-form variant selector. kStable is the shipped reduction (exact,
/// bounded in [0,1]). kLegacy is an alternative algebraic reduction
/// retained for diagnostics only: it is known to disagree with the
/// quadrature oracle over much of the parameter space and is not clamped
/// to [0,1].
enum class CondClosedForm { kStable, kLegacy };

/// P[SJR < gamma | useful link in `useful_state`], mixing the jammer's
/// LOS/NLOS states with `jammer_mix`. gamma_linear > 0.
double jam_prob_conditional(const linkbudget::LinkCoefficients& useful,
                            const linkbudget::LinkCoefficients& jammer,
                            const LosMix& jammer_mix,
                            const channel::FadingSpec& fading,
                            channel::PathState useful_state, double gamma_linear,
                            CondClosedForm form = CondClosedForm::kStable);

/// Same conditional probability evaluated by adaptive numerical integration
/// of the expectation of the incomplete-gamma tail over the jammer gain
/// density. Absolute error target 1e-8. Independent of the hypergeometric
/// reduction above.
double jam_prob_quadrature(const linkbudget::LinkCoefficients& useful,
                           const linkbudget::LinkCoefficients& jammer,
                           const LosMix& jammer_mix,
                           const channel::FadingSpec& fading,
                           channel::PathState useful_state, double gamma_linear);

/// Jamming probability of one useful link against one jammer link,
/// mixing the useful link's LOS/NLOS states by elevation.
double jam_prob_link(const linkbudget::LinkSpec& useful,
                     const linkbudget::LinkSpec& jammer,
                     const channel::FadingSpec& fading, double gamma_linear);

/// Direct scenario: the T-G link alone. Throws std::invalid_argument if
/// cfg.scenario is not kDirect.
double jam_prob_scenario1(const ScenarioConfig& cfg, double gamma_linear);

/// Relay scenario: both T-G and R-G must be jammed, so the probability is
/// the product of the per-link values. Throws std::invalid_argument if
/// cfg.scenario is not kRelay or rg is missing.
double jam_prob_scenario2(const ScenarioConfig& cfg, double gamma_linear);

/// Evaluate the configured scenario over the threshold grid.
JamProbCurve sjr_cdf_curve(const ScenarioConfig& cfg);

}  // namespace sjr::analytics

#endif
