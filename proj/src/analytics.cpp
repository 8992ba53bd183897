#include "sjr/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "sjr/specfun.hpp"

namespace sjr::analytics {

using channel::PathState;
using linkbudget::LinkCoefficients;
using linkbudget::LinkSpec;
using specfun::gauss_2f1;
using specfun::ln_gamma;

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// P[D_u h_u < gamma D_j h_j] for independent h_u ~ Gamma(a, s_u) and
// h_j ~ Gamma(b, s_j). Only the combined ratio rho = gamma D_j s_j / (D_u s_u)
// enters; the result is the regularized incomplete beta I_z(a, b) at
// z = rho/(1+rho), reduced to a hypergeometric series whose argument stays
// in [-1, 0]:
//   rho <= 1:  rho^a  G(a+b)/(a G(a) G(b)) 2F1(a, a+b; a+1; -rho)
//   rho >  1:  1 - rho^-b G(a+b)/(b G(a) G(b)) 2F1(b, a+b; b+1; -1/rho)
double gamma_ratio_cdf(double a, double b, double rho) {
    if (rho <= 0.0) return 0.0;
    if (std::isinf(rho)) return 1.0;
    const double ln_beta = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b);
    if (rho <= 1.0) {
        const double v = std::exp(ln_beta - std::log(a) + a * std::log(rho)) *
                         gauss_2f1(a, a + b, a + 1.0, -rho);
        return clamp01(v);
    }
    const double v = std::exp(ln_beta - std::log(b) - b * std::log(rho)) *
                     gauss_2f1(b, a + b, b + 1.0, -1.0 / rho);
    return clamp01(1.0 - v);
}

// Conditional jamming probability for fixed propagation states on both
// links.
double cond_pair(const channel::FadingSpec& fading, PathState useful_state,
                 PathState jammer_state, double d_useful, double d_jammer,
                 double gamma_linear) {
    const double a = fading.shape(useful_state);
    const double su = fading.scale(useful_state);
    const double b = fading.shape(jammer_state);
    const double sj = fading.scale(jammer_state);
    const double rho = gamma_linear * d_jammer * sj / (d_useful * su);
    return gamma_ratio_cdf(a, b, rho);
}

// Legacy reduction of the two conditional expressions. Kept verbatim for
// diagnostics; see CondClosedForm::kLegacy. The hypergeometric arguments
// can be far outside the convergent range, in which case the series
// evaluation throws.
double legacy_conditional(const LinkCoefficients& useful,
                          const LinkCoefficients& jammer, const LosMix& jmix,
                          const channel::FadingSpec& fading,
                          PathState useful_state, double g) {
    const double ml = fading.m_los, ol = fading.omega_los;
    const double mn = fading.m_nlos, on = fading.omega_nlos;
    const double djl = jammer.los, djn = jammer.nlos;
    auto gam = [](double x) { return std::exp(ln_gamma(x)); };

    // Terms with zero mixing weight are skipped, not just zero-weighted:
    // their hypergeometric arguments can lie far outside the convergent
    // range.
    if (useful_state == PathState::kLos) {
        const double du = useful.los;
        double p = 0.0;
        if (jmix.p_los > 0.0) {
            p += jmix.p_los * du / (djl * g) *
                 (1.0 -
                  std::pow(ol, ml) * std::pow(djl * g / du * ol, -ml) * gam(2.0 * ml) *
                      gauss_2f1(ml, 2.0 * ml, ml + 1.0, -du / (djl * g)) / gam(ml));
        }
        if (jmix.p_nlos > 0.0) {
            p += (1.0 -
                  std::pow(on, mn) * std::pow(djl * g / djn * ol, -mn) * gam(ml + mn) *
                      gauss_2f1(mn, ml + mn, mn + 1.0, -on / (du * ol * djn * g)) /
                      gam(ml)) *
                 du * jmix.p_nlos / (djn * g);
        }
        return p;
    }
    const double du = useful.nlos;
    double p = 0.0;
    if (jmix.p_los > 0.0) {
        p += jmix.p_los * du / (djl * g) *
             (1.0 - std::pow(ol, ml) * std::pow(djl * g / du * on, -ml) * gam(ml + mn) *
                        gauss_2f1(ml, ml + mn, ml + 1.0, -ol * du / (on * djl * g)) /
                        gam(mn));
    }
    if (jmix.p_nlos > 0.0) {
        p += (1.0 - std::pow(on, mn) * std::pow(djn * g / du * on, -mn) * gam(2.0 * mn) *
                        gauss_2f1(mn, 2.0 * mn, mn + 1.0, -du / (djn * g)) / gam(ml)) *
             du * jmix.p_nlos / (djn * g);
    }
    return p;
}

// ---- adaptive Gauss-Kronrod quadrature -------------------------------

// 15-point Kronrod nodes/weights on [-1,1] and the embedded 7-point Gauss
// weights (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

template <typename F>
void gk15(const F& f, double lo, double hi, double* result, double* err) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double res_gauss = kWg[3] * fc;
    double res_kronrod = kWgk[7] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double fsum = f(center - dx) + f(center + dx);
        res_kronrod += kWgk[i] * fsum;
        if (i % 2 == 1) res_gauss += kWg[i / 2] * fsum;
    }
    *result = res_kronrod * half;
    *err = std::fabs((res_kronrod - res_gauss) * half);
}

// Globally adaptive scheme: split the interval with the largest error
// estimate until the estimates sum below the tolerance. Interval errors
// add up rather than being budgeted per split, which keeps integrable
// endpoint singularities (gamma shape < 1) convergent.
template <typename F>
double adaptive_gk(const F& f, double lo, double hi, double tol) {
    struct Piece {
        double lo, hi, result, err;
        bool operator<(const Piece& other) const { return err < other.err; }
    };
    std::priority_queue<Piece> queue;
    auto make_piece = [&f](double a, double b) {
        Piece p{a, b, 0.0, 0.0};
        gk15(f, a, b, &p.result, &p.err);
        return p;
    };
    queue.push(make_piece(lo, hi));
    double total_err = queue.top().err;
    constexpr int kMaxPieces = 4000;
    for (int n = 1; total_err > tol && n < kMaxPieces; ++n) {
        const Piece worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Piece left = make_piece(worst.lo, mid);
        const Piece right = make_piece(mid, worst.hi);
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
    }
    if (total_err > 100.0 * tol) {
        throw std::runtime_error(
            "jam_prob_quadrature: failed to reach the requested accuracy");
    }
    double sum = 0.0;
    while (!queue.empty()) {
        sum += queue.top().result;
        queue.pop();
    }
    return sum;
}

// E_{h_j ~ Gamma(b, s_j)}[ P(a, kappa h_j) ] by adaptive quadrature against
// the jammer gain density.
double expectation_by_quadrature(double a, double b, double s_j, double kappa) {
    // Truncation point: Gamma(b,1) tail below 1e-15.
    double x_up = b + 10.0 * std::sqrt(b) + 35.0;
    while (specfun::reg_upper_gamma(b, x_up) > 1e-15) x_up *= 2.0;
    const double ln_norm = -ln_gamma(b) - b * std::log(s_j);
    const auto integrand = [&](double h) {
        if (h <= 0.0) return 0.0;
        const double ln_pdf = ln_norm + (b - 1.0) * std::log(h) - h / s_j;
        return std::exp(ln_pdf) * specfun::reg_lower_gamma(a, kappa * h);
    };
    return adaptive_gk(integrand, 0.0, s_j * x_up, 1e-10);
}

}  // namespace

void ScenarioConfig::validate() const {
    tg.validate("tg");
    hg.validate("hg");
    fading.validate();
    if (scenario == Scenario::kRelay) {
        if (!rg.has_value()) {
            throw std::invalid_argument("ScenarioConfig: relay scenario requires an rg link");
        }
        rg->validate("rg");
    }
    for (std::size_t i = 1; i < threshold_grid_db.size(); ++i) {
        if (!(threshold_grid_db[i] > threshold_grid_db[i - 1])) {
            throw std::invalid_argument(
                "ScenarioConfig: threshold grid must be strictly increasing");
        }
    }
}

LosMix los_mix_for(const LinkSpec& spec) {
    if (spec.forced_los) return {1.0, 0.0};
    const double p = channel::los_probability(spec.elevation_deg, spec.env);
    return {p, 1.0 - p};
}

double jam_prob_conditional(const LinkCoefficients& useful,
                            const LinkCoefficients& jammer, const LosMix& jammer_mix,
                            const channel::FadingSpec& fading,
                            PathState useful_state, double gamma_linear,
                            CondClosedForm form) {
    if (!(gamma_linear > 0.0)) {
        throw std::domain_error("jam_prob_conditional: gamma must be > 0");
    }
    if (form == CondClosedForm::kLegacy) {
        return legacy_conditional(useful, jammer, jammer_mix, fading, useful_state,
                                  gamma_linear);
    }
    const double du = useful.get(useful_state);
    const double p_los_part =
        jammer_mix.p_los == 0.0
            ? 0.0
            : jammer_mix.p_los * cond_pair(fading, useful_state, PathState::kLos, du,
                                           jammer.los, gamma_linear);
    const double p_nlos_part =
        jammer_mix.p_nlos == 0.0
            ? 0.0
            : jammer_mix.p_nlos * cond_pair(fading, useful_state, PathState::kNlos, du,
                                            jammer.nlos, gamma_linear);
    return p_los_part + p_nlos_part;
}

double jam_prob_quadrature(const LinkCoefficients& useful,
                           const LinkCoefficients& jammer, const LosMix& jammer_mix,
                           const channel::FadingSpec& fading,
                           PathState useful_state, double gamma_linear) {
    if (!(gamma_linear > 0.0)) {
        throw std::domain_error("jam_prob_quadrature: gamma must be > 0");
    }
    const double a = fading.shape(useful_state);
    const double su = fading.scale(useful_state);
    const double du = useful.get(useful_state);
    double total = 0.0;
    for (const PathState js : {PathState::kLos, PathState::kNlos}) {
        const double w = js == PathState::kLos ? jammer_mix.p_los : jammer_mix.p_nlos;
        if (w == 0.0) continue;
        const double kappa = gamma_linear * jammer.get(js) / (du * su);
        total += w * expectation_by_quadrature(a, fading.shape(js), fading.scale(js),
                                               kappa);
    }
    return clamp01(total);
}

double jam_prob_link(const LinkSpec& useful, const LinkSpec& jammer,
                     const channel::FadingSpec& fading, double gamma_linear) {
    const LinkCoefficients cu = linkbudget::make_coefficients(useful);
    const LinkCoefficients cj = linkbudget::make_coefficients(jammer);
    const LosMix umix = los_mix_for(useful);
    const LosMix jmix = los_mix_for(jammer);
    double p = 0.0;
    if (umix.p_los > 0.0) {
        p += umix.p_los * jam_prob_conditional(cu, cj, jmix, fading,
                                               PathState::kLos, gamma_linear);
    }
    if (umix.p_nlos > 0.0) {
        p += umix.p_nlos * jam_prob_conditional(cu, cj, jmix, fading,
                                                PathState::kNlos, gamma_linear);
    }
    return p;
}

double jam_prob_scenario1(const ScenarioConfig& cfg, double gamma_linear) {
    if (cfg.scenario != Scenario::kDirect) {
        throw std::invalid_argument("jam_prob_scenario1: config is not a direct scenario");
    }
    return jam_prob_link(cfg.tg, cfg.hg, cfg.fading, gamma_linear);
}

double jam_prob_scenario2(const ScenarioConfig& cfg, double gamma_linear) {
    if (cfg.scenario != Scenario::kRelay || !cfg.rg.has_value()) {
        throw std::invalid_argument(
            "jam_prob_scenario2: config is not a relay scenario with an rg link");
    }
    // Both links must be jammed; the per-link events are treated as
    // independent, including independent jammer gain realizations.
    return jam_prob_link(cfg.tg, cfg.hg, cfg.fading, gamma_linear) *
           jam_prob_link(*cfg.rg, cfg.hg, cfg.fading, gamma_linear);
}

JamProbCurve sjr_cdf_curve(const ScenarioConfig& cfg) {
    cfg.validate();
    JamProbCurve curve;
    curve.thresholds_db = cfg.threshold_grid_db;
    curve.p_jam.reserve(curve.thresholds_db.size());
    curve.p_jam_los_cond.reserve(curve.thresholds_db.size());
    curve.p_jam_nlos_cond.reserve(curve.thresholds_db.size());
    const LinkCoefficients ctg = linkbudget::make_coefficients(cfg.tg);
    const LinkCoefficients chg = linkbudget::make_coefficients(cfg.hg);
    const LosMix jmix = los_mix_for(cfg.hg);
    for (const double g_db : curve.thresholds_db) {
        const double g = linkbudget::db_to_linear(g_db);
        curve.p_jam.push_back(cfg.scenario == Scenario::kDirect
                                  ? jam_prob_scenario1(cfg, g)
                                  : jam_prob_scenario2(cfg, g));
        curve.p_jam_los_cond.push_back(jam_prob_conditional(
            ctg, chg, jmix, cfg.fading, PathState::kLos, g));
        curve.p_jam_nlos_cond.push_back(jam_prob_conditional(
            ctg, chg, jmix, cfg.fading, PathState::kNlos, g));
    }
    return curve;
}

}  // namespace sjr::analytics
