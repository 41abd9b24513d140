#ifndef QVO_ORDER_LAB_HPP
#define QVO_ORDER_LAB_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qvo/samples.hpp"
#include "qvo/stats.hpp"

namespace qvo {

// Empirical stop-loss transform K -> E[(Y - K)^+] on a strike grid. For the
// empirical measure the curve is convex and nonincreasing in K exactly.
struct StopLossCurve {
    std::vector<double> strikes;
    std::vector<double> values;
    std::vector<double> ses;
};

StopLossCurve stop_loss(std::span<const double> samples, std::span<const double> strikes);

// Strikes spanning pooled-sample quantiles [q_lo, q_hi], deduplicated.
std::vector<double> strike_grid(std::span<const double> lhs, std::span<const double> rhs,
                                std::size_t count = 21, double q_lo = 0.01, double q_hi = 0.999);

enum class Verdict { consistent, violated, inconclusive };

const char* verdict_name(Verdict v);

struct StrikeDiff {
    double strike = 0.0;
    double diff = 0.0;  // paired mean of (lhs-K)^+ - (rhs-K)^+
    double se = 0.0;
    double z = 0.0;
    bool violated = false;
};

struct MeanCheck {
    bool requested = false;
    double diff = 0.0;  // paired mean of lhs - rhs
    double se = 0.0;
    double expected_gap = 0.0;
    bool compatible = false;  // |diff - expected_gap| <= 3 se
};

struct OrderVerdict {
    std::string relation;
    std::vector<StrikeDiff> strikes;
    Verdict verdict = Verdict::inconclusive;
    std::vector<double> violating_strikes;
    double alpha = 0.05;
    bool bonferroni = false;
    MeanCheck mean_check;
    bool upgraded_to_cx = false;  // equal means confirmed, icx becomes cx
};

// Paired one-sided dominance test: lhs >=_icx rhs is *violated* when some
// strike's paired stop-loss difference falls below -z_{1-alpha/2} * SE.
// Samples must be index-coupled (common paths). When equal_means_gap is
// supplied the paired mean difference is tested against it, and a zero gap
// compatible with the data upgrades the relation to convex order.
OrderVerdict icx_test(std::span<const double> lhs, std::span<const double> rhs,
                      std::span<const double> strikes, double alpha,
                      std::optional<double> equal_means_gap = std::nullopt,
                      bool bonferroni = false, std::string relation = "lhs >=icx rhs");

// ---- exact enumeration oracle -------------------------------------------

struct WalkStep {
    double value = 0.0;
    double prob = 0.0;
};

// Desk-scale process with independent steps on a finite support; every
// functional expectation is computed by full enumeration with exact
// probabilities. Default: +/-1 equiprobable.
struct WalkOracle {
    std::size_t n = 2;
    std::vector<WalkStep> steps{{+1.0, 0.5}, {-1.0, 0.5}};

    void validate() const;  // probs sum to 1, enumeration budget respected
    bool symmetric() const;
};

// Exact expectation of a functional of the value path (X_0 = 0, length n+1).
double walk_oracle_eval(const WalkOracle& oracle,
                        const std::function<double(std::span<const double>)>& functional);

// RV over a subset of time indices (subset must contain 0 and n).
double walk_rv(std::span<const double> values, std::span<const std::size_t> indices);

// Names and evaluation of the bounded test-function battery used in the
// reverse-martingale orthogonality checks: a constant, the identity clipped
// at the median, and the indicator of exceeding the median.
std::vector<std::string> g_battery_names();
double g_battery_eval(std::size_t which, double rv_fine, double median);

struct WalkOrthogonality {
    std::size_t step = 0;  // refinement step index
    std::string g_name;
    double value = 0.0;  // exact expectation; zero for symmetric walks
};

// Exact E[(X_b - X_t*)(X_t* - X_a) g(RV fine)] for one single-point
// refinement: coarse/fine are index subsets of the walk's time grid.
std::vector<WalkOrthogonality> walk_reverse_mg(const WalkOracle& oracle,
                                               std::span<const std::size_t> coarse,
                                               std::span<const std::size_t> fine);

// ---- Monte Carlo structure tests ----------------------------------------

struct MgCheck {
    std::size_t step = 0;
    double t_star = 0.0;
    std::string g_name;
    double stat = 0.0;
    double se = 0.0;
    double z = 0.0;
    bool pass = false;
};

struct ReverseMgReport {
    std::vector<MgCheck> checks;
    double alpha = 0.0;
    bool all_pass = false;
};

// Estimates the refinement orthogonality E[(X_b - X_t*)(X_t* - X_a) g(RV)]
// for every single-insertion step of the nested sequence and every g in the
// battery. Centered at zero for symmetric-jump martingale models.
ReverseMgReport reverse_mg_test(const ModelSpec& model, const NestedSequence& nested,
                                const SimConfig& cfg, std::size_t paths, double alpha,
                                unsigned threads, std::string_view label = "reverse-mg");

struct NestedReport {
    std::vector<OrderVerdict> verdicts;  // level m vs m+1, then finest vs QV
    bool all_consistent = false;
};

// Stop-loss dominance along the nesting chain RV(P^0) >=icx RV(P^1) >= ...
// and against QV, all from one simulated path set on the finest level.
NestedReport nested_monotonicity_test(const ModelSpec& model, const NestedSequence& nested,
                                      const SimConfig& cfg, std::size_t paths, double alpha,
                                      unsigned threads, std::size_t strikes = 21,
                                      std::string_view label = "nested");

// ---- counterexamples ------------------------------------------------------

struct StoppedBmConfig {
    std::size_t paths = 100000;
    double step = 1.0 / 1024.0;
    double time_budget = 64.0;  // paths that exceed it are resampled
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

// Brownian motion run to the exit of [-1,1] through a deterministic clock:
// RV over {0,1} is identically 1 while QV = tau is random with E[tau] = 1,
// so QV dominates RV in convex order and the generic relation reverses.
struct StoppedBmReport {
    MeanSe tau;
    MeanSe excess_at_1;  // E[(tau - 1)^+] > 0 certifies strictness
    std::size_t resampled = 0;
    bool rv_constant_one = false;
    bool mean_pass = false;
    bool strict_pass = false;
    bool pass = false;
};

StoppedBmReport counterexample_stopped_bm(const StoppedBmConfig& cfg);

// Single symmetric unit jump at a uniform time: QV_1 = 1 a.s. while
// PQV_1 = -log(1 - tau) is Exp(1), so PQV strictly dominates QV in convex
// order once increments stop being conditionally independent.
struct HazardGridCheck {
    double strike = 0.0;
    double pqv_stop_loss = 0.0;  // e^{-K}
    double qv_stop_loss = 0.0;   // (1-K)^+
    double empirical = 0.0;      // stop-loss of the simulated PQV sample
    double empirical_se = 0.0;
    bool holds = false;
    bool strict = false;
};

struct HazardReport {
    KsResult ks;  // PQV sample against Exp(1)
    std::vector<HazardGridCheck> grid;
    bool pass = false;
};

HazardReport counterexample_hazard(std::size_t paths, std::uint64_t seed, double ks_alpha = 0.01,
                                   std::span<const double> strikes = {});

}  // namespace qvo

#endif
