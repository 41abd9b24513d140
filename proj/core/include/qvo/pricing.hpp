#ifndef QVO_PRICING_HPP
#define QVO_PRICING_HPP

#include <cstddef>
#include <span>
#include <string_view>

#include "qvo/samples.hpp"

namespace qvo {

enum class PayoffKind { swap, call, put, straddle, volswap };
enum class StrikeMode { fixed, relative };

const char* payoff_name(PayoffKind k);

struct PayoffSpec {
    PayoffKind kind = PayoffKind::call;
    StrikeMode strike_mode = StrikeMode::fixed;
    double strike = 0.0;     // K when fixed, the multiplier k when relative
    bool annualize = true;   // price f(basis / T) instead of f(basis)

    // The volatility swap is the one non-convex payoff in the set; it is
    // priced but excluded from order assertions.
    bool convex() const { return kind != PayoffKind::volswap; }
};

// Payoff value at basis level x with the resolved strike. Throws on x < 0,
// which signals a broken variance basis upstream.
double payoff_eval(const PayoffSpec& spec, double x, double k_eff);

enum class PriceRoute { closed_form, mc_clock };

struct ExpectedValue {
    double value = 0.0;
    PriceRoute route = PriceRoute::closed_form;
};

// E[RV(X,P)]: T * pqv_rate + sum (b dt_k)^2 in closed form for Levy models,
// the deterministic characteristic sums for Sato, and Monte Carlo over the
// clock alone for time-changed models (the conditional expectation given the
// clock is known in closed form, so only the clock is simulated).
ExpectedValue expected_rv(const ModelSpec& model, const Partition& partition,
                          const SimConfig& cfg, std::size_t clock_paths = 20000);

// Annualized swap rate s = E[basis]/T. The RV basis requires the partition.
ExpectedValue swap_rate(const ModelSpec& model, double T, Basis basis,
                        const Partition* partition, const SimConfig& cfg,
                        std::size_t clock_paths = 20000);

struct PriceResult {
    double estimate = 0.0;
    double se = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t paths = 0;
    Basis basis = Basis::rv;
    double k_eff = 0.0;
    double swap_rate_used = 0.0;  // 0 when the strike is fixed
    // Relative strikes with k <= 1 inherit the centered order guarantee;
    // k > 1 is still priced but flagged.
    bool order_guarantee = true;
};

// Discounted Monte Carlo price of the payoff over precomputed basis samples.
// k_eff must already be resolved (relative strikes: k * swap rate on the
// *same* basis).
PriceResult price_from_samples(std::span<const double> samples, double T,
                               const PayoffSpec& payoff, double k_eff, double r, double alpha);

// Resolves the effective strike and prices one payoff on one basis from a
// PairedSamples record, so joint RV/QV/PQV prices share one path set.
PriceResult price_option(const PairedSamples& samples, const ModelSpec& model,
                         const PayoffSpec& payoff, Basis basis, const Partition& partition,
                         const SimConfig& cfg, double r, double alpha);

}  // namespace qvo

#endif
