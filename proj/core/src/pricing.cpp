#include "qvo/pricing.hpp"

#include <cmath>
#include <stdexcept>

#include "qvo/special.hpp"
#include "qvo/stats.hpp"

namespace qvo {

const char* payoff_name(PayoffKind k) {
    switch (k) {
        case PayoffKind::swap: return "swap";
        case PayoffKind::call: return "call";
        case PayoffKind::put: return "put";
        case PayoffKind::straddle: return "straddle";
        case PayoffKind::volswap: return "volswap";
    }
    return "?";
}

double payoff_eval(const PayoffSpec& spec, double x, double k_eff) {
    if (x < 0.0)
        throw std::invalid_argument("payoff_eval: negative variance value signals an upstream bug");
    switch (spec.kind) {
        case PayoffKind::swap: return x - k_eff;
        case PayoffKind::call: return std::max(x - k_eff, 0.0);
        case PayoffKind::put: return std::max(k_eff - x, 0.0);
        case PayoffKind::straddle: return std::abs(x - k_eff);
        case PayoffKind::volswap: return std::sqrt(x) - k_eff;
    }
    throw std::logic_error("payoff_eval: unknown payoff kind");
}

ExpectedValue expected_rv(const ModelSpec& model, const Partition& partition,
                          const SimConfig& cfg, std::size_t clock_paths) {
    validate_model(model);
    ExpectedValue out;
    switch (model.kind) {
        case ModelKind::levy: {
            out.value = partition.horizon() * pqv_rate(model.triplet) +
                        deterministic_drift_rv(model, partition);
            out.route = PriceRoute::closed_form;
            return out;
        }
        case ModelKind::sato: {
            out.value = sato_pqv(model.sato(), partition,
                                 clock_step(cfg, partition.horizon())) +
                        deterministic_drift_rv(model, partition);
            out.route = PriceRoute::closed_form;
            return out;
        }
        case ModelKind::time_changed: {
            // E[RV | clock] = pqv_rate * tau_T + sum (b dtau_k)^2
            const double rate = pqv_rate(model.triplet);
            const double b = effective_drift(model);
            const double T = partition.horizon();
            const std::uint64_t lh = hash_label("expected_rv/clock");
            const double mean = pairwise_sum_transform(clock_paths, [&](std::size_t i) {
                const ClockPath clk = simulate_clock(model.clock, T, cfg, lh, i);
                double cond = rate * clk.clock_T;
                double tau_prev = 0.0;
                for (std::size_t k = 0; k < partition.intervals(); ++k) {
                    const double tau_k = clk.at(partition[k + 1]);
                    const double d = b * (tau_k - tau_prev);
                    cond += d * d;
                    tau_prev = tau_k;
                }
                return cond;
            }) / double(clock_paths);
            out.value = mean;
            out.route = PriceRoute::mc_clock;
            return out;
        }
    }
    throw std::logic_error("expected_rv: unknown model kind");
}

ExpectedValue swap_rate(const ModelSpec& model, double T, Basis basis, const Partition* partition,
                        const SimConfig& cfg, std::size_t clock_paths) {
    validate_model(model);
    ExpectedValue out;
    if (basis == Basis::rv) {
        if (partition == nullptr)
            throw std::invalid_argument("swap_rate: RV basis requires a partition");
        out = expected_rv(model, *partition, cfg, clock_paths);
        out.value /= T;
        return out;
    }
    // E[QV] = E[PQV]: the compensator property
    switch (model.kind) {
        case ModelKind::levy:
            out.value = pqv_rate(model.triplet);
            return out;
        case ModelKind::time_changed:
            out.value = pqv_rate(model.triplet) * model.clock.mean_at(T) / T;
            return out;
        case ModelKind::sato: {
            const Partition whole = partition ? *partition : Partition::uniform(T, 1);
            out.value = sato_pqv(model.sato(), whole, clock_step(cfg, T)) / T;
            return out;
        }
    }
    throw std::logic_error("swap_rate: unknown model kind");
}

PriceResult price_from_samples(std::span<const double> samples, double T,
                               const PayoffSpec& payoff, double k_eff, double r, double alpha) {
    if (samples.empty()) throw std::invalid_argument("price_from_samples: empty sample set");
    const double discount = std::exp(-r * T);
    const double inv_T = payoff.annualize ? 1.0 / T : 1.0;
    const MeanSe ms = mean_se_transform(samples.size(), [&](std::size_t i) {
        return payoff_eval(payoff, samples[i] * inv_T, k_eff);
    });
    const double z = z_two_sided(alpha);
    PriceResult res;
    res.estimate = discount * ms.mean;
    res.se = discount * ms.se;
    res.ci_low = res.estimate - z * res.se;
    res.ci_high = res.estimate + z * res.se;
    res.paths = samples.size();
    res.k_eff = k_eff;
    return res;
}

PriceResult price_option(const PairedSamples& samples, const ModelSpec& model,
                         const PayoffSpec& payoff, Basis basis, const Partition& partition,
                         const SimConfig& cfg, double r, double alpha) {
    double k_eff = payoff.strike;
    double s_used = 0.0;
    bool guarantee = true;
    if (payoff.strike_mode == StrikeMode::relative) {
        // swap rate on the same basis as the priced payoff
        s_used = swap_rate(model, samples.T, basis, &partition, cfg).value;
        k_eff = payoff.strike * s_used;
        guarantee = payoff.strike <= 1.0;
    }
    PriceResult res =
        price_from_samples(basis_samples(samples, basis), samples.T, payoff, k_eff, r, alpha);
    res.basis = basis;
    res.swap_rate_used = s_used;
    res.order_guarantee = guarantee && payoff.convex();
    return res;
}

}  // namespace qvo
