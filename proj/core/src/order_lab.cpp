#include "qvo/order_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qvo/parallel.hpp"
#include "qvo/special.hpp"

namespace qvo {

StopLossCurve stop_loss(std::span<const double> samples, std::span<const double> strikes) {
    if (samples.empty()) throw std::invalid_argument("stop_loss: empty sample set");
    StopLossCurve curve;
    curve.strikes.assign(strikes.begin(), strikes.end());
    for (std::size_t j = 1; j < curve.strikes.size(); ++j) {
        if (!(curve.strikes[j] > curve.strikes[j - 1]))
            throw std::invalid_argument("stop_loss: strike grid must be sorted");
    }
    for (double k : curve.strikes) {
        const MeanSe ms = mean_se_transform(
            samples.size(), [&](std::size_t i) { return std::max(samples[i] - k, 0.0); });
        curve.values.push_back(ms.mean);
        curve.ses.push_back(ms.se);
    }
    return curve;
}

std::vector<double> strike_grid(std::span<const double> lhs, std::span<const double> rhs,
                                std::size_t count, double q_lo, double q_hi) {
    if (lhs.empty() || rhs.empty()) throw std::invalid_argument("strike_grid: empty samples");
    if (count < 2) throw std::invalid_argument("strike_grid: need at least 2 strikes");
    std::vector<double> pooled;
    pooled.reserve(lhs.size() + rhs.size());
    pooled.insert(pooled.end(), lhs.begin(), lhs.end());
    pooled.insert(pooled.end(), rhs.begin(), rhs.end());
    std::sort(pooled.begin(), pooled.end());
    std::vector<double> ks;
    ks.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double p = q_lo + (q_hi - q_lo) * double(j) / double(count - 1);
        const double k = quantile_sorted(pooled, p);
        if (ks.empty() || k > ks.back() + 1e-12 * (std::abs(ks.back()) + 1.0)) ks.push_back(k);
    }
    return ks;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::consistent: return "consistent";
        case Verdict::violated: return "violated";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

OrderVerdict icx_test(std::span<const double> lhs, std::span<const double> rhs,
                      std::span<const double> strikes, double alpha,
                      std::optional<double> equal_means_gap, bool bonferroni,
                      std::string relation) {
    if (lhs.size() != rhs.size())
        throw std::invalid_argument("icx_test: mismatched path sets (coupling is required)");
    OrderVerdict out;
    out.relation = std::move(relation);
    out.alpha = alpha;
    out.bonferroni = bonferroni;
    if (lhs.size() < 2 || strikes.empty()) {
        out.verdict = Verdict::inconclusive;
        return out;
    }
    const double eff_alpha = bonferroni ? alpha / double(strikes.size()) : alpha;
    const double z_crit = z_two_sided(eff_alpha);
    bool any_violated = false;
    for (double k : strikes) {
        const MeanSe ms = mean_se_transform(lhs.size(), [&](std::size_t i) {
            return std::max(lhs[i] - k, 0.0) - std::max(rhs[i] - k, 0.0);
        });
        StrikeDiff d;
        d.strike = k;
        d.diff = ms.mean;
        d.se = ms.se;
        d.z = ms.se > 0.0 ? ms.mean / ms.se : 0.0;
        d.violated = ms.se > 0.0 ? ms.mean < -z_crit * ms.se : ms.mean < 0.0;
        if (d.violated) {
            any_violated = true;
            out.violating_strikes.push_back(k);
        }
        out.strikes.push_back(d);
    }
    out.verdict = any_violated ? Verdict::violated : Verdict::consistent;
    if (equal_means_gap.has_value()) {
        out.mean_check.requested = true;
        out.mean_check.expected_gap = *equal_means_gap;
        const MeanSe ms = mean_se_transform(
            lhs.size(), [&](std::size_t i) { return lhs[i] - rhs[i]; });
        out.mean_check.diff = ms.mean;
        out.mean_check.se = ms.se;
        out.mean_check.compatible = std::abs(ms.mean - *equal_means_gap) <= 3.0 * ms.se;
        out.upgraded_to_cx = out.verdict == Verdict::consistent && out.mean_check.compatible &&
                             *equal_means_gap == 0.0;
    }
    return out;
}

void WalkOracle::validate() const {
    if (n == 0) throw std::invalid_argument("walk oracle: n must be >= 1");
    if (steps.size() < 1) throw std::invalid_argument("walk oracle: empty step support");
    double total = 0.0;
    for (const auto& s : steps) {
        if (!(s.prob > 0.0)) throw std::invalid_argument("walk oracle: step probs must be > 0");
        total += s.prob;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("walk oracle: step probs must sum to 1");
    const double outcomes = std::pow(double(steps.size()), double(n));
    if (outcomes > double(1 << 22))
        throw std::invalid_argument("walk oracle: enumeration budget exceeded");
}

bool WalkOracle::symmetric() const {
    for (const auto& s : steps) {
        bool found = false;
        for (const auto& t : steps) {
            if (t.value == -s.value && std::abs(t.prob - s.prob) < 1e-15) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

namespace {

void walk_enumerate(const WalkOracle& oracle, std::size_t depth, std::vector<double>& values,
                    double prob, const std::function<void(std::span<const double>, double)>& leaf) {
    if (depth == oracle.n) {
        leaf(values, prob);
        return;
    }
    for (const auto& s : oracle.steps) {
        values[depth + 1] = values[depth] + s.value;
        walk_enumerate(oracle, depth + 1, values, prob * s.prob, leaf);
    }
}

}  // namespace

double walk_oracle_eval(const WalkOracle& oracle,
                        const std::function<double(std::span<const double>)>& functional) {
    oracle.validate();
    std::vector<double> values(oracle.n + 1, 0.0);
    double acc = 0.0;
    walk_enumerate(oracle, 0, values, 1.0,
                   [&](std::span<const double> vals, double p) { acc += p * functional(vals); });
    return acc;
}

double walk_rv(std::span<const double> values, std::span<const std::size_t> indices) {
    if (indices.size() < 2) throw std::invalid_argument("walk_rv: need at least 2 indices");
    double rv = 0.0;
    for (std::size_t j = 1; j < indices.size(); ++j) {
        const double d = values[indices[j]] - values[indices[j - 1]];
        rv += d * d;
    }
    return rv;
}

std::vector<std::string> g_battery_names() { return {"one", "clipped_identity", "above_median"}; }

double g_battery_eval(std::size_t which, double rv_fine, double median) {
    switch (which) {
        case 0: return 1.0;
        case 1: return std::min(rv_fine, median);
        case 2: return rv_fine > median ? 1.0 : 0.0;
    }
    throw std::logic_error("g_battery_eval: unknown test function");
}

namespace {

// exact median of a discrete distribution given (value, prob) pairs
double discrete_median(std::vector<std::pair<double, double>> dist) {
    std::sort(dist.begin(), dist.end());
    double cum = 0.0;
    for (const auto& [v, p] : dist) {
        cum += p;
        if (cum >= 0.5 - 1e-15) return v;
    }
    return dist.back().first;
}

}  // namespace

std::vector<WalkOrthogonality> walk_reverse_mg(const WalkOracle& oracle,
                                               std::span<const std::size_t> coarse,
                                               std::span<const std::size_t> fine) {
    oracle.validate();
    if (fine.size() != coarse.size() + 1)
        throw std::invalid_argument("walk_reverse_mg: fine must insert exactly one index");
    // locate the inserted index and its coarse neighbours
    std::size_t ins = 0;
    while (ins < coarse.size() && coarse[ins] == fine[ins]) ++ins;
    const std::size_t idx_a = fine[ins - 1];
    const std::size_t idx_t = fine[ins];
    const std::size_t idx_b = fine[ins + 1];

    std::vector<std::pair<double, double>> rv_dist;
    std::vector<double> values(oracle.n + 1, 0.0);
    walk_enumerate(oracle, 0, values, 1.0, [&](std::span<const double> vals, double p) {
        rv_dist.emplace_back(walk_rv(vals, fine), p);
    });
    const double median = discrete_median(std::move(rv_dist));

    std::vector<WalkOrthogonality> out;
    const auto names = g_battery_names();
    for (std::size_t g = 0; g < names.size(); ++g) {
        double acc = 0.0;
        walk_enumerate(oracle, 0, values, 1.0, [&](std::span<const double> vals, double p) {
            const double prod = (vals[idx_b] - vals[idx_t]) * (vals[idx_t] - vals[idx_a]);
            acc += p * prod * g_battery_eval(g, walk_rv(vals, fine), median);
        });
        out.push_back(WalkOrthogonality{0, names[g], acc});
    }
    return out;
}

ReverseMgReport reverse_mg_test(const ModelSpec& model, const NestedSequence& nested,
                                const SimConfig& cfg, std::size_t paths, double alpha,
                                unsigned threads, std::string_view label) {
    const auto steps = nested.single_insertion_steps();
    if (steps.empty()) throw std::invalid_argument("reverse_mg_test: no refinement steps");
    const Partition& finest = nested.levels.back();

    // map the (a, t*, b) triplets and each step's fine level into the finest grid
    struct StepIndex {
        std::size_t a, t, b;
        std::vector<std::size_t> fine_idx;
        double t_star;
    };
    std::vector<StepIndex> sidx;
    const auto locate = [&finest](double t) {
        const auto& pts = finest.points();
        const auto it = std::lower_bound(pts.begin(), pts.end(), t);
        if (it == pts.end() || *it != t)
            throw std::invalid_argument("reverse_mg_test: refinement point not in finest level");
        return std::size_t(it - pts.begin());
    };
    for (std::size_t s = 0; s < steps.size(); ++s) {
        StepIndex si;
        si.a = locate(steps[s].a);
        si.t = locate(steps[s].t_star);
        si.b = locate(steps[s].b);
        si.t_star = steps[s].t_star;
        si.fine_idx = nested.levels[s + 1].indices_in(finest);
        sidx.push_back(std::move(si));
    }

    const PreparedModel prep = prepare_model(model, cfg);
    const std::uint64_t lh = hash_label(label);
    const std::size_t S = sidx.size();
    std::vector<std::vector<double>> prods(S), rvf(S);
    for (std::size_t s = 0; s < S; ++s) {
        prods[s].resize(paths);
        rvf[s].resize(paths);
    }
    std::vector<PathSample> scratch(std::max(1u, threads));
    parallel_for(paths, threads, cfg.paths_per_batch, [&](std::size_t i, unsigned worker) {
        PathSample& path = scratch[worker];
        simulate_path_into(prep, finest, cfg, lh, i, path);
        for (std::size_t s = 0; s < S; ++s) {
            const auto& si = sidx[s];
            prods[s][i] =
                (path.values[si.b] - path.values[si.t]) * (path.values[si.t] - path.values[si.a]);
            rvf[s][i] = walk_rv(path.values, si.fine_idx);
        }
    });

    ReverseMgReport report;
    report.alpha = alpha;
    report.all_pass = true;
    const double z_crit = z_two_sided(alpha);
    const auto names = g_battery_names();
    for (std::size_t s = 0; s < S; ++s) {
        std::vector<double> sorted(rvf[s]);
        std::sort(sorted.begin(), sorted.end());
        const double median = quantile_sorted(sorted, 0.5);
        for (std::size_t g = 0; g < names.size(); ++g) {
            const MeanSe ms = mean_se_transform(paths, [&](std::size_t i) {
                return prods[s][i] * g_battery_eval(g, rvf[s][i], median);
            });
            MgCheck c;
            c.step = s;
            c.t_star = sidx[s].t_star;
            c.g_name = names[g];
            c.stat = ms.mean;
            c.se = ms.se;
            c.z = ms.se > 0.0 ? ms.mean / ms.se : 0.0;
            c.pass = std::abs(c.z) <= z_crit;
            report.all_pass = report.all_pass && c.pass;
            report.checks.push_back(std::move(c));
        }
    }
    return report;
}

NestedReport nested_monotonicity_test(const ModelSpec& model, const NestedSequence& nested,
                                      const SimConfig& cfg, std::size_t paths, double alpha,
                                      unsigned threads, std::size_t strikes,
                                      std::string_view label) {
    nested.validate();
    const Partition& finest = nested.levels.back();
    const std::size_t L = nested.levels.size();
    std::vector<std::vector<std::size_t>> level_idx(L);
    for (std::size_t m = 0; m < L; ++m) level_idx[m] = nested.levels[m].indices_in(finest);

    const PreparedModel prep = prepare_model(model, cfg);
    const std::uint64_t lh = hash_label(label);
    std::vector<std::vector<double>> rv_level(L);
    for (auto& v : rv_level) v.resize(paths);
    std::vector<double> qv_path(paths);
    std::vector<PathSample> scratch(std::max(1u, threads));
    parallel_for(paths, threads, cfg.paths_per_batch, [&](std::size_t i, unsigned worker) {
        PathSample& path = scratch[worker];
        simulate_path_into(prep, finest, cfg, lh, i, path);
        for (std::size_t m = 0; m < L; ++m) rv_level[m][i] = walk_rv(path.values, level_idx[m]);
        qv_path[i] = qv(path);
    });

    NestedReport report;
    report.all_consistent = true;
    for (std::size_t m = 0; m + 1 < L; ++m) {
        std::optional<double> gap;
        const double g0 = deterministic_drift_rv(model, nested.levels[m]);
        const double g1 = deterministic_drift_rv(model, nested.levels[m + 1]);
        if (!std::isnan(g0) && !std::isnan(g1)) gap = g0 - g1;
        const auto ks = strike_grid(rv_level[m], rv_level[m + 1], strikes);
        OrderVerdict v = icx_test(rv_level[m], rv_level[m + 1], ks, alpha, gap, false,
                                  "RV(P^" + std::to_string(m) + ") >=icx RV(P^" +
                                      std::to_string(m + 1) + ")");
        report.all_consistent = report.all_consistent && v.verdict == Verdict::consistent;
        report.verdicts.push_back(std::move(v));
    }
    {
        std::optional<double> gap;
        const double g = deterministic_drift_rv(model, finest);
        if (!std::isnan(g)) gap = g;
        const auto ks = strike_grid(rv_level[L - 1], qv_path, strikes);
        OrderVerdict v = icx_test(rv_level[L - 1], qv_path, ks, alpha, gap, false,
                                  "RV(P^" + std::to_string(L - 1) + ") >=icx QV");
        report.all_consistent = report.all_consistent && v.verdict == Verdict::consistent;
        report.verdicts.push_back(std::move(v));
    }
    return report;
}

StoppedBmReport counterexample_stopped_bm(const StoppedBmConfig& cfg) {
    const double h = cfg.step;
    if (!(h > 0.0)) throw std::invalid_argument("stopped_bm: step must be > 0");
    const std::uint64_t lh = hash_label("counterexample/stopped_bm");
    std::vector<double> tau(cfg.paths);
    std::vector<double> terminal(cfg.paths);
    std::vector<std::uint64_t> resampled(cfg.paths, 0);
    const double sqh = std::sqrt(h);

    parallel_for(cfg.paths, cfg.threads, 4096, [&](std::size_t i, unsigned) {
        RandomStream rng(cfg.seed, lh, i, substream::increments);
        for (int attempt = 0; attempt < 1000; ++attempt) {
            double w = 0.0, t = 0.0;
            while (t < cfg.time_budget) {
                const double wn = w + sqh * rng.normal();
                if (wn >= 1.0 || wn <= -1.0) {
                    // overshoot: linear-in-time crossing estimate inside the step
                    const double target = wn >= 1.0 ? 1.0 : -1.0;
                    const double frac = (target - w) / (wn - w);
                    tau[i] = t + frac * h;
                    terminal[i] = target;
                    return;
                }
                // Brownian-bridge boundary-crossing probabilities for both
                // barriers; corrects the Euler bias that inflates tau
                const double p_up = std::exp(-2.0 * (1.0 - w) * (1.0 - wn) / h);
                const double p_dn = std::exp(-2.0 * (1.0 + w) * (1.0 + wn) / h);
                const double p_hit = std::min(p_up + p_dn, 1.0);
                if (rng.uniform() < p_hit) {
                    tau[i] = t + 0.5 * h;
                    terminal[i] = rng.uniform() * (p_up + p_dn) < p_up ? 1.0 : -1.0;
                    return;
                }
                w = wn;
                t += h;
            }
            ++resampled[i];
        }
        throw std::runtime_error("stopped_bm: path failed to exit within budget repeatedly");
    });

    StoppedBmReport rep;
    rep.tau = mean_se(tau);
    rep.excess_at_1 = mean_se_transform(
        cfg.paths, [&](std::size_t i) { return std::max(tau[i] - 1.0, 0.0); });
    rep.resampled = std::size_t(
        pairwise_sum_transform(cfg.paths, [&](std::size_t i) { return double(resampled[i]); }));
    rep.rv_constant_one = true;
    for (double v : terminal) {
        if (v * v != 1.0) {
            rep.rv_constant_one = false;
            break;
        }
    }
    rep.mean_pass = std::abs(rep.tau.mean - 1.0) <= 3.0 * rep.tau.se;
    rep.strict_pass = rep.excess_at_1.mean > 3.0 * rep.excess_at_1.se;
    rep.pass = rep.mean_pass && rep.strict_pass && rep.rv_constant_one;
    return rep;
}

HazardReport counterexample_hazard(std::size_t paths, std::uint64_t seed, double ks_alpha,
                                   std::span<const double> strikes) {
    if (paths < 2) throw std::invalid_argument("hazard: need paths >= 2");
    static const std::vector<double> default_grid = {0.0, 0.25, 0.5, 1.0, 2.0};
    const std::span<const double> grid =
        strikes.empty() ? std::span<const double>(default_grid) : strikes;

    RandomStream rng(seed, hash_label("counterexample/hazard"), 0, substream::increments);
    std::vector<double> pqv(paths);
    for (std::size_t i = 0; i < paths; ++i) {
        const double u = rng.uniform();  // jump time tau ~ U[0,1)
        pqv[i] = -std::log1p(-u);        // hazard at tau: Exp(1)
    }

    HazardReport rep;
    rep.ks = ks_test_cdf(pqv, [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); }, ks_alpha);
    bool grid_ok = true;
    for (double k : grid) {
        HazardGridCheck c;
        c.strike = k;
        c.pqv_stop_loss = std::exp(-k);
        c.qv_stop_loss = std::max(1.0 - k, 0.0);
        const MeanSe ms = mean_se_transform(
            paths, [&](std::size_t i) { return std::max(pqv[i] - k, 0.0); });
        c.empirical = ms.mean;
        c.empirical_se = ms.se;
        c.holds = c.pqv_stop_loss >= c.qv_stop_loss;
        c.strict = k > 0.0 ? c.pqv_stop_loss > c.qv_stop_loss : true;
        const bool emp_ok = std::abs(c.empirical - c.pqv_stop_loss) <= 3.0 * c.empirical_se;
        grid_ok = grid_ok && c.holds && c.strict && emp_ok;
        rep.grid.push_back(c);
    }
    rep.pass = rep.ks.pass && grid_ok;
    return rep;
}

}  // namespace qvo
