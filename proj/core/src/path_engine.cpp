#include "qvo/path_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "qvo/special.hpp"

namespace qvo {
namespace {

constexpr int max_rejection_iters = 100000;

[[noreturn]] void sampler_failure(JumpFamily f) {
    throw std::runtime_error(std::string("jump sampler failure for family ") + family_name(f));
}

}  // namespace

double clock_step(const SimConfig& cfg, double T) {
    if (cfg.h_clock > 0.0) return cfg.h_clock;
    return T / 2048.0;
}

double qv(const PathSample& path) {
    double s = path.qv_continuous;
    for (const auto& j : path.jumps) s += j.size * j.size;
    return s;
}

double pqv(const PathSample& path, const ModelSpec& model) {
    if (model.kind == ModelKind::sato) {
        // slice-sum value; stored by the engine at simulation time
        return path.pqv_T;
    }
    const double expected = pqv_rate(model.triplet) * path.clock_T;
    if (std::abs(expected - path.pqv_T) > 1e-9 * std::max(1.0, std::abs(expected)))
        throw std::invalid_argument("pqv: model does not match the path sample");
    return path.pqv_T;
}

double rv(const PathSample& path) {
    double s = 0.0;
    for (double d : path.increments) s += d * d;
    return s;
}

TruncatedJumpSampler::TruncatedJumpSampler(const JumpSpec& jumps, double eps)
    : spec_(jumps), eps_(eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("jump truncation epsilon must be > 0");
    if (jumps.family == JumpFamily::none) return;
    lambda_eps_ = jump_tail_mass(jumps, eps);
    sigma_eps2_ = small_jump_variance(jumps, eps);
    if (lambda_eps_ <= 0.0) return;

    switch (jumps.family) {
        case JumpFamily::gaussian:
        case JumpFamily::double_exponential:
            break;  // sampled directly, no envelope needed
        case JumpFamily::variance_gamma_sym: {
            rate_ = std::sqrt(2.0 / jumps.kappa_vg) / jumps.sigma_vg;
            x0_ = std::max(2.0 * eps, 1.0 / rate_);
            w_head_ = std::exp(-rate_ * eps) * std::log(x0_ / eps);
            w_tail_ = std::exp(-rate_ * x0_) / (rate_ * x0_);
            break;
        }
        case JumpFamily::nig_sym: {
            scale_ = jumps.sigma_nig * std::sqrt(jumps.kappa_nig);
            x0_ = std::max(2.0 * eps, scale_);
            w_head_ = scale_ * (1.0 / eps - 1.0 / x0_);
            tail_ref_ = bessel_k1_scaled(x0_ / scale_);
            w_tail_ = scale_ * bessel_k1_fast(x0_ / scale_) / x0_;
            break;
        }
        case JumpFamily::cgmy_sym: {
            rate_ = jumps.m;
            x0_ = std::max(2.0 * eps, 1.0 / jumps.m);
            const double y = jumps.y;
            w_head_ = std::exp(-rate_ * eps) * (std::pow(eps, -y) - std::pow(x0_, -y)) / y;
            w_tail_ = std::exp(-rate_ * x0_) / (rate_ * std::pow(x0_, 1.0 + y));
            break;
        }
        default:
            break;
    }
}

double TruncatedJumpSampler::sample_abs(RandomStream& rng) const {
    switch (spec_.family) {
        case JumpFamily::none:
            break;
        case JumpFamily::gaussian: {
            for (int i = 0; i < max_rejection_iters; ++i) {
                const double x = std::abs(spec_.delta * rng.normal());
                if (x > eps_) return x;
            }
            sampler_failure(spec_.family);
        }
        case JumpFamily::double_exponential:
            // memoryless tail
            return eps_ + rng.exponential(spec_.eta);
        case JumpFamily::variance_gamma_sym: {
            // density ~ exp(-a x)/x on (eps, inf); log-uniform head, exponential tail
            const double p_head = w_head_ / (w_head_ + w_tail_);
            for (int i = 0; i < max_rejection_iters; ++i) {
                if (rng.uniform() < p_head) {
                    const double x = eps_ * std::pow(x0_ / eps_, rng.uniform());
                    if (rng.uniform() < std::exp(-rate_ * (x - eps_))) return x;
                } else {
                    const double x = x0_ + rng.exponential(rate_);
                    if (rng.uniform() * x < x0_) return x;
                }
            }
            sampler_failure(spec_.family);
        }
        case JumpFamily::nig_sym: {
            // density ~ K1(x/s)/x; 1/x^2 head envelope (u K1(u) <= 1),
            // exponential tail envelope (e^u K1(u) decreasing)
            const double p_head = w_head_ / (w_head_ + w_tail_);
            for (int i = 0; i < max_rejection_iters; ++i) {
                if (rng.uniform() < p_head) {
                    const double x = 1.0 / (1.0 / eps_ - rng.uniform() * (1.0 / eps_ - 1.0 / x0_));
                    const double u = x / scale_;
                    if (rng.uniform() < u * bessel_k1_fast(u)) return x;
                } else {
                    const double x = x0_ + rng.exponential(1.0 / scale_);
                    const double accept =
                        (x0_ / x) * bessel_k1_scaled(x / scale_) / tail_ref_;
                    if (rng.uniform() < accept) return x;
                }
            }
            sampler_failure(spec_.family);
        }
        case JumpFamily::cgmy_sym: {
            // density ~ x^{-1-Y} e^{-Mx}; Pareto head, exponential tail
            const double y = spec_.y;
            const double p_head = w_head_ / (w_head_ + w_tail_);
            for (int i = 0; i < max_rejection_iters; ++i) {
                if (rng.uniform() < p_head) {
                    const double ey = std::pow(eps_, -y);
                    const double xy = std::pow(x0_, -y);
                    const double x = std::pow(ey - rng.uniform() * (ey - xy), -1.0 / y);
                    if (rng.uniform() < std::exp(-rate_ * (x - eps_))) return x;
                } else {
                    const double x = x0_ + rng.exponential(rate_);
                    if (rng.uniform() < std::pow(x0_ / x, 1.0 + y)) return x;
                }
            }
            sampler_failure(spec_.family);
        }
    }
    throw std::logic_error("sample_abs called on inactive sampler");
}

PreparedModel prepare_model(const ModelSpec& spec, const SimConfig& cfg) {
    PreparedModel prep;
    prep.spec = validate_model(spec);
    prep.b_eff = spec.kind == ModelKind::sato ? spec.triplet.drift : effective_drift(spec);
    prep.jumps = TruncatedJumpSampler(spec.triplet.jumps, cfg.epsilon);
    prep.sigma_tot2 = spec.triplet.gaussian_var + prep.jumps.sigma_eps2();
    prep.pqv_rate_v = pqv_rate(spec.triplet);
    return prep;
}

double ClockPath::at(double t) const {
    if (identity) return t;
    if (t <= 0.0) return 0.0;
    const double pos = t / step;
    const auto i = std::size_t(pos);
    if (i + 1 >= values.size()) return values.back();
    const double frac = pos - double(i);
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

ClockPath simulate_clock(const ClockModel& clock, double T, const SimConfig& cfg,
                         std::uint64_t label_hash, std::uint64_t path_index) {
    ClockPath out;
    if (clock.kind == ClockKind::identity) {
        out.identity = true;
        out.step = T;
        out.values = {0.0, T};
        out.clock_T = T;
        return out;
    }
    const auto m = std::size_t(std::ceil(T / clock_step(cfg, T)));
    const double h = T / double(m);
    RandomStream rng(cfg.base_seed, label_hash, path_index, substream::clock);
    out.step = h;
    out.values.resize(m + 1);
    out.values[0] = 0.0;
    double v = clock.cir_v0;
    double tau = 0.0;
    const double sq_h = std::sqrt(h);
    for (std::size_t i = 1; i <= m; ++i) {
        const double vp = std::max(v, 0.0);
        // full-truncation Euler
        v = v + clock.cir_kappa * (clock.cir_theta - vp) * h +
            clock.cir_xi * std::sqrt(vp) * sq_h * rng.normal();
        const double vn = std::max(v, 0.0);
        tau += 0.5 * h * (vp + vn);  // trapezoid; nondecreasing since v+ >= 0
        out.values[i] = tau;
    }
    out.clock_T = tau;
    return out;
}

namespace {

void begin_path(PathSample& out, std::size_t n, const SimConfig& cfg, std::uint64_t label_hash,
                std::uint64_t path_index) {
    out.values.assign(n + 1, 0.0);
    out.increments.assign(n, 0.0);
    out.drift_path.assign(n + 1, 0.0);
    out.jumps.clear();
    out.seed_tag = SeedTag{cfg.base_seed, label_hash, path_index};
}

// Compound-Poisson jumps over an exposure of length `measure_dt` (clock time)
// placed uniformly on the calendar interval [t0, t0+cal_dt). Returns the sum
// of jump sizes.
double add_jumps(const TruncatedJumpSampler& jumps, double measure_dt, double t0, double cal_dt,
                 double size_scale, RandomStream& rng, std::vector<JumpEvent>& ledger) {
    if (!jumps.active() || measure_dt <= 0.0) return 0.0;
    const std::uint64_t nj = rng.poisson(jumps.lambda_eps() * measure_dt);
    double sum = 0.0;
    for (std::uint64_t j = 0; j < nj; ++j) {
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        const double size = size_scale * sign * jumps.sample_abs(rng);
        const double time = t0 + cal_dt * rng.uniform();
        ledger.push_back(JumpEvent{time, size});
        sum += size;
    }
    return sum;
}

}  // namespace

void simulate_levy_path_into(const PreparedModel& prep, const Partition& partition,
                             const SimConfig& cfg, std::uint64_t label_hash,
                             std::uint64_t path_index, PathSample& out) {
    const std::size_t n = partition.intervals();
    const double T = partition.horizon();
    begin_path(out, n, cfg, label_hash, path_index);
    RandomStream rng(cfg.base_seed, label_hash, path_index, substream::increments);
    const double sig = std::sqrt(prep.sigma_tot2);
    for (std::size_t k = 0; k < n; ++k) {
        const double dt = partition.dt(k);
        double inc = prep.b_eff * dt;
        if (prep.sigma_tot2 > 0.0) inc += sig * std::sqrt(dt) * rng.normal();
        inc += add_jumps(prep.jumps, dt, partition[k], dt, 1.0, rng, out.jumps);
        out.increments[k] = inc;
        out.values[k + 1] = out.values[k] + inc;
        out.drift_path[k + 1] = prep.b_eff * partition[k + 1];
    }
    out.clock_T = T;
    out.qv_continuous = prep.sigma_tot2 * T;
    out.pqv_T = prep.pqv_rate_v * T;
}

PathSample simulate_levy_path(const PreparedModel& prep, const Partition& partition,
                              const SimConfig& cfg, std::uint64_t label_hash,
                              std::uint64_t path_index) {
    PathSample out;
    simulate_levy_path_into(prep, partition, cfg, label_hash, path_index, out);
    return out;
}

PathSample simulate_levy_path(const LevyTriplet& triplet, const Partition& partition,
                              const SimConfig& cfg, std::uint64_t label_hash,
                              std::uint64_t path_index) {
    ModelSpec spec = ModelSpec::levy(triplet);
    spec.allow_zero = true;
    return simulate_levy_path(prepare_model(spec, cfg), partition, cfg, label_hash, path_index);
}

void simulate_time_changed_path_into(const PreparedModel& prep, const Partition& partition,
                                     const SimConfig& cfg, std::uint64_t label_hash,
                                     std::uint64_t path_index, PathSample& out) {
    const std::size_t n = partition.intervals();
    const double T = partition.horizon();
    begin_path(out, n, cfg, label_hash, path_index);
    const ClockPath clk = simulate_clock(prep.spec.clock, T, cfg, label_hash, path_index);
    RandomStream rng(cfg.base_seed, label_hash, path_index, substream::increments);
    const double sig = std::sqrt(prep.sigma_tot2);
    double tau_prev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double tau_k = clk.at(partition[k + 1]);
        const double dtau = std::max(tau_k - tau_prev, 0.0);
        double inc = prep.b_eff * dtau;
        if (prep.sigma_tot2 > 0.0 && dtau > 0.0) inc += sig * std::sqrt(dtau) * rng.normal();
        inc += add_jumps(prep.jumps, dtau, partition[k], partition.dt(k), 1.0, rng, out.jumps);
        out.increments[k] = inc;
        out.values[k + 1] = out.values[k] + inc;
        out.drift_path[k + 1] = prep.b_eff * tau_k;
        tau_prev = tau_k;
    }
    out.clock_T = clk.clock_T;
    out.qv_continuous = prep.sigma_tot2 * out.clock_T;
    out.pqv_T = prep.pqv_rate_v * out.clock_T;
}

PathSample simulate_time_changed_path(const PreparedModel& prep, const Partition& partition,
                                      const SimConfig& cfg, std::uint64_t label_hash,
                                      std::uint64_t path_index) {
    PathSample out;
    simulate_time_changed_path_into(prep, partition, cfg, label_hash, path_index, out);
    return out;
}

double sato_slice_weight(const Partition& partition, double h, double gamma) {
    double acc = 0.0;
    for (std::size_t k = 0; k < partition.intervals(); ++k) {
        const double t0 = partition[k];
        const double t1 = partition[k + 1];
        const auto slices = std::size_t(std::ceil((t1 - t0) / h));
        const double ds = (t1 - t0) / double(slices);
        for (std::size_t i = 0; i < slices; ++i) {
            const double mid = t0 + (double(i) + 0.5) * ds;
            acc += std::pow(mid, 2.0 * gamma) * ds;
        }
    }
    return acc;
}

double sato_pqv(const SatoSpec& sato, const Partition& partition, double slice_step) {
    const double T = partition.horizon();
    return sato.base.gaussian_var * std::pow(T, 2.0 * sato.gamma) +
           jump_second_moment(sato.base.jumps) *
               sato_slice_weight(partition, slice_step, sato.gamma);
}

void simulate_sato_path_into(const PreparedModel& prep, const Partition& partition,
                             const SimConfig& cfg, std::uint64_t label_hash,
                             std::uint64_t path_index, PathSample& out) {
    const std::size_t n = partition.intervals();
    const double T = partition.horizon();
    const double gamma = prep.spec.sato_gamma;
    const double two_g = 2.0 * gamma;
    const double sig2 = prep.spec.triplet.gaussian_var;
    const double b = prep.b_eff;
    begin_path(out, n, cfg, label_hash, path_index);
    RandomStream rng(cfg.base_seed, label_hash, path_index, substream::increments);
    const double h = clock_step(cfg, T);
    const double slice_weight = sato_slice_weight(partition, h, gamma);
    for (std::size_t k = 0; k < n; ++k) {
        const double t0 = partition[k];
        const double t1 = partition[k + 1];
        const double gvar = sig2 * (std::pow(t1, two_g) - std::pow(t0, two_g));
        double inc = b * (std::pow(t1, gamma) - std::pow(t0, gamma));
        if (gvar > 0.0) inc += std::sqrt(gvar) * rng.normal();
        const auto slices = std::size_t(std::ceil((t1 - t0) / h));
        const double ds = (t1 - t0) / double(slices);
        for (std::size_t i = 0; i < slices; ++i) {
            const double s0 = t0 + double(i) * ds;
            const double mid = s0 + 0.5 * ds;
            // jump measure frozen at the slice midpoint: base jumps scaled
            // by mid^gamma, constant truncated intensity
            inc += add_jumps(prep.jumps, ds, s0, ds, std::pow(mid, gamma), rng, out.jumps);
        }
        out.increments[k] = inc;
        out.values[k + 1] = out.values[k] + inc;
        out.drift_path[k + 1] = b * std::pow(t1, gamma);
    }
    out.clock_T = T;
    out.qv_continuous = sig2 * std::pow(T, two_g) + prep.jumps.sigma_eps2() * slice_weight;
    out.pqv_T =
        sig2 * std::pow(T, two_g) + jump_second_moment(prep.spec.triplet.jumps) * slice_weight;
}

PathSample simulate_sato_path(const SatoSpec& sato, const Partition& partition,
                              const SimConfig& cfg, std::uint64_t label_hash,
                              std::uint64_t path_index) {
    ModelSpec spec = ModelSpec::sato_model(sato.gamma, sato.base);
    spec.allow_zero = true;
    PathSample out;
    simulate_sato_path_into(prepare_model(spec, cfg), partition, cfg, label_hash, path_index, out);
    return out;
}

void simulate_path_into(const PreparedModel& prep, const Partition& partition,
                        const SimConfig& cfg, std::uint64_t label_hash, std::uint64_t path_index,
                        PathSample& out) {
    switch (prep.spec.kind) {
        case ModelKind::levy:
            simulate_levy_path_into(prep, partition, cfg, label_hash, path_index, out);
            return;
        case ModelKind::time_changed:
            simulate_time_changed_path_into(prep, partition, cfg, label_hash, path_index, out);
            return;
        case ModelKind::sato:
            simulate_sato_path_into(prep, partition, cfg, label_hash, path_index, out);
            return;
    }
    throw std::logic_error("simulate_path_into: unknown model kind");
}

PathSample restrict_path(const PathSample& path, const Partition& fine, const Partition& coarse) {
    if (path.values.size() != fine.size())
        throw std::invalid_argument("restrict_path: path does not live on the fine partition");
    const std::vector<std::size_t> idx = coarse.indices_in(fine);
    PathSample out;
    out.values.resize(idx.size());
    out.drift_path.resize(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        out.values[i] = path.values[idx[i]];
        out.drift_path[i] = path.drift_path[idx[i]];
    }
    out.increments.resize(idx.size() - 1);
    for (std::size_t i = 1; i < idx.size(); ++i)
        out.increments[i - 1] = out.values[i] - out.values[i - 1];
    out.jumps = path.jumps;
    out.clock_T = path.clock_T;
    out.qv_continuous = path.qv_continuous;
    out.pqv_T = path.pqv_T;
    out.seed_tag = path.seed_tag;
    return out;
}

PathSample reflect_path(const PathSample& path, const Partition& partition,
                        std::size_t pivot_index) {
    if (path.values.size() != partition.size())
        throw std::invalid_argument("reflect_path: path does not live on the partition");
    if (pivot_index >= partition.size())
        throw std::invalid_argument("reflect_path: pivot must be a partition point index");
    PathSample out = path;
    for (std::size_t k = pivot_index; k < out.increments.size(); ++k) {
        out.increments[k] = -out.increments[k];
        out.values[k + 1] = out.values[k] + out.increments[k];
    }
    const double t_star = partition[pivot_index];
    for (auto& j : out.jumps) {
        if (j.time > t_star) j.size = -j.size;
    }
    return out;
}

double vg_increment_exact(const JumpSpec& jumps, double dt, RandomStream& rng) {
    if (jumps.family != JumpFamily::variance_gamma_sym)
        throw std::invalid_argument("vg_increment_exact: wrong family");
    const double g = rng.gamma(dt / jumps.kappa_vg, jumps.kappa_vg);
    return jumps.sigma_vg * std::sqrt(g) * rng.normal();
}

double nig_increment_exact(const JumpSpec& jumps, double dt, RandomStream& rng) {
    if (jumps.family != JumpFamily::nig_sym)
        throw std::invalid_argument("nig_increment_exact: wrong family");
    const double t = rng.inverse_gaussian(dt, dt * dt / jumps.kappa_nig);
    return jumps.sigma_nig * std::sqrt(t) * rng.normal();
}

}  // namespace qvo
