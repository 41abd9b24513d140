#ifndef QVO_PATH_ENGINE_HPP
#define QVO_PATH_ENGINE_HPP

#include <cstdint>
#include <vector>

#include "qvo/jump_models.hpp"
#include "qvo/partition.hpp"
#include "qvo/rng.hpp"
#include "qvo/variance.hpp"

namespace qvo {

struct SimConfig {
    double epsilon = 1e-3;  // small-jump truncation, in jump-size units
    double h_clock = 0.0;   // internal grid step; 0 selects T/2048
    std::size_t paths_per_batch = 65536;
    std::uint64_t base_seed = 0;
};

double clock_step(const SimConfig& cfg, double T);

struct SeedTag {
    std::uint64_t base_seed = 0;
    std::uint64_t label_hash = 0;
    std::uint64_t path_index = 0;
};

// One simulated path restricted to a partition. The increment vector is the
// primary representation: realized variance is computed from it, and
// reflection negates increments exactly, so RV invariance under reflection
// holds with zero floating-point tolerance.
//
// The jump ledger records every simulated jump with |size| > epsilon; jumps
// below the threshold are replaced by an independent Gaussian with the same
// variance, folded into qv_continuous. Everything needed to evaluate RV,
// QV and PQV of the *simulated* process exactly is therefore on board.
struct PathSample {
    std::vector<double> values;      // X at partition points, values[0] = 0
    std::vector<double> increments;  // values[k+1] - values[k], exact by construction
    std::vector<double> drift_path;  // B at partition points
    std::vector<JumpEvent> jumps;
    double clock_T = 0.0;         // terminal clock value (T unless time-changed)
    double qv_continuous = 0.0;   // (sigma^2 + sigma_eps^2) * clock_T, or Sato analogue
    double pqv_T = 0.0;           // predictable quadratic variation at T
    SeedTag seed_tag;
};

// [X,X]_T of the simulated path: qv_continuous plus the squared ledger.
double qv(const PathSample& path);

// <X,X>_T. Recomputed from the model and cross-checked against the value the
// engine stored; throws on a model/path mismatch.
double pqv(const PathSample& path, const ModelSpec& model);

// RV over the path's own partition, from increments.
double rv(const PathSample& path);

// Exact rejection sampler for |J| conditioned on |J| > eps, plus the
// truncated intensity and the variance of what was cut off.
class TruncatedJumpSampler {
  public:
    TruncatedJumpSampler() = default;
    TruncatedJumpSampler(const JumpSpec& jumps, double eps);

    bool active() const { return lambda_eps_ > 0.0; }
    double lambda_eps() const { return lambda_eps_; }  // two-sided intensity
    double sigma_eps2() const { return sigma_eps2_; }  // Gaussianized remainder variance rate
    double sample_abs(RandomStream& rng) const;

  private:
    JumpSpec spec_;
    double eps_ = 0.0;
    double lambda_eps_ = 0.0;
    double sigma_eps2_ = 0.0;
    // two-piece envelope constants (family-dependent meaning)
    double x0_ = 0.0, w_head_ = 0.0, w_tail_ = 0.0, rate_ = 0.0, scale_ = 0.0, tail_ref_ = 0.0;
};

// Triplet with validated parameters, effective drift resolved, and the
// truncated jump sampler prepared. Immutable after construction; shared
// freely across worker threads.
struct PreparedModel {
    ModelSpec spec;
    double b_eff = 0.0;
    double sigma_tot2 = 0.0;  // gaussian_var + sigma_eps^2
    double pqv_rate_v = 0.0;  // of the original triplet == of the simulated process
    TruncatedJumpSampler jumps;
};

PreparedModel prepare_model(const ModelSpec& spec, const SimConfig& cfg);

// Piecewise-linear clock path on a uniform internal grid.
struct ClockPath {
    double step = 0.0;
    std::vector<double> values;  // tau at grid nodes, values[0] = 0
    double clock_T = 0.0;
    bool identity = false;

    double at(double t) const;  // linear interpolation; exact for identity
};

ClockPath simulate_clock(const ClockModel& clock, double T, const SimConfig& cfg,
                         std::uint64_t label_hash, std::uint64_t path_index);

void simulate_levy_path_into(const PreparedModel& prep, const Partition& partition,
                             const SimConfig& cfg, std::uint64_t label_hash,
                             std::uint64_t path_index, PathSample& out);
PathSample simulate_levy_path(const PreparedModel& prep, const Partition& partition,
                              const SimConfig& cfg, std::uint64_t label_hash,
                              std::uint64_t path_index);
PathSample simulate_levy_path(const LevyTriplet& triplet, const Partition& partition,
                              const SimConfig& cfg, std::uint64_t label_hash,
                              std::uint64_t path_index);

void simulate_time_changed_path_into(const PreparedModel& prep, const Partition& partition,
                                     const SimConfig& cfg, std::uint64_t label_hash,
                                     std::uint64_t path_index, PathSample& out);
PathSample simulate_time_changed_path(const PreparedModel& prep, const Partition& partition,
                                      const SimConfig& cfg, std::uint64_t label_hash,
                                      std::uint64_t path_index);

void simulate_sato_path_into(const PreparedModel& prep, const Partition& partition,
                             const SimConfig& cfg, std::uint64_t label_hash,
                             std::uint64_t path_index, PathSample& out);
PathSample simulate_sato_path(const SatoSpec& sato, const Partition& partition,
                              const SimConfig& cfg, std::uint64_t label_hash,
                              std::uint64_t path_index);

// Dispatch on the model kind.
void simulate_path_into(const PreparedModel& prep, const Partition& partition,
                        const SimConfig& cfg, std::uint64_t label_hash, std::uint64_t path_index,
                        PathSample& out);

// Midpoint slice sum of t^{2 gamma} dt over the engine's slice layout for
// the given partition: each interval is divided into ceil(dt / h) slices.
double sato_slice_weight(const Partition& partition, double h, double gamma);

// Deterministic PQV of the simulated Sato approximation: the Gaussian
// characteristic plus the slice sum of the scaled jump second moment.
double sato_pqv(const SatoSpec& sato, const Partition& partition, double slice_step);

// Path on a sub-partition of the path's own partition: values are copied
// bit-for-bit at the matching indices, the ledger and clock are shared.
PathSample restrict_path(const PathSample& path, const Partition& fine,
                         const Partition& coarse);

// Reflection about the value at partition point `pivot_index`: increments
// after the pivot are negated exactly, ledger jumps after the pivot time flip
// sign. rv() of the result is bit-identical to rv() of the input.
PathSample reflect_path(const PathSample& path, const Partition& partition,
                        std::size_t pivot_index);

// Exact-marginal increment samplers via the subordinated-Brownian
// representation (gamma / inverse-Gaussian time). Used as an independent
// distributional reference for the compound-Poisson route, never for the
// jump ledger.
double vg_increment_exact(const JumpSpec& jumps, double dt, RandomStream& rng);
double nig_increment_exact(const JumpSpec& jumps, double dt, RandomStream& rng);

}  // namespace qvo

#endif
