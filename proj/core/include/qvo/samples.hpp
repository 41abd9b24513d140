#ifndef QVO_SAMPLES_HPP
#define QVO_SAMPLES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qvo/partition.hpp"
#include "qvo/path_engine.hpp"

namespace qvo {

enum class Basis { rv, qv, pqv };

const char* basis_name(Basis b);

// Per path index: RV over the partition, [X,X]_T and <X,X>_T, all three
// evaluated on the same PathSample. The coupling is structural: entry i of
// each vector came from one simulated path.
struct PairedSamples {
    std::vector<double> rv, qv, pqv;
    double T = 0.0;
    std::string model_id, partition_id;
    std::uint64_t base_seed = 0;
    std::uint64_t label_hash = 0;
    // Sum over intervals of the squared expected increment (the analytic
    // mean gap E[RV] - E[QV]); NaN when the drift path is random.
    double drift_rv_gap = 0.0;
};

PairedSamples collect_paired_samples(const ModelSpec& model, const Partition& partition,
                                     const SimConfig& cfg, std::size_t paths,
                                     std::string_view label, unsigned threads);

std::span<const double> basis_samples(const PairedSamples& s, Basis b);

// Closed-form sum of squared drift increments for deterministic drift paths
// (levy and sato kinds); NaN for clocked models.
double deterministic_drift_rv(const ModelSpec& model, const Partition& partition);

}  // namespace qvo

#endif
