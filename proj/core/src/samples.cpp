#include "qvo/samples.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qvo/parallel.hpp"

namespace qvo {

const char* basis_name(Basis b) {
    switch (b) {
        case Basis::rv: return "rv";
        case Basis::qv: return "qv";
        case Basis::pqv: return "pqv";
    }
    return "?";
}

double deterministic_drift_rv(const ModelSpec& model, const Partition& partition) {
    switch (model.kind) {
        case ModelKind::levy: {
            const double b = effective_drift(model);
            double s = 0.0;
            for (std::size_t k = 0; k < partition.intervals(); ++k) {
                const double d = b * partition.dt(k);
                s += d * d;
            }
            return s;
        }
        case ModelKind::sato: {
            const double b = model.triplet.drift;
            const double g = model.sato_gamma;
            double s = 0.0;
            for (std::size_t k = 0; k < partition.intervals(); ++k) {
                const double d =
                    b * (std::pow(partition[k + 1], g) - std::pow(partition[k], g));
                s += d * d;
            }
            return s;
        }
        case ModelKind::time_changed:
            return std::numeric_limits<double>::quiet_NaN();
    }
    throw std::logic_error("deterministic_drift_rv: unknown model kind");
}

PairedSamples collect_paired_samples(const ModelSpec& model, const Partition& partition,
                                     const SimConfig& cfg, std::size_t paths,
                                     std::string_view label, unsigned threads) {
    if (paths == 0) throw std::invalid_argument("collect_paired_samples: paths == 0");
    const PreparedModel prep = prepare_model(model, cfg);
    PairedSamples out;
    out.rv.resize(paths);
    out.qv.resize(paths);
    out.pqv.resize(paths);
    out.T = partition.horizon();
    out.model_id = model.id;
    out.partition_id = "n" + std::to_string(partition.intervals());
    out.base_seed = cfg.base_seed;
    out.label_hash = hash_label(label);
    out.drift_rv_gap = deterministic_drift_rv(model, partition);

    const std::uint64_t lh = out.label_hash;
    std::vector<PathSample> scratch(std::max(1u, threads));
    parallel_for(paths, threads, cfg.paths_per_batch, [&](std::size_t i, unsigned worker) {
        PathSample& path = scratch[worker];
        simulate_path_into(prep, partition, cfg, lh, i, path);
        out.rv[i] = rv(path);
        out.qv[i] = qv(path);
        out.pqv[i] = path.pqv_T;
    });
    return out;
}

std::span<const double> basis_samples(const PairedSamples& s, Basis b) {
    switch (b) {
        case Basis::rv: return s.rv;
        case Basis::qv: return s.qv;
        case Basis::pqv: return s.pqv;
    }
    throw std::logic_error("basis_samples: unknown basis");
}

}  // namespace qvo
