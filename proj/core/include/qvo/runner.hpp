#ifndef QVO_RUNNER_HPP
#define QVO_RUNNER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qvo/config.hpp"
#include "qvo/rng.hpp"

namespace qvo {

// Stream key for one path of one experiment. Injective in the path index by
// construction (the index is part of the key); derivation is stable across
// releases for a fixed seed schema version.
StreamKey derive_seed(std::uint64_t base_seed, std::string_view experiment_label,
                      std::uint64_t path_index);

// Collision check of the derived per-path key material over [0, count).
// Throws on a collision.
void check_seed_injectivity(std::uint64_t base_seed, std::string_view experiment_label,
                            std::size_t count);

struct RunResult {
    int exit_status = 0;
    std::vector<std::string> failures;  // machine-readable, one token per failed check
    std::vector<std::string> files;     // emitted report files
    std::string summary;                // plain nested key-value text
};

// Runs the configured experiment, writes CSV reports plus summary.txt into
// cfg.output_dir, and returns exit status 0 iff every asserted check passed.
RunResult run_experiment(const ExperimentConfig& cfg);

}  // namespace qvo

#endif
