#ifndef QVO_CONFIG_HPP
#define QVO_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qvo/jump_models.hpp"
#include "qvo/partition.hpp"
#include "qvo/path_engine.hpp"
#include "qvo/pricing.hpp"

namespace qvo {

enum class ExperimentKind { price, order_test, reverse_mg, nested, counterexample, oracle };

const char* experiment_name(ExperimentKind k);

enum class OrderRelation { rv_icx_qv, qv_cx_pqv };

enum class CounterexampleKind { stopped_bm, hazard };

// Parsed from line-oriented `section.key = value` text. Field names mirror
// the config keys; see parse_config for the full key list and defaults.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::price;

    ModelSpec model;
    bool has_model = false;

    double T = 1.0;
    std::size_t n = 1;
    PartitionScheme scheme = PartitionScheme::uniform;
    std::vector<double> explicit_points;
    std::size_t nesting_steps = 3;

    std::vector<PayoffKind> payoff_kinds;
    StrikeMode strike_mode = StrikeMode::fixed;
    std::vector<double> payoff_strikes;
    bool annualize = true;

    std::vector<Basis> bases{Basis::rv, Basis::qv};

    std::size_t paths = 100000;
    SimConfig sim;

    std::size_t strike_count = 21;
    double strike_q_lo = 0.01;
    double strike_q_hi = 0.999;

    double alpha = 0.05;
    bool bonferroni = false;
    bool equal_means_check = true;
    std::vector<OrderRelation> relations{OrderRelation::rv_icx_qv};

    double rate = 0.0;

    CounterexampleKind counterexample = CounterexampleKind::hazard;
    double counterexample_step = 1.0 / 1024.0;
    // Test hook: asserts the hazard counterexample in the wrong direction so
    // the exit status path can be exercised.
    bool flip_assertion = false;

    std::size_t oracle_n = 2;
    std::vector<WalkStep> oracle_steps;  // empty selects +/-1 equiprobable

    std::string output_dir = "out";
    unsigned threads = 0;  // 0 = hardware concurrency

    Partition partition() const;
    NestedSequence nested() const;
};

// Parses `section.key = value` lines ('#' starts a comment). Unknown keys,
// type mismatches and failed sub-spec validation raise std::invalid_argument
// naming the line and key.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig parse_config_file(const std::string& path);

}  // namespace qvo

#endif
