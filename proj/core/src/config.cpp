#include "qvo/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qvo {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& key, const std::string& why) {
    throw std::invalid_argument("config line " + std::to_string(line) + ", key '" + key +
                                "': " + why);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(std::size_t line, const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) fail(line, key, "not a number: '" + v + "'");
        return x;
    } catch (const std::invalid_argument&) {
        fail(line, key, "not a number: '" + v + "'");
    } catch (const std::out_of_range&) {
        fail(line, key, "number out of range: '" + v + "'");
    }
}

std::size_t parse_size(std::size_t line, const std::string& key, const std::string& v) {
    const double x = parse_double(line, key, v);
    if (x < 0 || x != double(std::uint64_t(x))) fail(line, key, "not a nonnegative integer");
    return std::size_t(x);
}

bool parse_bool(std::size_t line, const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(line, key, "not a boolean: '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

PayoffKind parse_payoff(std::size_t line, const std::string& key, const std::string& v) {
    if (v == "swap") return PayoffKind::swap;
    if (v == "call") return PayoffKind::call;
    if (v == "put") return PayoffKind::put;
    if (v == "straddle") return PayoffKind::straddle;
    if (v == "volswap") return PayoffKind::volswap;
    fail(line, key, "unknown payoff kind '" + v + "'");
}

Basis parse_basis(std::size_t line, const std::string& key, const std::string& v) {
    if (v == "rv") return Basis::rv;
    if (v == "qv") return Basis::qv;
    if (v == "pqv") return Basis::pqv;
    fail(line, key, "unknown basis '" + v + "'");
}

}  // namespace

const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::price: return "price";
        case ExperimentKind::order_test: return "order-test";
        case ExperimentKind::reverse_mg: return "reverse-mg";
        case ExperimentKind::nested: return "nested";
        case ExperimentKind::counterexample: return "counterexample";
        case ExperimentKind::oracle: return "oracle";
    }
    return "?";
}

Partition ExperimentConfig::partition() const {
    return make_partition(T, n, scheme, explicit_points);
}

NestedSequence ExperimentConfig::nested() const { return nested_single_insertions(T, nesting_steps); }

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    bool saw_kind = false;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        raw = trim(raw);
        if (raw.empty()) continue;
        const auto eq = raw.find('=');
        if (eq == std::string::npos) fail(lineno, raw, "expected 'key = value'");
        const std::string key = trim(raw.substr(0, eq));
        const std::string val = trim(raw.substr(eq + 1));
        if (key.empty()) fail(lineno, raw, "empty key");
        if (val.empty()) fail(lineno, key, "empty value");

        if (key == "experiment.kind") {
            saw_kind = true;
            if (val == "price") cfg.kind = ExperimentKind::price;
            else if (val == "order-test") cfg.kind = ExperimentKind::order_test;
            else if (val == "reverse-mg") cfg.kind = ExperimentKind::reverse_mg;
            else if (val == "nested") cfg.kind = ExperimentKind::nested;
            else if (val == "counterexample") cfg.kind = ExperimentKind::counterexample;
            else if (val == "oracle") cfg.kind = ExperimentKind::oracle;
            else fail(lineno, key, "unknown experiment kind '" + val + "'");
        } else if (key == "model.id") {
            cfg.model.id = val;
            cfg.has_model = true;
        } else if (key == "model.kind") {
            cfg.has_model = true;
            if (val == "levy") cfg.model.kind = ModelKind::levy;
            else if (val == "time_changed") cfg.model.kind = ModelKind::time_changed;
            else if (val == "sato") cfg.model.kind = ModelKind::sato;
            else fail(lineno, key, "unknown model kind '" + val + "'");
        } else if (key == "model.b") {
            cfg.model.triplet.drift = parse_double(lineno, key, val);
            cfg.has_model = true;
        } else if (key == "model.sigma2") {
            cfg.model.triplet.gaussian_var = parse_double(lineno, key, val);
            cfg.has_model = true;
        } else if (key == "model.drift_mode") {
            cfg.has_model = true;
            if (val == "explicit") cfg.model.drift_mode = DriftMode::explicit_drift;
            else if (val == "exp_martingale") cfg.model.drift_mode = DriftMode::exp_martingale;
            else fail(lineno, key, "unknown drift mode '" + val + "'");
        } else if (key == "model.allow_zero") {
            cfg.model.allow_zero = parse_bool(lineno, key, val);
        } else if (key == "model.jumps.family") {
            cfg.has_model = true;
            auto& j = cfg.model.triplet.jumps;
            if (val == "none") j.family = JumpFamily::none;
            else if (val == "gaussian") j.family = JumpFamily::gaussian;
            else if (val == "double_exponential") j.family = JumpFamily::double_exponential;
            else if (val == "variance_gamma_sym") j.family = JumpFamily::variance_gamma_sym;
            else if (val == "nig_sym") j.family = JumpFamily::nig_sym;
            else if (val == "cgmy_sym") j.family = JumpFamily::cgmy_sym;
            else fail(lineno, key, "unknown family '" + val + "' (only symmetric families exist)");
        } else if (key == "model.jumps.lambda") {
            cfg.model.triplet.jumps.lambda = parse_double(lineno, key, val);
        } else if (key == "model.jumps.delta") {
            cfg.model.triplet.jumps.delta = parse_double(lineno, key, val);
        } else if (key == "model.jumps.eta") {
            cfg.model.triplet.jumps.eta = parse_double(lineno, key, val);
        } else if (key == "model.jumps.sigma_vg") {
            cfg.model.triplet.jumps.sigma_vg = parse_double(lineno, key, val);
        } else if (key == "model.jumps.kappa_vg") {
            cfg.model.triplet.jumps.kappa_vg = parse_double(lineno, key, val);
        } else if (key == "model.jumps.sigma_nig") {
            cfg.model.triplet.jumps.sigma_nig = parse_double(lineno, key, val);
        } else if (key == "model.jumps.kappa_nig") {
            cfg.model.triplet.jumps.kappa_nig = parse_double(lineno, key, val);
        } else if (key == "model.jumps.c") {
            cfg.model.triplet.jumps.c = parse_double(lineno, key, val);
        } else if (key == "model.jumps.m") {
            cfg.model.triplet.jumps.m = parse_double(lineno, key, val);
        } else if (key == "model.jumps.y") {
            cfg.model.triplet.jumps.y = parse_double(lineno, key, val);
        } else if (key == "model.clock.kind") {
            if (val == "identity") cfg.model.clock.kind = ClockKind::identity;
            else if (val == "integrated_cir") cfg.model.clock.kind = ClockKind::integrated_cir;
            else fail(lineno, key, "unknown clock kind '" + val + "'");
        } else if (key == "model.clock.kappa") {
            cfg.model.clock.cir_kappa = parse_double(lineno, key, val);
        } else if (key == "model.clock.theta_mean") {
            cfg.model.clock.cir_theta = parse_double(lineno, key, val);
        } else if (key == "model.clock.xi") {
            cfg.model.clock.cir_xi = parse_double(lineno, key, val);
        } else if (key == "model.clock.v0") {
            cfg.model.clock.cir_v0 = parse_double(lineno, key, val);
        } else if (key == "model.sato.gamma") {
            cfg.model.sato_gamma = parse_double(lineno, key, val);
        } else if (key == "partition.T") {
            cfg.T = parse_double(lineno, key, val);
        } else if (key == "partition.n") {
            cfg.n = parse_size(lineno, key, val);
        } else if (key == "partition.scheme") {
            if (val == "uniform") cfg.scheme = PartitionScheme::uniform;
            else if (val == "dyadic_refine") cfg.scheme = PartitionScheme::dyadic_refine;
            else if (val == "explicit") cfg.scheme = PartitionScheme::explicit_points;
            else fail(lineno, key, "unknown scheme '" + val + "'");
        } else if (key == "partition.points") {
            cfg.explicit_points.clear();
            for (const auto& item : split_list(val))
                cfg.explicit_points.push_back(parse_double(lineno, key, item));
        } else if (key == "partition.nesting_steps") {
            cfg.nesting_steps = parse_size(lineno, key, val);
        } else if (key == "payoff.kinds") {
            cfg.payoff_kinds.clear();
            for (const auto& item : split_list(val))
                cfg.payoff_kinds.push_back(parse_payoff(lineno, key, item));
        } else if (key == "payoff.strike_mode") {
            if (val == "fixed") cfg.strike_mode = StrikeMode::fixed;
            else if (val == "relative") cfg.strike_mode = StrikeMode::relative;
            else fail(lineno, key, "unknown strike mode '" + val + "'");
        } else if (key == "payoff.strikes") {
            cfg.payoff_strikes.clear();
            for (const auto& item : split_list(val))
                cfg.payoff_strikes.push_back(parse_double(lineno, key, item));
        } else if (key == "payoff.annualize") {
            cfg.annualize = parse_bool(lineno, key, val);
        } else if (key == "basis.list") {
            cfg.bases.clear();
            for (const auto& item : split_list(val))
                cfg.bases.push_back(parse_basis(lineno, key, item));
        } else if (key == "mc.paths") {
            cfg.paths = parse_size(lineno, key, val);
        } else if (key == "mc.batch") {
            cfg.sim.paths_per_batch = parse_size(lineno, key, val);
        } else if (key == "sim.epsilon") {
            cfg.sim.epsilon = parse_double(lineno, key, val);
        } else if (key == "sim.h_clock") {
            cfg.sim.h_clock = parse_double(lineno, key, val);
        } else if (key == "strikes.count") {
            cfg.strike_count = parse_size(lineno, key, val);
        } else if (key == "strikes.q_lo") {
            cfg.strike_q_lo = parse_double(lineno, key, val);
        } else if (key == "strikes.q_hi") {
            cfg.strike_q_hi = parse_double(lineno, key, val);
        } else if (key == "test.alpha") {
            cfg.alpha = parse_double(lineno, key, val);
        } else if (key == "test.bonferroni") {
            cfg.bonferroni = parse_bool(lineno, key, val);
        } else if (key == "test.equal_means") {
            cfg.equal_means_check = parse_bool(lineno, key, val);
        } else if (key == "order.relations") {
            cfg.relations.clear();
            for (const auto& item : split_list(val)) {
                if (item == "rv_icx_qv") cfg.relations.push_back(OrderRelation::rv_icx_qv);
                else if (item == "qv_cx_pqv") cfg.relations.push_back(OrderRelation::qv_cx_pqv);
                else fail(lineno, key, "unknown relation '" + item + "'");
            }
        } else if (key == "pricing.r") {
            cfg.rate = parse_double(lineno, key, val);
        } else if (key == "counterexample.kind") {
            if (val == "stopped_bm") cfg.counterexample = CounterexampleKind::stopped_bm;
            else if (val == "hazard") cfg.counterexample = CounterexampleKind::hazard;
            else fail(lineno, key, "unknown counterexample '" + val + "'");
        } else if (key == "counterexample.step") {
            cfg.counterexample_step = parse_double(lineno, key, val);
        } else if (key == "counterexample.flip_assertion") {
            cfg.flip_assertion = parse_bool(lineno, key, val);
        } else if (key == "oracle.n") {
            cfg.oracle_n = parse_size(lineno, key, val);
        } else if (key == "oracle.steps") {
            // value:prob pairs, e.g. "2:0.333333,-1:0.666667"
            cfg.oracle_steps.clear();
            for (const auto& item : split_list(val)) {
                const auto colon = item.find(':');
                if (colon == std::string::npos) fail(lineno, key, "expected value:prob pairs");
                WalkStep s;
                s.value = parse_double(lineno, key, trim(item.substr(0, colon)));
                s.prob = parse_double(lineno, key, trim(item.substr(colon + 1)));
                cfg.oracle_steps.push_back(s);
            }
        } else if (key == "output.dir") {
            cfg.output_dir = val;
        } else if (key == "seed.base") {
            cfg.sim.base_seed = std::uint64_t(parse_size(lineno, key, val));
        } else if (key == "runner.threads") {
            cfg.threads = unsigned(parse_size(lineno, key, val));
        } else {
            fail(lineno, key, "unknown key");
        }
    }
    if (!saw_kind) throw std::invalid_argument("config: missing required key 'experiment.kind'");

    const bool needs_model = cfg.kind == ExperimentKind::price ||
                             cfg.kind == ExperimentKind::order_test ||
                             cfg.kind == ExperimentKind::reverse_mg ||
                             cfg.kind == ExperimentKind::nested;
    if (needs_model) {
        if (!cfg.has_model) throw std::invalid_argument("config: missing 'model.*' section");
        validate_model(cfg.model);
    }
    if (cfg.kind == ExperimentKind::price && cfg.payoff_kinds.empty())
        cfg.payoff_kinds = {PayoffKind::swap, PayoffKind::call, PayoffKind::put};
    if (cfg.kind == ExperimentKind::price && cfg.payoff_strikes.empty())
        cfg.payoff_strikes = {cfg.strike_mode == StrikeMode::relative ? 1.0 : 0.04};
    if (cfg.paths == 0) throw std::invalid_argument("config: mc.paths must be >= 1");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace qvo
