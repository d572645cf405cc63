// config.hpp -- experiment configuration: a flat UTF-8 key=value file,
// one pair per line, '#' comments.  Unknown keys are an error.
#pragma once

#include "twistlab/common.hpp"

#include <string>
#include <vector>

namespace twistlab {

struct ExperimentConfig {
    // experiment kind: sweep-thm1 | sweep-thm2 | sweep-ap |
    // sqrtcancel-histogram | identity-suite
    std::string experiment = "sweep-thm1";

    // modulus plan: either explicit q0/q1, or target-q plus a split rule
    // ("2/3" or "4/5") that picks q0 near target^rule
    u64 q0 = 0, q1 = 0;
    u64 target_q = 0;
    std::string split_rule;

    // trace-function families: kl<d> | dirichlet:<j> | addchar:<a> |
    // const | delta0 | zero
    std::string k0 = "kl3";
    std::string k1 = "const";

    int weight = 12;       // coefficient field: eigenform weight
    double window_z = 1.0; // roughness of V

    double x_start = 1e4; // geometric X grid
    double x_ratio = 10.0;
    u64 x_count = 3;

    u64 seed = 1;
    unsigned threads = 1;
    std::string output;    // CSV path ("" = stdout)
    std::string cache_dir; // "" = no caching
    bool no_build = false; // tables must come from the cache

    u64 residue_a = 1; // sweep-ap class

    std::vector<u64> q0_list{101, 151, 199}; // histogram moduli
    u64 draws = 500;                         // correlation draws per q0
    u64 zz_draws = 100;                      // off-resonance Z-correlation draws
    u64 resonant_draws = 30;                 // diagonal draws
};

ExperimentConfig parse_config_file(const std::string& path);
// parse a single "key=value" assignment into cfg (exposed for CLI overrides)
void apply_config_line(ExperimentConfig& cfg, const std::string& key, const std::string& value);
// resolve target-q/split-rule into concrete primes; validates invariants
void finalize_modulus_plan(ExperimentConfig& cfg);

} // namespace twistlab
