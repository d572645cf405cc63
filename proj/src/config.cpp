#include "twistlab/config.hpp"

#include "twistlab/residue.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace twistlab {

namespace {

u64 parse_u64(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        u64 out = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        fail(ErrorCode::ConfigError, "config: bad integer for " + key + ": '" + v + "'");
    }
}

double parse_f64(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        fail(ErrorCode::ConfigError, "config: bad number for " + key + ": '" + v + "'");
    }
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

u64 next_prime_at_least(u64 n) {
    if (n <= 2) return 2;
    if (n % 2 == 0) ++n;
    while (!is_prime(n)) n += 2;
    return n;
}

} // namespace

void apply_config_line(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "experiment") cfg.experiment = value;
    else if (key == "q0") cfg.q0 = parse_u64(value, key);
    else if (key == "q1") cfg.q1 = parse_u64(value, key);
    else if (key == "target-q") cfg.target_q = parse_u64(value, key);
    else if (key == "split-rule") cfg.split_rule = value;
    else if (key == "k0") cfg.k0 = value;
    else if (key == "k1") cfg.k1 = value;
    else if (key == "weight") cfg.weight = int(parse_u64(value, key));
    else if (key == "window-z") cfg.window_z = parse_f64(value, key);
    else if (key == "x-start") cfg.x_start = parse_f64(value, key);
    else if (key == "x-ratio") cfg.x_ratio = parse_f64(value, key);
    else if (key == "x-count") cfg.x_count = parse_u64(value, key);
    else if (key == "seed") cfg.seed = parse_u64(value, key);
    else if (key == "threads") cfg.threads = unsigned(parse_u64(value, key));
    else if (key == "output") cfg.output = value;
    else if (key == "cache-dir") cfg.cache_dir = value;
    else if (key == "no-build") cfg.no_build = (value == "1" || value == "true");
    else if (key == "residue-a") cfg.residue_a = parse_u64(value, key);
    else if (key == "draws") cfg.draws = parse_u64(value, key);
    else if (key == "zz-draws") cfg.zz_draws = parse_u64(value, key);
    else if (key == "resonant-draws") cfg.resonant_draws = parse_u64(value, key);
    else if (key == "q0-list") {
        cfg.q0_list.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ','))
            cfg.q0_list.push_back(parse_u64(trim(item), key));
    } else {
        fail(ErrorCode::ConfigError, "config: unknown key '" + key + "'");
    }
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ConfigError, "config: cannot open " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::ConfigError,
                 "config: line " + std::to_string(lineno) + " is not key=value");
        apply_config_line(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

void finalize_modulus_plan(ExperimentConfig& cfg) {
    if (cfg.q0 == 0 && cfg.target_q != 0) {
        double expo;
        if (cfg.split_rule == "2/3") expo = 2.0 / 3.0;
        else if (cfg.split_rule == "4/5") expo = 4.0 / 5.0;
        else
            fail(ErrorCode::ConfigError, "config: split-rule must be 2/3 or 4/5");
        cfg.q0 = next_prime_at_least(u64(std::llround(std::pow(double(cfg.target_q), expo))));
        cfg.q1 = next_prime_at_least(u64(std::max<i64>(
            2, std::llround(double(cfg.target_q) / double(cfg.q0)))));
        if (cfg.q1 == cfg.q0) cfg.q1 = next_prime_at_least(cfg.q0 + 1);
    }
    if (cfg.experiment == "sweep-thm1" || cfg.experiment == "sweep-thm2" ||
        cfg.experiment == "sweep-ap") {
        if (cfg.q0 == 0 || cfg.q1 == 0)
            fail(ErrorCode::ConfigError, "config: modulus plan incomplete (q0/q1 or target-q)");
        if (cfg.q0 == cfg.q1 || !is_prime(cfg.q0) || !is_prime(cfg.q1))
            fail(ErrorCode::ConfigError, "config: q0, q1 must be distinct primes");
        if (cfg.x_count > 1 && cfg.x_ratio <= 1.0)
            fail(ErrorCode::ConfigError, "config: x-ratio must exceed 1");
    }
}

} // namespace twistlab
