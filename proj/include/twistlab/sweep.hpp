// sweep.hpp -- experiment orchestration: trace-function family parsing,
// coefficient-table caching, parameter sweeps with bound comparison and a
// log-log slope fit, square-root-cancellation histograms, and the
// identity battery.  All CSV output is deterministic: fixed %.17g floats,
// rows in grid order, wall-time isolated in the trailing column group.
#pragma once

#include "twistlab/config.hpp"
#include "twistlab/hecke.hpp"
#include "twistlab/trace.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace twistlab {

// "kl3", "dirichlet:5", "addchar:2", "const", "delta0", "zero"
TraceFunction make_family(const std::string& spec, u64 q);

// Coefficient table through the cache directory (dir empty = always build).
// With allow_build cleared, a cache miss is an error instead of a build.
GL2CoefficientTable cached_eigenform(int weight, u64 N, const std::string& cache_dir,
                                     bool allow_build = true);
// Kloosterman trace table through the cache directory.
TraceFunction cached_kloosterman(int d, u64 p, const std::string& cache_dir,
                                 bool allow_build = true);

struct SweepRow {
    double x = 0;
    u64 q0 = 0, q1 = 0;
    double z = 1;
    std::string k0, k1;
    cplx sum;
    double abs_sum = 0;
    double bound = 0;
    double ratio = 0;       // |S| / bound
    double abs_over_x = 0;  // |S| / X
    u64 seed = 0;
    u64 skips = 0;
    std::string status = "ok"; // ok | constraint-violated
    double walltime_ms = 0;    // excluded from determinism comparisons
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double slope = 0;    // least-squares slope of log|S| against log X
    bool slope_valid = false;
};

SweepResult run_sweep(const ExperimentConfig& cfg);
void write_sweep_csv(std::ostream& os, const SweepResult& result);

struct HistogramRow {
    std::string kind; // corr | zz | zz-resonant | summary-p50/p90/p99/max/mean
    u64 q0 = 0;
    u64 index = 0;
    double value = 0;      // |sum| for draws, percentile value for summaries
    double normalized = 0; // value / sqrt(q0) (zz) or value / q0 (resonant)
    bool resonant = false;
    u64 skips = 0;
};

struct HistogramResult {
    std::vector<HistogramRow> rows;
};

HistogramResult run_sqrtcancel_histogram(const ExperimentConfig& cfg);
void write_histogram_csv(std::ostream& os, const HistogramResult& result);

struct IdentityRow {
    std::string name;
    double measured = 0;
    double threshold = 0;
    bool pass = false;
};

std::vector<IdentityRow> run_identity_suite(const ExperimentConfig& cfg);
void write_identity_csv(std::ostream& os, const std::vector<IdentityRow>& rows);

} // namespace twistlab
