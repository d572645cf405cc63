#include "twistlab/sweep.hpp"

#include "twistlab/cache.hpp"
#include "twistlab/correlation.hpp"
#include "twistlab/rng.hpp"
#include "twistlab/sums.hpp"
#include "twistlab/window.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace twistlab {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double percentile(std::vector<double> v, double p) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    double idx = p * double(v.size() - 1);
    std::size_t lo = std::size_t(idx);
    std::size_t hi = std::min(lo + 1, v.size() - 1);
    double frac = idx - double(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

} // namespace

TraceFunction make_family(const std::string& spec, u64 q) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    u64 arg = 0;
    if (colon != std::string::npos) {
        try {
            arg = std::stoull(spec.substr(colon + 1));
        } catch (const std::exception&) {
            fail(ErrorCode::ConfigError, "bad family argument in '" + spec + "'");
        }
    }
    if (head == "const") return constant_one(q);
    if (head == "zero") {
        std::vector<cplx> v(q, cplx(0, 0));
        return TraceFunction(q, std::move(v), "0 mod " + std::to_string(q), 0.0);
    }
    if (head == "delta0") return point_mass(0, q);
    if (head == "addchar") return additive_char(arg, q);
    if (head == "dirichlet") return dirichlet_char(q, arg);
    if (head.size() > 2 && head.substr(0, 2) == "kl") {
        int d = 0;
        try {
            d = std::stoi(head.substr(2));
        } catch (const std::exception&) {
            fail(ErrorCode::ConfigError, "bad family '" + spec + "'");
        }
        return hyper_kloosterman(d, q);
    }
    fail(ErrorCode::ConfigError, "unknown trace-function family '" + spec + "'");
}

GL2CoefficientTable cached_eigenform(int weight, u64 N, const std::string& cache_dir,
                                     bool allow_build) {
    std::string path;
    if (!cache_dir.empty()) {
        path = cache_dir + "/eigenform_k" + std::to_string(weight) + "_N" + std::to_string(N) +
               ".twl";
        if (cache_exists(path)) {
            auto ints = cache_load_integers(path);
            if (ints.size() == N) {
                GL2CoefficientTable T;
                T.weight = weight;
                T.length = N;
                T.a.resize(N + 1);
                for (u64 n = 1; n <= N; ++n) T.a[n] = std::move(ints[n - 1]);
                T.lambda.assign(N + 1, 0.0);
                const double half = (weight - 1) / 2.0;
                for (u64 n = 1; n <= N; ++n)
                    T.lambda[n] = T.a[n].to_double() / std::pow(double(n), half);
                return T;
            }
        }
    }
    if (!allow_build)
        fail(ErrorCode::CacheMiss, "coefficient table not cached: " + path);
    GL2CoefficientTable T = eigenform_coefficients(weight, N);
    if (!path.empty()) {
        std::vector<BigInt> ints(T.a.begin() + 1, T.a.end());
        cache_store_integers(path, ints);
    }
    return T;
}

TraceFunction cached_kloosterman(int d, u64 p, const std::string& cache_dir, bool allow_build) {
    std::string path;
    if (!cache_dir.empty()) {
        path = cache_dir + "/kl_d" + std::to_string(d) + "_p" + std::to_string(p) + ".twl";
        if (cache_exists(path)) {
            auto vals = cache_load_complex(path);
            if (vals.size() == p)
                return TraceFunction(p, std::move(vals),
                                     "Kl_" + std::to_string(d) + " mod " + std::to_string(p),
                                     double(d));
        }
    }
    if (!allow_build)
        fail(ErrorCode::CacheMiss, "trace table not cached: " + path);
    TraceFunction K = hyper_kloosterman(d, p);
    if (!path.empty()) cache_store_complex(path, K.values());
    return K;
}

SweepResult run_sweep(const ExperimentConfig& cfg_in) {
    ExperimentConfig cfg = cfg_in;
    finalize_modulus_plan(cfg);
    set_thread_count(cfg.threads);

    const bool thm1 = cfg.experiment == "sweep-thm1";
    const bool thm2 = cfg.experiment == "sweep-thm2";
    const bool ap = cfg.experiment == "sweep-ap";
    if (!thm1 && !thm2 && !ap)
        fail(ErrorCode::ConfigError, "run_sweep: experiment must be a sweep kind");

    std::vector<double> grid(cfg.x_count);
    for (u64 i = 0; i < cfg.x_count; ++i)
        grid[i] = cfg.x_start * std::pow(cfg.x_ratio, double(i));

    const u64 q = cfg.q0 * cfg.q1;
    const u64 need = grid.empty() ? 1 : u64(std::ceil(2.0 * grid.back()));
    GL2CoefficientTable f = cached_eigenform(cfg.weight, need, cfg.cache_dir, !cfg.no_build);

    TraceFunction K0 = make_family(cfg.k0, cfg.q0);
    TraceFunction K1 = make_family(cfg.k1, cfg.q1);
    TraceFunction K = crt_product(K0, K1);
    const double khat1 = K1.fourier_sup_norm();
    SmoothWindow V(cfg.window_z);

    GL3CoefficientTable g3;
    if (thm2) g3 = sym_square_coefficients(f, need);

    SweepResult result;
    result.rows.resize(grid.size());

    auto eval_row = [&](std::size_t i) {
        auto t0 = std::chrono::steady_clock::now();
        SweepRow row;
        row.x = grid[i];
        row.q0 = cfg.q0;
        row.q1 = cfg.q1;
        row.z = cfg.window_z;
        row.k0 = cfg.k0;
        row.k1 = cfg.k1;
        row.seed = cfg.seed;
        if (thm1) {
            row.sum = twisted_sum(f.lambda, K, V, row.x);
            row.bound = bound_thm1(row.x, cfg.window_z, double(cfg.q0), double(cfg.q1), khat1);
        } else if (thm2) {
            double constraint = std::pow(cfg.window_z, 4.0) * double(q) * double(q) *
                                std::sqrt(double(cfg.q0));
            if (row.x < constraint) {
                row.status = "constraint-violated";
            } else {
                row.sum = rs_twisted_sum(g3, f, K, V, row.x).value;
                row.bound = bound_thm2(row.x, cfg.window_z, double(cfg.q0), double(cfg.q1));
            }
        } else {
            row.sum = ap_sum(f.lambda, cfg.residue_a, q, V, row.x);
            row.bound = ap_corollary_bound(row.x, double(q)).bound;
        }
        row.abs_sum = std::abs(row.sum);
        row.ratio = row.bound > 0 ? row.abs_sum / row.bound : 0.0;
        row.abs_over_x = row.abs_sum / row.x;
        auto t1 = std::chrono::steady_clock::now();
        row.walltime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        result.rows[i] = std::move(row);
    };

    // worker pool over grid points; rows land in grid order by index
    unsigned workers = std::min<std::size_t>(cfg.threads == 0 ? 1 : cfg.threads, grid.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) eval_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                    eval_row(i);
            });
        for (auto& th : pool) th.join();
    }

    // least-squares slope of log|S| vs log X over the usable rows
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& row : result.rows) {
        if (row.status != "ok" || row.abs_sum <= 0) continue;
        double lx = std::log(row.x), ly = std::log(row.abs_sum);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n >= 2 && sxx * n - sx * sx > 0) {
        result.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        result.slope_valid = true;
    }
    return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    os << "row_kind,x,q0,q1,z,k0,k1,sum_re,sum_im,abs_sum,bound,ratio,abs_sum_over_x,seed,"
          "skips,status,walltime_ms\n";
    for (const auto& r : result.rows) {
        os << "data," << fmt(r.x) << ',' << r.q0 << ',' << r.q1 << ',' << fmt(r.z) << ','
           << r.k0 << ',' << r.k1 << ',' << fmt(r.sum.real()) << ',' << fmt(r.sum.imag())
           << ',' << fmt(r.abs_sum) << ',' << fmt(r.bound) << ',' << fmt(r.ratio) << ','
           << fmt(r.abs_over_x) << ',' << r.seed << ',' << r.skips << ',' << r.status << ','
           << fmt(r.walltime_ms) << '\n';
    }
    if (result.slope_valid)
        os << "slope," << fmt(result.slope) << ",,,,,,,,,,,,,,,\n";
}

HistogramResult run_sqrtcancel_histogram(const ExperimentConfig& cfg) {
    set_thread_count(cfg.threads);
    HistogramResult out;
    for (u64 q0 : cfg.q0_list) {
        if (!is_prime(q0))
            fail(ErrorCode::ConfigError, "histogram: q0 list must contain primes");
        TraceFunction K0 = make_family(cfg.k0, q0);
        TraceFunction K0hat = fourier_transform(K0);
        TraceFunction kl2 = hyper_kloosterman(2, q0);
        Rng rng(cfg.seed ^ (q0 * 0x9E3779B97F4A7C15ULL));

        std::vector<double> corr_values;
        for (u64 i = 0; i < cfg.draws; ++i) {
            CorrelationParams p;
            p.r1 = rng.unit_mod_prime(q0);
            p.r2 = rng.unit_mod_prime(q0);
            p.p1 = rng.unit_mod_prime(q0);
            p.p2 = rng.unit_mod_prime(q0);
            p.q1 = rng.unit_mod_prime(q0);
            p.n_tilde = rng.nonzero_below(q0);
            p.sign = (rng.next() & 1) ? +1 : -1;
            auto [g1, g2] = correlation_matrices(p, q0);
            bool resonant = is_scalar_pair(g1, g2, q0);
            auto val = correlation_sum(K0hat, p, q0);
            double a = std::abs(val.value);
            HistogramRow row{"corr", q0, i, a, a, resonant, val.skipped};
            out.rows.push_back(row);
            if (!resonant) corr_values.push_back(a);
        }

        std::vector<double> zz_values;
        for (u64 i = 0; i < cfg.zz_draws; ++i) {
            u64 alpha = rng.unit_mod_prime(q0), beta = rng.unit_mod_prime(q0),
                gamma = rng.unit_mod_prime(q0);
            u64 alphap = rng.unit_mod_prime(q0), betap = rng.unit_mod_prime(q0),
                gammap = rng.unit_mod_prime(q0);
            u64 delta = rng.unit_mod_prime(q0);
            // resonance needs alpha=alpha', beta gamma = beta' gamma', delta=0;
            // redraw the rare collision so the off-resonance band is clean
            if (alpha == alphap &&
                mul_mod(beta, gamma, q0) == mul_mod(betap, gammap, q0))
                alphap = alphap == q0 - 1 ? 1 : alphap + 1;
            ZTable Z = z_transform(K0, kl2, alpha, beta, gamma);
            ZTable Zp = z_transform(K0, kl2, alphap, betap, gammap);
            double a = std::abs(zz_correlation(Z, Zp, delta));
            out.rows.push_back({"zz", q0, i, a, a / std::sqrt(double(q0)), false, 0});
            zz_values.push_back(a / std::sqrt(double(q0)));
        }

        std::vector<double> res_values;
        for (u64 i = 0; i < cfg.resonant_draws; ++i) {
            u64 alpha = rng.unit_mod_prime(q0), beta = rng.unit_mod_prime(q0),
                gamma = rng.unit_mod_prime(q0);
            ZTable Z = z_transform(K0, kl2, alpha, beta, gamma);
            double a = std::abs(zz_correlation(Z, Z, 0));
            out.rows.push_back({"zz-resonant", q0, i, a, a / double(q0), true, 0});
            res_values.push_back(a / double(q0));
        }

        auto push_summary = [&](const std::string& kind, const std::vector<double>& vals) {
            if (vals.empty()) return;
            double mean = 0;
            for (double v : vals) mean += v;
            mean /= double(vals.size());
            out.rows.push_back({kind + "-p50", q0, 0, percentile(vals, 0.50), 0, false, 0});
            out.rows.push_back({kind + "-p90", q0, 0, percentile(vals, 0.90), 0, false, 0});
            out.rows.push_back({kind + "-p99", q0, 0, percentile(vals, 0.99), 0, false, 0});
            out.rows.push_back(
                {kind + "-max", q0, 0, *std::max_element(vals.begin(), vals.end()), 0, false, 0});
            out.rows.push_back({kind + "-mean", q0, 0, mean, 0, false, 0});
        };
        push_summary("summary-corr", corr_values);
        push_summary("summary-zz", zz_values);
        push_summary("summary-zzres", res_values);
    }
    return out;
}

void write_histogram_csv(std::ostream& os, const HistogramResult& result) {
    os << "kind,q0,index,value,normalized,resonant,skips\n";
    for (const auto& r : result.rows) {
        os << r.kind << ',' << r.q0 << ',' << r.index << ',' << fmt(r.value) << ','
           << fmt(r.normalized) << ',' << (r.resonant ? 1 : 0) << ',' << r.skips << '\n';
    }
}

std::vector<IdentityRow> run_identity_suite(const ExperimentConfig& cfg) {
    set_thread_count(cfg.threads);
    std::vector<IdentityRow> rows;
    auto add = [&](const std::string& name, double measured, double threshold) {
        rows.push_back({name, measured, threshold, measured < threshold});
    };

    {
        FactoredModulus m(13, 7);
        auto err = verify_twisted_multiplicativity(hyper_kloosterman(3, 13),
                                                   dirichlet_char(7, 2), m);
        add("twisted-multiplicativity", err, 1e-9);
    }
    {
        SmoothWindow V(cfg.window_z);
        auto pc = poisson_check(hyper_kloosterman(2, 13), V, 200.0, 13);
        add("poisson", pc.diff, 1e-6);
        auto f = cached_eigenform(12, 2048, cfg.cache_dir);
        auto vc = voronoi_check(f, 1, 3, V, 50.0);
        add("voronoi", vc.diff, 1e-4);
    }
    {
        double worst = 0;
        for (i64 t = -39; t <= 39; ++t) {
            double want = (t % 39 == 0) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(trivial_delta(t, 0, 3, 13).real() - want));
        }
        add("trivial-delta", worst, 1e-10);
    }
    {
        FactoredModulus m(13, 5);
        FtQ0Params p;
        p.m = 2; p.mp = 3; p.c = 4; p.cp = 11; p.r = 1; p.n1 = 1;
        p.delta = 6; p.sign_m = +1; p.sign_n = -1;
        auto v = ft_q0_sum(hyper_kloosterman(3, 13), dirichlet_char(5, 1), p, m);
        add("ftq0-two-routes", v.rel_diff, 1e-8);
    }
    return rows;
}

void write_identity_csv(std::ostream& os, const std::vector<IdentityRow>& rows) {
    os << "name,measured,threshold,pass\n";
    for (const auto& r : rows)
        os << r.name << ',' << fmt(r.measured) << ',' << fmt(r.threshold) << ','
           << (r.pass ? 1 : 0) << '\n';
}

} // namespace twistlab
