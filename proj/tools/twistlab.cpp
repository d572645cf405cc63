// twistlab -- command-line front end: tabulation, transforms, twisted and
// progression sums, identity checks, correlation experiments, parameter
// sweeps, and cache maintenance.
//
// Exit codes: 0 success, 2 configuration error, 3 constraint violation,
// 4 cache error, 1 anything else.

#include "twistlab/cache.hpp"
#include "twistlab/correlation.hpp"
#include "twistlab/rng.hpp"
#include "twistlab/sums.hpp"
#include "twistlab/sweep.hpp"
#include "twistlab/window.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace twistlab;

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ConfigError:
            return 2;
        case ErrorCode::RangeConstraintViolated:
            return 3;
        case ErrorCode::CacheMiss:
        case ErrorCode::BadMagic:
        case ErrorCode::ChecksumMismatch:
        case ErrorCode::VersionUnsupported:
            return 4;
        default:
            return 1;
    }
}

std::ostream* open_output(const std::string& path, std::ofstream& file) {
    if (path.empty()) return &std::cout;
    file.open(path, std::ios::trunc);
    if (!file) fail(ErrorCode::ConfigError, "cannot open output file " + path);
    return &file;
}

void print_cplx(const char* name, cplx z) {
    std::printf("%s = %.12g + %.12gi   |.| = %.12g\n", name, z.real(), z.imag(), std::abs(z));
}

void require_two_prime_modulus(u64 q0, u64 q1) {
    if (q0 == q1 || !is_prime(q0) || !is_prime(q1))
        fail(ErrorCode::ConfigError, "q0 and q1 must be distinct primes");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted-sum laboratory for trace functions of composite moduli"};
    app.require_subcommand(1);

    std::string config_path, output_path, cache_dir;
    u64 seed = 1;
    unsigned threads = 1;
    app.add_option("--config", config_path, "experiment config file (key=value lines)");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--threads", threads, "worker threads");
    app.add_option("--output", output_path, "output path (default stdout)");
    app.add_option("--cache-dir", cache_dir, "table cache directory");

    // ---- tabulate ----
    auto* tab = app.add_subcommand("tabulate", "build and cache coefficient/trace tables");
    tab->require_subcommand(1);
    int tab_d = 3, tab_k = 12;
    u64 tab_p = 101, tab_n = 1000;
    auto* tab_kl = tab->add_subcommand("kloosterman", "Kl_d table mod p");
    tab_kl->add_option("--d", tab_d)->required();
    tab_kl->add_option("--p", tab_p)->required();
    auto* tab_tau = tab->add_subcommand("tau", "Ramanujan tau table");
    tab_tau->add_option("--n", tab_n)->required();
    auto* tab_eig = tab->add_subcommand("eigenform", "weight-k eigenform table");
    tab_eig->add_option("--k", tab_k)->required();
    tab_eig->add_option("--n", tab_n)->required();
    auto* tab_sym = tab->add_subcommand("sym2", "symmetric-square coefficient table");
    tab_sym->add_option("--k", tab_k);
    tab_sym->add_option("--n", tab_n)->required();

    // ---- ft ----
    auto* ft = app.add_subcommand("ft", "normalized Fourier transform of a family table");
    std::string ft_family = "kl3";
    u64 ft_q = 101;
    bool ft_direct = false;
    ft->add_option("--family", ft_family, "trace family (kl3, dirichlet:j, addchar:a, ...)");
    ft->add_option("--q", ft_q)->required();
    ft->add_flag("--direct", ft_direct, "force the O(q^2) reference path");

    // ---- sum / rs-sum / ap-sum ----
    auto* sum = app.add_subcommand("sum", "twisted sum against the theorem-1 bound");
    auto* rssum = app.add_subcommand("rs-sum", "Rankin-Selberg twisted sum against the theorem-2 bound");
    auto* apsum = app.add_subcommand("ap-sum", "progression sum against the corollary bound");
    double s_x = 1e4, s_z = 1.0;
    u64 s_q0 = 2063, s_q1 = 47, s_a = 1;
    int s_weight = 12;
    std::string s_k0 = "kl3", s_k1 = "const";
    for (auto* cmd : {sum, rssum}) {
        cmd->add_option("--x", s_x)->required();
        cmd->add_option("--q0", s_q0)->required();
        cmd->add_option("--q1", s_q1)->required();
        cmd->add_option("--k0", s_k0);
        cmd->add_option("--k1", s_k1);
        cmd->add_option("--z", s_z);
        cmd->add_option("--weight", s_weight);
    }
    apsum->add_option("--x", s_x)->required();
    apsum->add_option("--q0", s_q0)->required();
    apsum->add_option("--q1", s_q1)->required();
    apsum->add_option("--a", s_a);
    apsum->add_option("--z", s_z);
    apsum->add_option("--weight", s_weight);

    // ---- delta-check ----
    auto* dcheck = app.add_subcommand("delta-check", "trivial delta identity on a grid");
    u64 d_p = 11, d_q0 = 13;
    dcheck->add_option("--p", d_p);
    dcheck->add_option("--q0", d_q0);

    // ---- poisson-check ----
    auto* pcheck = app.add_subcommand("poisson-check", "complete-sum Poisson identity");
    std::string p_family = "kl2";
    u64 p_q = 13, p_m = 0;
    double p_x = 200, p_z = 1;
    pcheck->add_option("--family", p_family);
    pcheck->add_option("--q", p_q);
    pcheck->add_option("--m", p_m, "Poisson modulus (default: q)");
    pcheck->add_option("--x", p_x);
    pcheck->add_option("--z", p_z);

    // ---- voronoi-check ----
    auto* vcheck = app.add_subcommand("voronoi-check", "GL2 Voronoi summation identity");
    u64 v_a = 1, v_c = 3, v_n = 4096;
    double v_x = 50, v_z = 1;
    int v_weight = 12;
    vcheck->add_option("--a", v_a);
    vcheck->add_option("--c", v_c);
    vcheck->add_option("--x", v_x);
    vcheck->add_option("--z", v_z);
    vcheck->add_option("--weight", v_weight);
    vcheck->add_option("--n", v_n, "coefficient table length");

    // ---- corr ----
    auto* corr = app.add_subcommand("corr", "Moebius correlation of a transformed trace function");
    std::string c_k0 = "kl3";
    u64 c_q0 = 101, c_r1 = 1, c_r2 = 1, c_p1 = 1, c_p2 = 1, c_nt = 1, c_q1 = 1;
    int c_sign = 1;
    corr->add_option("--q0", c_q0)->required();
    corr->add_option("--k0", c_k0);
    corr->add_option("--r1", c_r1);
    corr->add_option("--r2", c_r2);
    corr->add_option("--p1", c_p1);
    corr->add_option("--p2", c_p2);
    corr->add_option("--nt", c_nt);
    corr->add_option("--q1", c_q1);
    corr->add_option("--sign", c_sign);

    // ---- zz ----
    auto* zz = app.add_subcommand("zz", "shifted autocorrelation of the Z transform");
    std::string z_k0 = "kl3";
    u64 z_q0 = 101, z_alpha = 1, z_beta = 1, z_gamma = 1;
    u64 z_alphap = 1, z_betap = 1, z_gammap = 1, z_delta = 0;
    zz->add_option("--q0", z_q0)->required();
    zz->add_option("--k0", z_k0);
    zz->add_option("--alpha", z_alpha);
    zz->add_option("--beta", z_beta);
    zz->add_option("--gamma", z_gamma);
    zz->add_option("--alphap", z_alphap);
    zz->add_option("--betap", z_betap);
    zz->add_option("--gammap", z_gammap);
    zz->add_option("--delta", z_delta);

    // ---- ftq0-check ----
    auto* ftq0 = app.add_subcommand("ftq0-check", "two-route evaluation of the q0-sum");
    std::string f_k0 = "kl3", f_k1 = "dirichlet:1";
    u64 f_q0 = 13, f_q1 = 5, f_m = 1, f_mp = 2, f_c = 1, f_cp = 1, f_r = 1, f_n1 = 1, f_delta = 0;
    int f_sm = 1, f_sn = 1;
    ftq0->add_option("--q0", f_q0)->required();
    ftq0->add_option("--q1", f_q1)->required();
    ftq0->add_option("--k0", f_k0);
    ftq0->add_option("--k1", f_k1);
    ftq0->add_option("--m", f_m);
    ftq0->add_option("--mp", f_mp);
    ftq0->add_option("--c", f_c);
    ftq0->add_option("--cp", f_cp);
    ftq0->add_option("--r", f_r);
    ftq0->add_option("--n1", f_n1);
    ftq0->add_option("--delta", f_delta);
    ftq0->add_option("--sign-m", f_sm);
    ftq0->add_option("--sign-n", f_sn);

    // ---- sweep / histogram / identity-suite ----
    auto* sweep = app.add_subcommand("sweep", "run the configured experiment to CSV");
    bool no_build = false;
    sweep->add_flag("--no-build", no_build, "tables must come from the cache");
    auto* hist = app.add_subcommand("histogram", "square-root-cancellation histogram to CSV");
    auto* ident = app.add_subcommand("identity-suite", "run the identity battery to CSV");

    // ---- cache ----
    auto* cachecmd = app.add_subcommand("cache", "inspect or verify cache files");
    cachecmd->require_subcommand(1);
    std::string cache_file;
    auto* cinfo = cachecmd->add_subcommand("info", "print header fields");
    auto* cverify = cachecmd->add_subcommand("verify", "recompute the checksum");
    cinfo->add_option("--file", cache_file)->required();
    cverify->add_option("--file", cache_file)->required();

    // allow the global flags to appear after the subcommand name
    auto enable_fallthrough = [](CLI::App* a, auto&& self) -> void {
        for (CLI::App* sub : a->get_subcommands([](const CLI::App*) { return true; })) {
            sub->fallthrough();
            self(sub, self);
        }
    };
    enable_fallthrough(&app, enable_fallthrough);

    CLI11_PARSE(app, argc, argv);

    try {
        set_thread_count(threads);

        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = parse_config_file(config_path);
        if (app.count("--seed")) cfg.seed = seed;
        if (app.count("--threads")) cfg.threads = threads;
        if (app.count("--output")) cfg.output = output_path;
        if (app.count("--cache-dir")) cfg.cache_dir = cache_dir;
        set_thread_count(cfg.threads);

        if (tab->parsed()) {
            std::string dir = cfg.cache_dir.empty() ? "." : cfg.cache_dir;
            if (tab_kl->parsed()) {
                TraceFunction K = cached_kloosterman(tab_d, tab_p, dir);
                std::printf("Kl_%d mod %llu tabulated (sup norm %.6f), cached in %s\n", tab_d,
                            (unsigned long long)tab_p, K.sup_norm(), dir.c_str());
            } else if (tab_tau->parsed()) {
                auto T = cached_eigenform(12, tab_n, dir);
                std::printf("tau(n) for n <= %llu cached in %s (tau(%llu) = %s)\n",
                            (unsigned long long)tab_n, dir.c_str(), (unsigned long long)tab_n,
                            T.a[tab_n].to_string().c_str());
            } else if (tab_eig->parsed()) {
                auto T = cached_eigenform(tab_k, tab_n, dir);
                std::printf("weight-%d eigenform coefficients for n <= %llu cached in %s\n",
                            tab_k, (unsigned long long)tab_n, dir.c_str());
            } else if (tab_sym->parsed()) {
                auto f = cached_eigenform(tab_k, tab_n, dir);
                auto g3 = sym_square_coefficients(f, tab_n);
                std::vector<double> flat;
                for (u64 r = 1; r <= g3.r_max(); ++r)
                    for (u64 m = 1; m < g3.by_r[r].size(); ++m) flat.push_back(g3.by_r[r][m]);
                std::string path = dir + "/sym2_k" + std::to_string(tab_k) + "_N" +
                                   std::to_string(tab_n) + ".twl";
                cache_store_floats(path, flat);
                std::printf("sym^2 coefficients (m r^2 <= %llu) cached at %s (%zu records)\n",
                            (unsigned long long)tab_n, path.c_str(), flat.size());
            }
        } else if (ft->parsed()) {
            TraceFunction K = make_family(ft_family, ft_q);
            TraceFunction hat =
                fourier_transform(K, ft_direct ? EvalPath::Direct : EvalPath::Auto);
            std::printf("|K|_inf = %.9f   |Khat|_inf = %.9f\n", K.sup_norm(), hat.sup_norm());
            if (!cfg.output.empty()) {
                cache_store_complex(cfg.output, hat.values());
                std::printf("transform table written to %s\n", cfg.output.c_str());
            }
        } else if (sum->parsed()) {
            require_two_prime_modulus(s_q0, s_q1);
            TraceFunction K = crt_product(make_family(s_k0, s_q0), make_family(s_k1, s_q1));
            auto f = cached_eigenform(s_weight, u64(std::ceil(2 * s_x)), cfg.cache_dir);
            SmoothWindow V(s_z);
            cplx S = twisted_sum(f.lambda, K, V, s_x);
            double bound = bound_thm1(s_x, s_z, double(s_q0), double(s_q1),
                                      make_family(s_k1, s_q1).fourier_sup_norm());
            print_cplx("S", S);
            std::printf("bound = %.6g   |S|/bound = %.6g\n", bound, std::abs(S) / bound);
        } else if (rssum->parsed()) {
            require_two_prime_modulus(s_q0, s_q1);
            TraceFunction K = crt_product(make_family(s_k0, s_q0), make_family(s_k1, s_q1));
            u64 need = u64(std::ceil(2 * s_x));
            auto f = cached_eigenform(s_weight, need, cfg.cache_dir);
            auto g3 = sym_square_coefficients(f, need);
            SmoothWindow V(s_z);
            auto S = rs_twisted_sum(g3, f, K, V, s_x);
            double bound = bound_thm2(s_x, s_z, double(s_q0), double(s_q1));
            print_cplx("S (r >= 1)", S.value);
            std::printf("symmetric multiplier = %d\nbound = %.6g   |S|/bound = %.6g\n",
                        S.symmetric_multiplier, bound, std::abs(S.value) / bound);
        } else if (apsum->parsed()) {
            require_two_prime_modulus(s_q0, s_q1);
            u64 q = s_q0 * s_q1;
            auto f = cached_eigenform(s_weight, u64(std::ceil(2 * s_x)), cfg.cache_dir);
            SmoothWindow V(s_z);
            cplx S = ap_sum(f.lambda, s_a, q, V, s_x);
            auto b = ap_corollary_bound(s_x, double(q));
            print_cplx("S", S);
            std::printf("bound = %.6g   level-ok (q <= X^{15/52}) = %s\n", b.bound,
                        b.level_ok ? "yes" : "no");
        } else if (dcheck->parsed()) {
            double worst = 0;
            i64 span = 3 * i64(d_p) * i64(d_q0);
            for (i64 t = -span; t <= span; ++t) {
                double want = (t % (i64(d_p) * i64(d_q0)) == 0) ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(trivial_delta(t, 0, d_p, d_q0).real() - want));
            }
            std::printf("trivial delta max deviation over |n-r| <= %lld: %.3e\n",
                        (long long)span, worst);
        } else if (pcheck->parsed()) {
            TraceFunction K = make_family(p_family, p_q);
            SmoothWindow V(p_z);
            auto r = poisson_check(K, V, p_x, p_m == 0 ? p_q : p_m);
            print_cplx("lhs", r.lhs);
            print_cplx("rhs", r.rhs);
            std::printf("abs diff = %.3e\n", r.diff);
        } else if (vcheck->parsed()) {
            auto f = cached_eigenform(v_weight, v_n, cfg.cache_dir);
            SmoothWindow W(v_z);
            auto r = voronoi_check(f, v_a, v_c, W, v_x);
            print_cplx("lhs", r.lhs);
            print_cplx("rhs", r.rhs);
            std::printf("rel diff = %.3e\n", r.diff);
        } else if (corr->parsed()) {
            TraceFunction K0hat = fourier_transform(make_family(c_k0, c_q0));
            CorrelationParams p{c_r1, c_r2, c_p1, c_p2, c_nt, c_q1, c_sign};
            auto direct = correlation_sum(K0hat, p, c_q0);
            auto [g1, g2] = correlation_matrices(p, c_q0);
            auto viamat =
                matrix_correlation(K0hat, matrix_mul(g2, matrix_inverse(g1, c_q0), c_q0), c_q0);
            print_cplx("correlation (defining sum)", direct.value);
            print_cplx("correlation (matrix route)", viamat.value);
            std::printf("skips: %llu / %llu   scalar pair: %s\n",
                        (unsigned long long)direct.skipped, (unsigned long long)viamat.skipped,
                        is_scalar_pair(g1, g2, c_q0) ? "yes" : "no");
        } else if (zz->parsed()) {
            TraceFunction K0 = make_family(z_k0, z_q0);
            TraceFunction kl2 = hyper_kloosterman(2, z_q0);
            ZTable Z = z_transform(K0, kl2, z_alpha, z_beta, z_gamma);
            ZTable Zp = z_transform(K0, kl2, z_alphap, z_betap, z_gammap);
            cplx v = zz_correlation(Z, Zp, z_delta);
            print_cplx("sum_v Z(v) conj(Z'(v-delta))", v);
            std::printf("normalized by sqrt(q0): %.6f   by q0: %.6f\n",
                        std::abs(v) / std::sqrt(double(z_q0)), std::abs(v) / double(z_q0));
            if (Z.zero_index_contributes)
                std::printf("note: v = 0 row carries x*v = 0 terms (tabulated convention)\n");
        } else if (ftq0->parsed()) {
            FactoredModulus m(f_q0, f_q1);
            FtQ0Params p;
            p.m = f_m; p.mp = f_mp; p.c = f_c; p.cp = f_cp; p.r = f_r; p.n1 = f_n1;
            p.delta = f_delta; p.sign_m = f_sm; p.sign_n = f_sn;
            auto v = ft_q0_sum(make_family(f_k0, f_q0), make_family(f_k1, f_q1), p, m);
            print_cplx("route A", v.route_a);
            print_cplx("route B", v.route_b);
            std::printf("relative difference = %.3e\n", v.rel_diff);
        } else if (sweep->parsed()) {
            if (no_build) cfg.no_build = true;
            std::ofstream file;
            // dispatch on the configured experiment kind
            if (cfg.experiment == "sqrtcancel-histogram") {
                write_histogram_csv(*open_output(cfg.output, file),
                                    run_sqrtcancel_histogram(cfg));
            } else if (cfg.experiment == "identity-suite") {
                write_identity_csv(*open_output(cfg.output, file), run_identity_suite(cfg));
            } else {
                auto result = run_sweep(cfg);
                write_sweep_csv(*open_output(cfg.output, file), result);
                if (result.slope_valid)
                    std::fprintf(stderr, "slope(log|S| ~ log X) = %.6f\n", result.slope);
            }
        } else if (hist->parsed()) {
            auto result = run_sqrtcancel_histogram(cfg);
            std::ofstream file;
            write_histogram_csv(*open_output(cfg.output, file), result);
        } else if (ident->parsed()) {
            auto rows = run_identity_suite(cfg);
            std::ofstream file;
            write_identity_csv(*open_output(cfg.output, file), rows);
            for (const auto& r : rows)
                if (!r.pass) return 1;
        } else if (cachecmd->parsed()) {
            CacheInfo info = cache_info(cache_file);
            if (cinfo->parsed()) {
                std::printf("kind = %d   records = %llu   checksum %s\n", int(info.kind),
                            (unsigned long long)info.count,
                            info.checksum_ok ? "ok" : "MISMATCH");
            }
            if (cverify->parsed()) {
                if (!info.checksum_ok)
                    fail(ErrorCode::ChecksumMismatch, "cache checksum mismatch");
                std::printf("checksum ok (%llu records)\n", (unsigned long long)info.count);
            }
        }
        return 0;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
