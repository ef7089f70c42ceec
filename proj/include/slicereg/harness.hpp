#pragma once

#include <array>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "slicereg/generators.hpp"
#include "slicereg/identities.hpp"
#include "slicereg/json_io.hpp"
#include "slicereg/version.hpp"

namespace slicereg {

// Process exit contract shared with the CLI.
inline constexpr int kExitPass = 0;
inline constexpr int kExitMarginViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIoParse = 3;

struct RunConfig {
    std::uint64_t seed{42};
    int order{32};
    int n_functions{100};
    int n_points{100};
    double r_max{0.9};
    int n_theta{4096};
    int n_sphere{256};
    int n_derivatives{4};
    int workers{1};
    std::map<std::string, double> tolerances; // named overrides
    std::string output_path;
    std::string format{"json"};
    std::vector<std::string> input_files; // explicit inputs replacing generated mixes
};

inline void validate_config(const RunConfig& cfg) {
    if (cfg.n_functions < 1) throw ConfigError("n-functions must be >= 1");
    if (cfg.n_points < 1) throw ConfigError("n-points must be >= 1");
    if (cfg.order < 0) throw ConfigError("order must be >= 0");
    if (!(cfg.r_max > 0.0 && cfg.r_max < 1.0)) throw ConfigError("r-max must be in (0, 1)");
    if (cfg.n_theta < 1 || cfg.n_sphere < 1) throw ConfigError("sample counts must be >= 1");
    if (cfg.n_derivatives < 0) throw ConfigError("n-derivatives must be >= 0");
    if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
    if (cfg.format != "json" && cfg.format != "csv") throw ConfigError("format must be json|csv");
    for (const auto& [name, value] : cfg.tolerances) {
        if (!(value >= 0.0)) throw ConfigError("tolerance '" + name + "' must be >= 0");
    }
}

inline double tolerance_of(const RunConfig& cfg, const std::string& name, double fallback) {
    auto it = cfg.tolerances.find(name);
    if (it != cfg.tolerances.end()) return it->second;
    it = cfg.tolerances.find("all");
    if (it != cfg.tolerances.end()) return it->second;
    return fallback;
}

namespace detail {

// The embedded config deliberately omits workers/output/format: reports must
// be byte-identical across worker counts and output destinations.
inline json config_json(const RunConfig& cfg) {
    json tol = json::object();
    for (const auto& [name, value] : cfg.tolerances) tol[name] = value;
    json j{{"order", cfg.order},
           {"n_functions", cfg.n_functions},
           {"n_points", cfg.n_points},
           {"r_max", cfg.r_max},
           {"n_theta", cfg.n_theta},
           {"n_sphere", cfg.n_sphere},
           {"n_derivatives", cfg.n_derivatives},
           {"tolerances", std::move(tol)}};
    if (!cfg.input_files.empty()) j["inputs"] = cfg.input_files;
    return j;
}

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Deterministic fan-out: fn(i) for i in [0, n), results land in
/// caller-preallocated slots, so scheduling cannot affect the outcome.
template <typename Fn>
void parallel_for(int n, int workers, Fn&& fn) {
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::string> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i; (i = next.fetch_add(1)) < n;) fn(i);
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(w)] = e.what();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (const std::string& e : errors) {
        if (!e.empty()) throw std::runtime_error(e);
    }
}

} // namespace detail

struct Violation {
    int function{-1};
    int point{-1}; // -1 when the inequality is point-free
    std::string inequality;
    int degree{-1}; // coefficient/derivative index when applicable
    double margin{0.0};
    std::optional<Quaternion> q;
};

struct RunReport {
    json body;
    bool pass{true};
    std::string csv;
    std::vector<Violation> violations;
};

namespace detail {

inline json violations_json(const std::vector<Violation>& violations) {
    json arr = json::array();
    for (const Violation& v : violations) {
        json entry{{"function", v.function}, {"inequality", v.inequality}, {"margin", v.margin}};
        if (v.point >= 0) entry["point"] = v.point;
        if (v.degree >= 0) entry["n"] = v.degree;
        if (v.q) entry["q"] = to_json(*v.q);
        arr.push_back(std::move(entry));
    }
    return arr;
}

} // namespace detail

/// Writes n_functions mix-generated series files plus a manifest with the
/// kernel parameters and weights. Re-running with the same config reproduces
/// every byte.
inline std::vector<std::string> run_gen(const RunConfig& cfg) {
    validate_config(cfg);
    if (cfg.output_path.empty()) throw ConfigError("gen: --out directory is required");
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output_path, ec);
    if (ec) throw ParseError(cfg.output_path + ": cannot create output directory");

    const Rng root(cfg.seed);
    json manifest{{"version", kVersion},
                  {"seed", cfg.seed},
                  {"config", detail::config_json(cfg)},
                  {"functions", json::array()}};
    std::vector<std::string> files;
    for (int fi = 0; fi < cfg.n_functions; ++fi) {
        Rng rng = root.derive(100, static_cast<std::uint64_t>(fi));
        const HerglotzMix mix = random_mix(rng);
        const QSeries f = mix_series(mix, cfg.order);
        char name[32];
        std::snprintf(name, sizeof name, "fn_%04d.json", fi);
        const std::string path = (fs::path(cfg.output_path) / name).string();
        save_json_file(path, to_json(f));
        files.push_back(path);
        json entry = to_json(mix);
        entry["file"] = name;
        manifest["functions"].push_back(std::move(entry));
    }
    save_json_file((fs::path(cfg.output_path) / "manifest.json").string(), manifest);
    return files;
}

/// Full positive-real-part suite: the inequality chain margins at sampled
/// points plus the coefficient margins, for generated mixes or explicit
/// inputs. Margins below -(tolerance + tail allowance) are violations.
inline RunReport run_check_ct(const RunConfig& cfg) {
    validate_config(cfg);
    const double tol_margin = tolerance_of(cfg, "margin", 1e-9);
    const double tol_coeff = tolerance_of(cfg, "coeff", 1e-9);
    const Rng root(cfg.seed);

    struct FunctionOutcome {
        std::vector<double> coeff_margins;
        // per point: lower/mid/upper margins plus the tail allowance there
        std::vector<std::array<double, 4>> chain;
        std::vector<Quaternion> points;
    };

    const bool use_inputs = !cfg.input_files.empty();
    const int n_functions = use_inputs ? static_cast<int>(cfg.input_files.size()) : cfg.n_functions;
    std::vector<QSeries> inputs;
    if (use_inputs) {
        inputs.reserve(cfg.input_files.size());
        for (const std::string& path : cfg.input_files) inputs.push_back(load_series(path));
    }

    std::vector<FunctionOutcome> outcomes(static_cast<std::size_t>(n_functions));
    detail::parallel_for(n_functions, cfg.workers, [&](int fi) {
        const QSeries f = [&] {
            if (use_inputs) return inputs[static_cast<std::size_t>(fi)];
            Rng mix_rng = root.derive(100, static_cast<std::uint64_t>(fi));
            return mix_series(random_mix(mix_rng), cfg.order);
        }();
        FunctionOutcome& out = outcomes[static_cast<std::size_t>(fi)];
        out.coeff_margins = check_coefficient_bounds(f);
        // generated mixes are truncations of kernels with |a_n| <= 2 and get a
        // tail allowance; explicit inputs are exact polynomials and get none
        const TailBound tail{use_inputs ? 0.0 : 2.0, f.order()};
        Rng rng = root.derive(200, static_cast<std::uint64_t>(fi));
        out.chain.reserve(static_cast<std::size_t>(cfg.n_points));
        out.points.reserve(static_cast<std::size_t>(cfg.n_points));
        for (int pi = 0; pi < cfg.n_points; ++pi) {
            const Quaternion q = random_in_ball(rng, cfg.r_max);
            const BoundReport rep = check_caratheodory_bounds(f, q, tail);
            out.chain.push_back({rep.lower_margin, rep.mid_margin, rep.upper_margin,
                                 rep.tail_allowance});
            out.points.push_back(q);
        }
    });

    RunReport report;
    double worst_lower = 1e300, worst_mid = 1e300, worst_upper = 1e300, worst_coeff = 1e300;
    double worst_adjusted = 1e300;
    json worst_case;
    std::string csv = "function,point,inequality,n,q0,q1,q2,q3,margin\n";

    const char* chain_names[3] = {"lower", "mid", "upper"};
    for (int fi = 0; fi < n_functions; ++fi) {
        const FunctionOutcome& out = outcomes[static_cast<std::size_t>(fi)];
        for (std::size_t n = 0; n < out.coeff_margins.size(); ++n) {
            const double margin = out.coeff_margins[n];
            worst_coeff = std::min(worst_coeff, margin);
            if (margin < worst_adjusted) {
                worst_adjusted = margin;
                worst_case = json{{"function", fi},
                                  {"inequality", "coefficient"},
                                  {"n", static_cast<int>(n) + 1},
                                  {"margin", margin}};
            }
            if (margin < -tol_coeff) {
                report.violations.push_back(Violation{fi, -1, "coefficient",
                                                      static_cast<int>(n) + 1, margin, {}});
            }
            if (cfg.format == "csv") {
                csv += std::to_string(fi) + ",,coefficient," + std::to_string(n + 1) + ",,,,," +
                       detail::fmt_double(margin) + "\n";
            }
        }
        for (std::size_t pi = 0; pi < out.chain.size(); ++pi) {
            const std::array<double, 4>& row = out.chain[pi];
            const Quaternion& q = out.points[pi];
            const double allowance = row[3];
            worst_lower = std::min(worst_lower, row[0]);
            worst_mid = std::min(worst_mid, row[1]);
            worst_upper = std::min(worst_upper, row[2]);
            const double allowances[3] = {allowance, 0.0, allowance};
            for (int t = 0; t < 3; ++t) {
                const double adjusted = row[static_cast<std::size_t>(t)] + allowances[t];
                if (adjusted < worst_adjusted) {
                    worst_adjusted = adjusted;
                    worst_case = json{{"function", fi},
                                      {"inequality", chain_names[t]},
                                      {"margin", row[static_cast<std::size_t>(t)]},
                                      {"q", to_json(q)}};
                }
                if (adjusted < -tol_margin) {
                    report.violations.push_back(Violation{
                        fi, static_cast<int>(pi), chain_names[t], -1,
                        row[static_cast<std::size_t>(t)], q});
                }
                if (cfg.format == "csv") {
                    csv += std::to_string(fi) + "," + std::to_string(pi) + "," + chain_names[t] +
                           ",," + detail::fmt_double(q.w) + "," + detail::fmt_double(q.x) + "," +
                           detail::fmt_double(q.y) + "," + detail::fmt_double(q.z) + "," +
                           detail::fmt_double(row[static_cast<std::size_t>(t)]) + "\n";
                }
            }
        }
    }

    report.pass = report.violations.empty();
    report.body = json{{"version", kVersion},
                       {"seed", cfg.seed},
                       {"config", detail::config_json(cfg)},
                       {"margins",
                        json{{"lower", worst_lower},
                             {"mid", worst_mid},
                             {"upper", worst_upper},
                             {"coefficient", worst_coeff}}},
                       {"worst_case", std::move(worst_case)},
                       {"violations", detail::violations_json(report.violations)},
                       {"pass", report.pass}};
    if (cfg.format == "csv") report.csv = std::move(csv);
    return report;
}

/// Sup-controlled bound suite over two generated families (affine kernel
/// images with the sup known exactly; flat random polynomials with a sampled
/// sup) or explicit inputs (sampled sup). Includes the affine-transform
/// round-trip identity linking the two bound families.
inline RunReport run_check_bct(const RunConfig& cfg) {
    validate_config(cfg);
    const double tol_exact = tolerance_of(cfg, "borel-exact", 1e-9);
    const double tol_sampled = tolerance_of(cfg, "borel-sampled", 1e-4);
    const double tol_equiv = tolerance_of(cfg, "equivalence", 1e-12);
    const Rng root(cfg.seed);
    const double radius = std::min(cfg.r_max, 0.5);

    struct FunctionOutcome {
        bool analytic{false};
        BorelReport rep;
        std::vector<double> allowances; // growth, realpart, derivative 1..n_max
        double equivalence_residual{0.0};
    };

    const bool use_inputs = !cfg.input_files.empty();
    const int n_functions = use_inputs ? static_cast<int>(cfg.input_files.size()) : cfg.n_functions;
    std::vector<QSeries> inputs;
    if (use_inputs) {
        inputs.reserve(cfg.input_files.size());
        for (const std::string& path : cfg.input_files) inputs.push_back(load_series(path));
    }

    std::vector<FunctionOutcome> outcomes(static_cast<std::size_t>(n_functions));
    detail::parallel_for(n_functions, cfg.workers, [&](int fi) {
        FunctionOutcome& out = outcomes[static_cast<std::size_t>(fi)];
        Rng rng = root.derive(300, static_cast<std::uint64_t>(fi));
        std::optional<QSeries> built;
        double sup_re = 0.0;
        double tail_coeff = 2.0;
        if (use_inputs) {
            built = inputs[static_cast<std::size_t>(fi)];
            sup_re = sup_re_estimate(*built, cfg.n_theta, cfg.n_sphere);
        } else if (fi % 2 == 0) {
            out.analytic = true;
            const double u = rng.uniform(0.5, 2.0);
            const double v = rng.uniform(0.2, 1.0);
            built = scale_real(kernel_series(random_kernel(rng), cfg.order), -v) +
                    QSeries::constant(Quaternion{u}, cfg.order);
            sup_re = u; // Re of an affine kernel image approaches u at the boundary
            tail_coeff = 2.0 * v;
        } else {
            built = random_series_flat(rng, std::min(16, cfg.order));
            sup_re = sup_re_estimate(*built, cfg.n_theta, cfg.n_sphere);
        }
        const QSeries& f = *built;
        const int n_max = std::min(cfg.n_derivatives, f.order());
        const std::vector<Quaternion> pts = sample_ball_points(rng, cfg.n_points, radius);
        out.rep = check_borel_caratheodory(f, sup_re, radius, pts, n_max);
        out.allowances.push_back(out.analytic ? tail_bound(tail_coeff, f.order(), radius) : 0.0);
        out.allowances.push_back(out.allowances[0]);
        for (int n = 1; n <= n_max; ++n) {
            out.allowances.push_back(
                out.analytic ? derivative_tail_bound(tail_coeff, f.order(), radius, n) : 0.0);
        }
        // affine-transform round trip: both bound families must price the
        // coefficients identically
        const double dev = sup_re - f[0].re();
        if (dev > 1e-9) {
            const QSeries g = equivalence_transform(f, sup_re);
            double worst = 0.0;
            for (int n = 1; n <= f.order(); ++n) {
                const double direct = 2.0 * dev - f[n].norm();
                const double via_transform = (2.0 - g[n].norm()) * dev;
                worst = std::max(worst, std::abs(direct - via_transform));
            }
            out.equivalence_residual = worst;
        }
    });

    RunReport report;
    std::map<std::string, double> worst_named{
        {"coefficient_analytic", 1e300}, {"growth_analytic", 1e300},
        {"realpart_analytic", 1e300},    {"derivative_analytic", 1e300},
        {"coefficient_sampled", 1e300},  {"growth_sampled", 1e300},
        {"realpart_sampled", 1e300},     {"derivative_sampled", 1e300}};
    double worst_equiv = 0.0;
    double worst_adjusted = 1e300;
    json worst_case;
    std::string csv = "function,family,inequality,n,margin\n";

    for (int fi = 0; fi < n_functions; ++fi) {
        const FunctionOutcome& out = outcomes[static_cast<std::size_t>(fi)];
        const std::string family = out.analytic ? "analytic" : "sampled";
        const double tol = out.analytic ? tol_exact : tol_sampled;
        auto consider = [&](const std::string& inequality, int degree, double margin,
                            double allowance) {
            worst_named[inequality + "_" + family] =
                std::min(worst_named[inequality + "_" + family], margin);
            const double adjusted = margin + allowance;
            if (adjusted < worst_adjusted) {
                worst_adjusted = adjusted;
                worst_case = json{{"function", fi},
                                  {"family", family},
                                  {"inequality", inequality},
                                  {"margin", margin}};
                if (degree >= 0) worst_case["n"] = degree;
            }
            if (adjusted < -tol) {
                report.violations.push_back(
                    Violation{fi, -1, inequality + "(" + family + ")", degree, margin, {}});
            }
            if (cfg.format == "csv") {
                csv += std::to_string(fi) + "," + family + "," + inequality + "," +
                       (degree >= 0 ? std::to_string(degree) : std::string{}) + "," +
                       detail::fmt_double(margin) + "\n";
            }
        };
        for (std::size_t n = 0; n < out.rep.coeff_margins.size(); ++n) {
            consider("coefficient", static_cast<int>(n) + 1, out.rep.coeff_margins[n], 0.0);
        }
        consider("growth", -1, out.rep.growth_margin, out.allowances[0]);
        consider("realpart", -1, out.rep.realpart_margin, out.allowances[1]);
        for (std::size_t n = 0; n < out.rep.derivative_margins.size(); ++n) {
            consider("derivative", static_cast<int>(n) + 1, out.rep.derivative_margins[n],
                     out.allowances[n + 2]);
        }
        worst_equiv = std::max(worst_equiv, out.equivalence_residual);
        if (out.equivalence_residual > tol_equiv) {
            report.violations.push_back(
                Violation{fi, -1, "equivalence", -1, out.equivalence_residual, {}});
        }
    }

    json margins;
    for (const auto& [name, value] : worst_named) {
        if (value < 1e300) margins[name] = value;
    }
    margins["equivalence_residual"] = worst_equiv;

    report.pass = report.violations.empty();
    report.body = json{{"version", kVersion},
                       {"seed", cfg.seed},
                       {"config", detail::config_json(cfg)},
                       {"radius", radius},
                       {"margins", std::move(margins)},
                       {"worst_case", std::move(worst_case)},
                       {"violations", detail::violations_json(report.violations)},
                       {"pass", report.pass}};
    if (cfg.format == "csv") report.csv = std::move(csv);
    return report;
}

/// The named identity battery as a report.
inline RunReport run_check_identities(const RunConfig& cfg) {
    validate_config(cfg);
    IdentityConfig icfg;
    icfg.seed = cfg.seed;
    icfg.order = cfg.order;
    icfg.n_bulk = cfg.n_functions;
    icfg.n_pairs = std::max(1, cfg.n_functions / 10);
    icfg.n_points = cfg.n_points;
    icfg.r_max = cfg.r_max;
    icfg.n_theta = cfg.n_theta;
    icfg.n_sphere = cfg.n_sphere;
    icfg.tolerance_overrides = cfg.tolerances;

    const std::vector<CheckResult> checks = run_identity_checks(icfg);

    RunReport report;
    json rows = json::array();
    json margins = json::object();
    std::string csv = "check,samples,worst,tolerance,pass\n";
    for (const CheckResult& c : checks) {
        rows.push_back(json{{"name", c.name},
                            {"worst", c.worst},
                            {"tolerance", c.tolerance},
                            {"samples", c.samples},
                            {"pass", c.pass}});
        margins[c.name] = c.tolerance - c.worst;
        if (!c.pass) {
            report.violations.push_back(Violation{-1, -1, c.name, -1, c.tolerance - c.worst, {}});
        }
        if (cfg.format == "csv") {
            csv += c.name + "," + std::to_string(c.samples) + "," + detail::fmt_double(c.worst) +
                   "," + detail::fmt_double(c.tolerance) + "," + (c.pass ? "true" : "false") + "\n";
        }
    }
    report.pass = report.violations.empty();
    report.body = json{{"version", kVersion},
                       {"seed", cfg.seed},
                       {"config", detail::config_json(cfg)},
                       {"checks", std::move(rows)},
                       {"margins", std::move(margins)},
                       {"pass", report.pass}};
    if (cfg.format == "csv") report.csv = std::move(csv);
    return report;
}

/// Writes report body (or CSV) to the configured destination; stdout when no
/// path given.
inline void emit_report(const RunConfig& cfg, const RunReport& report) {
    const std::string payload = cfg.format == "csv" ? report.csv : report.body.dump(2) + "\n";
    if (cfg.output_path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError(cfg.output_path + ": cannot open for writing");
    out << payload;
    if (!out) throw ParseError(cfg.output_path + ": write failed");
}

} // namespace slicereg
