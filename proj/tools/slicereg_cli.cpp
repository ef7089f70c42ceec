// Command-line front end: generate test functions, run series algebra
// operations, and drive the bound-verification suites.
//
// Exit codes: 0 pass, 1 margin violation, 2 usage/config error, 3 IO/parse.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slicereg/harness.hpp"
#include "slicereg/json_io.hpp"
#include "slicereg/slicereg.hpp"

namespace {

using namespace slicereg;

void apply_tolerance_flags(RunConfig& cfg, const std::vector<std::string>& entries) {
    for (const std::string& entry : entries) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("--tol expects <name>=<value>, got '" + entry + "'");
        }
        const std::string name = entry.substr(0, eq);
        try {
            cfg.tolerances[name] = std::stod(entry.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError("--tol " + entry + ": value is not a number");
        }
    }
}

Quaternion parse_point(const std::string& text) {
    std::istringstream in(text);
    double comp[4];
    char sep = ',';
    for (int t = 0; t < 4; ++t) {
        if (t > 0 && !(in >> sep && sep == ',')) {
            throw ConfigError("--point expects four comma-separated numbers");
        }
        if (!(in >> comp[t])) throw ConfigError("--point expects four comma-separated numbers");
    }
    return Quaternion{comp[0], comp[1], comp[2], comp[3]};
}

void write_or_print(const std::string& path, const json& j) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        save_json_file(path, j);
    }
}

void print_verdict(const RunReport& report) {
    if (report.pass) {
        std::cout << "PASS: all margins within tolerance\n";
        return;
    }
    std::cout << "FAIL: " << report.violations.size() << " violation(s)\n";
    std::size_t shown = 0;
    for (const Violation& v : report.violations) {
        if (shown++ == 10) {
            std::cout << "  ...\n";
            break;
        }
        std::cout << "  violated " << v.inequality;
        if (v.degree >= 0) std::cout << " at n=" << v.degree;
        if (v.function >= 0) std::cout << " (function " << v.function << ")";
        std::cout << ", margin " << v.margin << "\n";
    }
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::vector<std::string>& tol_entries,
                      std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file; explicit flags override it");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--order", cfg.order, "truncation order N");
    cmd->add_option("--n-functions", cfg.n_functions, "number of test functions");
    cmd->add_option("--n-points", cfg.n_points, "sample points per function");
    cmd->add_option("--r-max", cfg.r_max, "evaluation radius, in (0,1)");
    cmd->add_option("--tol", tol_entries, "named tolerance override, <name>=<value>")
        ->take_all();
    cmd->add_option("--out", cfg.output_path, "output path");
    cmd->add_option("--format", cfg.format, "report format: json|csv");
}

// Fills cfg fields from the config file wherever the flag was not given on the
// command line.
void apply_config_file(CLI::App* cmd, RunConfig& cfg, const std::string& path) {
    const json file = load_json_file(path);
    if (!file.is_object()) throw ConfigError(path + ": config file must be a JSON object");
    auto untouched = [&](const char* flag) {
        const CLI::Option* opt = cmd->get_option_no_throw(flag);
        return opt == nullptr || opt->count() == 0;
    };
    auto take = [&](const char* key, const char* flag, auto& field) {
        if (file.contains(key) && untouched(flag)) {
            try {
                field = file.at(key).get<std::decay_t<decltype(field)>>();
            } catch (const json::exception&) {
                throw ConfigError(path + ": bad value for '" + key + "'");
            }
        }
    };
    take("seed", "--seed", cfg.seed);
    take("order", "--order", cfg.order);
    take("n_functions", "--n-functions", cfg.n_functions);
    take("n_points", "--n-points", cfg.n_points);
    take("r_max", "--r-max", cfg.r_max);
    take("n_theta", "--n-theta", cfg.n_theta);
    take("n_sphere", "--n-sphere", cfg.n_sphere);
    take("n_derivatives", "--n-derivatives", cfg.n_derivatives);
    take("workers", "--workers", cfg.workers);
    take("format", "--format", cfg.format);
    take("out", "--out", cfg.output_path);
    if (file.contains("tolerances")) {
        if (!file["tolerances"].is_object()) {
            throw ConfigError(path + ": 'tolerances' must be an object");
        }
        for (const auto& [name, value] : file["tolerances"].items()) {
            // command-line --tol entries win; they are applied afterwards
            if (!cfg.tolerances.contains(name)) {
                if (!value.is_number()) throw ConfigError(path + ": tolerance '" + name + "'");
                cfg.tolerances[name] = value.get<double>();
            }
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quaternionic slice-regular series algebra and bound verification"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> tol_entries;
    std::string config_path;

    CLI::App* gen = app.add_subcommand("gen", "generate mix test functions + manifest");
    add_common_flags(gen, cfg, tol_entries, config_path);

    std::string lhs_path, rhs_path, in_path, point_text;
    CLI::App* star = app.add_subcommand("star", "⋆-product of two series files");
    star->add_option("--lhs", lhs_path, "left series JSON")->required();
    star->add_option("--rhs", rhs_path, "right series JSON")->required();
    star->add_option("--out", cfg.output_path, "output path (stdout default)");

    CLI::App* recip = app.add_subcommand("recip", "regular reciprocal of a series file");
    recip->add_option("--in", in_path, "series JSON")->required();
    recip->add_option("--out", cfg.output_path, "output path (stdout default)");

    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a series at a point");
    eval_cmd->add_option("--in", in_path, "series JSON")->required();
    eval_cmd->add_option("--point", point_text, "point q as x0,x1,x2,x3")->required();
    eval_cmd->add_option("--out", cfg.output_path, "output path (stdout default)");

    CLI::App* check_ct = app.add_subcommand("check-ct", "positive-real-part bound suite");
    add_common_flags(check_ct, cfg, tol_entries, config_path);
    check_ct->add_option("--workers", cfg.workers, "worker threads");
    check_ct->add_option("--input", cfg.input_files, "check explicit series files")->take_all();

    CLI::App* check_bct = app.add_subcommand("check-bct", "sup-controlled bound suite");
    add_common_flags(check_bct, cfg, tol_entries, config_path);
    check_bct->add_option("--workers", cfg.workers, "worker threads");
    check_bct->add_option("--input", cfg.input_files, "check explicit series files")->take_all();
    check_bct->add_option("--n-theta", cfg.n_theta, "boundary circle samples for sup Re");
    check_bct->add_option("--n-sphere", cfg.n_sphere, "imaginary unit samples for sup Re");
    check_bct->add_option("--n-derivatives", cfg.n_derivatives, "derivative orders checked");

    CLI::App* check_id = app.add_subcommand("check-identities", "algebraic property battery");
    add_common_flags(check_id, cfg, tol_entries, config_path);
    check_id->add_option("--n-theta", cfg.n_theta, "boundary circle samples for sup Re");
    check_id->add_option("--n-sphere", cfg.n_sphere, "imaginary unit samples for sup Re");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return slicereg::kExitUsage;
    }

    // the battery's bulk checks default to a larger sample count
    if (check_id->parsed() && check_id->get_option("--n-functions")->count() == 0) {
        cfg.n_functions = 1000;
    }

    try {
        apply_tolerance_flags(cfg, tol_entries);
        if (!config_path.empty()) {
            for (CLI::App* cmd : {gen, check_ct, check_bct, check_id}) {
                if (cmd->parsed()) apply_config_file(cmd, cfg, config_path);
            }
        }

        if (gen->parsed()) {
            validate_config(cfg);
            const std::vector<std::string> files = run_gen(cfg);
            std::cout << "wrote " << files.size() << " function file(s) + manifest under "
                      << cfg.output_path << "\n";
            return kExitPass;
        }
        if (star->parsed()) {
            const QSeries result = star_mul(load_series(lhs_path), load_series(rhs_path));
            write_or_print(cfg.output_path, to_json(result));
            return kExitPass;
        }
        if (recip->parsed()) {
            const QSeries result = regular_reciprocal(load_series(in_path));
            write_or_print(cfg.output_path, to_json(result));
            return kExitPass;
        }
        if (eval_cmd->parsed()) {
            const Quaternion value = eval(load_series(in_path), parse_point(point_text));
            write_or_print(cfg.output_path, to_json(value));
            return kExitPass;
        }

        RunReport report;
        if (check_ct->parsed()) {
            report = run_check_ct(cfg);
        } else if (check_bct->parsed()) {
            report = run_check_bct(cfg);
        } else {
            report = run_check_identities(cfg);
        }
        emit_report(cfg, report);
        if (!cfg.output_path.empty()) print_verdict(report);
        return report.pass ? kExitPass : kExitMarginViolation;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitIoParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoParse;
    }
}
