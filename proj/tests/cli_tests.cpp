// Exit-code and round-trip checks for the command-line tool.
// Usage: cli_tests <path-to-cli> <fixtures-dir>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "slicereg/json_io.hpp"
#include "slicereg/slicereg.hpp"

using namespace slicereg;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_fixtures;
fs::path g_workdir;
int g_failures = 0;

int run_cli(const std::string& args) {
    const std::string cmd = "'" + g_cli + "' " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void expect(bool ok, const std::string& what) {
    std::printf("%s  %s\n", ok ? "ok  " : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

void expect_exit(const std::string& args, int want, const std::string& what) {
    const int got = run_cli(args);
    std::printf("%s  %s (exit %d, want %d)\n", got == want ? "ok  " : "FAIL", what.c_str(), got,
                want);
    if (got != want) ++g_failures;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: cli_tests <cli-path> <fixtures-dir>\n");
        return 2;
    }
    g_cli = argv[1];
    g_fixtures = argv[2];
    g_workdir = fs::temp_directory_path() / "slicereg_cli_tests";
    fs::remove_all(g_workdir);
    fs::create_directories(g_workdir);

    // usage/config errors -> 2
    expect_exit("", 2, "no subcommand is a usage error");
    expect_exit("frobnicate", 2, "unknown subcommand is a usage error");
    expect_exit("check-ct --no-such-flag", 2, "unknown flag is a usage error");
    expect_exit("gen --n-functions 0 --out '" + (g_workdir / "gen0").string() + "'", 2,
                "n-functions = 0 fails validation");
    expect_exit("check-ct --r-max 1.0", 2, "r-max = 1 fails validation");
    expect_exit("check-ct --format xml", 2, "unknown format fails validation");
    expect_exit("check-ct --tol margin", 2, "malformed --tol entry");

    // IO/parse errors -> 3
    expect_exit("eval --in /nonexistent.json --point 0,0,0,0", 3, "missing input file");
    {
        const fs::path empty = g_workdir / "empty_coeffs.json";
        std::ofstream(empty) << "{\"order\": 0, \"coeffs\": []}";
        expect_exit("eval --in '" + empty.string() + "' --point 0,0,0,0", 3,
                    "empty coefficient list is a parse error");
        const fs::path garbage = g_workdir / "garbage.json";
        std::ofstream(garbage) << "not json";
        expect_exit("recip --in '" + garbage.string() + "'", 3, "malformed JSON is a parse error");
    }

    // algebra round trip: star of the worked pair, reciprocal of a constant
    {
        const fs::path lhs = g_workdir / "lhs.json";
        const fs::path rhs = g_workdir / "rhs.json";
        const fs::path out = g_workdir / "star.json";
        save_json_file(lhs.string(),
                       to_json(QSeries(std::vector<Quaternion>{Quaternion::one(),
                                                               Quaternion::i()})
                                   .padded(2)));
        save_json_file(rhs.string(),
                       to_json(QSeries(std::vector<Quaternion>{Quaternion::one(),
                                                               Quaternion::j()})
                                   .padded(2)));
        expect_exit("star --lhs '" + lhs.string() + "' --rhs '" + rhs.string() + "' --out '" +
                        out.string() + "'",
                    0, "star subcommand succeeds");
        const QSeries p = load_series(out.string());
        expect(p.order() == 2 && (p[1] - Quaternion{0, 1, 1, 0}).norm() == 0.0 &&
                   (p[2] - Quaternion::k()).norm() == 0.0,
               "star output is [1, i+j, k]");

        const fs::path two = g_workdir / "two.json";
        const fs::path half = g_workdir / "half.json";
        save_json_file(two.string(), to_json(QSeries::constant(Quaternion{2.0}, 3)));
        expect_exit("recip --in '" + two.string() + "' --out '" + half.string() + "'", 0,
                    "recip subcommand succeeds");
        const QSeries h = load_series(half.string());
        expect((h[0] - Quaternion{0.5}).norm() <= 1e-15, "recip of 2 is 0.5");

        const fs::path value = g_workdir / "value.json";
        expect_exit("eval --in '" + lhs.string() + "' --point 0,0,1,0 --out '" + value.string() +
                        "'",
                    0, "eval subcommand succeeds");
        const Quaternion v = quaternion_from_json(load_json_file(value.string()), "value");
        expect((v - Quaternion{1, 0, 0, -1}).norm() == 0.0, "eval at j gives 1 - k");
    }

    // gen determinism and manifest invariants
    {
        const fs::path dir_a = g_workdir / "gen_a";
        const fs::path dir_b = g_workdir / "gen_b";
        expect_exit("gen --seed 42 --n-functions 3 --order 8 --out '" + dir_a.string() + "'", 0,
                    "gen succeeds");
        expect_exit("gen --seed 42 --n-functions 3 --order 8 --out '" + dir_b.string() + "'", 0,
                    "gen rerun succeeds");
        bool identical = true;
        for (int t = 0; t < 3; ++t) {
            char name[32];
            std::snprintf(name, sizeof name, "fn_%04d.json", t);
            if (read_file(dir_a / name) != read_file(dir_b / name)) identical = false;
        }
        expect(identical, "generated coefficients are byte-identical per seed");
        const json manifest = load_json_file((dir_a / "manifest.json").string());
        bool weights_ok = true;
        for (const auto& entry : manifest["functions"]) {
            double sum = 0.0;
            for (const auto& w : entry["weights"]) sum += w.get<double>();
            if (std::abs(sum - 1.0) > 1e-12) weights_ok = false;
        }
        expect(weights_ok, "manifest weights sum to 1");
        const QSeries reparsed = load_series((dir_a / "fn_0000.json").string());
        expect(reparsed.order() == 8, "generated series re-parse at the requested order");
    }

    // config file, flags override
    {
        const fs::path cfg_file = g_workdir / "run_config.json";
        std::ofstream(cfg_file)
            << R"({"seed": 5, "n_functions": 8, "n_points": 5, "order": 16, "r_max": 0.7})";
        const fs::path out_a = g_workdir / "cfg_a.json";
        const fs::path out_b = g_workdir / "cfg_b.json";
        expect_exit("check-ct --config '" + cfg_file.string() + "' --out '" + out_a.string() +
                        "'",
                    0, "config file drives check-ct");
        const json ra = load_json_file(out_a.string());
        expect(ra["seed"] == 5 && ra["config"]["n_functions"] == 8 &&
                   ra["config"]["order"] == 16,
               "config file values land in the report");
        expect_exit("check-ct --config '" + cfg_file.string() + "' --order 24 --out '" +
                        out_b.string() + "'",
                    0, "flag + config file run succeeds");
        const json rb = load_json_file(out_b.string());
        expect(rb["config"]["order"] == 24 && rb["config"]["n_functions"] == 8,
               "explicit flag overrides the config file");
        expect_exit("check-ct --config /nonexistent_config.json", 3,
                    "missing config file is an IO error");
    }

    // sup-controlled suite edge cases
    {
        const fs::path constant = g_workdir / "constant.json";
        save_json_file(constant.string(), to_json(QSeries::constant(Quaternion{0.7, 1, 0, 0}, 8)));
        const fs::path out = g_workdir / "bct_constant.json";
        expect_exit("check-bct --seed 5 --n-theta 256 --n-sphere 16 --input '" +
                        constant.string() + "' --out '" + out.string() + "'",
                    0, "constant input passes check-bct");
        const json report = load_json_file(out.string());
        bool zeroed = true;
        for (const auto& [name, value] : report["margins"].items()) {
            if (std::abs(value.get<double>()) > 1e-12) zeroed = false;
        }
        expect(zeroed, "constant input margins all collapse to zero");
        expect_exit("check-bct --r-max 1.0", 2, "check-bct rejects r-max = 1");
    }

    // verification drivers
    expect_exit("check-ct --seed 5", 0, "check-ct passes at the default config");
    expect_exit("check-ct --seed 5 --n-functions 20 --n-points 20 --order 32", 0,
                "check-ct passes on generated mixes");
    expect_exit("check-ct --seed 5 --input '" +
                    (g_fixtures / "bad_coeff_degree1.json").string() + "'",
                1, "corrupted coefficient fixture exits 1");
    expect_exit(
        "check-identities --seed 5 --n-functions 30 --n-points 10 --n-theta 256 --n-sphere 16",
        0, "check-identities passes at reduced counts");
    expect_exit("check-identities --seed 5 --n-functions 30 --n-points 10 --n-theta 256 "
                "--n-sphere 16 --tol all=0",
                1, "zero tolerance reports failures");

    // csv format emits rows
    {
        const fs::path csv = g_workdir / "report.csv";
        expect_exit("check-ct --seed 5 --n-functions 5 --n-points 5 --format csv --out '" +
                        csv.string() + "'",
                    0, "csv report run succeeds");
        const std::string content = read_file(csv);
        expect(content.rfind("function,point,inequality,n,q0,q1,q2,q3,margin\n", 0) == 0,
               "csv header present");
        expect(content.find(",lower,") != std::string::npos, "csv has chain rows");
    }

    if (g_failures > 0) {
        std::printf("%d check(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all cli checks passed\n");
    return 0;
}
