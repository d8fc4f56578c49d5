#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzmill/json_io.hpp"
#include "fuzzmill/pso.hpp"
#include "fuzzmill/rulebase_opt.hpp"
#include "fuzzmill/wpp.hpp"

using namespace fuzzmill;

namespace {

#ifndef FUZZMILL_CLI_PATH
#error "FUZZMILL_CLI_PATH must point at the command-line binary"
#endif

struct RunResult {
    int exit_code;
    std::string output;  ///< stdout and stderr interleaved
};

/// Runs the CLI with `args`, capturing combined output and the exit code.
RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string("'") + FUZZMILL_CLI_PATH + "' " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, n);
    const int status = pclose(pipe);
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return RunResult{WEXITSTATUS(status), output};
}

class TempDir {
  public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("fuzzmill_cli_" + std::to_string(getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path file(const std::string& name) const { return path_ / name; }

    std::filesystem::path write(const std::string& name, const std::string& text) const {
        const auto p = file(name);
        std::ofstream out(p, std::ios::binary);
        out << text;
        return p;
    }

  private:
    std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return std::move(os).str();
}

/// Drops every line mentioning wall-clock timing, the only nondeterminism
/// allowed in written reports.
std::string without_timing_lines(const std::string& text) {
    std::istringstream in(text);
    std::string out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("wall_time_ms") == std::string::npos) {
            out += line;
            out += '\n';
        }
    }
    return out;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++count;
    }
    return count;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("infer explains the fired rules of the built-in controller base") {
    const RunResult r = run_cli("infer --u0 4 --psi 35");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("alpha = ") != std::string::npos);
    CHECK(r.output.find("dL = ") != std::string::npos);
    CHECK(r.output.find("dpsi = ") != std::string::npos);
    CHECK(r.output.find("fired rules:") != std::string::npos);
    // At 4 m/s and 35 degrees exactly two rules fire, at 0.25 and 0.75.
    CHECK(count_occurrences(r.output, "-> activation") == 2);
    CHECK(r.output.find("-> activation 0.25") != std::string::npos);
    CHECK(r.output.find("-> activation 0.75") != std::string::npos);
}

TEST_CASE("infer without any input is a usage error") {
    const RunResult r = run_cli("infer");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("no inputs given") != std::string::npos);
}

TEST_CASE("unreadable and malformed rule-base files are usage errors") {
    TempDir tmp;
    const auto bad = tmp.write("broken.json", "{\"variables\": [");

    const RunResult malformed = run_cli("infer --model '" + bad.string() + "' --u0 4 --psi 35");
    CHECK(malformed.exit_code == 1);
    CHECK(malformed.output.find("error:") != std::string::npos);

    const RunResult missing =
        run_cli("infer --model '" + tmp.file("nope.json").string() + "' --u0 4 --psi 35");
    CHECK(missing.exit_code == 1);
}

TEST_CASE("a base whose rules all have weight zero is a runtime error") {
    TempDir tmp;
    RuleBase zeroed = wpp::model_rulebase();
    std::vector<FuzzyRule> rules = zeroed.rules();
    for (auto& rule : rules) rule.weight = 0.0;
    zeroed = zeroed.with_rules(rules);
    const auto path = tmp.file("zeroed.json");
    save_rulebase(path, zeroed);

    const RunResult r = run_cli("infer --model '" + path.string() + "' --u0 4 --psi 35");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("unknown subcommands and flags are usage errors") {
    CHECK(run_cli("bogus").exit_code == 1);
    CHECK(run_cli("infer --uzero 4").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);  // a subcommand is required
}

TEST_CASE("reproduce writes a report and traces, deterministically") {
    TempDir out_a;
    TempDir out_b;
    const std::string args =
        "reproduce --trials 2 --extra 6 --seed 11 --agents 20 --iterations 150";

    const RunResult a = run_cli(args + " --out-dir '" + out_a.file("run").string() + "'");
    CHECK(a.exit_code == 0);
    CHECK(a.output.find("success: ") != std::string::npos);

    const RunResult b = run_cli(args + " --out-dir '" + out_b.file("run").string() + "'");
    CHECK(b.exit_code == 0);

    const auto dir_a = out_a.file("run");
    const auto dir_b = out_b.file("run");
    REQUIRE(std::filesystem::exists(dir_a / "report.json"));
    REQUIRE(std::filesystem::exists(dir_a / "trace_trial_0.csv"));
    REQUIRE(std::filesystem::exists(dir_a / "trace_trial_1.csv"));

    // Traces are byte-identical between runs; the report differs only in
    // wall-clock timing.
    CHECK(read_file(dir_a / "trace_trial_0.csv") == read_file(dir_b / "trace_trial_0.csv"));
    CHECK(read_file(dir_a / "trace_trial_1.csv") == read_file(dir_b / "trace_trial_1.csv"));
    const std::string report_a = read_file(dir_a / "report.json");
    CHECK(without_timing_lines(report_a) == without_timing_lines(read_file(dir_b / "report.json")));
    CHECK(report_a.find("\"seed\": 11") != std::string::npos);
    CHECK(report_a.find("\"seed\": 12") != std::string::npos);
}

TEST_CASE("vmax-sweep reports one arm per requested cap") {
    TempDir tmp;
    const RunResult r = run_cli(
        "vmax-sweep --vmax 0.1 --vmax 1.0 --trials 1 --extra 4 --seed 11 --agents 15 "
        "--iterations 100 --out-dir '" +
        tmp.file("sweep").string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("vmax") != std::string::npos);

    const std::string sweep = read_file(tmp.file("sweep") / "sweep.json");
    CHECK(sweep.find("\"vmax\": 0.1") != std::string::npos);
    CHECK(sweep.find("\"vmax\": 1.0") != std::string::npos);
}

TEST_CASE("optimize recovers weights against an explicit target model") {
    TempDir tmp;
    const RuleBase full = wpp::model_rulebase();
    const RuleBase model =
        full.with_rules({full.rules().begin(), full.rules().begin() + 4});
    const NoisyBase noisy = generate_noisy_base(model, 8, pso::derive_seed(7, 0));
    const auto model_path = tmp.file("model.json");
    const auto noisy_path = tmp.file("noisy.json");
    save_rulebase(model_path, model);
    save_rulebase(noisy_path, noisy.base);

    const RunResult r = run_cli("optimize --model '" + noisy_path.string() +
                                "' --target-model '" + model_path.string() +
                                "' --agents 20 --iterations 300 --seed 11 --out-dir '" +
                                tmp.file("opt").string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("rules in base: 12") != std::string::npos);
    CHECK(r.output.find("best objective: ") != std::string::npos);
    CHECK(std::filesystem::exists(tmp.file("opt") / "optimized_rules.json"));
    CHECK(std::filesystem::exists(tmp.file("opt") / "trace.csv"));
}

TEST_CASE("optimize without a target model is a usage error") {
    const RunResult r = run_cli("optimize --agents 20 --iterations 50");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("needs a target model") != std::string::npos);
}

TEST_CASE("an unknown evaluator in the run config is a usage error") {
    TempDir tmp;
    save_rulebase(tmp.file("model.json"), wpp::model_rulebase());
    const auto cfg = tmp.write(
        "run.json", "{\n  \"variables\": \"model.json\",\n  \"evaluator\": {\"name\": \"nope\"}\n}\n");
    const RunResult r = run_cli("optimize --config '" + cfg.string() + "'");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("unknown evaluator") != std::string::npos);
}

TEST_CASE("run configs with unknown keys are rejected with the key named") {
    TempDir tmp;
    save_rulebase(tmp.file("model.json"), wpp::model_rulebase());
    const auto cfg = tmp.write(
        "run.json", "{\n  \"variables\": \"model.json\",\n  \"pso\": {\"vmxa\": 0.5}\n}\n");
    const RunResult r = run_cli("reproduce --config '" + cfg.string() + "' --trials 1");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("vmxa") != std::string::npos);
}

}
