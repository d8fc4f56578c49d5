#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "fuzzmill/errors.hpp"
#include "fuzzmill/experiment.hpp"
#include "fuzzmill/inference.hpp"
#include "fuzzmill/json_io.hpp"
#include "fuzzmill/pso.hpp"
#include "fuzzmill/rulebase_opt.hpp"
#include "fuzzmill/wpp.hpp"

namespace {

using namespace fuzzmill;

// Exit codes: 0 success, 1 usage or configuration error, 2 runtime error
// (no rule fired, non-finite objective, evaluator failure).
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct CommonOpts {
    std::string config_path;
    std::string model_path;
    std::string variables_path;
    std::string rules_path;
    std::optional<double> alpha1, alpha2, omega, vmax, cutoff;
    std::optional<std::size_t> agents, iterations, grid, trials, extra;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
};

void add_source_flags(CLI::App* cmd, CommonOpts& o) {
    auto* config = cmd->add_option("--config", o.config_path, "Run-config JSON file");
    auto* model =
        cmd->add_option("--model", o.model_path, "Rule-base JSON file (variables + rules)");
    auto* vars = cmd->add_option("--variables", o.variables_path,
                                 "JSON file supplying variables/inputs/outputs");
    auto* rules = cmd->add_option(
        "--rules", o.rules_path, "JSON file supplying the rules (declarations from --variables)");
    rules->needs(vars);
    model->excludes(vars)->excludes(rules)->excludes(config);
}

void add_engine_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--alpha1", o.alpha1, "Cognitive gain");
    cmd->add_option("--alpha2", o.alpha2, "Social gain");
    cmd->add_option("--omega", o.omega, "Inertia weight");
    cmd->add_option("--agents", o.agents, "Swarm size");
    cmd->add_option("--iterations", o.iterations, "Iteration budget");
    cmd->add_option("--cutoff", o.cutoff, "Rule-weight cutoff b in (0,1)");
}

/// Config defaults overridden by command-line flags. The seed flag is applied
/// per command (optimizer seed vs. experiment base seed).
RunConfig effective_config(const CommonOpts& o) {
    RunConfig cfg;
    if (!o.config_path.empty()) cfg = load_run_config(o.config_path);
    if (o.alpha1) cfg.pso.alpha1 = *o.alpha1;
    if (o.alpha2) cfg.pso.alpha2 = *o.alpha2;
    if (o.omega) cfg.pso.omega = *o.omega;
    if (o.vmax) cfg.pso.vmax = *o.vmax;
    if (o.agents) cfg.pso.agents = *o.agents;
    if (o.iterations) cfg.pso.max_iters = *o.iterations;
    if (o.cutoff) cfg.cutoff = *o.cutoff;
    if (o.grid) cfg.grid_points = *o.grid;
    if (o.trials) cfg.experiment.trials = *o.trials;
    if (o.extra) cfg.experiment.extra_rules = *o.extra;
    cfg.pso.validate();
    CutoffPolicy{cfg.cutoff}.validate();
    if (cfg.grid_points < 2) throw ConfigError("grid points must be at least 2");
    cfg.experiment.validate();
    return cfg;
}

/// Explicit file flags win over the config; with no source at all, the
/// built-in wind-power-plant controller base is used.
RuleBase resolve_base(const RunConfig& cfg, const CommonOpts& o) {
    if (!o.model_path.empty()) return load_rulebase(o.model_path);
    if (!o.variables_path.empty()) {
        return load_rulebase(o.variables_path,
                             o.rules_path.empty() ? o.variables_path : o.rules_path);
    }
    if (!cfg.variables_file.empty()) return cfg.load_rules();
    return wpp::model_rulebase();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw ConfigError("error while writing " + path.string());
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
    const std::filesystem::path path(dir);
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw ConfigError("cannot create " + path.string() + ": " + ec.message());
    return path;
}

std::string trace_to_csv(const std::vector<pso::TracePoint>& trace) {
    std::ostringstream os;
    pso::write_trace_csv(os, trace);
    return std::move(os).str();
}

std::map<std::string, double> parse_inputs(const std::vector<std::string>& assignments,
                                           const std::optional<double>& u0,
                                           const std::optional<double>& psi) {
    std::map<std::string, double> inputs;
    if (u0) inputs["u0"] = *u0;
    if (psi) inputs["psi"] = *psi;
    for (const auto& text : assignments) {
        const auto eq = text.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("--in expects name=value, got \"" + text + "\"");
        }
        const std::string name = text.substr(0, eq);
        const std::string value = text.substr(eq + 1);
        try {
            std::size_t used = 0;
            const double parsed = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            inputs[name] = parsed;
        } catch (const std::exception&) {
            throw ConfigError("--in " + name + ": \"" + value + "\" is not a number");
        }
    }
    if (inputs.empty()) {
        throw ConfigError("no inputs given (use --u0/--psi or --in name=value)");
    }
    return inputs;
}

int run_infer(const RunConfig& cfg, const CommonOpts& o,
              const std::map<std::string, double>& inputs) {
    const RuleBase base = resolve_base(cfg, o);
    const InferenceOptions options{cfg.grid_points};
    const InferenceResult result = infer_detailed(base, inputs, options);

    for (const auto& var : base.outputs()) {
        std::cout << var.name() << " = " << result.outputs.at(var.name()) << "\n";
    }
    std::cout << "fired rules:\n";
    for (std::size_t i = 0; i < base.rules().size(); ++i) {
        if (result.activations[i] > 0.0) {
            std::cout << "  [" << i << "] " << describe(base.rules()[i]) << " -> activation "
                      << result.activations[i] << "\n";
        }
    }
    return kExitOk;
}

/// Target bits for a base: 1 where the rule also appears in `model`.
ModelTarget target_from_model(const RuleBase& base, const RuleBase& model) {
    ModelTarget target;
    target.bits.reserve(base.rules().size());
    for (const auto& rule : base.rules()) {
        const bool in_model =
            std::any_of(model.rules().begin(), model.rules().end(),
                        [&](const FuzzyRule& m) { return same_structure(m, rule); });
        target.bits.push_back(in_model ? 1.0 : 0.0);
    }
    return target;
}

int run_optimize(const RunConfig& cfg, const CommonOpts& o, const std::string& target_model) {
    const RuleBase base0 = resolve_base(cfg, o);
    if (cfg.evaluator_name != "model-distance") {
        throw ConfigError("unknown evaluator \"" + cfg.evaluator_name +
                          "\" (available: model-distance)");
    }
    std::string model_path = target_model;
    if (model_path.empty() && cfg.evaluator_model) model_path = cfg.evaluator_model->string();
    if (model_path.empty()) {
        throw ConfigError(
            "the model-distance evaluator needs a target model "
            "(--target-model or the config's evaluator.model)");
    }
    for (std::size_t i = 0; i < base0.rules().size(); ++i) {
        for (std::size_t k = i + 1; k < base0.rules().size(); ++k) {
            if (same_structure(base0.rules()[i], base0.rules()[k])) {
                throw ConfigError("rules " + std::to_string(i) + " and " + std::to_string(k) +
                                  " state the same propositions; the model-distance evaluator "
                                  "needs pairwise distinct rules");
            }
        }
    }

    const RuleBase model = load_rulebase(model_path);
    const ModelTarget target = target_from_model(base0, model);
    std::size_t ones = 0;
    for (const double bit : target.bits) ones += bit == 1.0 ? 1 : 0;
    if (ones < model.rules().size()) {
        std::cout << "note: " << (model.rules().size() - ones)
                  << " model rule(s) do not occur in the base; distance 0 is unreachable\n";
    }

    const CutoffPolicy cut{cfg.cutoff};
    pso::PsoParams params = cfg.pso;
    if (o.seed) params.seed = *o.seed;
    const RuleBaseEvaluator evaluator = model_distance_evaluator(base0, target, cut);
    const RuleBaseOptimization opt =
        optimize_rulebase(base0, evaluator, pso::Direction::minimize, cut, params);

    std::cout << "rules in base: " << base0.rules().size() << "\n"
              << "best objective: " << opt.result.best_value << "\n"
              << "final rule count: " << opt.base.rules().size() << "\n"
              << "iterations run: " << opt.result.iterations_run << " (stop: "
              << pso::to_string(opt.result.stop_reason) << ")\n";

    if (!o.out_dir.empty()) {
        const auto dir = prepare_out_dir(o.out_dir);
        save_rulebase(dir / "optimized_rules.json", opt.base);
        write_file(dir / "trace.csv", trace_to_csv(opt.result.trace));
        std::cout << "wrote " << (dir / "optimized_rules.json").string() << " and "
                  << (dir / "trace.csv").string() << "\n";
    }
    return kExitOk;
}

void print_report(const ExperimentReport& report) {
    std::cout << "trial      seed  distance  iters_to_zero  rules  vs_model  time_ms\n";
    for (std::size_t i = 0; i < report.trials.size(); ++i) {
        const TrialResult& t = report.trials[i];
        std::cout << std::setw(5) << i << std::setw(10) << t.seed << std::setw(10)
                  << t.final_distance << std::setw(15)
                  << (t.iterations_to_zero ? std::to_string(*t.iterations_to_zero)
                                           : std::string("-"))
                  << std::setw(7) << t.final_rule_count << std::setw(10) << t.rules_vs_model
                  << std::setw(9) << std::fixed << std::setprecision(1) << t.wall_time_ms
                  << "\n";
        std::cout.unsetf(std::ios_base::floatfield);
        std::cout << std::setprecision(6);
    }
    std::cout << "success: " << report.success_count << "/" << report.trials.size() << " (rate "
              << report.success_rate() << ")\n";
    if (const auto median = median_iterations_to_zero(report)) {
        std::cout << "median iterations to zero: " << *median << "\n";
    }
}

ExperimentConfig experiment_config(const RunConfig& cfg, const CommonOpts& o) {
    ExperimentConfig ec;
    ec.trials = cfg.experiment.trials;
    ec.extra_rules = cfg.experiment.extra_rules;
    ec.base_seed = o.seed ? *o.seed : cfg.experiment.base_seed;
    ec.pso = cfg.pso;
    ec.cutoff = CutoffPolicy{cfg.cutoff};
    return ec;
}

int run_reproduce(const RunConfig& cfg, const CommonOpts& o) {
    const RuleBase model = resolve_base(cfg, o);
    const ExperimentConfig ec = experiment_config(cfg, o);
    const ExperimentReport report = reproduce(model, ec);
    print_report(report);

    if (!o.out_dir.empty()) {
        const auto dir = prepare_out_dir(o.out_dir);
        write_file(dir / "report.json", report_to_json_text(report, /*include_timing=*/true));
        for (std::size_t i = 0; i < report.trials.size(); ++i) {
            write_file(dir / ("trace_trial_" + std::to_string(i) + ".csv"),
                       trace_to_csv(report.trials[i].swarm.trace));
        }
        std::cout << "wrote report and " << report.trials.size() << " trace file(s) to "
                  << dir.string() << "\n";
    }
    return kExitOk;
}

int run_vmax_sweep(const RunConfig& cfg, const CommonOpts& o,
                   const std::vector<double>& vmax_values) {
    const RuleBase model = resolve_base(cfg, o);
    const ExperimentConfig ec = experiment_config(cfg, o);
    const std::vector<VmaxSweepArm> arms = vmax_sweep(model, ec, vmax_values);

    std::cout << "  vmax  success   rate  median_iters_to_zero\n";
    for (const auto& arm : arms) {
        std::cout << std::setw(6) << arm.vmax << std::setw(6) << arm.report.success_count << "/"
                  << arm.report.trials.size() << std::setw(7) << arm.report.success_rate();
        if (const auto median = median_iterations_to_zero(arm.report)) {
            std::cout << std::setw(22) << *median;
        } else {
            std::cout << std::setw(22) << "-";
        }
        std::cout << "\n";
    }

    if (!o.out_dir.empty()) {
        const auto dir = prepare_out_dir(o.out_dir);
        write_file(dir / "sweep.json", sweep_to_json_text(arms, /*include_timing=*/true));
        std::cout << "wrote " << (dir / "sweep.json").string() << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted Mamdani fuzzy inference and PSO rule-base optimization"};
    app.require_subcommand(1);

    CommonOpts infer_opts;
    std::optional<double> in_u0, in_psi;
    std::vector<std::string> in_assignments;
    CLI::App* infer_cmd = app.add_subcommand("infer", "Run one inference pass and explain it");
    add_source_flags(infer_cmd, infer_opts);
    infer_cmd->add_option("--u0", in_u0, "Wind speed input, m/s");
    infer_cmd->add_option("--psi", in_psi, "Wind-nacelle angle input, degrees");
    infer_cmd->add_option("--in", in_assignments, "Generic input as name=value (repeatable)");
    infer_cmd->add_option("--grid", infer_opts.grid, "Defuzzification grid points");

    CommonOpts opt_opts;
    std::string opt_target_model;
    CLI::App* optimize_cmd =
        app.add_subcommand("optimize", "Optimize rule weights against the configured evaluator");
    add_source_flags(optimize_cmd, opt_opts);
    add_engine_flags(optimize_cmd, opt_opts);
    optimize_cmd->add_option("--vmax", opt_opts.vmax, "Velocity cap");
    optimize_cmd->add_option("--seed", opt_opts.seed, "Optimizer seed");
    optimize_cmd->add_option("--target-model", opt_target_model,
                             "Rule-base JSON naming the rules the optimum should keep");
    optimize_cmd->add_option("--out-dir", opt_opts.out_dir,
                             "Write optimized_rules.json and trace.csv here");

    CommonOpts rep_opts;
    CLI::App* reproduce_cmd = app.add_subcommand(
        "reproduce", "Multi-trial recovery of a model base from a noisy base");
    add_source_flags(reproduce_cmd, rep_opts);
    add_engine_flags(reproduce_cmd, rep_opts);
    reproduce_cmd->add_option("--vmax", rep_opts.vmax, "Velocity cap");
    reproduce_cmd->add_option("--trials", rep_opts.trials, "Number of trials");
    reproduce_cmd->add_option("--extra", rep_opts.extra, "Random rules added to the model base");
    reproduce_cmd->add_option("--seed", rep_opts.seed, "Base seed (trial i uses seed+i)");
    reproduce_cmd->add_option("--out-dir", rep_opts.out_dir,
                              "Write report.json and per-trial trace CSVs here");

    CommonOpts sweep_opts;
    std::vector<double> sweep_values;
    CLI::App* sweep_cmd =
        app.add_subcommand("vmax-sweep", "Compare success rates across vmax values");
    add_source_flags(sweep_cmd, sweep_opts);
    add_engine_flags(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--vmax", sweep_values, "Velocity cap to test (repeatable)")
        ->required();
    sweep_cmd->add_option("--trials", sweep_opts.trials, "Number of trials per arm");
    sweep_cmd->add_option("--extra", sweep_opts.extra, "Random rules added to the model base");
    sweep_cmd->add_option("--seed", sweep_opts.seed, "Base seed shared by all arms");
    sweep_cmd->add_option("--out-dir", sweep_opts.out_dir, "Write sweep.json here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (infer_cmd->parsed()) {
            return run_infer(effective_config(infer_opts), infer_opts,
                             parse_inputs(in_assignments, in_u0, in_psi));
        }
        if (optimize_cmd->parsed()) {
            return run_optimize(effective_config(opt_opts), opt_opts, opt_target_model);
        }
        if (reproduce_cmd->parsed()) {
            return run_reproduce(effective_config(rep_opts), rep_opts);
        }
        if (sweep_cmd->parsed()) {
            return run_vmax_sweep(effective_config(sweep_opts), sweep_opts, sweep_values);
        }
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NoRuleFiredError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
