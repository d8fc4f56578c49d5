#include "fuzzmill/experiment.hpp"

#include <algorithm>
#include <chrono>

#include <json.hpp>

#include "fuzzmill/errors.hpp"

namespace fuzzmill {

namespace {

using nlohmann::ordered_json;

TrialResult run_trial(const RuleBase& model, const ExperimentConfig& config,
                      std::uint64_t trial_seed) {
    const NoisyBase noisy =
        generate_noisy_base(model, config.extra_rules, pso::derive_seed(trial_seed, 0));

    pso::PsoParams params = config.pso;
    params.seed = pso::derive_seed(trial_seed, 1);
    if (!params.target) params.target = 0.0;

    const RuleBaseEvaluator evaluator =
        model_distance_evaluator(noisy.base, noisy.target, config.cutoff);

    const auto t0 = std::chrono::steady_clock::now();
    RuleBaseOptimization opt = optimize_rulebase(noisy.base, evaluator, pso::Direction::minimize,
                                                 config.cutoff, params);
    const auto t1 = std::chrono::steady_clock::now();

    TrialResult trial;
    trial.seed = trial_seed;
    trial.final_distance = opt.result.best_value;
    for (const auto& point : opt.result.trace) {
        if (point.best_objective == 0.0) {
            trial.iterations_to_zero = point.iteration;
            break;
        }
    }
    trial.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    trial.final_rule_count = opt.base.rules().size();
    trial.rules_vs_model = rule_set_difference(opt.base, model);
    trial.swarm = std::move(opt.result);
    return trial;
}

} // namespace

ExperimentReport reproduce(const RuleBase& model, const ExperimentConfig& config) {
    config.pso.validate();
    config.cutoff.validate();
    if (config.trials < 1) throw ConfigError("experiment needs at least 1 trial");

    ExperimentReport report;
    report.params = config;
    report.trials.reserve(config.trials);
    for (std::size_t i = 0; i < config.trials; ++i) {
        try {
            report.trials.push_back(run_trial(model, config, config.base_seed + i));
        } catch (const Error& e) {
            throw ConfigError("trial " + std::to_string(i) + " (seed " +
                              std::to_string(config.base_seed + i) + ") failed: " + e.what());
        }
        if (report.trials.back().final_distance == 0.0) ++report.success_count;
    }
    return report;
}

std::vector<VmaxSweepArm> vmax_sweep(const RuleBase& model, const ExperimentConfig& config,
                                     const std::vector<double>& vmax_values) {
    if (vmax_values.empty()) throw ConfigError("vmax sweep needs at least one vmax value");
    std::vector<VmaxSweepArm> arms;
    arms.reserve(vmax_values.size());
    for (const double vmax : vmax_values) {
        ExperimentConfig arm_config = config;
        arm_config.pso.vmax = vmax;
        arms.push_back({vmax, reproduce(model, arm_config)});
    }
    return arms;
}

std::optional<double> median_iterations_to_zero(const ExperimentReport& report) {
    std::vector<double> hits;
    for (const auto& trial : report.trials) {
        if (trial.iterations_to_zero) hits.push_back(static_cast<double>(*trial.iterations_to_zero));
    }
    if (hits.empty()) return std::nullopt;
    std::sort(hits.begin(), hits.end());
    const std::size_t mid = hits.size() / 2;
    if (hits.size() % 2 == 1) return hits[mid];
    return (hits[mid - 1] + hits[mid]) / 2.0;
}

namespace {

ordered_json params_to_json(const ExperimentConfig& config) {
    ordered_json j;
    j["trials"] = config.trials;
    j["extra_rules"] = config.extra_rules;
    j["base_seed"] = config.base_seed;
    j["cutoff"] = config.cutoff.b;
    ordered_json p;
    p["alpha1"] = config.pso.alpha1;
    p["alpha2"] = config.pso.alpha2;
    p["omega"] = config.pso.omega;
    p["vmax"] = config.pso.vmax;
    p["agents"] = config.pso.agents;
    p["iterations"] = config.pso.max_iters;
    j["pso"] = std::move(p);
    return j;
}

ordered_json report_to_json(const ExperimentReport& report, bool include_timing) {
    ordered_json j;
    j["params"] = params_to_json(report.params);
    auto trials = ordered_json::array();
    for (const auto& trial : report.trials) {
        ordered_json t;
        t["seed"] = trial.seed;
        t["final_distance"] = trial.final_distance;
        if (trial.iterations_to_zero) {
            t["iterations_to_zero"] = *trial.iterations_to_zero;
        } else {
            t["iterations_to_zero"] = nullptr;
        }
        if (include_timing) t["wall_time_ms"] = trial.wall_time_ms;
        t["final_rule_count"] = trial.final_rule_count;
        t["rules_vs_model"] = trial.rules_vs_model;
        t["iterations_run"] = trial.swarm.iterations_run;
        t["stop_reason"] = pso::to_string(trial.swarm.stop_reason);
        trials.push_back(std::move(t));
    }
    j["trials"] = std::move(trials);
    j["success_count"] = report.success_count;
    j["success_rate"] = report.success_rate();
    if (const auto median = median_iterations_to_zero(report)) {
        j["median_iterations_to_zero"] = *median;
    } else {
        j["median_iterations_to_zero"] = nullptr;
    }
    return j;
}

} // namespace

std::string report_to_json_text(const ExperimentReport& report, bool include_timing) {
    return report_to_json(report, include_timing).dump(2) + "\n";
}

std::string sweep_to_json_text(const std::vector<VmaxSweepArm>& arms, bool include_timing) {
    auto j = ordered_json::array();
    for (const auto& arm : arms) {
        ordered_json a;
        a["vmax"] = arm.vmax;
        a["success_count"] = arm.report.success_count;
        a["trials"] = arm.report.trials.size();
        a["success_rate"] = arm.report.success_rate();
        a["report"] = report_to_json(arm.report, include_timing);
        j.push_back(std::move(a));
    }
    ordered_json doc;
    doc["arms"] = std::move(j);
    return doc.dump(2) + "\n";
}

} // namespace fuzzmill
