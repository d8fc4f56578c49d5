#ifndef FUZZMILL_EXPERIMENT_HPP
#define FUZZMILL_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fuzzmill/pso.hpp"
#include "fuzzmill/rulebase.hpp"
#include "fuzzmill/rulebase_opt.hpp"

namespace fuzzmill {

/// Settings of one multi-trial rule-recovery experiment.
struct ExperimentConfig {
    std::size_t trials = 10;
    std::size_t extra_rules = 184;
    /// Trial i runs under user-facing seed base_seed + i; the noisy-base
    /// generator and the optimizer receive independent derived streams.
    std::uint64_t base_seed = 47;
    pso::PsoParams pso;  ///< seed field is ignored; per-trial seeds are derived
    CutoffPolicy cutoff;
};

struct TrialResult {
    std::uint64_t seed;
    double final_distance;
    /// Iteration at which the best objective first reached exactly 0.
    std::optional<std::size_t> iterations_to_zero;
    double wall_time_ms;
    std::size_t final_rule_count;
    /// Rules present in exactly one of final base and model base.
    std::size_t rules_vs_model;
    pso::SwarmResult swarm;
};

struct ExperimentReport {
    ExperimentConfig params;
    std::vector<TrialResult> trials;
    std::size_t success_count = 0;  ///< trials with final_distance exactly 0

    double success_rate() const {
        return trials.empty() ? 0.0
                              : static_cast<double>(success_count) /
                                    static_cast<double>(trials.size());
    }
};

/// Runs the recovery experiment: per trial, extends `model` with
/// `extra_rules` random rules, then optimizes the rule weights by PSO against
/// the model-distance objective (cutoff per config). Unless the config sets
/// its own PSO target, each trial stops as soon as the distance reaches 0,
/// since 0 is the known optimum; the trace still records the convergence
/// path. Deterministic given config.
ExperimentReport reproduce(const RuleBase& model, const ExperimentConfig& config);

struct VmaxSweepArm {
    double vmax;
    ExperimentReport report;
};

/// reproduce() once per vmax value. All arms share the same per-trial seeds,
/// so they differ only in the speed cap.
std::vector<VmaxSweepArm> vmax_sweep(const RuleBase& model, const ExperimentConfig& config,
                                     const std::vector<double>& vmax_values);

/// Median of iterations_to_zero over successful trials; empty when no trial
/// succeeded. An even count averages the two middle values.
std::optional<double> median_iterations_to_zero(const ExperimentReport& report);

/// JSON text of a report. Wall-time fields appear only when `include_timing`
/// is set, so byte-level determinism comparisons can exclude them.
std::string report_to_json_text(const ExperimentReport& report, bool include_timing);

std::string sweep_to_json_text(const std::vector<VmaxSweepArm>& arms, bool include_timing);

} // namespace fuzzmill

#endif // FUZZMILL_EXPERIMENT_HPP
