#ifndef FUZZMILL_JSON_IO_HPP
#define FUZZMILL_JSON_IO_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fuzzmill/pso.hpp"
#include "fuzzmill/rulebase.hpp"

namespace fuzzmill {

/// Rule-base document schema (JSON):
///
///   {
///     "variables": [ {"name": "psi",
///                     "universe": [0.0, 90.0],
///                     "terms": {"Z": [[0,1],[20,0]], ...}}, ... ],
///     "inputs":  ["u0", "psi"],
///     "outputs": ["alpha", "dL", "dpsi"],
///     "rules":   [ {"if": {"u0": "N", "psi": "Z"},
///                   "then": {"alpha": "Z", "dL": "L", "dpsi": "Z"},
///                   "weight": 1.0}, ... ]
///   }
///
/// Term order and rule order are significant (rule order defines weight-vector
/// positions) and are preserved exactly through parse/serialize. Numbers use
/// plain decimal notation. A missing rule "weight" defaults to 1. Unknown keys
/// in rule-base documents are ignored, so files may carry annotations.

/// Serializes a rule base to schema text (2-space indent, trailing newline).
std::string rulebase_to_json_text(const RuleBase& base);

/// Parses schema text. `origin` names the source in diagnostics (typically a
/// file path); parse errors report origin:line.
RuleBase rulebase_from_json_text(const std::string& text, const std::string& origin = "<string>");

/// Loads a complete rule-base document from one file.
RuleBase load_rulebase(const std::filesystem::path& file);

/// Loads declarations (variables/inputs/outputs) from `variables_file` and
/// the "rules" array from `rules_file`; the two may be the same file. Rules
/// are validated against the declarations of `variables_file`.
RuleBase load_rulebase(const std::filesystem::path& variables_file,
                       const std::filesystem::path& rules_file);

void save_rulebase(const std::filesystem::path& file, const RuleBase& base);

/// Multi-trial reproduction settings.
struct ExperimentSettings {
    std::size_t trials = 10;
    std::size_t extra_rules = 184;
    /// Trial i runs with seed base_seed + i, so reports cite reproducible
    /// per-trial seeds.
    std::uint64_t base_seed = 47;

    void validate() const;  // trials >= 1
};

/// Run configuration consumed by the CLI:
///
///   {
///     "variables": "wpp_default.json",      // required; paths resolve
///     "rules": "wpp_default.json",          // optional, defaults to variables
///     "pso": {"alpha1": 1.5, "alpha2": 1.5, "omega": 0.729, "vmax": 0.1,
///             "agents": 50, "iterations": 1000, "seed": 0,
///             "target": 0.0, "stagnation_window": 100},   // all optional
///     "cutoff": 0.5,
///     "grid_points": 1001,
///     "experiment": {"trials": 10, "extra_rules": 184, "base_seed": 47},
///     "evaluator": {"name": "model-distance", "model": "model.json"}
///   }
///
/// Relative paths are resolved against the config file's directory. Unknown
/// keys anywhere in a run config are rejected (typo protection: a misspelled
/// parameter silently falling back to its default would corrupt results).
struct RunConfig {
    std::filesystem::path variables_file;
    std::filesystem::path rules_file;
    pso::PsoParams pso;
    double cutoff = 0.5;
    std::size_t grid_points = 1001;
    ExperimentSettings experiment;
    std::string evaluator_name = "model-distance";
    std::optional<std::filesystem::path> evaluator_model;

    /// Loads the configured rule base (declarations from variables_file,
    /// rules from rules_file).
    RuleBase load_rules() const;
};

/// Parses and validates a run config; checks that the referenced files exist.
RunConfig load_run_config(const std::filesystem::path& file);

} // namespace fuzzmill

#endif // FUZZMILL_JSON_IO_HPP
