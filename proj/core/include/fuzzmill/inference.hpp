#ifndef FUZZMILL_INFERENCE_HPP
#define FUZZMILL_INFERENCE_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fuzzmill/rulebase.hpp"

namespace fuzzmill {

/// Fuzzification result for a full input assignment:
/// variable name -> term label -> membership degree.
using Fuzzified = std::map<std::string, std::map<std::string, double>>;

struct InferenceOptions {
    /// Uniform samples per output universe for aggregation and the discrete
    /// centroid. 1001 keeps the centroid error of piecewise-linear shapes
    /// below 0.1% of the universe width.
    std::size_t grid_points = 1001;
};

/// Fuzzifies every declared input variable. Inputs must cover the declared
/// input variables exactly; out-of-universe values are clamped.
Fuzzified fuzzify_inputs(const RuleBase& base, const std::map<std::string, double>& inputs);

/// Clipping level of one rule: weight times the min over antecedent clause
/// degrees. Zero-weight rules always yield 0. Throws ConfigError when the
/// rule references a variable or term absent from `fuzzified`.
double activation(const FuzzyRule& rule, const Fuzzified& fuzzified);

/// Full result of one inference pass, including per-rule clipping levels
/// (aligned with base.rules()) for explainability.
struct InferenceResult {
    std::map<std::string, double> outputs;
    std::vector<double> activations;
};

/// Weighted Mamdani inference over all declared outputs: per-rule min
/// truncation of the consequent terms, pointwise max aggregation on a uniform
/// grid, discrete centroid defuzzification. Throws NoRuleFiredError naming
/// every output with zero aggregated mass.
InferenceResult infer_detailed(const RuleBase& base, const std::map<std::string, double>& inputs,
                               const InferenceOptions& options = {});

/// Same as infer_detailed but returns only the crisp outputs.
std::map<std::string, double> infer(const RuleBase& base,
                                    const std::map<std::string, double>& inputs,
                                    const InferenceOptions& options = {});

} // namespace fuzzmill

#endif // FUZZMILL_INFERENCE_HPP
