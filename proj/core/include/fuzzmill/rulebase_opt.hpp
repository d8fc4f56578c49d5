#ifndef FUZZMILL_RULEBASE_OPT_HPP
#define FUZZMILL_RULEBASE_OPT_HPP

#include <cstdint>
#include <functional>

#include "fuzzmill/pso.hpp"
#include "fuzzmill/rulebase.hpp"

namespace fuzzmill {

/// One significance weight per rule of the owning base, each in [0, 1].
struct WeightVector {
    std::vector<double> weights;
};

/// Rules with weight below `b` are removed from the base (equivalently,
/// their weight is zeroed before scoring).
struct CutoffPolicy {
    double b = 0.5;

    void validate() const;  // 0 < b < 1
};

/// Binary weight vector of the model base: 1 where the rule belongs to the
/// model, 0 where it is noise.
struct ModelTarget {
    std::vector<double> bits;

    void validate() const;  // every entry exactly 0 or 1
};

/// Returns a base containing exactly the rules with weight >= b, each
/// carrying its weight from `w`; order preserved, the input base untouched.
RuleBase apply_weights(const RuleBase& base, const WeightVector& w, const CutoffPolicy& cut);

/// Deviation of a weight vector from the model target: sum over rules of
/// |w_i - target_i| after zeroing every weight below the cutoff.
double model_distance(const WeightVector& w, const ModelTarget& target, const CutoffPolicy& cut);

/// Scores a candidate rule base (as produced by apply_weights).
using RuleBaseEvaluator = std::function<double(const RuleBase&)>;

/// The model-distance evaluator used in the reproduction experiment: maps a
/// candidate base back onto positions of `base0` (the candidate's rules are
/// an order-preserving subsequence; rule contents must be pairwise distinct,
/// which generate_noisy_base guarantees), reconstructs the cut weight vector,
/// and returns model_distance. No inference is involved.
RuleBaseEvaluator model_distance_evaluator(const RuleBase& base0, ModelTarget target,
                                           CutoffPolicy cut);

struct RuleBaseOptimization {
    RuleBase base;            ///< final cut base built from the best weights
    pso::SwarmResult result;  ///< best weights, objective value, trace
};

/// Drives PSO over the [0,1]^m weight cube, scoring each candidate W as
/// evaluator(apply_weights(base0, W, cut)). Evaluator exceptions are rethrown
/// as EvaluatorError carrying the candidate weights.
RuleBaseOptimization optimize_rulebase(const RuleBase& base0, const RuleBaseEvaluator& evaluator,
                                       pso::Direction direction, const CutoffPolicy& cut,
                                       const pso::PsoParams& params);

struct NoisyBase {
    RuleBase base;      ///< model rules (in order) followed by the random rules
    ModelTarget target; ///< 1 for model positions, 0 for the added rules
};

/// Builds the non-optimized experiment base: the model rules plus `extra`
/// random full-grid rules drawn uniformly without replacement from the
/// cross-product of input terms x output terms, excluding exact duplicates
/// of model rules and of each other. All weights are set to 1. Deterministic
/// under `seed` (std::mt19937_64, partial Fisher-Yates over the candidate
/// enumeration). Throws ConfigError when the term space is too small.
NoisyBase generate_noisy_base(const RuleBase& model, std::size_t extra, std::uint64_t seed);

} // namespace fuzzmill

#endif // FUZZMILL_RULEBASE_OPT_HPP
