#include "fuzzmill/rulebase_opt.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <memory>
#include <random>
#include <sstream>

#include "fuzzmill/errors.hpp"

namespace fuzzmill {

void CutoffPolicy::validate() const {
    if (!(b > 0.0 && b < 1.0)) {
        std::ostringstream os;
        os << "cutoff must lie strictly between 0 and 1, got " << b;
        throw ConfigError(os.str());
    }
}

void ModelTarget::validate() const {
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0.0 && bits[i] != 1.0) {
            std::ostringstream os;
            os << "target entry " << i << " must be exactly 0 or 1, got " << bits[i];
            throw ConfigError(os.str());
        }
    }
}

RuleBase apply_weights(const RuleBase& base, const WeightVector& w, const CutoffPolicy& cut) {
    cut.validate();
    if (w.weights.size() != base.rules().size()) {
        throw DimensionError("weight vector has " + std::to_string(w.weights.size()) +
                             " entries for a base of " + std::to_string(base.rules().size()) +
                             " rules");
    }
    for (std::size_t i = 0; i < w.weights.size(); ++i) {
        if (!(w.weights[i] >= 0.0 && w.weights[i] <= 1.0)) {
            throw ConfigError("weight " + std::to_string(i) + " is outside [0,1]");
        }
    }
    std::vector<FuzzyRule> kept;
    kept.reserve(base.rules().size());
    for (std::size_t i = 0; i < base.rules().size(); ++i) {
        if (w.weights[i] >= cut.b) {
            kept.push_back(base.rules()[i]);
            kept.back().weight = w.weights[i];
        }
    }
    return subset_rules_unchecked(base, std::move(kept));
}

double model_distance(const WeightVector& w, const ModelTarget& target, const CutoffPolicy& cut) {
    cut.validate();
    target.validate();
    if (w.weights.size() != target.bits.size()) {
        throw DimensionError("weight vector has " + std::to_string(w.weights.size()) +
                             " entries but the target has " + std::to_string(target.bits.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < w.weights.size(); ++i) {
        const double cutoff_weight = w.weights[i] >= cut.b ? w.weights[i] : 0.0;
        sum += std::abs(cutoff_weight - target.bits[i]);
    }
    return sum;
}

RuleBaseEvaluator model_distance_evaluator(const RuleBase& base0, ModelTarget target,
                                           CutoffPolicy cut) {
    cut.validate();
    target.validate();
    if (target.bits.size() != base0.rules().size()) {
        throw DimensionError("target has " + std::to_string(target.bits.size()) +
                             " entries for a base of " + std::to_string(base0.rules().size()) +
                             " rules");
    }
    // Copy the original rules so the evaluator stays valid independently of
    // the caller's base0 lifetime.
    auto original = std::make_shared<const std::vector<FuzzyRule>>(base0.rules());
    return [original, target = std::move(target), cut](const RuleBase& candidate) {
        const std::vector<FuzzyRule>& rules = *original;
        // The candidate's rules are verbatim copies of a subset of `rules`
        // in the same order, so a single forward walk recovers positions.
        WeightVector cut_weights;
        cut_weights.weights.assign(rules.size(), 0.0);
        std::size_t j = 0;
        for (const auto& rule : candidate.rules()) {
            while (j < rules.size() && !(rules[j].antecedent == rule.antecedent &&
                                         rules[j].consequent == rule.consequent)) {
                ++j;
            }
            if (j == rules.size()) {
                throw ConfigError("candidate rule not found in the original base: " +
                                  describe(rule));
            }
            cut_weights.weights[j] = rule.weight;
            ++j;
        }
        return model_distance(cut_weights, target, cut);
    };
}

RuleBaseOptimization optimize_rulebase(const RuleBase& base0, const RuleBaseEvaluator& evaluator,
                                       pso::Direction direction, const CutoffPolicy& cut,
                                       const pso::PsoParams& params) {
    if (base0.rules().empty()) throw ConfigError("cannot optimize an empty rule base");
    cut.validate();

    const pso::Objective objective = [&](const std::vector<double>& x) {
        const RuleBase candidate = apply_weights(base0, WeightVector{x}, cut);
        try {
            return evaluator(candidate);
        } catch (const std::exception& e) {
            throw EvaluatorError(std::string("evaluator failed: ") + e.what(), x);
        }
    };

    const pso::Bounds bounds = pso::Bounds::cube(base0.rules().size(), 0.0, 1.0);
    pso::SwarmResult result = pso::optimize(objective, direction, bounds, params);
    RuleBase final_base = apply_weights(base0, WeightVector{result.best_position}, cut);
    return RuleBaseOptimization{std::move(final_base), std::move(result)};
}

NoisyBase generate_noisy_base(const RuleBase& model, std::size_t extra, std::uint64_t seed) {
    // Enumerate the full-grid rule space: one clause per input variable and
    // one per output variable, last variable's term index moving fastest.
    std::vector<const LinguisticVariable*> vars;
    for (const auto& v : model.inputs()) vars.push_back(&v);
    for (const auto& v : model.outputs()) vars.push_back(&v);
    const std::size_t input_count = model.inputs().size();

    std::vector<FuzzyRule> candidates;
    std::vector<std::size_t> index(vars.size(), 0);
    bool exhausted = false;
    while (!exhausted) {
        FuzzyRule rule;
        rule.weight = 1.0;
        for (std::size_t v = 0; v < vars.size(); ++v) {
            Clause clause{vars[v]->name(), vars[v]->terms()[index[v]].first};
            (v < input_count ? rule.antecedent : rule.consequent).push_back(std::move(clause));
        }
        const bool duplicate =
            std::any_of(model.rules().begin(), model.rules().end(),
                        [&](const FuzzyRule& m) { return same_structure(m, rule); });
        if (!duplicate) candidates.push_back(std::move(rule));

        std::size_t v = vars.size();
        while (true) {
            if (v == 0) {
                exhausted = true;
                break;
            }
            --v;
            if (++index[v] < vars[v]->terms().size()) break;
            index[v] = 0;
        }
    }
    if (candidates.size() < extra) {
        throw ConfigError("term space admits only " + std::to_string(candidates.size()) +
                          " distinct non-model rules, cannot add " + std::to_string(extra));
    }

    // Uniform sample without replacement: partial Fisher-Yates over the
    // enumeration, driven by the same 53-bit uniform draws the optimizer uses.
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (std::size_t i = 0; i < extra; ++i) {
        const std::size_t remaining = candidates.size() - i;
        std::size_t offset = static_cast<std::size_t>(uniform() * static_cast<double>(remaining));
        if (offset >= remaining) offset = remaining - 1;
        std::swap(candidates[i], candidates[i + offset]);
    }

    std::vector<FuzzyRule> rules;
    rules.reserve(model.rules().size() + extra);
    for (const auto& r : model.rules()) {
        rules.push_back(r);
        rules.back().weight = 1.0;
    }
    rules.insert(rules.end(), std::make_move_iterator(candidates.begin()),
                 std::make_move_iterator(candidates.begin() + static_cast<std::ptrdiff_t>(extra)));

    ModelTarget target;
    target.bits.assign(rules.size(), 0.0);
    std::fill(target.bits.begin(), target.bits.begin() + static_cast<std::ptrdiff_t>(model.rules().size()),
              1.0);

    NoisyBase out{subset_rules_unchecked(model, std::move(rules)), std::move(target)};
    return out;
}

} // namespace fuzzmill
