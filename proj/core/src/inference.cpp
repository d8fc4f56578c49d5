#include "fuzzmill/inference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fuzzmill/errors.hpp"

namespace fuzzmill {

Fuzzified fuzzify_inputs(const RuleBase& base, const std::map<std::string, double>& inputs) {
    for (const auto& [name, value] : inputs) {
        if (!base.find_input(name)) {
            throw ConfigError("'" + name + "' is not a declared input variable");
        }
        if (!std::isfinite(value)) {
            throw ConfigError("input '" + name + "' is not finite");
        }
    }
    Fuzzified out;
    for (const auto& var : base.inputs()) {
        auto it = inputs.find(var.name());
        if (it == inputs.end()) {
            throw ConfigError("no value supplied for input variable '" + var.name() + "'");
        }
        auto& degrees = out[var.name()];
        for (const auto& td : var.fuzzify(it->second)) {
            degrees[td.term] = td.degree;
        }
    }
    return out;
}

double activation(const FuzzyRule& rule, const Fuzzified& fuzzified) {
    if (rule.weight == 0.0) return 0.0;
    double level = 1.0;
    for (const auto& clause : rule.antecedent) {
        auto var = fuzzified.find(clause.variable);
        if (var == fuzzified.end()) {
            throw ConfigError("rule (" + describe(rule) + ") references variable '" +
                              clause.variable + "' with no fuzzified value");
        }
        auto term = var->second.find(clause.term);
        if (term == var->second.end()) {
            throw ConfigError("rule (" + describe(rule) + ") references unknown term '" +
                              clause.term + "' of variable '" + clause.variable + "'");
        }
        level = std::min(level, term->second);
    }
    return rule.weight * level;
}

InferenceResult infer_detailed(const RuleBase& base, const std::map<std::string, double>& inputs,
                               const InferenceOptions& options) {
    if (options.grid_points < 2) {
        throw ConfigError("defuzzification grid needs at least 2 points");
    }
    const Fuzzified fuzzified = fuzzify_inputs(base, inputs);

    InferenceResult result;
    result.activations.reserve(base.rules().size());
    for (const auto& rule : base.rules()) {
        result.activations.push_back(activation(rule, fuzzified));
    }

    std::vector<std::string> silent_outputs;
    for (const auto& output : base.outputs()) {
        // Rules contributing to this output, with their clipping levels.
        std::vector<std::pair<const MembershipFunction*, double>> clipped;
        for (std::size_t i = 0; i < base.rules().size(); ++i) {
            for (const auto& clause : base.rules()[i].consequent) {
                if (clause.variable == output.name()) {
                    clipped.emplace_back(output.find_term(clause.term), result.activations[i]);
                }
            }
        }

        const std::size_t n = options.grid_points;
        const double lo = output.lo();
        const double width = output.hi() - output.lo();
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = lo + width * static_cast<double>(i) / static_cast<double>(n - 1);
            double mu = 0.0;
            for (const auto& [mf, level] : clipped) {
                mu = std::max(mu, std::min(level, (*mf)(x)));
            }
            num += x * mu;
            den += mu;
        }
        if (den == 0.0) {
            silent_outputs.push_back(output.name());
            continue;
        }
        result.outputs[output.name()] = std::clamp(num / den, output.lo(), output.hi());
    }

    if (!silent_outputs.empty()) {
        std::ostringstream os;
        os << "no rule fired for output";
        os << (silent_outputs.size() > 1 ? "s" : "");
        for (std::size_t i = 0; i < silent_outputs.size(); ++i) {
            os << (i == 0 ? " '" : ", '") << silent_outputs[i] << "'";
        }
        throw NoRuleFiredError(os.str(), std::move(silent_outputs));
    }
    return result;
}

std::map<std::string, double> infer(const RuleBase& base,
                                    const std::map<std::string, double>& inputs,
                                    const InferenceOptions& options) {
    return infer_detailed(base, inputs, options).outputs;
}

} // namespace fuzzmill
