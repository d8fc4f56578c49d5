#include "fuzzmill/rulebase.hpp"

#include <algorithm>
#include <sstream>

#include "fuzzmill/errors.hpp"

namespace fuzzmill {

namespace {

std::vector<Clause> sorted_by_variable(std::vector<Clause> clauses) {
    std::sort(clauses.begin(), clauses.end(),
              [](const Clause& a, const Clause& b) { return a.variable < b.variable; });
    return clauses;
}

} // namespace

bool same_structure(const FuzzyRule& a, const FuzzyRule& b) {
    if (a.antecedent.size() != b.antecedent.size()) return false;
    if (a.consequent.size() != b.consequent.size()) return false;
    return sorted_by_variable(a.antecedent) == sorted_by_variable(b.antecedent) &&
           sorted_by_variable(a.consequent) == sorted_by_variable(b.consequent);
}

std::string describe(const FuzzyRule& rule) {
    std::ostringstream os;
    os << "IF ";
    for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
        if (i > 0) os << " AND ";
        os << rule.antecedent[i].variable << " is " << rule.antecedent[i].term;
    }
    os << " THEN ";
    for (std::size_t i = 0; i < rule.consequent.size(); ++i) {
        if (i > 0) os << ", ";
        os << rule.consequent[i].variable << " is " << rule.consequent[i].term;
    }
    os << " (weight " << rule.weight << ")";
    return os.str();
}

RuleBase::RuleBase(std::vector<LinguisticVariable> inputs, std::vector<LinguisticVariable> outputs,
                   std::vector<FuzzyRule> rules)
    : decls_(std::make_shared<Declarations>(Declarations{std::move(inputs), std::move(outputs)})),
      rules_(std::move(rules)) {
    std::vector<std::string> seen;
    for (const auto& vars : {decls_->inputs, decls_->outputs}) {
        for (const auto& v : vars) {
            if (std::find(seen.begin(), seen.end(), v.name()) != seen.end()) {
                throw ConfigError("variable '" + v.name() +
                                  "' declared more than once across inputs and outputs");
            }
            seen.push_back(v.name());
        }
    }
    validate_rules();
}

RuleBase::RuleBase(std::shared_ptr<const Declarations> decls, std::vector<FuzzyRule> rules,
                   bool validate)
    : decls_(std::move(decls)), rules_(std::move(rules)) {
    if (validate) validate_rules();
}

void RuleBase::validate_rules() const {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const FuzzyRule& rule = rules_[i];
        const std::string where = "rule " + std::to_string(i) + " (" + describe(rule) + ")";
        if (rule.antecedent.empty()) throw ConfigError(where + ": empty antecedent");
        if (rule.consequent.empty()) throw ConfigError(where + ": empty consequent");
        if (!(rule.weight >= 0.0 && rule.weight <= 1.0)) {
            throw ConfigError(where + ": weight outside [0,1]");
        }
        for (const auto& clause : rule.antecedent) {
            const LinguisticVariable* var = find_input(clause.variable);
            if (!var) {
                throw ConfigError(where + ": unknown input variable '" + clause.variable + "'");
            }
            if (!var->find_term(clause.term)) {
                throw ConfigError(where + ": variable '" + clause.variable + "' has no term '" +
                                  clause.term + "'");
            }
        }
        for (std::size_t c = 0; c < rule.consequent.size(); ++c) {
            const Clause& clause = rule.consequent[c];
            const LinguisticVariable* var = find_output(clause.variable);
            if (!var) {
                throw ConfigError(where + ": unknown output variable '" + clause.variable + "'");
            }
            if (!var->find_term(clause.term)) {
                throw ConfigError(where + ": variable '" + clause.variable + "' has no term '" +
                                  clause.term + "'");
            }
            for (std::size_t d = 0; d < c; ++d) {
                if (rule.consequent[d].variable == clause.variable) {
                    throw ConfigError(where + ": output variable '" + clause.variable +
                                      "' mentioned more than once in the consequent");
                }
            }
        }
    }
}

const LinguisticVariable* RuleBase::find_input(const std::string& name) const {
    for (const auto& v : decls_->inputs) {
        if (v.name() == name) return &v;
    }
    return nullptr;
}

const LinguisticVariable* RuleBase::find_output(const std::string& name) const {
    for (const auto& v : decls_->outputs) {
        if (v.name() == name) return &v;
    }
    return nullptr;
}

RuleBase RuleBase::with_rules(std::vector<FuzzyRule> rules) const {
    return RuleBase(decls_, std::move(rules), /*validate=*/true);
}

RuleBase subset_rules_unchecked(const RuleBase& base, std::vector<FuzzyRule> rules) {
    return RuleBase(base.decls_, std::move(rules), /*validate=*/false);
}

bool operator==(const RuleBase& a, const RuleBase& b) {
    return a.inputs() == b.inputs() && a.outputs() == b.outputs() && a.rules() == b.rules();
}

std::size_t rule_set_difference(const RuleBase& a, const RuleBase& b) {
    std::size_t diff = 0;
    auto count_missing = [](const RuleBase& from, const RuleBase& in) {
        std::size_t n = 0;
        for (const auto& r : from.rules()) {
            const bool found = std::any_of(in.rules().begin(), in.rules().end(),
                                           [&](const FuzzyRule& o) { return same_structure(r, o); });
            if (!found) ++n;
        }
        return n;
    };
    diff += count_missing(a, b);
    diff += count_missing(b, a);
    return diff;
}

} // namespace fuzzmill
