#ifndef FUZZMILL_RULEBASE_HPP
#define FUZZMILL_RULEBASE_HPP

#include <memory>
#include <string>
#include <vector>

#include "fuzzmill/membership.hpp"

namespace fuzzmill {

/// One "variable is term" proposition.
struct Clause {
    std::string variable;
    std::string term;
    friend bool operator==(const Clause&, const Clause&) = default;
};

/// A weighted Mamdani rule: conjunctive antecedent over input variables,
/// one consequent clause per mentioned output variable, weight in [0, 1].
struct FuzzyRule {
    std::vector<Clause> antecedent;
    std::vector<Clause> consequent;
    double weight = 1.0;
    friend bool operator==(const FuzzyRule&, const FuzzyRule&) = default;
};

/// True when two rules state the same propositions (clause order and weight
/// are ignored); this is the identity used for duplicate detection and for
/// comparing an optimized base against a model base.
bool same_structure(const FuzzyRule& a, const FuzzyRule& b);

/// Human-readable "IF ... THEN ..." form, used in diagnostics and the CLI.
std::string describe(const FuzzyRule& rule);

/// Immutable rule base: declared input and output variables plus the rule
/// list. Construction validates every rule against the declarations; rule
/// order is significant (it defines weight-vector positions).
///
/// Declarations are shared between bases derived from one another, so taking
/// a rule subset (see apply_weights) does not copy the variables.
class RuleBase {
public:
    RuleBase(std::vector<LinguisticVariable> inputs, std::vector<LinguisticVariable> outputs,
             std::vector<FuzzyRule> rules);

    const std::vector<LinguisticVariable>& inputs() const noexcept { return decls_->inputs; }
    const std::vector<LinguisticVariable>& outputs() const noexcept { return decls_->outputs; }
    const std::vector<FuzzyRule>& rules() const noexcept { return rules_; }

    const LinguisticVariable* find_input(const std::string& name) const;
    const LinguisticVariable* find_output(const std::string& name) const;

    /// Same declarations, different rules. Validates the new rules.
    RuleBase with_rules(std::vector<FuzzyRule> rules) const;

    friend bool operator==(const RuleBase& a, const RuleBase& b);

private:
    struct Declarations {
        std::vector<LinguisticVariable> inputs;
        std::vector<LinguisticVariable> outputs;
    };

    RuleBase(std::shared_ptr<const Declarations> decls, std::vector<FuzzyRule> rules,
             bool validate);

    void validate_rules() const;

    std::shared_ptr<const Declarations> decls_;
    std::vector<FuzzyRule> rules_;

    friend RuleBase subset_rules_unchecked(const RuleBase&, std::vector<FuzzyRule>);
};

/// Internal fast path: replace the rules of `base` without re-validation.
/// Only for rules already known valid against the same declarations.
RuleBase subset_rules_unchecked(const RuleBase& base, std::vector<FuzzyRule> rules);

/// Number of rules present in exactly one of the two bases (content identity
/// via same_structure, weights ignored).
std::size_t rule_set_difference(const RuleBase& a, const RuleBase& b);

} // namespace fuzzmill

#endif // FUZZMILL_RULEBASE_HPP
