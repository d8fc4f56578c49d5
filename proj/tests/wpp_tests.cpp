#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "fuzzmill/errors.hpp"
#include "fuzzmill/inference.hpp"
#include "fuzzmill/wpp.hpp"
#include "support/test_support.hpp"

using namespace fuzzmill;

namespace {

const FuzzyRule* find_cell(const RuleBase& base, const std::string& u0, const std::string& psi) {
    for (const auto& rule : base.rules()) {
        bool has_u0 = false, has_psi = false;
        for (const auto& clause : rule.antecedent) {
            has_u0 = has_u0 || (clause.variable == "u0" && clause.term == u0);
            has_psi = has_psi || (clause.variable == "psi" && clause.term == psi);
        }
        if (has_u0 && has_psi) return &rule;
    }
    return nullptr;
}

std::string consequent_term(const FuzzyRule& rule, const std::string& variable) {
    for (const auto& clause : rule.consequent) {
        if (clause.variable == variable) return clause.term;
    }
    return {};
}

} // namespace

TEST_SUITE("wpp") {

TEST_CASE("wind power follows the half-Cp-A-rho-u-cubed law") {
    CHECK(wpp::wind_power({0.0, 50.0, 1.2, 11.0}) == 0.0);
    CHECK(wpp::wind_power({0.4, 100.0, 1.225, 10.0}) ==
          doctest::Approx(24500.0).epsilon(1e-12));

    // Cubic law: doubling the wind speed multiplies power by exactly 8.
    const double base = wpp::wind_power({0.3, 70.0, 1.2, 6.5});
    const double doubled = wpp::wind_power({0.3, 70.0, 1.2, 13.0});
    CHECK(doubled == 8.0 * base);

    // Strictly increasing in every parameter (u > 0).
    CHECK(wpp::wind_power({0.31, 70.0, 1.2, 6.5}) > base);
    CHECK(wpp::wind_power({0.3, 70.5, 1.2, 6.5}) > base);
    CHECK(wpp::wind_power({0.3, 70.0, 1.25, 6.5}) > base);
    CHECK(wpp::wind_power({0.3, 70.0, 1.2, 6.6}) > base);
}

TEST_CASE("wind power validates parameter ranges") {
    CHECK_THROWS_AS(wpp::wind_power({-0.1, 1.0, 1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(wpp::wind_power({1.1, 1.0, 1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(wpp::wind_power({0.5, 0.0, 1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(wpp::wind_power({0.5, 1.0, -1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(wpp::wind_power({0.5, 1.0, 1.0, -1.0}), ConfigError);
}

TEST_CASE("the model base is a complete 4x4 grid of unit-weight rules") {
    const RuleBase base = wpp::model_rulebase();
    REQUIRE(base.rules().size() == 16);

    std::set<std::pair<std::string, std::string>> cells;
    for (const auto& rule : base.rules()) {
        CHECK(rule.weight == 1.0);
        REQUIRE(rule.antecedent.size() == 2);
        REQUIRE(rule.consequent.size() == 3);
        std::string u0, psi;
        for (const auto& clause : rule.antecedent) {
            if (clause.variable == "u0") u0 = clause.term;
            if (clause.variable == "psi") psi = clause.term;
        }
        CHECK_FALSE(u0.empty());
        CHECK_FALSE(psi.empty());
        cells.insert({u0, psi});
    }
    CHECK(cells.size() == 16);  // every pair exactly once
}

TEST_CASE("characteristic model cells map to their expected commands") {
    const RuleBase base = wpp::model_rulebase();

    const struct {
        const char* u0;
        const char* psi;
        const char* alpha;
        const char* dl;
        const char* dpsi;
    } expected[] = {
        {"N", "Z", "Z", "L", "Z"},   {"Cr", "Z", "L", "Z", "PL"}, {"N", "M", "Z", "L", "NS"},
        {"N", "L", "L", "L", "NL"},  {"Cr", "L", "L", "Z", "Z"},  {"H", "S", "S", "Z", "Z"},
    };
    for (const auto& e : expected) {
        const FuzzyRule* rule = find_cell(base, e.u0, e.psi);
        REQUIRE(rule != nullptr);
        CHECK(consequent_term(*rule, "alpha") == e.alpha);
        CHECK(consequent_term(*rule, "dL") == e.dl);
        CHECK(consequent_term(*rule, "dpsi") == e.dpsi);
    }
}

TEST_CASE("worked misalignment example fires exactly two rules") {
    const RuleBase base = wpp::model_rulebase();
    // Wind speed deep inside N (membership 1), direction deviation 35 deg.
    const InferenceResult r = infer_detailed(base, {{"u0", 4.0}, {"psi", 35.0}});

    int fired = 0;
    for (std::size_t i = 0; i < base.rules().size(); ++i) {
        if (r.activations[i] == 0.0) continue;
        ++fired;
        const FuzzyRule& rule = base.rules()[i];
        std::string psi_term;
        for (const auto& clause : rule.antecedent) {
            if (clause.variable == "psi") psi_term = clause.term;
        }
        if (psi_term == "S") {
            CHECK(r.activations[i] == 0.25);
        } else {
            CHECK(psi_term == "M");
            CHECK(r.activations[i] == 0.75);
        }
    }
    CHECK(fired == 2);
}

TEST_CASE("aligned low-wind inputs command full blade extension") {
    const RuleBase base = wpp::model_rulebase();
    // u0 in the pure-N plateau and psi exactly aligned: only (N, Z) fires at
    // level 1, so each output is the centroid of one untruncated term.
    const wpp::ControllerOutput out = wpp::control(base, {4.0, 0.0});

    const std::map<std::string, double> inputs{{"u0", 4.0}, {"psi", 0.0}};
    const double alpha_oracle = test::oracle_centroid(base, inputs, "alpha", 200001);
    const double dl_oracle = test::oracle_centroid(base, inputs, "dL", 200001);
    CHECK(std::abs(out.alpha - alpha_oracle) < 1e-3 * 90.0);
    CHECK(std::abs(out.dl - dl_oracle) < 1e-3 * 1.0);
    // dpsi's consequent is the symmetric Z triangle: centroid at 0.
    CHECK(out.dpsi == doctest::Approx(0.0).epsilon(1e-9));

    // The blade-extension command is the centroid of the full L shape, which
    // lies in the upper part of [2/3, 1].
    CHECK(out.dl > 2.0 / 3.0);
    CHECK(out.dl < 1.0);
}

TEST_CASE("out-of-range sensor values behave like the nearest bound") {
    const RuleBase base = wpp::model_rulebase();
    const wpp::ControllerOutput inside = wpp::control(base, {30.0, 90.0});
    const wpp::ControllerOutput outside = wpp::control(base, {55.0, 300.0});
    CHECK(inside.alpha == outside.alpha);
    CHECK(inside.dl == outside.dl);
    CHECK(inside.dpsi == outside.dpsi);

    const wpp::ControllerOutput at_zero = wpp::control(base, {0.0, 0.0});
    const wpp::ControllerOutput below = wpp::control(base, {-3.0, -10.0});
    CHECK(at_zero.alpha == below.alpha);
    CHECK(at_zero.dl == below.dl);
    CHECK(at_zero.dpsi == below.dpsi);
}

TEST_CASE("the model base never leaves an output silent across the input plane") {
    const RuleBase base = wpp::model_rulebase();
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double u0 = 30.0 * i / 20.0;
            const double psi = 90.0 * j / 20.0;
            const wpp::ControllerOutput out = wpp::control(base, {u0, psi});
            CHECK(out.alpha >= 0.0);
            CHECK(out.alpha <= 90.0);
            CHECK(out.dl >= 0.0);
            CHECK(out.dl <= 1.0);
            CHECK(out.dpsi >= -45.0);
            CHECK(out.dpsi <= 45.0);
        }
    }
}

TEST_CASE("an all-silent base propagates the no-rule-fired error") {
    const RuleBase base = wpp::model_rulebase();
    auto silent_rules = base.rules();
    for (auto& rule : silent_rules) rule.weight = 0.0;
    const RuleBase silent = base.with_rules(silent_rules);
    CHECK_THROWS_AS(wpp::control(silent, {4.0, 0.0}), NoRuleFiredError);
}

TEST_CASE("control requires the controller variable names") {
    std::vector<LinguisticVariable> inputs{
        LinguisticVariable("other", 0.0, 1.0, {{"t", shoulder_left(0.0, 1.0)}})};
    std::vector<LinguisticVariable> outputs{
        LinguisticVariable("y", 0.0, 1.0, {{"t", shoulder_left(0.0, 1.0)}})};
    const RuleBase base(std::move(inputs), std::move(outputs),
                        {FuzzyRule{{{"other", "t"}}, {{"y", "t"}}, 1.0}});
    CHECK_THROWS_AS(wpp::control(base, {1.0, 1.0}), ConfigError);
}

}
