#include "fuzzmill/wpp.hpp"

#include <cmath>
#include <sstream>

#include "fuzzmill/errors.hpp"

namespace fuzzmill::wpp {

double wind_power(const PowerParams& p) {
    if (!std::isfinite(p.cp) || p.cp < 0.0 || p.cp > 1.0) {
        throw ConfigError("power coefficient must be in [0,1]");
    }
    if (!std::isfinite(p.area) || p.area <= 0.0) throw ConfigError("swept area must be positive");
    if (!std::isfinite(p.rho) || p.rho <= 0.0) throw ConfigError("air density must be positive");
    if (!std::isfinite(p.speed) || p.speed < 0.0) {
        throw ConfigError("wind speed must be nonnegative");
    }
    return 0.5 * p.cp * p.area * p.rho * (p.speed * p.speed * p.speed);
}

std::vector<LinguisticVariable> default_input_variables() {
    std::vector<LinguisticVariable> vars;
    vars.emplace_back("u0", 0.0, 30.0,
                      std::vector<LinguisticVariable::Term>{
                          {"N", MembershipFunction({{0.0, 1.0}, {8.0, 1.0}, {12.0, 0.0}})},
                          {"H", triangle(8.0, 12.0, 16.0)},
                          {"VH", triangle(12.0, 16.0, 20.0)},
                          {"Cr", MembershipFunction({{16.0, 0.0}, {20.0, 1.0}, {30.0, 1.0}})},
                      });
    vars.emplace_back("psi", 0.0, 90.0,
                      std::vector<LinguisticVariable::Term>{
                          {"Z", shoulder_left(0.0, 20.0)},
                          {"S", triangle(0.0, 20.0, 40.0)},
                          {"M", triangle(20.0, 40.0, 60.0)},
                          {"L", shoulder_right(40.0, 60.0)},
                      });
    return vars;
}

std::vector<LinguisticVariable> default_output_variables() {
    std::vector<LinguisticVariable> vars;
    vars.emplace_back("alpha", 0.0, 90.0,
                      std::vector<LinguisticVariable::Term>{
                          {"Z", shoulder_left(0.0, 30.0)},
                          {"S", triangle(0.0, 30.0, 60.0)},
                          {"M", triangle(30.0, 60.0, 90.0)},
                          {"L", shoulder_right(60.0, 90.0)},
                      });
    vars.emplace_back("dL", 0.0, 1.0,
                      std::vector<LinguisticVariable::Term>{
                          {"Z", shoulder_left(0.0, 1.0 / 3.0)},
                          {"S", triangle(0.0, 1.0 / 3.0, 2.0 / 3.0)},
                          {"M", triangle(1.0 / 3.0, 2.0 / 3.0, 1.0)},
                          {"L", shoulder_right(2.0 / 3.0, 1.0)},
                      });
    vars.emplace_back("dpsi", -45.0, 45.0,
                      std::vector<LinguisticVariable::Term>{
                          {"NL", shoulder_left(-45.0, -22.5)},
                          {"NS", triangle(-45.0, -22.5, 0.0)},
                          {"Z", triangle(-22.5, 0.0, 22.5)},
                          {"PS", triangle(0.0, 22.5, 45.0)},
                          {"PL", shoulder_right(22.5, 45.0)},
                      });
    return vars;
}

RuleBase model_rulebase() {
    // One cell per (u0 term, psi term) pair; consequents are
    // (alpha, dL, dpsi). psi is the misalignment magnitude, dpsi the signed
    // turn command; the sign convention is fixed here, not by the plant.
    struct Cell {
        const char* u0;
        const char* psi;
        const char* alpha;
        const char* dl;
        const char* dpsi;
    };
    static constexpr Cell table[] = {
        {"N", "Z", "Z", "L", "Z"},  {"N", "S", "Z", "L", "Z"},   {"N", "M", "Z", "L", "NS"},
        {"N", "L", "L", "L", "NL"}, {"H", "Z", "M", "Z", "Z"},   {"H", "S", "S", "Z", "Z"},
        {"H", "M", "S", "Z", "Z"},  {"H", "L", "Z", "Z", "Z"},   {"VH", "Z", "L", "Z", "Z"},
        {"VH", "S", "M", "Z", "Z"}, {"VH", "M", "M", "Z", "Z"},  {"VH", "L", "S", "Z", "Z"},
        {"Cr", "Z", "L", "Z", "PL"}, {"Cr", "S", "L", "Z", "PL"}, {"Cr", "M", "L", "Z", "PS"},
        {"Cr", "L", "L", "Z", "Z"},
    };

    std::vector<FuzzyRule> rules;
    rules.reserve(std::size(table));
    for (const auto& cell : table) {
        rules.push_back(FuzzyRule{
            {{"u0", cell.u0}, {"psi", cell.psi}},
            {{"alpha", cell.alpha}, {"dL", cell.dl}, {"dpsi", cell.dpsi}},
            1.0,
        });
    }
    return RuleBase(default_input_variables(), default_output_variables(), std::move(rules));
}

ControllerOutput control(const RuleBase& base, const ControllerInput& in,
                         const InferenceOptions& options) {
    const LinguisticVariable* u0 = base.find_input("u0");
    const LinguisticVariable* psi = base.find_input("psi");
    if (!u0 || !psi) {
        throw ConfigError("controller base must declare input variables 'u0' and 'psi'");
    }
    for (const char* name : {"alpha", "dL", "dpsi"}) {
        if (!base.find_output(name)) {
            throw ConfigError(std::string("controller base must declare output variable '") +
                              name + "'");
        }
    }
    const auto outputs = infer(
        base, {{"u0", u0->clamp(in.u0)}, {"psi", psi->clamp(in.psi)}}, options);
    return ControllerOutput{outputs.at("alpha"), outputs.at("dL"), outputs.at("dpsi")};
}

} // namespace fuzzmill::wpp
