#ifndef FUZZMILL_WPP_HPP
#define FUZZMILL_WPP_HPP

#include "fuzzmill/inference.hpp"
#include "fuzzmill/rulebase.hpp"

namespace fuzzmill::wpp {

/// Inputs of the air-flow power formula.
struct PowerParams {
    double cp;     ///< power coefficient, dimensionless, in [0, 1]
    double area;   ///< swept area, m^2
    double rho;    ///< air density, kg/m^3
    double speed;  ///< wind speed, m/s
};

/// P = 1/2 * Cp * A * rho * u^3, in watts. Validates the parameter ranges.
double wind_power(const PowerParams& p);

struct ControllerInput {
    double u0;   ///< wind speed, m/s
    double psi;  ///< wind-nacelle angle magnitude, degrees
};

struct ControllerOutput {
    double alpha;  ///< blade angle of attack, degrees
    double dl;     ///< blade length change, normalized [0, 1]
    double dpsi;   ///< nacelle turn command, degrees (signed)
};

/// Default input variables: wind speed u0 over [0, 30] m/s with terms
/// N, H, VH, Cr; direction deviation psi over [0, 90] degrees with terms
/// Z, S, M, L. The psi breakpoints realize the anchor
/// fuzzify(psi, 35) = {S: 0.25, M: 0.75} exactly.
std::vector<LinguisticVariable> default_input_variables();

/// Default output variables: alpha over [0, 90] degrees (Z, S, M, L),
/// dL over [0, 1] (Z, S, M, L), dpsi over [-45, 45] degrees
/// (NL, NS, Z, PS, PL).
std::vector<LinguisticVariable> default_output_variables();

/// The 16-rule expert model base over the default variables, one rule per
/// (u0 term, psi term) cell, all weights 1.
RuleBase model_rulebase();

/// Runs the controller: clamps the inputs to the variable universes,
/// infers, and maps the crisp outputs. Propagates NoRuleFiredError.
ControllerOutput control(const RuleBase& base, const ControllerInput& in,
                         const InferenceOptions& options = {});

} // namespace fuzzmill::wpp

#endif // FUZZMILL_WPP_HPP
