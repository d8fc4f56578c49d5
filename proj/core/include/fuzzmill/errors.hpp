#ifndef FUZZMILL_ERRORS_HPP
#define FUZZMILL_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace fuzzmill {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: malformed membership points, unknown variable or
/// term references, unreadable or ill-formed files, bad parameter values.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Vector length mismatch (weights vs. rules, weights vs. target).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Inference produced zero output mass for one or more output variables.
/// The caller decides the fallback; `outputs()` names the affected variables.
class NoRuleFiredError : public Error {
public:
    NoRuleFiredError(const std::string& what, std::vector<std::string> outputs)
        : Error(what), outputs_(std::move(outputs)) {}

    const std::vector<std::string>& outputs() const noexcept { return outputs_; }

private:
    std::vector<std::string> outputs_;
};

/// The objective returned a non-finite value; `position()` is the offending point.
class ObjectiveError : public Error {
public:
    ObjectiveError(const std::string& what, std::vector<double> position)
        : Error(what), position_(std::move(position)) {}

    const std::vector<double>& position() const noexcept { return position_; }

private:
    std::vector<double> position_;
};

/// A rule-base evaluator failed while scoring a candidate weight vector.
/// `weights()` is the candidate that triggered the failure.
class EvaluatorError : public Error {
public:
    EvaluatorError(const std::string& what, std::vector<double> weights)
        : Error(what), weights_(std::move(weights)) {}

    const std::vector<double>& weights() const noexcept { return weights_; }

private:
    std::vector<double> weights_;
};

} // namespace fuzzmill

#endif // FUZZMILL_ERRORS_HPP
