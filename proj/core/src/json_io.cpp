#include "fuzzmill/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "fuzzmill/errors.hpp"
#include "fuzzmill/rulebase_opt.hpp"

namespace fuzzmill {
namespace {

using nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw ConfigError("error while reading " + file.string());
    return std::move(buf).str();
}

/// 1-based line of a 1-based byte offset, for parse diagnostics.
std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    const std::size_t end = byte < text.size() ? byte : text.size();
    for (std::size_t i = 0; i + 1 < end; ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

ordered_json parse_text(const std::string& text, const std::string& origin) {
    try {
        return ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ConfigError(origin + ":" + std::to_string(line_of_byte(text, e.byte)) + ": " +
                          e.what());
    }
}

const ordered_json* find(const ordered_json& obj, const char* key) {
    if (!obj.is_object()) return nullptr;
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

const ordered_json& require(const ordered_json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(where + " is missing \"" + key + "\"");
    return *it;
}

double as_number(const ordered_json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + " must be a number");
    return j.get<double>();
}

std::string as_string(const ordered_json& j, const std::string& where) {
    if (!j.is_string()) throw ConfigError(where + " must be a string");
    return j.get<std::string>();
}

std::uint64_t as_uint(const ordered_json& j, const std::string& where) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v >= 0) return static_cast<std::uint64_t>(v);
    }
    throw ConfigError(where + " must be a nonnegative integer");
}

LinguisticVariable parse_variable(const ordered_json& jv, const std::string& where) {
    const std::string name = as_string(require(jv, "name", where), where + ".name");
    const ordered_json& universe = require(jv, "universe", where);
    if (!universe.is_array() || universe.size() != 2) {
        throw ConfigError(where + ".universe must be [lo, hi]");
    }
    const double lo = as_number(universe[0], where + ".universe[0]");
    const double hi = as_number(universe[1], where + ".universe[1]");

    const ordered_json& terms = require(jv, "terms", where);
    if (!terms.is_object()) throw ConfigError(where + ".terms must be an object");
    std::vector<LinguisticVariable::Term> parsed;
    for (const auto& [label, jpoints] : terms.items()) {
        const std::string term_where = where + ".terms[\"" + label + "\"]";
        if (!jpoints.is_array()) throw ConfigError(term_where + " must be an array of points");
        std::vector<MembershipFunction::Point> points;
        points.reserve(jpoints.size());
        for (std::size_t i = 0; i < jpoints.size(); ++i) {
            const ordered_json& jp = jpoints[i];
            const std::string point_where = term_where + "[" + std::to_string(i) + "]";
            if (!jp.is_array() || jp.size() != 2) {
                throw ConfigError(point_where + " must be [x, degree]");
            }
            points.push_back({as_number(jp[0], point_where + "[0]"),
                              as_number(jp[1], point_where + "[1]")});
        }
        try {
            parsed.emplace_back(label, MembershipFunction(std::move(points)));
        } catch (const ConfigError& e) {
            throw ConfigError(term_where + ": " + e.what());
        }
    }
    try {
        return LinguisticVariable(name, lo, hi, std::move(parsed));
    } catch (const ConfigError& e) {
        throw ConfigError(where + " (\"" + name + "\"): " + e.what());
    }
}

struct Declarations {
    std::vector<LinguisticVariable> inputs;
    std::vector<LinguisticVariable> outputs;
};

Declarations parse_declarations(const ordered_json& doc, const std::string& origin) {
    const ordered_json& jvars = require(doc, "variables", origin);
    if (!jvars.is_array()) throw ConfigError(origin + ": \"variables\" must be an array");
    std::vector<LinguisticVariable> variables;
    variables.reserve(jvars.size());
    for (std::size_t i = 0; i < jvars.size(); ++i) {
        variables.push_back(
            parse_variable(jvars[i], origin + ": variables[" + std::to_string(i) + "]"));
        const auto& name = variables.back().name();
        for (std::size_t k = 0; k + 1 < variables.size(); ++k) {
            if (variables[k].name() == name) {
                throw ConfigError(origin + ": variable \"" + name + "\" is declared twice");
            }
        }
    }

    const auto pick = [&](const char* key) {
        const ordered_json& names = require(doc, key, origin);
        const std::string where = origin + ": \"" + key + "\"";
        if (!names.is_array()) throw ConfigError(where + " must be an array of variable names");
        std::vector<LinguisticVariable> picked;
        picked.reserve(names.size());
        for (std::size_t i = 0; i < names.size(); ++i) {
            const std::string name = as_string(names[i], where + "[" + std::to_string(i) + "]");
            const auto it = std::find_if(variables.begin(), variables.end(),
                                         [&](const auto& v) { return v.name() == name; });
            if (it == variables.end()) {
                throw ConfigError(where + " references undeclared variable \"" + name + "\"");
            }
            picked.push_back(*it);
        }
        return picked;
    };

    Declarations decls;
    decls.inputs = pick("inputs");
    decls.outputs = pick("outputs");
    return decls;
}

std::vector<Clause> parse_clauses(const ordered_json& jclauses, const std::string& where) {
    if (!jclauses.is_object()) throw ConfigError(where + " must be a {variable: term} object");
    std::vector<Clause> clauses;
    clauses.reserve(jclauses.size());
    for (const auto& [variable, jterm] : jclauses.items()) {
        clauses.push_back({variable, as_string(jterm, where + "[\"" + variable + "\"]")});
    }
    return clauses;
}

std::vector<FuzzyRule> parse_rules(const ordered_json& doc, const std::string& origin) {
    const ordered_json& jrules = require(doc, "rules", origin);
    if (!jrules.is_array()) throw ConfigError(origin + ": \"rules\" must be an array");
    std::vector<FuzzyRule> rules;
    rules.reserve(jrules.size());
    for (std::size_t i = 0; i < jrules.size(); ++i) {
        const std::string where = origin + ": rules[" + std::to_string(i) + "]";
        const ordered_json& jr = jrules[i];
        FuzzyRule rule;
        rule.antecedent = parse_clauses(require(jr, "if", where), where + ".if");
        rule.consequent = parse_clauses(require(jr, "then", where), where + ".then");
        if (const ordered_json* w = find(jr, "weight")) {
            rule.weight = as_number(*w, where + ".weight");
        }
        rules.push_back(std::move(rule));
    }
    return rules;
}

RuleBase assemble(Declarations decls, std::vector<FuzzyRule> rules, const std::string& origin) {
    try {
        return RuleBase(std::move(decls.inputs), std::move(decls.outputs), std::move(rules));
    } catch (const Error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

ordered_json variable_to_json(const LinguisticVariable& v) {
    ordered_json jv;
    jv["name"] = v.name();
    jv["universe"] = {v.lo(), v.hi()};
    ordered_json terms(ordered_json::value_t::object);
    for (const auto& [label, mf] : v.terms()) {
        auto points = ordered_json::array();
        for (const auto& p : mf.points()) points.push_back({p.x, p.degree});
        terms[label] = std::move(points);
    }
    jv["terms"] = std::move(terms);
    return jv;
}

ordered_json clauses_to_json(const std::vector<Clause>& clauses) {
    ordered_json j(ordered_json::value_t::object);
    for (const auto& c : clauses) j[c.variable] = c.term;
    return j;
}

} // namespace

std::string rulebase_to_json_text(const RuleBase& base) {
    ordered_json doc;
    auto variables = ordered_json::array();
    auto names_of = [](const std::vector<LinguisticVariable>& vars) {
        auto names = ordered_json::array();
        for (const auto& v : vars) names.push_back(v.name());
        return names;
    };
    for (const auto& v : base.inputs()) variables.push_back(variable_to_json(v));
    for (const auto& v : base.outputs()) variables.push_back(variable_to_json(v));
    doc["variables"] = std::move(variables);
    doc["inputs"] = names_of(base.inputs());
    doc["outputs"] = names_of(base.outputs());

    auto rules = ordered_json::array();
    for (const auto& r : base.rules()) {
        ordered_json jr;
        jr["if"] = clauses_to_json(r.antecedent);
        jr["then"] = clauses_to_json(r.consequent);
        jr["weight"] = r.weight;
        rules.push_back(std::move(jr));
    }
    doc["rules"] = std::move(rules);
    return doc.dump(2) + "\n";
}

RuleBase rulebase_from_json_text(const std::string& text, const std::string& origin) {
    const ordered_json doc = parse_text(text, origin);
    if (!doc.is_object()) throw ConfigError(origin + ": top level must be an object");
    return assemble(parse_declarations(doc, origin), parse_rules(doc, origin), origin);
}

RuleBase load_rulebase(const std::filesystem::path& file) {
    return rulebase_from_json_text(read_file(file), file.string());
}

RuleBase load_rulebase(const std::filesystem::path& variables_file,
                       const std::filesystem::path& rules_file) {
    if (variables_file == rules_file) return load_rulebase(variables_file);
    const std::string vtext = read_file(variables_file);
    const ordered_json vdoc = parse_text(vtext, variables_file.string());
    const std::string rtext = read_file(rules_file);
    const ordered_json rdoc = parse_text(rtext, rules_file.string());
    return assemble(parse_declarations(vdoc, variables_file.string()),
                    parse_rules(rdoc, rules_file.string()), rules_file.string());
}

void save_rulebase(const std::filesystem::path& file, const RuleBase& base) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + file.string() + " for writing");
    out << rulebase_to_json_text(base);
    out.flush();
    if (!out) throw ConfigError("error while writing " + file.string());
}

void ExperimentSettings::validate() const {
    if (trials < 1) throw ConfigError("experiment.trials must be at least 1");
}

RuleBase RunConfig::load_rules() const { return load_rulebase(variables_file, rules_file); }

namespace {

void reject_unknown_keys(const ordered_json& obj, const std::string& where,
                         std::initializer_list<const char*> known) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
}

} // namespace

RunConfig load_run_config(const std::filesystem::path& file) {
    const std::string text = read_file(file);
    const std::string origin = file.string();
    const ordered_json doc = parse_text(text, origin);
    if (!doc.is_object()) throw ConfigError(origin + ": top level must be an object");
    reject_unknown_keys(doc, origin,
                        {"variables", "rules", "pso", "cutoff", "grid_points", "experiment",
                         "evaluator"});

    const std::filesystem::path base_dir = file.parent_path();
    const auto resolve = [&](const std::string& p) {
        const std::filesystem::path path(p);
        return path.is_absolute() ? path : base_dir / path;
    };

    RunConfig cfg;
    cfg.variables_file =
        resolve(as_string(require(doc, "variables", origin), origin + ": \"variables\""));
    cfg.rules_file = find(doc, "rules")
                         ? resolve(as_string(*find(doc, "rules"), origin + ": \"rules\""))
                         : cfg.variables_file;

    if (const ordered_json* jpso = find(doc, "pso")) {
        const std::string where = origin + ": pso";
        if (!jpso->is_object()) throw ConfigError(where + " must be an object");
        reject_unknown_keys(*jpso, where,
                            {"alpha1", "alpha2", "omega", "vmax", "agents", "iterations", "seed",
                             "target", "stagnation_window"});
        if (const auto* j = find(*jpso, "alpha1")) cfg.pso.alpha1 = as_number(*j, where + ".alpha1");
        if (const auto* j = find(*jpso, "alpha2")) cfg.pso.alpha2 = as_number(*j, where + ".alpha2");
        if (const auto* j = find(*jpso, "omega")) cfg.pso.omega = as_number(*j, where + ".omega");
        if (const auto* j = find(*jpso, "vmax")) cfg.pso.vmax = as_number(*j, where + ".vmax");
        if (const auto* j = find(*jpso, "agents")) {
            cfg.pso.agents = static_cast<std::size_t>(as_uint(*j, where + ".agents"));
        }
        if (const auto* j = find(*jpso, "iterations")) {
            cfg.pso.max_iters = static_cast<std::size_t>(as_uint(*j, where + ".iterations"));
        }
        if (const auto* j = find(*jpso, "seed")) cfg.pso.seed = as_uint(*j, where + ".seed");
        if (const auto* j = find(*jpso, "target")) cfg.pso.target = as_number(*j, where + ".target");
        if (const auto* j = find(*jpso, "stagnation_window")) {
            cfg.pso.stagnation_window =
                static_cast<std::size_t>(as_uint(*j, where + ".stagnation_window"));
        }
    }

    if (const auto* j = find(doc, "cutoff")) cfg.cutoff = as_number(*j, origin + ": \"cutoff\"");
    if (const auto* j = find(doc, "grid_points")) {
        cfg.grid_points = static_cast<std::size_t>(as_uint(*j, origin + ": \"grid_points\""));
        if (cfg.grid_points < 2) throw ConfigError(origin + ": grid_points must be at least 2");
    }

    if (const ordered_json* jexp = find(doc, "experiment")) {
        const std::string where = origin + ": experiment";
        if (!jexp->is_object()) throw ConfigError(where + " must be an object");
        reject_unknown_keys(*jexp, where, {"trials", "extra_rules", "base_seed"});
        if (const auto* j = find(*jexp, "trials")) {
            cfg.experiment.trials = static_cast<std::size_t>(as_uint(*j, where + ".trials"));
        }
        if (const auto* j = find(*jexp, "extra_rules")) {
            cfg.experiment.extra_rules =
                static_cast<std::size_t>(as_uint(*j, where + ".extra_rules"));
        }
        if (const auto* j = find(*jexp, "base_seed")) {
            cfg.experiment.base_seed = as_uint(*j, where + ".base_seed");
        }
    }

    if (const ordered_json* jeval = find(doc, "evaluator")) {
        const std::string where = origin + ": evaluator";
        if (!jeval->is_object()) throw ConfigError(where + " must be an object");
        reject_unknown_keys(*jeval, where, {"name", "model"});
        if (const auto* j = find(*jeval, "name")) {
            cfg.evaluator_name = as_string(*j, where + ".name");
        }
        if (const auto* j = find(*jeval, "model")) {
            cfg.evaluator_model = resolve(as_string(*j, where + ".model"));
        }
    }

    for (const auto& path : {cfg.variables_file, cfg.rules_file}) {
        if (!std::filesystem::exists(path)) {
            throw ConfigError(origin + ": referenced file does not exist: " + path.string());
        }
    }
    if (cfg.evaluator_model && !std::filesystem::exists(*cfg.evaluator_model)) {
        throw ConfigError(origin +
                          ": referenced file does not exist: " + cfg.evaluator_model->string());
    }

    try {
        cfg.pso.validate();
        CutoffPolicy{cfg.cutoff}.validate();
        cfg.experiment.validate();
    } catch (const Error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return cfg;
}

} // namespace fuzzmill
