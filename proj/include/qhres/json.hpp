#ifndef QHRES_JSON_HPP
#define QHRES_JSON_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhres/analysis.hpp"
#include "qhres/parser.hpp"

namespace qhres::io {

using Json = nlohmann::ordered_json;
using algebra::Polynomial;
using algebra::Rational;
using weights::WeightSystem;

struct JobOptions {
    bool rescale_weights = false;
    bool emit_trace = false;
    int quadrature_steps = 400;
};

struct JobSpec {
    std::vector<std::string> variables;
    std::vector<std::string> weights;
    std::string s;
    std::string g = "1";
    JobOptions options;
};

/// Parsed job: the polynomials and weights ready for analysis.
struct Job {
    JobSpec spec;
    algebra::VariableSet variables;
    WeightSystem weights;
    Polynomial s;
    Polynomial g;
};

namespace detail {

template <class T>
T field(const Json& j, const char* key, const char* type) {
    if (!j.contains(key)) throw ArgumentError(std::string("job is missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ArgumentError(std::string("job field '") + key + "' must be " + type);
    }
}

} // namespace detail

inline JobSpec job_spec_from_json(const Json& j) {
    if (!j.is_object()) throw ArgumentError("job must be a JSON object");
    static const std::vector<std::string> allowed{"variables", "weights", "s", "g", "options"};
    for (const auto& [k, v] : j.items())
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ArgumentError("unknown job field '" + k + "'");
    JobSpec spec;
    spec.variables = detail::field<std::vector<std::string>>(j, "variables", "a list of names");
    spec.weights = detail::field<std::vector<std::string>>(j, "weights", "a list of rational strings");
    spec.s = detail::field<std::string>(j, "s", "a polynomial string");
    if (j.contains("g")) spec.g = detail::field<std::string>(j, "g", "a polynomial string");
    if (j.contains("options")) {
        const auto& o = j.at("options");
        if (!o.is_object()) throw ArgumentError("job field 'options' must be an object");
        for (const auto& [k, v] : o.items()) {
            if (k == "rescale_weights") spec.options.rescale_weights = detail::field<bool>(o, "rescale_weights", "a boolean");
            else if (k == "emit_trace") spec.options.emit_trace = detail::field<bool>(o, "emit_trace", "a boolean");
            else if (k == "quadrature_steps") spec.options.quadrature_steps = detail::field<int>(o, "quadrature_steps", "an integer");
            else throw ArgumentError("unknown option '" + k + "'");
        }
        if (spec.options.quadrature_steps <= 0) throw ArgumentError("quadrature_steps must be positive");
    }
    return spec;
}

inline WeightSystem parse_weights(const std::vector<std::string>& texts) {
    std::vector<Rational> a;
    for (const auto& t : texts) a.push_back(algebra::parse_rational(t));
    return WeightSystem(std::move(a));
}

inline Job load_job(const JobSpec& spec) {
    if (spec.variables.size() != spec.weights.size())
        throw ArgumentError("job has " + std::to_string(spec.variables.size()) + " variables but " +
                            std::to_string(spec.weights.size()) + " weights");
    if (spec.variables.empty()) throw ArgumentError("job has no variables");
    for (std::size_t i = 0; i < spec.variables.size(); ++i) {
        const auto& v = spec.variables[i];
        bool ok = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_');
        for (char c : v) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok) throw ArgumentError("variable name '" + v + "' is not an identifier");
        if (std::find(spec.variables.begin(), spec.variables.begin() + i, v) != spec.variables.begin() + i)
            throw ArgumentError("variable '" + v + "' listed twice");
    }
    algebra::VariableSet vars(spec.variables);
    WeightSystem w = parse_weights(spec.weights);
    Polynomial s = parser::parse_polynomial(spec.s, vars);
    Polynomial g = parser::parse_polynomial(spec.g, vars);
    return {spec, vars, std::move(w), std::move(s), std::move(g)};
}

inline Job load_job_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open job file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ArgumentError("job file '" + path + "' is not valid JSON: " + e.what());
    }
    return load_job(job_spec_from_json(j));
}

inline Json to_json(const Rational& q) { return algebra::to_string(q); }

inline Json to_json(const criteria::Condition2Result& c) {
    Json j;
    j["holds"] = c.holds;
    if (c.witness) j["witness"] = {{"k", c.witness->k}, {"value", to_json(c.witness->value)}};
    else j["witness"] = nullptr;
    return j;
}

inline Json to_json(const std::vector<criteria::SpectrumEntry>& spectrum) {
    Json j = Json::array();
    for (const auto& e : spectrum) j.push_back({{"value", to_json(e.value)}, {"k", e.k}});
    return j;
}

inline Json to_json(const residue::ChartForm& c) {
    Json j;
    j["variables"] = c.form.variables().names();
    j["relation"] = algebra::to_string(c.relation);
    j["chart"] = c.chart_index < 0 ? Json(nullptr) : Json(c.form.variables()[c.chart_index]);
    j["form"] = forms::to_string(c.form);
    return j;
}

inline Json to_json(const residue::SecondResidue& r) {
    Json j = to_json(r.residue);
    j["prefactor"] = r.prefactor;
    j["component"] = algebra::to_string(r.component);
    j["s_tilde"] = algebra::to_string(r.s_tilde);
    j["g_tilde"] = algebra::to_string(r.g_tilde);
    j["target"] = forms::to_string(r.target);
    j["certified_nonzero"] = r.certified;
    return j;
}

inline Json to_json(const criteria::ProbeReport& p) {
    Json j;
    j["cover_pullback"] = algebra::to_string(p.cover_pullback);
    j["probe"] = criteria::to_string(p.result);
    if (p.order) j["order"] = *p.order;
    else j["order"] = nullptr;
    return j;
}

/// The analysis report. Key order is fixed, `second_residue` is null unless
/// the verdict is OBSTRUCTED.
inline Json to_json(const residue::ResidueReport& r) {
    Json j;
    j["variables"] = r.s.variables().names();
    j["weights"] = weights::to_strings(r.weights);
    j["s"] = algebra::to_string(r.s);
    j["g"] = algebra::to_string(r.g);
    j["kappa"] = to_json(r.kappa);
    j["l"] = r.l.str();
    j["C"] = to_json(r.jacobian_constant);
    j["condition2"] = to_json(r.condition2);
    j["spectrum"] = to_json(r.spectrum);
    j["leray_residue"] = to_json(r.leray);
    Json blow = Json::array();
    for (const auto& b : r.blowup_exponents)
        blow.push_back({{"alpha", to_json(b.alpha)}, {"component", algebra::to_string(b.component)},
                        {"exponent", b.exponent}});
    j["blowup_exponent"] = blow;
    j["second_residue"] = r.second ? to_json(*r.second) : Json(nullptr);
    j["verdict"] = criteria::to_string(r.verdict);
    j["warnings"] = r.warnings;
    return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace qhres::io

#endif // QHRES_JSON_HPP
