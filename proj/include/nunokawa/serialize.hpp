#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "nunokawa/contact_search.hpp"
#include "nunokawa/corpus.hpp"
#include "nunokawa/lemma_engine.hpp"

namespace nunokawa {

using Json = nlohmann::ordered_json;

/// Shortest decimal that round-trips the double, so golden files stay
/// stable across platforms.
inline std::string format_shortest(double x) {
    char buf[64];
    const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc()) throw Error("double formatting failed");
    return std::string(buf, res.ptr);
}

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw DomainError("complex value must be a [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

/// Polynomial coefficients as a JSON array of [re, im] pairs, ascending
/// degree.
inline Json coefficients_to_json(const std::vector<Complex>& coeffs) {
    Json arr = Json::array();
    for (const Complex& c : coeffs) arr.push_back(to_json(c));
    return arr;
}

inline std::vector<Complex> coefficients_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw DomainError("coefficients must be a non-empty array");
    std::vector<Complex> coeffs;
    coeffs.reserve(j.size());
    for (const Json& item : j) {
        if (item.is_number()) {
            coeffs.emplace_back(item.get<double>(), 0.0);
        } else {
            coeffs.push_back(complex_from_json(item));
        }
    }
    return coeffs;
}

inline std::string family_name(CorpusSpec::Family family) {
    switch (family) {
        case CorpusSpec::Family::ExampleFamily: return "example_family";
        case CorpusSpec::Family::ExampleSpecial: return "example_special";
        case CorpusSpec::Family::RandomPolynomial: return "random_polynomial";
        case CorpusSpec::Family::HerglotzShift: return "herglotz_shift";
    }
    throw DomainError("unknown corpus family");
}

inline CorpusSpec::Family family_from_name(const std::string& name) {
    if (name == "example_family") return CorpusSpec::Family::ExampleFamily;
    if (name == "example_special") return CorpusSpec::Family::ExampleSpecial;
    if (name == "random_polynomial") return CorpusSpec::Family::RandomPolynomial;
    if (name == "herglotz_shift") return CorpusSpec::Family::HerglotzShift;
    throw DomainError("unknown corpus family: " + name);
}

inline Json to_json(const CorpusSpec& spec) {
    Json j;
    j["family"] = family_name(spec.family);
    j["alpha"] = spec.alpha;
    if (spec.family == CorpusSpec::Family::RandomPolynomial) {
        j["degree"] = spec.degree;
        j["coefficients"] =
            spec.policy == CoefficientPolicy::RealInterval ? "real" : "complex";
    }
    if (spec.family == CorpusSpec::Family::HerglotzShift) j["atoms"] = spec.atoms;
    j["seed"] = spec.seed;
    return j;
}

inline CorpusSpec corpus_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw DomainError("corpus spec must be an object with a family");
    CorpusSpec spec;
    spec.family = family_from_name(j.at("family").get<std::string>());
    spec.alpha = j.value("alpha", 0.0);
    spec.degree = j.value("degree", 2);
    spec.atoms = j.value("atoms", 3);
    spec.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("coefficients")) {
        const std::string policy = j.at("coefficients").get<std::string>();
        if (policy == "real")
            spec.policy = CoefficientPolicy::RealInterval;
        else if (policy == "complex")
            spec.policy = CoefficientPolicy::ComplexSquare;
        else
            throw DomainError("coefficient policy must be real or complex");
    }
    return spec;
}

inline Json to_json(const BoundaryContact& contact) {
    Json j;
    j["z0"] = to_json(contact.z0);
    j["r_star"] = contact.r_star;
    j["theta0"] = contact.theta0;
    j["alpha"] = contact.alpha.value();
    j["beta"] = contact.beta;
    j["residual"] = contact.residual;
    return j;
}

inline Json to_json(const ContactOutcome& outcome) {
    Json j;
    switch (outcome.status) {
        case ContactOutcome::Status::Found: {
            j["status"] = "found";
            Json contacts = Json::array();
            for (const BoundaryContact& c : outcome.contacts) contacts.push_back(to_json(c));
            j["contacts"] = contacts;
            break;
        }
        case ContactOutcome::Status::NoContact:
            j["status"] = "no_contact";
            j["min_real_margin"] = outcome.min_real_margin;
            break;
        case ContactOutcome::Status::Degenerate:
            j["status"] = "degenerate";
            j["reason"] = outcome.degenerate_reason;
            break;
    }
    return j;
}

inline Json to_json(const NunokawaReport& report) {
    Json j;
    j["k"] = report.k;
    j["m"] = report.m;
    j["logderiv"] = to_json(report.logderiv);
    j["re_predicted"] = report.re_predicted;
    j["im_predicted"] = report.im_predicted;
    j["bound"] = report.bound;
    j["k_residual_real"] = report.k_residual_real;
    Json checks;
    checks["identity_re"] = report.checks.identity_re;
    checks["identity_im"] = report.checks.identity_im;
    checks["sign_re"] = report.checks.sign_re;
    checks["k_bound"] = report.checks.k_bound;
    checks["k_m_relation"] = report.checks.k_m_relation;
    checks["m_ge_one"] = report.checks.m_ge_one;
    checks["w_unit_modulus"] = report.checks.w_unit_modulus;
    checks["all"] = report.checks.all_true();
    j["checks"] = checks;
    return j;
}

/// Function source for the CLI: either an inline coefficient list or a
/// corpus spec.
struct FunctionSpec {
    std::optional<std::vector<Complex>> coefficients;
    std::optional<CorpusSpec> corpus;

    AnalyticMap realize_map() const {
        if (coefficients) return AnalyticMap::polynomial(*coefficients);
        if (corpus) return realize(*corpus);
        throw DomainError("function spec is empty");
    }

    static FunctionSpec from_json(const Json& j) {
        FunctionSpec spec;
        if (j.is_object() && j.contains("coefficients") && !j.contains("family")) {
            spec.coefficients = coefficients_from_json(j.at("coefficients"));
        } else if (j.is_array()) {
            spec.coefficients = coefficients_from_json(j);
        } else if (j.is_object() && j.contains("family")) {
            spec.corpus = corpus_spec_from_json(j);
        } else {
            throw DomainError(
                "function spec needs either coefficients or a corpus family");
        }
        return spec;
    }

    /// Inline "re,im;re,im;..." form, ascending degree; a lone number per
    /// term is taken as re,0.
    static FunctionSpec parse_inline(const std::string& text) {
        std::vector<Complex> coeffs;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find(';', start);
            if (end == std::string::npos) end = text.size();
            const std::string term = text.substr(start, end - start);
            const std::size_t comma = term.find(',');
            try {
                if (comma == std::string::npos) {
                    coeffs.emplace_back(std::stod(term), 0.0);
                } else {
                    coeffs.emplace_back(std::stod(term.substr(0, comma)),
                                        std::stod(term.substr(comma + 1)));
                }
            } catch (const std::exception&) {
                throw DomainError("unparsable coefficient term: \"" + term + "\"");
            }
            start = end + 1;
        }
        FunctionSpec spec;
        spec.coefficients = std::move(coeffs);
        return spec;
    }
};

}  // namespace nunokawa
