#pragma once

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nunokawa/fuzz.hpp"
#include "nunokawa/plot.hpp"

namespace nunokawa::cli {

// Exit codes shared by the report-producing verbs. They are a total
// function of the report content: no code path exits 0 with a false flag.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_flag_failure = 2;
inline constexpr int exit_no_contact = 3;
inline constexpr int exit_degenerate = 4;

namespace detail {

inline std::string utc_stamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline void emit(const std::string& text, const std::string& out_path,
                 std::ostream& fallback) {
    if (out_path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error("cannot open output path: " + out_path);
    file << text;
    if (!file) throw Error("cannot write output path: " + out_path);
}

inline FunctionSpec load_function(const std::string& inline_coeffs,
                                  const std::string& json_path) {
    if (!inline_coeffs.empty() && !json_path.empty())
        throw DomainError("give either --coeffs or --function, not both");
    if (!inline_coeffs.empty()) return FunctionSpec::parse_inline(inline_coeffs);
    if (!json_path.empty()) {
        std::ifstream in(json_path);
        if (!in) throw Error("cannot open function spec: " + json_path);
        Json j;
        try {
            in >> j;
        } catch (const Json::exception& e) {
            throw DomainError(std::string("function spec is not valid JSON: ") + e.what());
        }
        return FunctionSpec::from_json(j);
    }
    throw DomainError("a function is required (--coeffs or --function)");
}

inline std::string render_text_contact(const ContactOutcome& outcome) {
    std::ostringstream out;
    switch (outcome.status) {
        case ContactOutcome::Status::Found:
            out << "status: found (" << outcome.contacts.size() << " contact(s))\n";
            for (std::size_t i = 0; i < outcome.contacts.size(); ++i) {
                const BoundaryContact& c = outcome.contacts[i];
                out << "contact[" << i << "]: z0 = " << format_shortest(c.z0.real())
                    << " + " << format_shortest(c.z0.imag()) << "i  r* = "
                    << format_shortest(c.r_star) << "  theta = "
                    << format_shortest(c.theta0) << "  beta = "
                    << format_shortest(c.beta) << "  residual = "
                    << format_shortest(c.residual) << "\n";
            }
            break;
        case ContactOutcome::Status::NoContact:
            out << "status: no contact (margin " << format_shortest(outcome.min_real_margin)
                << ")\n";
            break;
        case ContactOutcome::Status::Degenerate:
            out << "status: degenerate (" << outcome.degenerate_reason << ")\n";
            break;
    }
    return out.str();
}

inline std::string render_text_report(const NunokawaReport& r, bool interior) {
    std::ostringstream out;
    out << "  k = " << format_shortest(r.k) << "  m = " << format_shortest(r.m)
        << "  bound = " << format_shortest(r.bound) << "\n";
    out << "  logderiv = " << format_shortest(r.logderiv.real()) << " + "
        << format_shortest(r.logderiv.imag()) << "i  (predicted "
        << format_shortest(r.re_predicted) << " + " << format_shortest(r.im_predicted)
        << "i)\n";
    out << "  k_residual_real = " << format_shortest(r.k_residual_real) << "\n";
    const TheoremChecks& c = r.checks;
    out << "  checks: identity_re=" << c.identity_re << " identity_im=" << c.identity_im
        << " sign_re=" << c.sign_re << " k_bound=" << c.k_bound
        << " k_m_relation=" << c.k_m_relation << " m_ge_one=" << c.m_ge_one
        << " w_unit_modulus=" << c.w_unit_modulus << " interior=" << interior
        << " all=" << (c.all_true() && interior) << "\n";
    return out.str();
}

struct CommonOptions {
    std::string coeffs;
    std::string function_path;
    double alpha = 0.0;
    bool alpha_given = false;
    double tol_contact = nunokawa::tol_contact;
    double tol_identity = nunokawa::tol_identity;
    int samples = 4096;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out_path;
    bool stamp = false;

    SearchParams search_params() const {
        SearchParams params;
        params.samples = samples;
        params.tol_contact = tol_contact;
        return params;
    }
};

/// Shared pipeline behind analyze and verify: locate contacts, check the
/// interior hypothesis, verify the lemma at each contact.
inline int run_pipeline(const CommonOptions& opt, std::ostream& out,
                        const std::optional<Complex>& z0_override) {
    const AnalyticMap map = load_function(opt.coeffs, opt.function_path).realize_map();
    const LevelParameter alpha(opt.alpha);

    ContactOutcome outcome = ContactOutcome::no_contact(0.0);
    if (z0_override) {
        const Complex z0 = *z0_override;
        const Complex pz = eval(map, z0);
        outcome = ContactOutcome::found({BoundaryContact{
            z0, std::abs(z0), std::arg(z0) < 0.0 ? std::arg(z0) + two_pi : std::arg(z0),
            alpha, pz.imag(), std::abs(pz.real() - alpha.value())}});
    } else {
        outcome = first_contact(map, alpha, opt.search_params());
    }

    Json j;
    j["outcome"] = to_json(outcome);
    std::ostringstream text;
    text << render_text_contact(outcome);

    int code = exit_ok;
    if (outcome.is_no_contact()) code = exit_no_contact;
    if (outcome.is_degenerate()) code = exit_degenerate;

    if (outcome.is_found()) {
        Json reports = Json::array();
        bool all_ok = true;
        try {
            for (std::size_t i = 0; i < outcome.contacts.size(); ++i) {
                const BoundaryContact& contact = outcome.contacts[i];
                const bool interior = verify_interior_hypothesis(map, alpha, contact);
                const NunokawaReport report =
                    alpha.value() == 0.0
                        ? verify_corollary(map, contact, opt.tol_identity)
                        : verify_theorem(map, alpha, contact, opt.tol_identity);
                Json entry = to_json(report);
                entry["interior_hypothesis"] = interior;
                reports.push_back(std::move(entry));
                text << "report[" << i << "]:\n" << render_text_report(report, interior);
                if (!interior || !report.checks.all_true()) all_ok = false;
            }
        } catch (const DegenerateContactError& e) {
            text << "degenerate: " << e.what() << "\n";
            j["degenerate"] = e.what();
            code = exit_degenerate;
            all_ok = true;
            reports = Json::array();
        } catch (const ZeroValueError& e) {
            text << "degenerate: " << e.what() << "\n";
            j["degenerate"] = e.what();
            code = exit_degenerate;
            all_ok = true;
            reports = Json::array();
        }
        j["reports"] = reports;
        if (code == exit_ok && !all_ok) code = exit_flag_failure;
    }

    if (opt.stamp) j["stamp"] = utc_stamp();
    if (opt.format == "text") {
        emit(text.str(), opt.out_path, out);
    } else {
        emit(j.dump(2) + "\n", opt.out_path, out);
    }
    return code;
}

}  // namespace detail

/// argv-level entry point; argv excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"locate level contacts of analytic maps on the unit disk and "
                 "verify the boundary-lemma identities at them"};
    app.require_subcommand(1);
    app.fallthrough();

    detail::CommonOptions opt;
    auto* alpha_opt =
        app.add_option("--alpha", opt.alpha, "level in [0,1) (default 0)");
    app.add_option("--tol-contact", opt.tol_contact, "contact residual tolerance");
    app.add_option("--tol-identity", opt.tol_identity, "identity check tolerance");
    app.add_option("--samples", opt.samples, "angular samples for circle scans")
        ->check(CLI::Range(64, 1 << 20));
    app.add_option("--seed", opt.seed, "base seed for corpus draws");
    app.add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", opt.out_path, "write output to this path instead of stdout");
    app.add_flag("--stamp", opt.stamp, "include a generation timestamp");

    const auto add_function_options = [&](CLI::App* sub) {
        sub->add_option("--coeffs", opt.coeffs,
                        "inline coefficients \"re,im;re,im;...\" ascending degree");
        sub->add_option("--function", opt.function_path, "JSON function spec path");
    };

    CLI::App* analyze = app.add_subcommand(
        "analyze", "first contact, interior hypothesis, and full lemma report");
    add_function_options(analyze);

    CLI::App* contact =
        app.add_subcommand("contact", "first-contact search only");
    add_function_options(contact);

    CLI::App* verify = app.add_subcommand(
        "verify", "lemma report, optionally at an explicit contact point");
    add_function_options(verify);
    std::string z0_text;
    verify->add_option("--z0", z0_text, "contact point \"re,im\" to verify at");

    CLI::App* fuzz = app.add_subcommand("fuzz", "run corpus draws through the pipeline");
    std::string manifest_path;
    std::string family = "random_polynomial";
    std::string policy = "complex";
    int degree = 6;
    int atoms = 3;
    int count = 100;
    int jobs = 1;
    std::string failures_out = "fuzz_failures.json";
    fuzz->add_option("--manifest", manifest_path,
                     "JSON manifest: template object or explicit draw array");
    fuzz->add_option("--family", family, "corpus family")
        ->check(CLI::IsMember({"random_polynomial", "example_family",
                               "example_special", "herglotz_shift"}));
    fuzz->add_option("--degree", degree, "polynomial degree for random draws");
    fuzz->add_option("--policy", policy, "coefficient policy for random draws")
        ->check(CLI::IsMember({"complex", "real"}));
    fuzz->add_option("--atoms", atoms, "herglotz mixture atoms");
    fuzz->add_option("--count", count, "number of draws");
    fuzz->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
    fuzz->add_option("--failures-out", failures_out,
                     "failure manifest path (written only on failures)");

    CLI::App* plot = app.add_subcommand("plot", "sample circle images as CSV or SVG");
    add_function_options(plot);
    std::vector<double> radii;
    int samples_per_circle = 1024;
    std::string plot_format = "svg";
    plot->add_option("--radii", radii, "circle radii in (0,1]")
        ->required()
        ->delimiter(',');
    plot->add_option("--samples-per-circle", samples_per_circle,
                     "samples per circle (>= 256)");
    plot->add_option("--format", plot_format, "plot output format")
        ->check(CLI::IsMember({"svg", "csv"}));

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("nunokawa");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? exit_ok : exit_usage;
    }
    opt.alpha_given = alpha_opt->count() > 0;

    try {
        if (app.got_subcommand(analyze))
            return detail::run_pipeline(opt, out, std::nullopt);

        if (app.got_subcommand(contact)) {
            const AnalyticMap map =
                detail::load_function(opt.coeffs, opt.function_path).realize_map();
            const ContactOutcome outcome =
                first_contact(map, LevelParameter(opt.alpha), opt.search_params());
            Json j;
            j["outcome"] = to_json(outcome);
            if (opt.stamp) j["stamp"] = detail::utc_stamp();
            detail::emit(opt.format == "text" ? detail::render_text_contact(outcome)
                                              : j.dump(2) + "\n",
                         opt.out_path, out);
            if (outcome.is_no_contact()) return exit_no_contact;
            if (outcome.is_degenerate()) return exit_degenerate;
            return exit_ok;
        }

        if (app.got_subcommand(verify)) {
            std::optional<Complex> z0;
            if (!z0_text.empty()) {
                const std::size_t comma = z0_text.find(',');
                if (comma == std::string::npos)
                    throw DomainError("--z0 needs \"re,im\"");
                try {
                    z0 = Complex(std::stod(z0_text.substr(0, comma)),
                                 std::stod(z0_text.substr(comma + 1)));
                } catch (const std::exception&) {
                    throw DomainError("unparsable --z0: \"" + z0_text + "\"");
                }
            }
            return detail::run_pipeline(opt, out, z0);
        }

        if (app.got_subcommand(fuzz)) {
            std::vector<CorpusSpec> specs;
            if (!manifest_path.empty()) {
                std::ifstream in(manifest_path);
                if (!in) {
                    err << "error: cannot open manifest: " << manifest_path << "\n";
                    return exit_usage;
                }
                Json j;
                try {
                    in >> j;
                } catch (const Json::exception& e) {
                    err << "error: manifest is not valid JSON: " << e.what() << "\n";
                    return exit_usage;
                }
                if (j.is_array()) {
                    for (const Json& item : j) specs.push_back(corpus_spec_from_json(item));
                } else {
                    CorpusSpec base = corpus_spec_from_json(j);
                    const int n = j.value("count", count);
                    const std::uint64_t s = j.value("seed", opt.seed);
                    if (opt.alpha_given) base.alpha = opt.alpha;
                    specs = expand_manifest(base, n, s);
                }
            } else {
                CorpusSpec base;
                base.family = family_from_name(family);
                base.alpha = opt.alpha;
                base.degree = degree;
                base.atoms = atoms;
                base.policy = policy == "real" ? CoefficientPolicy::RealInterval
                                               : CoefficientPolicy::ComplexSquare;
                specs = expand_manifest(base, count, opt.seed);
            }

            const FuzzSummary summary =
                fuzz_run(specs, jobs, opt.search_params(), opt.tol_identity);
            Json j = to_json(summary);
            if (opt.stamp) j["stamp"] = detail::utc_stamp();
            if (opt.format == "text") {
                std::ostringstream text;
                text << "draws: " << summary.count << "  passed: " << summary.passed
                     << "  failed: " << summary.failed
                     << "  degenerate: " << summary.degenerate
                     << "  no_contact: " << summary.no_contact << "\n";
                if (summary.has_gap)
                    text << "min (k - bound) * sign(beta): "
                         << format_shortest(summary.min_signed_gap) << "\n";
                detail::emit(text.str(), opt.out_path, out);
            } else {
                detail::emit(j.dump(2) + "\n", opt.out_path, out);
            }
            if (summary.failed > 0) {
                std::ofstream file(failures_out, std::ios::binary);
                if (!file) {
                    err << "error: cannot write failure manifest: " << failures_out << "\n";
                    return exit_usage;
                }
                file << failure_manifest(summary).dump(2) << "\n";
            }
            return summary.failed == 0 ? exit_ok : exit_flag_failure;
        }

        if (app.got_subcommand(plot)) {
            const AnalyticMap map =
                detail::load_function(opt.coeffs, opt.function_path).realize_map();
            std::sort(radii.begin(), radii.end());
            std::vector<CircleSamples> circles;
            circles.reserve(radii.size());
            for (double r : radii)
                circles.push_back(sample_circle(map, r, samples_per_circle));

            if (plot_format == "csv") {
                detail::emit(render_csv(circles), opt.out_path, out);
                return exit_ok;
            }

            std::optional<double> level;
            std::vector<Complex> markers;
            if (opt.alpha_given) {
                level = opt.alpha;
                const ContactOutcome outcome =
                    first_contact(map, LevelParameter(opt.alpha), opt.search_params());
                if (outcome.is_found())
                    for (const BoundaryContact& c : outcome.contacts)
                        markers.push_back(map.value_at(c.z0));
            }
            std::string svg = render_svg(circles, markers, level);
            if (opt.stamp) {
                const std::string stamp = "<!-- generated " + detail::utc_stamp() + " -->\n";
                const std::size_t after_decl = svg.find('\n') + 1;
                svg.insert(after_decl, stamp);
            }
            detail::emit(svg, opt.out_path, out);
            return exit_ok;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    err << "error: no subcommand\n";
    return exit_usage;
}

}  // namespace nunokawa::cli
