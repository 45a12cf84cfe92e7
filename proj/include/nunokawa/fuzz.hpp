#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "nunokawa/corpus.hpp"
#include "nunokawa/lemma_engine.hpp"
#include "nunokawa/serialize.hpp"

namespace nunokawa {

/// One corpus draw pushed through the full pipeline
/// (generate -> first_contact -> interior check -> verify).
struct FuzzDraw {
    enum class Status { Pass, Fail, Degenerate, NoContact };

    CorpusSpec spec;
    Status status = Status::Fail;
    double min_signed_gap = std::numeric_limits<double>::infinity();
    bool has_gap = false;
    std::string error;  // exception text when the pipeline raised
    Json detail;        // per-contact reports (kept for failures)
};

struct FuzzSummary {
    int count = 0;
    int passed = 0;
    int failed = 0;
    int degenerate = 0;
    int no_contact = 0;
    double min_signed_gap = std::numeric_limits<double>::infinity();
    bool has_gap = false;
    std::vector<FuzzDraw> failures;  // sorted by seed
};

inline FuzzDraw run_fuzz_draw(const CorpusSpec& spec,
                              const SearchParams& params = {},
                              double tol = tol_identity) {
    FuzzDraw result;
    result.spec = spec;
    try {
        const LevelParameter alpha(spec.alpha);
        AnalyticMap map = example_special();
        ContactOutcome outcome = ContactOutcome::no_contact(0.0);
        if (spec.family == CorpusSpec::Family::RandomPolynomial) {
            RandomContactDraw draw =
                random_contact_draw(spec.degree, alpha, spec.seed, spec.policy);
            map = std::move(draw.map);
            outcome = std::move(draw.outcome);
        } else {
            map = realize(spec);
            outcome = first_contact(map, alpha, params);
        }

        if (outcome.is_no_contact()) {
            result.status = FuzzDraw::Status::NoContact;
            return result;
        }
        if (outcome.is_degenerate()) {
            result.status = FuzzDraw::Status::Degenerate;
            result.detail = Json{{"reason", outcome.degenerate_reason}};
            return result;
        }

        bool all_ok = true;
        Json reports = Json::array();
        for (const BoundaryContact& contact : outcome.contacts) {
            const bool interior = verify_interior_hypothesis(map, alpha, contact);
            const NunokawaReport report = verify_theorem(map, alpha, contact, tol);
            const double gap =
                (report.k - report.bound) * (contact.beta > 0.0 ? 1.0 : -1.0);
            result.min_signed_gap = std::min(result.min_signed_gap, gap);
            result.has_gap = true;
            Json entry = to_json(report);
            entry["interior_hypothesis"] = interior;
            reports.push_back(std::move(entry));
            if (!interior || !report.checks.all_true()) all_ok = false;
        }
        result.detail = Json{{"outcome", to_json(outcome)}, {"reports", reports}};
        result.status = all_ok ? FuzzDraw::Status::Pass : FuzzDraw::Status::Fail;
    } catch (const Error& e) {
        result.status = FuzzDraw::Status::Fail;
        result.error = e.what();
    }
    return result;
}

/// Run a batch of draws. Workers partition by index and write into a
/// per-index slot; tallies, the gap minimum, and the seed-sorted failure
/// list are order-independent, so the summary is identical for any worker
/// count.
inline FuzzSummary fuzz_run(const std::vector<CorpusSpec>& specs, int jobs = 1,
                            const SearchParams& params = {},
                            double tol = tol_identity) {
    std::vector<FuzzDraw> results(specs.size());
    const int workers =
        std::max(1, std::min<int>(jobs, static_cast<int>(specs.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < specs.size(); ++i)
            results[i] = run_fuzz_draw(specs[i], params, tol);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (std::size_t i = static_cast<std::size_t>(w); i < specs.size();
                     i += static_cast<std::size_t>(workers))
                    results[i] = run_fuzz_draw(specs[i], params, tol);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    FuzzSummary summary;
    summary.count = static_cast<int>(specs.size());
    for (const FuzzDraw& draw : results) {
        switch (draw.status) {
            case FuzzDraw::Status::Pass: ++summary.passed; break;
            case FuzzDraw::Status::Fail:
                ++summary.failed;
                summary.failures.push_back(draw);
                break;
            case FuzzDraw::Status::Degenerate: ++summary.degenerate; break;
            case FuzzDraw::Status::NoContact: ++summary.no_contact; break;
        }
        if (draw.has_gap) {
            summary.min_signed_gap = std::min(summary.min_signed_gap, draw.min_signed_gap);
            summary.has_gap = true;
        }
    }
    std::sort(summary.failures.begin(), summary.failures.end(),
              [](const FuzzDraw& a, const FuzzDraw& b) { return a.spec.seed < b.spec.seed; });
    return summary;
}

/// Expand a template spec into count draws with per-draw seeds derived from
/// the base seed by the counter generator.
inline std::vector<CorpusSpec> expand_manifest(const CorpusSpec& base, int count,
                                               std::uint64_t base_seed) {
    if (count < 0) throw DomainError("fuzz count must be non-negative");
    const CounterRng rng(base_seed);
    std::vector<CorpusSpec> specs(static_cast<std::size_t>(count), base);
    for (int i = 0; i < count; ++i)
        specs[static_cast<std::size_t>(i)].seed = rng.word(static_cast<std::uint64_t>(i));
    return specs;
}

inline Json to_json(const FuzzSummary& summary) {
    Json j;
    j["count"] = summary.count;
    j["passed"] = summary.passed;
    j["failed"] = summary.failed;
    j["degenerate"] = summary.degenerate;
    j["no_contact"] = summary.no_contact;
    if (summary.has_gap) j["min_signed_gap"] = summary.min_signed_gap;
    Json failures = Json::array();
    for (const FuzzDraw& draw : summary.failures) {
        Json f;
        f["spec"] = to_json(draw.spec);
        if (!draw.error.empty()) f["error"] = draw.error;
        if (!draw.detail.is_null()) f["detail"] = draw.detail;
        failures.push_back(std::move(f));
    }
    j["failures"] = failures;
    return j;
}

/// Replay manifest for failing draws: the specs alone, seed-sorted.
inline Json failure_manifest(const FuzzSummary& summary) {
    Json arr = Json::array();
    for (const FuzzDraw& draw : summary.failures) arr.push_back(to_json(draw.spec));
    return arr;
}

}  // namespace nunokawa
