// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion pins its tolerances in code; runtimes are enforced against
// the stated budgets.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "nunokawa/cli.hpp"
#include "nunokawa/corpus.hpp"
#include "nunokawa/lemma_engine.hpp"
#include "nunokawa/plot.hpp"
#include "oracles.hpp"

using namespace nunokawa;

namespace {

struct Criterion {
    std::string label;
    bool passed = true;
    std::vector<std::string> notes;
    double seconds = 0.0;
    double budget_seconds = 0.0;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            if (notes.size() < 8) notes.push_back(what);
        }
    }
};

void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
    const int workers = std::max(1, std::min(jobs, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w]() {
            for (int i = w; i < n; i += workers) body(i);
        });
    for (std::thread& t : pool) t.join();
}

int hardware_jobs() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 4 : static_cast<int>(std::min(hc, 8u));
}

const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

AnalyticMap special_map() {
    return AnalyticMap::polynomial(
        {Complex(1.0, 0.0), Complex(1.0, 0.0), Complex(0.5, 0.0)});
}

std::string fmt(double x) { return format_shortest(x); }

// ---------------------------------------------------------------------------

void criterion_1(Criterion& c) {
    const AnalyticMap p = special_map();
    const LevelParameter alpha(0.5);

    const ContactOutcome outcome = first_contact(p, alpha);
    c.require(outcome.is_found(), "first_contact must find the pair");
    if (!outcome.is_found()) return;
    c.require(outcome.contacts.size() == 2, "exactly two contacts");
    c.require(std::abs(outcome.contacts.front().r_star - inv_sqrt2) <= 1e-9,
              "r* = 1/sqrt(2) within 1e-9, got " +
                  fmt(outcome.contacts.front().r_star));
    c.require(std::abs(outcome.contacts[0].z0 - Complex(-0.5, 0.5)) <= 1e-8,
              "upper contact within 1e-8 of -1/2 + i/2");
    c.require(std::abs(outcome.contacts[1].z0 - Complex(-0.5, -0.5)) <= 1e-8,
              "lower contact within 1e-8 of -1/2 - i/2");

    c.require(std::abs(log_derivative_at(p, Complex(-0.5, 0.5)) - Complex(-0.8, 0.4)) <=
                  1e-9,
              "logderiv = -4/5 + 2i/5 within 1e-9");
    c.require(std::abs(log_derivative_at(p, Complex(-0.5, -0.5)) -
                       Complex(-0.8, -0.4)) <= 1e-9,
              "logderiv = -4/5 - 2i/5 within 1e-9");

    c.require(std::abs(nunokawa_k(p, alpha, Complex(-0.5, 0.5)) - 2.0) <= 1e-8,
              "k = 2 within 1e-8");
    c.require(std::abs(nunokawa_k(p, alpha, Complex(-0.5, -0.5)) + 2.0) <= 1e-8,
              "k = -2 within 1e-8");

    const NunokawaReport upper =
        verify_theorem(p, alpha, outcome.contacts[0]);
    const NunokawaReport lower =
        verify_theorem(p, alpha, outcome.contacts[1]);
    const double bound_up =
        0.5 * (0.25 / 0.5 + 0.5 / 0.25);  // exact (alpha, beta) = (1/2, 1/4)
    const double bound_dn = 0.5 * (-0.25 / 0.5 + 0.5 / -0.25);
    c.require(bound_up == 1.25 && bound_dn == -1.25,
              "bound = +/- 5/4 exactly from (1/2, +/- 1/4)");
    c.require(upper.checks.all_true(), "all flags true on the upper branch");
    c.require(lower.checks.all_true(), "all flags true on the lower branch");
    c.require(verify_interior_hypothesis(p, alpha, outcome.contacts[0]) &&
                  verify_interior_hypothesis(p, alpha, outcome.contacts[1]),
              "interior hypothesis holds");
}

void criterion_2(Criterion& c) {
    for (int i = 0; i < 50; ++i) {
        const double a = 0.98 * static_cast<double>(i) / 49.0;
        const LevelParameter alpha(a);
        const AnalyticMap p = example_family(alpha);
        const Complex z0(-0.5, 0.5);
        const Complex pz = p.value_at(z0);
        const BoundaryContact contact{z0, inv_sqrt2, 3.0 * two_pi / 8.0, alpha,
                                      pz.imag(), std::abs(pz.real() - a)};
        const NunokawaReport r = verify_theorem(p, alpha, contact);
        c.require(std::abs(r.k - 2.0) <= 1e-8,
                  "k = 2 within 1e-8 at alpha " + fmt(a) + ", got " + fmt(r.k));
        c.require(std::abs(r.bound - 1.25) <= 1e-12, "bound = 5/4 at alpha " + fmt(a));
        const double t = 1.0 - a;
        const double denom = 4.0 * a * a + t * t;
        const Complex expected(-4.0 * a * t / denom, 2.0 * t * t / denom);
        c.require(std::abs(r.logderiv - expected) <= 1e-9,
                  "logderiv closed form within 1e-9 at alpha " + fmt(a));
        if (!c.passed) return;
    }
}

void criterion_3(Criterion& c) {
    const LevelParameter alpha(0.5);
    const AnalyticMap q = normalize(example_family(alpha), alpha);
    const Complex z0(-0.5, 0.5);
    const double m = jack_m(q, z0);
    c.require(std::abs(m - 1.6) <= 1e-8, "jack_m = 8/5 within 1e-8, got " + fmt(m));

    // Independent confirmation: finite-difference differentiation of w.
    const Complex w = cayley_at(q, z0);
    const Complex wd_fd = oracles::central_difference(
        [&](Complex z) { return cayley_at(q, z); }, z0);
    const Complex jack_fd = z0 * wd_fd / w;
    c.require(std::abs(jack_fd.real() - 1.6) <= 1e-6,
              "finite-difference m within 1e-6 of 8/5, got " + fmt(jack_fd.real()));
    c.require(std::abs(jack_fd.imag()) <= 1e-6, "finite-difference m is real");

    // The same value across the family.
    for (double a : {0.0, 0.25, 0.75}) {
        const LevelParameter la(a);
        const double mf = jack_m(normalize(example_family(la), la), z0);
        c.require(std::abs(mf - 1.6) <= 1e-8, "jack_m = 8/5 at alpha " + fmt(a));
    }
}

struct PropertyTally {
    std::atomic<int> contacts{0};
    std::atomic<int> corollary_contacts{0};
    std::atomic<int> failures{0};
    std::mutex mutex;
    std::vector<std::string> messages;

    void fail(const std::string& msg) {
        failures.fetch_add(1);
        std::lock_guard<std::mutex> lock(mutex);
        if (messages.size() < 8) messages.push_back(msg);
    }
};

void criteria_4_and_5(Criterion& c4, Criterion& c5) {
    constexpr int draws = 1050;
    const double alphas[3] = {0.0, 0.3, 0.6};
    const CounterRng seeds(0xC4u);
    PropertyTally tally;

    parallel_for(draws, hardware_jobs(), [&](int i) {
        const int degree = 2 + i % 7;
        const double a = alphas[i % 3];
        const LevelParameter alpha(a);
        const std::uint64_t seed = seeds.word(static_cast<std::uint64_t>(i));
        try {
            const RandomContactDraw draw = random_contact_draw(degree, alpha, seed);
            const AnalyticMap q = normalize(draw.map, alpha);
            for (const BoundaryContact& contact : draw.outcome.contacts) {
                tally.contacts.fetch_add(1);
                const NunokawaReport r = verify_theorem(draw.map, alpha, contact);
                const Complex w = cayley_at(q, contact.z0);
                const std::string tag =
                    "seed " + std::to_string(seed) + " degree " + std::to_string(degree) +
                    " alpha " + fmt(a);
                if (std::abs(std::abs(w) - 1.0) > 1e-8)
                    tally.fail(tag + ": |w(z0)| off unit modulus");
                if (r.k_residual_real > 1e-8)
                    tally.fail(tag + ": contact quotient not purely imaginary");
                if (r.m < 1.0 - 1e-8) tally.fail(tag + ": m below 1");
                if (std::abs(r.k - r.m * r.bound) > 1e-8 * (1.0 + std::abs(r.k)))
                    tally.fail(tag + ": k-m relation broken");
                const bool bound_ok =
                    contact.beta > 0.0
                        ? (r.k >= r.bound - 1e-8 && r.bound >= 1.0 - 1e-8)
                        : (r.k <= r.bound + 1e-8 && r.bound <= -1.0 + 1e-8);
                if (!bound_ok) tally.fail(tag + ": signed k bound broken");
                if (r.logderiv.real() > 1e-8)
                    tally.fail(tag + ": Re logderiv positive");
                if (!r.checks.all_true()) tally.fail(tag + ": a report flag is false");

                if (a == 0.0) {
                    tally.corollary_contacts.fetch_add(1);
                    const NunokawaReport cr = verify_corollary(draw.map, contact);
                    if (std::abs(cr.logderiv.real()) > 1e-8)
                        tally.fail(tag + ": corollary Re logderiv nonzero");
                    if (std::abs(cr.k) < 1.0 - 1e-8)
                        tally.fail(tag + ": corollary |k| below 1");
                    if ((contact.beta > 0.0) != (cr.k > 0.0))
                        tally.fail(tag + ": corollary k sign mismatch");
                    if (!cr.checks.all_true())
                        tally.fail(tag + ": corollary flag false");
                }
            }
        } catch (const Error& e) {
            tally.fail("seed " + std::to_string(seed) + ": " + e.what());
        }
    });

    c4.require(tally.contacts.load() >= 1000, "at least 1000 verified contacts");
    c4.require(tally.failures.load() == 0,
               std::to_string(tally.failures.load()) + " failures");
    for (const std::string& m : tally.messages) c4.notes.push_back(m);
    c4.notes.push_back(std::to_string(draws) + " draws, " +
                       std::to_string(tally.contacts.load()) + " contacts checked");

    c5.require(tally.corollary_contacts.load() >= 200,
               "enough alpha = 0 contacts for the corollary subset");
    c5.require(tally.failures.load() == 0, "corollary subset shares criterion 4 failures");
    c5.notes.push_back(std::to_string(tally.corollary_contacts.load()) +
                       " corollary contacts checked");
}

void criterion_6(Criterion& c) {
    const CounterRng rng(0xC6u);
    for (int i = 0; i < 100; ++i) {
        const int atoms = 1 + i % 6;
        const double a = rng.uniform(static_cast<std::uint64_t>(2 * i), 0.0, 0.9);
        const std::uint64_t seed = rng.word(static_cast<std::uint64_t>(2 * i + 1));
        const AnalyticMap p =
            AnalyticMap::herglotz(herglotz_sample(atoms, seed), a);
        const ContactOutcome outcome = first_contact(p, LevelParameter(a));
        c.require(outcome.is_no_contact(),
                  "herglotz shift seed " + std::to_string(seed) + " must be NoContact");
        if (!c.passed) return;
    }
}

void criterion_7(Criterion& c) {
    constexpr int cases = 100;
    const CounterRng seeds(0xC7u);
    std::atomic<int> failures{0};
    std::mutex mutex;
    std::vector<std::string> messages;

    parallel_for(cases, hardware_jobs(), [&](int i) {
        const int degree = 2 + i % 7;
        const std::uint64_t seed = seeds.word(static_cast<std::uint64_t>(i));
        const AnalyticMap p =
            AnalyticMap::polynomial(oracles::random_coefficients(degree, seed));
        const CircleMinimum fast = min_real_on_circle(p, 0.6);
        const oracles::GridMinimum slow = oracles::brute_force_circle_min(p, 0.6, 1000000);
        const bool value_ok = std::abs(fast.value - slow.value) <= 1e-9;

        double angle_dist = two_pi;
        for (const CircleMinimum& m : real_minima_on_circle(p, 0.6))
            if (m.value <= fast.value + 1e-12)
                angle_dist =
                    std::min(angle_dist, oracles::circular_distance(m.theta, slow.theta));
        const bool angle_ok = angle_dist <= 1e-6;

        if (!value_ok || !angle_ok) {
            failures.fetch_add(1);
            std::lock_guard<std::mutex> lock(mutex);
            if (messages.size() < 8)
                messages.push_back("seed " + std::to_string(seed) + ": value diff " +
                                   fmt(std::abs(fast.value - slow.value)) +
                                   ", angle diff " + fmt(angle_dist));
        }
    });

    c.require(failures.load() == 0, std::to_string(failures.load()) + " oracle mismatches");
    for (const std::string& m : messages) c.notes.push_back(m);
}

void criterion_8(Criterion& c) {
    const std::vector<std::string> csv_args = {
        "plot", "--coeffs", "1,0;1,0;0.5,0",
        "--radii", "0.7071067811865476,1",
        "--samples-per-circle", "1024", "--format", "csv"};
    std::ostringstream csv_out;
    std::ostringstream err;
    const int csv_code = cli::run(csv_args, csv_out, err);
    c.require(csv_code == 0, "plot csv exits 0");
    if (csv_code != 0) return;

    const std::vector<CircleSamples> circles = parse_csv(csv_out.str());
    c.require(circles.size() == 2, "two circle blocks");
    const CircleSamples& inner = circles.front();  // radii sorted ascending
    double min_re = inner.values.front().real();
    for (const Complex& v : inner.values) min_re = std::min(min_re, v.real());
    c.require(std::abs(min_re - 0.5) <= 1e-8,
              "inner-circle min Re = 1/2 within 1e-8, got " + fmt(min_re));

    bool plus_side = false;
    bool minus_side = false;
    for (const Complex& v : inner.values) {
        if (std::abs(v.real() - min_re) <= 1e-8) {
            const bool plus = std::abs(v.imag() - 0.25) <= 1e-6;
            const bool minus = std::abs(v.imag() + 0.25) <= 1e-6;
            c.require(plus || minus, "minimum attained with Im = +/- 1/4 within 1e-6");
            plus_side = plus_side || plus;
            minus_side = minus_side || minus;
        }
    }
    c.require(plus_side && minus_side, "both tangency points present");

    const std::vector<std::string> svg_args = {
        "plot", "--coeffs", "1,0;1,0;0.5,0",
        "--radii", "0.7071067811865476,1",
        "--samples-per-circle", "1024", "--alpha", "0.5", "--format", "svg"};
    std::ostringstream svg_out;
    const int svg_code = cli::run(svg_args, svg_out, err);
    c.require(svg_code == 0, "plot svg exits 0");

    const std::string golden_path = std::string(NUNOKAWA_GOLDEN_DIR) + "/figure1.svg";
    std::ifstream golden(golden_path, std::ios::binary);
    if (!golden) {
        c.require(false, "golden file missing: " + golden_path);
        return;
    }
    std::ostringstream golden_text;
    golden_text << golden.rdbuf();
    c.require(svg_out.str() == golden_text.str(), "SVG matches the golden bytes");
}

}  // namespace

int main() {
    std::vector<Criterion> criteria(8);
    criteria[0] = {"1: worked special case (r*, contacts, logderiv, k, bound, flags)",
                   true, {}, 0.0, 1.0};
    criteria[1] = {"2: family grid k = 2, bound = 5/4, logderiv closed form",
                   true, {}, 0.0, 5.0};
    criteria[2] = {"3: jack m = 8/5 with finite-difference confirmation",
                   true, {}, 0.0, 1.0};
    criteria[3] = {"4: proof-identity property suite over 1000+ forced contacts",
                   true, {}, 0.0, 60.0};
    criteria[4] = {"5: corollary subset at alpha = 0",
                   true, {}, 0.0, 60.0};
    criteria[5] = {"6: herglotz negative control, 100 draws NoContact",
                   true, {}, 0.0, 30.0};
    criteria[6] = {"7: circle-minimum oracle equivalence on 100 polynomials",
                   true, {}, 0.0, 60.0};
    criteria[7] = {"8: figure regression, CSV tangency and golden SVG",
                   true, {}, 0.0, 1.0};

    const auto timed = [](Criterion& c, const std::function<void(Criterion&)>& body) {
        const auto start = std::chrono::steady_clock::now();
        try {
            body(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("unexpected exception: ") + e.what());
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
        if (c.budget_seconds > 0.0 && c.seconds > c.budget_seconds)
            c.require(false, "runtime " + format_shortest(c.seconds) + " s over budget " +
                                 format_shortest(c.budget_seconds) + " s");
    };

    timed(criteria[0], criterion_1);
    timed(criteria[1], criterion_2);
    timed(criteria[2], criterion_3);
    {
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria_4_and_5(criteria[3], criteria[4]);
        } catch (const std::exception& e) {
            criteria[3].require(false, std::string("unexpected exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        criteria[3].seconds = secs;
        criteria[4].seconds = secs;
        if (secs > 60.0) {
            criteria[3].require(false, "runtime over the 60 s budget");
            criteria[4].require(false, "runtime over the 60 s budget");
        }
    }
    timed(criteria[5], criterion_6);
    timed(criteria[6], criterion_7);
    timed(criteria[7], criterion_8);

    bool all = true;
    for (const Criterion& c : criteria) {
        std::printf("[%s] criterion %s (%.2f s)\n", c.passed ? "PASS" : "FAIL",
                    c.label.c_str(), c.seconds);
        for (const std::string& note : c.notes) std::printf("        %s\n", note.c_str());
        all = all && c.passed;
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed"
                            : "acceptance: FAILURES present");
    return all ? 0 : 1;
}
