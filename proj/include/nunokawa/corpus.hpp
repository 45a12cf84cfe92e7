#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "nunokawa/analytic_map.hpp"
#include "nunokawa/contact_search.hpp"
#include "nunokawa/errors.hpp"
#include "nunokawa/rng.hpp"
#include "nunokawa/transforms.hpp"

namespace nunokawa {

/// Coefficient draw for random polynomials; the real policy is what the
/// conjugate-pair invariants need, the complex policy covers generality.
enum class CoefficientPolicy { ComplexSquare, RealInterval };

/// Replayable description of one corpus member; the seed fully determines
/// the generated function.
struct CorpusSpec {
    enum class Family { ExampleFamily, ExampleSpecial, RandomPolynomial, HerglotzShift };

    Family family = Family::RandomPolynomial;
    double alpha = 0.0;
    int degree = 2;                                            // RandomPolynomial
    CoefficientPolicy policy = CoefficientPolicy::ComplexSquare;  // RandomPolynomial
    int atoms = 3;                                             // HerglotzShift
    std::uint64_t seed = 0;
};

/// The worked example family 1 + (1-alpha)(2z + z^2).
inline AnalyticMap example_family(LevelParameter alpha) {
    const double t = 1.0 - alpha.value();
    return AnalyticMap::polynomial(
        {Complex(1.0, 0.0), Complex(2.0 * t, 0.0), Complex(t, 0.0)});
}

/// Its alpha = 1/2 member, 1 + z + z^2/2.
inline AnalyticMap example_special() {
    return AnalyticMap::polynomial(
        {Complex(1.0, 0.0), Complex(1.0, 0.0), Complex(0.5, 0.0)});
}

/// Random Caratheodory-class sample: simplex weights (normalized unit
/// exponentials) and uniform kernel angles, deterministic in the seed.
inline HerglotzMixture herglotz_sample(int n_atoms, std::uint64_t seed) {
    if (n_atoms < 1) throw DomainError("herglotz sample needs n_atoms >= 1");
    const CounterRng rng(seed);
    std::vector<double> weights(static_cast<std::size_t>(n_atoms));
    std::vector<double> angles(static_cast<std::size_t>(n_atoms));
    double sum = 0.0;
    for (int j = 0; j < n_atoms; ++j) {
        const double u = rng.uniform01(static_cast<std::uint64_t>(2 * j));
        weights[static_cast<std::size_t>(j)] = -std::log1p(-u);
        sum += weights[static_cast<std::size_t>(j)];
        angles[static_cast<std::size_t>(j)] =
            rng.uniform(static_cast<std::uint64_t>(2 * j + 1), 0.0, two_pi);
    }
    if (sum <= 0.0) {
        // All exponentials collapsed to zero; fall back to equal weights.
        for (double& w : weights) w = 1.0 / static_cast<double>(n_atoms);
    } else {
        for (double& w : weights) w /= sum;
    }
    // Compensate the normalization rounding so the weights sum to 1 exactly;
    // the largest weight absorbs the difference without going negative.
    double total = 0.0;
    std::size_t largest = 0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        total += weights[j];
        if (weights[j] > weights[largest]) largest = j;
    }
    weights[largest] += 1.0 - total;
    return HerglotzMixture(std::move(weights), std::move(angles));
}

/// One scaled draw of the forced-contact construction, before any
/// rejection: p = 1 + c g with g(0) = 0 random and c sized so Re p dips
/// below alpha strictly inside |z| <= 0.9.
struct ContactAttempt {
    AnalyticMap map;
    ContactOutcome outcome;
    bool viable = false;           // false when the scale draw was degenerate
    bool well_conditioned = false; // contacts verifiable at tol_identity in doubles
    double mu = 0.0;               // min Re g on |z| = 0.9
};

/// The contact quotient z0 p'(z0)/(p(z0) - alpha) amplifies the rounding
/// floor of Re p(z0) - alpha by |z0 p'|/beta^2. A draw only supports
/// identity checks at tol_identity when that floor stays two digits below
/// the tolerance.
inline bool contact_well_conditioned(const AnalyticMap& p,
                                     const BoundaryContact& contact) {
    const double r = std::abs(contact.z0 * p.derivative_at(contact.z0));
    const double beta2 = contact.beta * contact.beta;
    const double floor = (r * 2.5e-16 + 1e-12 * std::abs(contact.beta)) / beta2;
    return floor <= 0.1 * tol_identity;
}

inline ContactAttempt random_contact_attempt(int degree, LevelParameter alpha,
                                             std::uint64_t seed,
                                             CoefficientPolicy policy) {
    if (degree < 1) throw DomainError("random contact polynomial needs degree >= 1");
    const CounterRng rng(seed);
    std::vector<Complex> g_coeffs(static_cast<std::size_t>(degree) + 1,
                                  Complex(0.0, 0.0));
    bool nonzero = false;
    for (int j = 1; j <= degree; ++j) {
        const double re = rng.uniform(static_cast<std::uint64_t>(2 * j), -1.0, 1.0);
        const double im = policy == CoefficientPolicy::ComplexSquare
                              ? rng.uniform(static_cast<std::uint64_t>(2 * j + 1), -1.0, 1.0)
                              : 0.0;
        g_coeffs[static_cast<std::size_t>(j)] = Complex(re, im);
        if (re != 0.0 || im != 0.0) nonzero = true;
    }
    if (!nonzero)
        return ContactAttempt{AnalyticMap::polynomial({Complex(1.0, 0.0)}),
                              ContactOutcome::degenerate("zero coefficient draw"),
                              false, false, 0.0};

    const AnalyticMap g = AnalyticMap::polynomial(g_coeffs);
    const double mu = min_real_on_circle(g, 0.9).value;
    // g(0) = 0 and g non-constant force min Re g < 0 on any circle; a near
    // zero minimum would blow the scale factor up, reject it instead.
    if (!(mu < -1e-6))
        return ContactAttempt{g, ContactOutcome::degenerate("scale minimum too small"),
                              false, false, mu};

    const double c = 1.2 * (1.0 - alpha.value()) / std::abs(mu);
    std::vector<Complex> p_coeffs = g_coeffs;
    p_coeffs[0] = Complex(1.0, 0.0);
    for (int j = 1; j <= degree; ++j) p_coeffs[static_cast<std::size_t>(j)] *= c;
    AnalyticMap p = AnalyticMap::polynomial(std::move(p_coeffs));
    ContactOutcome outcome = first_contact(p, alpha);
    bool conditioned = outcome.is_found();
    if (conditioned)
        for (const BoundaryContact& contact : outcome.contacts)
            conditioned = conditioned && contact_well_conditioned(p, contact);
    return ContactAttempt{std::move(p), std::move(outcome), true, conditioned, mu};
}

/// Accepted forced-contact draw: rejection-samples attempts until one
/// yields Found with r* < 0.95, keeping the outcome so callers need not
/// repeat the search.
struct RandomContactDraw {
    AnalyticMap map;
    ContactOutcome outcome;
    int rejections = 0;
    std::uint64_t accepted_seed = 0;
};

inline RandomContactDraw random_contact_draw(
    int degree, LevelParameter alpha, std::uint64_t seed,
    CoefficientPolicy policy = CoefficientPolicy::ComplexSquare) {
    const CounterRng reseed(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        const std::uint64_t attempt_seed =
            attempt == 0 ? seed : reseed.word(static_cast<std::uint64_t>(attempt));
        ContactAttempt trial = random_contact_attempt(degree, alpha, attempt_seed, policy);
        if (trial.viable && trial.well_conditioned && trial.outcome.is_found() &&
            trial.outcome.contacts.front().r_star < 0.95)
            return RandomContactDraw{std::move(trial.map), std::move(trial.outcome),
                                     attempt, attempt_seed};
    }
    throw GenerationError("100 consecutive rejected draws for degree " +
                          std::to_string(degree));
}

inline AnalyticMap random_contact_poly(
    int degree, LevelParameter alpha, std::uint64_t seed,
    CoefficientPolicy policy = CoefficientPolicy::ComplexSquare) {
    return random_contact_draw(degree, alpha, seed, policy).map;
}

/// Materialize a corpus spec into its analytic map.
inline AnalyticMap realize(const CorpusSpec& spec) {
    switch (spec.family) {
        case CorpusSpec::Family::ExampleFamily:
            return example_family(LevelParameter(spec.alpha));
        case CorpusSpec::Family::ExampleSpecial:
            return example_special();
        case CorpusSpec::Family::RandomPolynomial:
            return random_contact_poly(spec.degree, LevelParameter(spec.alpha),
                                       spec.seed, spec.policy);
        case CorpusSpec::Family::HerglotzShift:
            return AnalyticMap::herglotz(herglotz_sample(spec.atoms, spec.seed),
                                         spec.alpha);
    }
    throw DomainError("unknown corpus family");
}

}  // namespace nunokawa
