#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "nunokawa/analytic_map.hpp"
#include "nunokawa/errors.hpp"
#include "nunokawa/tolerances.hpp"
#include "nunokawa/transforms.hpp"

namespace nunokawa {

inline constexpr double two_pi = 6.283185307179586476925286766559005768;

/// A located first-contact point: |z0| = r_star, Re p(z0) = alpha up to the
/// residual, Re p > alpha strictly inside the circle.
struct BoundaryContact {
    Complex z0;
    double r_star;
    double theta0;
    LevelParameter alpha;
    double beta;      // Im p(z0)
    double residual;  // |Re p(z0) - alpha|
};

/// Result of a first-contact search. The lemma presupposes a contact
/// exists; the search has to report absence and degeneracy as well.
struct ContactOutcome {
    enum class Status { Found, NoContact, Degenerate };

    Status status;
    std::vector<BoundaryContact> contacts;  // Found: non-empty, theta ascending
    double min_real_margin = 0.0;           // NoContact: min_r (min Re p - alpha)
    std::string degenerate_reason;

    static ContactOutcome found(std::vector<BoundaryContact> contacts) {
        return ContactOutcome{Status::Found, std::move(contacts), 0.0, {}};
    }
    static ContactOutcome no_contact(double margin) {
        return ContactOutcome{Status::NoContact, {}, margin, {}};
    }
    static ContactOutcome degenerate(std::string reason) {
        return ContactOutcome{Status::Degenerate, {}, 0.0, std::move(reason)};
    }

    bool is_found() const { return status == Status::Found; }
    bool is_no_contact() const { return status == Status::NoContact; }
    bool is_degenerate() const { return status == Status::Degenerate; }
};

struct CircleMinimum {
    double theta;
    double value;  // Re p at the minimizer
};

struct SearchParams {
    int samples = 4096;
    double tol_radius = nunokawa::tol_radius;
    double tol_contact = nunokawa::tol_contact;
    double tol_beta = nunokawa::tol_beta;
    double r_max = r_max_default;
};

namespace detail {

/// Unit-circle sample table e^{i 2 pi k / n}, cached per thread because the
/// radius bisection rescans the same angular grid at dozens of radii.
inline const std::vector<Complex>& unit_circle(int n) {
    thread_local std::vector<Complex> table;
    thread_local int table_n = 0;
    if (table_n != n) {
        table.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            table[static_cast<std::size_t>(i)] =
                std::polar(1.0, two_pi * static_cast<double>(i) / static_cast<double>(n));
        table_n = n;
    }
    return table;
}

/// Angular profile f(theta) = Re p(r e^{i theta}) and its slope
/// h(theta) = d/dtheta Re p = -Im(z p'(z)).
class CircleProfile {
  public:
    CircleProfile(const AnalyticMap& p, double r) : p_(p), r_(r) {}

    double value(double theta) const {
        const Complex z = r_ * std::polar(1.0, theta);
        const Complex v = p_.value_at(z);
        require_finite(v, "circle value");
        return v.real();
    }

    double slope(double theta) const {
        const Complex z = r_ * std::polar(1.0, theta);
        const Complex d = p_.derivative_at(z);
        require_finite(d, "circle derivative");
        return -std::imag(z * d);
    }

    void sample(int n, std::vector<double>& value, std::vector<double>& slope) const {
        const std::vector<Complex>& units = unit_circle(n);
        value.resize(static_cast<std::size_t>(n));
        slope.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const Complex z = r_ * units[static_cast<std::size_t>(i)];
            const auto [v, d] = p_.value_and_derivative_at(z);
            require_finite(v, "circle value");
            require_finite(d, "circle derivative");
            value[static_cast<std::size_t>(i)] = v.real();
            slope[static_cast<std::size_t>(i)] = -std::imag(z * d);
        }
    }

  private:
    const AnalyticMap& p_;
    double r_;
};

/// Drive the angular derivative to |h| <= 1e-12 by bisection on the sign
/// change; stops early once the bracket reaches floating-point width.
inline double bisect_slope(const CircleProfile& profile, double lo, double hi) {
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 120; ++it) {
        mid = 0.5 * (lo + hi);
        const double h = profile.slope(mid);
        if (std::abs(h) <= 1e-12 || (hi - lo) <= 1e-15) break;
        if (h < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

/// Polish one located contact to the floating-point floor. The radius
/// bisection leaves Re p(z0) - alpha at the tol_radius scale, which the
/// contact quotient amplifies by 1/beta^2; the lemma identities need the
/// residual at rounding level. Along the contact ray Re p is strictly
/// decreasing (z0 p'(z0) is real and negative at a contact), so a pointwise
/// bisection in r nails the level crossing, after which one slope
/// re-refinement restores the angular first-order condition.
inline void polish_contact(const AnalyticMap& p, double alpha, double r_max,
                           double& r, double& theta) {
    const auto level = [&](double radius) {
        const Complex v = p.value_at(radius * std::polar(1.0, theta));
        require_finite(v, "contact polish value");
        return v.real() - alpha;
    };
    double lo = r * (1.0 - 1e-7);
    double hi = std::min(r * (1.0 + 1e-7), r_max);
    if (!(level(lo) > 0.0) || !(level(hi) <= 0.0)) return;  // tangential, keep as is
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (level(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    r = std::abs(level(lo)) < std::abs(level(hi)) ? lo : hi;

    const CircleProfile profile(p, r);
    const double width = 1e-6;
    if (profile.slope(theta - width) < 0.0 && profile.slope(theta + width) >= 0.0)
        theta = bisect_slope(profile, theta - width, theta + width);
}

}  // namespace detail

/// Every local minimum of theta -> Re p(r e^{i theta}), located by a dense
/// sample scan of the angular derivative followed by bisection on each sign
/// change. The sample count doubles (cap 2^20) for high-degree polynomials
/// and whenever two candidate minima fall within 3 sample spacings, since
/// Re p on a circle of a degree-n polynomial has at most 2n local minima.
inline std::vector<CircleMinimum> real_minima_on_circle(const AnalyticMap& p, double r,
                                                        int samples = 4096) {
    require_finite(r, "radius");
    if (!(r > 0.0 && r < 1.0))
        throw DomainError("circle radius must satisfy 0 < r < 1");
    if (samples < 64) throw DomainError("angular scan needs at least 64 samples");

    constexpr int cap = 1 << 20;
    int n = samples;
    const int degree = p.polynomial_degree_hint();
    if (degree > 32)
        while (n < cap && n < 128 * degree) n *= 2;

    const detail::CircleProfile profile(p, r);
    std::vector<double> value;
    std::vector<double> slope;

    for (;;) {
        profile.sample(n, value, slope);
        const double step = two_pi / static_cast<double>(n);

        int raw_argmin = 0;
        for (int i = 1; i < n; ++i)
            if (value[static_cast<std::size_t>(i)] < value[static_cast<std::size_t>(raw_argmin)])
                raw_argmin = i;

        std::vector<CircleMinimum> minima;
        for (int i = 0; i < n; ++i) {
            const int j = (i + 1) % n;
            const double hi_ = slope[static_cast<std::size_t>(i)];
            const double hj = slope[static_cast<std::size_t>(j)];
            if (hi_ < 0.0 && hj >= 0.0) {
                const double a = step * static_cast<double>(i);
                const double b = step * static_cast<double>(i + 1);
                double theta = detail::bisect_slope(profile, a, b);
                if (theta >= two_pi) theta -= two_pi;
                minima.push_back({theta, profile.value(theta)});
            }
        }

        if (minima.empty()) {
            // No descending-to-ascending slope transition: Re p is constant
            // on the circle (up to rounding). Report the raw sample minimum.
            const double theta = step * static_cast<double>(raw_argmin);
            return {{theta, value[static_cast<std::size_t>(raw_argmin)]}};
        }

        std::sort(minima.begin(), minima.end(),
                  [](const CircleMinimum& a, const CircleMinimum& b) {
                      return a.theta < b.theta;
                  });
        minima.erase(std::unique(minima.begin(), minima.end(),
                                 [](const CircleMinimum& a, const CircleMinimum& b) {
                                     return std::abs(a.theta - b.theta) <= 1e-13;
                                 }),
                     minima.end());

        bool crowded = false;
        for (std::size_t i = 0; i + 1 < minima.size() && !crowded; ++i)
            if (minima[i + 1].theta - minima[i].theta < 3.0 * step) crowded = true;
        if (!crowded && minima.size() > 1) {
            const double wrap_gap = two_pi - minima.back().theta + minima.front().theta;
            if (wrap_gap < 3.0 * step) crowded = true;
        }
        // A raw sample beating every refined minimum means a dip slipped
        // between slope samples.
        double best_refined = minima.front().value;
        for (const auto& m : minima) best_refined = std::min(best_refined, m.value);
        const bool missed_dip =
            value[static_cast<std::size_t>(raw_argmin)] < best_refined - 1e-13;

        if ((crowded || missed_dip) && n < cap) {
            n *= 2;
            continue;
        }
        if (missed_dip)
            minima.push_back({step * static_cast<double>(raw_argmin),
                              value[static_cast<std::size_t>(raw_argmin)]});
        return minima;
    }
}

/// Global minimizer of theta -> Re p(r e^{i theta}) over [0, 2 pi).
inline CircleMinimum min_real_on_circle(const AnalyticMap& p, double r,
                                        int samples = 4096) {
    const std::vector<CircleMinimum> minima = real_minima_on_circle(p, r, samples);
    CircleMinimum best = minima.front();
    for (const CircleMinimum& m : minima)
        if (m.value < best.value) best = m;
    return best;
}

/// First-contact search for the level alpha: the smallest radius r* with
/// min Re p on |z| = r* equal to alpha.
///
/// phi(r) = min Re p on the circle r minus alpha is continuous and
/// non-increasing in r (Re p is harmonic, so its minimum over a closed disk
/// sits on the boundary circle), with phi(0+) = 1 - alpha > 0. Bisection on
/// the sign of phi therefore isolates the smallest root, and when
/// phi(r_max) > 0 the positive margin phi(r_max) is the minimum of phi over
/// all admissible radii.
inline ContactOutcome first_contact(const AnalyticMap& p, LevelParameter alpha,
                                    const SearchParams& params = {}) {
    if (!p.is_normalized())
        throw DomainError("first_contact requires p(0) = 1");
    const double a = alpha.value();

    const auto phi = [&](double r) {
        return min_real_on_circle(p, r, params.samples).value - a;
    };

    const double phi_outer = phi(params.r_max);
    if (phi_outer > 0.0) return ContactOutcome::no_contact(phi_outer);

    double lo = 0.0;  // phi(0+) = 1 - alpha > 0, no evaluation needed
    double hi = params.r_max;
    double phi_hi = phi_outer;
    for (int it = 0; it < 200; ++it) {
        if (hi - lo <= params.tol_radius && -phi_hi <= 0.5 * params.tol_contact) break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point width
        const double pm = phi(mid);
        if (pm > 0.0) {
            lo = mid;
        } else {
            hi = mid;
            phi_hi = pm;
        }
    }
    const double r_star = hi;

    std::vector<BoundaryContact> contacts;
    for (const CircleMinimum& m : real_minima_on_circle(p, r_star, params.samples)) {
        if (std::abs(m.value - a) > params.tol_contact) continue;
        double r = r_star;
        double theta = m.theta;
        detail::polish_contact(p, a, params.r_max, r, theta);
        const Complex z0 = r * std::polar(1.0, theta);
        const Complex pz = p.value_at(z0);
        contacts.push_back(
            BoundaryContact{z0, r, theta, alpha, pz.imag(), std::abs(pz.real() - a)});
    }
    if (contacts.empty())
        return ContactOutcome::degenerate(
            "no circle minimum within tol_contact of alpha at the located radius");

    std::vector<BoundaryContact> kept;
    for (const BoundaryContact& c : contacts)
        if (std::abs(c.beta) >= params.tol_beta) kept.push_back(c);
    if (kept.empty())
        return ContactOutcome::degenerate(
            "every contact at r* has |Im p(z0)| below tol_beta");
    return ContactOutcome::found(std::move(kept));
}

/// Grid check of the interior hypothesis Re p > alpha for |z| < r*.
/// Samples a polar grid strictly inside the contact radius; true iff every
/// sample exceeds alpha - tol_contact.
inline bool verify_interior_hypothesis(const AnalyticMap& p, LevelParameter alpha,
                                       const BoundaryContact& contact,
                                       int radial_steps = 64,
                                       int angular_samples = 512) {
    if (radial_steps < 1 || angular_samples < 8)
        throw DomainError("interior grid needs radial_steps >= 1, angular_samples >= 8");
    const double a = alpha.value();
    const double r_in = contact.r_star * (1.0 - 10.0 * tol_radius);
    for (int j = 1; j <= radial_steps; ++j) {
        const double r = r_in * static_cast<double>(j) / static_cast<double>(radial_steps);
        for (int i = 0; i < angular_samples; ++i) {
            const double theta =
                two_pi * static_cast<double>(i) / static_cast<double>(angular_samples);
            const Complex v = p.value_at(r * std::polar(1.0, theta));
            require_finite(v, "interior sample");
            if (!(v.real() > a - tol_contact)) return false;
        }
    }
    return true;
}

}  // namespace nunokawa
