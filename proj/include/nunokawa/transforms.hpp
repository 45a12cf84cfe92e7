#pragma once

#include <cmath>
#include <vector>

#include "nunokawa/analytic_map.hpp"
#include "nunokawa/errors.hpp"
#include "nunokawa/tolerances.hpp"

namespace nunokawa {

/// Level alpha with 0 <= alpha < 1.
class LevelParameter {
  public:
    explicit LevelParameter(double alpha) : alpha_(alpha) {
        require_finite(alpha, "alpha");
        if (alpha < 0.0 || alpha >= 1.0)
            throw DomainError("alpha must satisfy 0 <= alpha < 1");
    }

    double value() const { return alpha_; }

  private:
    double alpha_;
};

/// The pair (alpha, beta) of a boundary value p(z0) = alpha + beta i with
/// beta != 0.
class ContactValue {
  public:
    ContactValue(LevelParameter alpha, double beta) : alpha_(alpha), beta_(beta) {
        require_finite(beta, "beta");
        if (beta == 0.0) throw DomainError("contact value requires beta != 0");
    }

    double alpha() const { return alpha_.value(); }
    double beta() const { return beta_; }

    /// rho = beta/(1-alpha), the normalized imaginary level.
    double rho() const { return beta_ / (1.0 - alpha_.value()); }

  private:
    LevelParameter alpha_;
    double beta_;
};

/// Affine level normalization q = (p - alpha)/(1 - alpha); q(0) = 1 and the
/// level set Re p = alpha becomes Re q = 0.
inline AnalyticMap normalize(const AnalyticMap& p, LevelParameter alpha) {
    if (!p.is_normalized())
        throw DomainError("normalize requires p(0) = 1");
    const double a = alpha.value();
    const double scale = 1.0 / (1.0 - a);
    if (const auto* poly = p.as_polynomial()) {
        std::vector<Complex> coeffs = poly->coefficients();
        coeffs[0] = (coeffs[0] - a) * scale;
        for (std::size_t j = 1; j < coeffs.size(); ++j) coeffs[j] *= scale;
        return AnalyticMap::polynomial(std::move(coeffs));
    }
    if (const auto* form = p.as_herglotz_form()) {
        // shift + (1-shift) h normalizes to another shifted form, the shift
        // moving to (shift - alpha)/(1 - alpha).
        return AnalyticMap::herglotz(form->mixture, (form->shift - a) * scale);
    }
    throw DomainError("normalize supports polynomial and herglotz representations");
}

/// w(z) = (1 - q(z))/(1 + q(z)) pointwise; w(0) = 0 when q(0) = 1, and
/// Re q > 0 maps to |w| < 1.
inline Complex cayley_at(const AnalyticMap& q, Complex z) {
    require_finite(z, "evaluation point");
    if (std::abs(z) >= 1.0)
        throw DomainError("evaluation point must lie in the open unit disk");
    const Complex v = q.value_at(z);
    require_finite(v, "map value");
    const Complex den = 1.0 + v;
    if (std::abs(den) < tol_zero)
        throw PoleError("cayley transform evaluated where 1 + q(z) vanishes");
    const Complex w = (1.0 - v) / den;
    require_finite(w, "cayley value");
    return w;
}

/// w'(z) = -2 q'(z)/(1 + q(z))^2 pointwise.
inline Complex cayley_derivative_at(const AnalyticMap& q, Complex z) {
    require_finite(z, "evaluation point");
    if (std::abs(z) >= 1.0)
        throw DomainError("evaluation point must lie in the open unit disk");
    const auto [v, d] = q.value_and_derivative_at(z);
    require_finite(v, "map value");
    require_finite(d, "map derivative");
    const Complex den = 1.0 + v;
    if (std::abs(den) < tol_zero)
        throw PoleError("cayley derivative evaluated where 1 + q(z) vanishes");
    const Complex w = -2.0 * d / (den * den);
    require_finite(w, "cayley derivative");
    return w;
}

/// Closed form of w at a contact value:
///   w = ((1-a)^2 - b^2 - 2(1-a) b i) / ((1-a)^2 + b^2),
/// always of modulus 1. This is the unit-modulus step of the lemma's proof
/// chain in computable form.
inline Complex unit_modulus_closed_form(const ContactValue& c) {
    const double t = 1.0 - c.alpha();
    const double b = c.beta();
    const double den = t * t + b * b;
    return Complex((t * t - b * b) / den, -2.0 * t * b / den);
}

}  // namespace nunokawa
