#pragma once

#include <cmath>
#include <sstream>

#include "nunokawa/analytic_map.hpp"
#include "nunokawa/contact_search.hpp"
#include "nunokawa/errors.hpp"
#include "nunokawa/tolerances.hpp"
#include "nunokawa/transforms.hpp"

namespace nunokawa {

/// Named verdicts of the boundary lemma at one contact. A false flag is
/// recorded, never thrown, so a fuzzing harness can collect failures.
struct TheoremChecks {
    bool identity_re = false;      // Re logderiv matches -a b k/(a^2+b^2)
    bool identity_im = false;      // Im logderiv matches b^2 k/(a^2+b^2)
    bool sign_re = false;          // Re logderiv <= 0 up to tolerance
    bool k_bound = false;          // k clears (1/2)(b/(1-a)+(1-a)/b), signed
    bool k_m_relation = false;     // k = m * bound, the Jack-to-k chain
    bool m_ge_one = false;         // Jack constant at least 1
    bool w_unit_modulus = false;   // |w(z0)| = 1

    bool all_true() const {
        return identity_re && identity_im && sign_re && k_bound && k_m_relation &&
               m_ge_one && w_unit_modulus;
    }
};

/// Every quantity of the boundary lemma at a contact, stored so each flag's
/// defining inequality can be re-derived from the numeric fields alone.
struct NunokawaReport {
    double k = 0.0;
    double m = 0.0;
    Complex logderiv;          // z0 p'(z0)/p(z0)
    double re_predicted = 0.0; // -a b k/(a^2+b^2)
    double im_predicted = 0.0; // b^2 k/(a^2+b^2)
    double bound = 0.0;        // (1/2)(b/(1-a) + (1-a)/b)
    double k_residual_real = 0.0;  // |Re(z0 p'(z0)/(p(z0)-a))|
    TheoremChecks checks;
};

/// Jack constant m = Re(z0 w'(z0)/w(z0)) through the Cayley machinery.
/// At a genuine maximum-modulus point of w the quotient is real; a
/// non-negligible imaginary part raises NotExtremalError.
inline double jack_m(const AnalyticMap& q, Complex z0, double tol = tol_identity) {
    const Complex w = cayley_at(q, z0);
    if (std::abs(w) <= tol_zero)
        throw ZeroValueError("w(z0) vanishes, the Jack quotient is undefined");
    const Complex quotient = z0 * cayley_derivative_at(q, z0) / w;
    require_finite(quotient, "jack quotient");
    const double m = quotient.real();
    if (std::abs(quotient.imag()) > tol * (1.0 + std::abs(m))) {
        std::ostringstream msg;
        msg << "z0 is not a maximum-modulus point of w: Im(z0 w'/w) = "
            << quotient.imag();
        throw NotExtremalError(msg.str());
    }
    return m;
}

/// z0 p'(z0)/(p(z0) - alpha), purely imaginary (= i k) at an exact contact.
inline Complex contact_quotient(const AnalyticMap& p, LevelParameter alpha,
                                Complex z0) {
    const Complex v = eval(p, z0) - alpha.value();
    if (std::abs(v) <= tol_beta)
        throw DegenerateContactError(
            "|p(z0) - alpha| below tol_beta, the excluded beta = 0 case");
    const Complex d = p.derivative_at(z0);
    require_finite(d, "map derivative");
    const Complex quotient = z0 * d / v;
    require_finite(quotient, "contact quotient");
    return quotient;
}

/// k = Im(z0 p'(z0)/(p(z0) - alpha)), computed from p directly so
/// normalization rounding never compounds into k.
inline double nunokawa_k(const AnalyticMap& p, LevelParameter alpha, Complex z0) {
    return contact_quotient(p, alpha, z0).imag();
}

/// Full verification of the boundary lemma at one contact: computes k, the
/// Jack constant m of the normalized map, the logarithmic derivative and
/// its predicted decomposition, and grades every conclusion.
inline NunokawaReport verify_theorem(const AnalyticMap& p, LevelParameter alpha,
                                     const BoundaryContact& contact,
                                     double tol = tol_identity) {
    const double a = alpha.value();
    const double b = contact.beta;
    const Complex z0 = contact.z0;

    NunokawaReport report;
    const Complex quotient = contact_quotient(p, alpha, z0);
    report.k = quotient.imag();
    report.k_residual_real = std::abs(quotient.real());

    const AnalyticMap q = normalize(p, alpha);
    report.m = jack_m(q, z0, tol);
    const Complex w = cayley_at(q, z0);

    report.logderiv = log_derivative_at(p, z0);
    const double denom = a * a + b * b;
    report.re_predicted = -a * b * report.k / denom;
    report.im_predicted = b * b * report.k / denom;
    report.bound = 0.5 * (b / (1.0 - a) + (1.0 - a) / b);

    const double scale = tol * (1.0 + std::abs(report.logderiv));
    TheoremChecks& c = report.checks;
    c.identity_re = std::abs(report.logderiv.real() - report.re_predicted) <= scale;
    c.identity_im = std::abs(report.logderiv.imag() - report.im_predicted) <= scale;
    c.sign_re = report.logderiv.real() <= tol;
    if (b > 0.0)
        c.k_bound = report.k >= report.bound - tol && report.bound >= 1.0 - tol;
    else
        c.k_bound = report.k <= report.bound + tol && report.bound <= -(1.0 - tol);
    c.k_m_relation =
        std::abs(report.k - report.m * report.bound) <= tol * (1.0 + std::abs(report.k));
    c.m_ge_one = report.m >= 1.0 - tol;
    c.w_unit_modulus = std::abs(std::abs(w) - 1.0) <= 1e-8;
    return report;
}

/// The alpha = 0 specialization: the logarithmic derivative itself is i k
/// with |k| >= 1, sign following Im p(z0). Requires p(z0) != 0.
inline NunokawaReport verify_corollary(const AnalyticMap& p,
                                       const BoundaryContact& contact,
                                       double tol = tol_identity) {
    const Complex pz = eval(p, contact.z0);
    if (std::abs(pz) <= tol_beta)
        throw ZeroValueError("corollary requires p(z0) != 0");
    return verify_theorem(p, LevelParameter(0.0), contact, tol);
}

}  // namespace nunokawa
