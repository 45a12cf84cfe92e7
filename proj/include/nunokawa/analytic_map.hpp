#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "nunokawa/errors.hpp"
#include "nunokawa/tolerances.hpp"

namespace nunokawa {

using Complex = std::complex<double>;

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Complex z, const char* what) {
    if (!is_finite(z)) throw NonFiniteError(std::string(what) + " is not finite");
}

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw NonFiniteError(std::string(what) + " is not finite");
}

/// Dense polynomial in ascending-degree coefficient order. Degrees stay
/// desk-scale here, so Horner evaluation is optimal and deterministic.
class AnalyticPolynomial {
  public:
    explicit AnalyticPolynomial(std::vector<Complex> coefficients)
        : coeffs_(std::move(coefficients)) {
        if (coeffs_.empty())
            throw DomainError("polynomial needs at least one coefficient");
        for (const Complex& c : coeffs_) require_finite(c, "coefficient");
        while (coeffs_.size() > 1 && coeffs_.back() == Complex(0.0, 0.0))
            coeffs_.pop_back();
    }

    const std::vector<Complex>& coefficients() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    /// Constant term exactly 1, the normalization every lemma input carries.
    bool is_normalized() const { return coeffs_.front() == Complex(1.0, 0.0); }

    /// Horner recurrence, highest degree first so the constant term is the
    /// last addition.
    Complex value_at(Complex z) const {
        Complex acc = coeffs_.back();
        for (std::size_t i = coeffs_.size() - 1; i-- > 0;)
            acc = acc * z + coeffs_[i];
        return acc;
    }

    Complex derivative_at(Complex z) const {
        if (coeffs_.size() == 1) return Complex(0.0, 0.0);
        const std::size_t n = coeffs_.size() - 1;
        Complex acc = static_cast<double>(n) * coeffs_[n];
        for (std::size_t i = n; i-- > 1;)
            acc = acc * z + static_cast<double>(i) * coeffs_[i];
        return acc;
    }

    /// Value and derivative in one Horner pass.
    std::pair<Complex, Complex> value_and_derivative_at(Complex z) const {
        Complex v = coeffs_.back();
        Complex d(0.0, 0.0);
        for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
            d = d * z + v;
            v = v * z + coeffs_[i];
        }
        return {v, d};
    }

    /// Closed-form derivative by coefficient shift.
    AnalyticPolynomial derivative() const {
        if (coeffs_.size() == 1)
            return AnalyticPolynomial({Complex(0.0, 0.0)});
        std::vector<Complex> shifted(coeffs_.size() - 1);
        for (std::size_t j = 1; j < coeffs_.size(); ++j)
            shifted[j - 1] = static_cast<double>(j) * coeffs_[j];
        return AnalyticPolynomial(std::move(shifted));
    }

  private:
    std::vector<Complex> coeffs_;
};

/// Convex combination of half-plane kernels
///   h(z) = sum_j  w_j (1 + u_j z)/(1 - u_j z),   u_j = exp(-i theta_j),
/// with h(0) = 1 and Re h > 0 on the unit disk. This realizes the
/// Caratheodory class constructively.
class HerglotzMixture {
  public:
    HerglotzMixture(std::vector<double> weights, std::vector<double> angles)
        : weights_(std::move(weights)), angles_(std::move(angles)) {
        if (weights_.empty() || weights_.size() != angles_.size())
            throw DomainError("mixture needs matching non-empty weight/angle lists");
        double sum = 0.0;
        for (double w : weights_) {
            require_finite(w, "mixture weight");
            if (w < 0.0) throw DomainError("mixture weights must be non-negative");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-14)
            throw DomainError("mixture weights must sum to 1");
        units_.reserve(angles_.size());
        for (double& a : angles_) {
            require_finite(a, "mixture angle");
            a = std::fmod(a, 2.0 * pi_);
            if (a < 0.0) a += 2.0 * pi_;
            units_.push_back(std::polar(1.0, -a));
        }
    }

    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& angles() const { return angles_; }

    Complex value_at(Complex z) const {
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < weights_.size(); ++j) {
            const Complex uz = units_[j] * z;
            acc += weights_[j] * ((1.0 + uz) / (1.0 - uz));
        }
        return acc;
    }

    /// m-th derivative, m >= 1: the kernel obeys
    ///   d^m/dz^m (1+uz)/(1-uz) = 2 m! u^m / (1-uz)^{m+1}.
    Complex derivative_value_at(Complex z, int order) const {
        if (order < 1 || order > 30)
            throw DomainError("mixture derivative order out of range");
        double fact = 1.0;
        for (int i = 2; i <= order; ++i) fact *= static_cast<double>(i);
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < weights_.size(); ++j) {
            const Complex u = units_[j];
            const Complex den = 1.0 - u * z;
            Complex up(1.0, 0.0);
            Complex denp = den;
            for (int i = 0; i < order; ++i) {
                up *= u;
                denp *= den;
            }
            acc += weights_[j] * (2.0 * fact * up / denp);
        }
        return acc;
    }

    std::pair<Complex, Complex> value_and_derivative_at(Complex z) const {
        Complex v(0.0, 0.0);
        Complex d(0.0, 0.0);
        for (std::size_t j = 0; j < weights_.size(); ++j) {
            const Complex u = units_[j];
            const Complex inv = 1.0 / (1.0 - u * z);
            v += weights_[j] * ((1.0 + u * z) * inv);
            d += weights_[j] * (2.0 * u * inv * inv);
        }
        return {v, d};
    }

  private:
    static constexpr double pi_ = 3.141592653589793238462643383279502884;

    std::vector<double> weights_;
    std::vector<double> angles_;
    std::vector<Complex> units_;
};

class AnalyticMap;
AnalyticMap derivative(const AnalyticMap& f);

namespace detail {

/// p(z) = shift + (1 - shift) h(z); shift < 1 keeps Re p > shift on the disk.
struct HerglotzFormRep {
    HerglotzMixture mixture;
    double shift;
};

/// scale * h^(order)(z), the closed-form derivative chain of a Herglotz form.
struct HerglotzDerivRep {
    HerglotzMixture mixture;
    double scale;
    int order;
};

struct CayleyRep {
    std::shared_ptr<const AnalyticMap> inner;
};

/// First derivative of a Cayley image: -2 f'/(1+f)^2. Keeps the inner map
/// and its derivative map so the next derivative stays pointwise-computable.
struct CayleyDerivRep {
    std::shared_ptr<const AnalyticMap> inner;
    std::shared_ptr<const AnalyticMap> inner_derivative;
};

}  // namespace detail

/// Closed union of the function families the lemma machinery accepts:
/// polynomials, shifted Herglotz mixtures, and Cayley images of either.
/// Every representation supports value-at and derivative-at; instances are
/// immutable values and freely shareable.
class AnalyticMap {
  public:
    static AnalyticMap polynomial(std::vector<Complex> coefficients) {
        return AnalyticMap(Rep(AnalyticPolynomial(std::move(coefficients))));
    }

    static AnalyticMap polynomial(AnalyticPolynomial p) {
        return AnalyticMap(Rep(std::move(p)));
    }

    static AnalyticMap herglotz(HerglotzMixture mixture, double shift) {
        require_finite(shift, "herglotz shift");
        if (shift >= 1.0) throw DomainError("herglotz shift must be below 1");
        return AnalyticMap(Rep(detail::HerglotzFormRep{std::move(mixture), shift}));
    }

    static AnalyticMap cayley_of(AnalyticMap inner) {
        return AnalyticMap(
            Rep(detail::CayleyRep{std::make_shared<const AnalyticMap>(std::move(inner))}));
    }

    Complex value_at(Complex z) const {
        return std::visit([&](const auto& rep) { return value_of(rep, z); }, *rep_);
    }

    Complex derivative_at(Complex z) const {
        return std::visit([&](const auto& rep) { return derivative_of(rep, z); }, *rep_);
    }

    std::pair<Complex, Complex> value_and_derivative_at(Complex z) const {
        return std::visit([&](const auto& rep) { return pair_of(rep, z); }, *rep_);
    }

    /// True when the map carries the p(0) = 1 normalization.
    bool is_normalized() const {
        const Complex v = value_at(Complex(0.0, 0.0));
        return is_finite(v) && std::abs(v - Complex(1.0, 0.0)) <= tol_zero;
    }

    const AnalyticPolynomial* as_polynomial() const {
        return std::get_if<AnalyticPolynomial>(rep_.get());
    }

    const detail::HerglotzFormRep* as_herglotz_form() const {
        return std::get_if<detail::HerglotzFormRep>(rep_.get());
    }

    /// Oscillation hint for angular samplers: polynomial degree when known.
    int polynomial_degree_hint() const {
        if (const auto* p = as_polynomial()) return p->degree();
        return 0;
    }

    friend AnalyticMap derivative(const AnalyticMap& f);

  private:
    using Rep = std::variant<AnalyticPolynomial, detail::HerglotzFormRep,
                             detail::HerglotzDerivRep, detail::CayleyRep,
                             detail::CayleyDerivRep>;

    explicit AnalyticMap(Rep rep) : rep_(std::make_shared<const Rep>(std::move(rep))) {}

    static Complex value_of(const AnalyticPolynomial& rep, Complex z) {
        return rep.value_at(z);
    }
    static Complex value_of(const detail::HerglotzFormRep& rep, Complex z) {
        return rep.shift + (1.0 - rep.shift) * rep.mixture.value_at(z);
    }
    static Complex value_of(const detail::HerglotzDerivRep& rep, Complex z) {
        return rep.scale * rep.mixture.derivative_value_at(z, rep.order);
    }
    static Complex value_of(const detail::CayleyRep& rep, Complex z) {
        const Complex v = rep.inner->value_at(z);
        const Complex den = 1.0 + v;
        if (std::abs(den) < tol_zero)
            throw PoleError("cayley image evaluated at a pole of (1-f)/(1+f)");
        return (1.0 - v) / den;
    }
    static Complex value_of(const detail::CayleyDerivRep& rep, Complex z) {
        const auto [v, d] = rep.inner->value_and_derivative_at(z);
        const Complex den = 1.0 + v;
        if (std::abs(den) < tol_zero)
            throw PoleError("cayley derivative evaluated at a pole of (1-f)/(1+f)");
        return -2.0 * d / (den * den);
    }

    static Complex derivative_of(const AnalyticPolynomial& rep, Complex z) {
        return rep.derivative_at(z);
    }
    static Complex derivative_of(const detail::HerglotzFormRep& rep, Complex z) {
        return (1.0 - rep.shift) * rep.mixture.derivative_value_at(z, 1);
    }
    static Complex derivative_of(const detail::HerglotzDerivRep& rep, Complex z) {
        return rep.scale * rep.mixture.derivative_value_at(z, rep.order + 1);
    }
    static Complex derivative_of(const detail::CayleyRep& rep, Complex z) {
        const auto [v, d] = rep.inner->value_and_derivative_at(z);
        const Complex den = 1.0 + v;
        if (std::abs(den) < tol_zero)
            throw PoleError("cayley image differentiated at a pole of (1-f)/(1+f)");
        return -2.0 * d / (den * den);
    }
    static Complex derivative_of(const detail::CayleyDerivRep& rep, Complex z) {
        // d/dz of -2 f'/(1+f)^2 = -2 (f'' (1+f) - 2 f'^2) / (1+f)^3.
        const auto [v, d] = rep.inner->value_and_derivative_at(z);
        const Complex dd = rep.inner_derivative->derivative_at(z);
        const Complex den = 1.0 + v;
        if (std::abs(den) < tol_zero)
            throw PoleError("cayley derivative differentiated at a pole of (1-f)/(1+f)");
        return -2.0 * (dd * den - 2.0 * d * d) / (den * den * den);
    }

    template <typename R>
    static std::pair<Complex, Complex> pair_of(const R& rep, Complex z) {
        return {value_of(rep, z), derivative_of(rep, z)};
    }
    static std::pair<Complex, Complex> pair_of(const AnalyticPolynomial& rep, Complex z) {
        return rep.value_and_derivative_at(z);
    }
    static std::pair<Complex, Complex> pair_of(const detail::HerglotzFormRep& rep,
                                               Complex z) {
        const auto [v, d] = rep.mixture.value_and_derivative_at(z);
        return {rep.shift + (1.0 - rep.shift) * v, (1.0 - rep.shift) * d};
    }

    std::shared_ptr<const Rep> rep_;
};

/// Closed-form derivative map. Polynomials shift coefficients, Herglotz
/// forms differentiate kernel-wise, Cayley images carry the quotient rule.
inline AnalyticMap derivative(const AnalyticMap& f) {
    using detail::CayleyDerivRep;
    using detail::CayleyRep;
    using detail::HerglotzDerivRep;
    using detail::HerglotzFormRep;
    return std::visit(
        [&](const auto& rep) -> AnalyticMap {
            using R = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<R, AnalyticPolynomial>) {
                return AnalyticMap::polynomial(rep.derivative());
            } else if constexpr (std::is_same_v<R, HerglotzFormRep>) {
                return AnalyticMap(AnalyticMap::Rep(
                    HerglotzDerivRep{rep.mixture, 1.0 - rep.shift, 1}));
            } else if constexpr (std::is_same_v<R, HerglotzDerivRep>) {
                return AnalyticMap(AnalyticMap::Rep(
                    HerglotzDerivRep{rep.mixture, rep.scale, rep.order + 1}));
            } else if constexpr (std::is_same_v<R, CayleyRep>) {
                return AnalyticMap(AnalyticMap::Rep(CayleyDerivRep{
                    rep.inner,
                    std::make_shared<const AnalyticMap>(derivative(*rep.inner))}));
            } else {
                throw DomainError(
                    "no closed-form derivative map beyond the first Cayley derivative");
            }
        },
        *f.rep_);
}

/// f(z) for |z| < 1. Rejects non-finite input at the boundary so lemma
/// checks never compare NaN.
inline Complex eval(const AnalyticMap& f, Complex z) {
    require_finite(z, "evaluation point");
    if (std::abs(z) >= 1.0)
        throw DomainError("evaluation point must lie in the open unit disk");
    const Complex v = f.value_at(z);
    require_finite(v, "map value");
    return v;
}

/// z f'(z)/f(z), the quantity every conclusion of the boundary lemma is
/// phrased in.
inline Complex log_derivative_at(const AnalyticMap& f, Complex z) {
    require_finite(z, "evaluation point");
    if (std::abs(z) >= 1.0)
        throw DomainError("evaluation point must lie in the open unit disk");
    const Complex v = f.value_at(z);
    require_finite(v, "map value");
    if (std::abs(v) <= tol_zero)
        throw ZeroValueError("|f(z)| below tol_zero in logarithmic derivative");
    const Complex d = f.derivative_at(z);
    require_finite(d, "map derivative");
    const Complex out = z * d / v;
    require_finite(out, "logarithmic derivative");
    return out;
}

}  // namespace nunokawa
