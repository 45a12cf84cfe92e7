#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "nunokawa/analytic_map.hpp"
#include "nunokawa/corpus.hpp"
#include "oracles.hpp"

using namespace nunokawa;

namespace {

AnalyticMap special_map() {
    return AnalyticMap::polynomial(
        {Complex(1.0, 0.0), Complex(1.0, 0.0), Complex(0.5, 0.0)});
}

}  // namespace

TEST_CASE("eval reproduces the worked contact value 1/2 + i/4") {
    const AnalyticMap p = special_map();
    const Complex v = eval(p, Complex(-0.5, 0.5));
    CHECK(std::abs(v - Complex(0.5, 0.25)) <= 1e-15);
}

TEST_CASE("eval of a normalized map at the origin is exactly 1") {
    CHECK(eval(special_map(), Complex(0.0, 0.0)) == Complex(1.0, 0.0));
    const AnalyticMap h =
        AnalyticMap::herglotz(herglotz_sample(4, 7u), 0.25);
    CHECK(std::abs(eval(h, Complex(0.0, 0.0)) - Complex(1.0, 0.0)) <= 1e-14);
}

TEST_CASE("Horner evaluation matches term-by-term summation") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::vector<Complex> coeffs = oracles::random_coefficients(8, seed);
        const AnalyticMap f = AnalyticMap::polynomial(coeffs);
        const CounterRng rng(seed ^ 0xABCDu);
        const double theta = rng.uniform(0, 0.0, two_pi);
        const Complex z = 0.5 * std::polar(1.0, theta);
        const Complex horner = eval(f, z);
        const Complex naive = oracles::naive_poly_eval(coeffs, z);
        CHECK(std::abs(horner - naive) <= 1e-14 * (1.0 + std::abs(naive)));
    }
}

TEST_CASE("Horner vs naive over degrees up to 32 and |z| up to 0.95") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const CounterRng rng(seed * 977u + 13u);
        const int degree = 1 + static_cast<int>(rng.word(0) % 32);
        const std::vector<Complex> coeffs =
            oracles::random_coefficients(degree, seed + 5000u);
        const AnalyticMap f = AnalyticMap::polynomial(coeffs);
        const double r = rng.uniform(1, 0.0, 0.95);
        const Complex z = r * std::polar(1.0, rng.uniform(2, 0.0, two_pi));
        const Complex horner = eval(f, z);
        const Complex naive = oracles::naive_poly_eval(coeffs, z);
        CHECK(std::abs(horner - naive) <= 1e-13 * (1.0 + std::abs(naive)));
    }
}

TEST_CASE("eval rejects points outside the open disk and non-finite input") {
    const AnalyticMap p = special_map();
    CHECK_THROWS_AS(eval(p, Complex(1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(eval(p, Complex(0.8, 0.7)), DomainError);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eval(p, Complex(nan, 0.0)), NonFiniteError);
    CHECK_THROWS_AS(AnalyticMap::polynomial({Complex(nan, 0.0)}), NonFiniteError);
}

TEST_CASE("eval reports non-finite intermediates instead of propagating them") {
    const AnalyticMap huge = AnalyticMap::polynomial(
        {Complex(1.0, 0.0), Complex(1e308, 0.0), Complex(1e308, 0.0)});
    CHECK_THROWS_AS(eval(huge, Complex(0.9, 0.0)), NonFiniteError);
}

TEST_CASE("derivative shifts coefficients: 1 + z + z^2/2 -> 1 + z") {
    const AnalyticPolynomial p(
        {Complex(1.0, 0.0), Complex(1.0, 0.0), Complex(0.5, 0.0)});
    const AnalyticPolynomial d = p.derivative();
    REQUIRE(d.degree() == 1);
    CHECK(d.coefficients()[0] == Complex(1.0, 0.0));
    CHECK(d.coefficients()[1] == Complex(1.0, 0.0));
}

TEST_CASE("derivative of a constant is the zero polynomial") {
    const AnalyticPolynomial c({Complex(1.0, 0.0)});
    const AnalyticPolynomial d = c.derivative();
    CHECK(d.degree() == 0);
    CHECK(d.coefficients()[0] == Complex(0.0, 0.0));
}

TEST_CASE("derivative map matches central finite differences") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const AnalyticMap f =
            AnalyticMap::polynomial(oracles::random_coefficients(6, seed + 100u));
        const AnalyticMap df = derivative(f);
        const CounterRng rng(seed);
        for (std::uint64_t i = 0; i < 20; ++i) {
            const double r = rng.uniform(2 * i, 0.0, 0.9);
            const Complex z = r * std::polar(1.0, rng.uniform(2 * i + 1, 0.0, two_pi));
            const Complex fd = oracles::central_difference(
                [&](Complex w) { return f.value_at(w); }, z);
            CHECK(std::abs(df.value_at(z) - fd) <= 1e-6 * (1.0 + std::abs(fd)));
        }
    }
}

TEST_CASE("value/derivative agreement holds for every representation") {
    const AnalyticMap poly =
        AnalyticMap::polynomial(oracles::random_coefficients(5, 3u));
    const AnalyticMap herglotz = AnalyticMap::herglotz(herglotz_sample(3, 11u), 0.2);
    const AnalyticMap cayley = AnalyticMap::cayley_of(special_map());
    const AnalyticMap herglotz_deriv = derivative(herglotz);
    const AnalyticMap cayley_deriv = derivative(cayley);
    const AnalyticMap maps[] = {poly, herglotz, cayley, herglotz_deriv, cayley_deriv};
    const CounterRng rng(99u);
    for (const AnalyticMap& f : maps) {
        for (std::uint64_t i = 0; i < 25; ++i) {
            const double r = rng.uniform(2 * i, 0.0, 0.9);
            const Complex z = r * std::polar(1.0, rng.uniform(2 * i + 1, 0.0, two_pi));
            const Complex fd = oracles::central_difference(
                [&](Complex w) { return f.value_at(w); }, z);
            CHECK(std::abs(f.derivative_at(z) - fd) <= 1e-6 * (1.0 + std::abs(fd)));
        }
    }
}

TEST_CASE("derivative is linear") {
    const std::vector<Complex> fc = oracles::random_coefficients(6, 17u);
    const std::vector<Complex> gc = oracles::random_coefficients(6, 18u);
    const Complex a(0.7, -0.3);
    const Complex b(-1.1, 0.4);
    std::vector<Complex> combo(7);
    for (std::size_t j = 0; j < combo.size(); ++j) combo[j] = a * fc[j] + b * gc[j];
    const AnalyticMap f = AnalyticMap::polynomial(fc);
    const AnalyticMap g = AnalyticMap::polynomial(gc);
    const AnalyticMap sum = AnalyticMap::polynomial(combo);
    const CounterRng rng(5u);
    for (std::uint64_t i = 0; i < 30; ++i) {
        const double r = rng.uniform(2 * i, 0.0, 0.95);
        const Complex z = r * std::polar(1.0, rng.uniform(2 * i + 1, 0.0, two_pi));
        const Complex lhs = derivative(sum).value_at(z);
        const Complex rhs = a * derivative(f).value_at(z) + b * derivative(g).value_at(z);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("real-coefficient maps commute with conjugation") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const AnalyticMap f = AnalyticMap::polynomial(
            oracles::random_coefficients(7, seed + 900u, /*real_only=*/true));
        const CounterRng rng(seed);
        const double r = rng.uniform(0, 0.0, 0.95);
        const Complex z = r * std::polar(1.0, rng.uniform(1, 0.0, two_pi));
        const Complex direct = eval(f, std::conj(z));
        const Complex mirrored = std::conj(eval(f, z));
        CHECK(std::abs(direct - mirrored) <= 1e-12);
    }
}

TEST_CASE("log_derivative_at reproduces the worked values -4/5 +/- 2i/5") {
    const AnalyticMap p = special_map();
    CHECK(std::abs(log_derivative_at(p, Complex(-0.5, 0.5)) - Complex(-0.8, 0.4)) <=
          1e-15);
    CHECK(std::abs(log_derivative_at(p, Complex(-0.5, -0.5)) - Complex(-0.8, -0.4)) <=
          1e-15);
}

TEST_CASE("log_derivative_at vanishes exactly at the origin") {
    const AnalyticMap p = special_map();
    CHECK(log_derivative_at(p, Complex(0.0, 0.0)) == Complex(0.0, 0.0));
}

TEST_CASE("log_derivative_at raises ZeroValueError at a zero of f") {
    const AnalyticMap f =
        AnalyticMap::polynomial({Complex(1.0, 0.0), Complex(-2.0, 0.0)});
    CHECK_THROWS_AS(log_derivative_at(f, Complex(0.5, 0.0)), ZeroValueError);
}

TEST_CASE("polynomial construction trims trailing zeros and rejects empties") {
    const AnalyticPolynomial p({Complex(1.0, 0.0), Complex(2.0, 0.0),
                                Complex(0.0, 0.0), Complex(0.0, 0.0)});
    CHECK(p.degree() == 1);
    CHECK_THROWS_AS(AnalyticPolynomial({}), DomainError);
}

TEST_CASE("herglotz mixture validates its simplex invariants") {
    CHECK_THROWS_AS(HerglotzMixture({0.5, 0.6}, {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(HerglotzMixture({1.5, -0.5}, {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(HerglotzMixture({1.0}, {0.0, 1.0}), DomainError);
}

TEST_CASE("derivative chains stay evaluatable two levels deep for herglotz") {
    const AnalyticMap h = AnalyticMap::herglotz(herglotz_sample(2, 21u), 0.0);
    const AnalyticMap d2 = derivative(derivative(h));
    const Complex z(0.3, 0.1);
    const Complex fd = oracles::central_difference(
        [&](Complex w) { return derivative(h).value_at(w); }, z);
    CHECK(std::abs(d2.value_at(z) - fd) <= 1e-6 * (1.0 + std::abs(fd)));
}

TEST_CASE("the derivative map stops after the first cayley derivative") {
    const AnalyticMap w = AnalyticMap::cayley_of(special_map());
    const AnalyticMap dw = derivative(w);  // fine, and pointwise twice below
    const Complex z(0.2, -0.3);
    CHECK(is_finite(dw.derivative_at(z)));
    CHECK_THROWS_AS(derivative(dw), DomainError);
}
