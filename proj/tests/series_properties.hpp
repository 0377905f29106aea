#pragma once
// Randomized exact-arithmetic laws for Series, shared by the unit tests and the acceptance binary.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nvaw/series.hpp"

namespace nvaw::testing {

struct PropertyOutcome {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool passed() const { return cases > 0 && failures == 0; }
};

class SeriesGenerator {
 public:
  explicit SeriesGenerator(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  ExactScalar scalar() {
    int p = 0;
    while (p == 0) p = uniform(-9, 9);
    return make_scalar(p, uniform(1, 5));
  }

  /// Laurent polynomial in x with 1..5 terms and exponents in [-6, 6].
  Series laurent(const Window& window) {
    Series::Terms terms;
    const int n = uniform(1, 5);
    for (int t = 0; t < n; ++t) terms[Exponent{uniform(-6, 6), 0, 0}] += scalar();
    return Series::from_terms({"x"}, window, terms);
  }

 private:
  std::mt19937_64 rng_;
};

inline const Window& wide_window() {
  static const Window w = Window::uniform(1, -40, 40);
  return w;
}

inline PropertyOutcome run_property(const std::string& name, int cases, std::uint64_t seed,
                                    const std::function<std::string(SeriesGenerator&)>& body) {
  PropertyOutcome out{name, 0, 0, {}};
  SeriesGenerator gen(seed);
  for (int i = 0; i < cases; ++i) {
    const std::string failure = body(gen);
    ++out.cases;
    if (!failure.empty()) {
      if (out.failures++ == 0) out.first_failure = "case " + std::to_string(i) + ": " + failure;
    }
  }
  return out;
}

inline std::string expect_equal(const Series& a, const Series& b, const char* law) {
  if (a.terms() == b.terms() && a.exact() && b.exact()) return {};
  return std::string(law) + ": " + a.to_string() + " vs " + b.to_string();
}

inline PropertyOutcome ring_laws(int cases, std::uint64_t seed) {
  return run_property("ring laws", cases, seed, [](SeriesGenerator& g) -> std::string {
    const Window& w = wide_window();
    const Series a = g.laurent(w), b = g.laurent(w), c = g.laurent(w);
    const ExactScalar k = g.scalar();
    for (const std::string& f : {expect_equal(a + b, b + a, "a+b = b+a"), expect_equal(a * b, b * a, "ab = ba"),
                                 expect_equal((a + b) + c, a + (b + c), "(a+b)+c = a+(b+c)"),
                                 expect_equal((a * b) * c, a * (b * c), "(ab)c = a(bc)"),
                                 expect_equal(a * (b + c), a * b + a * c, "a(b+c) = ab+ac"),
                                 expect_equal(k * (a * b), (k * a) * b, "k(ab) = (ka)b"),
                                 expect_equal(a * Series::constant(1), a, "a*1 = a")})
      if (!f.empty()) return f;
    if (!(a - a).is_exact_zero()) return "a - a is not the exact zero";
    return {};
  });
}

/// Sets x0 = 0 in a (x2, x0) series: the x0-free slice, as a series in x.
inline Series x0_slice(const Series& s) {
  Series::Terms terms;
  for (const auto& [e, c] : s.terms())
    if (e[1] == 0) terms[Exponent{e[0], 0, 0}] = c;
  return Series::from_terms({"x"}, wide_window(), terms);
}

inline const Window& taylor_window() {
  static const Window w({{-30, 10}, {0, 10}});
  return w;
}

inline PropertyOutcome taylor_slice_law(int cases, std::uint64_t seed) {
  return run_property("Taylor substitution at x0 = 0", cases, seed, [](SeriesGenerator& g) -> std::string {
    const Series a = g.laurent(wide_window());
    const Series t = taylor_substitute(a, TaylorForm::SecondPlusZero, taylor_window());
    const Series back = x0_slice(t);
    if (back.terms() != a.terms()) return "slice " + back.to_string() + " vs " + a.to_string();
    bool has_negative = false;
    for (const auto& [e, c] : a.terms()) has_negative |= e[0] < 0;
    if (t.exact() == has_negative) return "exact flag " + std::string(t.exact() ? "set" : "cleared") + " for " + a.to_string();
    return {};
  });
}

/// Binomial coefficient C(n, i) for any integer n and i >= 0 via Pascal's rule, independently of
/// the library: C(n, i) = (-1)^i C(i - n - 1, i) for negative n.
inline ExactScalar pascal(int n, int i) {
  if (i < 0) return 0;
  if (n < 0) return (i % 2 ? -1 : 1) * pascal(i - n - 1, i);
  std::vector<ExactScalar> row(static_cast<std::size_t>(i) + 1, 0);
  row[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int j = std::min(m, i); j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j) - 1];
  return row[static_cast<std::size_t>(i)];
}

inline PropertyOutcome binomial_law(int cases, std::uint64_t seed) {
  return run_property("binomial expansion", cases, seed, [](SeriesGenerator& g) -> std::string {
    const Window& w = taylor_window();
    // Coefficients of (x2 + x0)^n against Pascal's triangle.
    const int n = g.uniform(-6, 8);
    const Series p = taylor_substitute(Series::monomial({"x"}, wide_window(), Exponent{n, 0, 0}, 1),
                                       TaylorForm::SecondPlusZero, w);
    for (int i = 0; i <= w[1].hi; ++i)
      if (w[0].contains(n - i) && p.coefficient(Exponent{n - i, i, 0}) != pascal(n, i))
        return "coefficient x2^" + std::to_string(n - i) + " x0^" + std::to_string(i) + " of (x2+x0)^" + std::to_string(n);
    // (x2 + x0)^k a(x2 + x0) = (x1^k a)(x2 + x0), and it is a polynomial once k covers the pole order.
    const Series a = g.laurent(wide_window());
    int pole = 0;
    for (const auto& [e, c] : a.terms()) pole = std::max(pole, -e[0]);
    const int k = pole + g.uniform(0, 2);
    const Series xk = Series::monomial({"x"}, wide_window(), Exponent{k, 0, 0}, 1);
    const Series shifted = xk * a;
    const Series lhs = taylor_substitute(xk, TaylorForm::SecondPlusZero, w) *
                       taylor_substitute(a, TaylorForm::SecondPlusZero, w);
    const Series rhs = taylor_substitute(shifted, TaylorForm::SecondPlusZero, w);
    int degree = 0;
    for (const auto& [e, c] : shifted.terms()) degree = std::max(degree, e[0]);
    const bool fits = degree <= std::min(w[0].hi, w[1].hi);
    if (rhs.exact() != fits) return "exact flag of the substituted polynomial of degree " + std::to_string(degree);
    for (const auto& [e, c] : rhs.terms())
      if (e[0] < 0 || e[1] < 0) return "negative power in " + rhs.to_string();
    if (!window_equal(lhs, rhs, w).holds()) return "(x2+x0)^k a(x2+x0) differs from (x1^k a)(x2+x0)";
    return {};
  });
}

inline std::vector<PropertyOutcome> series_property_suite(int cases = 1000, std::uint64_t seed = 20261016) {
  return {ring_laws(cases, seed), taylor_slice_law(cases, seed + 1), binomial_law(cases, seed + 2)};
}

}  // namespace nvaw::testing
