#pragma once
// Truncated Laurent series in up to three formal variables.
//
// A Series stores finitely many coefficients together with a window, the box of exponents on
// which the stored data is certified to agree with the true (possibly infinite) series. When
// `exact()` holds the stored terms are the whole object. Otherwise each variable also carries
// optional bounds on the true support, which is what makes products of two truncated series
// certifiable.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nvaw/rational.hpp"

namespace nvaw {

inline constexpr std::size_t kMaxVariables = 3;

/// Exponent tuple; slots past the series arity are always zero.
using Exponent = std::array<int, kMaxVariables>;

std::string exponent_to_string(const Exponent& e, std::size_t arity);

struct DegreeRange {
  int lo = 0;
  int hi = 0;

  bool empty() const { return lo > hi; }
  bool contains(int d) const { return lo <= d && d <= hi; }
  bool operator==(const DegreeRange&) const = default;
};

/// Per-variable degree box. A window whose range is inverted in some variable is empty; this is
/// how an uncertifiable result is represented.
class Window {
 public:
  Window() = default;
  explicit Window(std::vector<DegreeRange> ranges);

  /// Same range in every variable. Throws std::invalid_argument unless lo <= hi.
  static Window uniform(std::size_t arity, int lo, int hi);

  std::size_t arity() const { return ranges_.size(); }
  const DegreeRange& operator[](std::size_t v) const { return ranges_.at(v); }
  DegreeRange& operator[](std::size_t v) { return ranges_.at(v); }

  bool empty() const;
  bool contains(const Exponent& e) const;
  Window intersect(const Window& other) const;
  std::string to_string() const;

  bool operator==(const Window&) const = default;

 private:
  std::vector<DegreeRange> ranges_;
};

/// Known bounds on the true support of a series in one variable.
struct SupportBound {
  std::optional<int> floor;
  std::optional<int> ceil;
};

class Series {
 public:
  using Terms = std::map<Exponent, ExactScalar>;

  /// The exact zero constant.
  Series() = default;
  /// The exact zero series in the given variables.
  Series(std::vector<std::string> variables, Window window);

  static Series constant(const ExactScalar& c);
  /// c * x^e, clipped to the window (clipping clears the exact flag).
  static Series monomial(std::vector<std::string> variables, Window window, const Exponent& e, const ExactScalar& c);
  /// Exact series from explicit terms; terms outside the window are clipped.
  static Series from_terms(std::vector<std::string> variables, Window window, const Terms& terms);
  /// Truncated series: `terms` are certified inside `window`, the rest of the true support obeys `bounds`.
  static Series truncated(std::vector<std::string> variables, Window window, const Terms& terms,
                          std::vector<SupportBound> bounds);

  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t arity() const { return variables_.size(); }
  const Window& window() const { return window_; }
  bool exact() const { return exact_; }
  const Terms& terms() const { return terms_; }

  ExactScalar coefficient(const Exponent& e) const;
  bool is_zero() const { return terms_.empty(); }
  /// True when the object is known to be exactly zero.
  bool is_exact_zero() const { return exact_ && terms_.empty(); }
  SupportBound support_bound(std::size_t v) const;
  /// Smallest stored exponent in variable v; nullopt for a series with no terms.
  std::optional<int> min_degree(std::size_t v) const;

  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(const ExactScalar& c, const Series& a);

  Series derivative(std::size_t v) const;
  /// Restricts to the intersection with `window`; drops the exact flag if a stored term is lost.
  Series restricted(const Window& window) const;
  /// Same object with the exact flag cleared and the given bounds attached (used when a caller knows
  /// a table is only certified on its window).
  Series as_truncated(std::vector<SupportBound> bounds) const;
  Series renamed(std::vector<std::string> variables) const;

  /// Literal form `c@(e1,...)` joined by " + "; constants print as a bare coefficient.
  std::string to_string() const;

  /// Structural equality: variables, terms, window and exactness.
  bool operator==(const Series& other) const;

 private:
  std::vector<std::string> variables_;
  Terms terms_;
  Window window_;
  bool exact_ = true;
  std::vector<SupportBound> bounds_;  // only meaningful when !exact_

  void accumulate(const Exponent& e, const ExactScalar& c);
  friend Series lift_constant(const Series& c, const Series& like);
};

// ---------------------------------------------------------------------------------------------
// Substitution of a one-variable series into linear forms of ambient variables.

/// s1*x_first + s2*x_second. The expansion of negative powers is in nonnegative powers of the
/// second summand. A form without second summand is a plain (possibly negated) variable.
struct LinearForm {
  int first = 0;
  int first_sign = 1;
  int second = -1;
  int second_sign = 1;

  static LinearForm var(int index, int sign = 1) { return {index, sign, -1, 1}; }
  static LinearForm sum(int a, int sa, int b, int sb) { return {a, sa, b, sb}; }
  bool binomial() const { return second >= 0; }
};

/// Returns (form)^prepower * f(form) expanded in the ambient variables and certified inside
/// `ambient_window`. `f` must have arity 0 or 1.
Series substitute(const Series& f, const LinearForm& form, const std::vector<std::string>& ambient,
                  const Window& ambient_window, int prepower = 0);

enum class TaylorForm {
  SecondPlusZero,  ///< x1 -> x2 + x0, expanded in nonnegative powers of x0; result variables (x2, x0)
  ZeroPlusSecond,  ///< x1 -> x0 + x2, expanded in nonnegative powers of x2; result variables (x0, x2)
};

/// Binomial substitution of a single-variable series; `window` is over the result variables.
Series taylor_substitute(const Series& a, TaylorForm form, const Window& window);

// ---------------------------------------------------------------------------------------------
// Certified comparison.

struct CertifiedEquality {
  enum class Kind { ExactlyEqual, EqualUpToWindow, Unequal, Inconclusive };
  Kind kind = Kind::ExactlyEqual;
  std::optional<Exponent> witness;  ///< first differing exponent when Unequal

  bool holds() const { return kind == Kind::ExactlyEqual || kind == Kind::EqualUpToWindow; }
};

std::string to_string(CertifiedEquality::Kind kind);

/// Compares on `window` intersected with the certified windows of non-exact operands. Two exact
/// series compare structurally over their whole support.
CertifiedEquality window_equal(const Series& a, const Series& b, const Window& window);

// ---------------------------------------------------------------------------------------------
// Literal syntax.

/// Parses `c@(e1[,e2[,e3]])` terms joined by '+' or '-'. A bare coefficient means the zero
/// exponent. Throws ParseError (line 0, column within `text`).
Series parse_series_literal(std::string_view text, const std::vector<std::string>& variables, const Window& window);

}  // namespace nvaw
