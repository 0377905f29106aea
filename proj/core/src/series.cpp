#include "nvaw/series.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "nvaw/errors.hpp"

namespace nvaw {

namespace {

constexpr long long kNegInf = LLONG_MIN / 4;
constexpr long long kPosInf = LLONG_MAX / 4;

long long sat_add(long long a, long long b) {
  if (a <= kNegInf || b <= kNegInf) {
    if (a >= kPosInf || b >= kPosInf) throw std::logic_error("indeterminate bound arithmetic");
    return kNegInf;
  }
  if (a >= kPosInf || b >= kPosInf) return kPosInf;
  return a + b;
}

long long floor_or(const std::optional<int>& v) { return v ? *v : kNegInf; }
long long ceil_or(const std::optional<int>& v) { return v ? *v : kPosInf; }

std::optional<int> finite_or_none(long long v) {
  if (v <= kNegInf || v >= kPosInf) return std::nullopt;
  return static_cast<int>(v);
}

int clamp_int(long long v) {
  if (v < INT_MIN / 2) return INT_MIN / 2;
  if (v > INT_MAX / 2) return INT_MAX / 2;
  return static_cast<int>(v);
}

int sign_power(int sign, long long power) { return (sign < 0 && (power % 2 != 0)) ? -1 : 1; }

}  // namespace

std::string exponent_to_string(const Exponent& e, std::size_t arity) {
  std::string out = "(";
  for (std::size_t v = 0; v < arity; ++v) {
    if (v) out += ",";
    out += std::to_string(e[v]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------------------------
// Window

Window::Window(std::vector<DegreeRange> ranges) : ranges_(std::move(ranges)) {
  if (ranges_.size() > kMaxVariables) throw std::invalid_argument("window has more than three variables");
}

Window Window::uniform(std::size_t arity, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("window lower bound exceeds upper bound");
  return Window(std::vector<DegreeRange>(arity, DegreeRange{lo, hi}));
}

bool Window::empty() const {
  return std::any_of(ranges_.begin(), ranges_.end(), [](const DegreeRange& r) { return r.empty(); });
}

bool Window::contains(const Exponent& e) const {
  for (std::size_t v = 0; v < ranges_.size(); ++v)
    if (!ranges_[v].contains(e[v])) return false;
  return true;
}

Window Window::intersect(const Window& other) const {
  if (other.arity() != arity()) throw std::invalid_argument("window arity mismatch");
  std::vector<DegreeRange> out(arity());
  for (std::size_t v = 0; v < arity(); ++v)
    out[v] = {std::max(ranges_[v].lo, other.ranges_[v].lo), std::min(ranges_[v].hi, other.ranges_[v].hi)};
  return Window(std::move(out));
}

std::string Window::to_string() const {
  if (ranges_.empty()) return "[]";
  std::string out;
  for (std::size_t v = 0; v < ranges_.size(); ++v) {
    if (v) out += "x";
    out += "[" + std::to_string(ranges_[v].lo) + ".." + std::to_string(ranges_[v].hi) + "]";
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Series construction

Series::Series(std::vector<std::string> variables, Window window)
    : variables_(std::move(variables)), window_(std::move(window)) {
  if (variables_.size() > kMaxVariables) throw std::invalid_argument("series has more than three variables");
  if (window_.arity() != variables_.size()) throw std::invalid_argument("window arity does not match variables");
}

Series Series::constant(const ExactScalar& c) {
  Series s;
  if (c != 0) s.terms_[Exponent{}] = c;
  return s;
}

Series Series::monomial(std::vector<std::string> variables, Window window, const Exponent& e, const ExactScalar& c) {
  Terms t;
  if (c != 0) t[e] = c;
  return from_terms(std::move(variables), std::move(window), t);
}

Series Series::from_terms(std::vector<std::string> variables, Window window, const Terms& terms) {
  Series s(std::move(variables), std::move(window));
  bool clipped = false;
  for (const auto& [e, c] : terms) {
    if (c == 0) continue;
    if (s.window_.contains(e))
      s.terms_.emplace(e, c);
    else
      clipped = true;
  }
  if (clipped) {
    s.exact_ = false;
    s.bounds_.assign(s.arity(), SupportBound{});
    for (std::size_t v = 0; v < s.arity(); ++v) {
      int lo = INT_MAX, hi = INT_MIN;
      for (const auto& [e, c] : terms) {
        if (c == 0) continue;
        lo = std::min(lo, e[v]);
        hi = std::max(hi, e[v]);
      }
      s.bounds_[v] = {lo, hi};
    }
  }
  return s;
}

Series Series::truncated(std::vector<std::string> variables, Window window, const Terms& terms,
                         std::vector<SupportBound> bounds) {
  Series s(std::move(variables), std::move(window));
  if (bounds.size() != s.arity()) throw std::invalid_argument("support bounds arity mismatch");
  for (const auto& [e, c] : terms)
    if (c != 0 && s.window_.contains(e)) s.terms_.emplace(e, c);
  s.exact_ = false;
  s.bounds_ = std::move(bounds);
  return s;
}

ExactScalar Series::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? ExactScalar(0) : it->second;
}

std::optional<int> Series::min_degree(std::size_t v) const {
  std::optional<int> best;
  for (const auto& [e, c] : terms_)
    if (!best || e[v] < *best) best = e[v];
  return best;
}

SupportBound Series::support_bound(std::size_t v) const {
  if (!exact_) return bounds_.at(v);
  SupportBound b;
  for (const auto& [e, c] : terms_) {
    if (!b.floor || e[v] < *b.floor) b.floor = e[v];
    if (!b.ceil || e[v] > *b.ceil) b.ceil = e[v];
  }
  return b;
}

void Series::accumulate(const Exponent& e, const ExactScalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Series lift_constant(const Series& c, const Series& like) {
  Series::Terms t;
  if (!c.terms_.empty()) t[Exponent{}] = c.terms_.begin()->second;
  return Series::from_terms(like.variables_, like.window_, t);
}

namespace {

std::pair<Series, Series> align(const Series& a, const Series& b) {
  if (a.arity() == 0 && b.arity() > 0) return {lift_constant(a, b), b};
  if (b.arity() == 0 && a.arity() > 0) return {a, lift_constant(b, a)};
  if (a.variables() != b.variables()) throw std::invalid_argument("series variable sets differ");
  return {a, b};
}

Window joint_window(const Series& a, const Series& b) {
  Window w = a.window().intersect(b.window());
  if (w.empty() && !a.window().empty() && !b.window().empty())
    throw std::domain_error("series windows do not intersect");
  return w;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// Arithmetic

Series Series::operator-() const { return ExactScalar(-1) * *this; }

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const ExactScalar& c, const Series& a) {
  if (c == 0) return Series(a.variables_, a.window_);
  Series out = a;
  for (auto& [e, v] : out.terms_) v *= c;
  return out;
}

Series operator+(const Series& a_in, const Series& b_in) {
  auto [a, b] = align(a_in, b_in);
  Window w = joint_window(a, b);
  Series::Terms sum;
  for (const auto& [e, c] : a.terms_) sum[e] += c;
  for (const auto& [e, c] : b.terms_) sum[e] += c;
  if (a.exact_ && b.exact_) return Series::from_terms(a.variables_, w, sum);

  std::vector<SupportBound> bounds(a.arity());
  for (std::size_t v = 0; v < a.arity(); ++v) {
    long long f = kPosInf, c = kNegInf;
    for (const Series* s : {&a, &b}) {
      if (s->is_exact_zero()) continue;
      const SupportBound sb = s->support_bound(v);
      f = std::min(f, floor_or(sb.floor));
      c = std::max(c, ceil_or(sb.ceil));
    }
    bounds[v] = {finite_or_none(f), finite_or_none(c)};
  }
  return Series::truncated(a.variables_, w, sum, std::move(bounds));
}

Series operator*(const Series& a_in, const Series& b_in) {
  auto [a, b] = align(a_in, b_in);
  Window w = joint_window(a, b);
  if (a.is_exact_zero() || b.is_exact_zero()) return Series(a.variables_, w);

  if (a.exact_ && b.exact_) {
    Series::Terms prod;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e{};
        for (std::size_t v = 0; v < kMaxVariables; ++v) e[v] = ea[v] + eb[v];
        prod[e] += ca * cb;
      }
    return Series::from_terms(a.variables_, w, prod);
  }

  // Certified region: an exponent is certified when no pair (i, j) with i + j = e can involve an
  // uncertified coefficient of either factor, given the per-variable support bounds.
  Window cert = w;
  std::vector<SupportBound> bounds(a.arity());
  for (std::size_t v = 0; v < a.arity(); ++v) {
    long long lo = cert[v].lo, hi = cert[v].hi;
    const SupportBound sa = a.support_bound(v), sb = b.support_bound(v);
    const long long fa = floor_or(sa.floor), ca = ceil_or(sa.ceil);
    const long long fb = floor_or(sb.floor), cb = ceil_or(sb.ceil);
    auto shrink = [&](const Series& x, long long fx, long long cx, long long fy, long long cy) {
      if (x.exact_) return;
      const long long xlo = x.window_[v].lo, xhi = x.window_[v].hi;
      if (xhi < cx) {
        const long long start = sat_add(xhi + 1, fy);
        if (start <= sat_add(cx, cy)) hi = std::min(hi, start <= kNegInf ? kNegInf : start - 1);
      }
      if (fx < xlo) {
        const long long end = sat_add(xlo - 1, cy);
        if (sat_add(fx, fy) <= end) lo = std::max(lo, end >= kPosInf ? kPosInf : end + 1);
      }
    };
    shrink(a, fa, ca, fb, cb);
    shrink(b, fb, cb, fa, ca);
    cert[v] = {clamp_int(lo), clamp_int(hi)};
    bounds[v] = {finite_or_none(sat_add(fa, fb)), finite_or_none(sat_add(ca, cb))};
  }

  Series::Terms prod;
  if (!cert.empty()) {
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e{};
        for (std::size_t v = 0; v < kMaxVariables; ++v) e[v] = ea[v] + eb[v];
        if (cert.contains(e)) prod[e] += ca * cb;
      }
  }
  return Series::truncated(a.variables_, cert, prod, std::move(bounds));
}

Series Series::derivative(std::size_t v) const {
  if (v >= arity()) throw std::invalid_argument("derivative variable out of range");
  Terms shifted;
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exponent f = e;
    f[v] -= 1;
    shifted[f] = c * e[v];
  }
  if (exact_) return from_terms(variables_, window_, shifted);
  Window w = window_;
  w[v].hi -= 1;
  std::vector<SupportBound> b = bounds_;
  if (b[v].floor) *b[v].floor -= 1;
  if (b[v].ceil) *b[v].ceil -= 1;
  return truncated(variables_, w, shifted, std::move(b));
}

Series Series::restricted(const Window& window) const {
  const Window w = window_.intersect(window);
  if (exact_) {
    Series s = from_terms(variables_, w, terms_);
    return s;
  }
  return truncated(variables_, w, terms_, bounds_);
}

Series Series::as_truncated(std::vector<SupportBound> bounds) const {
  return truncated(variables_, window_, terms_, std::move(bounds));
}

Series Series::renamed(std::vector<std::string> variables) const {
  if (variables.size() != variables_.size()) throw std::invalid_argument("rename changes arity");
  Series s = *this;
  s.variables_ = std::move(variables);
  return s;
}

std::string Series::to_string() const {
  if (terms_.empty()) return "0";
  if (arity() == 0) return nvaw::to_string(terms_.begin()->second);
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += nvaw::to_string(c) + "@" + exponent_to_string(e, arity());
  }
  return out;
}

bool Series::operator==(const Series& other) const {
  return variables_ == other.variables_ && terms_ == other.terms_ && window_ == other.window_ &&
         exact_ == other.exact_;
}

// ---------------------------------------------------------------------------------------------
// Substitution

Series substitute(const Series& f, const LinearForm& form, const std::vector<std::string>& ambient,
                  const Window& ambient_window, int prepower) {
  const std::size_t m = ambient.size();
  if (f.arity() > 1) throw std::invalid_argument("substitution needs a single-variable series");
  if (ambient_window.arity() != m) throw std::invalid_argument("ambient window arity mismatch");
  if (form.first < 0 || static_cast<std::size_t>(form.first) >= m ||
      (form.binomial() && (static_cast<std::size_t>(form.second) >= m || form.second == form.first)))
    throw std::invalid_argument("linear form does not fit the ambient variables");

  const std::size_t a = static_cast<std::size_t>(form.first);
  const std::size_t b = form.binomial() ? static_cast<std::size_t>(form.second) : 0;
  Window cert = ambient_window;
  bool lossy = false;  // true when some coefficient of the true result is not stored

  long long bound_a_lo = kPosInf, bound_a_hi = kNegInf, bound_b_lo = kPosInf, bound_b_hi = kNegInf;
  auto widen = [](long long& lo, long long& hi, long long l, long long h) {
    lo = std::min(lo, l);
    hi = std::max(hi, h);
  };

  if (!f.exact()) {
    lossy = true;
    const DegreeRange fw = f.arity() ? f.window()[0] : DegreeRange{0, 0};
    const SupportBound fb = f.arity() ? f.support_bound(0) : SupportBound{0, 0};
    const bool upper_unknown = !fb.ceil || *fb.ceil > fw.hi;
    const bool lower_unknown = !fb.floor || *fb.floor < fw.lo;
    if (!form.binomial()) {
      cert[a].lo = std::max(cert[a].lo, fw.lo + prepower);
      cert[a].hi = std::min(cert[a].hi, fw.hi + prepower);
    } else {
      if (upper_unknown) cert[a].hi = std::min(cert[a].hi, fw.hi + prepower - cert[b].hi);
      if (lower_unknown) cert[a].lo = std::max(cert[a].lo, fw.lo + prepower - cert[b].lo);
    }
    const long long lo_n = sat_add(floor_or(fb.floor), prepower), hi_n = sat_add(ceil_or(fb.ceil), prepower);
    if (!form.binomial()) {
      widen(bound_a_lo, bound_a_hi, lo_n, hi_n);
    } else {
      widen(bound_a_lo, bound_a_hi, lo_n >= 0 ? 0 : kNegInf, hi_n);
      widen(bound_b_lo, bound_b_hi, 0, lo_n >= 0 ? hi_n : kPosInf);
    }
  }

  Series::Terms out;
  auto put = [&](long long ea, long long eb, const ExactScalar& c) {
    Exponent e{};
    e[a] = static_cast<int>(ea);
    if (form.binomial()) e[b] = static_cast<int>(eb);
    if (cert.contains(e))
      out[e] += c;
    else
      lossy = true;
  };

  if (!cert.empty()) {
    for (const auto& [ef, c] : f.terms()) {
      const long long n = static_cast<long long>(f.arity() ? ef[0] : 0) + prepower;
      if (!form.binomial()) {
        put(n, 0, c * sign_power(form.first_sign, n));
        if (f.exact()) widen(bound_a_lo, bound_a_hi, n, n);
        continue;
      }
      if (n >= 0) {
        for (long long i = 0; i <= n; ++i)
          put(n - i, i, c * binomial(n, i) * sign_power(form.first_sign, n - i) * sign_power(form.second_sign, i));
        if (f.exact()) {
          widen(bound_a_lo, bound_a_hi, 0, n);
          widen(bound_b_lo, bound_b_hi, 0, n);
        }
        continue;
      }
      // Negative power: infinite expansion in the second summand, generated only inside the window.
      lossy = true;
      const long long i_lo = std::max<long long>({0, cert[b].lo, n - cert[a].hi});
      const long long i_hi = std::min<long long>(cert[b].hi, n - cert[a].lo);
      for (long long i = i_lo; i <= i_hi; ++i)
        put(n - i, i, c * binomial(n, i) * sign_power(form.first_sign, n - i) * sign_power(form.second_sign, i));
      if (f.exact()) {
        widen(bound_a_lo, bound_a_hi, kNegInf, n);
        widen(bound_b_lo, bound_b_hi, 0, kPosInf);
      }
    }
  }

  if (!lossy) return Series::from_terms(ambient, ambient_window, out);

  std::vector<SupportBound> bounds(m, SupportBound{0, 0});
  if (bound_a_lo <= bound_a_hi) bounds[a] = {finite_or_none(bound_a_lo), finite_or_none(bound_a_hi)};
  if (form.binomial() && bound_b_lo <= bound_b_hi) bounds[b] = {finite_or_none(bound_b_lo), finite_or_none(bound_b_hi)};
  return Series::truncated(ambient, cert, out, std::move(bounds));
}

Series taylor_substitute(const Series& a, TaylorForm form, const Window& window) {
  if (a.arity() != 1) throw std::invalid_argument("taylor_substitute needs a single-variable series");
  const std::vector<std::string> vars =
      form == TaylorForm::SecondPlusZero ? std::vector<std::string>{"x2", "x0"} : std::vector<std::string>{"x0", "x2"};
  return substitute(a, LinearForm::sum(0, 1, 1, 1), vars, window);
}

// ---------------------------------------------------------------------------------------------
// Comparison

std::string to_string(CertifiedEquality::Kind kind) {
  switch (kind) {
    case CertifiedEquality::Kind::ExactlyEqual: return "ExactlyEqual";
    case CertifiedEquality::Kind::EqualUpToWindow: return "EqualUpToWindow";
    case CertifiedEquality::Kind::Unequal: return "Unequal";
    case CertifiedEquality::Kind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

CertifiedEquality window_equal(const Series& a_in, const Series& b_in, const Window& window) {
  auto [a, b] = align(a_in, b_in);
  using Kind = CertifiedEquality::Kind;
  if (a.exact() && b.exact()) {
    if (a.terms() == b.terms()) return {Kind::ExactlyEqual, std::nullopt};
    auto ia = a.terms().begin(), ib = b.terms().begin();
    while (ia != a.terms().end() && ib != b.terms().end() && ia->first == ib->first && ia->second == ib->second) {
      ++ia;
      ++ib;
    }
    Exponent w;
    if (ia == a.terms().end())
      w = ib->first;
    else if (ib == b.terms().end())
      w = ia->first;
    else
      w = std::min(ia->first, ib->first);
    return {Kind::Unequal, w};
  }

  Window region = window.arity() == a.arity() ? window : Window::uniform(a.arity(), INT_MIN / 2, INT_MAX / 2);
  if (!a.exact()) region = region.intersect(a.window());
  if (!b.exact()) region = region.intersect(b.window());
  if (region.empty()) return {Kind::Inconclusive, std::nullopt};

  Series::Terms diff;
  for (const auto& [e, c] : a.terms())
    if (region.contains(e)) diff[e] += c;
  for (const auto& [e, c] : b.terms())
    if (region.contains(e)) diff[e] -= c;
  for (const auto& [e, c] : diff)
    if (c != 0) return {Kind::Unequal, e};
  return {Kind::EqualUpToWindow, std::nullopt};
}

// ---------------------------------------------------------------------------------------------
// Literal parsing

namespace {

class LiteralScanner {
 public:
  explicit LiteralScanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& expected, const std::string& detail) const {
    throw ParseError(0, static_cast<int>(pos_) + 1, expected, detail);
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'", "unexpected input in series literal");
  }

  std::string_view take_while(bool (*pred)(char)) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  ExactScalar scalar() {
    skip_space();
    const std::size_t start = pos_;
    const auto digits = take_while([](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
    if (digits.empty()) fail("coefficient", "missing coefficient");
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      const auto den = take_while([](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
      if (den.empty()) fail("denominator", "missing denominator");
    }
    try {
      return parse_scalar(text_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      throw ParseError(0, static_cast<int>(start) + 1, "nonzero denominator", e.what());
    }
  }

  int integer() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const auto digits = take_while([](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
    if (digits.empty()) fail("integer exponent", "malformed exponent");
    try {
      return std::stoi(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      throw ParseError(0, static_cast<int>(start) + 1, "exponent in int range", "exponent too large");
    }
  }

  std::size_t position() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Series parse_series_literal(std::string_view text, const std::vector<std::string>& variables, const Window& window) {
  LiteralScanner in(text);
  Series::Terms terms;
  if (in.done()) in.fail("series literal", "empty series literal");
  int sign = 1;
  if (in.accept('-'))
    sign = -1;
  else
    in.accept('+');
  while (true) {
    if (in.accept('-')) sign = -sign;  // allows "+ -3@(1)"
    ExactScalar c = in.scalar();
    Exponent e{};
    if (in.accept('@')) {
      in.expect('(');
      std::size_t n = 0;
      if (in.peek() != ')') {
        do {
          if (n >= kMaxVariables) in.fail("')'", "too many exponents");
          e[n++] = in.integer();
        } while (in.accept(','));
      }
      in.expect(')');
      if (n != variables.size())
        in.fail(std::to_string(variables.size()) + " exponents", "exponent tuple has " + std::to_string(n) + " entries");
    }
    terms[e] += sign * c;
    if (in.done()) break;
    if (in.accept('+'))
      sign = 1;
    else if (in.accept('-'))
      sign = -1;
    else
      in.fail("'+' or '-'", "unexpected input in series literal");
  }
  for (const auto& [e, c] : terms)
    if (c != 0 && !window.contains(e))
      throw ParseError(0, 1, "exponents inside window " + window.to_string(),
                       "term at " + exponent_to_string(e, variables.size()) + " lies outside the window");
  return Series::from_terms(variables, window, terms);
}

}  // namespace nvaw
