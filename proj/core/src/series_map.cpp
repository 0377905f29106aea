#include "nvaw/series_map.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "nvaw/errors.hpp"

namespace nvaw {

namespace {

Series lift_scalar(const Series& s, const std::vector<std::string>& vars, const Window& window) {
  if (s.arity() != 0 || vars.empty()) return s;
  Series::Terms t;
  const ExactScalar c = s.coefficient(Exponent{});
  if (c != 0) t[Exponent{}] = c;
  return Series::from_terms(vars, window, t);
}

void check_same_shape(const SeriesVector& a, const SeriesVector& b) {
  if (a.spaces().size() != b.spaces().size()) throw std::invalid_argument("vectors live in different tensor powers");
  for (std::size_t k = 0; k < a.spaces().size(); ++k)
    if (a.spaces()[k].dimension() != b.spaces()[k].dimension())
      throw std::invalid_argument("vectors live in different spaces");
  if (a.variables() != b.variables()) throw std::invalid_argument("vectors use different variables");
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// SeriesVector

SeriesVector::SeriesVector(SpaceList spaces, std::vector<std::string> variables, Window window)
    : spaces_(std::move(spaces)), variables_(std::move(variables)), window_(std::move(window)) {
  if (window_.arity() != variables_.size()) throw std::invalid_argument("vector window arity mismatch");
}

SeriesVector SeriesVector::basis(SpaceList spaces, std::vector<std::string> variables, Window window,
                                 const IndexTuple& index, const ExactScalar& c) {
  SeriesVector v(std::move(spaces), std::move(variables), std::move(window));
  if (index.size() != v.spaces_.size()) throw std::invalid_argument("index tuple arity mismatch");
  v.add(index, Series::constant(c));
  return v;
}

Series SeriesVector::conform(const Series& s) const {
  Series out = lift_scalar(s, variables_, window_);
  if (out.variables() != variables_) throw std::invalid_argument("entry variables differ from the vector's");
  if (!(out.window() == window_) || !out.exact()) out = out.restricted(window_);
  return out;
}

void SeriesVector::add(const IndexTuple& index, const Series& s) {
  if (s.is_exact_zero()) return;
  Series c = conform(s);
  auto it = entries_.find(index);
  if (it == entries_.end()) {
    if (!c.is_exact_zero()) entries_.emplace(index, std::move(c));
    return;
  }
  it->second = it->second + c;
  if (it->second.is_exact_zero()) entries_.erase(it);
}

Series SeriesVector::entry(const IndexTuple& index) const {
  auto it = entries_.find(index);
  return it == entries_.end() ? Series(variables_, window_) : it->second;
}

bool SeriesVector::exact() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.second.exact(); });
}

SeriesVector operator+(const SeriesVector& a, const SeriesVector& b) {
  check_same_shape(a, b);
  SeriesVector out(a.spaces_, a.variables_, a.window_.intersect(b.window_));
  for (const auto& [i, s] : a.entries_) out.add(i, s);
  for (const auto& [i, s] : b.entries_) out.add(i, s);
  return out;
}

SeriesVector operator-(const SeriesVector& a, const SeriesVector& b) { return a + ExactScalar(-1) * b; }

SeriesVector operator*(const ExactScalar& c, const SeriesVector& v) {
  SeriesVector out(v.spaces_, v.variables_, v.window_);
  if (c == 0) return out;
  for (const auto& [i, s] : v.entries_) out.entries_.emplace(i, c * s);
  return out;
}

SeriesVector operator*(const Series& f, const SeriesVector& v) {
  SeriesVector out(v.spaces_, v.variables_, v.window_);
  const Series g = v.conform(f);
  for (const auto& [i, s] : v.entries_) out.add(i, g * s);
  return out;
}

SeriesVector SeriesVector::with_spaces(SpaceList spaces) const {
  if (spaces.size() != spaces_.size()) throw std::invalid_argument("relabelling changes the number of factors");
  SeriesVector out = *this;
  out.spaces_ = std::move(spaces);
  return out;
}

std::string SeriesVector::to_string() const {
  if (entries_.empty()) return "0";
  std::string out;
  for (const auto& [i, s] : entries_) {
    if (!out.empty()) out += " ; ";
    out += "(" + index_label(spaces_, i) + "): " + s.to_string();
  }
  return out;
}

VectorEquality vector_equal(const SeriesVector& a, const SeriesVector& b, const Window& window) {
  check_same_shape(a, b);
  std::vector<IndexTuple> keys;
  for (const auto& [i, s] : a.entries()) keys.push_back(i);
  for (const auto& [i, s] : b.entries()) keys.push_back(i);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  using Kind = CertifiedEquality::Kind;
  VectorEquality out;
  out.variables = a.variables().size();
  std::optional<IndexTuple> inconclusive;
  for (const auto& i : keys) {
    const CertifiedEquality r = window_equal(a.entry(i), b.entry(i), window);
    if (r.kind == Kind::Unequal) return {Kind::Unequal, i, r.witness, out.variables};
    if (r.kind == Kind::Inconclusive && !inconclusive) inconclusive = i;
    if (r.kind == Kind::EqualUpToWindow) out.kind = Kind::EqualUpToWindow;
  }
  if (inconclusive) return {Kind::Inconclusive, inconclusive, std::nullopt, out.variables};
  return out;
}

// ---------------------------------------------------------------------------------------------
// SeriesMap

SeriesMap::SeriesMap(SpaceList domain, SpaceList codomain, std::vector<std::string> variables, Window window)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), variables_(std::move(variables)),
      window_(std::move(window)) {
  if (variables_.size() > 1) throw std::invalid_argument("series maps carry at most one variable");
  if (window_.arity() != variables_.size()) throw std::invalid_argument("map window arity mismatch");
}

SeriesMap SeriesMap::constant_map(SpaceList domain, SpaceList codomain) {
  return SeriesMap(std::move(domain), std::move(codomain), {}, Window());
}

SeriesMap SeriesMap::identity(const SpaceList& spaces) {
  SeriesMap m = constant_map(spaces, spaces);
  for (const auto& i : all_indices(spaces)) m.set(i, i, Series::constant(1));
  return m;
}

SeriesMap SeriesMap::permutation(const SpaceList& domain, const std::vector<int>& order) {
  if (order.size() != domain.size()) throw std::invalid_argument("permutation arity mismatch");
  SpaceList codomain;
  for (int k : order) codomain.push_back(domain.at(static_cast<std::size_t>(k)));
  SeriesMap m = constant_map(domain, codomain);
  for (const auto& i : all_indices(domain)) {
    IndexTuple o;
    for (int k : order) o.push_back(i[static_cast<std::size_t>(k)]);
    m.set(i, o, Series::constant(1));
  }
  return m;
}

SeriesMap SeriesMap::flip(const Space& a, const Space& b) { return permutation({a, b}, {1, 0}); }

SeriesMap SeriesMap::fuse(const Space& u, const Space& v) {
  SeriesMap m = constant_map({u, v}, {product_space(u, v)});
  for (const auto& i : all_indices({u, v})) m.set(i, {product_index(v, i[0], i[1])}, Series::constant(1));
  return m;
}

SeriesMap SeriesMap::split(const Space& u, const Space& v) {
  SeriesMap m = constant_map({product_space(u, v)}, {u, v});
  for (const auto& i : all_indices({u, v})) m.set({product_index(v, i[0], i[1])}, i, Series::constant(1));
  return m;
}

Series SeriesMap::conform(const Series& s) const {
  Series out = lift_scalar(s, variables_, window_);
  if (out.variables() != variables_) throw std::invalid_argument("coefficient variables differ from the map's");
  return out;
}

void SeriesMap::set(const IndexTuple& in, const IndexTuple& out, const Series& s) {
  if (in.size() != domain_.size() || out.size() != codomain_.size())
    throw std::invalid_argument("index tuple arity mismatch in map entry");
  Series c = conform(s);
  if (c.is_exact_zero()) {
    auto it = columns_.find(in);
    if (it != columns_.end()) {
      it->second.erase(out);
      if (it->second.empty()) columns_.erase(it);
    }
    return;
  }
  columns_[in][out] = std::move(c);
}

void SeriesMap::add(const IndexTuple& in, const IndexTuple& out, const Series& s) {
  set(in, out, entry(in, out) + conform(s));
}

const SeriesMap::Column& SeriesMap::column(const IndexTuple& in) const {
  static const Column kEmpty;
  auto it = columns_.find(in);
  return it == columns_.end() ? kEmpty : it->second;
}

Series SeriesMap::entry(const IndexTuple& in, const IndexTuple& out) const {
  const Column& c = column(in);
  auto it = c.find(out);
  return it == c.end() ? Series(variables_, window_) : it->second;
}

SeriesVector SeriesMap::image(const IndexTuple& in) const {
  SeriesVector v(codomain_, variables_, window_);
  for (const auto& [o, s] : column(in)) v.add(o, s);
  return v;
}

bool SeriesMap::exact() const {
  for (const auto& [i, col] : columns_)
    for (const auto& [o, s] : col)
      if (!s.exact()) return false;
  return true;
}

namespace {

void check_same_maps(const SeriesMap& a, const SeriesMap& b) {
  if (a.domain().size() != b.domain().size() || a.codomain().size() != b.codomain().size())
    throw std::invalid_argument("maps have different shapes");
}

std::pair<std::vector<std::string>, Window> merged_variables(const SeriesMap& a, const SeriesMap& b) {
  if (a.constant()) return {b.variables(), b.window()};
  if (b.constant()) return {a.variables(), a.window()};
  if (a.variables() != b.variables()) throw std::invalid_argument("maps use different variables");
  return {a.variables(), a.window().intersect(b.window())};
}

}  // namespace

SeriesMap operator+(const SeriesMap& a, const SeriesMap& b) {
  check_same_maps(a, b);
  auto [vars, w] = merged_variables(a, b);
  SeriesMap out(a.domain_, a.codomain_, vars, w);
  for (const SeriesMap* m : {&a, &b})
    for (const auto& [i, col] : m->columns_)
      for (const auto& [o, s] : col) out.add(i, o, s);
  return out;
}

SeriesMap operator-(const SeriesMap& a, const SeriesMap& b) { return a + ExactScalar(-1) * b; }

SeriesMap operator*(const ExactScalar& c, const SeriesMap& m) {
  SeriesMap out(m.domain_, m.codomain_, m.variables_, m.window_);
  for (const auto& [i, col] : m.columns_)
    for (const auto& [o, s] : col) out.set(i, o, c * s);
  return out;
}

std::string SeriesMap::to_string() const {
  std::string out;
  for (const auto& [i, col] : columns_) {
    out += index_label(domain_, i) + " -> ";
    bool first = true;
    for (const auto& [o, s] : col) {
      if (!first) out += " ; ";
      first = false;
      out += "(" + index_label(codomain_, o) + "): " + s.to_string();
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Application and algebra of maps

SeriesVector apply(const SeriesMap& m, const std::vector<int>& legs, const LinearForm& form, const SeriesVector& v,
                   int prepower) {
  const std::size_t n = v.spaces().size();
  if (legs.size() != m.domain().size()) throw std::invalid_argument("number of legs differs from map arity");
  for (std::size_t k = 0; k < legs.size(); ++k) {
    if (legs[k] < 0 || static_cast<std::size_t>(legs[k]) >= n) throw std::invalid_argument("leg out of range");
    if (v.spaces()[static_cast<std::size_t>(legs[k])].dimension() != m.domain()[k].dimension())
      throw std::invalid_argument("map domain does not match the vector's factor");
    for (std::size_t j = 0; j < k; ++j)
      if (legs[j] == legs[k]) throw std::invalid_argument("repeated leg");
  }
  const bool same_arity = m.domain().size() == m.codomain().size();
  if (!same_arity)
    for (std::size_t k = 1; k < legs.size(); ++k)
      if (legs[k] != legs[k - 1] + 1) throw std::invalid_argument("arity-changing map needs consecutive legs");
  if (!same_arity && legs.empty()) throw std::invalid_argument("arity-changing map needs at least one leg");

  SpaceList out_spaces;
  if (same_arity) {
    out_spaces = v.spaces();
    for (std::size_t k = 0; k < legs.size(); ++k) out_spaces[static_cast<std::size_t>(legs[k])] = m.codomain()[k];
  } else {
    out_spaces.assign(v.spaces().begin(), v.spaces().begin() + legs.front());
    out_spaces.insert(out_spaces.end(), m.codomain().begin(), m.codomain().end());
    out_spaces.insert(out_spaces.end(), v.spaces().begin() + legs.back() + 1, v.spaces().end());
  }

  const bool substitutes = !m.constant() || prepower != 0;
  if (substitutes && v.variables().empty()) throw std::invalid_argument("series map applied to a constant vector");

  std::map<std::pair<IndexTuple, IndexTuple>, Series> cache;
  auto coefficient = [&](const IndexTuple& in, const IndexTuple& out, const Series& s) -> const Series& {
    auto key = std::make_pair(in, out);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Series c = substitutes ? substitute(s, form, v.variables(), v.window(), prepower) : s;
    return cache.emplace(std::move(key), std::move(c)).first->second;
  };

  SeriesVector result(out_spaces, v.variables(), v.window());
  for (const auto& [index, value] : v.entries()) {
    IndexTuple sub;
    for (int leg : legs) sub.push_back(index[static_cast<std::size_t>(leg)]);
    for (const auto& [out_sub, s] : m.column(sub)) {
      IndexTuple target;
      if (same_arity) {
        target = index;
        for (std::size_t k = 0; k < legs.size(); ++k) target[static_cast<std::size_t>(legs[k])] = out_sub[k];
      } else {
        target.assign(index.begin(), index.begin() + legs.front());
        target.insert(target.end(), out_sub.begin(), out_sub.end());
        target.insert(target.end(), index.begin() + legs.back() + 1, index.end());
      }
      result.add(target, value * coefficient(sub, out_sub, s));
    }
  }
  return result;
}

SeriesVector apply(const SeriesMap& m, const std::vector<int>& legs, const SeriesVector& v) {
  if (!m.constant()) throw std::invalid_argument("map has a variable; supply a linear form");
  return apply(m, legs, LinearForm::var(0), v, 0);
}

SeriesMap lift(const SeriesMap& m, const std::vector<std::string>& variables, const Window& window) {
  if (!m.constant()) {
    if (m.variables() != variables) throw std::invalid_argument("cannot lift a map with a different variable");
    return m;
  }
  SeriesMap out(m.domain(), m.codomain(), variables, window);
  for (const auto& [i, col] : m.columns())
    for (const auto& [o, s] : col) out.set(i, o, s);
  return out;
}

SeriesMap compose(const SeriesMap& f, const SeriesMap& g) {
  if (f.domain().size() != g.codomain().size()) throw std::invalid_argument("composition of mismatched maps");
  for (std::size_t k = 0; k < f.domain().size(); ++k)
    if (f.domain()[k].dimension() != g.codomain()[k].dimension())
      throw std::invalid_argument("composition of mismatched maps");
  auto [vars, w] = merged_variables(f, g);
  SeriesMap out(g.domain(), f.codomain(), vars, w);
  std::vector<int> legs(f.domain().size());
  for (std::size_t k = 0; k < legs.size(); ++k) legs[k] = static_cast<int>(k);
  for (const auto& [i, col] : g.columns()) {
    SeriesVector img(g.codomain(), vars, w);
    for (const auto& [o, s] : col) img.add(o, s);
    const SeriesVector fi = f.constant() ? apply(f, legs, img) : apply(f, legs, LinearForm::var(0), img);
    for (const auto& [o, s] : fi.entries()) out.set(i, o, s);
  }
  return out;
}

SeriesMap tensor(const SeriesMap& f, const SeriesMap& g) {
  auto [vars, w] = merged_variables(f, g);
  SpaceList dom = f.domain(), cod = f.codomain();
  dom.insert(dom.end(), g.domain().begin(), g.domain().end());
  cod.insert(cod.end(), g.codomain().begin(), g.codomain().end());
  SeriesMap out(dom, cod, vars, w);
  const SeriesMap fl = lift(f, vars, w), gl = lift(g, vars, w);
  for (const auto& [i, ci] : fl.columns())
    for (const auto& [j, cj] : gl.columns())
      for (const auto& [oi, si] : ci)
        for (const auto& [oj, sj] : cj) {
          IndexTuple in = i, o = oi;
          in.insert(in.end(), j.begin(), j.end());
          o.insert(o.end(), oj.begin(), oj.end());
          out.add(in, o, si * sj);
        }
  return out;
}

SeriesMap leg_embed(const SeriesMap& m, const std::vector<int>& legs, const SpaceList& ambient) {
  std::vector<std::string> vars = m.variables();
  const Window w = m.window();
  SeriesMap out;
  bool first = true;
  for (const auto& i : all_indices(ambient)) {
    const SeriesVector img = m.constant()
                                 ? apply(m, legs, SeriesVector::basis(ambient, {}, Window(), i))
                                 : apply(m, legs, LinearForm::var(0), SeriesVector::basis(ambient, vars, w, i));
    if (first) {
      out = SeriesMap(ambient, img.spaces(), vars, w);
      first = false;
    }
    for (const auto& [o, s] : img.entries()) out.set(i, o, s);
  }
  return out;
}

SeriesMap reflect(const SeriesMap& m) {
  if (m.constant()) return m;
  SeriesMap out(m.domain(), m.codomain(), m.variables(), m.window());
  for (const auto& [i, col] : m.columns())
    for (const auto& [o, s] : col) out.set(i, o, substitute(s, LinearForm::var(0, -1), m.variables(), m.window()));
  return out;
}

SeriesMap derivative(const SeriesMap& m) {
  if (m.constant()) return SeriesMap::constant_map(m.domain(), m.codomain());
  SeriesMap out(m.domain(), m.codomain(), m.variables(), m.window());
  for (const auto& [i, col] : m.columns())
    for (const auto& [o, s] : col) out.set(i, o, s.derivative(0));
  return out;
}

SeriesMap exp_xD(const SeriesMap& d, const Window& window) {
  if (!d.constant() || d.domain().size() != d.codomain().size()) throw std::invalid_argument("exp_xD needs a constant endomorphism");
  if (window.arity() != 1) throw std::invalid_argument("exp_xD needs a one-variable window");
  const std::vector<std::string> vars{"x"};
  const std::size_t dim = total_dimension(d.domain());
  // power = D^n / n!
  SeriesMap power = SeriesMap::identity(d.domain());
  std::vector<SeriesMap> powers;
  bool nilpotent = false;
  for (std::size_t n = 0;; ++n) {
    if (power.columns().empty()) {
      nilpotent = true;
      break;
    }
    if (n > dim && static_cast<int>(n) > window[0].hi) break;
    powers.push_back(power);
    power = make_scalar(1, static_cast<long>(n + 1)) * compose(d, power);
  }
  SeriesMap out(d.domain(), d.codomain(), vars, window);
  for (std::size_t n = 0; n < powers.size(); ++n) {
    Exponent e{};
    e[0] = static_cast<int>(n);
    for (const auto& [i, col] : powers[n].columns())
      for (const auto& [o, s] : col) {
        Series::Terms t{{e, s.coefficient(Exponent{})}};
        out.add(i, o, nilpotent ? Series::from_terms(vars, window, t)
                                : Series::truncated(vars, window, t, {SupportBound{0, std::nullopt}}));
      }
  }
  if (!nilpotent) {
    // Every coefficient is certified only up to the last computed power.
    SeriesMap truncated_out(d.domain(), d.codomain(), vars, window);
    Window w = window;
    w[0].hi = std::min(w[0].hi, static_cast<int>(powers.size()) - 1);
    for (const auto& i : all_indices(d.domain()))
      for (const auto& o : all_indices(d.codomain())) {
        const Series s = out.entry(i, o);
        truncated_out.set(i, o, Series::truncated(vars, w, s.terms(), {SupportBound{0, std::nullopt}}));
      }
    return truncated_out;
  }
  return out;
}

MapEquality map_equal(const SeriesMap& a, const SeriesMap& b, const Window& window) {
  check_same_maps(a, b);
  auto [vars, w] = merged_variables(a, b);
  const SeriesMap al = lift(a, vars, w), bl = lift(b, vars, w);
  MapEquality out;
  for (const auto& i : all_indices(a.domain())) {
    const VectorEquality r = vector_equal(al.image(i), bl.image(i), window);
    if (!r.holds()) return {r, i};
    if (r.kind == CertifiedEquality::Kind::EqualUpToWindow) out.result.kind = r.kind;
  }
  return out;
}

}  // namespace nvaw

// ---------------------------------------------------------------------------------------------
// Inversion

namespace nvaw {

namespace {

using Dense = std::vector<std::vector<ExactScalar>>;

// Gauss-Jordan inverse; returns the rank and fills `inv` when the rank is full.
std::size_t dense_inverse(Dense a, Dense& inv) {
  const std::size_t n = a.size();
  inv.assign(n, std::vector<ExactScalar>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t piv = rank;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[rank]);
    std::swap(inv[piv], inv[rank]);
    const ExactScalar lead = a[rank][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[rank][j] /= lead;
      inv[rank][j] /= lead;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      const ExactScalar f = a[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[rank][j];
        inv[i][j] -= f * inv[rank][j];
      }
    }
    ++rank;
  }
  return rank;
}

Dense multiply(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c(n, std::vector<ExactScalar>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (b[k][j] != 0) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

}  // namespace

SeriesMap invert(const SeriesMap& m) {
  const auto rows = all_indices(m.codomain());
  const auto cols = all_indices(m.domain());
  if (rows.size() != cols.size()) throw std::invalid_argument("only square maps can be inverted");
  const std::size_t n = rows.size();
  const std::vector<std::string> vars = m.variables().empty() ? std::vector<std::string>{"x"} : m.variables();
  const Window window = m.variables().empty() ? Window::uniform(1, 0, 0) : m.window();

  // Coefficient matrices R_d (row = codomain index, column = domain index).
  std::map<int, Dense> coeff;
  std::optional<int> lowest;
  int known_hi = window[0].hi;
  for (std::size_t c = 0; c < n; ++c)
    for (const auto& [o, s] : m.column(cols[c])) {
      const std::size_t r = static_cast<std::size_t>(std::find(rows.begin(), rows.end(), o) - rows.begin());
      if (!s.exact()) {
        const SupportBound b = s.support_bound(0);
        if (!b.floor || *b.floor < s.window()[0].lo)
          throw std::invalid_argument("cannot invert a map whose lowest degree is unknown");
        if (!b.ceil || *b.ceil > s.window()[0].hi) known_hi = std::min(known_hi, s.window()[0].hi);
        if (b.floor) lowest = std::min(lowest.value_or(*b.floor), *b.floor);
      }
      for (const auto& [e, v] : s.terms()) {
        auto& mat = coeff[e[0]];
        if (mat.empty()) mat.assign(n, std::vector<ExactScalar>(n, 0));
        mat[r][c] = v;
        lowest = std::min(lowest.value_or(e[0]), e[0]);
      }
    }
  if (!lowest) throw NotInvertible(0, n);
  const int n0 = *lowest;
  Dense lead = coeff.count(n0) ? coeff[n0] : Dense(n, std::vector<ExactScalar>(n, 0));
  Dense lead_inv;
  const std::size_t rank = dense_inverse(lead, lead_inv);
  if (rank < n) throw NotInvertible(rank, n);

  // Q_{-n0} = lead^{-1};  Q_q = -lead^{-1} * sum_{j>=1} R_{n0+j} Q_{q-j}.
  const bool exact_input = m.exact();
  const int q_hi = exact_input ? window[0].hi : std::min(window[0].hi, known_hi - 2 * n0);
  std::map<int, Dense> q;
  q[-n0] = lead_inv;
  const int r_top = coeff.rbegin()->first;
  int zero_run = 0;
  bool terminated = false;
  for (int d = -n0 + 1; d <= q_hi; ++d) {
    Dense acc(n, std::vector<ExactScalar>(n, 0));
    for (int j = 1; n0 + j <= r_top; ++j) {
      auto rj = coeff.find(n0 + j);
      auto qj = q.find(d - j);
      if (rj == coeff.end() || qj == q.end()) continue;
      const Dense p = multiply(rj->second, qj->second);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) acc[a][b] -= p[a][b];
    }
    Dense qd = multiply(lead_inv, acc);
    bool zero = true;
    for (const auto& row : qd)
      for (const auto& v : row) zero = zero && v == 0;
    if (zero) {
      // Once the last (r_top - n0) blocks vanish, every later block does too.
      if (++zero_run >= std::max(1, r_top - n0) && exact_input) {
        terminated = true;
        break;
      }
      continue;
    }
    zero_run = 0;
    q[d] = std::move(qd);
  }

  SeriesMap out(m.codomain(), m.domain(), vars, window);
  std::vector<std::map<std::size_t, Series::Terms>> terms(n);
  for (const auto& [d, mat] : q)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (mat[a][b] != 0) {
          Exponent e{};
          e[0] = d;
          terms[b][a][e] = mat[a][b];  // column b of Q is indexed by codomain row b of m
        }
  const bool exact = exact_input && terminated && q.rbegin()->first <= window[0].hi && -n0 >= window[0].lo;
  Window cert = window;
  cert[0].hi = std::min(window[0].hi, q_hi);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a = 0; a < n; ++a) {
      const Series::Terms& t = terms[b][a];
      if (exact) {
        if (!t.empty()) out.set(rows[b], cols[a], Series::from_terms(vars, window, t));
      } else {
        out.set(rows[b], cols[a], Series::truncated(vars, cert, t, {SupportBound{-n0, std::nullopt}}));
      }
    }
  return out;
}

}  // namespace nvaw
