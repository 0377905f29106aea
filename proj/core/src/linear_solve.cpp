#include "nvaw/linear_solve.hpp"

#include <set>
#include <stdexcept>

namespace nvaw {

std::string to_string(LinearSolution::Kind kind) {
  switch (kind) {
    case LinearSolution::Kind::Unique: return "Unique";
    case LinearSolution::Kind::Underdetermined: return "Underdetermined";
    case LinearSolution::Kind::Inconsistent: return "Inconsistent";
  }
  return "?";
}

void LinearSystem::add_equation(SparseVector coefficients, ExactScalar rhs, std::string label) {
  for (auto it = coefficients.begin(); it != coefficients.end();) {
    if (it->first >= unknowns_) throw std::out_of_range("equation refers to an unknown out of range");
    it = it->second == 0 ? coefficients.erase(it) : std::next(it);
  }
  rows_.push_back({std::move(coefficients), std::move(rhs), std::move(label)});
}

namespace {

// r -= factor * pivot, on the sparse part and the right-hand side.
void eliminate(SparseVector& r, ExactScalar& rhs, const SparseVector& pivot, const ExactScalar& pivot_rhs,
               const ExactScalar& factor) {
  for (const auto& [j, v] : pivot) {
    auto [it, inserted] = r.emplace(j, 0);
    it->second -= factor * v;
    if (it->second == 0) r.erase(it);
  }
  rhs -= factor * pivot_rhs;
}

}  // namespace

LinearSolution LinearSystem::solve() const {
  // Echelon form keyed by the leading unknown; each stored pivot row is normalized to lead 1.
  std::map<std::size_t, std::pair<SparseVector, ExactScalar>> pivots;
  LinearSolution out;
  std::optional<std::string> inconsistent;
  for (const auto& row : rows_) {
    SparseVector r = row.coefficients;
    ExactScalar rhs = row.rhs;
    while (!r.empty()) {
      auto lead = r.begin();
      auto p = pivots.find(lead->first);
      if (p == pivots.end()) break;
      const ExactScalar factor = lead->second;
      eliminate(r, rhs, p->second.first, p->second.second, factor);
    }
    if (r.empty()) {
      if (rhs != 0 && !inconsistent) inconsistent = row.label.empty() ? "equation" : row.label;
      continue;
    }
    const ExactScalar lead = r.begin()->second;
    for (auto& [j, v] : r) v /= lead;
    rhs /= lead;
    const std::size_t key = r.begin()->first;
    pivots.emplace(key, std::make_pair(std::move(r), std::move(rhs)));
  }
  out.rank = pivots.size();
  out.nullity = unknowns_ - out.rank;
  if (inconsistent) {
    out.kind = LinearSolution::Kind::Inconsistent;
    out.witness = *inconsistent;
    return out;
  }
  if (out.nullity > 0) {
    out.kind = LinearSolution::Kind::Underdetermined;
    return out;
  }
  // Back substitution from the last pivot.
  out.values.assign(unknowns_, 0);
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    ExactScalar v = it->second.second;
    for (const auto& [j, c] : it->second.first)
      if (j != it->first) v -= c * out.values[j];
    out.values[it->first] = v;
  }
  out.kind = LinearSolution::Kind::Unique;
  return out;
}

std::size_t sparse_rank(const std::vector<SparseVector>& vectors) {
  std::map<std::size_t, SparseVector> pivots;
  for (const auto& vec : vectors) {
    SparseVector r = vec;
    ExactScalar dummy = 0;
    while (!r.empty()) {
      auto p = pivots.find(r.begin()->first);
      if (p == pivots.end()) break;
      const ExactScalar factor = r.begin()->second;
      eliminate(r, dummy, p->second, ExactScalar(0), factor);
    }
    if (r.empty()) continue;
    const ExactScalar lead = r.begin()->second;
    for (auto& [j, v] : r) v /= lead;
    const std::size_t key = r.begin()->first;
    pivots.emplace(key, std::move(r));
  }
  return pivots.size();
}

namespace {

Window certified_region(const SeriesEquation& eq, const Window& window, bool& exact) {
  Window region = window;
  auto visit = [&](const SeriesVector& v) {
    for (const auto& [i, s] : v.entries())
      if (!s.exact()) {
        exact = false;
        region = region.intersect(s.window());
      }
  };
  for (const auto& [u, v] : eq.terms) visit(v);
  visit(eq.rhs);
  return region;
}

}  // namespace

SeriesSolveResult solve_series_equations(const std::vector<SeriesEquation>& equations, std::size_t unknowns,
                                         const Window& window) {
  SeriesSolveResult result;
  LinearSystem system(unknowns);
  for (std::size_t e = 0; e < equations.size(); ++e) {
    const SeriesEquation& eq = equations[e];
    const Window region = certified_region(eq, window, result.exact);
    if (region.empty()) continue;
    // Collect every (index, exponent) that carries a coefficient somewhere in this equation.
    std::set<std::pair<IndexTuple, Exponent>> keys;
    auto collect = [&](const SeriesVector& v) {
      for (const auto& [i, s] : v.entries())
        for (const auto& [x, c] : s.terms())
          if (region.contains(x)) keys.emplace(i, x);
    };
    for (const auto& [u, v] : eq.terms) collect(v);
    collect(eq.rhs);
    for (const auto& [i, x] : keys) {
      SparseVector row;
      for (const auto& [u, v] : eq.terms) {
        const ExactScalar c = v.entry(i).coefficient(x);
        if (c != 0) row[u] += c;
      }
      const SpaceList& spaces = eq.rhs.spaces();
      system.add_equation(std::move(row), eq.rhs.entry(i).coefficient(x),
                          "equation " + std::to_string(e) + " at (" + index_label(spaces, i) + ") exponent " +
                              exponent_to_string(x, eq.rhs.variables().size()));
    }
  }
  result.solution = system.solve();
  if (result.solution.kind == LinearSolution::Kind::Unique) {
    for (const auto& eq : equations) {
      SeriesVector lhs(eq.rhs.spaces(), eq.rhs.variables(), eq.rhs.window());
      for (const auto& [u, v] : eq.terms) lhs = lhs + result.solution.values.at(u) * v;
      if (!vector_equal(lhs, eq.rhs, window).holds() &&
          vector_equal(lhs, eq.rhs, window).kind != CertifiedEquality::Kind::Inconclusive)
        throw std::logic_error("back substitution does not satisfy a series equation");
    }
  }
  return result;
}

}  // namespace nvaw
