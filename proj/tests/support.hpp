#pragma once
// Shared helpers for the unit tests and the acceptance binary.

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nvaw/errors.hpp"
#include "nvaw/registry.hpp"
#include "nvaw/suites.hpp"

namespace nvaw {

inline void PrintTo(Verdict v, std::ostream* os) { *os << to_string(v); }

}  // namespace nvaw

namespace nvaw::testing {

inline Window w1(int lo = -8, int hi = 8) { return Window::uniform(1, lo, hi); }

/// One-variable series in x from a literal.
inline Series sx(std::string_view literal, const Window& w = w1()) { return parse_series_literal(literal, {"x"}, w); }

inline WorkbenchFile file_of(std::string_view text) { return parse_file(text); }

inline Nva algebra_from(std::string_view text) {
  const WorkbenchFile f = parse_file(text);
  return algebra_of(f, primary_algebra(f));
}

inline WorkbenchFile registry_file(const std::string& name) { return load_input(name); }

inline Nva registry_algebra(const std::string& name) {
  const WorkbenchFile f = registry_file(name);
  return algebra_of(f, primary_algebra(f));
}

/// Verdict of the first identity whose name contains `fragment`.
inline Verdict verdict_of_identity(const CheckReport& r, std::string_view fragment) {
  for (const auto& id : r.results)
    if (id.identity.find(fragment) != std::string::npos) return id.verdict;
  throw std::out_of_range("no identity containing '" + std::string(fragment) + "' in suite " + r.suite);
}

inline const IdentityResult& identity_result(const CheckReport& r, std::string_view fragment) {
  for (const auto& id : r.results)
    if (id.identity.find(fragment) != std::string::npos) return id;
  throw std::out_of_range("no identity containing '" + std::string(fragment) + "' in suite " + r.suite);
}

/// One-variable exact series as a coefficient at one exponent.
inline ExactScalar coeff(const Series& s, int e0, int e1 = 0, int e2 = 0) { return s.coefficient(Exponent{e0, e1, e2}); }

/// Column (a,b) of a vertex table as text, for compact assertions.
inline std::string column_text(const SeriesMap& m, const IndexTuple& in) {
  std::string out;
  for (const auto& [o, s] : m.column(in)) {
    if (!out.empty()) out += " ; ";
    out += "(" + index_label(m.codomain(), o) + "):" + series_literal(s);
  }
  return out.empty() ? "0" : out;
}

inline int idx(const Space& s, const std::string& label) { return s.index_of(label); }

}  // namespace nvaw::testing
