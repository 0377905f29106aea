#pragma once
// Exact sparse Gaussian elimination over the rationals.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nvaw/rational.hpp"
#include "nvaw/series_map.hpp"

namespace nvaw {

/// Sparse row or column: position -> nonzero value.
using SparseVector = std::map<std::size_t, ExactScalar>;

struct LinearSolution {
  enum class Kind { Unique, Underdetermined, Inconsistent };
  Kind kind = Kind::Unique;
  std::vector<ExactScalar> values;  ///< one per unknown when Unique
  std::size_t rank = 0;
  std::size_t nullity = 0;
  std::string witness;  ///< label of an equation that cannot be satisfied when Inconsistent
};

std::string to_string(LinearSolution::Kind kind);

/// Scalar system  sum_j a_ij u_j = b_i  in a fixed number of unknowns.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  void add_equation(SparseVector coefficients, ExactScalar rhs, std::string label = {});
  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return rows_.size(); }

  LinearSolution solve() const;

 private:
  struct Row {
    SparseVector coefficients;
    ExactScalar rhs;
    std::string label;
  };
  std::size_t unknowns_;
  std::vector<Row> rows_;
};

/// Rank of the span of the given sparse vectors.
std::size_t sparse_rank(const std::vector<SparseVector>& vectors);

/// An equation  sum_j coefficient_j * u_j = rhs  between series-valued vectors, where the u_j are
/// unknown rationals. Every (basis tuple, exponent) in the certified region gives one scalar row.
struct SeriesEquation {
  std::vector<std::pair<std::size_t, SeriesVector>> terms;
  SeriesVector rhs;
};

struct SeriesSolveResult {
  LinearSolution solution;
  /// False when some equation could only be read inside a truncation window.
  bool exact = true;
};

/// Builds and solves the scalar system. On a unique solution the substitution is checked against
/// every equation (std::logic_error if that check ever fails).
SeriesSolveResult solve_series_equations(const std::vector<SeriesEquation>& equations, std::size_t unknowns,
                                         const Window& window);

}  // namespace nvaw
