#pragma once
// Finite-dimensional nonlocal vertex algebras given by structure tables, their modules, and the
// axiom checkers.

#include <optional>
#include <string>

#include "nvaw/report.hpp"
#include "nvaw/series_map.hpp"

namespace nvaw {

/// Truncation window and k-search bound shared by all checkers.
struct CheckOptions {
  int window_lo = -8;
  int window_hi = 8;
  int kmax = 10;

  Window window(std::size_t arity) const { return Window::uniform(arity, window_lo, window_hi); }
};

struct Nva {
  std::string name;
  Space space;
  int vacuum = 0;
  /// Y(a, x) b as a map V ⊗ V -> V with coefficients in the variable x.
  SeriesMap y;

  std::size_t dimension() const { return space.dimension(); }
};

/// Builds an algebra, validating the table's shape. Throws std::invalid_argument.
Nva make_nva(std::string name, Space space, const std::string& vacuum_label, SeriesMap y);

struct NvaModule {
  std::string name;
  Nva algebra;
  Space space;
  /// Y_W(a, x) w as a map V ⊗ W -> W.
  SeriesMap y;
};

NvaModule make_module(std::string name, Nva algebra, Space space, SeriesMap y);
/// The algebra acting on itself.
NvaModule adjoint_module(const Nva& a);

/// Y(a, x) b for basis vectors, as a vector in the variable x.
SeriesVector vertex_image(const Nva& a, int u, int v, const Window& window);

CheckReport check_vacuum(const Nva& a, const CheckOptions& opts = {});
CheckReport check_weak_associativity(const Nva& a, const CheckOptions& opts = {});

/// One weak-associativity comparison at a fixed k, in ambient variables (x0, x2).
VectorEquality weak_associativity_at(const NvaModule& m, int u, int v, int w, int k, const Window& window);

/// D(v) = coefficient of x in Y(v, x)1. Throws PreconditionFail("creation", v) if Y(v, x)1 has a pole.
SeriesMap compute_D(const Nva& a);
CheckReport check_D_bracket(const Nva& a, const CheckOptions& opts = {});
/// Same, with a caller-supplied D (used to show a wrong D is detected).
CheckReport check_D_bracket(const Nva& a, const SeriesMap& d, const CheckOptions& opts = {});
/// Y(v, x)1 = exp(xD) v for every basis vector.
CheckReport check_creation_exponential(const Nva& a, const CheckOptions& opts = {});

enum class ModuleForm { Original, Substituted };

CheckReport check_module(const NvaModule& m, ModuleForm form, const CheckOptions& opts = {});

/// f(1) = 1 and f(Y(a,x)b) = Y(f a, x) f b for a constant map f: A -> B. Identity names are
/// prefixed with `name`.
CheckReport check_homomorphism(const Nva& a, const Nva& b, const SeriesMap& f, const std::string& name,
                               const CheckOptions& opts = {});

/// vacuum + weak associativity + D bracket + creation exponential.
CheckReport check_nva_suite(const Nva& a, const CheckOptions& opts = {});

/// Searches the smallest k in [0, kmax] for which `attempt(k)` holds. Returns that k, or nullopt
/// with `last` holding the comparison at kmax.
template <class Attempt>
std::optional<int> search_k(int kmax, Attempt attempt, VectorEquality& last) {
  for (int k = 0; k <= kmax; ++k) {
    last = attempt(k);
    if (last.holds()) return k;
  }
  return std::nullopt;
}

/// Multiplication by (sa * x_a + sb * x_b)^k in the given ambient variables.
Series power_of_form(const LinearForm& form, int k, const std::vector<std::string>& vars, const Window& window);

}  // namespace nvaw
