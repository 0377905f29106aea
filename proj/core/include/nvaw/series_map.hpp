#pragma once
// Series-valued vectors and linear maps on tensor products of finite-dimensional spaces.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nvaw/series.hpp"
#include "nvaw/space.hpp"

namespace nvaw {

/// An element of (tensor space) ⊗ (series ring). All entries share the vector's variables; each
/// entry is certified on its own window, which lies inside the vector's window.
class SeriesVector {
 public:
  using Entries = std::map<IndexTuple, Series>;

  SeriesVector() = default;
  SeriesVector(SpaceList spaces, std::vector<std::string> variables, Window window);

  /// c times one basis tensor.
  static SeriesVector basis(SpaceList spaces, std::vector<std::string> variables, Window window,
                            const IndexTuple& index, const ExactScalar& c = 1);

  const SpaceList& spaces() const { return spaces_; }
  const std::vector<std::string>& variables() const { return variables_; }
  const Window& window() const { return window_; }
  const Entries& entries() const { return entries_; }

  /// Adds `s` to the entry at `index`. Constants are lifted to the vector's variables.
  void add(const IndexTuple& index, const Series& s);
  Series entry(const IndexTuple& index) const;
  bool exact() const;
  bool is_exact_zero() const { return entries_.empty(); }

  friend SeriesVector operator+(const SeriesVector& a, const SeriesVector& b);
  friend SeriesVector operator-(const SeriesVector& a, const SeriesVector& b);
  friend SeriesVector operator*(const ExactScalar& c, const SeriesVector& v);
  /// Multiplies every entry by a series in the vector's variables (or a constant).
  friend SeriesVector operator*(const Series& f, const SeriesVector& v);

  /// Same entries over different (equally sized) tensor factors.
  SeriesVector with_spaces(SpaceList spaces) const;
  std::string to_string() const;

 private:
  SpaceList spaces_;
  std::vector<std::string> variables_;
  Window window_;
  Entries entries_;

  Series conform(const Series& s) const;
};

/// Comparison of two vectors entry by entry; the witness names the first failing entry.
struct VectorEquality {
  CertifiedEquality::Kind kind = CertifiedEquality::Kind::ExactlyEqual;
  std::optional<IndexTuple> index;
  std::optional<Exponent> exponent;
  std::size_t variables = 0;  ///< arity of the compared vectors, for printing the exponent

  bool holds() const {
    return kind == CertifiedEquality::Kind::ExactlyEqual || kind == CertifiedEquality::Kind::EqualUpToWindow;
  }
};

VectorEquality vector_equal(const SeriesVector& a, const SeriesVector& b, const Window& window);

/// A linear map from one tensor product to another with coefficients in the series ring of one
/// variable (or constants when `variables()` is empty).
class SeriesMap {
 public:
  using Column = std::map<IndexTuple, Series>;

  SeriesMap() = default;
  SeriesMap(SpaceList domain, SpaceList codomain, std::vector<std::string> variables, Window window);
  /// x-independent map, no window.
  static SeriesMap constant_map(SpaceList domain, SpaceList codomain);

  static SeriesMap identity(const SpaceList& spaces);
  /// Output factor k is input factor order[k].
  static SeriesMap permutation(const SpaceList& domain, const std::vector<int>& order);
  static SeriesMap flip(const Space& a, const Space& b);
  /// U ⊗ V -> product_space(U, V) and back.
  static SeriesMap fuse(const Space& u, const Space& v);
  static SeriesMap split(const Space& u, const Space& v);

  const SpaceList& domain() const { return domain_; }
  const SpaceList& codomain() const { return codomain_; }
  const std::vector<std::string>& variables() const { return variables_; }
  const Window& window() const { return window_; }
  bool constant() const { return variables_.empty(); }
  const std::map<IndexTuple, Column>& columns() const { return columns_; }

  /// Overwrites one coefficient. Constants are lifted; exact zeros are not stored.
  void set(const IndexTuple& in, const IndexTuple& out, const Series& s);
  void add(const IndexTuple& in, const IndexTuple& out, const Series& s);
  const Column& column(const IndexTuple& in) const;
  Series entry(const IndexTuple& in, const IndexTuple& out) const;
  /// The image of a basis tensor as a vector in the map's own variables.
  SeriesVector image(const IndexTuple& in) const;
  bool exact() const;

  friend SeriesMap operator+(const SeriesMap& a, const SeriesMap& b);
  friend SeriesMap operator-(const SeriesMap& a, const SeriesMap& b);
  friend SeriesMap operator*(const ExactScalar& c, const SeriesMap& m);

  std::string to_string() const;

 private:
  SpaceList domain_;
  SpaceList codomain_;
  std::vector<std::string> variables_;
  Window window_;
  std::map<IndexTuple, Column> columns_;

  Series conform(const Series& s) const;
};

/// Applies `m` to the factors `legs` of `v`, evaluating the map's variable at `form` (a linear form
/// in the vector's variables) and multiplying each coefficient by form^prepower. Maps that keep
/// the number of factors may act on any distinct legs; maps that change it need consecutive legs,
/// and their output replaces that range.
SeriesVector apply(const SeriesMap& m, const std::vector<int>& legs, const LinearForm& form, const SeriesVector& v,
                   int prepower = 0);
/// Same, for a constant map (the form is irrelevant).
SeriesVector apply(const SeriesMap& m, const std::vector<int>& legs, const SeriesVector& v);

/// f ∘ g.
SeriesMap compose(const SeriesMap& f, const SeriesMap& g);
SeriesMap tensor(const SeriesMap& f, const SeriesMap& g);
/// The map acting as `m` on `legs` of `ambient` and as the identity elsewhere.
SeriesMap leg_embed(const SeriesMap& m, const std::vector<int>& legs, const SpaceList& ambient);
/// x -> -x in every coefficient.
SeriesMap reflect(const SeriesMap& m);
/// d/dx of every coefficient.
SeriesMap derivative(const SeriesMap& m);
/// Constant map viewed as a map with coefficients in the given variable and window.
SeriesMap lift(const SeriesMap& m, const std::vector<std::string>& variables, const Window& window);
/// exp(x D) for a constant endomorphism D, truncated to `window` unless D is nilpotent.
SeriesMap exp_xD(const SeriesMap& d, const Window& window);

/// Two-sided inverse of a square map over the Laurent series field, expanded up to the map's
/// window. Requires an invertible lowest-degree coefficient matrix; otherwise throws
/// NotInvertible carrying that matrix's rank. The result is exact when it is a Laurent polynomial
/// whose product with `m` is exactly the identity.
SeriesMap invert(const SeriesMap& m);

struct MapEquality {
  VectorEquality result;
  std::optional<IndexTuple> column;
  bool holds() const { return result.holds(); }
};

MapEquality map_equal(const SeriesMap& a, const SeriesMap& b, const Window& window);

}  // namespace nvaw
