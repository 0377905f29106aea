#pragma once
// Twisting operators R(x): V ⊗ U -> U ⊗ V ⊗ Q((x)) for an ordered pair (U, V).

#include <optional>
#include <string>

#include "nvaw/nva.hpp"

namespace nvaw {

struct TwistOp {
  std::string name;
  Nva u;
  Nva v;
  SeriesMap r;                      ///< V ⊗ U -> U ⊗ V
  std::optional<SeriesMap> inverse;  ///< U ⊗ V -> V ⊗ U
};

/// Validates the table shape against the two algebras. Throws std::invalid_argument.
TwistOp make_twist(std::string name, Nva u, Nva v, SeriesMap r);

/// R(v ⊗ u) = u ⊗ v.
TwistOp flip_twist(const Nva& u, const Nva& v, const Window& window);

/// Both vacuum conditions and both hexagon identities on all basis tuples.
CheckReport check_twisting_axioms(const TwistOp& r, const CheckOptions& opts = {});

/// Attaches the inverse table, verified on both sides. Throws NotInvertible.
TwistOp invert_twisting(const TwistOp& r, const CheckOptions& opts = {});

/// The twisting operator u ⊗ v -> R^{-1}(-x)(u ⊗ v) for the ordered pair (V, U). Inverts first if
/// needed; its own inverse is R(-x).
TwistOp reversed_twisting(const TwistOp& r, const CheckOptions& opts = {});

}  // namespace nvaw
