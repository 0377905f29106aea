#pragma once
// Ordinary and twisted tensor products, their structural identities, the maps attached to them,
// recovery of a twisting operator from an ambient algebra, and modules over a twisted product.

#include <optional>
#include <string>

#include "nvaw/twist.hpp"

namespace nvaw {

enum class Provenance { Ordinary, Twisted, Smash };

std::string to_string(Provenance p);

struct ProductNva {
  Nva algebra;  ///< on product_space(U, V)
  Nva u;
  Nva v;
  Provenance provenance = Provenance::Ordinary;
  TwistOp twist;       ///< the flip for ordinary products
  SeriesMap embed_u;   ///< u -> u⊗1
  SeriesMap embed_v;   ///< v -> 1⊗v
};

/// Y(u⊗v,x)(u'⊗v') = Y(u,x)u' ⊗ Y(v,x)v'.
ProductNva build_ordinary_tensor(const Nva& u, const Nva& v, const CheckOptions& opts = {});
/// Y_R(x) = (Y(x)⊗Y(x)) R^{23}(-x). Throws PreconditionFail("twisting axioms", ...) if the twist
/// fails its axioms.
ProductNva build_twisted_tensor(const TwistOp& r, const CheckOptions& opts = {});
/// Same construction without checking the twist (used to show that a broken twist misbehaves).
ProductNva assemble_twisted_tensor(const TwistOp& r, const CheckOptions& opts = {});

/// D of the product equals D⊗1 + 1⊗D, regularity of Y(u⊗1,x)(1⊗v), the twisted skew symmetry and
/// u⊗v = (u⊗1)_{-1}(1⊗v).
CheckReport check_product_properties(const ProductNva& p, const CheckOptions& opts = {});

/// The k-witnessed commutation and, for an invertible twist, the inverse skew symmetry and the
/// commutation through R^{-1}. Inverts the twist if no inverse is attached (NotInvertible).
CheckReport check_invertible_relations(const ProductNva& p, const CheckOptions& opts = {});

struct UniversalMap {
  SeriesMap psi;  ///< product space -> K
  CheckReport report;
};

/// psi(u⊗v) = (psi1 u)_{-1}(psi2 v). Throws PreconditionFail with hypothesis "homomorphism",
/// "regularity" or "skew" and the offending basis pair.
UniversalMap universal_map(const ProductNva& p, const Nva& k, const SeriesMap& psi1, const SeriesMap& psi2,
                           const CheckOptions& opts = {});

struct FlipIsomorphism {
  ProductNva reversed;  ///< V ⊗_{R^{-1}(-x)} U
  SeriesMap psi;        ///< reversed -> p, v⊗u -> v_{-1}u
  SeriesMap phi;        ///< p -> reversed, built the same way
  CheckReport report;
};

/// Throws PreconditionFail("no poles", ...) if R or R^{-1} has a negative power.
FlipIsomorphism flip_iso(const ProductNva& p, const CheckOptions& opts = {});

/// Algebra structure carried by the image of an injective constant map into K.
/// Throws PreconditionFail("subalgebra", ...) when the image is not closed.
Nva induced_subalgebra(const Nva& k, const SeriesMap& embed, const std::string& name, const std::string& vacuum_label,
                       const CheckOptions& opts = {});

/// Z_2 at truncation: columns (a, b, x1^i x2^j) for basis a, b and monomials in the window,
/// mapped to x1^i x2^j Y(a,x1)Y(b,x2)1. Optionally a and b are restricted to the images of two
/// embeddings.
struct Z2Result {
  std::size_t columns = 0;
  std::size_t rank = 0;
  std::size_t kernel_rank = 0;
};

Z2Result z2_kernel(const Nva& k, const CheckOptions& opts, const SeriesMap* restrict_left = nullptr,
                   const SeriesMap* restrict_right = nullptr);
CheckReport check_Z2_injectivity(const Nva& k, const CheckOptions& opts = {}, const SeriesMap* restrict_left = nullptr,
                                 const SeriesMap* restrict_right = nullptr);

struct TwistExtraction {
  TwistOp twist;
  CheckReport report;
  Z2Result z2_restricted;  ///< Z_2 restricted to embedU(U) ⊗ embedV(V)
  Z2Result z2_full;
};

/// Recovers R(x) from the commutation of embedded U and V inside K. Throws ExtractionFail
/// (Underdetermined, Inconsistent, AxiomsFail) or PreconditionFail for broken embeddings.
TwistExtraction extract_twisting(const Nva& k, const Nva& u, const Nva& v, const SeriesMap& embed_u,
                                 const SeriesMap& embed_v, const CheckOptions& opts = {});

struct ProductModule {
  NvaModule module;
  CheckReport report;
};

/// Module over U ⊗_R V on W from compatible U- and V-module structures. Throws PreconditionFail with
/// hypothesis "regularity", "commutation" or "twisted commutation".
ProductModule build_product_module(const ProductNva& p, const NvaModule& mu, const NvaModule& mv,
                                   const CheckOptions& opts = {});

/// The module over `sub` obtained by letting sub act through a constant homomorphism into m's algebra.
NvaModule restrict_module(const NvaModule& m, const Nva& sub, const SeriesMap& embed, const CheckOptions& opts = {});

/// Regularity, the k-witnessed twisted commutation and (invertible twist) the commutation through
/// R^{-1} for a module over the product.
CheckReport check_module_relations(const ProductNva& p, const NvaModule& m, const CheckOptions& opts = {});

}  // namespace nvaw
