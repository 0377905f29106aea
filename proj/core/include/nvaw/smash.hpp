#pragma once
// Coalgebras, vertex bialgebras, module-algebras and comodule-algebras over them, the smash
// product, and its description as a twisted tensor product.

#include <string>
#include <vector>

#include "nvaw/products.hpp"

namespace nvaw {

struct CoalgebraData {
  std::string name;
  Space space;
  SeriesMap coproduct;              ///< constant, [C] -> [C, C]
  std::vector<ExactScalar> counit;  ///< one value per basis vector
};

/// Validates shapes. Throws std::invalid_argument.
CoalgebraData make_coalgebra(std::string name, Space space, SeriesMap coproduct, std::vector<ExactScalar> counit);

struct VertexBialgebra {
  Nva algebra;
  CoalgebraData coalgebra;
};

/// The action Y(h, x)u is a map [H, U] -> [U] in the variable x.
struct ModuleAlgebraData {
  std::string name;
  VertexBialgebra bialgebra;
  Nva algebra;
  SeriesMap action;
};

/// The coaction is constant, [V] -> [H, V].
struct ComoduleAlgebraData {
  std::string name;
  VertexBialgebra bialgebra;
  Nva algebra;
  SeriesMap coaction;
};

CheckReport check_coalgebra(const CoalgebraData& c, const CheckOptions& opts = {});
/// Counit and coproduct are homomorphisms (into Q and the ordinary tensor square).
CheckReport check_vertex_bialgebra(const VertexBialgebra& h, const CheckOptions& opts = {});
/// Module axioms for the action, range, vacuum, the compatibility with Y_U, and the composition
/// identity Y(h,z+x)Y(h',z)v = Y(Y(h,x)h',z)v.
CheckReport check_module_algebra(const ModuleAlgebraData& m, const CheckOptions& opts = {});
/// Comodule laws, rho(1) = 1⊗1, and rho a homomorphism into the ordinary product H⊗V.
CheckReport check_comodule_algebra(const ComoduleAlgebraData& c, const CheckOptions& opts = {});

/// The module-algebra action as an H-module on U.
NvaModule action_module(const ModuleAlgebraData& m);

/// Y(u⊗v,x)(u'⊗v') = Y(u,x)Y(b1(v),x)u' ⊗ Y(v2,x)v' with rho(v) = b1(v)⊗v2. The returned
/// product's twist slot holds the twist of smash_twist, unchecked. Throws PreconditionFail when
/// the bialgebras differ or either datum fails its suite.
ProductNva build_smash(const ModuleAlgebraData& u, const ComoduleAlgebraData& v, const CheckOptions& opts = {});

/// R(x)(v⊗u) = Y(b1(v),-x)u ⊗ v2, without any checks.
TwistOp smash_twist(const ModuleAlgebraData& u, const ComoduleAlgebraData& v);

struct SmashAsTwist {
  TwistOp twist;
  CheckReport report;  ///< twist axioms, then the column-by-column comparison of the two products
};

SmashAsTwist smash_as_twist(const ModuleAlgebraData& u, const ComoduleAlgebraData& v, const CheckOptions& opts = {});

/// Column-by-column comparison of two vertex tables; the identity is named `identity`.
CheckReport compare_tables(const std::string& identity, const SeriesMap& a, const SeriesMap& b, const Window& window);

}  // namespace nvaw
