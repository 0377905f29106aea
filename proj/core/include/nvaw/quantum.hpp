#pragma once
// S-maps: S-locality, S-skew symmetry, the quantum Yang-Baxter equation with unitarity, the
// quantum vertex algebra axioms, extraction of S, and the S-map of a twisted product.

#include <string>

#include "nvaw/products.hpp"

namespace nvaw {

/// S(x): V⊗V -> V⊗V⊗Q((x)). The column at (v, u) lists the (v_i, u_i, f_i) of the locality
/// relation: S(x)(v⊗u) = sum f_i(x) v_i⊗u_i.
struct SMap {
  std::string name;
  Nva algebra;
  SeriesMap table;
};

/// Validates the shape [V,V] -> [V,V] in the variable x. Throws std::invalid_argument.
SMap make_smap(std::string name, Nva algebra, SeriesMap table);
SMap identity_smap(const Nva& a, const Window& window);

/// (x1-x2)^k Y(u,x1)Y(v,x2)w = (x1-x2)^k Y(x2)(1⊗Y(x1))S12(x2-x1)(v⊗u⊗w) for all w, with the
/// smallest k per pair (u, v).
CheckReport check_S_locality(const SMap& s, const CheckOptions& opts = {});
/// Y(u,x)v = exp(xD) Y(-x) S(-x)(v⊗u).
CheckReport check_S_skew(const SMap& s, const CheckOptions& opts = {});
/// Yang-Baxter equation in (x, z) and S(x)S21(-x) = 1.
CheckReport check_qyb_unitarity(const SMap& s, const CheckOptions& opts = {});
/// The four defining axioms and their three partner forms, each identity named so partners can be
/// compared.
CheckReport check_qva_axioms(const SMap& s, const CheckOptions& opts = {});

/// Names of the partner identities in check_qva_axioms, as (defining form, partner form).
std::vector<std::pair<std::string, std::string>> qva_partner_identities();

struct SExtraction {
  SMap smap;
  CheckReport report;
  Z2Result z2;
};

/// Solves Y(u,x)v = exp(xD)Y(-x)S(-x)(v⊗u) for S, column by column, with unknown coefficients on
/// the window. Throws ExtractionFail (Underdetermined, Inconsistent).
SExtraction extract_S(const Nva& a, const CheckOptions& opts = {});

/// R(x) = S(x)σ as a twisting operator for (V, V).
TwistOp twist_from_smap(const SMap& s);

/// S_R(x) = (R^{-1})23(x) S_U12(x) σ12 S_V34(x) σ34 R23(x) σ13 σ24 on the product.
/// Throws PreconditionFail("twisting axioms", ...) or NotInvertible.
SMap build_S_R(const ProductNva& p, const SMap& su, const SMap& sv, const CheckOptions& opts = {});

}  // namespace nvaw
