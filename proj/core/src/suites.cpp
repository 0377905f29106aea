#include "nvaw/suites.hpp"

#include "nvaw/errors.hpp"

namespace nvaw {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"nva", "twist", "qva", "smash", "product-props", "module"};
  return names;
}

namespace {

std::string algebra_name(const WorkbenchFile& f, const SuiteOptions& opts) {
  return opts.algebra.empty() ? primary_algebra(f) : opts.algebra;
}

std::optional<TwistOp> try_invert(const TwistOp& r, const CheckOptions& opts) {
  try {
    return invert_twisting(r, opts);
  } catch (const NotInvertible&) {
    return std::nullopt;
  }
}

void twist_suite(const WorkbenchFile& f, const SuiteOptions& opts, std::vector<CheckReport>& out) {
  const TwistOp r = resolve_twist(f, opts.twist, algebra_name(f, opts), opts.check);
  out.push_back(check_twisting_axioms(r, opts.check));
  if (!out.back().passed()) return;
  if (auto inv = try_invert(r, opts.check)) {
    CheckReport reversed = check_twisting_axioms(reversed_twisting(*inv, opts.check), opts.check);
    reversed.suite = "reversed-twist";
    out.push_back(std::move(reversed));
  }
}

void qva_suite(const WorkbenchFile& f, const SuiteOptions& opts, std::vector<CheckReport>& out) {
  const SMap s = resolve_smap(f, opts.smap, algebra_name(f, opts), opts.check);
  out.push_back(check_S_locality(s, opts.check));
  out.push_back(check_S_skew(s, opts.check));
  out.push_back(check_qyb_unitarity(s, opts.check));
  out.push_back(check_qva_axioms(s, opts.check));
  CheckReport twist = check_twisting_axioms(twist_from_smap(s), opts.check);
  twist.suite = "smap-twist";
  out.push_back(std::move(twist));
}

void product_suite(const WorkbenchFile& f, const SuiteOptions& opts, std::vector<CheckReport>& out) {
  const TwistOp r = resolve_twist(f, opts.twist, algebra_name(f, opts), opts.check);
  const ProductNva p = build_twisted_tensor(r, opts.check);
  CheckReport nva = check_nva_suite(p.algebra, opts.check);
  nva.suite = "product-nva";
  out.push_back(std::move(nva));
  out.push_back(check_product_properties(p, opts.check));
  out.push_back(universal_map(p, p.algebra, p.embed_u, p.embed_v, opts.check).report);
  if (!try_invert(r, opts.check)) return;
  out.push_back(check_invertible_relations(p, opts.check));
  try {
    out.push_back(flip_iso(p, opts.check).report);
  } catch (const PreconditionFail&) {
    // a twist with poles has no flip isomorphism of this shape; nothing to report
  }
}

void smash_suite(const WorkbenchFile& f, const SuiteOptions& opts, std::vector<CheckReport>& out) {
  const auto actions = f.block_names(BlockKind::Action);
  const auto coactions = f.block_names(BlockKind::Coaction);
  if (actions.empty() || coactions.empty())
    throw WorkbenchError("the smash suite needs at least one action block and one coaction block");
  for (const auto& c : f.block_names(BlockKind::Coalgebra)) out.push_back(check_coalgebra(coalgebra_of(f, c), opts.check));
  for (const auto& a : actions) out.push_back(check_module_algebra(action_of(f, a), opts.check));
  for (const auto& c : coactions) out.push_back(check_comodule_algebra(coaction_of(f, c), opts.check));
  for (const auto& a : actions) {
    const ModuleAlgebraData u = action_of(f, a);
    out.push_back(check_vertex_bialgebra(u.bialgebra, opts.check));
    if (!out.back().passed()) continue;
    for (const auto& c : coactions) {
      const ComoduleAlgebraData v = coaction_of(f, c);
      if (v.bialgebra.algebra.space.name() != u.bialgebra.algebra.space.name()) continue;
      CheckReport nva = check_nva_suite(build_smash(u, v, opts.check).algebra, opts.check);
      nva.suite = "smash-nva (" + a + ", " + c + ")";
      out.push_back(std::move(nva));
      CheckReport equiv = smash_as_twist(u, v, opts.check).report;
      equiv.suite += " (" + a + ", " + c + ")";
      out.push_back(std::move(equiv));
    }
  }
}

void module_suite(const WorkbenchFile& f, const SuiteOptions& opts, std::vector<CheckReport>& out) {
  std::vector<NvaModule> modules;
  for (const auto& m : f.block_names(BlockKind::Module)) modules.push_back(module_of(f, m));
  if (modules.empty()) modules.push_back(adjoint_module(algebra_of(f, algebra_name(f, opts))));
  for (const auto& m : modules) {
    out.push_back(check_module(m, ModuleForm::Original, opts.check));
    out.push_back(check_module(m, ModuleForm::Substituted, opts.check));
  }
}

}  // namespace

TwistOp resolve_twist(const WorkbenchFile& f, const std::string& name, const std::string& algebra,
                      const CheckOptions& opts) {
  if (name.empty()) throw WorkbenchError("this suite needs --twist NAME");
  if (f.find_block(BlockKind::Twist, name)) return twist_of(f, name);
  if (name == "flip") {
    const Nva a = algebra_of(f, algebra);
    return flip_twist(a, a, opts.window(1));
  }
  throw WorkbenchError("no twist named '" + name + "'");
}

SMap resolve_smap(const WorkbenchFile& f, const std::string& name, const std::string& algebra,
                  const CheckOptions& opts) {
  if (name.empty()) throw WorkbenchError("this suite needs --smap NAME");
  if (f.find_block(BlockKind::SMap, name)) return smap_of(f, name);
  if (name == "identity") return identity_smap(algebra_of(f, algebra), opts.window(1));
  throw WorkbenchError("no smap named '" + name + "'");
}

std::vector<CheckReport> run_suite(const WorkbenchFile& f, const std::string& suite, const SuiteOptions& opts) {
  std::vector<CheckReport> out;
  if (suite == "nva")
    out.push_back(check_nva_suite(algebra_of(f, algebra_name(f, opts)), opts.check));
  else if (suite == "twist")
    twist_suite(f, opts, out);
  else if (suite == "qva")
    qva_suite(f, opts, out);
  else if (suite == "smash")
    smash_suite(f, opts, out);
  else if (suite == "product-props")
    product_suite(f, opts, out);
  else if (suite == "module")
    module_suite(f, opts, out);
  else
    throw WorkbenchError("unknown suite '" + suite + "'");
  return out;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed()) return false;
  return true;
}

}  // namespace nvaw
