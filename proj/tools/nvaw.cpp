// nvaw: check, build and extract nonlocal vertex algebra data from .nva files or the registry.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "nvaw/errors.hpp"
#include "nvaw/registry.hpp"
#include "nvaw/suites.hpp"

namespace {

using nvaw::CheckReport;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string window = "-8..8";
  int kmax = 10;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--window", c.window, "truncation window a..b")->capture_default_str();
  cmd->add_option("--kmax", c.kmax, "largest k tried in k-witnessed identities")->capture_default_str();
}

nvaw::CheckOptions check_options(const Common& c) {
  const auto dots = c.window.find("..");
  if (dots == std::string::npos) throw CLI::ValidationError("--window", "expected a..b, got '" + c.window + "'");
  nvaw::CheckOptions o;
  try {
    std::size_t used = 0;
    o.window_lo = std::stoi(c.window.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument("lo");
    const std::string hi = c.window.substr(dots + 2);
    o.window_hi = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument("hi");
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--window", "expected integers a..b, got '" + c.window + "'");
  }
  if (o.window_lo > o.window_hi) throw CLI::ValidationError("--window", "empty window " + c.window);
  if (c.kmax < 0) throw CLI::ValidationError("--kmax", "must be nonnegative");
  o.kmax = c.kmax;
  return o;
}

nlohmann::json window_json(const nvaw::Window& w) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t v = 0; v < w.arity(); ++v) out.push_back({w[v].lo, w[v].hi});
  return out;
}

nlohmann::json reports_json(const std::vector<CheckReport>& reports) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : reports)
    for (const auto& id : r.results) {
      nlohmann::json j = {{"suite", r.suite},
                          {"identity", id.identity},
                          {"verdict", nvaw::to_string(id.verdict)},
                          {"witness", id.witness},
                          {"cases", id.cases},
                          {"window", window_json(r.window)},
                          {"kmax", r.kmax}};
      j["max_k"] = id.max_k ? nlohmann::json(*id.max_k) : nlohmann::json(nullptr);
      nlohmann::json ks = nlohmann::json::array();
      for (const auto& k : r.k_witnesses)
        if (k.identity == id.identity) ks.push_back({{"tuple", k.tuple}, {"k", k.k}});
      j["k_witnesses"] = std::move(ks);
      out.push_back(std::move(j));
    }
  return out;
}

void print_reports(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) std::cout << r.to_text();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw nvaw::WorkbenchError("cannot write '" + path + "'");
  out << text;
  if (!out) throw nvaw::WorkbenchError("failed writing '" + path + "'");
}

int status_of(const std::vector<CheckReport>& reports) {
  return nvaw::all_passed(reports) ? kExitPass : kExitFail;
}

// --- commands -------------------------------------------------------------------------------

struct CheckArgs {
  Common common;
  std::string input;
  std::string suite;
  std::string twist;
  std::string smap;
  std::string algebra;
  std::string json;
};

int run_check(const CheckArgs& a) {
  nvaw::SuiteOptions opts;
  opts.check = check_options(a.common);
  opts.twist = a.twist;
  opts.smap = a.smap;
  opts.algebra = a.algebra;
  const auto file = nvaw::load_input(a.input, opts.check.window(1));
  const auto reports = nvaw::run_suite(file, a.suite, opts);
  print_reports(reports);
  if (!a.json.empty()) write_text(a.json, reports_json(reports).dump(2) + "\n");
  return status_of(reports);
}

struct ProductArgs {
  Common common;
  std::string u;
  std::string v;
  std::string twist;
  std::string output;
};

nvaw::TwistOp find_twist(const nvaw::WorkbenchFile& fu, const nvaw::WorkbenchFile& fv, const std::string& name,
                         const nvaw::CheckOptions& opts) {
  const nvaw::Nva u = nvaw::algebra_of(fu, nvaw::primary_algebra(fu));
  const nvaw::Nva v = nvaw::algebra_of(fv, nvaw::primary_algebra(fv));
  for (const auto* f : {&fu, &fv})
    if (f->find_block(nvaw::BlockKind::Twist, name)) {
      nvaw::TwistOp r = nvaw::twist_of(*f, name);
      if (!(r.u.space == u.space) || !(r.v.space == v.space))
        throw nvaw::WorkbenchError("twist '" + name + "' is declared for " + r.v.space.name() + "⊗" +
                                   r.u.space.name() + ", not for " + v.space.name() + "⊗" + u.space.name());
      return r;
    }
  if (name == "flip") return nvaw::flip_twist(u, v, opts.window(1));
  throw nvaw::WorkbenchError("no twist named '" + name + "' in either input");
}

void add_product(nvaw::WorkbenchFile& out, const nvaw::ProductNva& p, const nvaw::TwistOp& r) {
  nvaw::add_twist(out, r);
  nvaw::add_algebra(out, p.algebra);
  nvaw::add_map(out, "embedU", p.embed_u);
  nvaw::add_map(out, "embedV", p.embed_v);
}

int run_product(const ProductArgs& a) {
  const auto opts = check_options(a.common);
  const auto fu = nvaw::load_input(a.u, opts.window(1));
  const auto fv = nvaw::load_input(a.v, opts.window(1));
  const nvaw::TwistOp r = find_twist(fu, fv, a.twist, opts);
  const nvaw::ProductNva p = nvaw::build_twisted_tensor(r, opts);
  nvaw::WorkbenchFile out;
  add_product(out, p, r);
  const std::vector<CheckReport> reports = {nvaw::check_nva_suite(p.algebra, opts)};
  print_reports(reports);
  write_text(a.output, nvaw::emit_file(out));
  std::cout << "wrote " << p.algebra.space.name() << " to " << a.output << "\n";
  return status_of(reports);
}

struct SmashArgs {
  Common common;
  std::string action_file;
  std::string coaction_file;
  std::string action;
  std::string coaction;
  std::string output;
};

std::string first_block(const nvaw::WorkbenchFile& f, nvaw::BlockKind kind, const std::string& wanted,
                        const std::string& path) {
  if (!wanted.empty()) return wanted;
  const auto names = f.block_names(kind);
  if (names.empty()) throw nvaw::WorkbenchError("'" + path + "' has no " + nvaw::to_string(kind) + " block");
  return names.front();
}

int run_smash(const SmashArgs& a) {
  const auto opts = check_options(a.common);
  const auto fa = nvaw::load_input(a.action_file, opts.window(1));
  const auto fc = nvaw::load_input(a.coaction_file, opts.window(1));
  const auto u = nvaw::action_of(fa, first_block(fa, nvaw::BlockKind::Action, a.action, a.action_file));
  const auto v = nvaw::coaction_of(fc, first_block(fc, nvaw::BlockKind::Coaction, a.coaction, a.coaction_file));
  const nvaw::ProductNva p = nvaw::build_smash(u, v, opts);
  nvaw::SmashAsTwist equiv = nvaw::smash_as_twist(u, v, opts);
  equiv.twist.name = "smash";
  nvaw::WorkbenchFile out;
  add_product(out, p, equiv.twist);
  const std::vector<CheckReport> reports = {nvaw::check_nva_suite(p.algebra, opts), equiv.report};
  print_reports(reports);
  write_text(a.output, nvaw::emit_file(out));
  std::cout << "wrote " << p.algebra.space.name() << " to " << a.output << "\n";
  return status_of(reports);
}

struct ExtractTwistArgs {
  Common common;
  std::string input;
  std::string u_map;
  std::string v_map;
  std::string name = "extracted";
  std::string output;
};

int run_extract_twist(const ExtractTwistArgs& a) {
  const auto opts = check_options(a.common);
  const auto f = nvaw::load_input(a.input, opts.window(1));
  const nvaw::SeriesMap eu = nvaw::map_of(f, a.u_map);
  const nvaw::SeriesMap ev = nvaw::map_of(f, a.v_map);
  if (!(eu.codomain()[0] == ev.codomain()[0]))
    throw nvaw::WorkbenchError("maps '" + a.u_map + "' and '" + a.v_map + "' land in different spaces");
  const nvaw::Nva k = nvaw::algebra_of(f, eu.codomain()[0].name());
  const nvaw::Nva u = nvaw::algebra_of(f, eu.domain()[0].name());
  const nvaw::Nva v = nvaw::algebra_of(f, ev.domain()[0].name());
  nvaw::TwistExtraction x = nvaw::extract_twisting(k, u, v, eu, ev, opts);
  x.twist.name = a.name;
  print_reports({x.report});
  std::cout << "Z2 kernel rank on embedded U⊗V: " << x.z2_restricted.kernel_rank << " (" << x.z2_restricted.columns
            << " columns, rank " << x.z2_restricted.rank << ")\n";
  std::cout << "Z2 kernel rank on all of K⊗K: " << x.z2_full.kernel_rank << " (" << x.z2_full.columns
            << " columns, rank " << x.z2_full.rank << ")\n";
  nvaw::WorkbenchFile out;
  nvaw::add_twist(out, x.twist);
  const std::string text = nvaw::emit_file(out);
  if (a.output.empty())
    std::cout << text;
  else
    write_text(a.output, text);
  return status_of({x.report});
}

struct ExtractSmapArgs {
  Common common;
  std::string input;
  std::string algebra;
  std::string output;
};

int run_extract_smap(const ExtractSmapArgs& a) {
  const auto opts = check_options(a.common);
  const auto f = nvaw::load_input(a.input, opts.window(1));
  const nvaw::Nva alg = nvaw::algebra_of(f, a.algebra.empty() ? nvaw::primary_algebra(f) : a.algebra);
  nvaw::SExtraction x = nvaw::extract_S(alg, opts);
  x.smap.name = "extracted";
  print_reports({x.report});
  std::cout << "Z2 kernel rank: " << x.z2.kernel_rank << " (" << x.z2.columns << " columns, rank " << x.z2.rank
            << ")\n";
  nvaw::WorkbenchFile out;
  nvaw::add_smap(out, x.smap);
  const std::string text = nvaw::emit_file(out);
  if (a.output.empty())
    std::cout << text;
  else
    write_text(a.output, text);
  return status_of({x.report});
}

int run_list() {
  for (const auto& e : nvaw::registry()) {
    std::cout << e.name << "  " << e.summary << "\n";
    for (const auto& s : e.suites) {
      std::cout << "    --suite " << s.suite;
      if (!s.twist.empty()) std::cout << " --twist " << s.twist;
      if (!s.smap.empty()) std::cout << " --smap " << s.smap;
      if (!s.expect_pass) std::cout << "   (expected to fail)";
      std::cout << "\n";
    }
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks and constructions for finite-dimensional nonlocal vertex algebras"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "run a check suite on a file or registry instance");
  c->add_option("input", check.input, "registry name or .nva file")->required();
  c->add_option("--suite", check.suite, "suite name")->required()->check(CLI::IsMember(nvaw::suite_names()));
  c->add_option("--twist", check.twist, "twist name (twist, product-props)");
  c->add_option("--smap", check.smap, "S-map name (qva)");
  c->add_option("--algebra", check.algebra, "algebra to check (default: last declared)");
  c->add_option("--json", check.json, "also write the results as JSON");
  add_common(c, check.common);

  ProductArgs product;
  auto* p = app.add_subcommand("product", "build a twisted tensor product");
  p->add_option("U", product.u, "left factor")->required();
  p->add_option("V", product.v, "right factor")->required();
  p->add_option("--twist", product.twist, "twist name, or flip")->required();
  p->add_option("-o,--output", product.output, "output .nva file")->required();
  add_common(p, product.common);

  SmashArgs smash;
  auto* s = app.add_subcommand("smash", "build a smash product");
  s->add_option("action-file", smash.action_file, "file with the module-algebra action")->required();
  s->add_option("coaction-file", smash.coaction_file, "file with the comodule-algebra coaction")->required();
  s->add_option("--action", smash.action, "action block name (default: first)");
  s->add_option("--coaction", smash.coaction, "coaction block name (default: first)");
  s->add_option("-o,--output", smash.output, "output .nva file")->required();
  add_common(s, smash.common);

  ExtractTwistArgs xt;
  auto* t = app.add_subcommand("extract-twist", "recover the twist of a product from two embeddings");
  t->add_option("K", xt.input, "file containing the algebra and both embeddings")->required();
  t->add_option("--u", xt.u_map, "map block embedding U")->required();
  t->add_option("--v", xt.v_map, "map block embedding V")->required();
  t->add_option("--name", xt.name, "name of the emitted twist")->capture_default_str();
  t->add_option("-o,--output", xt.output, "output .nva file (default: stdout)");
  add_common(t, xt.common);

  ExtractSmapArgs xs;
  auto* m = app.add_subcommand("extract-smap", "solve S-skew symmetry for an S-map");
  m->add_option("K", xs.input, "registry name or .nva file")->required();
  m->add_option("--algebra", xs.algebra, "algebra (default: last declared)");
  m->add_option("-o,--output", xs.output, "output .nva file (default: stdout)");
  add_common(m, xs.common);

  app.add_subcommand("list", "list the registry instances and their declared suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (c->parsed()) return run_check(check);
    if (p->parsed()) return run_product(product);
    if (s->parsed()) return run_smash(smash);
    if (t->parsed()) return run_extract_twist(xt);
    if (m->parsed()) return run_extract_smap(xs);
    return run_list();
  } catch (const CLI::Error& e) {
    std::cerr << "nvaw: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nvaw::ParseError& e) {
    std::cerr << "nvaw: parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nvaw::WorkbenchError& e) {
    std::cerr << "nvaw: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nvaw::PreconditionFail& e) {
    std::cerr << "nvaw: " << e.what() << "\n";
    return kExitFail;
  } catch (const nvaw::NotInvertible& e) {
    std::cerr << "nvaw: " << e.what() << "\n";
    return kExitFail;
  } catch (const nvaw::ExtractionFail& e) {
    std::cerr << "nvaw: extraction failed: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "nvaw: invalid input: " << e.what() << "\n";
    return kExitUsage;
  }
}
