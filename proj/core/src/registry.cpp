#include "nvaw/registry.hpp"

#include <fstream>
#include <sstream>

namespace nvaw {

namespace {

const char* const kE1 = R"nva(# dual numbers: eps squares to zero
space E1 basis 1 eps
vacuum E1 1
y E1 1 1 -> (1):1
y E1 1 eps -> (eps):1
y E1 eps 1 -> (eps):1
)nva";

const char* const kE1n = R"nva(# upper triangular 2x2 matrices: e = E11, n = E12
space E1n basis 1 e n
vacuum E1n 1
y E1n 1 1 -> (1):1
y E1n 1 e -> (e):1
y E1n 1 n -> (n):1
y E1n e 1 -> (e):1
y E1n e e -> (e):1
y E1n e n -> (n):1
y E1n n 1 -> (n):1
)nva";

const char* const kE2 = R"nva(# commutative with derivation D s = t
space E2 basis one s t
vacuum E2 one
y E2 one one -> (one):1
y E2 one s -> (s):1
y E2 one t -> (t):1
y E2 s one -> (s):1 ; (t):1@(1)
y E2 t one -> (t):1
)nva";

const char* const kZ2 = R"nva(# group algebra of Z/2, g odd
space Z2 basis 1 g
vacuum Z2 1
y Z2 1 1 -> (1):1
y Z2 1 g -> (g):1
y Z2 g 1 -> (g):1
y Z2 g g -> (1):1

# flip with a sign on g⊗g
twist R_sign Z2 Z2
r 1 1 -> (1,1):1
r 1 g -> (g,1):1
r g 1 -> (1,g):1
r g g -> (g,g):-1

coalg group Z2
delta 1 -> (1,1):1
delta g -> (g,g):1
eps 1 1
eps g 1

# g acts by the parity sign
action sign Z2 Z2
a 1 1 -> (1):1
a 1 g -> (g):1
a g 1 -> (1):1
a g g -> (g):-1

action trivial Z2 Z2
a 1 1 -> (1):1
a 1 g -> (g):1
a g 1 -> (1):1
a g g -> (g):1

coaction grading Z2 Z2
rho 1 -> (1,1):1
rho g -> (g,g):1
)nva";

const char* const kCl2 = R"nva(# Z2 twisted by R_sign with itself: u, v anticommute, (uv)^2 = -1
space Cl2 basis 1 u v uv
vacuum Cl2 1
y Cl2 1 1 -> (1):1
y Cl2 1 v -> (v):1
y Cl2 1 u -> (u):1
y Cl2 1 uv -> (uv):1
y Cl2 v 1 -> (v):1
y Cl2 v v -> (1):1
y Cl2 v u -> (uv):-1
y Cl2 v uv -> (u):-1
y Cl2 u 1 -> (u):1
y Cl2 u v -> (uv):1
y Cl2 u u -> (1):1
y Cl2 u uv -> (v):1
y Cl2 uv 1 -> (uv):1
y Cl2 uv v -> (u):1
y Cl2 uv u -> (v):-1
y Cl2 uv uv -> (1):-1

smap sign Cl2
s 1 1 -> (1,1):1
s 1 v -> (1,v):1
s 1 u -> (1,u):1
s 1 uv -> (1,uv):1
s v 1 -> (v,1):1
s v v -> (v,v):1
s v u -> (v,u):-1
s v uv -> (v,uv):-1
s u 1 -> (u,1):1
s u v -> (u,v):-1
s u u -> (u,u):1
s u uv -> (u,uv):-1
s uv 1 -> (uv,1):1
s uv v -> (uv,v):-1
s uv u -> (uv,u):-1
s uv uv -> (uv,uv):1
)nva";

SuiteRequest plain(std::string suite) { return {std::move(suite), {}, {}, true}; }
SuiteRequest with_twist(std::string suite, std::string twist) { return {std::move(suite), std::move(twist), {}, true}; }
SuiteRequest qva(std::string smap, bool expect_pass = true) { return {"qva", {}, std::move(smap), expect_pass}; }

std::vector<RegistryEntry> build() {
  return {
      {"E1", "dual numbers Q[eps]/(eps^2)", kE1,
       {plain("nva"), with_twist("twist", "flip"), with_twist("product-props", "flip"), qva("identity"),
        plain("module")}},
      {"E1n", "upper triangular 2x2 matrices (noncommutative, dimension 3)", kE1n,
       {plain("nva"), with_twist("twist", "flip"), with_twist("product-props", "flip"), plain("module"),
        qva("identity", false)}},
      {"E2", "commutative algebra Q{one,s,t} with derivation s -> t", kE2,
       {plain("nva"), with_twist("twist", "flip"), with_twist("product-props", "flip"), qva("identity"),
        plain("module")}},
      {"Z2", "group algebra of Z/2 with the sign twist and smash data", kZ2,
       {plain("nva"), with_twist("twist", "flip"), with_twist("twist", "R_sign"), with_twist("product-props", "flip"),
        with_twist("product-props", "R_sign"), qva("identity"), plain("smash"), plain("module")}},
      {"Cl2", "Clifford algebra on two odd generators with its sign S-map", kCl2,
       {plain("nva"), qva("sign"), plain("module"), qva("identity", false)}},
  };
}

}  // namespace

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = build();
  return entries;
}

const RegistryEntry* find_registry_entry(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return &e;
  return nullptr;
}

WorkbenchFile load_input(const std::string& input, const Window& window) {
  if (const RegistryEntry* e = find_registry_entry(input)) return parse_file(e->text, window);
  std::ifstream in(input);
  if (!in) throw WorkbenchError("'" + input + "' is neither a registry name nor a readable file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_file(text.str(), window);
}

}  // namespace nvaw
