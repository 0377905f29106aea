#pragma once
// The .nva text format: parsing, canonical emission, and lookup of the objects a file declares.
//
// Line-oriented, `#` starts a comment. Top-level lines:
//   space <name> basis <label>+
//   vacuum <space> <label>
//   y <space> <label> <label> -> <seriesvec>
// Blocks open with a header and collect the entry lines that follow:
//   twist <name> <V> <U>        r <v> <u> -> <seriesvec>      (V⊗U -> U⊗V, variable x)
//   smap <name> <V>             s <a> <b> -> <seriesvec>      (V⊗V -> V⊗V, variable x)
//   coalg <name> <H>            delta <h> -> <seriesvec>      (constant)
//                               eps <h> <scalar>
//   action <name> <H> <U>       a <h> <u> -> <seriesvec>      (H⊗U -> U, variable x)
//   coaction <name> <H> <V>     rho <v> -> <seriesvec>        (constant, V -> H⊗V)
//   module <name> <V> <W>       m <v> <w> -> <seriesvec>      (V⊗W -> W, variable x)
//   map <name> <A> <B>          f <a> -> <seriesvec>          (constant, A -> B)
// A seriesvec is a `;`-separated list of `(<label>,...):<series literal>` items.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nvaw/quantum.hpp"
#include "nvaw/smash.hpp"

namespace nvaw {

/// A missing or inconsistent declaration, found after parsing.
class WorkbenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BlockKind { Twist, SMap, Coalgebra, Action, Coaction, Module, Map };

std::string to_string(BlockKind kind);

struct Block {
  BlockKind kind = BlockKind::Map;
  std::string name;
  std::vector<std::string> spaces;   ///< the space names in the header, in order
  SeriesMap table;
  std::vector<ExactScalar> counit;  ///< coalgebra blocks only
};

struct AlgebraDecl {
  Space space;
  std::optional<int> vacuum;
  SeriesMap y;  ///< starts as the zero map
};

struct WorkbenchFile {
  std::vector<AlgebraDecl> spaces;
  std::vector<Block> blocks;

  const AlgebraDecl* find_space(const std::string& name) const;
  const Block* find_block(BlockKind kind, const std::string& name) const;
  std::vector<std::string> block_names(BlockKind kind) const;
};

/// `window` is the one-variable truncation used for every x-dependent table; literal terms outside
/// it are rejected. Throws ParseError with the file line and column.
WorkbenchFile parse_file(std::string_view text, const Window& window = Window::uniform(1, -8, 8));

/// Canonical text: spaces in declaration order with their vacuum and vertex lines, then blocks in
/// declaration order, one line per nonzero column.
std::string emit_file(const WorkbenchFile& file);

/// Coefficients joined by + and -, terms in exponent order.
std::string series_literal(const Series& s);

// Lookups. All throw WorkbenchError naming what is missing.
Nva algebra_of(const WorkbenchFile& f, const std::string& space);
/// The last declared space that has a vacuum.
std::string primary_algebra(const WorkbenchFile& f);
TwistOp twist_of(const WorkbenchFile& f, const std::string& name);
SMap smap_of(const WorkbenchFile& f, const std::string& name);
CoalgebraData coalgebra_of(const WorkbenchFile& f, const std::string& name);
/// The algebra on H paired with the first coalgebra block over H.
VertexBialgebra bialgebra_of(const WorkbenchFile& f, const std::string& space);
ModuleAlgebraData action_of(const WorkbenchFile& f, const std::string& name);
ComoduleAlgebraData coaction_of(const WorkbenchFile& f, const std::string& name);
NvaModule module_of(const WorkbenchFile& f, const std::string& name);
SeriesMap map_of(const WorkbenchFile& f, const std::string& name);

// Builders. Adding an algebra whose space is already present is a no-op when the declarations
// agree and a WorkbenchError otherwise.
void add_algebra(WorkbenchFile& f, const Nva& a);
void add_twist(WorkbenchFile& f, const TwistOp& r);
void add_smap(WorkbenchFile& f, const SMap& s);
void add_coalgebra(WorkbenchFile& f, const CoalgebraData& c);
void add_action(WorkbenchFile& f, const ModuleAlgebraData& m);
void add_coaction(WorkbenchFile& f, const ComoduleAlgebraData& c);
void add_module(WorkbenchFile& f, const NvaModule& m);
void add_map(WorkbenchFile& f, const std::string& name, const SeriesMap& m);

}  // namespace nvaw
