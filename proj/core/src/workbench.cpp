#include "nvaw/workbench.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "nvaw/errors.hpp"

namespace nvaw {

std::string to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::Twist: return "twist";
    case BlockKind::SMap: return "smap";
    case BlockKind::Coalgebra: return "coalg";
    case BlockKind::Action: return "action";
    case BlockKind::Coaction: return "coaction";
    case BlockKind::Module: return "module";
    case BlockKind::Map: return "map";
  }
  return "?";
}

const AlgebraDecl* WorkbenchFile::find_space(const std::string& name) const {
  for (const auto& d : spaces)
    if (d.space.name() == name) return &d;
  return nullptr;
}

const Block* WorkbenchFile::find_block(BlockKind kind, const std::string& name) const {
  for (const auto& b : blocks)
    if (b.kind == kind && b.name == name) return &b;
  return nullptr;
}

std::vector<std::string> WorkbenchFile::block_names(BlockKind kind) const {
  std::vector<std::string> out;
  for (const auto& b : blocks)
    if (b.kind == kind) out.push_back(b.name);
  return out;
}

namespace {

const std::vector<std::string> kX = {"x"};

bool label_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' && c != ';' && c != ':' &&
         c != '#';
}

// Which table a block kind carries, given the spaces named in its header.
struct TableShape {
  SpaceList domain;
  SpaceList codomain;
  bool constant = false;
  const char* entry = "";
};

std::size_t header_arity(BlockKind kind) {
  switch (kind) {
    case BlockKind::SMap:
    case BlockKind::Coalgebra: return 1;
    default: return 2;
  }
}

TableShape shape_of(BlockKind kind, const std::vector<Space>& s) {
  switch (kind) {
    case BlockKind::Twist: return {{s[0], s[1]}, {s[1], s[0]}, false, "r"};
    case BlockKind::SMap: return {{s[0], s[0]}, {s[0], s[0]}, false, "s"};
    case BlockKind::Coalgebra: return {{s[0]}, {s[0], s[0]}, true, "delta"};
    case BlockKind::Action: return {{s[0], s[1]}, {s[1]}, false, "a"};
    case BlockKind::Coaction: return {{s[1]}, {s[0], s[1]}, true, "rho"};
    case BlockKind::Module: return {{s[0], s[1]}, {s[1]}, false, "m"};
    case BlockKind::Map: return {{s[0]}, {s[1]}, true, "f"};
  }
  return {};
}

SeriesMap empty_table(const TableShape& shape, const Window& window) {
  if (shape.constant) return SeriesMap::constant_map(shape.domain, shape.codomain);
  return SeriesMap(shape.domain, shape.codomain, kX, window);
}

std::optional<BlockKind> header_kind(const std::string& word) {
  static const std::pair<const char*, BlockKind> kinds[] = {
      {"twist", BlockKind::Twist},   {"smap", BlockKind::SMap},         {"coalg", BlockKind::Coalgebra},
      {"action", BlockKind::Action}, {"coaction", BlockKind::Coaction}, {"module", BlockKind::Module},
      {"map", BlockKind::Map}};
  for (const auto& [w, k] : kinds)
    if (word == w) return k;
  return std::nullopt;
}

class LineReader {
 public:
  LineReader(std::string_view text, int line) : text_(text), line_(line) {
    const auto hash = text_.find('#');
    if (hash != std::string_view::npos) text_ = text_.substr(0, hash);
  }

  int line() const { return line_; }
  int column() const { return static_cast<int>(pos_) + 1; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  [[noreturn]] void fail(const std::string& expected, const std::string& detail) const {
    throw ParseError(line_, column(), expected, detail);
  }
  [[noreturn]] void fail_at(int column, const std::string& expected, const std::string& detail) const {
    throw ParseError(line_, column, expected, detail);
  }

  /// A whitespace-free label token.
  std::string word(const std::string& expected) {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && label_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail(expected, pos_ >= text_.size() ? "unexpected end of line" : "unexpected character");
    return std::string(text_.substr(start, pos_ - start));
  }

  void keyword(const std::string& kw) {
    const int col = (skip_space(), column());
    if (word("'" + kw + "'") != kw) fail_at(col, "'" + kw + "'", "unexpected word");
  }

  void arrow() {
    skip_space();
    if (text_.substr(pos_, 2) != "->") fail("'->'", "missing arrow");
    pos_ += 2;
  }

  void end() {
    if (!at_end()) fail("end of line", "trailing input");
  }

  std::string_view rest() const { return text_.substr(pos_); }
  std::size_t position() const { return pos_; }
  void advance_to_end() { pos_ = text_.size(); }

 private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

int label_index(LineReader& in, const Space& space, const std::string& what) {
  const int col = (in.skip_space(), in.column());
  const std::string label = in.word(what + " label of " + space.name());
  if (!space.has_label(label)) in.fail_at(col, "a basis label of " + space.name(), "unknown label '" + label + "'");
  return space.index_of(label);
}

// Parses `(<label>,...):<literal> ; ...` into one column of `table`.
void parse_seriesvec(LineReader& in, SeriesMap& table, const IndexTuple& column, const Window& window) {
  const SpaceList& targets = table.codomain();
  const std::vector<std::string>& vars = table.variables();
  const std::string_view rest = in.rest();
  const int base = in.column();
  std::size_t start = 0;
  std::set<IndexTuple> seen;
  while (true) {
    const std::size_t stop = std::min(rest.find(';', start), rest.size());
    const std::string_view item = rest.substr(start, stop - start);
    const int item_col = base + static_cast<int>(start);
    LineReader r(item, in.line());
    auto fail = [&](const std::string& expected, const std::string& detail) {
      throw ParseError(in.line(), item_col + r.column() - 1, expected, detail);
    };
    r.skip_space();
    if (r.at_end()) fail("'('", "empty item in series vector");
    if (r.rest().front() != '(') fail("'('", "a target tuple must open with '('");
    IndexTuple target;
    const std::string_view body = r.rest().substr(1);
    std::size_t p = 0;
    for (std::size_t k = 0; k < targets.size(); ++k) {
      while (p < body.size() && std::isspace(static_cast<unsigned char>(body[p]))) ++p;
      const std::size_t lstart = p;
      while (p < body.size() && label_char(body[p])) ++p;
      const int lcol = item_col + static_cast<int>(r.position() + 1 + lstart);
      const std::string label(body.substr(lstart, p - lstart));
      if (label.empty()) throw ParseError(in.line(), lcol, "a basis label of " + targets[k].name(), "missing label");
      if (!targets[k].has_label(label))
        throw ParseError(in.line(), lcol, "a basis label of " + targets[k].name(), "unknown label '" + label + "'");
      target.push_back(targets[k].index_of(label));
      while (p < body.size() && std::isspace(static_cast<unsigned char>(body[p]))) ++p;
      const char want = k + 1 < targets.size() ? ',' : ')';
      if (p >= body.size() || body[p] != want)
        throw ParseError(in.line(), item_col + static_cast<int>(r.position() + 1 + p), std::string("'") + want + "'",
                         "target tuple needs " + std::to_string(targets.size()) + " labels");
      ++p;
    }
    while (p < body.size() && std::isspace(static_cast<unsigned char>(body[p]))) ++p;
    if (p >= body.size() || body[p] != ':')
      throw ParseError(in.line(), item_col + static_cast<int>(r.position() + 1 + p), "':'", "missing ':'");
    ++p;
    const std::size_t lit_offset = r.position() + 1 + p;
    const std::string_view literal = item.substr(lit_offset);
    if (!seen.insert(target).second)
      throw ParseError(in.line(), item_col, "", "target listed twice in one series vector");
    try {
      table.set(column, target,
                parse_series_literal(literal, vars, vars.empty() ? Window() : window));
    } catch (const ParseError& e) {
      throw ParseError(in.line(), item_col + static_cast<int>(lit_offset) + e.column() - 1, e.expected(), e.detail());
    }
    if (stop >= rest.size()) break;
    start = stop + 1;
  }
  in.advance_to_end();
}

class Parser {
 public:
  explicit Parser(const Window& window) : window_(window) {}

  WorkbenchFile run(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = std::min(text.find('\n', pos), text.size());
      std::string_view raw = text.substr(pos, nl - pos);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      ++line_no;
      LineReader in(raw, line_no);
      if (!in.at_end()) line(in);
      pos = nl + 1;
    }
    return std::move(file_);
  }

 private:
  WorkbenchFile file_;
  Window window_;
  std::optional<std::size_t> open_;  // index of the block that collects entry lines
  std::set<std::pair<std::size_t, IndexTuple>> filled_;         // (block, column)
  std::set<std::pair<std::string, IndexTuple>> vertex_filled_;  // (space, column)

  AlgebraDecl& space_ref(LineReader& in) {
    const int col = (in.skip_space(), in.column());
    const std::string name = in.word("space name");
    for (auto& d : file_.spaces)
      if (d.space.name() == name) return d;
    in.fail_at(col, "a declared space", "space '" + name + "' is not declared");
  }

  void line(LineReader& in) {
    const int col = in.column();
    const std::string kw = in.word("keyword");
    if (kw == "space") return space(in);
    if (kw == "vacuum") return vacuum(in);
    if (kw == "y") return vertex(in);
    if (auto kind = header_kind(kw)) return header(in, *kind);
    if (open_) {
      Block& b = file_.blocks[*open_];
      const TableShape shape = shape_of(b.kind, spaces_of(b));
      if (kw == shape.entry) return entry(in, b);
      if (kw == "eps" && b.kind == BlockKind::Coalgebra) return counit(in, b);
      in.fail_at(col, std::string("'") + shape.entry + "' entry or a new declaration",
                 "unexpected keyword '" + kw + "' inside " + to_string(b.kind) + " block '" + b.name + "'");
    }
    in.fail_at(col, "space, vacuum, y or a block header", "unknown keyword '" + kw + "'");
  }

  std::vector<Space> spaces_of(const Block& b) const {
    std::vector<Space> out;
    for (const auto& n : b.spaces) out.push_back(file_.find_space(n)->space);
    return out;
  }

  void space(LineReader& in) {
    open_.reset();
    const int col = (in.skip_space(), in.column());
    const std::string name = in.word("space name");
    if (file_.find_space(name)) in.fail_at(col, "a new space name", "space '" + name + "' declared twice");
    in.keyword("basis");
    std::vector<std::string> labels;
    std::set<std::string> seen;
    while (!in.at_end()) {
      const int lcol = in.column();
      std::string label = in.word("basis label");
      if (!seen.insert(label).second) in.fail_at(lcol, "a new basis label", "duplicate basis label '" + label + "'");
      labels.push_back(std::move(label));
    }
    if (labels.empty()) in.fail("basis label", "a space needs at least one basis label");
    Space s(name, std::move(labels));
    file_.spaces.push_back({s, std::nullopt, SeriesMap({s, s}, {s}, kX, window_)});
  }

  void vacuum(LineReader& in) {
    open_.reset();
    AlgebraDecl& d = space_ref(in);
    const int col = (in.skip_space(), in.column());
    const int v = label_index(in, d.space, "vacuum");
    if (d.vacuum) in.fail_at(col, "", "vacuum of '" + d.space.name() + "' declared twice");
    d.vacuum = v;
    in.end();
  }

  void vertex(LineReader& in) {
    open_.reset();
    AlgebraDecl& d = space_ref(in);
    const int col = in.column();
    const int a = label_index(in, d.space, "first");
    const int b = label_index(in, d.space, "second");
    in.arrow();
    if (!vertex_filled_.emplace(d.space.name(), IndexTuple{a, b}).second)
      in.fail_at(col, "", "vertex entry listed twice");
    parse_seriesvec(in, d.y, {a, b}, window_);
  }

  void header(LineReader& in, BlockKind kind) {
    const int col = (in.skip_space(), in.column());
    Block b;
    b.kind = kind;
    b.name = in.word(to_string(kind) + " name");
    if (file_.find_block(kind, b.name))
      in.fail_at(col, "a new name", to_string(kind) + " '" + b.name + "' declared twice");
    std::vector<Space> spaces;
    for (std::size_t i = 0; i < header_arity(kind); ++i) {
      const AlgebraDecl& d = space_ref(in);
      b.spaces.push_back(d.space.name());
      spaces.push_back(d.space);
    }
    in.end();
    b.table = empty_table(shape_of(kind, spaces), window_);
    if (kind == BlockKind::Coalgebra) b.counit.assign(spaces[0].dimension(), ExactScalar(0));
    file_.blocks.push_back(std::move(b));
    open_ = file_.blocks.size() - 1;
  }

  void entry(LineReader& in, Block& b) {
    const int col = in.column();
    IndexTuple column;
    for (const auto& s : b.table.domain()) column.push_back(label_index(in, s, "source"));
    in.arrow();
    if (!filled_.emplace(*open_, column).second) in.fail_at(col, "", "entry listed twice");
    parse_seriesvec(in, b.table, column, window_);
  }

  void counit(LineReader& in, Block& b) {
    const Space& h = b.table.domain()[0];
    const int i = label_index(in, h, "coalgebra");
    in.skip_space();
    const int col = in.column();
    const std::string value = in.word("scalar");
    try {
      b.counit[static_cast<std::size_t>(i)] = parse_scalar(value);
    } catch (const std::invalid_argument& e) {
      in.fail_at(col, "scalar", e.what());
    }
    in.end();
  }
};

std::string tuple_text(const SpaceList& spaces, const IndexTuple& t, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) out += sep;
    out += spaces[k].label(static_cast<std::size_t>(t[k]));
  }
  return out;
}

void emit_table(std::ostringstream& out, const char* entry, const std::string& prefix, const SeriesMap& m) {
  for (const auto& [in, column] : m.columns()) {
    if (column.empty()) continue;
    out << entry << prefix << ' ' << tuple_text(m.domain(), in, " ") << " ->";
    bool first = true;
    for (const auto& [o, s] : column) {
      out << (first ? " " : " ; ") << '(' << tuple_text(m.codomain(), o, ",") << "):" << series_literal(s);
      first = false;
    }
    out << '\n';
  }
}

}  // namespace

WorkbenchFile parse_file(std::string_view text, const Window& window) {
  if (window.arity() != 1) throw std::invalid_argument("file window must have one variable");
  return Parser(window).run(text);
}

std::string series_literal(const Series& s) {
  if (s.terms().empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    const std::string mono = e == Exponent{} ? "" : "@" + exponent_to_string(e, s.arity());
    if (first)
      out += to_string(c) + mono;
    else
      out += (c < 0 ? " - " + to_string(-c) : " + " + to_string(c)) + mono;
    first = false;
  }
  return out;
}

std::string emit_file(const WorkbenchFile& file) {
  std::ostringstream out;
  bool first = true;
  for (const auto& d : file.spaces) {
    if (!first) out << '\n';
    first = false;
    out << "space " << d.space.name() << " basis";
    for (const auto& l : d.space.labels()) out << ' ' << l;
    out << '\n';
    if (d.vacuum) out << "vacuum " << d.space.name() << ' ' << d.space.label(static_cast<std::size_t>(*d.vacuum)) << '\n';
    emit_table(out, "y", " " + d.space.name(), d.y);
  }
  for (const auto& b : file.blocks) {
    out << '\n' << to_string(b.kind) << ' ' << b.name;
    for (const auto& s : b.spaces) out << ' ' << s;
    out << '\n';
    std::vector<Space> spaces;
    for (const auto& n : b.spaces) spaces.push_back(file.find_space(n)->space);
    emit_table(out, shape_of(b.kind, spaces).entry, "", b.table);
    for (std::size_t i = 0; i < b.counit.size(); ++i)
      if (b.counit[i] != 0) out << "eps " << spaces[0].label(i) << ' ' << to_string(b.counit[i]) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------------------------
// Lookups

namespace {

const Block& require_block(const WorkbenchFile& f, BlockKind kind, const std::string& name) {
  if (const Block* b = f.find_block(kind, name)) return *b;
  throw WorkbenchError("no " + to_string(kind) + " block named '" + name + "'");
}

const AlgebraDecl& require_space(const WorkbenchFile& f, const std::string& name) {
  if (const AlgebraDecl* d = f.find_space(name)) return *d;
  throw WorkbenchError("no space named '" + name + "'");
}

}  // namespace

Nva algebra_of(const WorkbenchFile& f, const std::string& space) {
  const AlgebraDecl& d = require_space(f, space);
  if (!d.vacuum) throw WorkbenchError("space '" + space + "' has no vacuum, so it is not an algebra");
  return make_nva(space, d.space, d.space.label(static_cast<std::size_t>(*d.vacuum)), d.y);
}

std::string primary_algebra(const WorkbenchFile& f) {
  for (auto it = f.spaces.rbegin(); it != f.spaces.rend(); ++it)
    if (it->vacuum) return it->space.name();
  throw WorkbenchError("the file declares no algebra (a space with a vacuum)");
}

TwistOp twist_of(const WorkbenchFile& f, const std::string& name) {
  const Block& b = require_block(f, BlockKind::Twist, name);
  return make_twist(name, algebra_of(f, b.spaces[1]), algebra_of(f, b.spaces[0]), b.table);
}

SMap smap_of(const WorkbenchFile& f, const std::string& name) {
  const Block& b = require_block(f, BlockKind::SMap, name);
  return make_smap(name, algebra_of(f, b.spaces[0]), b.table);
}

CoalgebraData coalgebra_of(const WorkbenchFile& f, const std::string& name) {
  const Block& b = require_block(f, BlockKind::Coalgebra, name);
  return make_coalgebra(name, require_space(f, b.spaces[0]).space, b.table, b.counit);
}

VertexBialgebra bialgebra_of(const WorkbenchFile& f, const std::string& space) {
  for (const auto& b : f.blocks)
    if (b.kind == BlockKind::Coalgebra && b.spaces[0] == space) return {algebra_of(f, space), coalgebra_of(f, b.name)};
  throw WorkbenchError("no coalg block over space '" + space + "'");
}

ModuleAlgebraData action_of(const WorkbenchFile& f, const std::string& name) {
  const Block& b = require_block(f, BlockKind::Action, name);
  return {name, bialgebra_of(f, b.spaces[0]), algebra_of(f, b.spaces[1]), b.table};
}

ComoduleAlgebraData coaction_of(const WorkbenchFile& f, const std::string& name) {
  const Block& b = require_block(f, BlockKind::Coaction, name);
  return {name, bialgebra_of(f, b.spaces[0]), algebra_of(f, b.spaces[1]), b.table};
}

NvaModule module_of(const WorkbenchFile& f, const std::string& name) {
  const Block& b = require_block(f, BlockKind::Module, name);
  return make_module(name, algebra_of(f, b.spaces[0]), require_space(f, b.spaces[1]).space, b.table);
}

SeriesMap map_of(const WorkbenchFile& f, const std::string& name) { return require_block(f, BlockKind::Map, name).table; }

// ---------------------------------------------------------------------------------------------
// Builders

namespace {

AlgebraDecl& ensure_space(WorkbenchFile& f, const Space& s, const Window& window) {
  for (auto& d : f.spaces)
    if (d.space.name() == s.name()) {
      if (!(d.space == s)) throw WorkbenchError("space '" + s.name() + "' is already declared with another basis");
      return d;
    }
  f.spaces.push_back({s, std::nullopt, SeriesMap({s, s}, {s}, kX, window)});
  return f.spaces.back();
}

void add_block(WorkbenchFile& f, Block b) {
  if (f.find_block(b.kind, b.name))
    throw WorkbenchError(to_string(b.kind) + " '" + b.name + "' is already declared");
  f.blocks.push_back(std::move(b));
}

}  // namespace

void add_algebra(WorkbenchFile& f, const Nva& a) {
  AlgebraDecl& d = ensure_space(f, a.space, a.y.window());
  if (d.vacuum) {
    if (*d.vacuum != a.vacuum || d.y.columns() != a.y.columns())
      throw WorkbenchError("algebra '" + a.space.name() + "' is already declared with another vertex table");
    return;
  }
  if (!d.y.columns().empty()) throw WorkbenchError("space '" + a.space.name() + "' already carries vertex entries");
  d.vacuum = a.vacuum;
  d.y = a.y;
}

void add_twist(WorkbenchFile& f, const TwistOp& r) {
  add_algebra(f, r.u);
  add_algebra(f, r.v);
  add_block(f, {BlockKind::Twist, r.name, {r.v.space.name(), r.u.space.name()}, r.r, {}});
}

void add_smap(WorkbenchFile& f, const SMap& s) {
  add_algebra(f, s.algebra);
  add_block(f, {BlockKind::SMap, s.name, {s.algebra.space.name()}, s.table, {}});
}

void add_coalgebra(WorkbenchFile& f, const CoalgebraData& c) {
  ensure_space(f, c.space, Window::uniform(1, -8, 8));
  add_block(f, {BlockKind::Coalgebra, c.name, {c.space.name()}, c.coproduct, c.counit});
}

void add_action(WorkbenchFile& f, const ModuleAlgebraData& m) {
  add_algebra(f, m.bialgebra.algebra);
  add_algebra(f, m.algebra);
  if (!f.find_block(BlockKind::Coalgebra, m.bialgebra.coalgebra.name)) add_coalgebra(f, m.bialgebra.coalgebra);
  add_block(f, {BlockKind::Action, m.name, {m.bialgebra.algebra.space.name(), m.algebra.space.name()}, m.action, {}});
}

void add_coaction(WorkbenchFile& f, const ComoduleAlgebraData& c) {
  add_algebra(f, c.bialgebra.algebra);
  add_algebra(f, c.algebra);
  if (!f.find_block(BlockKind::Coalgebra, c.bialgebra.coalgebra.name)) add_coalgebra(f, c.bialgebra.coalgebra);
  add_block(f, {BlockKind::Coaction, c.name, {c.bialgebra.algebra.space.name(), c.algebra.space.name()}, c.coaction, {}});
}

void add_module(WorkbenchFile& f, const NvaModule& m) {
  add_algebra(f, m.algebra);
  ensure_space(f, m.space, m.y.window());
  add_block(f, {BlockKind::Module, m.name, {m.algebra.space.name(), m.space.name()}, m.y, {}});
}

void add_map(WorkbenchFile& f, const std::string& name, const SeriesMap& m) {
  if (m.domain().size() != 1 || m.codomain().size() != 1 || !m.constant())
    throw WorkbenchError("map '" + name + "' must be a constant map between two spaces");
  ensure_space(f, m.domain()[0], Window::uniform(1, -8, 8));
  ensure_space(f, m.codomain()[0], Window::uniform(1, -8, 8));
  add_block(f, {BlockKind::Map, name, {m.domain()[0].name(), m.codomain()[0].name()}, m, {}});
}

}  // namespace nvaw
