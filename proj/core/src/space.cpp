#include "nvaw/space.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace nvaw {

Space::Space(std::string name, std::vector<std::string> labels) : name_(std::move(name)), labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("space '" + name_ + "' has an empty basis");
  std::set<std::string> seen;
  for (const auto& l : labels_)
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate basis label '" + l + "' in '" + name_ + "'");
}

int Space::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::out_of_range("label '" + label + "' not in space '" + name_ + "'");
  return static_cast<int>(it - labels_.begin());
}

bool Space::has_label(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t total_dimension(const SpaceList& spaces) {
  std::size_t d = 1;
  for (const auto& s : spaces) d *= s.dimension();
  return d;
}

std::vector<IndexTuple> all_indices(const SpaceList& spaces) {
  std::vector<IndexTuple> out{IndexTuple{}};
  for (const auto& s : spaces) {
    std::vector<IndexTuple> next;
    next.reserve(out.size() * s.dimension());
    for (const auto& prefix : out)
      for (std::size_t i = 0; i < s.dimension(); ++i) {
        IndexTuple t = prefix;
        t.push_back(static_cast<int>(i));
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

std::string index_label(const SpaceList& spaces, const IndexTuple& index) {
  std::string out;
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (k) out += "|";
    out += k < spaces.size() ? spaces[k].label(static_cast<std::size_t>(index[k])) : std::to_string(index[k]);
  }
  return out;
}

std::string spaces_name(const SpaceList& spaces) {
  std::string out;
  for (std::size_t k = 0; k < spaces.size(); ++k) out += (k ? "⊗" : "") + spaces[k].name();
  return out;
}

Space product_space(const Space& u, const Space& v) {
  std::vector<std::string> labels;
  labels.reserve(u.dimension() * v.dimension());
  for (const auto& a : u.labels())
    for (const auto& b : v.labels()) labels.push_back(a + "|" + b);
  return Space(u.name() + "x" + v.name(), std::move(labels));
}

int product_index(const Space& v, int i, int j) { return i * static_cast<int>(v.dimension()) + j; }

}  // namespace nvaw
