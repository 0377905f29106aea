#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace nvaw {

/// A finite-dimensional space with a named, ordered basis.
class Space {
 public:
  Space() = default;
  /// Throws std::invalid_argument on an empty basis or duplicate labels.
  Space(std::string name, std::vector<std::string> labels);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t dimension() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  /// Index of a label; throws std::out_of_range if absent.
  int index_of(const std::string& label) const;
  bool has_label(const std::string& label) const;

  bool operator==(const Space& other) const { return name_ == other.name_ && labels_ == other.labels_; }

 private:
  std::string name_;
  std::vector<std::string> labels_;
};

/// Tensor factors, left to right.
using SpaceList = std::vector<Space>;
/// One basis index per tensor factor.
using IndexTuple = std::vector<int>;

std::size_t total_dimension(const SpaceList& spaces);
/// All index tuples of a tensor product in lexicographic order.
std::vector<IndexTuple> all_indices(const SpaceList& spaces);
/// Human-readable basis tensor such as "s|one|t".
std::string index_label(const SpaceList& spaces, const IndexTuple& index);
std::string spaces_name(const SpaceList& spaces);

/// U ⊗ V as one space: basis (i, j) sits at position i * dim V + j, labelled "u|v".
Space product_space(const Space& u, const Space& v);
int product_index(const Space& v, int i, int j);

}  // namespace nvaw
