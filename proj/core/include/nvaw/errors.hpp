#pragma once

#include <stdexcept>
#include <string>

namespace nvaw {

/// Positioned syntax error. Line and column are 1-based; line 0 means "not tied to a file line".
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string expected, const std::string& detail);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }
  /// The message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string expected_;
  std::string detail_;
};

/// A hypothesis of a construction does not hold. `hypothesis` is a short stable name
/// (for example "regularity"), `witness` names the basis tuple where it broke.
class PreconditionFail : public std::runtime_error {
 public:
  PreconditionFail(std::string hypothesis, std::string witness);

  const std::string& hypothesis() const { return hypothesis_; }
  const std::string& witness() const { return witness_; }

 private:
  std::string hypothesis_;
  std::string witness_;
};

/// A series-valued map is not invertible over the Laurent series field.
class NotInvertible : public std::runtime_error {
 public:
  NotInvertible(std::size_t rank, std::size_t dimension);

  std::size_t rank() const { return rank_; }
  std::size_t dimension() const { return dimension_; }

 private:
  std::size_t rank_;
  std::size_t dimension_;
};

enum class ExtractionFailure { Underdetermined, Inconsistent, AxiomsFail };

std::string to_string(ExtractionFailure kind);

class ExtractionFail : public std::runtime_error {
 public:
  ExtractionFail(ExtractionFailure kind, const std::string& detail);

  ExtractionFailure kind() const { return kind_; }

 private:
  ExtractionFailure kind_;
};

}  // namespace nvaw
