#include "nvaw/errors.hpp"

namespace nvaw {

namespace {

std::string position_prefix(int line, int column) {
  if (line <= 0) return "column " + std::to_string(column) + ": ";
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
}

}  // namespace

ParseError::ParseError(int line, int column, std::string expected, const std::string& detail)
    : std::runtime_error(position_prefix(line, column) + detail +
                         (expected.empty() ? std::string() : " (expected " + expected + ")")),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      detail_(detail) {}

PreconditionFail::PreconditionFail(std::string hypothesis, std::string witness)
    : std::runtime_error("precondition '" + hypothesis + "' fails at " + witness),
      hypothesis_(std::move(hypothesis)),
      witness_(std::move(witness)) {}

NotInvertible::NotInvertible(std::size_t rank, std::size_t dimension)
    : std::runtime_error("not invertible: leading coefficient matrix has rank " + std::to_string(rank) + " of " +
                         std::to_string(dimension)),
      rank_(rank),
      dimension_(dimension) {}

std::string to_string(ExtractionFailure kind) {
  switch (kind) {
    case ExtractionFailure::Underdetermined: return "Underdetermined";
    case ExtractionFailure::Inconsistent: return "Inconsistent";
    case ExtractionFailure::AxiomsFail: return "AxiomsFail";
  }
  return "?";
}

ExtractionFail::ExtractionFail(ExtractionFailure kind, const std::string& detail)
    : std::runtime_error("extraction failed (" + to_string(kind) + "): " + detail), kind_(kind) {}

}  // namespace nvaw
