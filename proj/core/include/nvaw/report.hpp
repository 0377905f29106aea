#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nvaw/series.hpp"
#include "nvaw/series_map.hpp"

namespace nvaw {

enum class Verdict { ExactPass, WindowPass, Fail, NoKFound };

std::string to_string(Verdict v);
bool is_pass(Verdict v);
/// The verdict of one certified comparison.
Verdict verdict_of(CertifiedEquality::Kind kind);

struct KWitness {
  std::string identity;
  std::string tuple;
  int k = 0;
};

struct IdentityResult {
  std::string identity;
  Verdict verdict = Verdict::ExactPass;
  std::string witness;  ///< first failing basis tuple and exponent; empty on a pass
  std::optional<int> max_k;
  std::size_t cases = 0;
};

struct CheckReport {
  std::string suite;
  Window window;
  int kmax = 0;
  std::vector<IdentityResult> results;
  std::vector<KWitness> k_witnesses;

  bool passed() const;
  /// Every identity passed exactly, with no truncation involved.
  bool exact() const;
  const IdentityResult* find(const std::string& identity) const;
  /// Verdict of one identity; throws std::out_of_range if it was never checked.
  Verdict verdict(const std::string& identity) const;
  void merge(const CheckReport& other);
  std::string to_text() const;
};

/// Collects per-case outcomes of one identity into an IdentityResult (the worst verdict wins,
/// the first failure provides the witness).
class IdentityCheck {
 public:
  explicit IdentityCheck(std::string identity) { result_.identity = std::move(identity); }

  /// Records a vector comparison for the given case.
  void record(const std::string& tuple, const SpaceList& spaces, const VectorEquality& eq);
  /// Records a scalar outcome.
  void record(const std::string& tuple, Verdict v, const std::string& detail = {});
  /// Records the witness k of one case.
  void record_k(const std::string& tuple, int k);

  const IdentityResult& result() const { return result_; }
  void finish(CheckReport& report) const;

 private:
  IdentityResult result_;
  std::vector<KWitness> ks_;
};

std::string describe_failure(const SpaceList& spaces, const VectorEquality& eq, std::size_t variables);

}  // namespace nvaw
