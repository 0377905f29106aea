#include "nvaw/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace nvaw {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ExactPass: return "ExactPass";
    case Verdict::WindowPass: return "WindowPass";
    case Verdict::Fail: return "Fail";
    case Verdict::NoKFound: return "NoKFound";
  }
  return "?";
}

bool is_pass(Verdict v) { return v == Verdict::ExactPass || v == Verdict::WindowPass; }

Verdict verdict_of(CertifiedEquality::Kind kind) {
  switch (kind) {
    case CertifiedEquality::Kind::ExactlyEqual: return Verdict::ExactPass;
    case CertifiedEquality::Kind::EqualUpToWindow: return Verdict::WindowPass;
    default: return Verdict::Fail;
  }
}

namespace {

int severity(Verdict v) {
  switch (v) {
    case Verdict::ExactPass: return 0;
    case Verdict::WindowPass: return 1;
    case Verdict::NoKFound: return 2;
    case Verdict::Fail: return 3;
  }
  return 3;
}

}  // namespace

bool CheckReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const IdentityResult& r) { return is_pass(r.verdict); });
}

bool CheckReport::exact() const {
  return std::all_of(results.begin(), results.end(),
                     [](const IdentityResult& r) { return r.verdict == Verdict::ExactPass; });
}

const IdentityResult* CheckReport::find(const std::string& identity) const {
  for (const auto& r : results)
    if (r.identity == identity) return &r;
  return nullptr;
}

Verdict CheckReport::verdict(const std::string& identity) const {
  const IdentityResult* r = find(identity);
  if (!r) throw std::out_of_range("identity '" + identity + "' not in report '" + suite + "'");
  return r->verdict;
}

void CheckReport::merge(const CheckReport& other) {
  results.insert(results.end(), other.results.begin(), other.results.end());
  k_witnesses.insert(k_witnesses.end(), other.k_witnesses.begin(), other.k_witnesses.end());
}

std::string CheckReport::to_text() const {
  std::string out = "suite " + suite + "  window " + window.to_string() + "  kmax " + std::to_string(kmax) + "\n";
  for (const auto& r : results) {
    out += "  " + to_string(r.verdict) + "  " + r.identity + "  (" + std::to_string(r.cases) + " cases";
    if (r.max_k) out += ", max k " + std::to_string(*r.max_k);
    out += ")";
    if (!r.witness.empty()) out += "\n      witness: " + r.witness;
    out += "\n";
  }
  out += passed() ? (exact() ? "  => all identities hold exactly\n" : "  => all identities hold\n")
                  : "  => FAILURES\n";
  return out;
}

std::string describe_failure(const SpaceList& spaces, const VectorEquality& eq, std::size_t variables) {
  std::string out = to_string(eq.kind);
  if (eq.index) out += " at (" + index_label(spaces, *eq.index) + ")";
  if (eq.exponent) out += " exponent " + exponent_to_string(*eq.exponent, variables);
  return out;
}

void IdentityCheck::record(const std::string& tuple, const SpaceList& spaces, const VectorEquality& eq) {
  const Verdict v = verdict_of(eq.kind);
  record(tuple, v, is_pass(v) ? std::string() : describe_failure(spaces, eq, eq.variables ? eq.variables : kMaxVariables));
}

void IdentityCheck::record(const std::string& tuple, Verdict v, const std::string& detail) {
  ++result_.cases;
  if (severity(v) > severity(result_.verdict)) {
    if (!is_pass(v) && result_.witness.empty())
      result_.witness = tuple + (detail.empty() ? std::string() : ": " + detail);
    result_.verdict = v;
  }
}

void IdentityCheck::record_k(const std::string& tuple, int k) {
  result_.max_k = std::max(result_.max_k.value_or(0), k);
  ks_.push_back({result_.identity, tuple, k});
}

void IdentityCheck::finish(CheckReport& report) const {
  report.results.push_back(result_);
  report.k_witnesses.insert(report.k_witnesses.end(), ks_.begin(), ks_.end());
}

}  // namespace nvaw
