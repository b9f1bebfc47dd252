#pragma once

// Structured pass/fail records for claim sweeps. Each checked parameter
// tuple yields exactly one record per claim; "exception-expected" marks
// tuples inside a claim's declared exception set where the exceptional
// behavior itself was verified.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace derange {

enum class ClaimStatus { holds, exception_expected, violation };

const char* to_string(ClaimStatus s);

struct ClaimRecord {
  std::string claim;    // stable claim identifier, e.g. "cond-monotone-k"
  std::string params;   // e.g. "n=5 i=3 j=4 d=2"
  ClaimStatus status = ClaimStatus::holds;
  std::string witness;  // values backing the verdict, empty if unremarkable
};

class VerificationReport {
 public:
  void add(std::string claim, std::string params, ClaimStatus status,
           std::string witness = "") {
    records_.push_back({std::move(claim), std::move(params), status, std::move(witness)});
  }
  void add(ClaimRecord rec) { records_.push_back(std::move(rec)); }
  void merge(VerificationReport&& other);

  const std::vector<ClaimRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  std::size_t violations() const;
  std::size_t exceptions() const;

  // One record per line: claim=<id> <params> status=<s> witness="<w>"
  void write_lines(std::ostream& out) const;
  nlohmann::json to_json() const;

 private:
  std::vector<ClaimRecord> records_;
};

}  // namespace derange
