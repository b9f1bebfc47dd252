#include "derange/report.hpp"

#include <algorithm>
#include <ostream>

namespace derange {

const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::holds: return "holds";
    case ClaimStatus::exception_expected: return "exception-expected";
    case ClaimStatus::violation: return "VIOLATION";
  }
  return "?";
}

void VerificationReport::merge(VerificationReport&& other) {
  records_.insert(records_.end(), std::make_move_iterator(other.records_.begin()),
                  std::make_move_iterator(other.records_.end()));
  other.records_.clear();
}

std::size_t VerificationReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(),
                    [](const ClaimRecord& r) { return r.status == ClaimStatus::violation; }));
}

std::size_t VerificationReport::exceptions() const {
  return static_cast<std::size_t>(std::count_if(
      records_.begin(), records_.end(),
      [](const ClaimRecord& r) { return r.status == ClaimStatus::exception_expected; }));
}

void VerificationReport::write_lines(std::ostream& out) const {
  for (const ClaimRecord& r : records_) {
    out << "claim=" << r.claim << " " << r.params << " status=" << to_string(r.status);
    if (!r.witness.empty()) out << " witness=\"" << r.witness << "\"";
    out << "\n";
  }
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const ClaimRecord& r : records_) {
    arr.push_back({{"claim", r.claim},
                   {"params", r.params},
                   {"status", to_string(r.status)},
                   {"witness", r.witness}});
  }
  return arr;
}

}  // namespace derange
