#pragma once

#include <string>
#include <vector>

namespace fincat {

// One violated law instance. `law` is a stable identifier shared between the
// module checkers and the brute-force oracle so their verdicts can be
// compared; `witness` pins down the offending cell in a canonical textual
// form (same enumeration order on both sides).
struct LawFailure {
  std::string law;
  std::string witness;
};

struct CheckReport {
  bool ok = true;
  std::vector<LawFailure> failures;
  long long checked = 0; // law instances examined
  long long skipped = 0; // instances outside the truncation bound
  std::vector<std::string> notes;

  void fail(std::string law, std::string witness) {
    ok = false;
    failures.push_back({std::move(law), std::move(witness)});
  }
  bool failed(const std::string& law) const {
    for (const auto& f : failures)
      if (f.law == law) return true;
    return false;
  }
};

} // namespace fincat
