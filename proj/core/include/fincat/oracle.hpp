#pragma once

// Brute-force cross-checks, kept deliberately independent of the main
// paths: quotients are rebuilt by union-find over explicitly generated
// relation pairs, and the law re-checkers below walk the same canonical
// enumeration orders as the structure checkers but read the raw tables
// directly. A disagreement in verdict or witness points at a bug on one
// side. Nothing here is tuned for speed.
//
// The law re-checkers assume well-shaped tables (that is the validators'
// and checkers' business); behaviour on malformed input is unspecified.

#include <optional>
#include <string>
#include <vector>

#include "fincat/qa.hpp"
#include "fincat/qc.hpp"
#include "fincat/qo.hpp"
#include "fincat/report.hpp"

namespace fincat {

// A quotient computed at a cutoff, together with whether raising the
// cutoff from cutoff-1 to cutoff changed anything: stabilized means the
// inclusion of the smaller generator space induces a bijection on classes,
// so the count (and the class structure on shared generators) agrees.
struct StabilizedQuotient {
  int classes = 0;
  bool stabilized = false;
};

// evaluation of a set-functor at a k-element set, by generators and
// relations with arities up to the cutoff (default: the functor's bound)
StabilizedQuotient naive_eval_qc(const FinFunctor& f, int set_size, int cutoff = -1);

// evaluation of a presheaf at a finite commutative monoid, same recipe
StabilizedQuotient naive_eval_qa(const FinPresheaf& p, const FiniteCommMonoid& a,
                                 int cutoff = -1);

// one output level of the composite of a presheaf with a commutative
// algebra, rebuilt from summands with inner arities up to s_max
StabilizedQuotient naive_compose_qa(const FinPresheaf& x, const CommAlgObject& y, int level,
                                    int s_max = -1);

// class count of a symmetric sequence evaluated at a k-element set; the
// relation never crosses arities, so no cutoff question arises
long long naive_eval_qo(const SymSeq& a, int set_size);

// Re-run the law enumerations against the raw tables. An empty law means
// all laws; an unknown name is a domain error. On well-shaped input the
// verdict and the failure list must coincide with the corresponding
// structure checker.
CheckReport exhaustive_law_check(const Operad& o, const std::string& law = "");
CheckReport exhaustive_law_check(const AlgebraicMonad& m, const std::string& law = "");
CheckReport exhaustive_law_check(const AlgebraicMonad& m, const SigmaModule& mod,
                                 const std::string& law = "");
CheckReport exhaustive_law_check(const CommAlgObject& a, const std::string& law = "");
CheckReport exhaustive_law_check(const QaAlgebrad& s, const std::string& law = "");

// Backtracking search for an equivariant bijection between two right
// actions of the same symmetric group; returns the first one found in
// lexicographic order, or nothing. Both sizes must be at most 12 and the
// action tables valid.
std::optional<std::vector<int>> bijection_search(const GSet& x, const GSet& y);

} // namespace fincat
