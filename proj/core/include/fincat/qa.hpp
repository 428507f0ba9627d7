#pragma once
// Contravariant finite-set presheaves, the subset-decomposition tensor,
// commutative algebra objects, algebrads, and truncated composition and
// evaluation for them.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fincat/finset.hpp"
#include "fincat/report.hpp"

namespace fincat {

// Contravariant functor on standard finite sets, truncated at max_arity.
// restrictions[m][n][r] is the table of P(f): P(n) -> P(m) for the rank-r
// map f: m -> n, a vector of length size(n) with values in [0, size(m)).
struct FinPresheaf {
  int max_arity = 0;
  std::vector<int> sizes;
  std::vector<std::vector<std::vector<std::vector<int>>>> restrictions;

  int size(int n) const { return sizes[n]; }
  const std::vector<int>& restriction(int m, int n, long long rank) const {
    return restrictions[m][n][static_cast<size_t>(rank)];
  }
  const std::vector<int>& restriction(const FinMap& f) const {
    return restrictions[f.dom][f.cod][static_cast<size_t>(map_rank(f))];
  }
  int pull(const FinMap& f, int e) const { return restriction(f)[e]; }
};

FinPresheaf make_presheaf(int max_arity, const std::function<int(int)>& carrier_size,
                          const std::function<int(const FinMap&, int)>& pullback);

FinPresheaf unit_presheaf(int max_arity);                 // 1 at arity 0, empty above
FinPresheaf constant_presheaf(int value_size, int max_arity);
FinPresheaf representable_presheaf(int k, int max_arity); // P(n) = maps n -> k

namespace qa_presheaf_laws {
inline const std::string kTableShape = "table-shape";
inline const std::string kIdentity = "identity";
inline const std::string kComposition = "composition";
} // namespace qa_presheaf_laws

CheckReport validate_presheaf(const FinPresheaf& p);

// (P (x) Q)(n) = disjoint union over subsets U of n of P(|U|) x Q(n - |U|),
// subsets ordered by binary code (bit i-1 for element i), x major inside a
// block; restrictions pull the decomposition back along preimages.
FinPresheaf day_tensor(const FinPresheaf& p, const FinPresheaf& q);

// Finite commutative monoid on {0..size-1}; evaluation coefficients.
struct FiniteCommMonoid {
  int size = 1;
  int e = 0;
  std::vector<int> mult; // row-major size x size
  int times(int a, int b) const { return mult[a * size + b]; }
};

FiniteCommMonoid trivial_monoid();
FiniteCommMonoid and_monoid();          // {0,1} under logical and, unit 1
FiniteCommMonoid cyclic_monoid(int k);  // integers mod k under addition
FiniteCommMonoid product_monoid(const FiniteCommMonoid& a, const FiniteCommMonoid& b);
CheckReport validate_comm_monoid(const FiniteCommMonoid& m);

// Commutative algebra object: presheaf with multiplication tables
// M_{p,q}: P(p) x P(q) -> P(p+q) (first block = first p elements) and a unit
// element in P(0). mult[p][q] is indexed by x * size(q) + y.
struct CommAlgObject {
  FinPresheaf presheaf;
  std::vector<std::vector<std::vector<int>>> mult;
  int unit_e0 = 0;

  int times(int p, int q, int x, int y) const {
    return mult[p][q][static_cast<size_t>(x) * presheaf.size(q) + y];
  }
};

using QaMultRule = std::function<int(int p, int q, int x, int y)>;
CommAlgObject make_comm_alg(FinPresheaf presheaf, int unit_e0, const QaMultRule& rule);

CommAlgObject terminal_comm_alg(int max_arity);
// functions with values in a commutative monoid: P(p) = tuples, M = concatenation
CommAlgObject functions_comm_alg(const FiniteCommMonoid& c, int max_arity);

namespace qa_alg_laws {
inline const std::string kNaturality = "m-naturality";
inline const std::string kCommutativity = "m-commutativity";
inline const std::string kAssociativity = "m-associativity";
inline const std::string kUnit = "m-unit";
} // namespace qa_alg_laws

CheckReport comm_alg_check(const CommAlgObject& a);

// Algebrad: commutative algebra object with a distinguished unit in P(1) and
// substitution tables mu_{p1..pn}: P(n) x P(p_1) x ... x P(p_n) -> P(sum p_i)
// for every composition key (length <= bound, total <= bound).
struct QaAlgebrad {
  CommAlgObject algebra;
  int unit = 0;
  std::map<std::vector<int>, std::vector<int>> subs;

  long long table_size(const std::vector<int>& parts) const;
  int substitute(const std::vector<int>& parts, int x, const std::vector<int>& ys) const;
};

using QaSubstitutionRule =
    std::function<int(const std::vector<int>& parts, int x, const std::vector<int>& ys)>;
QaAlgebrad make_algebrad(CommAlgObject algebra, int unit, const QaSubstitutionRule& rule);

QaAlgebrad terminal_algebrad(int max_arity);
QaAlgebrad functions_algebrad(const FiniteCommMonoid& c, int max_arity);

namespace qa_algebrad_laws {
inline const std::string kMuNaturality = "mu-naturality";
inline const std::string kMuSubstitutionCompat = "mu-substitution-compat";
inline const std::string kMultMorphism = "mult-morphism";
inline const std::string kOuterUnit = "outer-unit";
inline const std::string kInnerUnit = "inner-unit";
inline const std::string kAssociativity = "associativity";
} // namespace qa_algebrad_laws

CheckReport algebrad_check(const QaAlgebrad& s);

// Truncated evaluation of a presheaf against commutative monoid coefficients:
// classes of pairs (element of P(n), coefficient tuple), n <= cutoff, under
// restriction on one side and fibrewise multiplication on the other.
struct QaEval {
  int monoid_size = 0;
  int cutoff = 0;
  std::vector<long long> offset; // per level, length cutoff + 2
  long long total = 0;
  Coequalizer classes;

  long long index_of(int n, int xi, long long coeff_rank) const;
  void decode(long long index, int& n, int& xi, std::vector<int>& coeffs) const;
  int class_count() const { return classes.class_count; }
};

QaEval eval_qa(const FinPresheaf& p, const FiniteCommMonoid& a, int cutoff = -1);

// Truncated composition (X . Y)(v): classes of (n <= s_max, assignment
// v -> n, x in X(n), blockwise elements of Y), with block merges resolved by
// Y's multiplication. Returns the class presheaf.
FinPresheaf compose_qa(const FinPresheaf& x, const CommAlgObject& y, int s_max = -1);

} // namespace fincat
