#pragma once

// Symmetric sequences: families (A_n) of right S_n-sets up to a truncation
// bound, with the induction tensor product, the composition product, the
// evaluation functor into finite sets, and operads (monoids for the
// composition product) together with their algebras.
//
// Composition conventions follow finset.hpp: right actions, diagrammatic
// products. The substitution family mu_{p1..ps}: X_s x X_{p1} x .. x X_{ps}
// -> X_{p1+..+ps} is stored per composition key (p1..ps); the key set is all
// compositions with at most max_arity parts, each part >= 0, total <=
// max_arity.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "fincat/finset.hpp"
#include "fincat/report.hpp"

namespace fincat {

struct SymSeq {
  int max_arity = 0;
  // if set, every component above the bound is empty (also beyond storage)
  std::optional<int> support_bound;
  std::vector<GSet> at; // size max_arity + 1, at[n].arity == n

  const GSet& operator[](int n) const { return at[n]; }
  int size(int n) const { return n <= max_arity ? at[n].size : 0; }
};

SymSeq empty_seq(int max_arity);
// unit for the tensor product: a point in arity 0
SymSeq tensor_unit_seq(int max_arity);
// unit for the composition product: a point in arity 1
SymSeq comp_unit_seq(int max_arity);
// representable sequence h_k: the regular S_k-set in arity k
SymSeq representable_seq(int k, int max_arity);

// shape and action-table axioms per arity, plus the support bound promise
CheckReport validate_seq(const SymSeq& a);

// componentwise isomorphism of right S_n-sets
bool seq_iso(const SymSeq& a, const SymSeq& b);

// (A (x) B)_n = disjoint union over p+q=n of Ind(A_p, B_q)
SymSeq tensor(const SymSeq& a, const SymSeq& b);

// Element of a composition product: arity-n class represented by the least
// tuple (parts p1..ps, x in X_s, coset representative index, y_i in Y_{p_i}).
struct QoElement {
  int arity = 0;
  std::vector<int> parts;
  int x = 0;
  int coset = 0;
  std::vector<int> ys;
};

// (X o Y)_n = (disjoint union over p1+..+ps=n of X_s x Ind(Y_p1..Y_ps)) / S_s.
// Requires Y_0 empty or X finitely supported; refuses otherwise. When reps
// is non-null it receives the canonical representative of every class, per
// arity.
SymSeq compose(const SymSeq& x, const SymSeq& y,
               std::vector<std::vector<QoElement>>* reps = nullptr);

// Evaluation at a k-element set: disjoint union over n <= N of
// (A_n x k^n)/S_n with the simultaneous right action. Classes are numbered
// by ascending least member of the global element order (arity-major, then
// element, then tuple rank).
struct EvalQuotient {
  int set_size = 0;
  int max_arity = 0;
  std::vector<long long> offset; // offset[n] of the arity-n block, size N+2
  long long total = 0;           // sum of |A_n| * k^n
  Coequalizer classes;

  long long index_of(int n, int a, long long tuple_rank) const;
  // decode a global index into (arity, element, tuple of 1-based values)
  void decode(long long idx, int& n, int& a, std::vector<int>& tuple) const;
  int class_count() const { return classes.class_count; }
};

EvalQuotient eval_seq(const SymSeq& a, int set_size);

// --- operads ----------------------------------------------------------

// canonical enumeration of substitution keys: part count ascending, then
// parts lexicographically; every key has parts >= 0, total <= max_arity
std::vector<std::vector<int>> substitution_keys(int max_arity);

struct Operad {
  SymSeq seq;
  int unit = 0; // element of seq.at[1]
  // table per key: index = ((x * |X_{p1}| + m1) * |X_{p2}| + m2) ...
  std::map<std::vector<int>, std::vector<int>> mu;

  long long table_size(const std::vector<int>& parts) const;
  int apply(const std::vector<int>& parts, int x, const std::vector<int>& ms) const;
};

// build the substitution tables from a rule; rule(parts, x, ms) must return
// an element of X_{sum parts}
using SubstitutionRule = std::function<int(const std::vector<int>&, int, const std::vector<int>&)>;
Operad make_operad(SymSeq seq, int unit, const SubstitutionRule& rule);

// law names, in canonical check order
namespace qo_laws {
inline constexpr const char* kInnerEquivariance = "inner-equivariance";
inline constexpr const char* kOuterEquivariance = "outer-equivariance";
inline constexpr const char* kLeftUnit = "left-unit";
inline constexpr const char* kRightUnit = "right-unit";
inline constexpr const char* kAssociativity = "associativity";
} // namespace qo_laws

// monoid laws for the composition product, element-wise within truncation.
// One failure (the first witness in canonical enumeration order) is
// recorded per law.
CheckReport operad_check(const Operad& o);

// Algebra over an operad: carrier {1..carrier_size} with action tables
// act[n] of size |X_n| * carrier^n (entry -1 = undefined within truncation;
// undefined cells are skipped by the checker and counted).
struct OperadAlgebra {
  int carrier = 0;
  std::vector<std::vector<int>> act; // act[n][x * carrier^n + tuple_rank]

  int apply(int n, int x, long long tuple_rank) const;
};

namespace qo_algebra_laws {
inline constexpr const char* kEquivariance = "equivariance";
inline constexpr const char* kUnit = "unit";
inline constexpr const char* kAssociativity = "associativity";
} // namespace qo_algebra_laws

CheckReport algebra_check(const Operad& o, const OperadAlgebra& alg);

// Free algebra on a k-element set: carrier = eval(X, k) classes, action by
// substitution on canonical representatives. Cells whose total arity would
// exceed the truncation are left undefined (-1).
struct FreeAlgebra {
  EvalQuotient carrier;
  OperadAlgebra algebra;
};

FreeAlgebra free_algebra(const Operad& o, int set_size);

} // namespace fincat
