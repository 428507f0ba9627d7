#pragma once
// Finitary set-functors: carriers F(n) with a transition table for every map
// within the arity bound, functor composition, algebraic monads given by
// substitution tables, and modules over them.

#include <functional>
#include <string>
#include <vector>

#include "fincat/finset.hpp"
#include "fincat/report.hpp"

namespace fincat {

// Covariant functor on standard finite sets, truncated at max_arity.
// Elements of F(n) are 0-based indices. transitions[m][n][r] is the table of
// F(f) for the rank-r map f: m -> n, a vector of length size(m) with values
// in [0, size(n)).
struct FinFunctor {
  int max_arity = 0;
  std::vector<int> sizes;
  std::vector<std::vector<std::vector<std::vector<int>>>> transitions;

  int size(int n) const { return sizes[n]; }
  const std::vector<int>& transition(int m, int n, long long rank) const {
    return transitions[m][n][static_cast<size_t>(rank)];
  }
  const std::vector<int>& transition(const FinMap& f) const {
    return transitions[f.dom][f.cod][static_cast<size_t>(map_rank(f))];
  }
  int apply(const FinMap& f, int e) const { return transition(f)[e]; }
};

// Tabulates carrier sizes and every transition within the bound.
FinFunctor make_functor(int max_arity, const std::function<int(int)>& carrier_size,
                        const std::function<int(const FinMap&, int)>& transport);

FinFunctor identity_functor(int max_arity);
FinFunctor representable_functor(int k, int max_arity); // F(n) = maps k -> n
FinFunctor pointed_functor(int max_arity);              // F(n) = n plus an added point
FinFunctor powerset_functor(int max_arity);             // F(n) = subsets of n (binary codes)

namespace qc_functor_laws {
inline const std::string kTableShape = "table-shape";
inline const std::string kIdentity = "identity";
inline const std::string kComposition = "composition";
} // namespace qc_functor_laws

// Identity and composition checked over every map pair within the bound.
CheckReport validate_functor(const FinFunctor& f);

// F(X) along the canonical bijection X = k; returns |F(k)|.
int eval_functor(const FinFunctor& f, int set_size);

// (F.G)(n) = F(G(n)); refuses when some |G(n)| exceeds the bound.
FinFunctor compose_qc(const FinFunctor& f, const FinFunctor& g);

// Componentwise product: the tensor (and categorical product) of functors.
FinFunctor pointwise_product(const FinFunctor& f, const FinFunctor& g);

// Algebraic monad: functor plus unit in Sigma(1) and total substitution
// tables mu_{p,n}: Sigma(p) x Sigma(n)^p -> Sigma(n) for p,n <= max_arity.
// subs[p][n] is indexed by t * size(n)^p + tuple_rank(vs, size(n)).
struct AlgebraicMonad {
  FinFunctor functor;
  int unit = 0;
  std::vector<std::vector<std::vector<int>>> subs;

  int substitute(int p, int n, int t, const std::vector<int>& vs) const {
    long long kn = 1;
    for (int i = 0; i < p; ++i) kn *= functor.size(n);
    return subs[p][n][static_cast<size_t>(t * kn + tuple_rank(vs, functor.size(n)))];
  }
};

using QcSubstitutionRule =
    std::function<int(int p, int n, int t, const std::vector<int>& vs)>;

AlgebraicMonad make_monad(FinFunctor functor, int unit, const QcSubstitutionRule& rule);

AlgebraicMonad identity_monad(int max_arity);
AlgebraicMonad pointed_monad(int max_arity);
AlgebraicMonad powerset_monad(int max_arity); // refuses max_arity > 4 (table blowup)

namespace qc_laws {
inline const std::string kLeftUnit = "left-unit";
inline const std::string kRightUnit = "right-unit";
inline const std::string kMuNaturality = "mu-naturality";
inline const std::string kMuCompatibility = "mu-compatibility";
inline const std::string kAssociativity = "associativity";
} // namespace qc_laws

// Unit, naturality, compatibility with carrier maps, and associativity of the
// substitution tables, element by element within the bound.
CheckReport monad_check(const AlgebraicMonad& m);

// Module over an algebraic monad: carrier set of size <= max_arity and a
// total action Sigma(carrier) -> carrier on canonical elements.
struct SigmaModule {
  int carrier = 0;
  std::vector<int> action;
};

namespace qc_module_laws {
inline const std::string kUnit = "unit";
inline const std::string kAssociativity = "associativity";
} // namespace qc_module_laws

// Unit law on generators and associativity against the evaluated carrier;
// partial (with a note) when |Sigma(carrier)| exceeds the bound.
CheckReport module_check(const AlgebraicMonad& monad, const SigmaModule& mod);

// Carrier Sigma(s) with the substitution action.
SigmaModule free_module(const AlgebraicMonad& monad, int set_size);

// Number of action-commuting maps a -> b.
int count_module_homs(const AlgebraicMonad& monad, const SigmaModule& a, const SigmaModule& b);

} // namespace fincat
