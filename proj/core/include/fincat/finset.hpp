#pragma once

// Finite-set substrate: standard sets n = {1,..,n}, maps given by image
// tables, symmetric groups, Young cosets, induced actions, orbit quotients
// and coequalizers. Everything downstream (the three calculi and their
// oracles) is built from these primitives.
//
// Conventions, fixed once and used everywhere:
//  * elements of a standard set are 1-based;
//  * composition is diagrammatic: compose(f, g) applies f first,
//    (f;g)(i) = g(f(i)); the permutation product follows suit;
//  * group actions are right actions: act(act(x,a),b) = act(x, a*b);
//  * S_n is enumerated in lexicographic order of image tuples, so the
//    identity has index 0.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fincat/report.hpp"

namespace fincat {

inline constexpr int kArityCap = 6;          // hard cap: S_6 has 720 elements
inline constexpr int kDefaultArityBound = 5; // default working bound

long long factorial(int n);

// --- maps -------------------------------------------------------------

struct FinMap {
  int dom = 0;
  int cod = 0;
  std::vector<int> images; // size dom, values in 1..cod

  int operator()(int i) const { return images[i - 1]; }
  bool operator==(const FinMap&) const = default;
};

FinMap identity_map(int n);
// f then g; requires f.cod == g.dom
FinMap compose_maps(const FinMap& f, const FinMap& g);
bool is_monotone(const FinMap& f);
bool is_bijective(const FinMap& f);

// lexicographic rank of f among all cod^dom maps with the same (dom, cod);
// first image is the most significant digit
long long map_rank(const FinMap& f);
FinMap map_from_rank(int dom, int cod, long long rank);
long long map_count(int dom, int cod); // cod^dom

// --- permutations ------------------------------------------------------

struct Perm {
  std::vector<int> images; // images[i-1] = image of i, 1-based

  int degree() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images[i - 1]; }
  bool operator==(const Perm&) const = default;
  bool operator<(const Perm& o) const { return images < o.images; }
};

Perm perm_identity(int n);
// a then b: (a*b)(i) = b(a(i))
Perm perm_compose(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& a);
FinMap perm_to_map(const Perm& p);
Perm map_to_perm(const FinMap& f); // requires bijective endo-map

// Cached enumeration of S_n in lex order, with index arithmetic.
class SymmetricGroup {
 public:
  explicit SymmetricGroup(int n);

  int degree() const { return n_; }
  long long order() const { return static_cast<long long>(perms_.size()); }
  const Perm& perm(int idx) const { return perms_[idx]; }
  int index_of(const Perm& p) const;
  int compose(int a, int b) const; // diagrammatic, index level
  int inverse(int a) const;
  // indices of the adjacent transpositions (i i+1), i = 1..n-1
  const std::vector<int>& generators() const { return generators_; }

 private:
  int n_;
  std::vector<Perm> perms_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> generators_;
};

// shared cache, n <= kArityCap
const SymmetricGroup& symmetric_group(int n);

// --- factorization and compositions ------------------------------------

// Unique factorization f = phi . sigma (i.e. f(i) = phi(sigma(i))) with phi
// monotone and sigma the permutation that stably sorts the fibres of f.
std::pair<FinMap, Perm> monotone_perm_factor(const FinMap& f);

struct Composition {
  std::vector<int> parts;

  int size() const { return static_cast<int>(parts.size()); }
  int total() const;
  bool operator==(const Composition&) const = default;
  bool operator<(const Composition& o) const { return parts < o.parts; }
};

// fibre sizes of a monotone map, parts[i-1] = |phi^-1(i)|
Composition fibre_composition(const FinMap& phi);

// all ordered compositions of n into exactly s parts, each >= min_part,
// in lexicographic order
std::vector<Composition> compositions(int n, int s, int min_part);

// block layout helpers for a composition (p_1,..,p_s) of n
std::vector<int> block_starts(const std::vector<int>& parts); // 0-based offsets
// block-diagonal permutation assembled from per-block components
Perm block_perm(const std::vector<int>& parts, const std::vector<Perm>& comps);
// monotone collapse map (sum p_i) -> s sending block i to i
FinMap collapse_map(const std::vector<int>& parts);
// block embedding f_1 (+) f_2 (+) ... for maps f_i: p_i -> q_i
FinMap block_sum(const std::vector<FinMap>& maps);
// the permutation realizing the rearrangement of blocks by rho: it maps the
// position "offset t of block rho(i) in the rearranged layout" to
// "offset t of block i in the original layout"; the rearranged layout has
// part sizes q_j = p_{rho^-1(j)}
Perm block_transport_perm(const std::vector<int>& parts, const Perm& rho);

// --- Young cosets and induced actions ----------------------------------

// Canonical representatives of the cosets {c . h | h block-preserving} of
// the Young subgroup of `parts` in S_n, in lex order. A representative is
// the lex-least coset member, i.e. increasing on each block.
std::vector<Perm> young_cosets(const Composition& parts);

// --- G-sets -------------------------------------------------------------

// Finite right S_arity-set with a full action table.
struct GSet {
  int arity = 0;
  int size = 0;
  // action[x][g] = x acted on by the g-th permutation of S_arity, 0-based
  std::vector<std::vector<int>> action;

  int act(int x, int g) const { return action[x][g]; }
};

GSet empty_gset(int arity);
GSet trivial_gset(int arity, int size);
GSet regular_gset(int arity);
// right multiplication on the cosets {c . h | h in subgroup} (subgroup given
// by perm indices); representatives are lex-least members
GSet coset_gset(int arity, const std::vector<int>& subgroup);
GSet disjoint_union(const GSet& a, const GSet& b);

// identity and composition axioms of the table; witnesses name (x, g, gen)
CheckReport validate_gset(const GSet& x);

// orbits sorted by least element, each orbit sorted; representative = front
std::vector<std::vector<int>> orbits(const GSet& x);

// subgroup {g | act(x, g) = x} as sorted perm indices
std::vector<int> stabilizer(const GSet& x, int element);
// closure of a generating set, sorted perm indices
std::vector<int> subgroup_closure(int arity, const std::vector<int>& gens);
// lex-least conjugate of a subgroup, the canonical form of its conjugacy class
std::vector<int> canonical_conjugate(int arity, const std::vector<int>& subgroup);

// abstract isomorphism of right S_n-sets, decided by comparing the multisets
// of orbit stabilizer conjugacy classes
bool gset_iso(const GSet& x, const GSet& y);

// Young induction machinery: the induced S_n-set of a family of right
// S_{p_i}-sets along the Young subgroup of (p_1,..,p_s). Elements are pairs
// (m, c) of a factor tuple and a canonical coset representative, encoded as
// flat(m) * reps + c.
class YoungInduction {
 public:
  explicit YoungInduction(Composition parts);

  const Composition& parts() const { return parts_; }
  int degree() const { return degree_; }
  const std::vector<Perm>& reps() const { return reps_; }
  int rep_index(const Perm& rep) const;
  // canonical representative of the coset of q; *h_out = q * rep^-1 is the
  // block-preserving renormalizer
  int canonicalize(const Perm& q, Perm* h_out) const;
  // component of a block-preserving permutation on block i (1-based local)
  Perm block_component(const Perm& h, int i) const;

 private:
  Composition parts_;
  int degree_;
  std::vector<int> starts_;
  std::vector<Perm> reps_;
  std::unordered_map<std::string, int> rep_index_;
};

// induced G-set of the factor family (sizes and actions taken from factors;
// factors[i].arity must equal parts[i])
GSet induce(const std::vector<GSet>& factors);

// --- coequalizers -------------------------------------------------------

struct Coequalizer {
  int class_count = 0;
  std::vector<int> class_of;       // size of the target set
  std::vector<int> representative; // least element of each class
};

// coequalizer of u, v : A -> B given by image tables over 0..b_size-1;
// classes are numbered by ascending least element
Coequalizer coequalizer(int b_size, const std::vector<int>& u, const std::vector<int>& v);

// same, but for an explicit relation list on 0..b_size-1
Coequalizer quotient_by_relations(int b_size, const std::vector<std::pair<int, int>>& rel);

// --- misc helpers -------------------------------------------------------

// tuple <-> rank, first coordinate most significant; values 0-based
long long tuple_rank(const std::vector<int>& t, int base);
std::vector<int> tuple_from_rank(long long rank, int len, int base);

std::string show_map(const FinMap& f);
std::string show_perm(const Perm& p);
// "(a b c)"; witness strings across checkers and oracles rely on this shape
std::string show_ints(const std::vector<int>& v);
// the same with every entry shifted to 1-based
std::string show_ints1(const std::vector<int>& v);

} // namespace fincat
