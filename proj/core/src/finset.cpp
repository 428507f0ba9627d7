#include "fincat/finset.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

#include "fincat/error.hpp"

namespace fincat {

long long factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

namespace {

std::string perm_key(const std::vector<int>& images) {
  std::string k;
  k.reserve(images.size());
  for (int v : images) k.push_back(static_cast<char>(v));
  return k;
}

void check_arity(int n, const char* who) {
  if (n < 0 || n > kArityCap)
    throw CapacityError(std::string(who) + ": arity " + std::to_string(n) +
                        " outside supported range 0.." + std::to_string(kArityCap));
}

} // namespace

// --- maps ---------------------------------------------------------------

FinMap identity_map(int n) {
  FinMap f{n, n, std::vector<int>(n)};
  std::iota(f.images.begin(), f.images.end(), 1);
  return f;
}

FinMap compose_maps(const FinMap& f, const FinMap& g) {
  if (f.cod != g.dom)
    throw DomainError("compose_maps: codomain " + std::to_string(f.cod) +
                      " does not match domain " + std::to_string(g.dom));
  FinMap r{f.dom, g.cod, std::vector<int>(f.dom)};
  for (int i = 1; i <= f.dom; ++i) r.images[i - 1] = g(f(i));
  return r;
}

bool is_monotone(const FinMap& f) {
  for (int i = 1; i < f.dom; ++i)
    if (f(i) > f(i + 1)) return false;
  return true;
}

bool is_bijective(const FinMap& f) {
  if (f.dom != f.cod) return false;
  std::vector<bool> seen(f.cod, false);
  for (int v : f.images) {
    if (v < 1 || v > f.cod || seen[v - 1]) return false;
    seen[v - 1] = true;
  }
  return true;
}

long long map_rank(const FinMap& f) {
  long long r = 0;
  for (int i = 1; i <= f.dom; ++i) r = r * f.cod + (f(i) - 1);
  return r;
}

FinMap map_from_rank(int dom, int cod, long long rank) {
  FinMap f{dom, cod, std::vector<int>(dom)};
  for (int i = dom; i >= 1; --i) {
    f.images[i - 1] = static_cast<int>(rank % cod) + 1;
    rank /= cod;
  }
  return f;
}

long long map_count(int dom, int cod) {
  if (dom == 0) return 1;
  if (cod == 0) return 0;
  long long r = 1;
  for (int i = 0; i < dom; ++i) r *= cod;
  return r;
}

// --- permutations --------------------------------------------------------

Perm perm_identity(int n) {
  Perm p{std::vector<int>(n)};
  std::iota(p.images.begin(), p.images.end(), 1);
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw DomainError("perm_compose: degree mismatch");
  Perm r{std::vector<int>(a.degree())};
  for (int i = 1; i <= a.degree(); ++i) r.images[i - 1] = b(a(i));
  return r;
}

Perm perm_inverse(const Perm& a) {
  Perm r{std::vector<int>(a.degree())};
  for (int i = 1; i <= a.degree(); ++i) r.images[a(i) - 1] = i;
  return r;
}

FinMap perm_to_map(const Perm& p) { return FinMap{p.degree(), p.degree(), p.images}; }

Perm map_to_perm(const FinMap& f) {
  if (!is_bijective(f)) throw DomainError("map_to_perm: not a bijective endo-map");
  return Perm{f.images};
}

SymmetricGroup::SymmetricGroup(int n) : n_(n) {
  check_arity(n, "SymmetricGroup");
  Perm p = perm_identity(n);
  do {
    index_[perm_key(p.images)] = static_cast<int>(perms_.size());
    perms_.push_back(p);
  } while (std::next_permutation(p.images.begin(), p.images.end()));
  for (int i = 1; i < n; ++i) {
    Perm t = perm_identity(n);
    std::swap(t.images[i - 1], t.images[i]);
    generators_.push_back(index_.at(perm_key(t.images)));
  }
}

int SymmetricGroup::index_of(const Perm& p) const {
  auto it = index_.find(perm_key(p.images));
  if (it == index_.end()) throw DomainError("SymmetricGroup: permutation of wrong degree");
  return it->second;
}

int SymmetricGroup::compose(int a, int b) const {
  return index_of(perm_compose(perms_[a], perms_[b]));
}

int SymmetricGroup::inverse(int a) const { return index_of(perm_inverse(perms_[a])); }

const SymmetricGroup& symmetric_group(int n) {
  check_arity(n, "symmetric_group");
  static std::unique_ptr<SymmetricGroup> cache[kArityCap + 1];
  if (!cache[n]) cache[n] = std::make_unique<SymmetricGroup>(n);
  return *cache[n];
}

// --- factorization and compositions ---------------------------------------

std::pair<FinMap, Perm> monotone_perm_factor(const FinMap& f) {
  std::vector<int> order(f.dom);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f(a) < f(b); });
  FinMap phi{f.dom, f.cod, std::vector<int>(f.dom)};
  Perm sigma{std::vector<int>(f.dom)};
  for (int j = 1; j <= f.dom; ++j) {
    phi.images[j - 1] = f(order[j - 1]);
    sigma.images[order[j - 1] - 1] = j;
  }
  return {phi, sigma};
}

Composition fibre_composition(const FinMap& phi) {
  if (!is_monotone(phi)) throw PreconditionError("fibre_composition: map is not monotone");
  Composition c{std::vector<int>(phi.cod, 0)};
  for (int v : phi.images) c.parts[v - 1]++;
  return c;
}

int Composition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::vector<Composition> compositions(int n, int s, int min_part) {
  std::vector<Composition> out;
  std::vector<int> cur(s);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == s) {
      if (left == 0) out.push_back(Composition{cur});
      return;
    }
    int rest = s - pos - 1;
    for (int p = min_part; p <= left - rest * min_part; ++p) {
      cur[pos] = p;
      self(self, pos + 1, left - p);
    }
  };
  if (n >= s * min_part) rec(rec, 0, n);
  return out;
}

std::vector<int> block_starts(const std::vector<int>& parts) {
  std::vector<int> starts(parts.size());
  int acc = 0;
  for (size_t i = 0; i < parts.size(); ++i) {
    starts[i] = acc;
    acc += parts[i];
  }
  return starts;
}

Perm block_perm(const std::vector<int>& parts, const std::vector<Perm>& comps) {
  auto starts = block_starts(parts);
  int n = starts.empty() ? 0 : starts.back() + parts.back();
  Perm r{std::vector<int>(n)};
  for (size_t i = 0; i < parts.size(); ++i)
    for (int t = 1; t <= parts[i]; ++t) r.images[starts[i] + t - 1] = starts[i] + comps[i](t);
  return r;
}

FinMap collapse_map(const std::vector<int>& parts) {
  int n = std::accumulate(parts.begin(), parts.end(), 0);
  FinMap f{n, static_cast<int>(parts.size()), {}};
  f.images.reserve(n);
  for (size_t i = 0; i < parts.size(); ++i)
    for (int t = 0; t < parts[i]; ++t) f.images.push_back(static_cast<int>(i) + 1);
  return f;
}

FinMap block_sum(const std::vector<FinMap>& maps) {
  int dom = 0, cod = 0;
  for (const auto& m : maps) {
    dom += m.dom;
    cod += m.cod;
  }
  FinMap r{dom, cod, {}};
  r.images.reserve(dom);
  int shift = 0;
  for (const auto& m : maps) {
    for (int v : m.images) r.images.push_back(shift + v);
    shift += m.cod;
  }
  return r;
}

Perm block_transport_perm(const std::vector<int>& parts, const Perm& rho) {
  int s = static_cast<int>(parts.size());
  if (rho.degree() != s) throw DomainError("block_transport_perm: arity mismatch");
  Perm rinv = perm_inverse(rho);
  std::vector<int> qparts(s);
  for (int j = 1; j <= s; ++j) qparts[j - 1] = parts[rinv(j) - 1];
  auto ostarts = block_starts(parts);
  auto nstarts = block_starts(qparts);
  int n = std::accumulate(parts.begin(), parts.end(), 0);
  Perm beta{std::vector<int>(n)};
  for (int i = 1; i <= s; ++i)
    for (int t = 1; t <= parts[i - 1]; ++t)
      beta.images[nstarts[rho(i) - 1] + t - 1] = ostarts[i - 1] + t;
  return beta;
}

// --- Young cosets ----------------------------------------------------------

std::vector<Perm> young_cosets(const Composition& parts) {
  int n = parts.total();
  check_arity(n, "young_cosets");
  auto starts = block_starts(parts.parts);
  std::vector<Perm> reps;
  Perm p = perm_identity(n);
  do {
    bool increasing = true;
    for (size_t k = 0; k < parts.parts.size() && increasing; ++k)
      for (int t = 1; t < parts.parts[k]; ++t)
        if (p(starts[k] + t) > p(starts[k] + t + 1)) {
          increasing = false;
          break;
        }
    if (increasing) reps.push_back(p);
  } while (std::next_permutation(p.images.begin(), p.images.end()));
  return reps;
}

YoungInduction::YoungInduction(Composition parts)
    : parts_(std::move(parts)), degree_(parts_.total()), starts_(block_starts(parts_.parts)) {
  reps_ = young_cosets(parts_);
  for (size_t i = 0; i < reps_.size(); ++i)
    rep_index_[perm_key(reps_[i].images)] = static_cast<int>(i);
}

int YoungInduction::rep_index(const Perm& rep) const {
  auto it = rep_index_.find(perm_key(rep.images));
  if (it == rep_index_.end()) throw DomainError("YoungInduction: not a canonical representative");
  return it->second;
}

int YoungInduction::canonicalize(const Perm& q, Perm* h_out) const {
  Perm rep{std::vector<int>(degree_)};
  for (size_t k = 0; k < parts_.parts.size(); ++k) {
    std::vector<int> vals(parts_.parts[k]);
    for (int t = 1; t <= parts_.parts[k]; ++t) vals[t - 1] = q(starts_[k] + t);
    std::sort(vals.begin(), vals.end());
    for (int t = 1; t <= parts_.parts[k]; ++t) rep.images[starts_[k] + t - 1] = vals[t - 1];
  }
  if (h_out) *h_out = perm_compose(q, perm_inverse(rep));
  return rep_index(rep);
}

Perm YoungInduction::block_component(const Perm& h, int i) const {
  int p = parts_.parts[i - 1];
  Perm c{std::vector<int>(p)};
  for (int t = 1; t <= p; ++t) c.images[t - 1] = h(starts_[i - 1] + t) - starts_[i - 1];
  return c;
}

// --- G-sets -----------------------------------------------------------------

GSet empty_gset(int arity) {
  check_arity(arity, "empty_gset");
  return GSet{arity, 0, {}};
}

GSet trivial_gset(int arity, int size) {
  check_arity(arity, "trivial_gset");
  long long ord = symmetric_group(arity).order();
  GSet x{arity, size, {}};
  x.action.assign(size, std::vector<int>(ord));
  for (int e = 0; e < size; ++e) std::fill(x.action[e].begin(), x.action[e].end(), e);
  return x;
}

GSet regular_gset(int arity) {
  const auto& sg = symmetric_group(arity);
  int ord = static_cast<int>(sg.order());
  GSet x{arity, ord, {}};
  x.action.assign(ord, std::vector<int>(ord));
  for (int e = 0; e < ord; ++e)
    for (int g = 0; g < ord; ++g) x.action[e][g] = sg.compose(e, g);
  return x;
}

GSet coset_gset(int arity, const std::vector<int>& subgroup) {
  const auto& sg = symmetric_group(arity);
  int ord = static_cast<int>(sg.order());
  auto canonical = [&](int g) {
    int best = -1;
    for (int h : subgroup) {
      int m = sg.compose(h, g);
      if (best < 0 || sg.perm(m).images < sg.perm(best).images) best = m;
    }
    return best;
  };
  std::vector<int> reps;
  std::vector<int> canon(ord);
  for (int g = 0; g < ord; ++g) canon[g] = canonical(g);
  std::vector<int> rep_slot(ord, -1);
  for (int g = 0; g < ord; ++g)
    if (canon[g] == g) {
      rep_slot[g] = static_cast<int>(reps.size());
      reps.push_back(g);
    }
  GSet x{arity, static_cast<int>(reps.size()), {}};
  x.action.assign(x.size, std::vector<int>(ord));
  for (int e = 0; e < x.size; ++e)
    for (int g = 0; g < ord; ++g) x.action[e][g] = rep_slot[canon[sg.compose(reps[e], g)]];
  return x;
}

GSet disjoint_union(const GSet& a, const GSet& b) {
  if (a.arity != b.arity) throw DomainError("disjoint_union: arity mismatch");
  GSet r{a.arity, a.size + b.size, {}};
  r.action = a.action;
  long long ord = symmetric_group(a.arity).order();
  for (int e = 0; e < b.size; ++e) {
    std::vector<int> row(ord);
    for (int g = 0; g < ord; ++g) row[g] = a.size + b.action[e][g];
    r.action.push_back(std::move(row));
  }
  return r;
}

CheckReport validate_gset(const GSet& x) {
  CheckReport rep;
  const auto& sg = symmetric_group(x.arity);
  int ord = static_cast<int>(sg.order());
  if (static_cast<int>(x.action.size()) != x.size) {
    rep.fail("table-shape", "action row count != size");
    return rep;
  }
  for (int e = 0; e < x.size; ++e) {
    if (static_cast<int>(x.action[e].size()) != ord) {
      rep.fail("table-shape", "element " + std::to_string(e + 1) + " row width != " + std::to_string(ord));
      return rep;
    }
    for (int g = 0; g < ord; ++g)
      if (x.action[e][g] < 0 || x.action[e][g] >= x.size) {
        rep.fail("table-shape", "entry (" + std::to_string(e + 1) + "," + std::to_string(g) + ") out of range");
        return rep;
      }
  }
  int id = 0; // identity has index 0 in lex order
  for (int e = 0; e < x.size; ++e) {
    ++rep.checked;
    if (x.act(e, id) != e)
      rep.fail("action-identity", "element " + std::to_string(e + 1));
  }
  // act(act(e,g),s) == act(e, g*s) for every g and generator s pins down the
  // whole multiplication table by induction over reduced words
  for (int e = 0; e < x.size; ++e)
    for (int g = 0; g < ord; ++g)
      for (int s : sg.generators()) {
        ++rep.checked;
        if (x.act(x.act(e, g), s) != x.act(e, sg.compose(g, s)))
          rep.fail("action-composition", "element " + std::to_string(e + 1) + " perm " +
                                             show_perm(sg.perm(g)) + " gen " + show_perm(sg.perm(s)));
      }
  return rep;
}

std::vector<std::vector<int>> orbits(const GSet& x) {
  const auto& sg = symmetric_group(x.arity);
  std::vector<bool> seen(x.size, false);
  std::vector<std::vector<int>> out;
  for (int e = 0; e < x.size; ++e) {
    if (seen[e]) continue;
    std::vector<int> orb{e};
    seen[e] = true;
    std::vector<int> stack{e};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int s : sg.generators()) {
        int nxt = x.act(cur, s);
        if (!seen[nxt]) {
          seen[nxt] = true;
          orb.push_back(nxt);
          stack.push_back(nxt);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

std::vector<int> stabilizer(const GSet& x, int element) {
  const auto& sg = symmetric_group(x.arity);
  std::vector<int> stab;
  for (int g = 0; g < sg.order(); ++g)
    if (x.act(element, g) == element) stab.push_back(g);
  return stab;
}

std::vector<int> subgroup_closure(int arity, const std::vector<int>& gens) {
  const auto& sg = symmetric_group(arity);
  std::vector<bool> in(sg.order(), false);
  std::vector<int> stack{0};
  in[0] = true;
  for (int g : gens)
    if (!in[g]) {
      in[g] = true;
      stack.push_back(g);
    }
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int g : gens) {
      int nxt = sg.compose(cur, g);
      if (!in[nxt]) {
        in[nxt] = true;
        stack.push_back(nxt);
      }
    }
  }
  std::vector<int> out;
  for (int g = 0; g < sg.order(); ++g)
    if (in[g]) out.push_back(g);
  return out;
}

std::vector<int> canonical_conjugate(int arity, const std::vector<int>& subgroup) {
  const auto& sg = symmetric_group(arity);
  std::vector<int> best;
  for (int g = 0; g < sg.order(); ++g) {
    int ginv = sg.inverse(g);
    std::vector<int> conj;
    conj.reserve(subgroup.size());
    for (int h : subgroup) conj.push_back(sg.compose(sg.compose(ginv, h), g));
    std::sort(conj.begin(), conj.end());
    if (best.empty() || conj < best) best = std::move(conj);
  }
  return best;
}

bool gset_iso(const GSet& x, const GSet& y) {
  if (x.arity != y.arity) throw DomainError("gset_iso: arity mismatch");
  if (x.size != y.size) return false;
  auto signature = [&](const GSet& s) {
    std::vector<std::vector<int>> sig;
    for (const auto& orb : orbits(s)) sig.push_back(canonical_conjugate(s.arity, stabilizer(s, orb.front())));
    std::sort(sig.begin(), sig.end());
    return sig;
  };
  return signature(x) == signature(y);
}

GSet induce(const std::vector<GSet>& factors) {
  Composition parts;
  for (const auto& f : factors) parts.parts.push_back(f.arity);
  YoungInduction ind(parts);
  const auto& sg = symmetric_group(ind.degree());
  int ord = static_cast<int>(sg.order());
  int s = static_cast<int>(factors.size());

  long long msize = 1;
  for (const auto& f : factors) msize *= f.size;
  int reps = static_cast<int>(ind.reps().size());
  long long total = msize * reps;

  GSet out{ind.degree(), static_cast<int>(total), {}};
  out.action.assign(out.size, std::vector<int>(ord));

  std::vector<int> m(s, 0);
  std::vector<const SymmetricGroup*> blockgroups;
  for (const auto& f : factors) blockgroups.push_back(&symmetric_group(f.arity));

  for (long long mi = 0; mi < msize; ++mi) {
    // decode mi into the factor tuple
    long long rest = mi;
    for (int k = s - 1; k >= 0; --k) {
      m[k] = static_cast<int>(rest % factors[k].size);
      rest /= factors[k].size;
    }
    for (int c = 0; c < reps; ++c) {
      int e = static_cast<int>(mi * reps + c);
      for (int g = 0; g < ord; ++g) {
        Perm q = perm_compose(ind.reps()[c], sg.perm(g));
        Perm h;
        int c2 = ind.canonicalize(q, &h);
        long long m2flat = 0;
        for (int k = 0; k < s; ++k) {
          Perm hk = ind.block_component(h, k + 1);
          int mk = factors[k].act(m[k], blockgroups[k]->index_of(hk));
          m2flat = m2flat * factors[k].size + mk;
        }
        out.action[e][g] = static_cast<int>(m2flat * reps + c2);
      }
    }
  }
  return out;
}

// --- coequalizers -------------------------------------------------------------

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Coequalizer dsu_to_classes(Dsu& dsu, int b_size) {
  Coequalizer c;
  c.class_of.assign(b_size, -1);
  for (int e = 0; e < b_size; ++e) {
    int root = dsu.find(e);
    if (c.class_of[root] < 0) {
      c.class_of[root] = c.class_count++;
      c.representative.push_back(root);
    }
    c.class_of[e] = c.class_of[root];
  }
  return c;
}

} // namespace

Coequalizer coequalizer(int b_size, const std::vector<int>& u, const std::vector<int>& v) {
  if (u.size() != v.size()) throw DomainError("coequalizer: parallel maps of different domain");
  Dsu dsu(b_size);
  for (size_t a = 0; a < u.size(); ++a) dsu.unite(u[a], v[a]);
  return dsu_to_classes(dsu, b_size);
}

Coequalizer quotient_by_relations(int b_size, const std::vector<std::pair<int, int>>& rel) {
  Dsu dsu(b_size);
  for (auto [a, b] : rel) dsu.unite(a, b);
  return dsu_to_classes(dsu, b_size);
}

// --- misc -----------------------------------------------------------------------

long long tuple_rank(const std::vector<int>& t, int base) {
  long long r = 0;
  for (int v : t) r = r * base + v;
  return r;
}

std::vector<int> tuple_from_rank(long long rank, int len, int base) {
  std::vector<int> t(len);
  for (int i = len - 1; i >= 0; --i) {
    t[i] = static_cast<int>(rank % base);
    rank /= base;
  }
  return t;
}

std::string show_ints(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

std::string show_ints1(const std::vector<int>& v) {
  std::vector<int> shifted(v);
  for (int& x : shifted) ++x;
  return show_ints(shifted);
}

std::string show_map(const FinMap& f) { return show_ints(f.images); }

std::string show_perm(const Perm& p) { return show_ints(p.images); }

} // namespace fincat
