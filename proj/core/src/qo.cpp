#include "fincat/qo.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "fincat/error.hpp"

namespace fincat {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void check_bound(int n, const char* who) {
  if (n < 0 || n > kArityCap)
    throw CapacityError(std::string(who) + ": arity bound " + std::to_string(n) +
                        " outside supported range 0.." + std::to_string(kArityCap));
}

} // namespace

SymSeq empty_seq(int max_arity) {
  check_bound(max_arity, "empty_seq");
  SymSeq a{max_arity, std::nullopt, {}};
  for (int n = 0; n <= max_arity; ++n) a.at.push_back(empty_gset(n));
  return a;
}

SymSeq tensor_unit_seq(int max_arity) {
  SymSeq a = empty_seq(max_arity);
  a.at[0] = regular_gset(0);
  a.support_bound = 0;
  return a;
}

SymSeq comp_unit_seq(int max_arity) {
  SymSeq a = empty_seq(max_arity);
  if (max_arity < 1) throw CapacityError("comp_unit_seq: needs max_arity >= 1");
  a.at[1] = regular_gset(1);
  a.support_bound = 1;
  return a;
}

SymSeq representable_seq(int k, int max_arity) {
  if (k > max_arity) throw CapacityError("representable_seq: arity above bound");
  SymSeq a = empty_seq(max_arity);
  a.at[k] = regular_gset(k);
  a.support_bound = k;
  return a;
}

CheckReport validate_seq(const SymSeq& a) {
  CheckReport rep;
  if (static_cast<int>(a.at.size()) != a.max_arity + 1) {
    rep.fail("shape", "carrier count != max_arity + 1");
    return rep;
  }
  for (int n = 0; n <= a.max_arity; ++n) {
    if (a.at[n].arity != n) {
      rep.fail("shape", "carrier at arity " + std::to_string(n) + " has wrong group");
      continue;
    }
    CheckReport sub = validate_gset(a.at[n]);
    rep.checked += sub.checked;
    for (const auto& f : sub.failures)
      rep.fail(f.law, "arity " + std::to_string(n) + ": " + f.witness);
    if (a.support_bound && n > *a.support_bound && a.at[n].size != 0)
      rep.fail("support-bound", "arity " + std::to_string(n) + " nonempty above bound");
  }
  return rep;
}

bool seq_iso(const SymSeq& a, const SymSeq& b) {
  if (a.max_arity != b.max_arity) throw DomainError("seq_iso: truncation bounds differ");
  for (int n = 0; n <= a.max_arity; ++n)
    if (!gset_iso(a.at[n], b.at[n])) return false;
  return true;
}

SymSeq tensor(const SymSeq& a, const SymSeq& b) {
  if (a.max_arity != b.max_arity) throw DomainError("tensor: truncation bounds differ");
  SymSeq r = empty_seq(a.max_arity);
  for (int n = 0; n <= a.max_arity; ++n) {
    GSet acc = empty_gset(n);
    for (int p = 0; p <= n; ++p) {
      if (a.size(p) == 0 || b.size(n - p) == 0) continue;
      acc = disjoint_union(acc, induce({a.at[p], b.at[n - p]}));
    }
    r.at[n] = std::move(acc);
  }
  if (a.support_bound && b.support_bound) r.support_bound = *a.support_bound + *b.support_bound;
  return r;
}

// --- composition product ---------------------------------------------------

namespace {

struct ComposeSummand {
  std::vector<int> parts;
  int x_count = 0;
  GSet ind;          // induced inner G-set, elements (m flat) * reps + coset
  YoungInduction yi; // coset machinery for the same parts
  long long reps = 0;
  std::vector<long long> factor_sizes;
  long long offset = 0; // global offset of this summand
  long long size() const { return x_count * static_cast<long long>(ind.size); }
};

} // namespace

SymSeq compose(const SymSeq& x, const SymSeq& y, std::vector<std::vector<QoElement>>* reps_out) {
  if (x.max_arity != y.max_arity) throw DomainError("compose: truncation bounds differ");
  int bound = x.max_arity;
  bool y0_empty = y.size(0) == 0;
  if (!y0_empty && !x.support_bound)
    throw UnboundedCompositionError(
        "compose: right factor has nullary elements and left factor has no support bound; "
        "the sum over inner arities is unbounded");
  if (!y0_empty && *x.support_bound > bound)
    throw CapacityError("compose: support bound exceeds stored arities");
  int min_part = y0_empty ? 1 : 0;

  SymSeq r = empty_seq(bound);
  if (x.support_bound && y.support_bound) r.support_bound = *x.support_bound * *y.support_bound;
  if (reps_out) reps_out->assign(bound + 1, {});

  for (int n = 0; n <= bound; ++n) {
    int s_max = y0_empty ? n : *x.support_bound;
    if (x.support_bound) s_max = std::min(s_max, *x.support_bound);

    std::vector<ComposeSummand> summands;
    std::map<std::vector<int>, int> summand_index;
    long long total = 0;
    for (int s = 0; s <= s_max; ++s) {
      if (x.size(s) == 0) continue;
      for (const auto& comp : compositions(n, s, min_part)) {
        bool inhabited = true;
        std::vector<GSet> factors;
        for (int p : comp.parts) {
          if (y.size(p) == 0) {
            inhabited = false;
            break;
          }
          factors.push_back(y.at[p]);
        }
        if (!inhabited) continue;
        ComposeSummand sm{comp.parts, x.size(s), induce(factors), YoungInduction(comp), 0, {}, total};
        sm.reps = static_cast<long long>(sm.yi.reps().size());
        for (int p : comp.parts) sm.factor_sizes.push_back(y.size(p));
        summand_index[comp.parts] = static_cast<int>(summands.size());
        total += sm.size();
        summands.push_back(std::move(sm));
      }
    }

    // identify (x, u) in summand p with (x.rho, theta_rho(u)) in summand q
    std::vector<std::pair<int, int>> rels;
    for (const auto& sm : summands) {
      int s = static_cast<int>(sm.parts.size());
      const auto& sg_s = symmetric_group(s);
      for (int rho_i = 1; rho_i < sg_s.order(); ++rho_i) {
        Perm rho = sg_s.perm(rho_i);
        Perm rho_inv = perm_inverse(rho);
        std::vector<int> qparts(s);
        for (int j = 1; j <= s; ++j) qparts[j - 1] = sm.parts[rho_inv(j) - 1];
        const ComposeSummand& tgt = summands[summand_index.at(qparts)];
        Perm beta = block_transport_perm(sm.parts, rho);
        for (long long u = 0; u < sm.ind.size; ++u) {
          long long c = u % sm.reps;
          long long mflat = u / sm.reps;
          std::vector<int> m(s);
          long long rest = mflat;
          for (int k = s - 1; k >= 0; --k) {
            m[k] = static_cast<int>(rest % sm.factor_sizes[k]);
            rest /= sm.factor_sizes[k];
          }
          // reorder the tuple and push beta into the group coordinate
          std::vector<int> m2(s);
          for (int j = 1; j <= s; ++j) m2[j - 1] = m[rho_inv(j) - 1];
          Perm g = perm_compose(beta, sm.yi.reps()[static_cast<int>(c)]);
          Perm h;
          int c2 = tgt.yi.canonicalize(g, &h);
          long long m2flat = 0;
          for (int j = 0; j < s; ++j) {
            Perm hj = tgt.yi.block_component(h, j + 1);
            int acted = y.at[qparts[j]].act(m2[j], symmetric_group(qparts[j]).index_of(hj));
            m2flat = m2flat * tgt.factor_sizes[j] + acted;
          }
          long long u2 = m2flat * tgt.reps + c2;
          for (int xe = 0; xe < sm.x_count; ++xe) {
            int xe2 = x.at[s].act(xe, rho_i);
            rels.emplace_back(static_cast<int>(sm.offset + xe * sm.ind.size + u),
                              static_cast<int>(tgt.offset + xe2 * tgt.ind.size + u2));
          }
        }
      }
    }

    Coequalizer classes = quotient_by_relations(static_cast<int>(total), rels);

    auto locate = [&](long long g) -> std::tuple<const ComposeSummand*, int, long long> {
      for (const auto& sm : summands)
        if (g < sm.offset + sm.size()) {
          long long local = g - sm.offset;
          return {&sm, static_cast<int>(local / sm.ind.size), local % sm.ind.size};
        }
      throw DomainError("compose: element index out of range");
    };

    const auto& sg_n = symmetric_group(n);
    GSet out{n, classes.class_count, {}};
    out.action.assign(out.size, std::vector<int>(static_cast<size_t>(sg_n.order())));
    for (int k = 0; k < classes.class_count; ++k) {
      auto [sm, xe, u] = locate(classes.representative[k]);
      for (int g = 0; g < sg_n.order(); ++g) {
        long long u2 = sm->ind.act(static_cast<int>(u), g);
        out.action[k][g] = classes.class_of[sm->offset + xe * sm->ind.size + u2];
      }
      if (reps_out) {
        QoElement el;
        el.arity = n;
        el.parts = sm->parts;
        el.x = xe;
        el.coset = static_cast<int>(u % sm->reps);
        long long mflat = u / sm->reps;
        el.ys.assign(sm->parts.size(), 0);
        for (int j = static_cast<int>(sm->parts.size()) - 1; j >= 0; --j) {
          el.ys[j] = static_cast<int>(mflat % sm->factor_sizes[j]);
          mflat /= sm->factor_sizes[j];
        }
        (*reps_out)[n].push_back(std::move(el));
      }
    }
    r.at[n] = std::move(out);
  }
  return r;
}

// --- evaluation --------------------------------------------------------------

long long EvalQuotient::index_of(int n, int a, long long tuple_rank) const {
  return offset[n] + a * ipow(set_size, n) + tuple_rank;
}

void EvalQuotient::decode(long long idx, int& n, int& a, std::vector<int>& tuple) const {
  n = 0;
  while (n + 1 <= max_arity && offset[n + 1] <= idx) ++n;
  long long local = idx - offset[n];
  long long kn = ipow(set_size, n);
  a = static_cast<int>(local / kn);
  tuple = tuple_from_rank(local % kn, n, set_size);
  for (int& v : tuple) ++v;
}

EvalQuotient eval_seq(const SymSeq& a, int set_size) {
  if (set_size < 0) throw DomainError("eval_seq: negative set size");
  EvalQuotient ev;
  ev.set_size = set_size;
  ev.max_arity = a.max_arity;
  ev.offset.assign(a.max_arity + 2, 0);
  for (int n = 0; n <= a.max_arity; ++n)
    ev.offset[n + 1] = ev.offset[n] + a.size(n) * ipow(set_size, n);
  ev.total = ev.offset[a.max_arity + 1];

  std::vector<std::pair<int, int>> rels;
  for (int n = 0; n <= a.max_arity; ++n) {
    const auto& sg = symmetric_group(n);
    long long kn = ipow(set_size, n);
    for (int e = 0; e < a.size(n); ++e)
      for (long long t = 0; t < kn; ++t) {
        std::vector<int> tup = tuple_from_rank(t, n, set_size);
        for (int s = 1; s < sg.order(); ++s) {
          const Perm& sigma = sg.perm(s);
          std::vector<int> tup2(n);
          for (int i = 1; i <= n; ++i) tup2[i - 1] = tup[sigma(i) - 1];
          rels.emplace_back(static_cast<int>(ev.index_of(n, a.at[n].act(e, s), t)),
                            static_cast<int>(ev.index_of(n, e, tuple_rank(tup2, set_size))));
        }
      }
  }
  ev.classes = quotient_by_relations(static_cast<int>(ev.total), rels);
  return ev;
}

// --- operads -----------------------------------------------------------------

std::vector<std::vector<int>> substitution_keys(int max_arity) {
  std::vector<std::vector<int>> keys;
  std::vector<int> cur;
  for (int s = 0; s <= max_arity; ++s) {
    cur.assign(s, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == s) {
        keys.push_back(cur);
        return;
      }
      for (int p = 0; p <= left; ++p) {
        cur[pos] = p;
        self(self, pos + 1, left - p);
      }
    };
    rec(rec, 0, max_arity);
  }
  return keys;
}

long long Operad::table_size(const std::vector<int>& parts) const {
  int s = static_cast<int>(parts.size());
  long long sz = seq.size(s);
  for (int p : parts) sz *= seq.size(p);
  return sz;
}

int Operad::apply(const std::vector<int>& parts, int x, const std::vector<int>& ms) const {
  auto it = mu.find(parts);
  if (it == mu.end()) throw DomainError("operad: no substitution table for " + show_ints(parts));
  long long idx = x;
  for (size_t i = 0; i < parts.size(); ++i) idx = idx * seq.size(parts[i]) + ms[i];
  return it->second[idx];
}

Operad make_operad(SymSeq seq, int unit, const SubstitutionRule& rule) {
  Operad o{std::move(seq), unit, {}};
  for (const auto& parts : substitution_keys(o.seq.max_arity)) {
    long long sz = o.table_size(parts);
    std::vector<int> table(sz);
    if (sz > 0) {
      int s = static_cast<int>(parts.size());
      std::vector<int> ms(s, 0);
      for (long long idx = 0; idx < sz; ++idx) {
        long long rest = idx;
        for (int i = s - 1; i >= 0; --i) {
          ms[i] = static_cast<int>(rest % o.seq.size(parts[i]));
          rest /= o.seq.size(parts[i]);
        }
        table[idx] = rule(parts, static_cast<int>(rest), ms);
      }
    }
    o.mu[parts] = std::move(table);
  }
  return o;
}

namespace {

// iterate flat tuples over mixed bases; returns false when exhausted
bool next_tuple(std::vector<int>& t, const std::vector<int>& bases) {
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    if (++t[i] < bases[i]) return true;
    t[i] = 0;
  }
  return false;
}

bool operad_shape_ok(const Operad& o, CheckReport& rep) {
  CheckReport seq_rep = validate_seq(o.seq);
  if (!seq_rep.ok) {
    for (const auto& f : seq_rep.failures) rep.fail(f.law, f.witness);
    return false;
  }
  if (o.seq.max_arity < 1 || o.unit < 0 || o.unit >= o.seq.size(1)) {
    rep.fail("shape", "unit element out of range");
    return false;
  }
  for (const auto& parts : substitution_keys(o.seq.max_arity)) {
    auto it = o.mu.find(parts);
    if (it == o.mu.end()) {
      rep.fail("shape", "missing substitution table " + show_ints(parts));
      return false;
    }
    long long sz = o.table_size(parts);
    if (static_cast<long long>(it->second.size()) != sz) {
      rep.fail("shape", "substitution table " + show_ints(parts) + " has wrong size");
      return false;
    }
    int n = std::accumulate(parts.begin(), parts.end(), 0);
    for (int v : it->second)
      if (v < 0 || v >= o.seq.size(n)) {
        rep.fail("shape", "substitution table " + show_ints(parts) + " value out of range");
        return false;
      }
  }
  return true;
}

} // namespace

CheckReport operad_check(const Operad& o) {
  CheckReport rep;
  if (!operad_shape_ok(o, rep)) return rep;
  const SymSeq& X = o.seq;
  int N = X.max_arity;
  auto keys = substitution_keys(N);

  // inner equivariance: mu(x; y.h) = mu(x; y).block_perm(h)
  for (const auto& parts : keys) {
    if (rep.failed(qo_laws::kInnerEquivariance)) break;
    int s = static_cast<int>(parts.size());
    int n = std::accumulate(parts.begin(), parts.end(), 0);
    if (X.size(s) == 0 || o.table_size(parts) == 0) continue;
    std::vector<int> mbases(s), hbases(s);
    for (int i = 0; i < s; ++i) {
      mbases[i] = X.size(parts[i]);
      hbases[i] = static_cast<int>(symmetric_group(parts[i]).order());
    }
    for (int x = 0; x < X.size(s) && !rep.failed(qo_laws::kInnerEquivariance); ++x) {
      std::vector<int> ms(s, 0);
      do {
        std::vector<int> hs(s, 0);
        do {
          std::vector<int> acted(s);
          std::vector<Perm> hperms(s);
          for (int i = 0; i < s; ++i) {
            acted[i] = X.at[parts[i]].act(ms[i], hs[i]);
            hperms[i] = symmetric_group(parts[i]).perm(hs[i]);
          }
          int lhs = o.apply(parts, x, acted);
          Perm hhat = block_perm(parts, hperms);
          int rhs = X.at[n].act(o.apply(parts, x, ms), symmetric_group(n).index_of(hhat));
          ++rep.checked;
          if (lhs != rhs) {
            std::string hw;
            for (const auto& hp : hperms) hw += show_perm(hp);
            rep.fail(qo_laws::kInnerEquivariance, "parts=" + show_ints(parts) + " x=" + std::to_string(x + 1) +
                                                      " ys=" + show_ints1(ms) + " hs=" + hw);
            break;
          }
        } while (!rep.failed(qo_laws::kInnerEquivariance) && next_tuple(hs, hbases));
      } while (!rep.failed(qo_laws::kInnerEquivariance) && s > 0 && next_tuple(ms, mbases));
    }
  }

  // outer equivariance: mu_q(x.rho; y o rho^-1) = mu_p(x; y).beta^-1
  for (const auto& parts : keys) {
    if (rep.failed(qo_laws::kOuterEquivariance)) break;
    int s = static_cast<int>(parts.size());
    int n = std::accumulate(parts.begin(), parts.end(), 0);
    if (X.size(s) == 0 || o.table_size(parts) == 0) continue;
    const auto& sg_s = symmetric_group(s);
    const auto& sg_n = symmetric_group(n);
    std::vector<int> mbases(s);
    for (int i = 0; i < s; ++i) mbases[i] = X.size(parts[i]);
    for (int x = 0; x < X.size(s) && !rep.failed(qo_laws::kOuterEquivariance); ++x) {
      std::vector<int> ms(s, 0);
      do {
        for (int rho_i = 1; rho_i < sg_s.order(); ++rho_i) {
          Perm rho = sg_s.perm(rho_i);
          Perm rho_inv = perm_inverse(rho);
          std::vector<int> qparts(s), ms2(s);
          for (int j = 1; j <= s; ++j) {
            qparts[j - 1] = parts[rho_inv(j) - 1];
            ms2[j - 1] = ms[rho_inv(j) - 1];
          }
          Perm beta = block_transport_perm(parts, rho);
          int lhs = o.apply(qparts, X.at[s].act(x, rho_i), ms2);
          int rhs = X.at[n].act(o.apply(parts, x, ms), sg_n.index_of(perm_inverse(beta)));
          ++rep.checked;
          if (lhs != rhs) {
            rep.fail(qo_laws::kOuterEquivariance, "parts=" + show_ints(parts) + " x=" + std::to_string(x + 1) +
                                                      " ys=" + show_ints1(ms) + " rho=" + show_perm(rho));
            break;
          }
        }
      } while (!rep.failed(qo_laws::kOuterEquivariance) && s > 0 && next_tuple(ms, mbases));
    }
  }

  // left unit: mu_(n)(e; y) = y
  for (int n = 0; n <= N && !rep.failed(qo_laws::kLeftUnit); ++n)
    for (int y = 0; y < X.size(n); ++y) {
      ++rep.checked;
      if (o.apply({n}, o.unit, {y}) != y) {
        rep.fail(qo_laws::kLeftUnit, "n=" + std::to_string(n) + " y=" + std::to_string(y + 1));
        break;
      }
    }

  // right unit: mu_(1..1)(x; e..e) = x
  for (int n = 0; n <= N && !rep.failed(qo_laws::kRightUnit); ++n) {
    std::vector<int> parts(n, 1), units(n, o.unit);
    for (int x = 0; x < X.size(n); ++x) {
      ++rep.checked;
      if (o.apply(parts, x, units) != x) {
        rep.fail(qo_laws::kRightUnit, "n=" + std::to_string(n) + " x=" + std::to_string(x + 1));
        break;
      }
    }
  }

  // associativity over two-level trees
  for (const auto& parts : keys) {
    if (rep.failed(qo_laws::kAssociativity)) break;
    int s = static_cast<int>(parts.size());
    int m = std::accumulate(parts.begin(), parts.end(), 0);
    if (X.size(s) == 0 || o.table_size(parts) == 0) continue;
    auto starts = block_starts(parts);
    std::vector<int> mbases(s);
    for (int i = 0; i < s; ++i) mbases[i] = X.size(parts[i]);
    // all flat inner compositions (r_1..r_m), total <= N, lexicographically
    std::vector<int> inner(m, 0);
    auto inner_rec = [&](auto&& self, int pos, int left) -> void {
      if (rep.failed(qo_laws::kAssociativity)) return;
      if (pos == m) {
        std::vector<int> zbases(m);
        bool inhabited = true;
        for (int j = 0; j < m; ++j) {
          zbases[j] = X.size(inner[j]);
          if (zbases[j] == 0) inhabited = false;
        }
        if (!inhabited) return;
        std::vector<int> outer_parts(s);
        std::vector<std::vector<int>> blocks(s);
        for (int i = 0; i < s; ++i) {
          blocks[i] = std::vector<int>(inner.begin() + starts[i], inner.begin() + starts[i] + parts[i]);
          outer_parts[i] = std::accumulate(blocks[i].begin(), blocks[i].end(), 0);
        }
        for (int x = 0; x < X.size(s) && !rep.failed(qo_laws::kAssociativity); ++x) {
          std::vector<int> ms(s, 0);
          do {
            std::vector<int> zs(m, 0);
            do {
              int w = o.apply(parts, x, ms);
              int lhs = o.apply(inner, w, zs);
              std::vector<int> vs(s);
              for (int i = 0; i < s; ++i) {
                std::vector<int> zblock(zs.begin() + starts[i], zs.begin() + starts[i] + parts[i]);
                vs[i] = o.apply(blocks[i], ms[i], zblock);
              }
              int rhs = o.apply(outer_parts, x, vs);
              ++rep.checked;
              if (lhs != rhs) {
                rep.fail(qo_laws::kAssociativity, "parts=" + show_ints(parts) + " inner=" + show_ints(inner) +
                                                      " x=" + std::to_string(x + 1) + " ys=" + show_ints1(ms) +
                                                      " zs=" + show_ints1(zs));
                break;
              }
            } while (!rep.failed(qo_laws::kAssociativity) && m > 0 && next_tuple(zs, zbases));
          } while (!rep.failed(qo_laws::kAssociativity) && s > 0 && next_tuple(ms, mbases));
        }
        return;
      }
      for (int p = 0; p <= left; ++p) {
        inner[pos] = p;
        self(self, pos + 1, left - p);
      }
    };
    inner_rec(inner_rec, 0, N);
  }
  return rep;
}

// --- algebras ----------------------------------------------------------------

int OperadAlgebra::apply(int n, int x, long long tuple_rank) const {
  return act[n][x * ipow(carrier, n) + tuple_rank];
}

CheckReport algebra_check(const Operad& o, const OperadAlgebra& alg) {
  CheckReport rep;
  const SymSeq& X = o.seq;
  int N = X.max_arity;
  int k = alg.carrier;
  if (static_cast<int>(alg.act.size()) != N + 1) {
    rep.fail("shape", "action table count != max_arity + 1");
    return rep;
  }
  for (int n = 0; n <= N; ++n) {
    if (static_cast<long long>(alg.act[n].size()) != X.size(n) * ipow(k, n)) {
      rep.fail("shape", "action table at arity " + std::to_string(n) + " has wrong size");
      return rep;
    }
    for (int v : alg.act[n])
      if (v < -1 || v >= k) {
        rep.fail("shape", "action value out of range at arity " + std::to_string(n));
        return rep;
      }
  }

  // equivariance: a(x.sigma, t) = a(x, t o sigma)
  for (int n = 0; n <= N && !rep.failed(qo_algebra_laws::kEquivariance); ++n) {
    const auto& sg = symmetric_group(n);
    long long kn = ipow(k, n);
    for (int x = 0; x < X.size(n) && !rep.failed(qo_algebra_laws::kEquivariance); ++x)
      for (long long t = 0; t < kn; ++t) {
        std::vector<int> tup = tuple_from_rank(t, n, k);
        bool broke = false;
        for (int si = 1; si < sg.order(); ++si) {
          const Perm& sigma = sg.perm(si);
          std::vector<int> tup2(n);
          for (int i = 1; i <= n; ++i) tup2[i - 1] = tup[sigma(i) - 1];
          int lhs = alg.apply(n, X.at[n].act(x, si), t);
          int rhs = alg.apply(n, x, tuple_rank(tup2, k));
          if (lhs < 0 || rhs < 0) {
            ++rep.skipped;
            continue;
          }
          ++rep.checked;
          if (lhs != rhs) {
            rep.fail(qo_algebra_laws::kEquivariance, "n=" + std::to_string(n) + " x=" + std::to_string(x + 1) +
                                                         " t=" + show_ints1(tup) + " sigma=" + show_perm(sigma));
            broke = true;
            break;
          }
        }
        if (broke) break;
      }
  }

  // unit: a_1(e, t) = t
  for (int t = 0; t < k; ++t) {
    int v = alg.apply(1, o.unit, t);
    if (v < 0) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    if (v != t) {
      rep.fail(qo_algebra_laws::kUnit, "e=" + std::to_string(t + 1));
      break;
    }
  }

  // associativity: a(mu(x; y), t) = a(x, (a(y_i, t_i))_i)
  for (const auto& parts : substitution_keys(N)) {
    if (rep.failed(qo_algebra_laws::kAssociativity)) break;
    int s = static_cast<int>(parts.size());
    int m = std::accumulate(parts.begin(), parts.end(), 0);
    if (X.size(s) == 0 || o.table_size(parts) == 0) continue;
    auto starts = block_starts(parts);
    std::vector<int> mbases(s);
    for (int i = 0; i < s; ++i) mbases[i] = X.size(parts[i]);
    long long km = ipow(k, m);
    for (int x = 0; x < X.size(s) && !rep.failed(qo_algebra_laws::kAssociativity); ++x) {
      std::vector<int> ms(s, 0);
      do {
        for (long long t = 0; t < km; ++t) {
          std::vector<int> tup = tuple_from_rank(t, m, k);
          int lhs = alg.apply(m, o.apply(parts, x, ms), t);
          bool undefined = lhs < 0;
          std::vector<int> inner_vals(s);
          for (int i = 0; i < s && !undefined; ++i) {
            std::vector<int> ti(tup.begin() + starts[i], tup.begin() + starts[i] + parts[i]);
            inner_vals[i] = alg.apply(parts[i], ms[i], tuple_rank(ti, k));
            if (inner_vals[i] < 0) undefined = true;
          }
          int rhs = -1;
          if (!undefined) {
            rhs = alg.apply(s, x, tuple_rank(inner_vals, k));
            if (rhs < 0) undefined = true;
          }
          if (undefined) {
            ++rep.skipped;
            continue;
          }
          ++rep.checked;
          if (lhs != rhs) {
            rep.fail(qo_algebra_laws::kAssociativity, "parts=" + show_ints(parts) + " x=" + std::to_string(x + 1) +
                                                          " ys=" + show_ints1(ms) + " es=" + show_ints1(tup));
            break;
          }
        }
      } while (!rep.failed(qo_algebra_laws::kAssociativity) && s > 0 && next_tuple(ms, mbases));
    }
  }
  if (rep.skipped > 0)
    rep.notes.push_back("partial: " + std::to_string(rep.skipped) + " instances undefined within truncation");
  return rep;
}

FreeAlgebra free_algebra(const Operad& o, int set_size) {
  FreeAlgebra fa{eval_seq(o.seq, set_size), {}};
  const EvalQuotient& ev = fa.carrier;
  int K = ev.class_count();
  int N = o.seq.max_arity;
  fa.algebra.carrier = K;
  fa.algebra.act.assign(N + 1, {});
  for (int n = 0; n <= N; ++n) {
    long long kn = ipow(K, n);
    fa.algebra.act[n].assign(o.seq.size(n) * kn, -1);
    for (int x = 0; x < o.seq.size(n); ++x)
      for (long long t = 0; t < kn; ++t) {
        std::vector<int> cls = tuple_from_rank(t, n, K);
        std::vector<int> ms(n), arities(n);
        std::vector<int> concat;
        int total = 0;
        for (int i = 0; i < n; ++i) {
          int ar, el;
          std::vector<int> tup;
          ev.decode(ev.classes.representative[cls[i]], ar, el, tup);
          arities[i] = ar;
          ms[i] = el;
          total += ar;
          concat.insert(concat.end(), tup.begin(), tup.end());
        }
        if (total > N) continue;
        int b = o.apply(arities, x, ms);
        for (int& v : concat) --v;
        long long g = ev.index_of(total, b, tuple_rank(concat, set_size));
        fa.algebra.act[n][x * kn + t] = ev.classes.class_of[g];
      }
  }
  return fa;
}

} // namespace fincat
