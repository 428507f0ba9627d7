#include "fincat/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <utility>

#include "fincat/error.hpp"

namespace fincat {

namespace {

long long opow(long long base, int exp) {
  long long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// fixed-base odometer, last digit fastest
bool step_base(std::vector<int>& t, int base) {
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    if (++t[i] < base) return true;
    t[i] = 0;
  }
  return false;
}

// mixed-radix odometer, last digit fastest
bool step_mixed(std::vector<int>& t, const std::vector<int>& radices) {
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    if (++t[i] < radices[i]) return true;
    t[i] = 0;
  }
  return false;
}

std::string show1(int v) { return std::to_string(v + 1); }

struct Dsu {
  std::vector<int> parent;

  explicit Dsu(long long n) {
    if (n > 100'000'000) throw CapacityError("quotient space too large for the naive oracle");
    parent.resize(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(long long a, long long b) {
    int ra = find(static_cast<int>(a));
    int rb = find(static_cast<int>(b));
    if (ra != rb) parent[rb] = ra;
  }
};

// label classes by first appearance; returns the count
int dsu_classes(Dsu& d, std::vector<int>& cls) {
  int count = 0;
  std::vector<int> label(d.parent.size(), -1);
  cls.assign(d.parent.size(), 0);
  for (size_t i = 0; i < d.parent.size(); ++i) {
    int r = d.find(static_cast<int>(i));
    if (label[r] == -1) label[r] = count++;
    cls[i] = label[r];
  }
  return count;
}

// Run the generators-and-relations builder at cutoff-1 and at cutoff. The
// smaller space occupies the leading indices of the larger one, so the
// quotient is unchanged exactly when the induced map on classes is a
// bijection: equal counts and every new class meeting the old space.
StabilizedQuotient stabilize(int cutoff,
                             const std::function<int(int, std::vector<int>&)>& run) {
  std::vector<int> oldc, newc;
  int nold = run(cutoff - 1, oldc);
  int nnew = run(cutoff, newc);
  bool stab = nold == nnew;
  if (stab && nnew > 0) {
    std::vector<char> met(nnew, 0);
    for (size_t i = 0; i < oldc.size(); ++i) met[newc[i]] = 1;
    for (int c = 0; c < nnew; ++c)
      if (!met[c]) stab = false;
  }
  return {nnew, stab};
}

// compositions with at most max_arity parts, parts >= 0, total <= max_arity;
// part count ascending, then lexicographic
std::vector<std::vector<int>> composition_keys(int max_arity) {
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

// all tuples of the given length with non-negative entries summing to at
// most bound, lexicographically
std::vector<std::vector<int>> all_bounded_tuples(int length, int bound) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(length, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == length) {
      out.push_back(cur);
      return;
    }
    for (int d = 0; d <= left; ++d) {
      cur[pos] = d;
      self(self, pos + 1, left - d);
    }
  };
  rec(rec, 0, bound);
  return out;
}

std::string show_maps(const std::vector<FinMap>& fs) {
  std::string out;
  for (const auto& f : fs) out += show_map(f);
  return out;
}

void require_known(const std::string& law, std::initializer_list<std::string> known) {
  if (law.empty()) return;
  for (const auto& k : known)
    if (law == k) return;
  throw DomainError("unknown law: " + law);
}

} // namespace

// --- naive quotients -------------------------------------------------------

StabilizedQuotient naive_eval_qc(const FinFunctor& f, int set_size, int cutoff) {
  int top = f.max_arity;
  if (cutoff < 0) cutoff = top;
  if (cutoff > top) throw CapacityError("evaluation cutoff above the functor bound");
  if (set_size < 0) throw DomainError("negative set size");

  auto run = [&](int c, std::vector<int>& cls) -> int {
    std::vector<long long> off(static_cast<size_t>(c + 2 > 1 ? c + 2 : 1), 0);
    for (int n = 0; n <= c; ++n)
      off[n + 1] = off[n] + static_cast<long long>(f.sizes[n]) * opow(set_size, n);
    Dsu dsu(c >= 0 ? off[c + 1] : 0);
    for (int m = 0; m <= c; ++m) {
      long long km = opow(set_size, m);
      for (int n = 0; n <= c; ++n) {
        long long kn = opow(set_size, n);
        if (km == 0 || kn == 0) continue;
        long long mc = map_count(m, n);
        for (long long r = 0; r < mc; ++r) {
          FinMap phi = map_from_rank(m, n, r);
          const auto& tphi = f.transitions[m][n][static_cast<size_t>(r)];
          std::vector<int> y(n, 0);
          long long yrank = 0;
          do {
            long long pulled = 0;
            for (int i = 1; i <= m; ++i) pulled = pulled * set_size + y[phi(i) - 1];
            for (int xi = 0; xi < f.sizes[m]; ++xi)
              dsu.unite(off[n] + static_cast<long long>(tphi[xi]) * kn + yrank,
                        off[m] + static_cast<long long>(xi) * km + pulled);
            ++yrank;
          } while (step_base(y, set_size));
        }
      }
    }
    return dsu_classes(dsu, cls);
  };
  return stabilize(cutoff, run);
}

StabilizedQuotient naive_eval_qa(const FinPresheaf& p, const FiniteCommMonoid& a, int cutoff) {
  int top = p.max_arity;
  if (cutoff < 0) cutoff = top;
  if (cutoff > top) throw CapacityError("evaluation cutoff above the presheaf bound");
  if (a.size < 1) throw DomainError("monoid must be inhabited");

  auto run = [&](int c, std::vector<int>& cls) -> int {
    std::vector<long long> off(static_cast<size_t>(c + 2 > 1 ? c + 2 : 1), 0);
    for (int n = 0; n <= c; ++n)
      off[n + 1] = off[n] + static_cast<long long>(p.sizes[n]) * opow(a.size, n);
    Dsu dsu(c >= 0 ? off[c + 1] : 0);
    for (int m = 0; m <= c; ++m) {
      long long km = opow(a.size, m);
      for (int n = 0; n <= c; ++n) {
        long long kn = opow(a.size, n);
        long long mc = map_count(m, n);
        for (long long r = 0; r < mc; ++r) {
          FinMap phi = map_from_rank(m, n, r);
          const auto& tphi = p.restrictions[m][n][static_cast<size_t>(r)];
          std::vector<int> coeff(m, 0);
          long long crank = 0;
          do {
            long long pushed = 0;
            for (int j = 1; j <= n; ++j) {
              int acc = a.e;
              for (int i = 1; i <= m; ++i)
                if (phi(i) == j) acc = a.mult[acc * a.size + coeff[i - 1]];
              pushed = pushed * a.size + acc;
            }
            for (int xi = 0; xi < p.sizes[n]; ++xi)
              dsu.unite(off[n] + static_cast<long long>(xi) * kn + pushed,
                        off[m] + static_cast<long long>(tphi[xi]) * km + crank);
            ++crank;
          } while (step_base(coeff, a.size));
        }
      }
    }
    return dsu_classes(dsu, cls);
  };
  return stabilize(cutoff, run);
}

StabilizedQuotient naive_compose_qa(const FinPresheaf& x, const CommAlgObject& y, int level,
                                    int s_max) {
  const FinPresheaf& yp = y.presheaf;
  if (x.max_arity != yp.max_arity) throw DomainError("composite: arity bounds differ");
  int top = x.max_arity;
  if (s_max < 0) s_max = top;
  if (s_max > top) throw CapacityError("composite cutoff above the arity bound");
  if (level < 0 || level > top) throw DomainError("composite level out of range");
  const int v = level;

  // summand layout at inner cutoff c: for every n <= c and every assignment
  // b of the level's slots to n inner blocks, the block X(n) x Y(c_1) x ..
  // x Y(c_n) with c_j the size of the j-th fibre of b
  struct Layout {
    std::vector<std::vector<long long>> base;           // [n][brank]
    std::vector<std::vector<std::vector<int>>> fibres;  // [n][brank] -> sizes
    long long total = 0;
  };
  auto layout = [&](int c) {
    Layout lay;
    int rows = c + 1 > 0 ? c + 1 : 0;
    lay.base.resize(rows);
    lay.fibres.resize(rows);
    for (int n = 0; n <= c; ++n) {
      long long bc = map_count(v, n);
      lay.base[n].resize(static_cast<size_t>(bc));
      lay.fibres[n].resize(static_cast<size_t>(bc));
      for (long long br = 0; br < bc; ++br) {
        FinMap b = map_from_rank(v, n, br);
        std::vector<int> cs(n, 0);
        for (int w = 1; w <= v; ++w) ++cs[b(w) - 1];
        long long elems = x.sizes[n];
        for (int j = 0; j < n; ++j) elems *= yp.sizes[cs[j]];
        lay.base[n][static_cast<size_t>(br)] = lay.total;
        lay.fibres[n][static_cast<size_t>(br)] = std::move(cs);
        lay.total += elems;
      }
    }
    return lay;
  };

  auto run = [&](int c, std::vector<int>& cls) -> int {
    Layout lay = layout(c);
    Dsu dsu(lay.total);
    for (int m = 0; m <= c; ++m)
      for (int n = 0; n <= c; ++n) {
        long long pc = map_count(m, n);
        for (long long phir = 0; phir < pc; ++phir) {
          FinMap phi = map_from_rank(m, n, phir);
          const auto& tphi = x.restrictions[m][n][static_cast<size_t>(phir)];
          long long bc = map_count(v, m);
          for (long long br = 0; br < bc; ++br) {
            FinMap b = map_from_rank(v, m, br);
            const auto& csa = lay.fibres[m][static_cast<size_t>(br)];
            FinMap comp{v, n, std::vector<int>(static_cast<size_t>(v))};
            for (int w = 1; w <= v; ++w) comp.images[w - 1] = phi(b(w));
            long long arank = map_rank(comp);
            const auto& csb = lay.fibres[n][static_cast<size_t>(arank)];
            // slots of phi over each output block, in ascending order
            std::vector<std::vector<int>> islots(n);
            for (int i = 1; i <= m; ++i) islots[phi(i) - 1].push_back(i);
            // reindexing from block-concatenation order onto the ascending
            // fibre of the composite assignment
            std::vector<const std::vector<int>*> mix(n);
            for (int j = 0; j < n; ++j) {
              std::vector<int> concat;
              for (int i : islots[j])
                for (int w = 1; w <= v; ++w)
                  if (b(w) == i) concat.push_back(w);
              std::vector<int> asc = concat;
              std::sort(asc.begin(), asc.end());
              int cj = static_cast<int>(concat.size());
              FinMap rho{cj, cj, std::vector<int>(static_cast<size_t>(cj))};
              for (int t = 0; t < cj; ++t) {
                int pos = static_cast<int>(
                    std::find(concat.begin(), concat.end(), asc[t]) - concat.begin());
                rho.images[t] = pos + 1;
              }
              mix[j] = &yp.restrictions[cj][cj][static_cast<size_t>(map_rank(rho))];
            }
            std::vector<int> yradix(m);
            bool empty = x.sizes[n] == 0;
            for (int i = 0; i < m; ++i) {
              yradix[i] = yp.sizes[csa[i]];
              if (yradix[i] == 0) empty = true;
            }
            if (empty) continue;
            std::vector<int> ys(m, 0), zs(n);
            do {
              for (int j = 0; j < n; ++j) {
                int acc = y.unit_e0;
                int acc_size = 0;
                bool first = true;
                for (int i : islots[j]) {
                  acc = first ? ys[i - 1]
                              : y.mult[acc_size][csa[i - 1]]
                                      [static_cast<size_t>(acc) * yp.sizes[csa[i - 1]] +
                                       ys[i - 1]];
                  first = false;
                  acc_size += csa[i - 1];
                }
                zs[j] = (*mix[j])[acc];
              }
              for (int xi = 0; xi < x.sizes[n]; ++xi) {
                long long ia = tphi[xi];
                for (int i = 0; i < m; ++i) ia = ia * yradix[i] + ys[i];
                long long ib = xi;
                for (int j = 0; j < n; ++j) ib = ib * yp.sizes[csb[j]] + zs[j];
                dsu.unite(lay.base[m][static_cast<size_t>(br)] + ia,
                          lay.base[n][static_cast<size_t>(arank)] + ib);
              }
            } while (step_mixed(ys, yradix));
          }
        }
      }
    return dsu_classes(dsu, cls);
  };
  return stabilize(s_max, run);
}

long long naive_eval_qo(const SymSeq& a, int set_size) {
  if (set_size < 0) throw DomainError("negative set size");
  int top = a.max_arity;
  std::vector<long long> off(static_cast<size_t>(top + 2), 0);
  for (int n = 0; n <= top; ++n)
    off[n + 1] = off[n] + static_cast<long long>(a.at[n].size) * opow(set_size, n);
  Dsu dsu(off[top + 1]);
  for (int n = 0; n <= top; ++n) {
    long long kn = opow(set_size, n);
    if (kn == 0 || a.at[n].size == 0) continue;
    const auto& sg = symmetric_group(n);
    for (int g = 0; g < sg.order(); ++g) {
      const Perm& sigma = sg.perm(g);
      std::vector<int> t(n, 0);
      long long trank = 0;
      do {
        long long pulled = 0;
        for (int i = 1; i <= n; ++i) pulled = pulled * set_size + t[sigma(i) - 1];
        for (int e = 0; e < a.at[n].size; ++e)
          dsu.unite(off[n] + static_cast<long long>(a.at[n].action[e][g]) * kn + trank,
                    off[n] + static_cast<long long>(e) * kn + pulled);
        ++trank;
      } while (step_base(t, set_size));
    }
  }
  std::vector<int> cls;
  return dsu_classes(dsu, cls);
}

// --- law re-checkers ---------------------------------------------------------

CheckReport exhaustive_law_check(const Operad& o, const std::string& law) {
  require_known(law, {qo_laws::kInnerEquivariance, qo_laws::kOuterEquivariance,
                      qo_laws::kLeftUnit, qo_laws::kRightUnit, qo_laws::kAssociativity});
  auto want = [&](const std::string& name) { return law.empty() || law == name; };
  CheckReport rep;
  const SymSeq& X = o.seq;
  int N = X.max_arity;
  auto keys = composition_keys(N);
  auto sz = [&](int n) { return n <= N ? X.at[n].size : 0; };
  auto mu = [&](const std::vector<int>& parts, int x, const std::vector<int>& ms) {
    long long idx = x;
    for (size_t i = 0; i < parts.size(); ++i) idx = idx * X.at[parts[i]].size + ms[i];
    return o.mu.at(parts)[static_cast<size_t>(idx)];
  };
  auto tbl = [&](const std::vector<int>& parts) {
    long long t = sz(static_cast<int>(parts.size()));
    for (int p : parts) t *= sz(p);
    return t;
  };

  if (want(qo_laws::kInnerEquivariance)) {
    for (const auto& parts : keys) {
      if (rep.failed(qo_laws::kInnerEquivariance)) break;
      int s = static_cast<int>(parts.size());
      int n = std::accumulate(parts.begin(), parts.end(), 0);
      if (sz(s) == 0 || tbl(parts) == 0) continue;
      std::vector<int> mbases(s), hbases(s);
      for (int i = 0; i < s; ++i) {
        mbases[i] = sz(parts[i]);
        hbases[i] = static_cast<int>(symmetric_group(parts[i]).order());
      }
      for (int x = 0; x < sz(s) && !rep.failed(qo_laws::kInnerEquivariance); ++x) {
        std::vector<int> ms(s, 0);
        do {
          std::vector<int> hs(s, 0);
          do {
            std::vector<int> acted(s);
            std::vector<Perm> hperms(s);
            for (int i = 0; i < s; ++i) {
              acted[i] = X.at[parts[i]].action[ms[i]][hs[i]];
              hperms[i] = symmetric_group(parts[i]).perm(hs[i]);
            }
            int lhs = mu(parts, x, acted);
            Perm hhat = block_perm(parts, hperms);
            int rhs = X.at[n].action[mu(parts, x, ms)][symmetric_group(n).index_of(hhat)];
            ++rep.checked;
            if (lhs != rhs) {
              std::string hw;
              for (const auto& hp : hperms) hw += show_perm(hp);
              rep.fail(qo_laws::kInnerEquivariance,
                       "parts=" + show_ints(parts) + " x=" + show1(x) + " ys=" + show_ints1(ms) +
                           " hs=" + hw);
              break;
            }
          } while (!rep.failed(qo_laws::kInnerEquivariance) && step_mixed(hs, hbases));
        } while (!rep.failed(qo_laws::kInnerEquivariance) && s > 0 && step_mixed(ms, mbases));
      }
    }
  }

  if (want(qo_laws::kOuterEquivariance)) {
    for (const auto& parts : keys) {
      if (rep.failed(qo_laws::kOuterEquivariance)) break;
      int s = static_cast<int>(parts.size());
      int n = std::accumulate(parts.begin(), parts.end(), 0);
      if (sz(s) == 0 || tbl(parts) == 0) continue;
      const auto& sg_s = symmetric_group(s);
      const auto& sg_n = symmetric_group(n);
      std::vector<int> mbases(s);
      for (int i = 0; i < s; ++i) mbases[i] = sz(parts[i]);
      for (int x = 0; x < sz(s) && !rep.failed(qo_laws::kOuterEquivariance); ++x) {
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
            int lhs = mu(qparts, X.at[s].action[x][rho_i], ms2);
            int rhs = X.at[n].action[mu(parts, x, ms)][sg_n.index_of(perm_inverse(beta))];
            ++rep.checked;
            if (lhs != rhs) {
              rep.fail(qo_laws::kOuterEquivariance,
                       "parts=" + show_ints(parts) + " x=" + show1(x) + " ys=" + show_ints1(ms) +
                           " rho=" + show_perm(rho));
              break;
            }
          }
        } while (!rep.failed(qo_laws::kOuterEquivariance) && s > 0 && step_mixed(ms, mbases));
      }
    }
  }

  if (want(qo_laws::kLeftUnit)) {
    for (int n = 0; n <= N && !rep.failed(qo_laws::kLeftUnit); ++n)
      for (int y = 0; y < sz(n); ++y) {
        ++rep.checked;
        if (mu({n}, o.unit, {y}) != y) {
          rep.fail(qo_laws::kLeftUnit, "n=" + std::to_string(n) + " y=" + show1(y));
          break;
        }
      }
  }

  if (want(qo_laws::kRightUnit)) {
    for (int n = 0; n <= N && !rep.failed(qo_laws::kRightUnit); ++n) {
      std::vector<int> parts(n, 1), units(n, o.unit);
      for (int x = 0; x < sz(n); ++x) {
        ++rep.checked;
        if (mu(parts, x, units) != x) {
          rep.fail(qo_laws::kRightUnit, "n=" + std::to_string(n) + " x=" + show1(x));
          break;
        }
      }
    }
  }

  if (want(qo_laws::kAssociativity)) {
    for (const auto& parts : keys) {
      if (rep.failed(qo_laws::kAssociativity)) break;
      int s = static_cast<int>(parts.size());
      int m = std::accumulate(parts.begin(), parts.end(), 0);
      if (sz(s) == 0 || tbl(parts) == 0) continue;
      auto starts = block_starts(parts);
      std::vector<int> mbases(s);
      for (int i = 0; i < s; ++i) mbases[i] = sz(parts[i]);
      std::vector<int> inner(m, 0);
      auto inner_rec = [&](auto&& self, int pos, int left) -> void {
        if (rep.failed(qo_laws::kAssociativity)) return;
        if (pos == m) {
          std::vector<int> zbases(m);
          bool inhabited = true;
          for (int j = 0; j < m; ++j) {
            zbases[j] = sz(inner[j]);
            if (zbases[j] == 0) inhabited = false;
          }
          if (!inhabited) return;
          std::vector<int> outer_parts(s);
          std::vector<std::vector<int>> blocks(s);
          for (int i = 0; i < s; ++i) {
            blocks[i] =
                std::vector<int>(inner.begin() + starts[i], inner.begin() + starts[i] + parts[i]);
            outer_parts[i] = std::accumulate(blocks[i].begin(), blocks[i].end(), 0);
          }
          for (int x = 0; x < sz(s) && !rep.failed(qo_laws::kAssociativity); ++x) {
            std::vector<int> ms(s, 0);
            do {
              std::vector<int> zs(m, 0);
              do {
                int w = mu(parts, x, ms);
                int lhs = mu(inner, w, zs);
                std::vector<int> vs(s);
                for (int i = 0; i < s; ++i) {
                  std::vector<int> zblock(zs.begin() + starts[i],
                                          zs.begin() + starts[i] + parts[i]);
                  vs[i] = mu(blocks[i], ms[i], zblock);
                }
                int rhs = mu(outer_parts, x, vs);
                ++rep.checked;
                if (lhs != rhs) {
                  rep.fail(qo_laws::kAssociativity,
                           "parts=" + show_ints(parts) + " inner=" + show_ints(inner) + " x=" +
                               show1(x) + " ys=" + show_ints1(ms) + " zs=" + show_ints1(zs));
                  break;
                }
              } while (!rep.failed(qo_laws::kAssociativity) && m > 0 && step_mixed(zs, zbases));
            } while (!rep.failed(qo_laws::kAssociativity) && s > 0 && step_mixed(ms, mbases));
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
  }
  return rep;
}

CheckReport exhaustive_law_check(const AlgebraicMonad& mon, const std::string& law) {
  require_known(law, {qc_laws::kLeftUnit, qc_laws::kRightUnit, qc_laws::kMuNaturality,
                      qc_laws::kMuCompatibility, qc_laws::kAssociativity});
  auto want = [&](const std::string& name) { return law.empty() || law == name; };
  CheckReport rep;
  const FinFunctor& F = mon.functor;
  int top = F.max_arity;
  auto sub = [&](int p, int n, int t, const std::vector<int>& vs) {
    long long kn = 1;
    for (int i = 0; i < p; ++i) kn *= F.sizes[n];
    long long idx = static_cast<long long>(t) * kn;
    long long tr = 0;
    for (int v : vs) tr = tr * F.sizes[n] + v;
    return mon.subs[p][n][static_cast<size_t>(idx + tr)];
  };

  if (want(qc_laws::kLeftUnit)) {
    bool hit = false;
    for (int n = 0; n <= top && !hit; ++n)
      for (int t = 0; t < F.sizes[n]; ++t) {
        ++rep.checked;
        if (sub(1, n, mon.unit, {t}) != t) {
          rep.fail(qc_laws::kLeftUnit, "n=" + std::to_string(n) + " t=" + show1(t));
          hit = true;
          break;
        }
      }
  }

  if (want(qc_laws::kRightUnit)) {
    bool hit = false;
    for (int p = 0; p <= top && !hit; ++p) {
      std::vector<int> gens(p);
      for (int i = 1; i <= p; ++i)
        gens[i - 1] = F.transitions[1][p][static_cast<size_t>(map_rank(FinMap{1, p, {i}}))]
                                   [static_cast<size_t>(mon.unit)];
      for (int t = 0; t < F.sizes[p]; ++t) {
        ++rep.checked;
        if (sub(p, p, t, gens) != t) {
          rep.fail(qc_laws::kRightUnit, "p=" + std::to_string(p) + " t=" + show1(t));
          hit = true;
          break;
        }
      }
    }
  }

  if (want(qc_laws::kMuNaturality)) {
    bool hit = false;
    for (int p = 0; p <= top && !hit; ++p)
      for (int n = 0; n <= top && !hit; ++n)
        for (int np = 0; np <= top && !hit; ++np) {
          long long fc = map_count(n, np);
          for (long long fr = 0; fr < fc && !hit; ++fr) {
            FinMap fm = map_from_rank(n, np, fr);
            const auto& tf = F.transitions[n][np][static_cast<size_t>(fr)];
            std::vector<int> vs2(p);
            for (int t = 0; t < F.sizes[p] && !hit; ++t) {
              std::vector<int> vs(p, 0);
              if (opow(F.sizes[n], p) == 0) continue;
              do {
                ++rep.checked;
                for (int i = 0; i < p; ++i) vs2[i] = tf[vs[i]];
                if (tf[sub(p, n, t, vs)] != sub(p, np, t, vs2)) {
                  rep.fail(qc_laws::kMuNaturality,
                           "p=" + std::to_string(p) + " n=" + std::to_string(n) + " np=" +
                               std::to_string(np) + " f=" + show_map(fm) + " t=" + show1(t) +
                               " vs=" + show_ints1(vs));
                  hit = true;
                  break;
                }
              } while (step_base(vs, F.sizes[n]));
            }
          }
        }
  }

  if (want(qc_laws::kMuCompatibility)) {
    bool hit = false;
    for (int p = 0; p <= top && !hit; ++p)
      for (int q = 0; q <= top && !hit; ++q) {
        long long pc = map_count(p, q);
        for (long long pr = 0; pr < pc && !hit; ++pr) {
          FinMap phi = map_from_rank(p, q, pr);
          const auto& tphi = F.transitions[p][q][static_cast<size_t>(pr)];
          std::vector<int> pulled(p);
          for (int n = 0; n <= top && !hit; ++n)
            for (int t = 0; t < F.sizes[p] && !hit; ++t) {
              std::vector<int> vs(q, 0);
              if (opow(F.sizes[n], q) == 0) continue;
              do {
                ++rep.checked;
                for (int i = 1; i <= p; ++i) pulled[i - 1] = vs[phi(i) - 1];
                if (sub(q, n, tphi[t], vs) != sub(p, n, t, pulled)) {
                  rep.fail(qc_laws::kMuCompatibility,
                           "p=" + std::to_string(p) + " q=" + std::to_string(q) + " phi=" +
                               show_map(phi) + " n=" + std::to_string(n) + " t=" + show1(t) +
                               " vs=" + show_ints1(vs));
                  hit = true;
                  break;
                }
              } while (step_base(vs, F.sizes[n]));
            }
        }
      }
  }

  if (want(qc_laws::kAssociativity)) {
    bool hit = false;
    for (int q = 0; q <= top && !hit; ++q)
      for (int p = 0; p <= top && !hit; ++p)
        for (int n = 0; n <= top && !hit; ++n) {
          std::vector<int> inner(q);
          for (int t = 0; t < F.sizes[q] && !hit; ++t) {
            std::vector<int> us(q, 0);
            if (opow(F.sizes[p], q) == 0) continue;
            do {
              std::vector<int> vs(p, 0);
              if (opow(F.sizes[n], p) == 0) continue;
              int head = sub(q, p, t, us);
              do {
                ++rep.checked;
                for (int j = 0; j < q; ++j) inner[j] = sub(p, n, us[j], vs);
                if (sub(p, n, head, vs) != sub(q, n, t, inner)) {
                  rep.fail(qc_laws::kAssociativity,
                           "q=" + std::to_string(q) + " p=" + std::to_string(p) + " n=" +
                               std::to_string(n) + " t=" + show1(t) + " us=" + show_ints1(us) +
                               " vs=" + show_ints1(vs));
                  hit = true;
                  break;
                }
              } while (step_base(vs, F.sizes[n]));
            } while (!hit && step_base(us, F.sizes[p]));
          }
        }
  }
  return rep;
}

CheckReport exhaustive_law_check(const AlgebraicMonad& mon, const SigmaModule& mod,
                                 const std::string& law) {
  require_known(law, {qc_module_laws::kUnit, qc_module_laws::kAssociativity});
  auto want = [&](const std::string& name) { return law.empty() || law == name; };
  CheckReport rep;
  const FinFunctor& F = mon.functor;
  int top = F.max_arity;
  if (mod.carrier < 0 || mod.carrier > top) {
    rep.fail("shape", "carrier size out of range");
    return rep;
  }
  if (static_cast<int>(mod.action.size()) != F.sizes[mod.carrier]) {
    rep.fail("shape", "action table length");
    return rep;
  }
  for (int v : mod.action)
    if (v < 0 || v >= mod.carrier) {
      rep.fail("shape", "action entry out of range");
      return rep;
    }
  auto sub = [&](int p, int n, int t, const std::vector<int>& vs) {
    long long kn = 1;
    for (int i = 0; i < p; ++i) kn *= F.sizes[n];
    long long tr = 0;
    for (int v : vs) tr = tr * F.sizes[n] + v;
    return mon.subs[p][n][static_cast<size_t>(static_cast<long long>(t) * kn + tr)];
  };

  int msize = mod.carrier;
  if (want(qc_module_laws::kUnit)) {
    for (int x = 0; x < msize; ++x) {
      ++rep.checked;
      int e = F.transitions[1][msize][static_cast<size_t>(map_rank(FinMap{1, msize, {x + 1}}))]
                           [static_cast<size_t>(mon.unit)];
      if (mod.action[e] != x) {
        rep.fail(qc_module_laws::kUnit, "x=" + show1(x));
        break;
      }
    }
  }

  if (!want(qc_module_laws::kAssociativity)) return rep;
  int evaluated = F.sizes[msize];
  if (evaluated > top) {
    ++rep.skipped;
    rep.notes.push_back("partial: evaluated carrier has " + std::to_string(evaluated) +
                        " elements, above the arity bound " + std::to_string(top) +
                        "; associativity not checked");
    return rep;
  }
  std::vector<int> alpha_images(evaluated);
  for (int t = 0; t < evaluated; ++t) alpha_images[t] = mod.action[t] + 1;
  const auto& talpha =
      F.transitions[evaluated][msize]
                   [static_cast<size_t>(map_rank(FinMap{evaluated, msize, alpha_images}))];
  std::vector<int> iota(evaluated);
  for (int j = 0; j < evaluated; ++j) iota[j] = j;
  for (int t = 0; t < F.sizes[evaluated]; ++t) {
    ++rep.checked;
    if (mod.action[talpha[t]] != mod.action[sub(evaluated, msize, t, iota)]) {
      rep.fail(qc_module_laws::kAssociativity, "t=" + show1(t));
      break;
    }
  }
  return rep;
}

CheckReport exhaustive_law_check(const CommAlgObject& a, const std::string& law) {
  require_known(law, {qa_alg_laws::kNaturality, qa_alg_laws::kCommutativity,
                      qa_alg_laws::kAssociativity, qa_alg_laws::kUnit});
  auto want = [&](const std::string& name) { return law.empty() || law == name; };
  CheckReport rep;
  const FinPresheaf& P = a.presheaf;
  int top = P.max_arity;
  auto tms = [&](int p, int q, int x, int y) {
    return a.mult[p][q][static_cast<size_t>(x) * P.sizes[q] + y];
  };

  if (want(qa_alg_laws::kNaturality)) {
    bool hit = false;
    for (int p = 0; p <= top && !hit; ++p)
      for (int q = 0; p + q <= top && !hit; ++q)
        for (int pp = 0; pp <= top && !hit; ++pp)
          for (int qp = 0; pp + qp <= top && !hit; ++qp)
            for (long long fr = 0; fr < map_count(p, pp) && !hit; ++fr) {
              FinMap f = map_from_rank(p, pp, fr);
              const auto& tf = P.restrictions[p][pp][static_cast<size_t>(fr)];
              for (long long gr = 0; gr < map_count(q, qp) && !hit; ++gr) {
                FinMap g = map_from_rank(q, qp, gr);
                const auto& tg = P.restrictions[q][qp][static_cast<size_t>(gr)];
                FinMap fg = block_sum({f, g});
                const auto& tfg =
                    P.restrictions[fg.dom][fg.cod][static_cast<size_t>(map_rank(fg))];
                for (int x = 0; x < P.sizes[pp] && !hit; ++x)
                  for (int y = 0; y < P.sizes[qp]; ++y) {
                    ++rep.checked;
                    if (tfg[tms(pp, qp, x, y)] != tms(p, q, tf[x], tg[y])) {
                      rep.fail(qa_alg_laws::kNaturality,
                               "p=" + std::to_string(p) + " q=" + std::to_string(q) + " pp=" +
                                   std::to_string(pp) + " qp=" + std::to_string(qp) + " f=" +
                                   show_map(f) + " g=" + show_map(g) + " x=" + show1(x) +
                                   " y=" + show1(y));
                      hit = true;
                      break;
                    }
                  }
              }
            }
  }

  if (want(qa_alg_laws::kCommutativity)) {
    bool hit = false;
    for (int p = 0; p <= top && !hit; ++p)
      for (int q = 0; p + q <= top && !hit; ++q) {
        Perm tau{std::vector<int>(static_cast<size_t>(p + q))};
        for (int j = 1; j <= q; ++j) tau.images[j - 1] = p + j;
        for (int i = 1; i <= p; ++i) tau.images[q + i - 1] = i;
        FinMap tm = perm_to_map(tau);
        const auto& tt = P.restrictions[tm.dom][tm.cod][static_cast<size_t>(map_rank(tm))];
        for (int x = 0; x < P.sizes[p] && !hit; ++x)
          for (int y = 0; y < P.sizes[q]; ++y) {
            ++rep.checked;
            if (tt[tms(p, q, x, y)] != tms(q, p, y, x)) {
              rep.fail(qa_alg_laws::kCommutativity,
                       "p=" + std::to_string(p) + " q=" + std::to_string(q) + " x=" + show1(x) +
                           " y=" + show1(y));
              hit = true;
              break;
            }
          }
      }
  }

  if (want(qa_alg_laws::kAssociativity)) {
    bool hit = false;
    for (int p = 0; p <= top && !hit; ++p)
      for (int q = 0; p + q <= top && !hit; ++q)
        for (int r = 0; p + q + r <= top && !hit; ++r)
          for (int x = 0; x < P.sizes[p] && !hit; ++x)
            for (int y = 0; y < P.sizes[q] && !hit; ++y)
              for (int z = 0; z < P.sizes[r]; ++z) {
                ++rep.checked;
                if (tms(p + q, r, tms(p, q, x, y), z) != tms(p, q + r, x, tms(q, r, y, z))) {
                  rep.fail(qa_alg_laws::kAssociativity,
                           "p=" + std::to_string(p) + " q=" + std::to_string(q) + " r=" +
                               std::to_string(r) + " x=" + show1(x) + " y=" + show1(y) +
                               " z=" + show1(z));
                  hit = true;
                  break;
                }
              }
  }

  if (want(qa_alg_laws::kUnit)) {
    bool hit = false;
    for (int p = 0; p <= top && !hit; ++p)
      for (int x = 0; x < P.sizes[p]; ++x) {
        ++rep.checked;
        if (tms(0, p, a.unit_e0, x) != x) {
          rep.fail(qa_alg_laws::kUnit, "left p=" + std::to_string(p) + " x=" + show1(x));
          hit = true;
          break;
        }
        ++rep.checked;
        if (tms(p, 0, x, a.unit_e0) != x) {
          rep.fail(qa_alg_laws::kUnit, "right p=" + std::to_string(p) + " x=" + show1(x));
          hit = true;
          break;
        }
      }
  }
  return rep;
}

CheckReport exhaustive_law_check(const QaAlgebrad& s, const std::string& law) {
  require_known(law, {qa_algebrad_laws::kMuNaturality, qa_algebrad_laws::kMuSubstitutionCompat,
                      qa_algebrad_laws::kMultMorphism, qa_algebrad_laws::kOuterUnit,
                      qa_algebrad_laws::kInnerUnit, qa_algebrad_laws::kAssociativity});
  auto want = [&](const std::string& name) { return law.empty() || law == name; };
  CheckReport rep;
  const FinPresheaf& P = s.algebra.presheaf;
  int top = P.max_arity;
  auto keys = composition_keys(top);
  auto sub = [&](const std::vector<int>& parts, int x, const std::vector<int>& ys) {
    long long idx = x;
    for (size_t i = 0; i < parts.size(); ++i) idx = idx * P.sizes[parts[i]] + ys[i];
    return s.subs.at(parts)[static_cast<size_t>(idx)];
  };
  auto tms = [&](int p, int q, int x, int y) {
    return s.algebra.mult[p][q][static_cast<size_t>(x) * P.sizes[q] + y];
  };
  std::vector<std::vector<std::vector<int>>> keys_by_length(top + 1);
  for (const auto& k : keys) keys_by_length[k.size()].push_back(k);

  if (want(qa_algebrad_laws::kMuNaturality)) {
    bool hit = false;
    for (const auto& parts : keys) {
      if (hit) break;
      int m = static_cast<int>(parts.size());
      for (const auto& parts2 : keys_by_length[m]) {
        if (hit) break;
        std::vector<long long> fcnt(m);
        bool possible = true;
        for (int i = 0; i < m; ++i) {
          fcnt[i] = map_count(parts[i], parts2[i]);
          if (fcnt[i] == 0) possible = false;
        }
        if (!possible) continue;
        std::vector<int> franks(m, 0);
        std::vector<int> fradix(m);
        for (int i = 0; i < m; ++i) fradix[i] = static_cast<int>(fcnt[i]);
        do {
          std::vector<FinMap> fs(m);
          std::vector<const std::vector<int>*> tf(m);
          for (int i = 0; i < m; ++i) {
            fs[i] = map_from_rank(parts[i], parts2[i], franks[i]);
            tf[i] = &P.restrictions[parts[i]][parts2[i]][static_cast<size_t>(franks[i])];
          }
          FinMap big = m > 0 ? block_sum(fs) : identity_map(0);
          const auto& tbig = P.restrictions[big.dom][big.cod][static_cast<size_t>(map_rank(big))];
          std::vector<int> ys(m), ys2(m, 0);
          std::vector<int> yradix(m);
          for (int i = 0; i < m; ++i) yradix[i] = P.sizes[parts2[i]];
          bool empty_inner = false;
          for (int i = 0; i < m; ++i)
            if (yradix[i] == 0) empty_inner = true;
          if (empty_inner) continue;
          for (int x = 0; x < P.sizes[m] && !hit; ++x) {
            std::fill(ys2.begin(), ys2.end(), 0);
            do {
              ++rep.checked;
              for (int i = 0; i < m; ++i) ys[i] = (*tf[i])[ys2[i]];
              int lhs = sub(parts, x, ys);
              int rhs = tbig[sub(parts2, x, ys2)];
              if (lhs != rhs) {
                rep.fail(qa_algebrad_laws::kMuNaturality,
                         "parts=" + show_ints(parts) + " parts2=" + show_ints(parts2) + " fs=" +
                             show_maps(fs) + " x=" + show1(x) + " ys=" + show_ints1(ys2));
                hit = true;
                break;
              }
            } while (step_mixed(ys2, yradix));
          }
        } while (step_mixed(franks, fradix) && !hit);
      }
    }
  }

  if (want(qa_algebrad_laws::kMuSubstitutionCompat)) {
    bool hit = false;
    for (int m = 0; m <= top && !hit; ++m)
      for (int n = 0; n <= top && !hit; ++n)
        for (long long phir = 0; phir < map_count(m, n) && !hit; ++phir) {
          FinMap phi = map_from_rank(m, n, phir);
          const auto& tphi = P.restrictions[m][n][static_cast<size_t>(phir)];
          auto factored = monotone_perm_factor(phi);
          const Perm& sigma = factored.second;
          std::vector<std::vector<int>> fibre(n);
          for (int i = 1; i <= m; ++i) fibre[phi(i) - 1].push_back(i);
          for (const auto& parts : keys_by_length[m]) {
            if (hit) break;
            int total = 0;
            for (int p : parts) total += p;
            std::vector<int> grouped(n);
            for (int j = 0; j < n; ++j) {
              grouped[j] = 0;
              for (int i : fibre[j]) grouped[j] += parts[i - 1];
            }
            const std::vector<int>* tg = nullptr;
            if (total > 0 && m > 0) {
              Perm g = perm_inverse(block_transport_perm(parts, sigma));
              FinMap gm = perm_to_map(g);
              tg = &P.restrictions[gm.dom][gm.cod][static_cast<size_t>(map_rank(gm))];
            }
            std::vector<int> yradix(m);
            bool empty_inner = false;
            for (int i = 0; i < m; ++i) {
              yradix[i] = P.sizes[parts[i]];
              if (yradix[i] == 0) empty_inner = true;
            }
            if (empty_inner) continue;
            std::vector<int> ys(m, 0), zs(n);
            for (int x = 0; x < P.sizes[n] && !hit; ++x) {
              std::fill(ys.begin(), ys.end(), 0);
              do {
                ++rep.checked;
                for (int j = 0; j < n; ++j) {
                  int acc = s.algebra.unit_e0;
                  int acc_size = 0;
                  for (int i : fibre[j]) {
                    acc = acc_size == 0 && !fibre[j].empty() && i == fibre[j].front()
                              ? ys[i - 1]
                              : tms(acc_size, parts[i - 1], acc, ys[i - 1]);
                    acc_size += parts[i - 1];
                  }
                  zs[j] = acc;
                }
                int lhs = sub(parts, tphi[x], ys);
                int r = sub(grouped, x, zs);
                int rhs = tg ? (*tg)[r] : r;
                if (lhs != rhs) {
                  rep.fail(qa_algebrad_laws::kMuSubstitutionCompat,
                           "m=" + std::to_string(m) + " n=" + std::to_string(n) + " phi=" +
                               show_map(phi) + " parts=" + show_ints(parts) + " x=" + show1(x) +
                               " ys=" + show_ints1(ys));
                  hit = true;
                  break;
                }
              } while (step_mixed(ys, yradix));
            }
          }
        }
  }

  if (want(qa_algebrad_laws::kMultMorphism)) {
    bool hit = false;
    for (const auto& parts : keys) {
      if (hit) break;
      int n = static_cast<int>(parts.size());
      int total = 0;
      for (int p : parts) total += p;
      for (const auto& parts2 : keys) {
        if (hit) break;
        int n2 = static_cast<int>(parts2.size());
        int total2 = 0;
        for (int p : parts2) total2 += p;
        if (n + n2 > top || total + total2 > top) continue;
        std::vector<int> cat = parts;
        cat.insert(cat.end(), parts2.begin(), parts2.end());
        std::vector<int> yradix(n), yradix2(n2);
        bool empty_inner = false;
        for (int i = 0; i < n; ++i) {
          yradix[i] = P.sizes[parts[i]];
          if (yradix[i] == 0) empty_inner = true;
        }
        for (int i = 0; i < n2; ++i) {
          yradix2[i] = P.sizes[parts2[i]];
          if (yradix2[i] == 0) empty_inner = true;
        }
        if (empty_inner) continue;
        std::vector<int> ys(n, 0), ys2(n2, 0), ycat(n + n2);
        for (int x = 0; x < P.sizes[n] && !hit; ++x)
          for (int x2 = 0; x2 < P.sizes[n2] && !hit; ++x2) {
            std::fill(ys.begin(), ys.end(), 0);
            do {
              if (hit) break;
              std::fill(ys2.begin(), ys2.end(), 0);
              do {
                ++rep.checked;
                for (int i = 0; i < n; ++i) ycat[i] = ys[i];
                for (int i = 0; i < n2; ++i) ycat[n + i] = ys2[i];
                int lhs = tms(total, total2, sub(parts, x, ys), sub(parts2, x2, ys2));
                int rhs = sub(cat, tms(n, n2, x, x2), ycat);
                if (lhs != rhs) {
                  rep.fail(qa_algebrad_laws::kMultMorphism,
                           "parts=" + show_ints(parts) + " parts2=" + show_ints(parts2) + " x=" +
                               show1(x) + " x2=" + show1(x2) + " ys=" + show_ints1(ys) +
                               " ys2=" + show_ints1(ys2));
                  hit = true;
                  break;
                }
              } while (step_mixed(ys2, yradix2));
            } while (step_mixed(ys, yradix));
          }
      }
    }
  }

  if (want(qa_algebrad_laws::kOuterUnit)) {
    bool hit = false;
    for (int p = 0; p <= top && top >= 1 && !hit; ++p) {
      std::vector<int> key{p};
      for (int y = 0; y < P.sizes[p]; ++y) {
        ++rep.checked;
        if (sub(key, s.unit, {y}) != y) {
          rep.fail(qa_algebrad_laws::kOuterUnit,
                   "p=" + std::to_string(p) + " y=" + show1(y));
          hit = true;
          break;
        }
      }
    }
  }

  if (want(qa_algebrad_laws::kInnerUnit)) {
    bool hit = false;
    for (int n = 0; n <= top && !hit; ++n) {
      std::vector<int> key(n, 1);
      std::vector<int> units(n, s.unit);
      for (int x = 0; x < P.sizes[n]; ++x) {
        ++rep.checked;
        if (sub(key, x, units) != x) {
          rep.fail(qa_algebrad_laws::kInnerUnit,
                   "n=" + std::to_string(n) + " x=" + show1(x));
          hit = true;
          break;
        }
      }
    }
  }

  if (want(qa_algebrad_laws::kAssociativity)) {
    bool hit = false;
    for (const auto& parts : keys) {
      if (hit) break;
      int n = static_cast<int>(parts.size());
      int total = 0;
      for (int p : parts) total += p;
      std::vector<int> yradix(n);
      bool empty_inner = false;
      for (int i = 0; i < n; ++i) {
        yradix[i] = P.sizes[parts[i]];
        if (yradix[i] == 0) empty_inner = true;
      }
      if (empty_inner) continue;
      for (const auto& inner : all_bounded_tuples(total, top)) {
        if (hit) break;
        std::vector<int> zradix(total);
        bool empty_z = false;
        for (int t = 0; t < total; ++t) {
          zradix[t] = P.sizes[inner[t]];
          if (zradix[t] == 0) empty_z = true;
        }
        if (empty_z) continue;
        std::vector<std::vector<int>> slice(n);
        std::vector<int> sums(n);
        {
          int pos = 0;
          for (int i = 0; i < n; ++i) {
            slice[i].assign(inner.begin() + pos, inner.begin() + pos + parts[i]);
            sums[i] = 0;
            for (int r : slice[i]) sums[i] += r;
            pos += parts[i];
          }
        }
        std::vector<int> ys(n, 0), zs(total, 0), us(n);
        for (int x = 0; x < P.sizes[n] && !hit; ++x) {
          std::fill(ys.begin(), ys.end(), 0);
          do {
            if (hit) break;
            std::fill(zs.begin(), zs.end(), 0);
            do {
              ++rep.checked;
              int w = sub(parts, x, ys);
              int lhs = sub(inner, w, zs);
              int pos = 0;
              for (int i = 0; i < n; ++i) {
                std::vector<int> zslice(zs.begin() + pos, zs.begin() + pos + parts[i]);
                us[i] = sub(slice[i], ys[i], zslice);
                pos += parts[i];
              }
              int rhs = sub(sums, x, us);
              if (lhs != rhs) {
                rep.fail(qa_algebrad_laws::kAssociativity,
                         "parts=" + show_ints(parts) + " inner=" + show_ints(inner) + " x=" +
                             show1(x) + " ys=" + show_ints1(ys) + " zs=" + show_ints1(zs));
                hit = true;
                break;
              }
            } while (step_mixed(zs, zradix));
          } while (step_mixed(ys, yradix));
        }
      }
    }
  }
  return rep;
}

// --- equivariant bijections ---------------------------------------------------

std::optional<std::vector<int>> bijection_search(const GSet& x, const GSet& y) {
  if (x.arity != y.arity) throw DomainError("bijection search: arities differ");
  if (x.size > 12 || y.size > 12) throw CapacityError("bijection search capped at 12 elements");
  if (x.size != y.size) return std::nullopt;
  const auto& gens = symmetric_group(x.arity).generators();
  int sz = x.size;
  std::vector<int> f(sz, -1);
  std::vector<char> used(sz, 0);
  auto dfs = [&](auto&& self, int a) -> bool {
    if (a == sz) return true;
    for (int v = 0; v < sz; ++v) {
      if (used[v]) continue;
      f[a] = v;
      used[v] = 1;
      bool ok = true;
      for (int g : gens) {
        int img = x.action[a][g];
        if (img <= a && f[img] != y.action[v][g]) {
          ok = false;
          break;
        }
        for (int b = 0; b < a && ok; ++b)
          if (x.action[b][g] == a && y.action[f[b]][g] != v) ok = false;
        if (!ok) break;
      }
      if (ok && self(self, a + 1)) return true;
      used[v] = 0;
      f[a] = -1;
    }
    return false;
  };
  if (dfs(dfs, 0)) return f;
  return std::nullopt;
}

} // namespace fincat
