#include "fincat/qa.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>

#include "fincat/error.hpp"
#include "fincat/qo.hpp"

namespace fincat {

namespace {

void check_bound(int max_arity) {
  if (max_arity < 0 || max_arity > kArityCap)
    throw CapacityError("arity bound " + std::to_string(max_arity) + " outside [0, " +
                        std::to_string(kArityCap) + "]");
}

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// mixed-radix odometer over 0..radix(i)-1, last position fastest
bool next_in_radices(std::vector<int>& t, const std::vector<int>& radices) {
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    if (++t[i] < radices[i]) return true;
    t[i] = 0;
  }
  return false;
}

int popcount_int(int code) { return std::popcount(static_cast<unsigned>(code)); }

// 1-based position of element i inside the subset coded by `code`
int rank_in_subset(int code, int i) {
  return popcount_int(code & ((1 << (i - 1)) - 1)) + 1;
}

// ascending elements of the subset coded by `code` within 1..n
std::vector<int> subset_elements(int code, int n) {
  std::vector<int> out;
  for (int i = 1; i <= n; ++i)
    if (code & (1 << (i - 1))) out.push_back(i);
  return out;
}

} // namespace

// --- presheaves ---------------------------------------------------------

FinPresheaf make_presheaf(int max_arity, const std::function<int(int)>& carrier_size,
                          const std::function<int(const FinMap&, int)>& pullback) {
  check_bound(max_arity);
  FinPresheaf p;
  p.max_arity = max_arity;
  p.sizes.resize(max_arity + 1);
  for (int n = 0; n <= max_arity; ++n) {
    p.sizes[n] = carrier_size(n);
    if (p.sizes[n] < 0) throw DomainError("presheaf carrier size negative");
  }
  p.restrictions.assign(max_arity + 1, {});
  for (int m = 0; m <= max_arity; ++m) {
    p.restrictions[m].resize(max_arity + 1);
    for (int n = 0; n <= max_arity; ++n) {
      long long cnt = map_count(m, n);
      p.restrictions[m][n].resize(cnt);
      for (long long r = 0; r < cnt; ++r) {
        FinMap f = map_from_rank(m, n, r);
        std::vector<int> table(p.sizes[n]);
        for (int e = 0; e < p.sizes[n]; ++e) {
          int v = pullback(f, e);
          if (v < 0 || v >= p.sizes[m])
            throw DomainError("presheaf pullback value out of range");
          table[e] = v;
        }
        p.restrictions[m][n][r] = std::move(table);
      }
    }
  }
  return p;
}

FinPresheaf constant_presheaf(int value_size, int max_arity) {
  return make_presheaf(
      max_arity, [&](int) { return value_size; }, [](const FinMap&, int e) { return e; });
}

FinPresheaf unit_presheaf(int max_arity) {
  return make_presheaf(
      max_arity, [](int n) { return n == 0 ? 1 : 0; }, [](const FinMap&, int e) { return e; });
}

FinPresheaf representable_presheaf(int k, int max_arity) {
  check_bound(max_arity);
  if (k < 0 || ipow(k, max_arity) > 1'000'000)
    throw CapacityError("representable presheaf carrier too large");
  return make_presheaf(
      max_arity, [&](int n) { return static_cast<int>(ipow(k, n)); },
      [&](const FinMap& f, int e) {
        // e encodes a map cod -> k; pull back by precomposition with f
        FinMap xi = map_from_rank(f.cod, k, e);
        return static_cast<int>(map_rank(compose_maps(f, xi)));
      });
}

CheckReport validate_presheaf(const FinPresheaf& p) {
  CheckReport rep;
  int top = p.max_arity;
  if (static_cast<int>(p.sizes.size()) != top + 1 ||
      static_cast<int>(p.restrictions.size()) != top + 1) {
    rep.fail(qa_presheaf_laws::kTableShape, "carrier or table count != max_arity + 1");
    return rep;
  }
  for (int m = 0; m <= top; ++m) {
    if (static_cast<int>(p.restrictions[m].size()) != top + 1) {
      rep.fail(qa_presheaf_laws::kTableShape, "table row " + std::to_string(m) + " malformed");
      return rep;
    }
    for (int n = 0; n <= top; ++n) {
      long long cnt = map_count(m, n);
      if (static_cast<long long>(p.restrictions[m][n].size()) != cnt) {
        rep.fail(qa_presheaf_laws::kTableShape,
                 "map table count at (" + std::to_string(m) + "," + std::to_string(n) + ")");
        return rep;
      }
      for (long long r = 0; r < cnt; ++r) {
        const auto& t = p.restrictions[m][n][r];
        if (static_cast<int>(t.size()) != p.sizes[n]) {
          rep.fail(qa_presheaf_laws::kTableShape,
                   "table size at (" + std::to_string(m) + "," + std::to_string(n) + ")");
          return rep;
        }
        for (int v : t)
          if (v < 0 || v >= p.sizes[m]) {
            rep.fail(qa_presheaf_laws::kTableShape,
                     "value out of range at (" + std::to_string(m) + "," + std::to_string(n) + ")");
            return rep;
          }
      }
    }
  }
  bool hit = false;
  for (int n = 0; n <= top && !hit; ++n) {
    const auto& t = p.restriction(identity_map(n));
    for (int e = 0; e < p.sizes[n]; ++e) {
      ++rep.checked;
      if (t[e] != e) {
        rep.fail(qa_presheaf_laws::kIdentity,
                 "n=" + std::to_string(n) + " e=" + std::to_string(e + 1));
        hit = true;
        break;
      }
    }
  }
  hit = false;
  for (int m = 0; m <= top && !hit; ++m)
    for (int n = 0; n <= top && !hit; ++n)
      for (long long fr = 0; fr < map_count(m, n) && !hit; ++fr) {
        FinMap f = map_from_rank(m, n, fr);
        const auto& tf = p.restrictions[m][n][fr];
        for (int k = 0; k <= top && !hit; ++k)
          for (long long gr = 0; gr < map_count(n, k) && !hit; ++gr) {
            FinMap g = map_from_rank(n, k, gr);
            const auto& tg = p.restrictions[n][k][gr];
            const auto& tfg = p.restriction(compose_maps(f, g));
            for (int e = 0; e < p.sizes[k]; ++e) {
              ++rep.checked;
              if (tfg[e] != tf[tg[e]]) {
                rep.fail(qa_presheaf_laws::kComposition,
                         "m=" + std::to_string(m) + " n=" + std::to_string(n) + " k=" +
                             std::to_string(k) + " f=" + show_map(f) + " g=" + show_map(g) +
                             " e=" + std::to_string(e + 1));
                hit = true;
                break;
              }
            }
          }
      }
  return rep;
}

// --- day tensor ---------------------------------------------------------

namespace {

struct DayLayout {
  int level = 0;
  std::vector<long long> offset; // per subset code
  long long total = 0;
};

DayLayout day_layout(const FinPresheaf& p, const FinPresheaf& q, int n) {
  DayLayout lay;
  lay.level = n;
  lay.offset.resize(1 << n);
  long long acc = 0;
  for (int u = 0; u < (1 << n); ++u) {
    lay.offset[u] = acc;
    acc += static_cast<long long>(p.size(popcount_int(u))) * q.size(n - popcount_int(u));
  }
  lay.total = acc;
  return lay;
}

} // namespace

FinPresheaf day_tensor(const FinPresheaf& p, const FinPresheaf& q) {
  if (p.max_arity != q.max_arity) throw DomainError("day tensor: arity bounds differ");
  int top = p.max_arity;
  std::vector<DayLayout> layouts;
  for (int n = 0; n <= top; ++n) layouts.push_back(day_layout(p, q, n));
  for (const auto& lay : layouts)
    if (lay.total > 50'000'000) throw CapacityError("day tensor carrier too large");

  return make_presheaf(
      top, [&](int n) { return static_cast<int>(layouts[n].total); },
      [&](const FinMap& f, int e) {
        int n = f.cod, m = f.dom;
        const DayLayout& ln = layouts[n];
        int u = static_cast<int>(ln.offset.size()) - 1;
        while (ln.offset[u] > e) --u;
        long long rem = e - ln.offset[u];
        int pu = popcount_int(u);
        int qs = q.size(n - pu);
        int x = static_cast<int>(rem / qs);
        int y = static_cast<int>(rem % qs);
        int up = 0;
        for (int i = 1; i <= m; ++i)
          if (u & (1 << (f(i) - 1))) up |= 1 << (i - 1);
        int comp_n = ((1 << n) - 1) & ~u;
        int comp_m = ((1 << m) - 1) & ~up;
        FinMap fu{popcount_int(up), pu, {}};
        for (int i : subset_elements(up, m)) fu.images.push_back(rank_in_subset(u, f(i)));
        FinMap fv{popcount_int(comp_m), popcount_int(comp_n), {}};
        for (int i : subset_elements(comp_m, m)) fv.images.push_back(rank_in_subset(comp_n, f(i)));
        int xm = p.pull(fu, x);
        int ym = q.pull(fv, y);
        return static_cast<int>(layouts[m].offset[up] +
                                static_cast<long long>(xm) * q.size(m - popcount_int(up)) + ym);
      });
}

// --- commutative monoids --------------------------------------------------

FiniteCommMonoid trivial_monoid() { return {1, 0, {0}}; }

FiniteCommMonoid and_monoid() { return {2, 1, {0, 0, 0, 1}}; }

FiniteCommMonoid cyclic_monoid(int k) {
  if (k < 1 || k > 64) throw DomainError("cyclic monoid size out of range");
  FiniteCommMonoid m{k, 0, {}};
  m.mult.resize(static_cast<size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) m.mult[a * k + b] = (a + b) % k;
  return m;
}

FiniteCommMonoid product_monoid(const FiniteCommMonoid& a, const FiniteCommMonoid& b) {
  FiniteCommMonoid m{a.size * b.size, a.e * b.size + b.e, {}};
  m.mult.resize(static_cast<size_t>(m.size) * m.size);
  for (int x = 0; x < m.size; ++x)
    for (int y = 0; y < m.size; ++y)
      m.mult[x * m.size + y] =
          a.times(x / b.size, y / b.size) * b.size + b.times(x % b.size, y % b.size);
  return m;
}

CheckReport validate_comm_monoid(const FiniteCommMonoid& m) {
  CheckReport rep;
  if (m.size < 1 || m.e < 0 || m.e >= m.size ||
      static_cast<int>(m.mult.size()) != m.size * m.size) {
    rep.fail("shape", "multiplication table malformed");
    return rep;
  }
  for (int v : m.mult)
    if (v < 0 || v >= m.size) {
      rep.fail("shape", "multiplication value out of range");
      return rep;
    }
  for (int a = 0; a < m.size; ++a) {
    ++rep.checked;
    if (m.times(m.e, a) != a || m.times(a, m.e) != a) {
      rep.fail("unit", "a=" + std::to_string(a + 1));
      break;
    }
  }
  bool hit = false;
  for (int a = 0; a < m.size && !hit; ++a)
    for (int b = 0; b < m.size; ++b) {
      ++rep.checked;
      if (m.times(a, b) != m.times(b, a)) {
        rep.fail("commutativity", "a=" + std::to_string(a + 1) + " b=" + std::to_string(b + 1));
        hit = true;
        break;
      }
    }
  hit = false;
  for (int a = 0; a < m.size && !hit; ++a)
    for (int b = 0; b < m.size && !hit; ++b)
      for (int c = 0; c < m.size; ++c) {
        ++rep.checked;
        if (m.times(m.times(a, b), c) != m.times(a, m.times(b, c))) {
          rep.fail("associativity", "a=" + std::to_string(a + 1) + " b=" + std::to_string(b + 1) +
                                        " c=" + std::to_string(c + 1));
          hit = true;
          break;
        }
      }
  return rep;
}

// --- commutative algebra objects -----------------------------------------

CommAlgObject make_comm_alg(FinPresheaf presheaf, int unit_e0, const QaMultRule& rule) {
  CommAlgObject a{std::move(presheaf), {}, unit_e0};
  int top = a.presheaf.max_arity;
  if (a.presheaf.size(0) < 1) throw DomainError("algebra object needs a unit at arity 0");
  if (unit_e0 < 0 || unit_e0 >= a.presheaf.size(0))
    throw DomainError("algebra unit out of range");
  a.mult.assign(top + 1, std::vector<std::vector<int>>(top + 1));
  for (int p = 0; p <= top; ++p)
    for (int q = 0; p + q <= top; ++q) {
      std::vector<int> table(static_cast<size_t>(a.presheaf.size(p)) * a.presheaf.size(q));
      for (int x = 0; x < a.presheaf.size(p); ++x)
        for (int y = 0; y < a.presheaf.size(q); ++y) {
          int v = rule(p, q, x, y);
          if (v < 0 || v >= a.presheaf.size(p + q))
            throw DomainError("algebra multiplication value out of range");
          table[static_cast<size_t>(x) * a.presheaf.size(q) + y] = v;
        }
      a.mult[p][q] = std::move(table);
    }
  return a;
}

CommAlgObject terminal_comm_alg(int max_arity) {
  return make_comm_alg(constant_presheaf(1, max_arity), 0,
                       [](int, int, int, int) { return 0; });
}

CommAlgObject functions_comm_alg(const FiniteCommMonoid& c, int max_arity) {
  check_bound(max_arity);
  if (ipow(c.size, max_arity) > 1'000'000)
    throw CapacityError("functions algebra carrier too large");
  FinPresheaf p = make_presheaf(
      max_arity, [&](int n) { return static_cast<int>(ipow(c.size, n)); },
      [&](const FinMap& f, int e) {
        std::vector<int> xt = tuple_from_rank(e, f.cod, c.size);
        std::vector<int> out(f.dom);
        for (int i = 1; i <= f.dom; ++i) out[i - 1] = xt[f(i) - 1];
        return static_cast<int>(tuple_rank(out, c.size));
      });
  // concatenation of tuples: x-digits are the leading ones
  return make_comm_alg(std::move(p), 0, [&](int, int q, int x, int y) {
    return static_cast<int>(x * ipow(c.size, q) + y);
  });
}

CheckReport comm_alg_check(const CommAlgObject& a) {
  CheckReport rep;
  const FinPresheaf& P = a.presheaf;
  int top = P.max_arity;
  if (static_cast<int>(a.mult.size()) != top + 1) {
    rep.fail("shape", "multiplication table count != max_arity + 1");
    return rep;
  }
  for (int p = 0; p <= top; ++p) {
    if (static_cast<int>(a.mult[p].size()) != top + 1) {
      rep.fail("shape", "multiplication row " + std::to_string(p) + " malformed");
      return rep;
    }
    for (int q = 0; p + q <= top; ++q) {
      const auto& t = a.mult[p][q];
      if (static_cast<long long>(t.size()) !=
          static_cast<long long>(P.size(p)) * P.size(q)) {
        rep.fail("shape", "multiplication table size at (" + std::to_string(p) + "," +
                              std::to_string(q) + ")");
        return rep;
      }
      for (int v : t)
        if (v < 0 || v >= P.size(p + q)) {
          rep.fail("shape", "multiplication value out of range at (" + std::to_string(p) + "," +
                                std::to_string(q) + ")");
          return rep;
        }
    }
  }
  if (P.size(0) < 1 || a.unit_e0 < 0 || a.unit_e0 >= P.size(0)) {
    rep.fail("shape", "unit element out of range");
    return rep;
  }

  // naturality of the multiplication in both slots
  bool hit = false;
  for (int p = 0; p <= top && !hit; ++p)
    for (int q = 0; p + q <= top && !hit; ++q)
      for (int pp = 0; pp <= top && !hit; ++pp)
        for (int qp = 0; pp + qp <= top && !hit; ++qp)
          for (long long fr = 0; fr < map_count(p, pp) && !hit; ++fr) {
            FinMap f = map_from_rank(p, pp, fr);
            const auto& tf = P.restrictions[p][pp][fr];
            for (long long gr = 0; gr < map_count(q, qp) && !hit; ++gr) {
              FinMap g = map_from_rank(q, qp, gr);
              const auto& tg = P.restrictions[q][qp][gr];
              const auto& tfg = P.restriction(block_sum({f, g}));
              for (int x = 0; x < P.size(pp) && !hit; ++x)
                for (int y = 0; y < P.size(qp); ++y) {
                  ++rep.checked;
                  if (tfg[a.times(pp, qp, x, y)] != a.times(p, q, tf[x], tg[y])) {
                    rep.fail(qa_alg_laws::kNaturality,
                             "p=" + std::to_string(p) + " q=" + std::to_string(q) + " pp=" +
                                 std::to_string(pp) + " qp=" + std::to_string(qp) + " f=" +
                                 show_map(f) + " g=" + show_map(g) + " x=" +
                                 std::to_string(x + 1) + " y=" + std::to_string(y + 1));
                    hit = true;
                    break;
                  }
                }
            }
          }

  // commutativity up to the block swap
  hit = false;
  for (int p = 0; p <= top && !hit; ++p)
    for (int q = 0; p + q <= top && !hit; ++q) {
      // tau: (q+p) -> (p+q), sends the q-block to the back
      Perm tau{std::vector<int>(p + q)};
      for (int j = 1; j <= q; ++j) tau.images[j - 1] = p + j;
      for (int i = 1; i <= p; ++i) tau.images[q + i - 1] = i;
      const auto& tt = P.restriction(perm_to_map(tau));
      for (int x = 0; x < P.size(p) && !hit; ++x)
        for (int y = 0; y < P.size(q); ++y) {
          ++rep.checked;
          if (tt[a.times(p, q, x, y)] != a.times(q, p, y, x)) {
            rep.fail(qa_alg_laws::kCommutativity,
                     "p=" + std::to_string(p) + " q=" + std::to_string(q) + " x=" +
                         std::to_string(x + 1) + " y=" + std::to_string(y + 1));
            hit = true;
            break;
          }
        }
    }

  // associativity
  hit = false;
  for (int p = 0; p <= top && !hit; ++p)
    for (int q = 0; p + q <= top && !hit; ++q)
      for (int r = 0; p + q + r <= top && !hit; ++r)
        for (int x = 0; x < P.size(p) && !hit; ++x)
          for (int y = 0; y < P.size(q) && !hit; ++y)
            for (int z = 0; z < P.size(r); ++z) {
              ++rep.checked;
              if (a.times(p + q, r, a.times(p, q, x, y), z) !=
                  a.times(p, q + r, x, a.times(q, r, y, z))) {
                rep.fail(qa_alg_laws::kAssociativity,
                         "p=" + std::to_string(p) + " q=" + std::to_string(q) + " r=" +
                             std::to_string(r) + " x=" + std::to_string(x + 1) + " y=" +
                             std::to_string(y + 1) + " z=" + std::to_string(z + 1));
                hit = true;
                break;
              }
            }

  // unit on both sides
  hit = false;
  for (int p = 0; p <= top && !hit; ++p)
    for (int x = 0; x < P.size(p); ++x) {
      ++rep.checked;
      if (a.times(0, p, a.unit_e0, x) != x) {
        rep.fail(qa_alg_laws::kUnit, "left p=" + std::to_string(p) + " x=" + std::to_string(x + 1));
        hit = true;
        break;
      }
      ++rep.checked;
      if (a.times(p, 0, x, a.unit_e0) != x) {
        rep.fail(qa_alg_laws::kUnit,
                 "right p=" + std::to_string(p) + " x=" + std::to_string(x + 1));
        hit = true;
        break;
      }
    }
  return rep;
}

// --- algebrads ------------------------------------------------------------

long long QaAlgebrad::table_size(const std::vector<int>& parts) const {
  long long sz = algebra.presheaf.size(static_cast<int>(parts.size()));
  for (int p : parts) sz *= algebra.presheaf.size(p);
  return sz;
}

int QaAlgebrad::substitute(const std::vector<int>& parts, int x,
                           const std::vector<int>& ys) const {
  auto it = subs.find(parts);
  if (it == subs.end())
    throw DomainError("algebrad: no substitution table for " + show_ints(parts));
  long long idx = x;
  for (size_t i = 0; i < parts.size(); ++i)
    idx = idx * algebra.presheaf.size(parts[i]) + ys[i];
  return it->second[idx];
}

QaAlgebrad make_algebrad(CommAlgObject algebra, int unit, const QaSubstitutionRule& rule) {
  QaAlgebrad s{std::move(algebra), unit, {}};
  int top = s.algebra.presheaf.max_arity;
  if (top >= 1 && (unit < 0 || unit >= s.algebra.presheaf.size(1)))
    throw DomainError("algebrad unit out of range");
  for (const auto& parts : substitution_keys(top)) {
    long long sz = s.table_size(parts);
    std::vector<int> table(sz);
    if (sz > 0) {
      int n = static_cast<int>(parts.size());
      int total = 0;
      for (int p : parts) total += p;
      std::vector<int> ys(n, 0);
      std::vector<int> radices(n);
      for (int i = 0; i < n; ++i) radices[i] = s.algebra.presheaf.size(parts[i]);
      long long idx = 0;
      for (int x = 0; x < s.algebra.presheaf.size(n); ++x) {
        std::fill(ys.begin(), ys.end(), 0);
        do {
          int v = rule(parts, x, ys);
          if (v < 0 || v >= s.algebra.presheaf.size(total))
            throw DomainError("algebrad substitution value out of range");
          table[idx++] = v;
        } while (next_in_radices(ys, radices));
      }
    }
    s.subs.emplace(parts, std::move(table));
  }
  return s;
}

QaAlgebrad terminal_algebrad(int max_arity) {
  return make_algebrad(terminal_comm_alg(max_arity), 0,
                       [](const std::vector<int>&, int, const std::vector<int>&) { return 0; });
}

QaAlgebrad functions_algebrad(const FiniteCommMonoid& c, int max_arity) {
  CommAlgObject alg = functions_comm_alg(c, max_arity);
  // unit = the singleton tuple (e)
  int unit = max_arity >= 1 ? c.e : 0;
  return make_algebrad(std::move(alg), unit,
                       [&](const std::vector<int>& parts, int x, const std::vector<int>& ys) {
                         int n = static_cast<int>(parts.size());
                         std::vector<int> xt = tuple_from_rank(x, n, c.size);
                         std::vector<int> out;
                         for (int i = 0; i < n; ++i) {
                           std::vector<int> yt = tuple_from_rank(ys[i], parts[i], c.size);
                           for (int v : yt) out.push_back(c.times(xt[i], v));
                         }
                         return static_cast<int>(tuple_rank(out, c.size));
                       });
}

namespace {

// all tuples of the given length with entries >= 0 summing to <= bound, lex
std::vector<std::vector<int>> bounded_tuples(int length, int bound) {
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

std::string show_map_list(const std::vector<FinMap>& fs) {
  std::string out;
  for (const auto& f : fs) out += show_map(f);
  return out;
}

} // namespace

CheckReport algebrad_check(const QaAlgebrad& s) {
  CheckReport rep;
  const FinPresheaf& P = s.algebra.presheaf;
  int top = P.max_arity;
  auto keys = substitution_keys(top);
  if (top >= 1 && (s.unit < 0 || s.unit >= P.size(1))) {
    rep.fail("shape", "unit element out of range");
    return rep;
  }
  for (const auto& parts : keys) {
    auto it = s.subs.find(parts);
    if (it == s.subs.end()) {
      rep.fail("shape", "missing substitution table " + show_ints(parts));
      return rep;
    }
    if (static_cast<long long>(it->second.size()) != s.table_size(parts)) {
      rep.fail("shape", "substitution table " + show_ints(parts) + " has wrong size");
      return rep;
    }
    int total = 0;
    for (int p : parts) total += p;
    for (int v : it->second)
      if (v < 0 || v >= P.size(total)) {
        rep.fail("shape", "substitution table " + show_ints(parts) + " value out of range");
        return rep;
      }
  }

  std::vector<std::vector<std::vector<int>>> keys_by_length(top + 1);
  for (const auto& k : keys) keys_by_length[k.size()].push_back(k);

  // naturality in the inner slots
  bool hit = false;
  for (const auto& parts : keys) {
    if (hit) break;
    int m = static_cast<int>(parts.size());
    int total = 0;
    for (int p : parts) total += p;
    for (const auto& parts2 : keys_by_length[m]) {
      if (hit) break;
      int total2 = 0;
      for (int p : parts2) total2 += p;
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
          tf[i] = &P.restrictions[parts[i]][parts2[i]][franks[i]];
        }
        FinMap big = m > 0 ? block_sum(fs) : identity_map(0);
        const auto& tbig = P.restriction(big);
        std::vector<int> ys(m), ys2(m, 0);
        std::vector<int> yradix(m);
        for (int i = 0; i < m; ++i) yradix[i] = P.size(parts2[i]);
        bool empty_inner = false;
        for (int i = 0; i < m; ++i)
          if (yradix[i] == 0) empty_inner = true;
        if (empty_inner) continue;
        for (int x = 0; x < P.size(m) && !hit; ++x) {
          std::fill(ys2.begin(), ys2.end(), 0);
          do {
            ++rep.checked;
            for (int i = 0; i < m; ++i) ys[i] = (*tf[i])[ys2[i]];
            int lhs = s.substitute(parts, x, ys);
            int rhs = tbig[s.substitute(parts2, x, ys2)];
            if (lhs != rhs) {
              rep.fail(qa_algebrad_laws::kMuNaturality,
                       "parts=" + show_ints(parts) + " parts2=" + show_ints(parts2) + " fs=" +
                           show_map_list(fs) + " x=" + std::to_string(x + 1) + " ys=" +
                           show_ints1(ys2));
              hit = true;
              break;
            }
          } while (next_in_radices(ys2, yradix));
        }
      } while (next_in_radices(franks, fradix) && !hit);
    }
  }

  // compatibility with substitution along arbitrary index maps: merging the
  // inner blocks through the multiplication matches restriction of the outer
  hit = false;
  for (int m = 0; m <= top && !hit; ++m)
    for (int n = 0; n <= top && !hit; ++n)
      for (long long phir = 0; phir < map_count(m, n) && !hit; ++phir) {
        FinMap phi = map_from_rank(m, n, phir);
        const auto& tphi = P.restrictions[m][n][phir];
        auto [mono, sigma] = monotone_perm_factor(phi);
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
            tg = &P.restriction(perm_to_map(g));
          }
          std::vector<int> yradix(m);
          bool empty_inner = false;
          for (int i = 0; i < m; ++i) {
            yradix[i] = P.size(parts[i]);
            if (yradix[i] == 0) empty_inner = true;
          }
          if (empty_inner) continue;
          std::vector<int> ys(m, 0), zs(n);
          for (int x = 0; x < P.size(n) && !hit; ++x) {
            std::fill(ys.begin(), ys.end(), 0);
            do {
              ++rep.checked;
              for (int j = 0; j < n; ++j) {
                int acc = s.algebra.unit_e0;
                int acc_size = 0;
                for (int i : fibre[j]) {
                  acc = acc_size == 0 && !fibre[j].empty() && i == fibre[j].front()
                            ? ys[i - 1]
                            : s.algebra.times(acc_size, parts[i - 1], acc, ys[i - 1]);
                  acc_size += parts[i - 1];
                }
                zs[j] = acc;
              }
              int lhs = s.substitute(parts, tphi[x], ys);
              int r = s.substitute(grouped, x, zs);
              int rhs = tg ? (*tg)[r] : r;
              if (lhs != rhs) {
                rep.fail(qa_algebrad_laws::kMuSubstitutionCompat,
                         "m=" + std::to_string(m) + " n=" + std::to_string(n) + " phi=" +
                             show_map(phi) + " parts=" + show_ints(parts) + " x=" +
                             std::to_string(x + 1) + " ys=" + show_ints1(ys));
                hit = true;
                break;
              }
            } while (next_in_radices(ys, yradix));
          }
        }
      }

  // substitution is a morphism for the multiplication
  hit = false;
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
        yradix[i] = P.size(parts[i]);
        if (yradix[i] == 0) empty_inner = true;
      }
      for (int i = 0; i < n2; ++i) {
        yradix2[i] = P.size(parts2[i]);
        if (yradix2[i] == 0) empty_inner = true;
      }
      if (empty_inner) continue;
      std::vector<int> ys(n, 0), ys2(n2, 0), ycat(n + n2);
      for (int x = 0; x < P.size(n) && !hit; ++x)
        for (int x2 = 0; x2 < P.size(n2) && !hit; ++x2) {
          std::fill(ys.begin(), ys.end(), 0);
          do {
            if (hit) break;
            std::fill(ys2.begin(), ys2.end(), 0);
            do {
              ++rep.checked;
              for (int i = 0; i < n; ++i) ycat[i] = ys[i];
              for (int i = 0; i < n2; ++i) ycat[n + i] = ys2[i];
              int lhs = s.algebra.times(total, total2, s.substitute(parts, x, ys),
                                        s.substitute(parts2, x2, ys2));
              int rhs = s.substitute(cat, s.algebra.times(n, n2, x, x2), ycat);
              if (lhs != rhs) {
                rep.fail(qa_algebrad_laws::kMultMorphism,
                         "parts=" + show_ints(parts) + " parts2=" + show_ints(parts2) + " x=" +
                             std::to_string(x + 1) + " x2=" + std::to_string(x2 + 1) + " ys=" +
                             show_ints1(ys) + " ys2=" + show_ints1(ys2));
                hit = true;
                break;
              }
            } while (next_in_radices(ys2, yradix2));
          } while (next_in_radices(ys, yradix));
        }
    }
  }

  // outer unit
  hit = false;
  for (int p = 0; p <= top && top >= 1 && !hit; ++p) {
    std::vector<int> key{p};
    for (int y = 0; y < P.size(p); ++y) {
      ++rep.checked;
      if (s.substitute(key, s.unit, {y}) != y) {
        rep.fail(qa_algebrad_laws::kOuterUnit,
                 "p=" + std::to_string(p) + " y=" + std::to_string(y + 1));
        hit = true;
        break;
      }
    }
  }

  // inner unit
  hit = false;
  for (int n = 0; n <= top && !hit; ++n) {
    std::vector<int> key(n, 1);
    std::vector<int> units(n, s.unit);
    for (int x = 0; x < P.size(n); ++x) {
      ++rep.checked;
      if (s.substitute(key, x, units) != x) {
        rep.fail(qa_algebrad_laws::kInnerUnit,
                 "n=" + std::to_string(n) + " x=" + std::to_string(x + 1));
        hit = true;
        break;
      }
    }
  }

  // two-level associativity
  hit = false;
  for (const auto& parts : keys) {
    if (hit) break;
    int n = static_cast<int>(parts.size());
    int total = 0;
    for (int p : parts) total += p;
    std::vector<int> yradix(n);
    bool empty_inner = false;
    for (int i = 0; i < n; ++i) {
      yradix[i] = P.size(parts[i]);
      if (yradix[i] == 0) empty_inner = true;
    }
    if (empty_inner) continue;
    for (const auto& inner : bounded_tuples(total, top)) {
      if (hit) break;
      int grand = 0;
      for (int r : inner) grand += r;
      std::vector<int> zradix(total);
      bool empty_z = false;
      for (int t = 0; t < total; ++t) {
        zradix[t] = P.size(inner[t]);
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
      for (int x = 0; x < P.size(n) && !hit; ++x) {
        std::fill(ys.begin(), ys.end(), 0);
        do {
          if (hit) break;
          std::fill(zs.begin(), zs.end(), 0);
          do {
            ++rep.checked;
            int w = s.substitute(parts, x, ys);
            int lhs = s.substitute(inner, w, zs);
            int pos = 0;
            for (int i = 0; i < n; ++i) {
              std::vector<int> zslice(zs.begin() + pos, zs.begin() + pos + parts[i]);
              us[i] = s.substitute(slice[i], ys[i], zslice);
              pos += parts[i];
            }
            int rhs = s.substitute(sums, x, us);
            if (lhs != rhs) {
              rep.fail(qa_algebrad_laws::kAssociativity,
                       "parts=" + show_ints(parts) + " inner=" + show_ints(inner) + " x=" +
                           std::to_string(x + 1) + " ys=" + show_ints1(ys) + " zs=" +
                           show_ints1(zs));
              hit = true;
              break;
            }
          } while (next_in_radices(zs, zradix));
        } while (next_in_radices(ys, yradix));
      }
      (void)grand;
    }
  }
  return rep;
}

// --- evaluation -----------------------------------------------------------

long long QaEval::index_of(int n, int xi, long long coeff_rank) const {
  return offset[n] + static_cast<long long>(xi) * ipow(monoid_size, n) + coeff_rank;
}

void QaEval::decode(long long index, int& n, int& xi, std::vector<int>& coeffs) const {
  n = 0;
  while (offset[n + 1] <= index) ++n;
  long long rem = index - offset[n];
  long long block = ipow(monoid_size, n);
  xi = static_cast<int>(rem / block);
  coeffs = tuple_from_rank(rem % block, n, monoid_size);
}

QaEval eval_qa(const FinPresheaf& p, const FiniteCommMonoid& a, int cutoff) {
  if (cutoff < 0) cutoff = p.max_arity;
  if (cutoff > p.max_arity)
    throw CapacityError("evaluation cutoff above the presheaf arity bound");
  QaEval ev;
  ev.monoid_size = a.size;
  ev.cutoff = cutoff;
  ev.offset.resize(cutoff + 2);
  long long acc = 0;
  for (int n = 0; n <= cutoff; ++n) {
    ev.offset[n] = acc;
    acc += static_cast<long long>(p.size(n)) * ipow(a.size, n);
  }
  ev.offset[cutoff + 1] = acc;
  ev.total = acc;
  if (ev.total > 20'000'000) throw CapacityError("evaluation carrier too large");

  std::vector<std::pair<int, int>> rels;
  for (int m = 0; m <= cutoff; ++m)
    for (int n = 0; n <= cutoff; ++n)
      for (long long phir = 0; phir < map_count(m, n); ++phir) {
        FinMap phi = map_from_rank(m, n, phir);
        const auto& tphi = p.restrictions[m][n][phir];
        long long am = ipow(a.size, m);
        std::vector<int> tup(m, 0);
        for (long long ar = 0; ar < am; ++ar) {
          std::vector<int> push(n, a.e);
          for (int i = 1; i <= m; ++i) {
            int j = phi(i);
            push[j - 1] = a.times(push[j - 1], tup[i - 1]);
          }
          long long pr = tuple_rank(push, a.size);
          for (int xi = 0; xi < p.size(n); ++xi)
            rels.emplace_back(static_cast<int>(ev.index_of(n, xi, pr)),
                              static_cast<int>(ev.index_of(m, tphi[xi], ar)));
          if (m > 0) next_in_radices(tup, std::vector<int>(m, a.size));
        }
      }
  ev.classes = quotient_by_relations(static_cast<int>(ev.total), rels);
  return ev;
}

// --- composition ------------------------------------------------------------

namespace {

struct QaComposeLevel {
  // summand offsets indexed by [n][assignment rank]
  std::vector<std::vector<long long>> offset;
  long long total = 0;
  Coequalizer classes;
};

} // namespace

FinPresheaf compose_qa(const FinPresheaf& x, const CommAlgObject& y, int s_max) {
  const FinPresheaf& Y = y.presheaf;
  if (x.max_arity != Y.max_arity) throw DomainError("compose: arity bounds differ");
  int top = x.max_arity;
  if (s_max < 0) s_max = top;
  if (s_max > top) s_max = top;

  // block sizes of an assignment v -> n, in block order
  auto block_sizes = [&](const FinMap& a) {
    std::vector<int> cnt(a.cod, 0);
    for (int w = 1; w <= a.dom; ++w) ++cnt[a(w) - 1];
    return cnt;
  };

  std::vector<QaComposeLevel> levels(top + 1);
  for (int v = 0; v <= top; ++v) {
    auto& lev = levels[v];
    lev.offset.resize(s_max + 1);
    long long acc = 0;
    for (int n = 0; n <= s_max; ++n) {
      long long cnt = map_count(v, n);
      lev.offset[n].resize(cnt);
      for (long long ar = 0; ar < cnt; ++ar) {
        lev.offset[n][ar] = acc;
        FinMap a = map_from_rank(v, n, ar);
        long long sz = x.size(n);
        for (int c : block_sizes(a)) sz *= Y.size(c);
        acc += sz;
      }
    }
    lev.total = acc;
    if (acc > 20'000'000) throw CapacityError("composition carrier too large");
  }

  auto encode = [&](int v, int n, long long arank, int xe, const std::vector<int>& ys,
                    const std::vector<int>& cnt) {
    long long idx = xe;
    for (size_t j = 0; j < ys.size(); ++j) idx = idx * Y.size(cnt[j]) + ys[j];
    return levels[v].offset[n][arank] + idx;
  };

  for (int v = 0; v <= top; ++v) {
    std::vector<std::pair<int, int>> rels;
    for (int m = 0; m <= s_max; ++m)
      for (int n = 0; n <= s_max; ++n)
        for (long long phir = 0; phir < map_count(m, n); ++phir) {
          FinMap phi = map_from_rank(m, n, phir);
          const auto& tphi = x.restrictions[m][n][phir];
          std::vector<std::vector<int>> fibre(n);
          for (int i = 1; i <= m; ++i) fibre[phi(i) - 1].push_back(i);
          for (long long br = 0; br < map_count(v, m); ++br) {
            FinMap b = map_from_rank(v, m, br);
            std::vector<int> bcnt = block_sizes(b);
            std::vector<int> ucode(m, 0);
            for (int w = 1; w <= v; ++w) ucode[b(w) - 1] |= 1 << (w - 1);
            FinMap a = compose_maps(b, phi);
            long long arank = map_rank(a);
            std::vector<int> acnt = block_sizes(a);
            // per outer block: the interleave permutation from concatenated
            // fibre order to ascending order, as a restriction row
            std::vector<const std::vector<int>*> tmix(n, nullptr);
            std::vector<int> wcode(n, 0);
            for (int j = 0; j < n; ++j) {
              for (int i : fibre[j]) wcode[j] |= ucode[i - 1];
              if (fibre[j].size() >= 2 && acnt[j] > 0) {
                FinMap rho{acnt[j], acnt[j], {}};
                for (int w : subset_elements(wcode[j], v)) {
                  int pos = 0;
                  for (int i : fibre[j]) {
                    if (ucode[i - 1] & (1 << (w - 1))) {
                      rho.images.push_back(pos + rank_in_subset(ucode[i - 1], w));
                      break;
                    }
                    pos += popcount_int(ucode[i - 1]);
                  }
                }
                tmix[j] = &Y.restriction(rho);
              }
            }
            std::vector<int> yradix(m);
            bool empty_inner = false;
            for (int i = 0; i < m; ++i) {
              yradix[i] = Y.size(bcnt[i]);
              if (yradix[i] == 0) empty_inner = true;
            }
            if (empty_inner) continue;
            std::vector<int> ys(m, 0), zs(n);
            for (int xe = 0; xe < x.size(n); ++xe) {
              std::fill(ys.begin(), ys.end(), 0);
              do {
                for (int j = 0; j < n; ++j) {
                  int acc = y.unit_e0;
                  int acc_size = 0;
                  bool first = true;
                  for (int i : fibre[j]) {
                    acc = first ? ys[i - 1] : y.times(acc_size, bcnt[i - 1], acc, ys[i - 1]);
                    acc_size += bcnt[i - 1];
                    first = false;
                  }
                  zs[j] = tmix[j] ? (*tmix[j])[acc] : acc;
                }
                rels.emplace_back(static_cast<int>(encode(v, m, br, tphi[xe], ys, bcnt)),
                                  static_cast<int>(encode(v, n, arank, xe, zs, acnt)));
              } while (next_in_radices(ys, yradix));
            }
          }
        }
    levels[v].classes = quotient_by_relations(static_cast<int>(levels[v].total), rels);
  }

  // decode an element index at level v into its summand data
  auto decode = [&](int v, long long idx, int& n, long long& arank, int& xe,
                    std::vector<int>& ys, std::vector<int>& cnt) {
    const auto& lev = levels[v];
    n = s_max;
    arank = 0;
    for (int nn = s_max; nn >= 0; --nn) {
      bool found = false;
      for (long long ar = static_cast<long long>(lev.offset[nn].size()) - 1; ar >= 0; --ar)
        if (lev.offset[nn][ar] <= idx) {
          long long next = (nn == s_max && ar + 1 == static_cast<long long>(lev.offset[nn].size()))
                               ? lev.total
                               : (ar + 1 < static_cast<long long>(lev.offset[nn].size())
                                      ? lev.offset[nn][ar + 1]
                                      : lev.offset[nn + 1][0]);
          if (idx < next) {
            n = nn;
            arank = ar;
            found = true;
          }
          break;
        }
      if (found) break;
    }
    FinMap a = map_from_rank(v, n, arank);
    cnt = block_sizes(a);
    long long rem = idx - lev.offset[n][arank];
    ys.assign(n, 0);
    for (int j = n - 1; j >= 0; --j) {
      ys[j] = static_cast<int>(rem % Y.size(cnt[j]));
      rem /= Y.size(cnt[j]);
    }
    xe = static_cast<int>(rem);
  };

  FinPresheaf out;
  out.max_arity = top;
  out.sizes.resize(top + 1);
  for (int v = 0; v <= top; ++v) out.sizes[v] = levels[v].classes.class_count;
  out.restrictions.assign(top + 1, {});
  for (int u = 0; u <= top; ++u) {
    out.restrictions[u].resize(top + 1);
    for (int v = 0; v <= top; ++v) {
      long long cnt = map_count(u, v);
      out.restrictions[u][v].resize(cnt);
      for (long long fr = 0; fr < cnt; ++fr) {
        FinMap f = map_from_rank(u, v, fr);
        std::vector<int> table(out.sizes[v]);
        for (int c = 0; c < out.sizes[v]; ++c) {
          long long rep = levels[v].classes.representative[c];
          int n;
          long long arank;
          int xe;
          std::vector<int> ys, bs;
          decode(v, rep, n, arank, xe, ys, bs);
          FinMap a = map_from_rank(v, n, arank);
          std::vector<int> ucode(n, 0);
          for (int w = 1; w <= v; ++w) ucode[a(w) - 1] |= 1 << (w - 1);
          FinMap ap = compose_maps(f, a);
          std::vector<int> apcnt = block_sizes(ap);
          std::vector<int> upcode(n, 0);
          for (int w = 1; w <= u; ++w) upcode[ap(w) - 1] |= 1 << (w - 1);
          std::vector<int> ysp(n);
          for (int j = 0; j < n; ++j) {
            FinMap g{apcnt[j], bs[j], {}};
            for (int w : subset_elements(upcode[j], u))
              g.images.push_back(rank_in_subset(ucode[j], f(w)));
            ysp[j] = Y.pull(g, ys[j]);
          }
          long long idxp = encode(u, n, map_rank(ap), xe, ysp, apcnt);
          table[c] = levels[u].classes.class_of[idxp];
        }
        out.restrictions[u][v][fr] = std::move(table);
      }
    }
  }
  return out;
}

} // namespace fincat
