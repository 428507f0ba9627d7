#include "fincat/qc.hpp"

#include <utility>

#include "fincat/error.hpp"

namespace fincat {

namespace {

void check_bound(int max_arity, const char* who) {
  if (max_arity < 0 || max_arity > kArityCap)
    throw DomainError(std::string(who) + ": max_arity out of range");
}

long long ipow(long long base, int exp) {
  long long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// mixed-radix odometer over tuples with a fixed base, last digit fastest
bool next_tuple(std::vector<int>& t, int base) {
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    if (++t[i] < base) return true;
    t[i] = 0;
  }
  return false;
}

std::string show_int1(int v) { return std::to_string(v + 1); }

} // namespace

FinFunctor make_functor(int max_arity, const std::function<int(int)>& carrier_size,
                        const std::function<int(const FinMap&, int)>& transport) {
  check_bound(max_arity, "make_functor");
  FinFunctor f;
  f.max_arity = max_arity;
  f.sizes.resize(max_arity + 1);
  for (int n = 0; n <= max_arity; ++n) {
    f.sizes[n] = carrier_size(n);
    if (f.sizes[n] < 0) throw DomainError("make_functor: negative carrier size");
  }
  f.transitions.assign(max_arity + 1, {});
  for (int m = 0; m <= max_arity; ++m) {
    f.transitions[m].resize(max_arity + 1);
    for (int n = 0; n <= max_arity; ++n) {
      long long count = map_count(m, n);
      f.transitions[m][n].resize(count);
      for (long long r = 0; r < count; ++r) {
        FinMap map = map_from_rank(m, n, r);
        auto& table = f.transitions[m][n][r];
        table.resize(f.sizes[m]);
        for (int e = 0; e < f.sizes[m]; ++e) {
          int v = transport(map, e);
          if (v < 0 || v >= f.sizes[n]) throw DomainError("make_functor: transport out of range");
          table[e] = v;
        }
      }
    }
  }
  return f;
}

FinFunctor identity_functor(int max_arity) {
  return make_functor(
      max_arity, [](int n) { return n; },
      [](const FinMap& f, int e) { return f(e + 1) - 1; });
}

FinFunctor representable_functor(int k, int max_arity) {
  if (k < 0) throw DomainError("representable_functor: negative arity");
  if (k > kArityCap) throw CapacityError("representable_functor: arity above cap");
  return make_functor(
      max_arity, [k](int n) { return static_cast<int>(map_count(k, n)); },
      [k](const FinMap& f, int e) {
        FinMap t = map_from_rank(k, f.dom, e);
        return static_cast<int>(map_rank(compose_maps(t, f)));
      });
}

FinFunctor pointed_functor(int max_arity) {
  return make_functor(
      max_arity, [](int n) { return n + 1; },
      [](const FinMap& f, int e) { return e < f.dom ? f(e + 1) - 1 : f.cod; });
}

FinFunctor powerset_functor(int max_arity) {
  return make_functor(
      max_arity, [](int n) { return 1 << n; },
      [](const FinMap& f, int e) {
        int image = 0;
        for (int i = 1; i <= f.dom; ++i)
          if (e & (1 << (i - 1))) image |= 1 << (f(i) - 1);
        return image;
      });
}

namespace {

bool functor_shape_ok(const FinFunctor& f, CheckReport& rep) {
  auto bad = [&](const std::string& witness) {
    rep.fail(qc_functor_laws::kTableShape, witness);
    return false;
  };
  if (f.max_arity < 0 || f.max_arity > kArityCap) return bad("max_arity out of range");
  int top = f.max_arity;
  if (static_cast<int>(f.sizes.size()) != top + 1) return bad("carrier list length");
  for (int n = 0; n <= top; ++n)
    if (f.sizes[n] < 0) return bad("arity " + std::to_string(n) + ": negative carrier");
  if (static_cast<int>(f.transitions.size()) != top + 1) return bad("transition rows");
  for (int m = 0; m <= top; ++m) {
    if (static_cast<int>(f.transitions[m].size()) != top + 1)
      return bad("transition columns at " + std::to_string(m));
    for (int n = 0; n <= top; ++n) {
      if (static_cast<long long>(f.transitions[m][n].size()) != map_count(m, n))
        return bad("table count at m=" + std::to_string(m) + " n=" + std::to_string(n));
      for (const auto& table : f.transitions[m][n]) {
        if (static_cast<int>(table.size()) != f.sizes[m])
          return bad("table length at m=" + std::to_string(m) + " n=" + std::to_string(n));
        for (int v : table)
          if (v < 0 || v >= f.sizes[n])
            return bad("entry out of range at m=" + std::to_string(m) + " n=" + std::to_string(n));
      }
    }
  }
  return true;
}

} // namespace

CheckReport validate_functor(const FinFunctor& f) {
  CheckReport rep;
  if (!functor_shape_ok(f, rep)) return rep;
  for (int n = 0; n <= f.max_arity; ++n) {
    const auto& table = f.transition(identity_map(n));
    bool hit = false;
    for (int e = 0; e < f.sizes[n] && !hit; ++e)
      if (table[e] != e) {
        rep.fail(qc_functor_laws::kIdentity, "n=" + std::to_string(n) + " e=" + show_int1(e));
        hit = true;
      }
    if (hit) break;
  }
  rep.checked += 1;
  bool comp_done = false;
  for (int m = 0; m <= f.max_arity && !comp_done; ++m)
    for (int n = 0; n <= f.max_arity && !comp_done; ++n)
      for (int k = 0; k <= f.max_arity && !comp_done; ++k) {
        long long fc = map_count(m, n), gc = map_count(n, k);
        for (long long fr = 0; fr < fc && !comp_done; ++fr) {
          FinMap fm = map_from_rank(m, n, fr);
          const auto& tf = f.transitions[m][n][fr];
          for (long long gr = 0; gr < gc && !comp_done; ++gr) {
            FinMap gm = map_from_rank(n, k, gr);
            const auto& tg = f.transitions[n][k][gr];
            const auto& tfg = f.transition(compose_maps(fm, gm));
            ++rep.checked;
            for (int e = 0; e < f.sizes[m]; ++e)
              if (tfg[e] != tg[tf[e]]) {
                rep.fail(qc_functor_laws::kComposition,
                         "m=" + std::to_string(m) + " n=" + std::to_string(n) + " k=" +
                             std::to_string(k) + " f=" + show_map(fm) + " g=" + show_map(gm) +
                             " e=" + show_int1(e));
                comp_done = true;
                break;
              }
          }
        }
      }
  return rep;
}

int eval_functor(const FinFunctor& f, int set_size) {
  if (set_size < 0) throw DomainError("eval_functor: negative set size");
  if (set_size > f.max_arity) throw CapacityError("eval_functor: set size above arity bound");
  return f.sizes[set_size];
}

FinFunctor compose_qc(const FinFunctor& f, const FinFunctor& g) {
  if (f.max_arity != g.max_arity) throw DomainError("compose_qc: arity bounds differ");
  int top = f.max_arity;
  for (int n = 0; n <= top; ++n)
    if (g.sizes[n] > top) throw CapacityError("compose_qc: inner carrier exceeds arity bound");
  return make_functor(
      top, [&](int n) { return f.sizes[g.sizes[n]]; },
      [&](const FinMap& m, int e) {
        const auto& inner = g.transition(m);
        std::vector<int> images(inner.size());
        for (size_t i = 0; i < inner.size(); ++i) images[i] = inner[i] + 1;
        FinMap ghat{g.sizes[m.dom], g.sizes[m.cod], std::move(images)};
        return f.apply(ghat, e);
      });
}

FinFunctor pointwise_product(const FinFunctor& f, const FinFunctor& g) {
  if (f.max_arity != g.max_arity) throw DomainError("pointwise_product: arity bounds differ");
  return make_functor(
      f.max_arity, [&](int n) { return f.sizes[n] * g.sizes[n]; },
      [&](const FinMap& m, int e) {
        int ef = e / g.sizes[m.dom], eg = e % g.sizes[m.dom];
        return f.apply(m, ef) * g.sizes[m.cod] + g.apply(m, eg);
      });
}

// --- monads --------------------------------------------------------------------

AlgebraicMonad make_monad(FinFunctor functor, int unit, const QcSubstitutionRule& rule) {
  if (functor.size(1) <= 0 || unit < 0 || unit >= functor.size(1))
    throw DomainError("make_monad: unit out of range");
  AlgebraicMonad m{std::move(functor), unit, {}};
  int top = m.functor.max_arity;
  m.subs.assign(top + 1, {});
  for (int p = 0; p <= top; ++p) {
    m.subs[p].resize(top + 1);
    for (int n = 0; n <= top; ++n) {
      long long kn = ipow(m.functor.size(n), p);
      auto& table = m.subs[p][n];
      table.resize(static_cast<size_t>(m.functor.size(p)) * kn);
      size_t idx = 0;
      for (int t = 0; t < m.functor.size(p); ++t) {
        std::vector<int> vs(p, 0);
        if (kn > 0) do {
            int v = rule(p, n, t, vs);
            if (v < 0 || v >= m.functor.size(n))
              throw DomainError("make_monad: substitution out of range");
            table[idx++] = v;
          } while (next_tuple(vs, m.functor.size(n)));
      }
    }
  }
  return m;
}

AlgebraicMonad identity_monad(int max_arity) {
  if (max_arity < 1) throw DomainError("identity_monad: bound below 1");
  return make_monad(identity_functor(max_arity), 0,
                    [](int, int, int t, const std::vector<int>& vs) { return vs[t]; });
}

AlgebraicMonad pointed_monad(int max_arity) {
  if (max_arity < 1) throw DomainError("pointed_monad: bound below 1");
  return make_monad(pointed_functor(max_arity), 0,
                    [](int p, int n, int t, const std::vector<int>& vs) {
                      return t < p ? vs[t] : n;
                    });
}

AlgebraicMonad powerset_monad(int max_arity) {
  if (max_arity < 1) throw DomainError("powerset_monad: bound below 1");
  if (max_arity > 4) throw CapacityError("powerset_monad: tables too large above bound 4");
  return make_monad(powerset_functor(max_arity), 1,
                    [](int p, int, int t, const std::vector<int>& vs) {
                      int u = 0;
                      for (int i = 0; i < p; ++i)
                        if (t & (1 << i)) u |= vs[i];
                      return u;
                    });
}

namespace {

bool monad_shape_ok(const AlgebraicMonad& m, CheckReport& rep) {
  auto bad = [&](const std::string& witness) {
    rep.fail("shape", witness);
    return false;
  };
  CheckReport functor_rep;
  if (!functor_shape_ok(m.functor, functor_rep)) return bad(functor_rep.failures[0].witness);
  int top = m.functor.max_arity;
  if (top < 1 || m.unit < 0 || m.unit >= m.functor.size(1)) return bad("unit out of range");
  if (static_cast<int>(m.subs.size()) != top + 1) return bad("substitution rows");
  for (int p = 0; p <= top; ++p) {
    if (static_cast<int>(m.subs[p].size()) != top + 1)
      return bad("substitution columns at " + std::to_string(p));
    for (int n = 0; n <= top; ++n) {
      long long want = m.functor.size(p) * ipow(m.functor.size(n), p);
      if (static_cast<long long>(m.subs[p][n].size()) != want)
        return bad("table length at p=" + std::to_string(p) + " n=" + std::to_string(n));
      for (int v : m.subs[p][n])
        if (v < 0 || v >= m.functor.size(n))
          return bad("entry out of range at p=" + std::to_string(p) + " n=" + std::to_string(n));
    }
  }
  return true;
}

} // namespace

CheckReport monad_check(const AlgebraicMonad& m) {
  CheckReport rep;
  if (!monad_shape_ok(m, rep)) return rep;
  int top = m.functor.max_arity;

  bool hit = false;
  for (int n = 0; n <= top && !hit; ++n)
    for (int t = 0; t < m.functor.size(n); ++t) {
      ++rep.checked;
      if (m.substitute(1, n, m.unit, {t}) != t) {
        rep.fail(qc_laws::kLeftUnit, "n=" + std::to_string(n) + " t=" + show_int1(t));
        hit = true;
        break;
      }
    }

  hit = false;
  for (int p = 0; p <= top && !hit; ++p) {
    std::vector<int> gens(p);
    for (int i = 1; i <= p; ++i) gens[i - 1] = m.functor.apply(FinMap{1, p, {i}}, m.unit);
    for (int t = 0; t < m.functor.size(p); ++t) {
      ++rep.checked;
      if (m.substitute(p, p, t, gens) != t) {
        rep.fail(qc_laws::kRightUnit, "p=" + std::to_string(p) + " t=" + show_int1(t));
        hit = true;
        break;
      }
    }
  }

  hit = false;
  for (int p = 0; p <= top && !hit; ++p)
    for (int n = 0; n <= top && !hit; ++n)
      for (int np = 0; np <= top && !hit; ++np) {
        long long fc = map_count(n, np);
        for (long long fr = 0; fr < fc && !hit; ++fr) {
          FinMap fm = map_from_rank(n, np, fr);
          const auto& tf = m.functor.transitions[n][np][fr];
          std::vector<int> vs2(p);
          for (int t = 0; t < m.functor.size(p) && !hit; ++t) {
            std::vector<int> vs(p, 0);
            if (ipow(m.functor.size(n), p) == 0) continue;
            do {
              ++rep.checked;
              for (int i = 0; i < p; ++i) vs2[i] = tf[vs[i]];
              if (tf[m.substitute(p, n, t, vs)] != m.substitute(p, np, t, vs2)) {
                rep.fail(qc_laws::kMuNaturality,
                         "p=" + std::to_string(p) + " n=" + std::to_string(n) + " np=" +
                             std::to_string(np) + " f=" + show_map(fm) + " t=" + show_int1(t) +
                             " vs=" + show_ints1(vs));
                hit = true;
                break;
              }
            } while (next_tuple(vs, m.functor.size(n)));
          }
        }
      }

  hit = false;
  for (int p = 0; p <= top && !hit; ++p)
    for (int q = 0; q <= top && !hit; ++q) {
      long long pc = map_count(p, q);
      for (long long pr = 0; pr < pc && !hit; ++pr) {
        FinMap phi = map_from_rank(p, q, pr);
        const auto& tphi = m.functor.transitions[p][q][pr];
        std::vector<int> pulled(p);
        for (int n = 0; n <= top && !hit; ++n)
          for (int t = 0; t < m.functor.size(p) && !hit; ++t) {
            std::vector<int> vs(q, 0);
            if (ipow(m.functor.size(n), q) == 0) continue;
            do {
              ++rep.checked;
              for (int i = 1; i <= p; ++i) pulled[i - 1] = vs[phi(i) - 1];
              if (m.substitute(q, n, tphi[t], vs) != m.substitute(p, n, t, pulled)) {
                rep.fail(qc_laws::kMuCompatibility,
                         "p=" + std::to_string(p) + " q=" + std::to_string(q) + " phi=" +
                             show_map(phi) + " n=" + std::to_string(n) + " t=" + show_int1(t) +
                             " vs=" + show_ints1(vs));
                hit = true;
                break;
              }
            } while (next_tuple(vs, m.functor.size(n)));
          }
      }
    }

  hit = false;
  for (int q = 0; q <= top && !hit; ++q)
    for (int p = 0; p <= top && !hit; ++p)
      for (int n = 0; n <= top && !hit; ++n) {
        std::vector<int> inner(q);
        for (int t = 0; t < m.functor.size(q) && !hit; ++t) {
          std::vector<int> us(q, 0);
          if (ipow(m.functor.size(p), q) == 0) continue;
          do {
            std::vector<int> vs(p, 0);
            if (ipow(m.functor.size(n), p) == 0) continue;
            int head = m.substitute(q, p, t, us);
            do {
              ++rep.checked;
              for (int j = 0; j < q; ++j) inner[j] = m.substitute(p, n, us[j], vs);
              if (m.substitute(p, n, head, vs) != m.substitute(q, n, t, inner)) {
                rep.fail(qc_laws::kAssociativity,
                         "q=" + std::to_string(q) + " p=" + std::to_string(p) + " n=" +
                             std::to_string(n) + " t=" + show_int1(t) + " us=" + show_ints1(us) +
                             " vs=" + show_ints1(vs));
                hit = true;
                break;
              }
            } while (next_tuple(vs, m.functor.size(n)));
          } while (!hit && next_tuple(us, m.functor.size(p)));
        }
      }

  return rep;
}

// --- modules -------------------------------------------------------------------

CheckReport module_check(const AlgebraicMonad& monad, const SigmaModule& mod) {
  CheckReport rep;
  int top = monad.functor.max_arity;
  if (mod.carrier < 0 || mod.carrier > top) {
    rep.fail("shape", "carrier size out of range");
    return rep;
  }
  if (static_cast<int>(mod.action.size()) != monad.functor.size(mod.carrier)) {
    rep.fail("shape", "action table length");
    return rep;
  }
  for (int v : mod.action)
    if (v < 0 || v >= mod.carrier) {
      rep.fail("shape", "action entry out of range");
      return rep;
    }

  int msize = mod.carrier;
  for (int x = 0; x < msize; ++x) {
    ++rep.checked;
    int e = monad.functor.apply(FinMap{1, msize, {x + 1}}, monad.unit);
    if (mod.action[e] != x) {
      rep.fail(qc_module_laws::kUnit, "x=" + show_int1(x));
      break;
    }
  }

  int evaluated = monad.functor.size(msize);
  if (evaluated > top) {
    ++rep.skipped;
    rep.notes.push_back("partial: evaluated carrier has " + std::to_string(evaluated) +
                        " elements, above the arity bound " + std::to_string(top) +
                        "; associativity not checked");
    return rep;
  }
  std::vector<int> alpha_images(evaluated);
  for (int t = 0; t < evaluated; ++t) alpha_images[t] = mod.action[t] + 1;
  const auto& talpha = monad.functor.transition(FinMap{evaluated, msize, alpha_images});
  std::vector<int> iota(evaluated);
  for (int j = 0; j < evaluated; ++j) iota[j] = j;
  for (int t = 0; t < monad.functor.size(evaluated); ++t) {
    ++rep.checked;
    if (mod.action[talpha[t]] != mod.action[monad.substitute(evaluated, msize, t, iota)]) {
      rep.fail(qc_module_laws::kAssociativity, "t=" + show_int1(t));
      break;
    }
  }
  return rep;
}

SigmaModule free_module(const AlgebraicMonad& monad, int set_size) {
  int top = monad.functor.max_arity;
  if (set_size < 0) throw DomainError("free_module: negative set size");
  if (set_size > top) throw CapacityError("free_module: generating set above arity bound");
  int carrier = monad.functor.size(set_size);
  if (carrier > top) throw CapacityError("free_module: carrier exceeds arity bound");
  SigmaModule mod{carrier, {}};
  std::vector<int> iota(carrier);
  for (int j = 0; j < carrier; ++j) iota[j] = j;
  mod.action.resize(monad.functor.size(carrier));
  for (int t = 0; t < monad.functor.size(carrier); ++t)
    mod.action[t] = monad.substitute(carrier, set_size, t, iota);
  return mod;
}

int count_module_homs(const AlgebraicMonad& monad, const SigmaModule& a, const SigmaModule& b) {
  int count = 0;
  long long total = map_count(a.carrier, b.carrier);
  for (long long r = 0; r < total; ++r) {
    FinMap f = map_from_rank(a.carrier, b.carrier, r);
    const auto& tf = monad.functor.transition(f);
    bool ok = true;
    for (int t = 0; t < monad.functor.size(a.carrier) && ok; ++t)
      ok = f(a.action[t] + 1) - 1 == b.action[tf[t]];
    count += ok;
  }
  return count;
}

} // namespace fincat
