#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "fincat/corpus.hpp"
#include "fincat/error.hpp"
#include "fincat/oracle.hpp"
#include "fincat/qa.hpp"
#include "fincat/qc.hpp"
#include "fincat/qo.hpp"

using namespace fincat;

namespace {

bool same_reports(const CheckReport& a, const CheckReport& b) {
  if (a.ok != b.ok || a.failures.size() != b.failures.size()) return false;
  for (size_t i = 0; i < a.failures.size(); ++i)
    if (a.failures[i].law != b.failures[i].law || a.failures[i].witness != b.failures[i].witness)
      return false;
  return true;
}

} // namespace

TEST_CASE("naive functor evaluation matches carrier sizes and stabilizes") {
  auto idf = identity_functor(4);
  auto r = naive_eval_qc(idf, 2);
  CHECK(r.classes == 2);
  CHECK(r.stabilized);

  auto h2 = representable_functor(2, 4);
  auto r2 = naive_eval_qc(h2, 2);
  CHECK(r2.classes == 4);
  CHECK(r2.stabilized);

  auto pointed = pointed_monad(4);
  auto powerset = powerset_monad(4);
  for (int xs = 0; xs <= 3; ++xs) {
    auto rp = naive_eval_qc(pointed.functor, xs);
    CHECK(rp.classes == pointed.functor.size(xs));
    CHECK(rp.stabilized);
    auto rw = naive_eval_qc(powerset.functor, xs);
    CHECK(rw.classes == powerset.functor.size(xs));
    CHECK(rw.stabilized);
  }

  // a cutoff one above the set size already suffices
  auto early = naive_eval_qc(powerset.functor, 2, 3);
  CHECK(early.classes == powerset.functor.size(2));
  CHECK(early.stabilized);

  // truncating everything away is visibly unstable
  auto stump = naive_eval_qc(pointed.functor, 2, 0);
  CHECK(stump.classes == 1);
  CHECK_FALSE(stump.stabilized);

  CHECK_THROWS_AS(naive_eval_qc(idf, 2, 9), CapacityError);
  CHECK_THROWS_AS(naive_eval_qc(idf, -1), DomainError);
}

TEST_CASE("naive symmetric sequence evaluation matches the evaluation functor") {
  for (auto make : {corpus_com_pos, corpus_ass, corpus_unit_operad}) {
    SymSeq s = make(3).seq;
    for (int k = 0; k <= 3; ++k) CHECK(naive_eval_qo(s, k) == eval_seq(s, k).class_count());
  }
  CHECK(naive_eval_qo(corpus_com_pos(2).seq, 2) == 5);

  std::mt19937_64 rng(77);
  for (int it = 0; it < 12; ++it) {
    SymSeq s = random_seq(rng, 3, 2, false);
    for (int k = 0; k <= 2; ++k) CHECK(naive_eval_qo(s, k) == eval_seq(s, k).class_count());
  }
}

TEST_CASE("operad law oracle agrees with the checker") {
  for (auto make : {corpus_com_pos, corpus_ass, corpus_unit_operad}) {
    Operad o = make(3);
    auto a = operad_check(o);
    auto b = exhaustive_law_check(o);
    CHECK(a.ok);
    CHECK(b.ok);
    CHECK(same_reports(a, b));
  }

  // randomized single-cell corruptions produce identical failure lists
  Operad base = corpus_ass(3);
  auto keys = substitution_keys(3);
  std::mt19937_64 rng(5);
  int corrupted = 0;
  for (int it = 0; it < 40 && corrupted < 12; ++it) {
    Operad o = base;
    const auto& parts = keys[rng() % keys.size()];
    auto& table = o.mu.at(parts);
    if (table.empty()) continue;
    int total = 0;
    for (int p : parts) total += p;
    int range = o.seq.size(total);
    if (range < 2) continue;
    size_t cell = rng() % table.size();
    table[cell] = (table[cell] + 1) % range;
    ++corrupted;
    auto a = operad_check(o);
    auto b = exhaustive_law_check(o);
    CHECK_FALSE(a.ok);
    CHECK_FALSE(b.ok);
    CHECK(same_reports(a, b));
    // the first reported law can be reproduced in isolation
    auto c = exhaustive_law_check(o, a.failures[0].law);
    REQUIRE(c.failures.size() == 1);
    CHECK(c.failures[0].law == a.failures[0].law);
    CHECK(c.failures[0].witness == a.failures[0].witness);
  }
  CHECK(corrupted >= 10);

  CHECK_THROWS_AS(exhaustive_law_check(base, "no-such-law"), DomainError);
}

TEST_CASE("monad law oracle agrees with the checker") {
  for (auto make : {identity_monad, pointed_monad, powerset_monad}) {
    AlgebraicMonad m = make(3);
    auto a = monad_check(m);
    auto b = exhaustive_law_check(m);
    CHECK(a.ok);
    CHECK(b.ok);
    CHECK(same_reports(a, b));
  }

  AlgebraicMonad m = pointed_monad(3);
  m.subs[2][1][3] = (m.subs[2][1][3] + 1) % m.functor.size(1);
  auto a = monad_check(m);
  auto b = exhaustive_law_check(m);
  CHECK_FALSE(a.ok);
  CHECK_FALSE(b.ok);
  CHECK(same_reports(a, b));

  // a wrong unit hits the unit laws on both sides identically
  AlgebraicMonad u = pointed_monad(3);
  u.unit = 1 - u.unit;
  CHECK(same_reports(monad_check(u), exhaustive_law_check(u)));
  CHECK_FALSE(exhaustive_law_check(u).ok);

  std::mt19937_64 rng(6);
  int corrupted = 0;
  for (int it = 0; it < 20; ++it) {
    AlgebraicMonad x = pointed_monad(3);
    int p = static_cast<int>(rng() % 4);
    int n = static_cast<int>(rng() % 4);
    auto& table = x.subs[p][n];
    if (table.empty() || x.functor.size(n) < 2) continue;
    size_t cell = rng() % table.size();
    table[cell] = (table[cell] + 1) % x.functor.size(n);
    ++corrupted;
    CHECK(same_reports(monad_check(x), exhaustive_law_check(x)));
    CHECK_FALSE(exhaustive_law_check(x).ok);
  }
  CHECK(corrupted >= 10);
}

TEST_CASE("module law oracle agrees with the checker") {
  auto idm = identity_monad(3);
  auto pm = pointed_monad(3);
  for (const auto& monad : {idm, pm}) {
    for (int gen = 0; gen <= 2; ++gen) {
      if (monad.functor.size(gen) > 3) continue;
      auto mod = free_module(monad, gen);
      auto a = module_check(monad, mod);
      auto b = exhaustive_law_check(monad, mod);
      CHECK(a.ok);
      CHECK(b.ok);
      CHECK(same_reports(a, b));
      CHECK(a.skipped == b.skipped);
      CHECK(a.notes == b.notes);
    }
  }

  auto mod = free_module(idm, 2);
  SigmaModule bad = mod;
  bad.action[1] = (bad.action[1] + 1) % bad.carrier;
  auto a = module_check(idm, bad);
  auto b = exhaustive_law_check(idm, bad);
  CHECK_FALSE(a.ok);
  CHECK_FALSE(b.ok);
  CHECK(same_reports(a, b));

  // malformed shapes are reported the same way
  SigmaModule stray = mod;
  stray.action.pop_back();
  CHECK(same_reports(module_check(idm, stray), exhaustive_law_check(idm, stray)));
}

TEST_CASE("commutative algebra law oracle agrees with the checker") {
  for (const auto& alg : {terminal_comm_alg(3), functions_comm_alg(and_monoid(), 3),
                          functions_comm_alg(cyclic_monoid(2), 3)}) {
    auto a = comm_alg_check(alg);
    auto b = exhaustive_law_check(alg);
    CHECK(a.ok);
    CHECK(b.ok);
    CHECK(same_reports(a, b));
  }

  auto bad = functions_comm_alg(and_monoid(), 3);
  bad.mult[1][1][1] = (bad.mult[1][1][1] + 1) % bad.presheaf.size(2);
  auto a = comm_alg_check(bad);
  auto b = exhaustive_law_check(bad);
  CHECK_FALSE(a.ok);
  CHECK_FALSE(b.ok);
  CHECK(same_reports(a, b));

  auto bad2 = functions_comm_alg(and_monoid(), 3);
  bad2.mult[0][1][0] = (bad2.mult[0][1][0] + 1) % bad2.presheaf.size(1);
  CHECK(same_reports(comm_alg_check(bad2), exhaustive_law_check(bad2)));
  CHECK_FALSE(exhaustive_law_check(bad2).ok);
}

TEST_CASE("algebrad law oracle agrees with the checker") {
  for (const auto& s : {terminal_algebrad(3), functions_algebrad(and_monoid(), 3),
                        functions_algebrad(cyclic_monoid(2), 3)}) {
    auto a = algebrad_check(s);
    auto b = exhaustive_law_check(s);
    CHECK(a.ok);
    CHECK(b.ok);
    CHECK(same_reports(a, b));
    CHECK(a.checked == b.checked);
  }

  auto bad = functions_algebrad(and_monoid(), 3);
  auto& t11 = bad.subs.at({1, 1});
  t11[0] = (t11[0] + 1) % bad.algebra.presheaf.size(2);
  auto a = algebrad_check(bad);
  auto b = exhaustive_law_check(bad);
  CHECK_FALSE(a.ok);
  CHECK_FALSE(b.ok);
  CHECK(a.failures.size() == 4);
  CHECK(same_reports(a, b));

  auto flipped = functions_algebrad(and_monoid(), 3);
  flipped.unit = 1 - flipped.unit;
  CHECK(same_reports(algebrad_check(flipped), exhaustive_law_check(flipped)));
  CHECK_FALSE(exhaustive_law_check(flipped).ok);

  std::mt19937_64 rng(7);
  auto keys = substitution_keys(3);
  int corrupted = 0;
  for (int it = 0; it < 10; ++it) {
    auto s = functions_algebrad(and_monoid(), 3);
    const auto& parts = keys[rng() % keys.size()];
    auto& table = s.subs.at(parts);
    int total = 0;
    for (int p : parts) total += p;
    if (table.empty() || s.algebra.presheaf.size(total) < 2) continue;
    size_t cell = rng() % table.size();
    table[cell] = (table[cell] + 1) % s.algebra.presheaf.size(total);
    ++corrupted;
    CHECK(same_reports(algebrad_check(s), exhaustive_law_check(s)));
    CHECK_FALSE(exhaustive_law_check(s).ok);
  }
  CHECK(corrupted >= 5);
}

TEST_CASE("naive presheaf evaluation matches the evaluation functor") {
  auto h2 = representable_presheaf(2, 3);
  for (const auto& mon :
       {trivial_monoid(), and_monoid(), cyclic_monoid(2), cyclic_monoid(3)}) {
    auto main = eval_qa(h2, mon);
    auto nv = naive_eval_qa(h2, mon);
    CHECK(nv.classes == main.class_count());
    CHECK(nv.stabilized);
  }

  auto fun = functions_comm_alg(and_monoid(), 3).presheaf;
  auto main = eval_qa(fun, cyclic_monoid(2));
  auto nv = naive_eval_qa(fun, cyclic_monoid(2));
  CHECK(nv.classes == main.class_count());
  CHECK(nv.stabilized);

  auto m1 = eval_qa(h2, cyclic_monoid(2), 1);
  auto n1 = naive_eval_qa(h2, cyclic_monoid(2), 1);
  CHECK(n1.classes == m1.class_count());

  CHECK_THROWS_AS(naive_eval_qa(h2, and_monoid(), 7), CapacityError);
}

TEST_CASE("naive composite matches the composition functor level by level") {
  auto h1 = representable_presheaf(1, 3);
  auto h2 = representable_presheaf(2, 3);
  auto term = terminal_comm_alg(3);
  auto funAND = functions_comm_alg(and_monoid(), 3);

  auto right_unit = compose_qa(h2, term);
  for (int v = 0; v <= 3; ++v) {
    auto nv = naive_compose_qa(h2, term, v);
    CHECK(nv.classes == right_unit.size(v));
    CHECK(nv.stabilized);
  }

  auto left_unit = compose_qa(h1, funAND);
  for (int v = 0; v <= 3; ++v) {
    auto nv = naive_compose_qa(h1, funAND, v);
    CHECK(nv.classes == left_unit.size(v));
    CHECK(nv.classes == funAND.presheaf.size(v));
  }

  auto square = compose_qa(funAND.presheaf, funAND);
  for (int v = 0; v <= 2; ++v) {
    auto nv = naive_compose_qa(funAND.presheaf, funAND, v);
    CHECK(nv.classes == square.size(v));
    CHECK(nv.stabilized);
  }

  auto truncated = compose_qa(h2, funAND, 2);
  auto nv = naive_compose_qa(h2, funAND, 2, 2);
  CHECK(nv.classes == truncated.size(2));

  CHECK_THROWS_AS(naive_compose_qa(representable_presheaf(1, 2), funAND, 1), DomainError);
  CHECK_THROWS_AS(naive_compose_qa(h2, funAND, 9), DomainError);
  CHECK_THROWS_AS(naive_compose_qa(h2, funAND, 1, 9), CapacityError);
}

TEST_CASE("equivariant bijection search finds and refutes isomorphisms") {
  GSet reg = regular_gset(3);
  auto self = bijection_search(reg, reg);
  REQUIRE(self.has_value());
  for (int i = 0; i < reg.size; ++i) CHECK((*self)[i] == i);

  CHECK_FALSE(bijection_search(trivial_gset(2, 2), regular_gset(2)).has_value());

  // the same induced action presented from blocks in either order
  GSet ind12 = tensor(representable_seq(1, 3), representable_seq(2, 3)).at[3];
  GSet ind21 = tensor(representable_seq(2, 3), representable_seq(1, 3)).at[3];
  auto found = bijection_search(ind12, ind21);
  REQUIRE(found.has_value());
  CHECK(gset_iso(ind12, ind21));
  CHECK(bijection_search(ind12, regular_gset(3)).has_value());
  // the found map is equivariant for every group element
  const auto& sg = symmetric_group(3);
  for (int e = 0; e < ind12.size; ++e)
    for (int g = 0; g < sg.order(); ++g)
      CHECK((*found)[ind12.action[e][g]] == ind21.action[(*found)[e]][g]);

  std::mt19937_64 rng(1234);
  for (int it = 0; it < 40; ++it) {
    GSet a = random_gset(rng, 3, 8);
    GSet b = random_gset(rng, 3, 8);
    CHECK(gset_iso(a, b) == bijection_search(a, b).has_value());
    CHECK(bijection_search(a, a).has_value());
  }

  CHECK_THROWS_AS(bijection_search(trivial_gset(1, 2), trivial_gset(2, 2)), DomainError);
  CHECK_THROWS_AS(bijection_search(trivial_gset(1, 13), trivial_gset(1, 13)), CapacityError);
}
