#include "doctest.h"
#include "fincat/corpus.hpp"
#include "fincat/error.hpp"
#include "fincat/qo.hpp"

#include <numeric>

using namespace fincat;

namespace {
long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}
} // namespace

TEST_CASE("distinguished sequences") {
  SymSeq u = tensor_unit_seq(3);
  CHECK(u.size(0) == 1);
  CHECK(u.size(1) == 0);
  CHECK(validate_seq(u).ok);

  SymSeq c = comp_unit_seq(3);
  CHECK(c.size(0) == 0);
  CHECK(c.size(1) == 1);
  CHECK(c.size(2) == 0);
  CHECK(validate_seq(c).ok);

  SymSeq h3 = representable_seq(3, 4);
  CHECK(h3.size(3) == 6);
  CHECK(h3.size(2) == 0);
  CHECK(validate_seq(h3).ok);
  CHECK(seq_iso(representable_seq(1, 3), comp_unit_seq(3)));
  CHECK(seq_iso(representable_seq(0, 3), tensor_unit_seq(3)));
  CHECK_THROWS_AS(representable_seq(4, 3), CapacityError);

  SymSeq bad = representable_seq(2, 3);
  bad.support_bound = 1;
  CHECK_FALSE(validate_seq(bad).ok);
}

TEST_CASE("tensor of representables concatenates arities") {
  for (int n = 0; n <= 4; ++n)
    for (int m = 0; n + m <= 4; ++m) {
      SymSeq t = tensor(representable_seq(n, 4), representable_seq(m, 4));
      CHECK(validate_seq(t).ok);
      CHECK(seq_iso(t, representable_seq(n + m, 4)));
    }
}

TEST_CASE("tensor units and cardinalities") {
  Operad ass = corpus_ass(3);
  SymSeq a = ass.seq;
  CHECK(seq_iso(tensor(tensor_unit_seq(3), a), a));
  CHECK(seq_iso(tensor(a, tensor_unit_seq(3)), a));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    SymSeq x = random_seq(rng, 3, 3, false);
    SymSeq y = random_seq(rng, 3, 3, false);
    SymSeq t = tensor(x, y);
    CHECK(validate_seq(t).ok);
    CHECK(seq_iso(t, tensor(y, x)));
    for (int n = 0; n <= 3; ++n) {
      long long expect = 0;
      for (int p = 0; p <= n; ++p)
        expect += factorial(n) / (factorial(p) * factorial(n - p)) * x.size(p) * y.size(n - p);
      CHECK(t.size(n) == expect);
    }
  }
}

TEST_CASE("composition with the unit sequence") {
  Operad com = corpus_com_pos(4);
  Operad ass = corpus_ass(4);
  SymSeq u = comp_unit_seq(4);
  for (const SymSeq* a : {&com.seq, &ass.seq, &u}) {
    SymSeq left = compose(u, *a);
    SymSeq right = compose(*a, u);
    CHECK(validate_seq(left).ok);
    CHECK(validate_seq(right).ok);
    CHECK(seq_iso(left, *a));
    CHECK(seq_iso(right, *a));
  }
}

TEST_CASE("composition of commutative carriers counts partitions") {
  Operad com = corpus_com_pos(4);
  SymSeq cc = compose(com.seq, com.seq);
  CHECK(validate_seq(cc).ok);
  // carriers are the set partitions of an n-element set
  CHECK(cc.size(0) == 0);
  CHECK(cc.size(1) == 1);
  CHECK(cc.size(2) == 2);
  CHECK(cc.size(3) == 5);
  CHECK(cc.size(4) == 15);
}

TEST_CASE("composition of representables multiplies arities") {
  SymSeq h2h2 = compose(representable_seq(2, 4), representable_seq(2, 4));
  CHECK(validate_seq(h2h2).ok);
  CHECK(seq_iso(h2h2, representable_seq(4, 4)));

  SymSeq h0 = representable_seq(0, 4); // nullary point: plugging both slots
  SymSeq c = compose(representable_seq(2, 4), h0);
  CHECK(c.size(0) == 1);
  for (int n = 1; n <= 4; ++n) CHECK(c.size(n) == 0);
}

TEST_CASE("composition refuses unbounded sums") {
  Operad ass = corpus_ass(3);
  SymSeq nullary = tensor_unit_seq(3);
  CHECK_THROWS_AS(compose(ass.seq, nullary), UnboundedCompositionError);
  SymSeq bounded = representable_seq(2, 3);
  CHECK(compose(bounded, nullary).size(0) == 1);
}

TEST_CASE("composition representatives are canonical") {
  Operad com = corpus_com_pos(3);
  std::vector<std::vector<QoElement>> reps;
  SymSeq cc = compose(com.seq, com.seq, &reps);
  for (int n = 0; n <= 3; ++n) {
    CHECK(static_cast<int>(reps[n].size()) == cc.size(n));
    for (const auto& el : reps[n]) {
      CHECK(el.arity == n);
      CHECK(std::accumulate(el.parts.begin(), el.parts.end(), 0) == n);
    }
  }
}

TEST_CASE("composition is associative on random sequences") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    SymSeq x = random_seq(rng, 3, 2, false);
    SymSeq y = random_seq(rng, 3, 2, true);
    SymSeq z = random_seq(rng, 3, 2, true);
    SymSeq lhs = compose(compose(x, y), z);
    SymSeq rhs = compose(x, compose(y, z));
    CHECK(validate_seq(lhs).ok);
    CHECK(validate_seq(rhs).ok);
    CHECK(seq_iso(lhs, rhs));
  }
}

TEST_CASE("evaluation counts orbits") {
  for (int n = 0; n <= 3; ++n)
    for (int k = 0; k <= 4; ++k) {
      if (n == 0 && k == 0) continue;
      EvalQuotient ev = eval_seq(representable_seq(n, 3), k);
      CHECK(ev.class_count() == ipow(k, n));
    }
  EvalQuotient com2 = eval_seq(corpus_com_pos(2).seq, 2);
  CHECK(com2.class_count() == 5);
  CHECK(eval_seq(tensor_unit_seq(3), 4).class_count() == 1);

  // evaluation turns tensor into product, arity by arity
  auto per_arity = [](const EvalQuotient& ev) {
    std::vector<long long> cnt(ev.max_arity + 1, 0);
    for (int c = 0; c < ev.class_count(); ++c) {
      int n, a;
      std::vector<int> tup;
      ev.decode(ev.classes.representative[c], n, a, tup);
      ++cnt[n];
    }
    return cnt;
  };
  std::mt19937_64 rng(3);
  SymSeq a = random_seq(rng, 3, 2, false);
  SymSeq b = random_seq(rng, 3, 2, false);
  for (int k = 1; k <= 3; ++k) {
    auto ca = per_arity(eval_seq(a, k));
    auto cb = per_arity(eval_seq(b, k));
    auto ct = per_arity(eval_seq(tensor(a, b), k));
    for (int n = 0; n <= 3; ++n) {
      long long expect = 0;
      for (int p = 0; p <= n; ++p) expect += ca[p] * cb[n - p];
      CHECK(ct[n] == expect);
    }
  }
}

TEST_CASE("evaluation decodes round-trip") {
  EvalQuotient ev = eval_seq(corpus_ass(2).seq, 2);
  for (long long idx = 0; idx < ev.total; ++idx) {
    int n, a;
    std::vector<int> tup;
    ev.decode(idx, n, a, tup);
    std::vector<int> zero_based(tup);
    for (int& v : zero_based) --v;
    CHECK(ev.index_of(n, a, tuple_rank(zero_based, ev.set_size)) == idx);
  }
}

TEST_CASE("operad laws hold for the builtin operads") {
  CHECK(operad_check(corpus_com_pos(4)).ok);
  CHECK(operad_check(corpus_ass(4)).ok);
  CHECK(operad_check(corpus_unit_operad(4)).ok);
}

TEST_CASE("operad law failures are located") {
  Operad ass = corpus_ass(3);
  Operad bad = ass;
  auto& table = bad.mu[{2, 1}];
  table[0] = (table[0] + 1) % bad.seq.size(3);
  CheckReport rep = operad_check(bad);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.failures.empty());

  Operad bad_left = corpus_ass(3);
  auto& t2 = bad_left.mu[{2}];
  t2[0] = (t2[0] + 1) % bad_left.seq.size(2);
  CheckReport rep_left = operad_check(bad_left);
  CHECK(rep_left.failed(qo_laws::kLeftUnit));

  Operad bad_right = corpus_ass(3);
  auto& t11 = bad_right.mu[{1, 1}];
  t11[0] = (t11[0] + 1) % bad_right.seq.size(2);
  CHECK(operad_check(bad_right).failed(qo_laws::kRightUnit));
}

TEST_CASE("free algebras") {
  FreeAlgebra f = free_algebra(corpus_ass(2), 2);
  CHECK(f.carrier.class_count() == 6);
  CheckReport rep = algebra_check(corpus_ass(2), f.algebra);
  CHECK(rep.ok);
  CHECK(rep.skipped > 0); // truncation leaves some cells undefined

  FreeAlgebra g = free_algebra(corpus_com_pos(3), 1);
  CHECK(g.carrier.class_count() == 3);
  CHECK(algebra_check(corpus_com_pos(3), g.algebra).ok);

  FreeAlgebra u = free_algebra(corpus_unit_operad(3), 3);
  CHECK(u.carrier.class_count() == 3);
  CHECK(algebra_check(corpus_unit_operad(3), u.algebra).ok);
  for (int t = 0; t < 3; ++t) CHECK(u.algebra.apply(1, 0, t) == t);

  OperadAlgebra bad = g.algebra;
  bad.act[1][0] = (bad.act[1][0] + 1) % bad.carrier;
  CHECK_FALSE(algebra_check(corpus_com_pos(3), bad).ok);
}
