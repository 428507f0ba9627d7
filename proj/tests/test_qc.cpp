#include "doctest.h"
#include "fincat/error.hpp"
#include "fincat/qc.hpp"

using namespace fincat;

TEST_CASE("functor builders carry the right sizes") {
  FinFunctor id = identity_functor(3);
  FinFunctor pt = pointed_functor(3);
  FinFunctor pw = powerset_functor(3);
  FinFunctor h2 = representable_functor(2, 3);
  FinFunctor h0 = representable_functor(0, 3);
  for (int n = 0; n <= 3; ++n) {
    CHECK(id.size(n) == n);
    CHECK(pt.size(n) == n + 1);
    CHECK(pw.size(n) == 1 << n);
    CHECK(h2.size(n) == n * n);
    CHECK(h0.size(n) == 1);
  }
  for (const FinFunctor* f : {&id, &pt, &pw, &h2, &h0}) CHECK(validate_functor(*f).ok);
}

TEST_CASE("transitions transport elements") {
  FinFunctor pw = powerset_functor(2);
  FinMap swap{2, 2, {2, 1}};
  CHECK(pw.apply(swap, 0b01) == 0b10);
  CHECK(pw.apply(swap, 0b11) == 0b11);

  FinFunctor h2 = representable_functor(2, 3);
  FinMap into{1, 2, {2}};
  // the constant map (1,1) lands on (2,2), rank 3 among maps into a 2-set
  CHECK(h2.apply(into, 0) == 3);

  FinFunctor pt = pointed_functor(2);
  CHECK(pt.apply(swap, 0) == 1);
  CHECK(pt.apply(swap, 2) == 2); // added point is fixed
}

TEST_CASE("validate_functor catches corruption") {
  FinFunctor id = identity_functor(2);
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n)
      for (size_t r = 0; r < id.transitions[m][n].size(); ++r)
        for (size_t e = 0; e < id.transitions[m][n][r].size(); ++e) {
          FinFunctor bad = id;
          bad.transitions[m][n][r][e] = (bad.transitions[m][n][r][e] + 1) % bad.size(n);
          if (bad.size(n) <= 1) continue;
          CHECK_FALSE(validate_functor(bad).ok);
        }
}

TEST_CASE("evaluation looks up the carrier") {
  CHECK(eval_functor(representable_functor(2, 3), 3) == 9);
  for (int k = 0; k <= 3; ++k) CHECK(eval_functor(identity_functor(3), k) == k);
  CHECK(eval_functor(powerset_functor(2), 2) == 4);
  CHECK_THROWS_AS(eval_functor(identity_functor(2), 3), CapacityError);
}

TEST_CASE("composition of functors") {
  FinFunctor id = identity_functor(3);
  FinFunctor h2 = representable_functor(2, 3);
  FinFunctor pw = powerset_functor(3);

  FinFunctor left = compose_qc(h2, id);
  CHECK(left.sizes == h2.sizes);
  CHECK(left.transitions == h2.transitions);
  FinFunctor right = compose_qc(id, compose_qc(pw, representable_functor(0, 3)));
  for (int n = 0; n <= 3; ++n) CHECK(right.size(n) == 2);
  CHECK(validate_functor(right).ok);
  FinFunctor outer = compose_qc(pw, id);
  CHECK(outer.sizes == pw.sizes);
  CHECK(outer.transitions == pw.transitions);

  // inner carriers must stay within the bound
  CHECK_THROWS_AS(compose_qc(id, pointed_functor(3)), CapacityError);

  FinFunctor h0 = representable_functor(0, 3);
  FinFunctor fh0 = compose_qc(pw, h0);
  for (int n = 0; n <= 3; ++n) CHECK(fh0.size(n) == pw.size(1));
  CHECK(validate_functor(fh0).ok);

  FinFunctor assoc_l = compose_qc(compose_qc(h2, h0), id);
  FinFunctor assoc_r = compose_qc(h2, compose_qc(h0, id));
  CHECK(assoc_l.sizes == assoc_r.sizes);
  CHECK(assoc_l.transitions == assoc_r.transitions);

  // composite carriers follow the inner sizes even when the full composite
  // does not fit: (h2 . pointed)(n) = (n+1)^2
  FinFunctor h2w = representable_functor(2, 4);
  FinFunctor ptw = pointed_functor(4);
  for (int n = 0; n <= 3; ++n) CHECK(h2w.size(ptw.size(n)) == (n + 1) * (n + 1));
}

TEST_CASE("pointwise product multiplies carriers") {
  FinFunctor p = pointwise_product(representable_functor(2, 3), pointed_functor(3));
  std::vector<int> want{0, 2, 12, 36};
  CHECK(p.sizes == want);
  CHECK(validate_functor(p).ok);
}

TEST_CASE("monad laws hold for the builtin monads") {
  CheckReport id_rep = monad_check(identity_monad(4));
  CHECK(id_rep.ok);
  CHECK(id_rep.checked > 0);
  CHECK(monad_check(pointed_monad(4)).ok);
  CHECK(monad_check(powerset_monad(3)).ok);
}

TEST_CASE("monad law failures are located") {
  AlgebraicMonad bad = pointed_monad(2);
  // mu(unit; t) lives at table (1,1), row of the unit, first column
  bad.subs[1][1][0] = (bad.subs[1][1][0] + 1) % bad.functor.size(1);
  CheckReport rep = monad_check(bad);
  CHECK(rep.failed(qc_laws::kLeftUnit));
  CHECK(rep.failures.front().witness == "n=1 t=1");

  AlgebraicMonad bad_unit = pointed_monad(2);
  bad_unit.unit = 1;
  CheckReport urep = monad_check(bad_unit);
  CHECK_FALSE(urep.ok);
  CHECK(urep.failed(qc_laws::kLeftUnit));
}

TEST_CASE("substitution acts as expected") {
  AlgebraicMonad pw = powerset_monad(3);
  // {1,2} substituted with {1,3} and {2} gives their union
  CHECK(pw.substitute(2, 3, 0b11, {0b101, 0b010}) == 0b111);
  CHECK(pw.substitute(2, 3, 0, {0b101, 0b010}) == 0);

  AlgebraicMonad id = identity_monad(3);
  CHECK(id.substitute(3, 2, 1, {1, 0, 1}) == 0);
}

TEST_CASE("free modules satisfy the module laws") {
  AlgebraicMonad pt = pointed_monad(3);
  SigmaModule free2 = free_module(pt, 2);
  CHECK(free2.carrier == 3);
  CHECK(module_check(pt, free2).ok);

  AlgebraicMonad id = identity_monad(3);
  for (int s = 0; s <= 3; ++s) {
    SigmaModule f = free_module(id, s);
    CHECK(f.carrier == s);
    for (int t = 0; t < s; ++t) CHECK(f.action[t] == t);
    CHECK(module_check(id, f).ok);
  }

  // the powerset free module on one generator is only checkable in part at
  // bound 3: the evaluated carrier has 4 elements
  AlgebraicMonad pw3 = powerset_monad(3);
  CheckReport partial = module_check(pw3, free_module(pw3, 1));
  CHECK(partial.ok);
  CHECK(partial.skipped > 0);
  CHECK_FALSE(partial.notes.empty());

  AlgebraicMonad pw4 = powerset_monad(4);
  CheckReport full = module_check(pw4, free_module(pw4, 1));
  CHECK(full.ok);
  CHECK(full.notes.empty());
}

TEST_CASE("module law failures are located") {
  AlgebraicMonad pt = pointed_monad(4);
  SigmaModule mod = free_module(pt, 2);
  SigmaModule bad = mod;
  bad.action[0] = (bad.action[0] + 1) % bad.carrier;
  CheckReport rep = module_check(pt, bad);
  CHECK(rep.failed(qc_module_laws::kUnit));
  CHECK(rep.failures.front().witness == "x=1");

  SigmaModule terminal{1, std::vector<int>(pt.functor.size(1), 0)};
  CHECK(module_check(pt, terminal).ok);
}

TEST_CASE("module morphisms count the carrier of the target") {
  AlgebraicMonad pt = pointed_monad(3);
  SigmaModule free1 = free_module(pt, 1);
  CHECK(count_module_homs(pt, free1, free_module(pt, 2)) == 3);
  SigmaModule terminal{1, std::vector<int>(pt.functor.size(1), 0)};
  CHECK(count_module_homs(pt, free1, terminal) == 1);

  AlgebraicMonad id = identity_monad(3);
  CHECK(count_module_homs(id, free_module(id, 1), free_module(id, 2)) == 2);
}

TEST_CASE("capacity refusals") {
  CHECK_THROWS_AS(powerset_monad(5), CapacityError);
  CHECK_THROWS_AS(free_module(powerset_monad(4), 3), CapacityError);
  CHECK_THROWS_AS(representable_functor(9, 3), CapacityError);
}
