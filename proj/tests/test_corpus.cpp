#include <vector>

#include "doctest.h"
#include "fincat/corpus.hpp"
#include "fincat/error.hpp"
#include "fincat/io.hpp"
#include "fincat/oracle.hpp"

using namespace fincat;

TEST_CASE("corpus metadata matches a fresh reconstruction") {
  CHECK(corpus_ids().size() == corpus_entries().size());
  for (const auto& e : corpus_entries()) {
    Document doc = corpus_document(e.id, 3);
    std::vector<int> sizes;
    if (e.calculus == "qo") {
      const SymSeq& a = document_seq(doc);
      for (int n = 0; n <= 3; ++n) sizes.push_back(a.size(n));
    } else if (e.calculus == "qc") {
      sizes = document_functor(doc).sizes;
    } else {
      sizes = document_presheaf(doc).sizes;
    }
    CHECK(sizes == e.sizes_at_3);
    CHECK(corpus_entry(e.id).summary == e.summary);
  }
  CHECK_THROWS_AS(corpus_entry("qo/none"), UnknownIdError);
}

TEST_CASE("every corpus entry passes its checker and the oracle") {
  for (const auto& e : corpus_entries()) {
    CAPTURE(e.id);
    int bound = e.id == "qo/com-pos" ? 4 : 3;
    Document doc = corpus_document(e.id, bound);
    if (e.kind == "operad") {
      CHECK(operad_check(*doc.operad).ok == e.laws_ok);
      CHECK(exhaustive_law_check(*doc.operad).ok == e.laws_ok);
    } else if (e.kind == "monad") {
      CHECK(monad_check(*doc.monad).ok == e.laws_ok);
      CHECK(exhaustive_law_check(*doc.monad).ok == e.laws_ok);
    } else if (e.kind == "algebrad") {
      CHECK((comm_alg_check(doc.algebrad->algebra).ok && algebrad_check(*doc.algebrad).ok) ==
            e.laws_ok);
      CHECK((exhaustive_law_check(doc.algebrad->algebra).ok &&
             exhaustive_law_check(*doc.algebrad).ok) == e.laws_ok);
    } else if (e.kind == "functor") {
      CHECK(validate_functor(*doc.functor).ok == e.laws_ok);
    } else {
      CHECK(validate_presheaf(*doc.presheaf).ok == e.laws_ok);
    }
  }
}
