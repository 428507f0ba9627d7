#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "fincat/corpus.hpp"
#include "fincat/error.hpp"
#include "fincat/io.hpp"

using namespace fincat;
using ojson = nlohmann::ordered_json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "fincat_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string reprint(const std::string& text) { return print_document(parse_document(text)); }

std::string mutate(const std::string& text, const std::function<void(ojson&)>& fn) {
  ojson j = ojson::parse(text);
  fn(j);
  return j.dump(2) + "\n";
}

} // namespace

TEST_CASE("documents round trip byte for byte") {
  for (const auto& e : corpus_entries()) {
    Document doc = corpus_document(e.id, 3);
    CHECK(doc.calculus == e.calculus);
    std::string text = print_document(doc);
    CHECK(text.back() == '\n');
    CHECK(reprint(text) == text);
    CHECK(validate_document(parse_document(text)).ok);
  }
}

TEST_CASE("parsing restores the exact tables") {
  Operad o = corpus_ass(3);
  Document doc = parse_document(print_document(document_of(o)));
  REQUIRE(doc.operad.has_value());
  CHECK(doc.operad->unit == o.unit);
  CHECK(doc.operad->mu == o.mu);
  for (int n = 0; n <= 3; ++n) CHECK(doc.operad->seq.at[n].action == o.seq.at[n].action);
  CHECK(doc.operad->seq.support_bound == o.seq.support_bound);

  AlgebraicMonad mon = pointed_monad(3);
  Document dm = parse_document(print_document(document_of(mon)));
  REQUIRE(dm.monad.has_value());
  CHECK(dm.monad->unit == mon.unit);
  CHECK(dm.monad->subs == mon.subs);
  CHECK(dm.monad->functor.sizes == mon.functor.sizes);
  CHECK(dm.monad->functor.transitions == mon.functor.transitions);

  QaAlgebrad alg = functions_algebrad(and_monoid(), 3);
  Document da = parse_document(print_document(document_of(alg)));
  REQUIRE(da.algebrad.has_value());
  CHECK(da.algebrad->unit == alg.unit);
  CHECK(da.algebrad->subs == alg.subs);
  CHECK(da.algebrad->algebra.unit_e0 == alg.algebra.unit_e0);
  CHECK(da.algebrad->algebra.mult == alg.algebra.mult);
  CHECK(da.algebrad->algebra.presheaf.restrictions == alg.algebra.presheaf.restrictions);
}

TEST_CASE("algebra and module sections round trip") {
  Operad o = corpus_com_pos(3);
  FreeAlgebra fa = free_algebra(o, 2);
  Document doc = document_of(o, fa.algebra);
  std::string text = print_document(doc);
  CHECK(reprint(text) == text);
  Document back = parse_document(text);
  REQUIRE(back.algebra.has_value());
  CHECK(back.algebra->carrier == fa.algebra.carrier);
  CHECK(back.algebra->act == fa.algebra.act);
  CHECK(algebra_check(*back.operad, *back.algebra).ok);

  AlgebraicMonad mon = identity_monad(3);
  SigmaModule mod = free_module(mon, 2);
  std::string mtext = print_document(document_of(mon, mod));
  CHECK(reprint(mtext) == mtext);
  Document mback = parse_document(mtext);
  REQUIRE(mback.module.has_value());
  CHECK(mback.module->carrier == mod.carrier);
  CHECK(mback.module->action == mod.action);
  CHECK(module_check(*mback.monad, *mback.module).ok);
}

TEST_CASE("documents load from files and corpus uris") {
  Document doc = corpus_document("qc/h2", 3);
  CHECK(eval_functor(document_functor(doc), 3) == 9);
  auto path = temp_file("h2.json");
  save_document(doc, path.string());
  Document back = load_document(path.string(), 5);
  CHECK(back.max_arity == 3);
  CHECK(print_document(back) == print_document(doc));

  Document via_uri = load_document("corpus:qc/h2", 3);
  CHECK(print_document(via_uri) == print_document(doc));

  CHECK_THROWS_AS(load_document("corpus:qc/nope", 3), UnknownIdError);
  CHECK_THROWS_AS(load_document(temp_file("missing.json").string(), 3), ParseError);
}

TEST_CASE("malformed documents are rejected") {
  std::string text = print_document(corpus_document("qc/pointed", 2));
  CHECK_THROWS_AS(parse_document("not json"), ParseError);
  CHECK_THROWS_AS(parse_document("[]\n"), ParseError);
  CHECK_THROWS_AS(parse_document(mutate(text, [](ojson& j) { j["format"] = 2; })), ParseError);
  CHECK_THROWS_AS(parse_document(mutate(text, [](ojson& j) { j["calculus"] = "qz"; })), ParseError);
  CHECK_THROWS_AS(parse_document(mutate(text, [](ojson& j) { j["max_arity"] = 9; })), CapacityError);
  CHECK_THROWS_AS(parse_document(mutate(text, [](ojson& j) { j["extra"] = 1; })), ParseError);
  CHECK_THROWS_AS(parse_document(mutate(text, [](ojson& j) { j.erase("transitions"); })), ParseError);
  CHECK_THROWS_AS(parse_document(mutate(text, [](ojson& j) { j["structure"].erase("unit"); })),
                  ParseError);
  CHECK_THROWS_AS(parse_document(mutate(text, [](ojson& j) { j["structure"]["unit"] = 5; })),
                  ParseError);
  CHECK_THROWS_AS(
      parse_document(mutate(text, [](ojson& j) { j["transitions"][1][1][0][0] = 9; })),
      ParseError);
  CHECK_THROWS_AS(
      parse_document(mutate(text, [](ojson& j) { j["transitions"][1][1][0].push_back(1); })),
      ParseError);
  CHECK_THROWS_AS(parse_document(mutate(text, [](ojson& j) { j["module"] = ojson::object(); })),
                  ParseError);

  std::string otext = print_document(corpus_document("qo/ass", 2));
  CHECK_THROWS_AS(parse_document(mutate(
                      otext, [](ojson& j) { j["structure"]["substitution"][1]["parts"][0] = 3; })),
                  ParseError);
  CHECK_THROWS_AS(
      parse_document(mutate(otext, [](ojson& j) { j["carriers"][2]["gens"][0][0] = 7; })),
      ParseError);
  Operad com = corpus_com_pos(2);
  std::string atext = print_document(document_of(com, free_algebra(com, 1).algebra));
  CHECK_THROWS_AS(parse_document(mutate(atext, [](ojson& j) { j.erase("structure"); })), ParseError);

  std::string qtext = print_document(corpus_document("qa/monoid-functions", 2));
  CHECK_THROWS_AS(parse_document(mutate(qtext, [](ojson& j) { j["structure"]["unit0"] = 2; })),
                  ParseError);
  CHECK_THROWS_AS(
      parse_document(mutate(qtext, [](ojson& j) { j["structure"]["multiplication"][0].push_back(
                                 ojson::array()); })),
      ParseError);
}

TEST_CASE("loading rejects tables that break the carrier axioms") {
  std::string text = print_document(corpus_document("qc/h2", 2));
  size_t idrank = static_cast<size_t>(map_rank(identity_map(2)));
  std::string broken = mutate(text, [&](ojson& j) {
    int old = j["transitions"][2][2][idrank][0].get<int>();
    j["transitions"][2][2][idrank][0] = old == 1 ? 2 : 1;
  });
  CHECK(!validate_document(parse_document(broken)).ok);
  auto path = temp_file("broken.json");
  std::ofstream(path) << broken;
  CHECK_THROWS_AS(load_document(path.string(), 2), DomainError);

  std::string otext = print_document(document_of(corpus_ass(2).seq));
  std::string obroken =
      mutate(otext, [](ojson& j) { j["carriers"][2]["gens"][0] = ojson::array({1, 1}); });
  CHECK(!validate_document(parse_document(obroken)).ok);
}
