#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "cli_harness.hpp"
#include "doctest.h"
#include "fincat/corpus.hpp"
#include "fincat/io.hpp"

using namespace fincat;
using namespace cli_harness;
using njson = nlohmann::json;

TEST_CASE("cli honours the documented examples") {
  CHECK(run_cli("check operad corpus:qo/ass").exit == 0);

  RunResult ev = run_cli("eval corpus:qc/h2 --set 3");
  CHECK(ev.exit == 0);
  CHECK(ev.out == "elements: 9\n");

  auto dir = cli_dir();
  std::string uu = (dir / "uu.json").string();
  CHECK(run_cli("corpus export qo/unit -o " + (dir / "unit.json").string()).exit == 0);
  CHECK(run_cli("tensor " + (dir / "unit.json").string() + " " + (dir / "unit.json").string() +
                " -o " + uu)
            .exit == 0);
  std::string h2 = (dir / "h2.json").string();
  save_document(document_of(representable_seq(2, 4)), h2);
  CHECK(run_cli("iso " + uu + " " + h2).exit == 0);

  // the Day unit absorbs: tensoring with it returns the operand exactly
  std::string funs = (dir / "funs.json").string();
  Document fdoc = corpus_document("qa/monoid-functions", 3);
  save_document(document_of(document_presheaf(fdoc)), funs);
  std::string day = (dir / "day.json").string();
  CHECK(run_cli("tensor corpus:qa/unit " + funs + " -o " + day + " --max-arity 3").exit == 0);
  CHECK(slurp(day) == slurp(funs));
}

TEST_CASE("cli covers every documented exit code") {
  auto dir = cli_dir();

  // 0: laws hold / successful product
  CHECK(run_cli("validate corpus:qc/identity").exit == 0);
  CHECK(run_cli("check algebrad corpus:qa/terminal --max-arity 3").exit == 0);

  // 1: laws fail, with a JSON witness report on stdout
  std::string bad = (dir / "bad.json").string();
  {
    Document doc = corpus_document("qc/pointed", 2);
    std::string text = print_document(doc);
    njson j = njson::parse(text);
    int old = j["structure"]["substitution"][2][1][3].get<int>();
    j["structure"]["substitution"][2][1][3] = old == 1 ? 2 : 1;
    std::ofstream(bad) << j.dump(2) << "\n";
  }
  RunResult fail = run_cli("check monad " + bad);
  CHECK(fail.exit == 1);
  CHECK(report_valid(fail.out));
  njson rep = njson::parse(fail.out);
  CHECK(rep["ok"] == false);
  CHECK(rep["exit"] == 1);
  CHECK(!rep["failures"].empty());
  CHECK(!rep["failures"][0]["witness"].get<std::string>().empty());

  RunResult ofail = run_cli("oracle check monad " + bad);
  CHECK(ofail.exit == 1);
  CHECK(njson::parse(ofail.out)["failures"] == rep["failures"]);

  CHECK(run_cli("iso corpus:qo/unit corpus:qo/ass").exit == 1);

  // 2: malformed input, capacity refusals, usage errors
  CHECK(run_cli("validate corpus:qo/none").exit == 2);
  CHECK(run_cli("validate " + (dir / "missing.json").string()).exit == 2);
  CHECK(run_cli("check operad corpus:qc/identity").exit == 2);
  CHECK(run_cli("check monad corpus:qc/h2").exit == 2);
  CHECK(run_cli("eval corpus:qa/unit --set 2").exit == 2);
  CHECK(run_cli("eval corpus:qc/identity --monoid and").exit == 2);
  CHECK(run_cli("eval corpus:qa/unit --monoid prod:7").exit == 2);
  CHECK(run_cli("tensor corpus:qc/identity corpus:qc/h2").exit == 2);
  CHECK(run_cli("tensor corpus:qo/unit corpus:qc/h2").exit == 2);
  CHECK(run_cli("oracle check algebra corpus:qo/com-pos").exit == 2);
  CHECK(run_cli("frobnicate").exit == 2);
  CHECK(run_cli("corpus").exit == 2);
  std::string deep = (dir / "deep.json").string();
  {
    njson j = njson::parse(print_document(corpus_document("qc/identity", 2)));
    j["max_arity"] = 9;
    std::ofstream(deep) << j.dump(2) << "\n";
  }
  CHECK(run_cli("validate " + deep).exit == 2);
  RunResult jerr = run_cli("--json validate " + deep);
  CHECK(jerr.exit == 2);
  CHECK(report_valid(jerr.out));
  CHECK(njson::parse(jerr.out)["exit"] == 2);
}

TEST_CASE("json reports parse against the published schema") {
  auto dir = cli_dir();
  std::string mod = (dir / "mod.json").string();
  {
    AlgebraicMonad monad = identity_monad(3);
    SigmaModule free = free_module(monad, 2);
    save_document(document_of(std::move(monad), std::move(free)), mod);
  }
  std::string alg = (dir / "alg.json").string();
  {
    Operad com = corpus_com_pos(3);
    OperadAlgebra oa = free_algebra(com, 2).algebra;
    save_document(document_of(std::move(com), std::move(oa)), alg);
  }
  for (const std::string& args : {
           std::string("--json validate corpus:qo/ass"),
           std::string("--json eval corpus:qc/h2 --set 2"),
           std::string("--json eval corpus:qa/monoid-functions --monoid and --max-arity 3"),
           std::string("--json check monad corpus:qc/pointed --max-arity 3"),
           std::string("--json check module ") + mod,
           std::string("--json check algebra ") + alg,
           std::string("--json oracle check module ") + mod,
           std::string("--json corpus list"),
           std::string("--json corpus export qo/unit"),
           std::string("--json iso corpus:qo/ass corpus:qo/ass --max-arity 3"),
           std::string("--json oracle eval corpus:qc/powerset --set 2 --max-arity 3"),
           std::string("--json oracle compose corpus:qa/terminal corpus:qa/terminal --level 1 "
                       "--max-arity 2"),
           std::string("--json oracle iso corpus:qo/com-pos corpus:qo/com-pos --max-arity 3"),
           std::string("--json oracle check operad corpus:qo/unit --law associativity"),
       }) {
    CAPTURE(args);
    RunResult r = run_cli(args);
    CHECK(r.exit == 0);
    CHECK(report_valid(r.out));
    CHECK(r.out.rfind("{\n  \"command\":", 0) == 0);
  }
}

TEST_CASE("cli round trips the format") {
  auto dir = cli_dir();
  for (const std::string id : {"qo/ass", "qc/powerset", "qa/monoid-functions"}) {
    CAPTURE(id);
    std::string name = std::string(id).replace(id.find('/'), 1, "_") + ".json";
    std::string path = (dir / name).string();
    CHECK(run_cli("corpus export " + id + " -o " + path + " --max-arity 3").exit == 0);
    CHECK(run_cli("validate " + path).exit == 0);
    // exporting to stdout prints exactly the file bytes
    RunResult direct = run_cli("corpus export " + id + " --max-arity 3");
    CHECK(direct.exit == 0);
    CHECK(direct.out == slurp(path));
    // a parsed and reprinted document is unchanged
    CHECK(print_document(parse_document(slurp(path))) == slurp(path));
  }
}
