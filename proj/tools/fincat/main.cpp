// Command-line surface over the core library: validation, products,
// evaluation, law suites, oracles and the builtin corpus. Exit codes:
// 0 success / laws hold, 1 laws fail (JSON report with witnesses on
// stdout), 2 malformed input or capacity refusal.

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "fincat/corpus.hpp"
#include "fincat/error.hpp"
#include "fincat/io.hpp"
#include "fincat/oracle.hpp"

using namespace fincat;
using ojson = nlohmann::ordered_json;

namespace {

struct Output {
  std::string command;
  bool ok = true;
  int exit = 0;
  long long checked = -1; // emitted when >= 0
  long long skipped = -1;
  std::vector<LawFailure> failures;
  std::vector<std::string> notes;
  ojson data = ojson::object();
  std::vector<std::string> lines; // human readable form
};

ojson envelope(const Output& out) {
  ojson j = ojson::object();
  j["command"] = out.command;
  j["ok"] = out.ok;
  j["exit"] = out.exit;
  if (out.checked >= 0) j["checked"] = out.checked;
  if (out.skipped >= 0) j["skipped"] = out.skipped;
  ojson fails = ojson::array();
  for (const auto& f : out.failures) {
    ojson e = ojson::object();
    e["law"] = f.law;
    e["witness"] = f.witness;
    fails.push_back(std::move(e));
  }
  j["failures"] = std::move(fails);
  j["notes"] = out.notes;
  j["data"] = out.data;
  return j;
}

// law failures always surface as a JSON report; otherwise --json decides
int emit(const Output& out, bool json) {
  if (json || out.exit == 1) {
    std::cout << envelope(out).dump(2) << "\n";
  } else {
    for (const auto& line : out.lines) std::cout << line << "\n";
  }
  return out.exit;
}

void fill_from_report(Output& out, const CheckReport& rep) {
  out.ok = rep.ok;
  out.exit = rep.ok ? 0 : 1;
  out.checked = rep.checked;
  out.skipped = rep.skipped;
  out.failures = rep.failures;
  for (const auto& n : rep.notes) out.notes.push_back(n);
  out.lines.push_back(rep.ok ? "ok: all laws hold (" + std::to_string(rep.checked) + " instances checked)"
                             : "failed");
  for (const auto& n : rep.notes) out.lines.push_back("note: " + n);
}

CheckReport concat_reports(CheckReport a, const CheckReport& b) {
  a.ok = a.ok && b.ok;
  a.checked += b.checked;
  a.skipped += b.skipped;
  a.failures.insert(a.failures.end(), b.failures.begin(), b.failures.end());
  a.notes.insert(a.notes.end(), b.notes.begin(), b.notes.end());
  return a;
}

FiniteCommMonoid monoid_by_name(const std::string& name) {
  if (name == "trivial") return trivial_monoid();
  if (name == "and") return and_monoid();
  if (name.rfind("cyclic:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(name.substr(7));
    } catch (const std::exception&) {
      throw DomainError("unknown monoid: " + name + " (expected trivial | and | cyclic:k)");
    }
    if (k < 1) throw DomainError("cyclic monoid needs a positive modulus");
    return cyclic_monoid(k);
  }
  throw DomainError("unknown monoid: " + name + " (expected trivial | and | cyclic:k)");
}

std::vector<int> carrier_sizes(const Document& doc) {
  std::vector<int> sizes;
  if (doc.calculus == "qo") {
    const SymSeq& a = document_seq(doc);
    for (int n = 0; n <= a.max_arity; ++n) sizes.push_back(a.size(n));
  } else if (doc.calculus == "qc") {
    sizes = document_functor(doc).sizes;
  } else {
    sizes = document_presheaf(doc).sizes;
  }
  return sizes;
}

void require_same_calculus(const Document& a, const Document& b) {
  if (a.calculus != b.calculus)
    throw DomainError("operands live in different calculi: " + a.calculus + " vs " + b.calculus);
}

// writes the result to -o, otherwise prints the raw document
void deliver_document(Output& out, const Document& doc, const std::string& out_path, bool json) {
  out.data["carriers"] = carrier_sizes(doc);
  if (!out_path.empty()) {
    save_document(doc, out_path);
    out.data["out"] = out_path;
    out.lines.push_back("wrote " + out_path);
  } else if (json) {
    out.data["document"] = ojson::parse(print_document(doc));
  } else {
    std::string text = print_document(doc);
    text.pop_back(); // emitted through lines, which append the newline
    out.lines.push_back(text);
  }
}

Output run_validate(const std::string& file, int bound) {
  Output out;
  out.command = "validate";
  Document doc = load_document(file, bound); // throws on parse errors
  CheckReport rep = validate_document(doc);
  fill_from_report(out, rep);
  out.data["calculus"] = doc.calculus;
  out.data["max_arity"] = doc.max_arity;
  out.data["carriers"] = carrier_sizes(doc);
  if (rep.ok)
    out.lines.assign({"valid " + doc.calculus + " document at bound " +
                      std::to_string(doc.max_arity)});
  return out;
}

Output run_tensor(const std::string& a_path, const std::string& b_path, const std::string& out_path,
                  int bound, bool json) {
  Output out;
  out.command = "tensor";
  Document a = load_document(a_path, bound);
  Document b = load_document(b_path, bound);
  require_same_calculus(a, b);
  Document result;
  if (a.calculus == "qo")
    result = document_of(tensor(document_seq(a), document_seq(b)));
  else if (a.calculus == "qa")
    result = document_of(day_tensor(document_presheaf(a), document_presheaf(b)));
  else
    throw DomainError("tensor is defined for qo and qa documents, not qc");
  deliver_document(out, result, out_path, json);
  return out;
}

Output run_compose(const std::string& a_path, const std::string& b_path,
                   const std::string& out_path, int bound, int cutoff, bool json) {
  Output out;
  out.command = "compose";
  Document a = load_document(a_path, bound);
  Document b = load_document(b_path, bound);
  require_same_calculus(a, b);
  Document result;
  if (a.calculus == "qo") {
    result = document_of(compose(document_seq(a), document_seq(b)));
  } else if (a.calculus == "qc") {
    result = document_of(compose_qc(document_functor(a), document_functor(b)));
  } else {
    if (!b.algebrad)
      throw DomainError("qa composition needs an algebrad structure on the right operand");
    result = document_of(compose_qa(document_presheaf(a), b.algebrad->algebra, cutoff));
  }
  deliver_document(out, result, out_path, json);
  return out;
}

Output run_eval(const std::string& file, int bound, int set_size, const std::string& monoid,
                int cutoff) {
  Output out;
  out.command = "eval";
  Document doc = load_document(file, bound);
  if (doc.calculus == "qa") {
    if (set_size >= 0)
      throw DomainError("qa evaluation takes --monoid, not --set (coefficients form a monoid)");
    if (monoid.empty()) throw DomainError("qa evaluation needs --monoid (trivial | and | cyclic:k)");
    QaEval ev = eval_qa(document_presheaf(doc), monoid_by_name(monoid), cutoff);
    out.data["elements"] = ev.class_count();
    out.data["cutoff"] = ev.cutoff;
    out.lines.push_back("elements: " + std::to_string(ev.class_count()));
    return out;
  }
  if (!monoid.empty())
    throw DomainError("--monoid applies to qa documents; " + doc.calculus + " evaluation takes --set");
  if (set_size < 0) throw DomainError("evaluation needs --set K (size of the evaluated set)");
  long long n = 0;
  if (doc.calculus == "qo")
    n = eval_seq(document_seq(doc), set_size).class_count();
  else
    n = eval_functor(document_functor(doc), set_size);
  out.data["elements"] = n;
  out.lines.push_back("elements: " + std::to_string(n));
  return out;
}

Output run_check(const std::string& kind, const std::string& file, int bound) {
  Output out;
  out.command = "check " + kind;
  Document doc = load_document(file, bound);
  CheckReport rep;
  if (kind == "operad") {
    if (!doc.operad) throw DomainError("check operad needs a qo document with a structure section");
    rep = operad_check(*doc.operad);
  } else if (kind == "monad") {
    if (!doc.monad) throw DomainError("check monad needs a qc document with a structure section");
    rep = monad_check(*doc.monad);
  } else if (kind == "algebrad") {
    if (!doc.algebrad)
      throw DomainError("check algebrad needs a qa document with a structure section");
    rep = concat_reports(comm_alg_check(doc.algebrad->algebra), algebrad_check(*doc.algebrad));
  } else if (kind == "algebra") {
    if (!doc.operad || !doc.algebra)
      throw DomainError("check algebra needs a qo document with structure and algebra sections");
    rep = algebra_check(*doc.operad, *doc.algebra);
  } else {
    if (!doc.monad || !doc.module)
      throw DomainError("check module needs a qc document with structure and module sections");
    rep = module_check(*doc.monad, *doc.module);
  }
  fill_from_report(out, rep);
  return out;
}

Output run_iso(const std::string& a_path, const std::string& b_path, int bound) {
  Output out;
  out.command = "iso";
  Document a = load_document(a_path, bound);
  Document b = load_document(b_path, bound);
  require_same_calculus(a, b);
  if (a.calculus != "qo")
    throw DomainError("iso compares qo documents; other calculi have no isomorphism search");
  const SymSeq& x = document_seq(a);
  const SymSeq& y = document_seq(b);
  if (x.max_arity != y.max_arity)
    throw DomainError("iso needs equal arity bounds: " + std::to_string(x.max_arity) + " vs " +
                      std::to_string(y.max_arity));
  for (int n = 0; n <= x.max_arity; ++n) {
    if (!gset_iso(x.at[n], y.at[n])) {
      out.ok = false;
      out.exit = 1;
      out.failures.push_back({"isomorphism", "arity " + std::to_string(n) + ": no equivariant bijection"});
    }
  }
  out.checked = x.max_arity + 1;
  out.lines.push_back(out.ok ? "isomorphic" : "not isomorphic");
  out.data["isomorphic"] = out.ok;
  return out;
}

Output run_corpus_list() {
  Output out;
  out.command = "corpus list";
  ojson entries = ojson::array();
  for (const auto& e : corpus_entries()) {
    ojson item = ojson::object();
    item["id"] = e.id;
    item["calculus"] = e.calculus;
    item["kind"] = e.kind;
    item["summary"] = e.summary;
    entries.push_back(std::move(item));
    out.lines.push_back(e.id + "  (" + e.kind + ") " + e.summary);
  }
  out.data["entries"] = std::move(entries);
  return out;
}

Output run_corpus_export(const std::string& id, const std::string& out_path, int bound, bool json) {
  Output out;
  out.command = "corpus export";
  Document doc = corpus_document(id, bound);
  out.data["id"] = id;
  deliver_document(out, doc, out_path, json);
  return out;
}

Output run_oracle_check(const std::string& kind, const std::string& file, const std::string& law,
                        int bound) {
  Output out;
  out.command = "oracle check " + kind;
  Document doc = load_document(file, bound);
  CheckReport rep;
  if (kind == "operad") {
    if (!doc.operad) throw DomainError("oracle check operad needs a qo document with a structure section");
    rep = exhaustive_law_check(*doc.operad, law);
  } else if (kind == "monad") {
    if (!doc.monad) throw DomainError("oracle check monad needs a qc document with a structure section");
    rep = exhaustive_law_check(*doc.monad, law);
  } else if (kind == "algebrad") {
    if (!doc.algebrad)
      throw DomainError("oracle check algebrad needs a qa document with a structure section");
    if (law.empty())
      rep = concat_reports(exhaustive_law_check(doc.algebrad->algebra),
                           exhaustive_law_check(*doc.algebrad));
    else if (law.rfind("m-", 0) == 0)
      rep = exhaustive_law_check(doc.algebrad->algebra, law);
    else
      rep = exhaustive_law_check(*doc.algebrad, law);
  } else {
    if (!doc.monad || !doc.module)
      throw DomainError("oracle check module needs a qc document with structure and module sections");
    rep = exhaustive_law_check(*doc.monad, *doc.module, law);
  }
  fill_from_report(out, rep);
  return out;
}

Output run_oracle_eval(const std::string& file, int bound, int set_size, const std::string& monoid,
                       int cutoff) {
  Output out;
  out.command = "oracle eval";
  Document doc = load_document(file, bound);
  if (doc.calculus == "qo") {
    if (set_size < 0) throw DomainError("oracle eval needs --set K for qo documents");
    long long n = naive_eval_qo(document_seq(doc), set_size);
    out.data["elements"] = n;
    out.lines.push_back("elements: " + std::to_string(n));
    return out;
  }
  StabilizedQuotient q;
  if (doc.calculus == "qc") {
    if (set_size < 0) throw DomainError("oracle eval needs --set K for qc documents");
    q = naive_eval_qc(document_functor(doc), set_size, cutoff);
  } else {
    if (monoid.empty())
      throw DomainError("oracle eval needs --monoid (trivial | and | cyclic:k) for qa documents");
    q = naive_eval_qa(document_presheaf(doc), monoid_by_name(monoid), cutoff);
  }
  out.data["elements"] = q.classes;
  out.data["stabilized"] = q.stabilized;
  out.lines.push_back("elements: " + std::to_string(q.classes) +
                      (q.stabilized ? " (stabilized)" : " (not stabilized)"));
  return out;
}

Output run_oracle_compose(const std::string& a_path, const std::string& b_path, int level,
                          int cutoff, int bound) {
  Output out;
  out.command = "oracle compose";
  Document a = load_document(a_path, bound);
  Document b = load_document(b_path, bound);
  require_same_calculus(a, b);
  if (a.calculus != "qa")
    throw DomainError("oracle compose rebuilds qa composites; use oracle eval for qc documents");
  if (!b.algebrad)
    throw DomainError("oracle compose needs an algebrad structure on the right operand");
  StabilizedQuotient q =
      naive_compose_qa(document_presheaf(a), b.algebrad->algebra, level, cutoff);
  out.data["elements"] = q.classes;
  out.data["stabilized"] = q.stabilized;
  out.lines.push_back("elements: " + std::to_string(q.classes) +
                      (q.stabilized ? " (stabilized)" : " (not stabilized)"));
  return out;
}

Output run_oracle_iso(const std::string& a_path, const std::string& b_path, int bound) {
  Output out;
  out.command = "oracle iso";
  Document a = load_document(a_path, bound);
  Document b = load_document(b_path, bound);
  require_same_calculus(a, b);
  if (a.calculus != "qo")
    throw DomainError("oracle iso compares qo documents; other calculi have no isomorphism search");
  const SymSeq& x = document_seq(a);
  const SymSeq& y = document_seq(b);
  if (x.max_arity != y.max_arity)
    throw DomainError("oracle iso needs equal arity bounds: " + std::to_string(x.max_arity) +
                      " vs " + std::to_string(y.max_arity));
  for (int n = 0; n <= x.max_arity; ++n) {
    if (!bijection_search(x.at[n], y.at[n])) {
      out.ok = false;
      out.exit = 1;
      out.failures.push_back({"isomorphism", "arity " + std::to_string(n) + ": no equivariant bijection"});
    }
  }
  out.checked = x.max_arity + 1;
  out.lines.push_back(out.ok ? "isomorphic" : "not isomorphic");
  out.data["isomorphic"] = out.ok;
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite arity-truncated algebraic calculi: products, evaluation, law suites"};
  app.require_subcommand(1);
  int bound = 4;
  bool json = false;
  app.add_option("--max-arity", bound, "arity truncation bound for constructed inputs")
      ->capture_default_str();
  app.add_flag("--json", json, "machine readable report on stdout");

  auto* validate_cmd = app.add_subcommand("validate", "parse a document and check carrier axioms");
  std::string v_file;
  validate_cmd->add_option("file", v_file, "document path or corpus:<id>")->required();

  auto* tensor_cmd = app.add_subcommand("tensor", "tensor product (qo) or Day tensor (qa)");
  std::string t_a, t_b, t_out;
  tensor_cmd->add_option("a", t_a)->required();
  tensor_cmd->add_option("b", t_b)->required();
  tensor_cmd->add_option("-o,--out", t_out, "write the result document here");

  auto* compose_cmd = app.add_subcommand("compose", "composition product");
  std::string c_a, c_b, c_out;
  int c_cutoff = -1;
  compose_cmd->add_option("a", c_a)->required();
  compose_cmd->add_option("b", c_b)->required();
  compose_cmd->add_option("-o,--out", c_out, "write the result document here");
  compose_cmd->add_option("--cutoff", c_cutoff, "qa only: cap on the outer arity");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate at a finite set (qo, qc) or monoid (qa)");
  std::string e_file, e_monoid;
  int e_set = -1, e_cutoff = -1;
  eval_cmd->add_option("file", e_file)->required();
  eval_cmd->add_option("--set", e_set, "size of the evaluated set");
  eval_cmd->add_option("--monoid", e_monoid, "qa coefficients: trivial | and | cyclic:k");
  eval_cmd->add_option("--cutoff", e_cutoff, "qa only: truncation level of the quotient");

  auto* check_cmd = app.add_subcommand("check", "run a law suite");
  std::string k_kind, k_file;
  check_cmd->add_option("kind", k_kind)
      ->required()
      ->check(CLI::IsMember({"operad", "monad", "algebrad", "algebra", "module"}));
  check_cmd->add_option("file", k_file)->required();

  auto* iso_cmd = app.add_subcommand("iso", "componentwise equivariant isomorphism (qo)");
  std::string i_a, i_b;
  iso_cmd->add_option("a", i_a)->required();
  iso_cmd->add_option("b", i_b)->required();

  auto* corpus_cmd = app.add_subcommand("corpus", "builtin example structures");
  corpus_cmd->require_subcommand(1);
  corpus_cmd->add_subcommand("list", "print the available ids");
  auto* corpus_export_cmd = corpus_cmd->add_subcommand("export", "emit a builtin entry");
  std::string x_id, x_out;
  corpus_export_cmd->add_option("id", x_id)->required();
  corpus_export_cmd->add_option("-o,--out", x_out, "write the document here");

  auto* oracle_cmd = app.add_subcommand("oracle", "independent brute-force recomputations");
  oracle_cmd->require_subcommand(1);
  auto* o_check = oracle_cmd->add_subcommand("check", "re-run a law suite by raw enumeration");
  std::string oc_kind, oc_file, oc_law;
  o_check->add_option("kind", oc_kind)
      ->required()
      ->check(CLI::IsMember({"operad", "monad", "algebrad", "module"}));
  o_check->add_option("file", oc_file)->required();
  o_check->add_option("--law", oc_law, "restrict to one named law");
  auto* o_eval = oracle_cmd->add_subcommand("eval", "naive quotient of the evaluation relation");
  std::string oe_file, oe_monoid;
  int oe_set = -1, oe_cutoff = -1;
  o_eval->add_option("file", oe_file)->required();
  o_eval->add_option("--set", oe_set, "size of the evaluated set");
  o_eval->add_option("--monoid", oe_monoid, "qa coefficients: trivial | and | cyclic:k");
  o_eval->add_option("--cutoff", oe_cutoff, "truncation level of the naive quotient");
  auto* o_compose = oracle_cmd->add_subcommand("compose", "naive qa composite at one level");
  std::string oco_a, oco_b;
  int oco_level = 0, oco_cutoff = -1;
  o_compose->add_option("a", oco_a)->required();
  o_compose->add_option("b", oco_b)->required();
  o_compose->add_option("--level", oco_level, "evaluate the composite at this arity")->required();
  o_compose->add_option("--cutoff", oco_cutoff, "cap on the outer arity");
  auto* o_iso = oracle_cmd->add_subcommand("iso", "equivariant bijection search per arity (qo)");
  std::string oi_a, oi_b;
  o_iso->add_option("a", oi_a)->required();
  o_iso->add_option("b", oi_b)->required();

  // global flags may trail the subcommand; bubble unmatched options upward
  std::function<void(CLI::App*)> allow_trailing_globals = [&](CLI::App* cmd) {
    for (CLI::App* sub : cmd->get_subcommands(nullptr)) {
      sub->fallthrough();
      allow_trailing_globals(sub);
    }
  };
  allow_trailing_globals(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command = "?";
  try {
    Output out;
    if (validate_cmd->parsed()) {
      command = "validate";
      out = run_validate(v_file, bound);
    } else if (tensor_cmd->parsed()) {
      command = "tensor";
      out = run_tensor(t_a, t_b, t_out, bound, json);
    } else if (compose_cmd->parsed()) {
      command = "compose";
      out = run_compose(c_a, c_b, c_out, bound, c_cutoff, json);
    } else if (eval_cmd->parsed()) {
      command = "eval";
      out = run_eval(e_file, bound, e_set, e_monoid, e_cutoff);
    } else if (check_cmd->parsed()) {
      command = "check " + k_kind;
      out = run_check(k_kind, k_file, bound);
    } else if (iso_cmd->parsed()) {
      command = "iso";
      out = run_iso(i_a, i_b, bound);
    } else if (corpus_cmd->parsed()) {
      if (corpus_export_cmd->parsed()) {
        command = "corpus export";
        out = run_corpus_export(x_id, x_out, bound, json);
      } else {
        command = "corpus list";
        out = run_corpus_list();
      }
    } else {
      if (o_check->parsed()) {
        command = "oracle check " + oc_kind;
        out = run_oracle_check(oc_kind, oc_file, oc_law, bound);
      } else if (o_eval->parsed()) {
        command = "oracle eval";
        out = run_oracle_eval(oe_file, bound, oe_set, oe_monoid, oe_cutoff);
      } else if (o_compose->parsed()) {
        command = "oracle compose";
        out = run_oracle_compose(oco_a, oco_b, oco_level, oco_cutoff, bound);
      } else {
        command = "oracle iso";
        out = run_oracle_iso(oi_a, oi_b, bound);
      }
    }
    return emit(out, json);
  } catch (const Error& e) {
    if (json) {
      Output out;
      out.command = command;
      out.ok = false;
      out.exit = 2;
      out.notes.push_back(e.what());
      std::cout << envelope(out).dump(2) << "\n";
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
