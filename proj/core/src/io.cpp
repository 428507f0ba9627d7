#include "fincat/io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "fincat/corpus.hpp"
#include "fincat/error.hpp"

namespace fincat {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ParseError("document " + (where.empty() ? "" : where + ": ") + what);
}

long long ipow_ll(long long base, int exp) {
  long long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// --- shape helpers -----------------------------------------------------

void check_keys(const json& j, const std::vector<std::string>& required,
                const std::vector<std::string>& optional, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const auto& k : required)
    if (!j.contains(k)) bad(where, "missing key \"" + k + "\"");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    bool known = std::find(required.begin(), required.end(), k) != required.end() ||
                 std::find(optional.begin(), optional.end(), k) != optional.end();
    if (!known) bad(where, "unknown key \"" + k + "\"");
  }
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

const json& get_array(const json& j, long long len, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  if (len >= 0 && static_cast<long long>(j.size()) != len)
    bad(where,
        "expected " + std::to_string(len) + " entries, found " + std::to_string(j.size()));
  return j;
}

// 1-based entries in 1..max_value, returned 0-based; with allow_zero an
// entry 0 marks an undefined cell and becomes -1
std::vector<int> get_table(const json& j, long long len, int max_value, const std::string& where,
                           bool allow_zero = false) {
  get_array(j, len, where);
  std::vector<int> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    std::string cell = where + "[" + std::to_string(i) + "]";
    int v = get_int(j[i], cell);
    if (allow_zero && v == 0) {
      out.push_back(-1);
      continue;
    }
    if (v < 1 || v > max_value)
      bad(cell, "index " + std::to_string(v) + " outside 1.." + std::to_string(max_value));
    out.push_back(v - 1);
  }
  return out;
}

json put_table(const std::vector<int>& t) {
  json a = json::array();
  for (int v : t) a.push_back(v + 1); // -1 (undefined) becomes 0
  return a;
}

// --- carriers as generator tables ---------------------------------------

// a G-set is stored by its size and the action tables of the adjacent
// transpositions; the full table is rebuilt by closing over products
json gset_to_json(const GSet& g) {
  const auto& sg = symmetric_group(g.arity);
  json gens = json::array();
  for (int t : sg.generators()) {
    json tab = json::array();
    for (int x = 0; x < g.size; ++x) tab.push_back(g.action[x][t] + 1);
    gens.push_back(std::move(tab));
  }
  json j = json::object();
  j["size"] = g.size;
  j["gens"] = std::move(gens);
  return j;
}

GSet gset_from_json(const json& j, int arity, const std::string& where) {
  check_keys(j, {"size", "gens"}, {}, where);
  int size = get_int(j.at("size"), where + ".size");
  if (size < 0) bad(where + ".size", "negative size");
  const auto& sg = symmetric_group(arity);
  const json& gens =
      get_array(j.at("gens"), static_cast<long long>(sg.generators().size()), where + ".gens");
  std::vector<std::vector<int>> tables;
  for (size_t t = 0; t < gens.size(); ++t)
    tables.push_back(get_table(gens[t], size, size, where + ".gens[" + std::to_string(t) + "]"));
  GSet g;
  g.arity = arity;
  g.size = size;
  g.action.assign(size, std::vector<int>(static_cast<size_t>(sg.order()), 0));
  for (int x = 0; x < size; ++x) g.action[x][0] = x;
  // breadth-first closure from the identity; adjacent transpositions reach
  // every permutation, so every column gets filled
  std::vector<int> order(1, 0);
  std::vector<char> seen(static_cast<size_t>(sg.order()), 0);
  seen[0] = 1;
  for (size_t head = 0; head < order.size(); ++head) {
    int p = order[head];
    for (size_t t = 0; t < sg.generators().size(); ++t) {
      int c = sg.compose(p, sg.generators()[t]);
      if (seen[c]) continue;
      seen[c] = 1;
      order.push_back(c);
      for (int x = 0; x < size; ++x) g.action[x][c] = tables[t][g.action[x][p]];
    }
  }
  return g;
}

// --- emission ------------------------------------------------------------

json to_json(const Document& doc) {
  json j = json::object();
  j["format"] = kFormatVersion;
  j["calculus"] = doc.calculus;
  j["max_arity"] = doc.max_arity;
  if (doc.calculus == "qo") {
    const SymSeq& a = document_seq(doc);
    if (a.support_bound)
      j["support_bound"] = *a.support_bound;
    else
      j["support_bound"] = nullptr;
    json carriers = json::array();
    for (int n = 0; n <= a.max_arity; ++n) carriers.push_back(gset_to_json(a.at[n]));
    j["carriers"] = std::move(carriers);
    if (doc.operad) {
      json subs = json::array();
      for (const auto& parts : substitution_keys(a.max_arity)) {
        json entry = json::object();
        entry["parts"] = parts;
        entry["table"] = put_table(doc.operad->mu.at(parts));
        subs.push_back(std::move(entry));
      }
      json s = json::object();
      s["unit"] = doc.operad->unit + 1;
      s["substitution"] = std::move(subs);
      j["structure"] = std::move(s);
    }
    if (doc.algebra) {
      json acts = json::array();
      for (const auto& t : doc.algebra->act) acts.push_back(put_table(t));
      json alg = json::object();
      alg["carrier"] = doc.algebra->carrier;
      alg["actions"] = std::move(acts);
      j["algebra"] = std::move(alg);
    }
  } else if (doc.calculus == "qc") {
    const FinFunctor& f = document_functor(doc);
    j["carriers"] = f.sizes;
    json trans = json::array();
    for (int m = 0; m <= f.max_arity; ++m) {
      json row = json::array();
      for (int n = 0; n <= f.max_arity; ++n) {
        json maps = json::array();
        for (const auto& tab : f.transitions[m][n]) maps.push_back(put_table(tab));
        row.push_back(std::move(maps));
      }
      trans.push_back(std::move(row));
    }
    j["transitions"] = std::move(trans);
    if (doc.monad) {
      json subs = json::array();
      for (int p = 0; p <= f.max_arity; ++p) {
        json row = json::array();
        for (int n = 0; n <= f.max_arity; ++n) row.push_back(put_table(doc.monad->subs[p][n]));
        subs.push_back(std::move(row));
      }
      json s = json::object();
      s["unit"] = doc.monad->unit + 1;
      s["substitution"] = std::move(subs);
      j["structure"] = std::move(s);
    }
    if (doc.module) {
      json m = json::object();
      m["carrier"] = doc.module->carrier;
      m["action"] = put_table(doc.module->action);
      j["module"] = std::move(m);
    }
  } else {
    const FinPresheaf& pr = document_presheaf(doc);
    j["carriers"] = pr.sizes;
    json rest = json::array();
    for (int m = 0; m <= pr.max_arity; ++m) {
      json row = json::array();
      for (int n = 0; n <= pr.max_arity; ++n) {
        json maps = json::array();
        for (const auto& tab : pr.restrictions[m][n]) maps.push_back(put_table(tab));
        row.push_back(std::move(maps));
      }
      rest.push_back(std::move(row));
    }
    j["restrictions"] = std::move(rest);
    if (doc.algebrad) {
      const CommAlgObject& a = doc.algebrad->algebra;
      json mult = json::array();
      for (int p = 0; p <= pr.max_arity; ++p) {
        json row = json::array();
        for (int q = 0; p + q <= pr.max_arity; ++q) row.push_back(put_table(a.mult[p][q]));
        mult.push_back(std::move(row));
      }
      json subs = json::array();
      for (const auto& parts : substitution_keys(pr.max_arity)) {
        json entry = json::object();
        entry["parts"] = parts;
        entry["table"] = put_table(doc.algebrad->subs.at(parts));
        subs.push_back(std::move(entry));
      }
      json s = json::object();
      s["unit0"] = a.unit_e0 + 1;
      if (pr.max_arity >= 1) s["unit1"] = doc.algebrad->unit + 1;
      s["multiplication"] = std::move(mult);
      s["substitution"] = std::move(subs);
      j["structure"] = std::move(s);
    }
  }
  return j;
}

// --- parsing -------------------------------------------------------------

// canonical substition key list, with each entry's "parts" checked against it
void parse_keyed_tables(const json& subs, int top,
                                                 const std::function<int(int)>& size,
                                                 const std::string& where,
                                                 std::map<std::vector<int>, std::vector<int>>& out) {
  auto keys = substitution_keys(top);
  get_array(subs, static_cast<long long>(keys.size()), where);
  for (size_t i = 0; i < keys.size(); ++i) {
    std::string entry_where = where + "[" + std::to_string(i) + "]";
    const json& entry = subs[i];
    check_keys(entry, {"parts", "table"}, {}, entry_where);
    const json& pj =
        get_array(entry.at("parts"), static_cast<long long>(keys[i].size()), entry_where + ".parts");
    for (size_t t = 0; t < keys[i].size(); ++t)
      if (get_int(pj[t], entry_where + ".parts") != keys[i][t])
        bad(entry_where + ".parts", "keys must follow the canonical enumeration");
    int total = std::accumulate(keys[i].begin(), keys[i].end(), 0);
    long long len = size(static_cast<int>(keys[i].size()));
    for (int p : keys[i]) len *= size(p);
    out[keys[i]] = get_table(entry.at("table"), len, size(total), entry_where + ".table");
  }
}

Document parse_qo(const json& j, int top) {
  check_keys(j, {"format", "calculus", "max_arity", "support_bound", "carriers"},
             {"structure", "algebra"}, "");
  SymSeq a;
  a.max_arity = top;
  const json& sb = j.at("support_bound");
  if (!sb.is_null()) {
    int b = get_int(sb, "support_bound");
    if (b < 0) bad("support_bound", "negative bound");
    a.support_bound = b;
  }
  const json& carriers = get_array(j.at("carriers"), top + 1, "carriers");
  for (int n = 0; n <= top; ++n)
    a.at.push_back(gset_from_json(carriers[n], n, "carriers[" + std::to_string(n) + "]"));

  Document doc;
  doc.calculus = "qo";
  doc.max_arity = top;
  if (!j.contains("structure")) {
    if (j.contains("algebra")) bad("algebra", "algebra section without an operad structure");
    doc.seq = std::move(a);
    return doc;
  }
  const json& s = j.at("structure");
  check_keys(s, {"unit", "substitution"}, {}, "structure");
  if (top < 1 || a.at[1].size < 1) bad("structure.unit", "no arity 1 carrier to hold the unit");
  int unit = get_int(s.at("unit"), "structure.unit");
  if (unit < 1 || unit > a.at[1].size)
    bad("structure.unit", "index " + std::to_string(unit) + " outside 1.." + std::to_string(a.at[1].size));
  Operad o;
  o.unit = unit - 1;
  auto size = [&a](int n) { return a.at[n].size; };
  parse_keyed_tables(s.at("substitution"), top, size, "structure.substitution", o.mu);
  o.seq = std::move(a);
  doc.operad = std::move(o);
  if (j.contains("algebra")) {
    const json& alg = j.at("algebra");
    check_keys(alg, {"carrier", "actions"}, {}, "algebra");
    int carrier = get_int(alg.at("carrier"), "algebra.carrier");
    if (carrier < 0) bad("algebra.carrier", "negative carrier");
    OperadAlgebra oa;
    oa.carrier = carrier;
    const json& acts = get_array(alg.at("actions"), top + 1, "algebra.actions");
    for (int n = 0; n <= top; ++n) {
      long long len = doc.operad->seq.at[n].size * ipow_ll(carrier, n);
      oa.act.push_back(
          get_table(acts[n], len, carrier, "algebra.actions[" + std::to_string(n) + "]", true));
    }
    doc.algebra = std::move(oa);
  }
  return doc;
}

// reads the [m][n][rank] transition block shared by functors (tables of
// length sizes[m] into sizes[n]) and presheaves (length sizes[n] into
// sizes[m], flip = true)
std::vector<std::vector<std::vector<std::vector<int>>>> parse_transition_block(
    const json& block, int top, const std::vector<int>& sizes, bool flip, const std::string& key) {
  std::vector<std::vector<std::vector<std::vector<int>>>> out(top + 1);
  get_array(block, top + 1, key);
  for (int m = 0; m <= top; ++m) {
    const json& row = get_array(block[m], top + 1, key + "[" + std::to_string(m) + "]");
    out[m].resize(top + 1);
    for (int n = 0; n <= top; ++n) {
      std::string where = key + "[" + std::to_string(m) + "][" + std::to_string(n) + "]";
      const json& maps = get_array(row[n], map_count(m, n), where);
      long long len = flip ? sizes[n] : sizes[m];
      int max_value = flip ? sizes[m] : sizes[n];
      for (size_t r = 0; r < maps.size(); ++r)
        out[m][n].push_back(get_table(maps[r], len, max_value, where + "[" + std::to_string(r) + "]"));
    }
  }
  return out;
}

std::vector<int> parse_sizes(const json& j, int top) {
  const json& carriers = get_array(j.at("carriers"), top + 1, "carriers");
  std::vector<int> sizes;
  for (int n = 0; n <= top; ++n) {
    int s = get_int(carriers[n], "carriers[" + std::to_string(n) + "]");
    if (s < 0) bad("carriers[" + std::to_string(n) + "]", "negative size");
    sizes.push_back(s);
  }
  return sizes;
}

Document parse_qc(const json& j, int top) {
  check_keys(j, {"format", "calculus", "max_arity", "carriers", "transitions"},
             {"structure", "module"}, "");
  FinFunctor f;
  f.max_arity = top;
  f.sizes = parse_sizes(j, top);
  f.transitions = parse_transition_block(j.at("transitions"), top, f.sizes, false, "transitions");

  Document doc;
  doc.calculus = "qc";
  doc.max_arity = top;
  if (!j.contains("structure")) {
    if (j.contains("module")) bad("module", "module section without a monad structure");
    doc.functor = std::move(f);
    return doc;
  }
  const json& s = j.at("structure");
  check_keys(s, {"unit", "substitution"}, {}, "structure");
  if (top < 1 || f.sizes[1] < 1) bad("structure.unit", "no arity 1 carrier to hold the unit");
  int unit = get_int(s.at("unit"), "structure.unit");
  if (unit < 1 || unit > f.sizes[1])
    bad("structure.unit", "index " + std::to_string(unit) + " outside 1.." + std::to_string(f.sizes[1]));
  AlgebraicMonad mon;
  mon.unit = unit - 1;
  const json& subs = get_array(s.at("substitution"), top + 1, "structure.substitution");
  mon.subs.resize(top + 1);
  for (int p = 0; p <= top; ++p) {
    const json& row =
        get_array(subs[p], top + 1, "structure.substitution[" + std::to_string(p) + "]");
    mon.subs[p].resize(top + 1);
    for (int n = 0; n <= top; ++n) {
      long long len = static_cast<long long>(f.sizes[p]) * ipow_ll(f.sizes[n], p);
      mon.subs[p][n] = get_table(
          row[n], len, f.sizes[n],
          "structure.substitution[" + std::to_string(p) + "][" + std::to_string(n) + "]");
    }
  }
  mon.functor = std::move(f);
  doc.monad = std::move(mon);
  if (j.contains("module")) {
    const json& mj = j.at("module");
    check_keys(mj, {"carrier", "action"}, {}, "module");
    int carrier = get_int(mj.at("carrier"), "module.carrier");
    if (carrier < 0 || carrier > top)
      bad("module.carrier", "carrier outside 0.." + std::to_string(top));
    SigmaModule mod;
    mod.carrier = carrier;
    mod.action =
        get_table(mj.at("action"), doc.monad->functor.sizes[carrier], carrier, "module.action");
    doc.module = std::move(mod);
  }
  return doc;
}

Document parse_qa(const json& j, int top) {
  check_keys(j, {"format", "calculus", "max_arity", "carriers", "restrictions"}, {"structure"},
             "");
  FinPresheaf pr;
  pr.max_arity = top;
  pr.sizes = parse_sizes(j, top);
  pr.restrictions = parse_transition_block(j.at("restrictions"), top, pr.sizes, true, "restrictions");

  Document doc;
  doc.calculus = "qa";
  doc.max_arity = top;
  if (!j.contains("structure")) {
    doc.presheaf = std::move(pr);
    return doc;
  }
  const json& s = j.at("structure");
  std::vector<std::string> required = {"unit0", "multiplication", "substitution"};
  if (top >= 1) required.insert(required.begin() + 1, "unit1");
  check_keys(s, required, {}, "structure");
  if (pr.sizes[0] < 1) bad("structure.unit0", "arity 0 carrier is empty");
  int unit0 = get_int(s.at("unit0"), "structure.unit0");
  if (unit0 < 1 || unit0 > pr.sizes[0])
    bad("structure.unit0", "index " + std::to_string(unit0) + " outside 1.." + std::to_string(pr.sizes[0]));
  int unit1 = 1;
  if (top >= 1) {
    if (pr.sizes[1] < 1) bad("structure.unit1", "arity 1 carrier is empty");
    unit1 = get_int(s.at("unit1"), "structure.unit1");
    if (unit1 < 1 || unit1 > pr.sizes[1])
      bad("structure.unit1", "index " + std::to_string(unit1) + " outside 1.." + std::to_string(pr.sizes[1]));
  }
  const json& mult = get_array(s.at("multiplication"), top + 1, "structure.multiplication");
  std::vector<std::vector<std::vector<int>>> tables(top + 1,
                                                    std::vector<std::vector<int>>(top + 1));
  for (int p = 0; p <= top; ++p) {
    const json& row =
        get_array(mult[p], top - p + 1, "structure.multiplication[" + std::to_string(p) + "]");
    for (int q = 0; p + q <= top; ++q) {
      long long len = static_cast<long long>(pr.sizes[p]) * pr.sizes[q];
      tables[p][q] = get_table(
          row[q], len, pr.sizes[p + q],
          "structure.multiplication[" + std::to_string(p) + "][" + std::to_string(q) + "]");
    }
  }
  QaAlgebrad alg;
  alg.unit = unit1 - 1;
  auto size = [&pr](int n) { return pr.sizes[n]; };
  parse_keyed_tables(s.at("substitution"), top, size, "structure.substitution", alg.subs);
  alg.algebra.mult = std::move(tables);
  alg.algebra.unit_e0 = unit0 - 1;
  alg.algebra.presheaf = std::move(pr);
  doc.algebrad = std::move(alg);
  return doc;
}

} // namespace

Document document_of(SymSeq seq) {
  Document d;
  d.calculus = "qo";
  d.max_arity = seq.max_arity;
  d.seq = std::move(seq);
  return d;
}

Document document_of(Operad operad) {
  Document d;
  d.calculus = "qo";
  d.max_arity = operad.seq.max_arity;
  d.operad = std::move(operad);
  return d;
}

Document document_of(Operad operad, OperadAlgebra algebra) {
  Document d = document_of(std::move(operad));
  d.algebra = std::move(algebra);
  return d;
}

Document document_of(FinFunctor functor) {
  Document d;
  d.calculus = "qc";
  d.max_arity = functor.max_arity;
  d.functor = std::move(functor);
  return d;
}

Document document_of(AlgebraicMonad monad) {
  Document d;
  d.calculus = "qc";
  d.max_arity = monad.functor.max_arity;
  d.monad = std::move(monad);
  return d;
}

Document document_of(AlgebraicMonad monad, SigmaModule module) {
  Document d = document_of(std::move(monad));
  d.module = std::move(module);
  return d;
}

Document document_of(FinPresheaf presheaf) {
  Document d;
  d.calculus = "qa";
  d.max_arity = presheaf.max_arity;
  d.presheaf = std::move(presheaf);
  return d;
}

Document document_of(QaAlgebrad algebrad) {
  Document d;
  d.calculus = "qa";
  d.max_arity = algebrad.algebra.presheaf.max_arity;
  d.algebrad = std::move(algebrad);
  return d;
}

const SymSeq& document_seq(const Document& doc) {
  if (doc.operad) return doc.operad->seq;
  if (doc.seq) return *doc.seq;
  throw DomainError("expected a qo document, got " + doc.calculus);
}

const FinFunctor& document_functor(const Document& doc) {
  if (doc.monad) return doc.monad->functor;
  if (doc.functor) return *doc.functor;
  throw DomainError("expected a qc document, got " + doc.calculus);
}

const FinPresheaf& document_presheaf(const Document& doc) {
  if (doc.algebrad) return doc.algebrad->algebra.presheaf;
  if (doc.presheaf) return *doc.presheaf;
  throw DomainError("expected a qa document, got " + doc.calculus);
}

std::string print_document(const Document& doc) { return to_json(doc).dump(2) + "\n"; }

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("document: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("", "expected a top level object");
  for (const char* key : {"format", "calculus", "max_arity"})
    if (!j.contains(key)) bad("", std::string("missing key \"") + key + "\"");
  if (get_int(j.at("format"), "format") != kFormatVersion)
    bad("format", "unsupported version (expected " + std::to_string(kFormatVersion) + ")");
  if (!j.at("calculus").is_string()) bad("calculus", "expected a string");
  std::string calc = j.at("calculus").get<std::string>();
  int top = get_int(j.at("max_arity"), "max_arity");
  if (top < 0) bad("max_arity", "negative bound");
  if (top > kArityCap)
    throw CapacityError("document: arity bound " + std::to_string(top) + " above the cap " +
                        std::to_string(kArityCap));
  if (calc == "qo") return parse_qo(j, top);
  if (calc == "qc") return parse_qc(j, top);
  if (calc == "qa") return parse_qa(j, top);
  bad("calculus", "expected \"qo\", \"qc\" or \"qa\"");
}

CheckReport validate_document(const Document& doc) {
  if (doc.calculus == "qo") return validate_seq(document_seq(doc));
  if (doc.calculus == "qc") return validate_functor(document_functor(doc));
  return validate_presheaf(document_presheaf(doc));
}

Document corpus_document(const std::string& id, int max_arity) {
  if (id == "qo/com-pos") return document_of(corpus_com_pos(max_arity));
  if (id == "qo/ass") return document_of(corpus_ass(max_arity));
  if (id == "qo/unit") return document_of(corpus_unit_operad(max_arity));
  if (id == "qc/identity") return document_of(identity_monad(max_arity));
  if (id == "qc/pointed") return document_of(pointed_monad(max_arity));
  if (id == "qc/powerset") return document_of(powerset_monad(max_arity));
  if (id == "qc/h2") return document_of(representable_functor(2, max_arity));
  if (id == "qa/terminal") return document_of(terminal_algebrad(max_arity));
  if (id == "qa/monoid-functions") return document_of(functions_algebrad(and_monoid(), max_arity));
  if (id == "qa/unit") return document_of(unit_presheaf(max_arity));
  throw UnknownIdError("unknown corpus id: " + id);
}

Document load_document(const std::string& path_or_uri, int max_arity) {
  if (path_or_uri.rfind("corpus:", 0) == 0)
    return corpus_document(path_or_uri.substr(7), max_arity);
  std::ifstream in(path_or_uri, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path_or_uri);
  std::ostringstream buf;
  buf << in.rdbuf();
  Document doc = parse_document(buf.str());
  CheckReport rep = validate_document(doc);
  if (!rep.ok)
    throw DomainError("invalid document " + path_or_uri + ": " + rep.failures[0].law + " (" +
                      rep.failures[0].witness + ")");
  return doc;
}

void save_document(const Document& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << print_document(doc);
  out.flush();
  if (!out) throw Error("cannot write file: " + path);
}

} // namespace fincat
