#pragma once

// Builtin example structures shared by tests, docs and the CLI's corpus:
// URIs, plus seeded random generators for property tests.

#include <random>
#include <string>
#include <vector>

#include "fincat/qo.hpp"

namespace fincat {

// Metadata for one builtin entry: which checker applies, the expected
// verdict, and the carrier cardinalities at bound 3. Tests cross-check the
// recorded values against a fresh reconstruction.
struct CorpusEntry {
  std::string id;
  std::string calculus; // "qo" | "qc" | "qa"
  std::string kind;     // "operad" | "monad" | "functor" | "algebrad" | "presheaf"
  std::string summary;
  bool laws_ok = true;         // expected checker verdict
  std::vector<int> sizes_at_3; // carrier sizes at bound 3, arities 0..3
};

const std::vector<CorpusEntry>& corpus_entries();
// lookup by id; throws UnknownIdError
const CorpusEntry& corpus_entry(const std::string& id);

// ids resolvable by the CLI (corpus:<id>), in corpus_entries() order
std::vector<std::string> corpus_ids();

// qo entries ----------------------------------------------------------

// commutative operad without nullary part: one operation per arity >= 1
Operad corpus_com_pos(int max_arity);
// associative operad: the regular S_n-set in every arity >= 1, composition
// by word substitution
Operad corpus_ass(int max_arity);
// identity operad on the composition unit
Operad corpus_unit_operad(int max_arity);

// random generators ----------------------------------------------------

// disjoint union of random coset actions, at most max_size elements
GSet random_gset(std::mt19937_64& rng, int arity, int max_size);
// random sequence with carriers of at most max_carrier elements; when
// empty_nullary is set the arity-0 carrier is forced empty
SymSeq random_seq(std::mt19937_64& rng, int max_arity, int max_carrier, bool empty_nullary);

} // namespace fincat
