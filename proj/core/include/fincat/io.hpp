#pragma once

// On-disk interchange: one JSON document per structure. Canonical form is
// UTF-8, fixed key order, two-space indent, newline-terminated, element
// indices 1-based (0 marks an undefined algebra cell). Printing a parsed
// document reproduces the canonical input byte for byte.
//
// Parsing enforces shape and index ranges (ParseError); load_document also
// runs the carrier validators and rejects documents whose action tables
// break the carrier axioms. Law checking stays with the check functions.

#include <optional>
#include <string>

#include "fincat/qa.hpp"
#include "fincat/qc.hpp"
#include "fincat/qo.hpp"
#include "fincat/report.hpp"

namespace fincat {

inline constexpr int kFormatVersion = 1;

// One parsed document. Exactly one carrier member per calculus is set:
// with a structure section the bare carrier lives inside the structured
// value (operad.seq, monad.functor, algebrad.algebra.presheaf).
struct Document {
  std::string calculus; // "qo" | "qc" | "qa"
  int max_arity = 0;
  // qo
  std::optional<SymSeq> seq;
  std::optional<Operad> operad;
  std::optional<OperadAlgebra> algebra; // only with operad
  // qc
  std::optional<FinFunctor> functor;
  std::optional<AlgebraicMonad> monad;
  std::optional<SigmaModule> module; // only with monad
  // qa
  std::optional<FinPresheaf> presheaf;
  std::optional<QaAlgebrad> algebrad;
};

Document document_of(SymSeq seq);
Document document_of(Operad operad);
Document document_of(Operad operad, OperadAlgebra algebra);
Document document_of(FinFunctor functor);
Document document_of(AlgebraicMonad monad);
Document document_of(AlgebraicMonad monad, SigmaModule module);
Document document_of(FinPresheaf presheaf);
Document document_of(QaAlgebrad algebrad);

// carrier accessors; throw DomainError when the calculus does not match
const SymSeq& document_seq(const Document& doc);
const FinFunctor& document_functor(const Document& doc);
const FinPresheaf& document_presheaf(const Document& doc);

// canonical JSON text
std::string print_document(const Document& doc);
// inverse of print_document on canonical forms; shape errors -> ParseError
Document parse_document(const std::string& text);

// carrier axioms of the parsed tables (group actions, functoriality)
CheckReport validate_document(const Document& doc);

// builtin entry as a document, constructed at the given bound
Document corpus_document(const std::string& id, int max_arity);

// reads a file, or resolves "corpus:<id>" at the given bound; parses and
// validates, throwing on malformed or axiom-breaking input
Document load_document(const std::string& path_or_uri, int max_arity);
void save_document(const Document& doc, const std::string& path);

} // namespace fincat
