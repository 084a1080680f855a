#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "contlogic/lang/formula.hpp"
#include "contlogic/lang/signature.hpp"

namespace contlogic {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Lexical, Syntax, UnknownSymbol, SortMismatch, Arity };

  ParseError(Kind kind, std::size_t position, const std::string& message);

  Kind kind() const { return kind_; }
  /// Byte offset into the input.
  std::size_t position() const { return position_; }
  static std::string_view kind_name(Kind kind);

 private:
  Kind kind_;
  std::size_t position_;
};

/// Parses the text grammar:
///   formula := "sup" VAR "." formula | "inf" VAR "." formula | sum
///   sum     := prod (("-." | "+.") prod)*
///   prod    := "not" prod | "half" prod | atom
///   atom    := RATIONAL | IDENT "(" terms ")" | VAR | "(" formula ")"
///            | "|" formula "-" formula "|" | "min(" f "," f ")" | "max(" f "," f ")"
///            | "med" INT "(" formula ("," formula)* ")"
///   term    := VAR | IDENT "(" terms? ")"
/// A VAR may carry a sort annotation "x:S". Unannotated variables take the sort
/// of the innermost binder of that name, otherwise the first sort. "d" is the
/// metric of the sort of its first argument. A bare VAR in formula position is
/// a truth-value variable.
Formula parse_formula(std::string_view text, const Signature& sig);

/// Text form accepted by parse_formula; parse(print(f)) is structurally equal to f.
std::string print_formula(const Formula& f, const Signature& sig);
std::string print_term(const Term& t, const Signature& sig);

}  // namespace contlogic
