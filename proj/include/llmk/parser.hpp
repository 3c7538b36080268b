#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "llmk/program.hpp"
#include "llmk/syntax.hpp"

namespace llmk {

/// A positioned diagnostic from the lexer, parser or declaration checks.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { Lexical, Syntax, Duplicate, UnknownIdentifier, InvalidKernel };

  ParseError(Kind kind, Span span, const std::string& message);

  Kind kind;
  Span span;
  std::string message;  // without the position prefix
};

const char* to_string(ParseError::Kind kind);

/// Parses a whole `.llmk` program: base declarations, primitive kernels and
/// definitions, each terminated by `;`. Comments run from `--` to end of line.
Program parse_program(std::string_view text);

// Fragment parsers. Primitive applications `f(M)` are recognised for the
// names declared in `sig`.
LlTermPtr parse_ll_term(std::string_view text, const Signature& sig = {});
MkTermPtr parse_mk_term(std::string_view text, const Signature& sig = {});
LlTypePtr parse_ll_type(std::string_view text);
MkTypePtr parse_mk_type(std::string_view text);

}  // namespace llmk
