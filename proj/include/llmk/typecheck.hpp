#pragma once

#include <stdexcept>
#include <string>

#include "llmk/program.hpp"
#include "llmk/syntax.hpp"

namespace llmk {

class TypeError : public std::runtime_error {
 public:
  enum class Kind {
    Unbound,
    DuplicateUse,
    UnusedLinear,
    TypeMismatch,
    NonemptyContextUnit,
    SampleArity,
    NotMeasureType,
  };

  TypeError(Kind kind, Span span, const std::string& message);

  Kind kind;
  Span span;
  std::string message;
};

/// Stable kebab-case name, e.g. "duplicate-use".
const char* to_string(TypeError::Kind kind);

/// MK judgement. Variables may be used any number of times, including zero.
MkTypePtr typecheck_mk(const Signature& sig, const MkContext& ctx, const MkTermPtr& term);

/// LL judgement. Every context variable must be used exactly once. Context
/// splits at multiplicative nodes are inferred from disjoint used-sets.
LlTypePtr typecheck_ll(const Signature& sig, const LlContext& ctx, const LlTermPtr& term);

/// Typechecks a definition after inlining references to earlier definitions.
/// Returns nothing; throws TypeError.
void typecheck_def(const Program& program, const Def& def);

}  // namespace llmk
