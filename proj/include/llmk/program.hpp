#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "llmk/rational.hpp"
#include "llmk/syntax.hpp"

namespace llmk {

struct BaseDecl {
  std::string name;
  std::vector<std::string> labels;
  Span span;
};

/// A Markov kernel primitive. `kernel` maps each domain point label to its
/// row: codomain point label -> probability. Rows sum to exactly one.
struct PrimDecl {
  std::string name;
  MkTypePtr dom;
  MkTypePtr cod;
  std::map<std::string, std::map<std::string, Rational>> kernel;
  Span span;
};

enum class Lang { MK, LL };

/// A named definition. MK definitions may take parameters (an MK context)
/// and then denote a kernel; LL definitions are closed.
struct Def {
  std::string name;
  Lang lang = Lang::LL;
  MkContext params;   // MK only
  MkTypePtr mk_type;  // MK only
  LlTypePtr ll_type;  // LL only
  MkTermPtr mk_term;  // MK only
  LlTermPtr ll_term;  // LL only
  Span span;
};

struct PrimSig {
  MkTypePtr dom;
  MkTypePtr cod;
};

/// What the typechecker needs to know about the enclosing program.
struct Signature {
  std::map<std::string, std::vector<std::string>> bases;
  std::map<std::string, PrimSig> prims;
};

struct Program {
  std::vector<BaseDecl> bases;
  std::vector<PrimDecl> prims;
  std::vector<Def> defs;

  [[nodiscard]] const BaseDecl* find_base(const std::string& name) const;
  [[nodiscard]] const PrimDecl* find_prim(const std::string& name) const;
  [[nodiscard]] const Def* find_def(const std::string& name) const;
  [[nodiscard]] Signature signature() const;
};

/// The term of `def` with references to earlier closed definitions inlined.
/// LL definitions may reference LL definitions; MK terms (including sample
/// bodies) may reference parameterless MK definitions.
LlTermPtr expand_ll(const Program& program, const Def& def);
MkTermPtr expand_mk(const Program& program, const Def& def);

}  // namespace llmk
