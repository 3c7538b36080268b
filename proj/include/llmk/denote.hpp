#pragma once

// Exact matrix denotations.
//
// An MK term in context x1:t1, ..., xn:tn denotes a matrix whose rows are the
// flat product points(t1) x ... x points(tn) in declaration order and whose
// columns are the points of its type. An LL term in an LL context denotes a
// matrix from the product of the context's web indices to the web index of its
// type. Terms must typecheck first.

#include <map>
#include <string>

#include "llmk/finset.hpp"
#include "llmk/matrix.hpp"
#include "llmk/program.hpp"
#include "llmk/syntax.hpp"

namespace llmk {

/// Everything the evaluator needs: a semiring, the base tables and a matrix
/// for every primitive in that semiring.
struct Interpretation {
  Semiring semiring = Semiring::Prob;
  BaseTable bases;
  std::map<std::string, Matrix> prims;
  std::map<std::string, PrimSig> sigs;
  std::size_t max_index = kDefaultMaxIndex;

  /// Primitive kernels of `program`; in the bool semiring each kernel is
  /// replaced by its support relation.
  static Interpretation from_program(const Program& program, Semiring s = Semiring::Prob,
                                     std::size_t max_index = kDefaultMaxIndex);
};

/// The kernel matrix of a primitive declaration, dom points x cod points.
Matrix kernel_matrix(const PrimDecl& prim, const BaseTable& bases,
                     std::size_t max_index = kDefaultMaxIndex);

FinSet denote_mk_type(const Interpretation& interp, const MkTypePtr& type);
FinSet denote_ll_type(const Interpretation& interp, const LlTypePtr& type);

/// Row index set of a context: the flat product of its entries' point sets.
FinSet context_index(const Interpretation& interp, const MkContext& ctx);
FinSet context_index(const Interpretation& interp, const LlContext& ctx);

Matrix denote_mk(const Interpretation& interp, const MkContext& ctx, const MkTermPtr& term);
Matrix denote_ll(const Interpretation& interp, const LlContext& ctx, const LlTermPtr& term);

/// The relational reading of `sample`: requires a bool-semiring interpretation.
Matrix observe_denote(const Interpretation& rel, const LlContext& ctx, const LlTermPtr& term);

/// Typechecks and denotes a definition of `program` after inlining.
Matrix denote_def(const Program& program, const Def& def, Semiring s = Semiring::Prob,
                  std::size_t max_index = kDefaultMaxIndex);

/// Distribution text: one `point : p/q` line per nonzero entry in canonical
/// order. Multi-row matrices prefix each line with `row | `.
std::string format_distribution(const Matrix& m);

}  // namespace llmk
