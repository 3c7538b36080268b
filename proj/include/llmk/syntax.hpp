#pragma once

// Abstract syntax for the two object languages.
//
// MK is the first-order, non-linear kernel language: its variables stand for
// sampled values and may be used any number of times. LL is the linear
// lambda-calculus whose ground types are measures; the Sample node is the
// only bridge between the two.
//
// All nodes are immutable and shared through shared_ptr<const T>.

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace llmk {

using Var = std::string;
using VarSet = std::set<Var>;

struct Span {
  int line = 0;
  int column = 0;
};

// ---------------------------------------------------------------------------
// Types

struct MkType;
using MkTypePtr = std::shared_ptr<const MkType>;

struct MkType {
  enum class Kind { Unit, Base, Prod };

  Kind kind = Kind::Unit;
  std::string name;  // Base
  MkTypePtr left;    // Prod
  MkTypePtr right;   // Prod

  static MkTypePtr unit();
  static MkTypePtr base(std::string name);
  static MkTypePtr prod(MkTypePtr left, MkTypePtr right);
};

bool equal(const MkTypePtr& a, const MkTypePtr& b);

struct LlType;
using LlTypePtr = std::shared_ptr<const LlType>;

struct LlType {
  enum class Kind { Unit, Meas, Lolli, Tensor };

  Kind kind = Kind::Unit;
  MkTypePtr inner;  // Meas
  LlTypePtr left;   // Lolli domain / Tensor left
  LlTypePtr right;  // Lolli codomain / Tensor right

  static LlTypePtr unit();
  static LlTypePtr meas(MkTypePtr inner);
  static LlTypePtr lolli(LlTypePtr dom, LlTypePtr cod);
  static LlTypePtr tensor(LlTypePtr left, LlTypePtr right);
};

bool equal(const LlTypePtr& a, const LlTypePtr& b);

// ---------------------------------------------------------------------------
// Terms

struct MkTerm;
using MkTermPtr = std::shared_ptr<const MkTerm>;

struct MkTerm {
  enum class Kind { Var, Unit, Let, Pair, Fst, Snd, Prim };

  Kind kind = Kind::Unit;
  std::string name;  // Var: variable; Let: binder; Prim: primitive name
  MkTermPtr first;   // Let: bound; Pair: left; Fst/Snd/Prim: operand
  MkTermPtr second;  // Let: body; Pair: right
  Span span;

  static MkTermPtr var(Var x, Span span = {});
  static MkTermPtr unit(Span span = {});
  static MkTermPtr let(Var x, MkTermPtr bound, MkTermPtr body, Span span = {});
  static MkTermPtr pair(MkTermPtr left, MkTermPtr right, Span span = {});
  static MkTermPtr fst(MkTermPtr operand, Span span = {});
  static MkTermPtr snd(MkTermPtr operand, Span span = {});
  static MkTermPtr prim(std::string f, MkTermPtr arg, Span span = {});
};

struct LlTerm;
using LlTermPtr = std::shared_ptr<const LlTerm>;

struct LlTerm {
  enum class Kind { Var, Unit, Lam, App, Tensor, LetTensor, Sample };

  Kind kind = Kind::Unit;
  std::string name;         // Var: variable; Lam: binder; LetTensor: left binder
  std::string name2;        // LetTensor: right binder
  LlTypePtr annot;          // Lam
  LlTermPtr first;          // Lam: body; App: function; Tensor: left; LetTensor: bound
  LlTermPtr second;         // App: argument; Tensor: right; LetTensor: body
  std::vector<LlTermPtr> args;  // Sample
  std::vector<Var> binders;     // Sample, positional with args
  MkTermPtr body;               // Sample continuation
  Span span;

  static LlTermPtr var(Var x, Span span = {});
  static LlTermPtr unit(Span span = {});
  static LlTermPtr lam(Var x, LlTypePtr annot, LlTermPtr body, Span span = {});
  static LlTermPtr app(LlTermPtr fn, LlTermPtr arg, Span span = {});
  static LlTermPtr tensor(LlTermPtr left, LlTermPtr right, Span span = {});
  static LlTermPtr let_tensor(Var x, Var y, LlTermPtr bound, LlTermPtr body,
                              Span span = {});
  static LlTermPtr sample(std::vector<LlTermPtr> args, std::vector<Var> binders,
                          MkTermPtr body, Span span = {});
};

// ---------------------------------------------------------------------------
// Contexts. Ordered lists of distinct names; order fixes denotation indexing.

template <typename TypePtr>
class Context {
 public:
  using Entry = std::pair<Var, TypePtr>;

  Context() = default;
  Context(std::initializer_list<Entry> entries) {
    for (const auto& e : entries) push(e.first, e.second);
  }

  /// Appends an entry. Throws std::invalid_argument on a duplicate name.
  void push(Var x, TypePtr t);

  [[nodiscard]] const TypePtr* lookup(const Var& x) const;
  [[nodiscard]] bool contains(const Var& x) const { return lookup(x) != nullptr; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
  [[nodiscard]] VarSet names() const;

  /// Entries whose name is in `keep`, in the original order.
  [[nodiscard]] Context restrict_to(const VarSet& keep) const;

 private:
  std::vector<Entry> entries_;
};

using MkContext = Context<MkTypePtr>;
using LlContext = Context<LlTypePtr>;

// ---------------------------------------------------------------------------
// Operations

VarSet free_vars(const MkTermPtr& term);
VarSet free_vars(const LlTermPtr& term);

/// A variable name based on `base` that is not in `avoid`: `base` itself if
/// free, otherwise `base_N` for the smallest N >= 1.
Var fresh_var(const Var& base, const VarSet& avoid);

using MkSubst = std::map<Var, MkTermPtr>;
using LlSubst = std::map<Var, LlTermPtr>;

/// Simultaneous capture-avoiding substitution.
MkTermPtr subst_mk(const MkTermPtr& target, const MkSubst& bindings);

/// Simultaneous capture-avoiding substitution. Sample nodes are traversed
/// through their LL arguments only; binders and the MK body are left as is.
LlTermPtr subst_ll(const LlTermPtr& target, const LlSubst& bindings);

bool alpha_eq(const MkTermPtr& a, const MkTermPtr& b);
bool alpha_eq(const LlTermPtr& a, const LlTermPtr& b);

/// Node count, used to bound generated terms.
std::size_t term_size(const MkTermPtr& term);
std::size_t term_size(const LlTermPtr& term);

}  // namespace llmk
