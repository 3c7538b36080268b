#include "llmk/syntax.hpp"

#include <algorithm>
#include <stdexcept>

namespace llmk {

// ---------------------------------------------------------------------------
// Types

MkTypePtr MkType::unit() {
  static const MkTypePtr u = std::make_shared<MkType>();
  return u;
}

MkTypePtr MkType::base(std::string name) {
  auto t = std::make_shared<MkType>();
  t->kind = Kind::Base;
  t->name = std::move(name);
  return t;
}

MkTypePtr MkType::prod(MkTypePtr left, MkTypePtr right) {
  auto t = std::make_shared<MkType>();
  t->kind = Kind::Prod;
  t->left = std::move(left);
  t->right = std::move(right);
  return t;
}

bool equal(const MkTypePtr& a, const MkTypePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case MkType::Kind::Unit: return true;
    case MkType::Kind::Base: return a->name == b->name;
    case MkType::Kind::Prod: return equal(a->left, b->left) && equal(a->right, b->right);
  }
  return false;
}

LlTypePtr LlType::unit() {
  static const LlTypePtr u = std::make_shared<LlType>();
  return u;
}

LlTypePtr LlType::meas(MkTypePtr inner) {
  auto t = std::make_shared<LlType>();
  t->kind = Kind::Meas;
  t->inner = std::move(inner);
  return t;
}

LlTypePtr LlType::lolli(LlTypePtr dom, LlTypePtr cod) {
  auto t = std::make_shared<LlType>();
  t->kind = Kind::Lolli;
  t->left = std::move(dom);
  t->right = std::move(cod);
  return t;
}

LlTypePtr LlType::tensor(LlTypePtr left, LlTypePtr right) {
  auto t = std::make_shared<LlType>();
  t->kind = Kind::Tensor;
  t->left = std::move(left);
  t->right = std::move(right);
  return t;
}

bool equal(const LlTypePtr& a, const LlTypePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case LlType::Kind::Unit: return true;
    case LlType::Kind::Meas: return equal(a->inner, b->inner);
    case LlType::Kind::Lolli:
    case LlType::Kind::Tensor: return equal(a->left, b->left) && equal(a->right, b->right);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Term constructors

namespace {

std::shared_ptr<MkTerm> mk_node(MkTerm::Kind kind, Span span) {
  auto t = std::make_shared<MkTerm>();
  t->kind = kind;
  t->span = span;
  return t;
}

std::shared_ptr<LlTerm> ll_node(LlTerm::Kind kind, Span span) {
  auto t = std::make_shared<LlTerm>();
  t->kind = kind;
  t->span = span;
  return t;
}

}  // namespace

MkTermPtr MkTerm::var(Var x, Span span) {
  auto t = mk_node(Kind::Var, span);
  t->name = std::move(x);
  return t;
}

MkTermPtr MkTerm::unit(Span span) { return mk_node(Kind::Unit, span); }

MkTermPtr MkTerm::let(Var x, MkTermPtr bound, MkTermPtr body, Span span) {
  auto t = mk_node(Kind::Let, span);
  t->name = std::move(x);
  t->first = std::move(bound);
  t->second = std::move(body);
  return t;
}

MkTermPtr MkTerm::pair(MkTermPtr left, MkTermPtr right, Span span) {
  auto t = mk_node(Kind::Pair, span);
  t->first = std::move(left);
  t->second = std::move(right);
  return t;
}

MkTermPtr MkTerm::fst(MkTermPtr operand, Span span) {
  auto t = mk_node(Kind::Fst, span);
  t->first = std::move(operand);
  return t;
}

MkTermPtr MkTerm::snd(MkTermPtr operand, Span span) {
  auto t = mk_node(Kind::Snd, span);
  t->first = std::move(operand);
  return t;
}

MkTermPtr MkTerm::prim(std::string f, MkTermPtr arg, Span span) {
  auto t = mk_node(Kind::Prim, span);
  t->name = std::move(f);
  t->first = std::move(arg);
  return t;
}

LlTermPtr LlTerm::var(Var x, Span span) {
  auto t = ll_node(Kind::Var, span);
  t->name = std::move(x);
  return t;
}

LlTermPtr LlTerm::unit(Span span) { return ll_node(Kind::Unit, span); }

LlTermPtr LlTerm::lam(Var x, LlTypePtr annot, LlTermPtr body, Span span) {
  auto t = ll_node(Kind::Lam, span);
  t->name = std::move(x);
  t->annot = std::move(annot);
  t->first = std::move(body);
  return t;
}

LlTermPtr LlTerm::app(LlTermPtr fn, LlTermPtr arg, Span span) {
  auto t = ll_node(Kind::App, span);
  t->first = std::move(fn);
  t->second = std::move(arg);
  return t;
}

LlTermPtr LlTerm::tensor(LlTermPtr left, LlTermPtr right, Span span) {
  auto t = ll_node(Kind::Tensor, span);
  t->first = std::move(left);
  t->second = std::move(right);
  return t;
}

LlTermPtr LlTerm::let_tensor(Var x, Var y, LlTermPtr bound, LlTermPtr body, Span span) {
  auto t = ll_node(Kind::LetTensor, span);
  t->name = std::move(x);
  t->name2 = std::move(y);
  t->first = std::move(bound);
  t->second = std::move(body);
  return t;
}

LlTermPtr LlTerm::sample(std::vector<LlTermPtr> args, std::vector<Var> binders,
                         MkTermPtr body, Span span) {
  auto t = ll_node(Kind::Sample, span);
  t->args = std::move(args);
  t->binders = std::move(binders);
  t->body = std::move(body);
  return t;
}

// ---------------------------------------------------------------------------
// Contexts

template <typename TypePtr>
void Context<TypePtr>::push(Var x, TypePtr t) {
  if (contains(x)) throw std::invalid_argument("duplicate context variable '" + x + "'");
  entries_.emplace_back(std::move(x), std::move(t));
}

template <typename TypePtr>
const TypePtr* Context<TypePtr>::lookup(const Var& x) const {
  for (const auto& [name, type] : entries_) {
    if (name == x) return &type;
  }
  return nullptr;
}

template <typename TypePtr>
VarSet Context<TypePtr>::names() const {
  VarSet out;
  for (const auto& e : entries_) out.insert(e.first);
  return out;
}

template <typename TypePtr>
Context<TypePtr> Context<TypePtr>::restrict_to(const VarSet& keep) const {
  Context out;
  for (const auto& e : entries_) {
    if (keep.count(e.first)) out.entries_.push_back(e);
  }
  return out;
}

template class Context<MkTypePtr>;
template class Context<LlTypePtr>;

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect_free(const MkTermPtr& t, VarSet& bound, VarSet& out) {
  switch (t->kind) {
    case MkTerm::Kind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case MkTerm::Kind::Unit: return;
    case MkTerm::Kind::Let: {
      collect_free(t->first, bound, out);
      bool fresh = bound.insert(t->name).second;
      collect_free(t->second, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
    case MkTerm::Kind::Pair:
      collect_free(t->first, bound, out);
      collect_free(t->second, bound, out);
      return;
    case MkTerm::Kind::Fst:
    case MkTerm::Kind::Snd:
    case MkTerm::Kind::Prim: collect_free(t->first, bound, out); return;
  }
}

void collect_free(const LlTermPtr& t, VarSet& bound, VarSet& out) {
  switch (t->kind) {
    case LlTerm::Kind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case LlTerm::Kind::Unit: return;
    case LlTerm::Kind::Lam: {
      bool fresh = bound.insert(t->name).second;
      collect_free(t->first, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
    case LlTerm::Kind::App:
    case LlTerm::Kind::Tensor:
      collect_free(t->first, bound, out);
      collect_free(t->second, bound, out);
      return;
    case LlTerm::Kind::LetTensor: {
      collect_free(t->first, bound, out);
      bool fx = bound.insert(t->name).second;
      bool fy = bound.insert(t->name2).second;
      collect_free(t->second, bound, out);
      if (fx) bound.erase(t->name);
      if (fy) bound.erase(t->name2);
      return;
    }
    case LlTerm::Kind::Sample: {
      for (const auto& a : t->args) collect_free(a, bound, out);
      // The body lives in its own MK scope: only the binders are in scope.
      VarSet body_bound(t->binders.begin(), t->binders.end());
      collect_free(t->body, body_bound, out);
      return;
    }
  }
}

}  // namespace

VarSet free_vars(const MkTermPtr& term) {
  VarSet bound, out;
  collect_free(term, bound, out);
  return out;
}

VarSet free_vars(const LlTermPtr& term) {
  VarSet bound, out;
  collect_free(term, bound, out);
  return out;
}

Var fresh_var(const Var& base, const VarSet& avoid) {
  if (!avoid.count(base)) return base;
  for (std::size_t n = 1;; ++n) {
    Var candidate = base + "_" + std::to_string(n);
    if (!avoid.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

template <typename Subst>
VarSet range_free_vars(const Subst& s, const VarSet& relevant) {
  VarSet out;
  for (const auto& [x, u] : s) {
    if (!relevant.count(x)) continue;
    auto fv = free_vars(u);
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

// Prepares `s` for descending under binder `x` whose scope is `scope`:
// drops the shadowed entry and, if `x` would capture a free variable of the
// substituted terms, renames it. Returns the binder to use.
template <typename Subst, typename MakeVar>
Var enter_binder(const Var& x, const VarSet& scope_fv, const VarSet& extra_avoid, Subst& s,
                 MakeVar make_var) {
  s.erase(x);
  VarSet live;
  for (const auto& v : scope_fv) {
    if (s.count(v)) live.insert(v);
  }
  VarSet captured = range_free_vars(s, live);
  if (!captured.count(x)) return x;
  VarSet avoid = captured;
  avoid.insert(scope_fv.begin(), scope_fv.end());
  avoid.insert(extra_avoid.begin(), extra_avoid.end());
  for (const auto& [k, _] : s) avoid.insert(k);
  Var renamed = fresh_var(x, avoid);
  s[x] = make_var(renamed);
  return renamed;
}

}  // namespace

MkTermPtr subst_mk(const MkTermPtr& t, const MkSubst& s) {
  if (s.empty()) return t;
  switch (t->kind) {
    case MkTerm::Kind::Var: {
      auto it = s.find(t->name);
      return it == s.end() ? t : it->second;
    }
    case MkTerm::Kind::Unit: return t;
    case MkTerm::Kind::Let: {
      auto bound = subst_mk(t->first, s);
      MkSubst inner = s;
      Var x = enter_binder(t->name, free_vars(t->second), {}, inner,
                           [](const Var& v) { return MkTerm::var(v); });
      return MkTerm::let(x, bound, subst_mk(t->second, inner), t->span);
    }
    case MkTerm::Kind::Pair:
      return MkTerm::pair(subst_mk(t->first, s), subst_mk(t->second, s), t->span);
    case MkTerm::Kind::Fst: return MkTerm::fst(subst_mk(t->first, s), t->span);
    case MkTerm::Kind::Snd: return MkTerm::snd(subst_mk(t->first, s), t->span);
    case MkTerm::Kind::Prim: return MkTerm::prim(t->name, subst_mk(t->first, s), t->span);
  }
  return t;
}

LlTermPtr subst_ll(const LlTermPtr& t, const LlSubst& s) {
  if (s.empty()) return t;
  auto make_var = [](const Var& v) { return LlTerm::var(v); };
  switch (t->kind) {
    case LlTerm::Kind::Var: {
      auto it = s.find(t->name);
      return it == s.end() ? t : it->second;
    }
    case LlTerm::Kind::Unit: return t;
    case LlTerm::Kind::Lam: {
      LlSubst inner = s;
      Var x = enter_binder(t->name, free_vars(t->first), {}, inner, make_var);
      return LlTerm::lam(x, t->annot, subst_ll(t->first, inner), t->span);
    }
    case LlTerm::Kind::App:
      return LlTerm::app(subst_ll(t->first, s), subst_ll(t->second, s), t->span);
    case LlTerm::Kind::Tensor:
      return LlTerm::tensor(subst_ll(t->first, s), subst_ll(t->second, s), t->span);
    case LlTerm::Kind::LetTensor: {
      auto bound = subst_ll(t->first, s);
      auto body_fv = free_vars(t->second);
      LlSubst inner = s;
      inner.erase(t->name2);
      Var x = enter_binder(t->name, body_fv, {t->name2}, inner, make_var);
      Var y = enter_binder(t->name2, body_fv, {x}, inner, make_var);
      return LlTerm::let_tensor(x, y, bound, subst_ll(t->second, inner), t->span);
    }
    case LlTerm::Kind::Sample: {
      std::vector<LlTermPtr> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) args.push_back(subst_ll(a, s));
      return LlTerm::sample(std::move(args), t->binders, t->body, t->span);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {

using BinderStack = std::vector<std::pair<Var, Var>>;

bool same_var(const BinderStack& env, const Var& a, const Var& b) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    bool left = it->first == a;
    bool right = it->second == b;
    if (left || right) return left && right;
  }
  return a == b;
}

bool alpha(const MkTermPtr& a, const MkTermPtr& b, BinderStack& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case MkTerm::Kind::Var: return same_var(env, a->name, b->name);
    case MkTerm::Kind::Unit: return true;
    case MkTerm::Kind::Let: {
      if (!alpha(a->first, b->first, env)) return false;
      env.emplace_back(a->name, b->name);
      bool ok = alpha(a->second, b->second, env);
      env.pop_back();
      return ok;
    }
    case MkTerm::Kind::Pair:
      return alpha(a->first, b->first, env) && alpha(a->second, b->second, env);
    case MkTerm::Kind::Fst:
    case MkTerm::Kind::Snd: return alpha(a->first, b->first, env);
    case MkTerm::Kind::Prim: return a->name == b->name && alpha(a->first, b->first, env);
  }
  return false;
}

bool alpha(const LlTermPtr& a, const LlTermPtr& b, BinderStack& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case LlTerm::Kind::Var: return same_var(env, a->name, b->name);
    case LlTerm::Kind::Unit: return true;
    case LlTerm::Kind::Lam: {
      if (!equal(a->annot, b->annot)) return false;
      env.emplace_back(a->name, b->name);
      bool ok = alpha(a->first, b->first, env);
      env.pop_back();
      return ok;
    }
    case LlTerm::Kind::App:
    case LlTerm::Kind::Tensor:
      return alpha(a->first, b->first, env) && alpha(a->second, b->second, env);
    case LlTerm::Kind::LetTensor: {
      if (!alpha(a->first, b->first, env)) return false;
      env.emplace_back(a->name, b->name);
      env.emplace_back(a->name2, b->name2);
      bool ok = alpha(a->second, b->second, env);
      env.pop_back();
      env.pop_back();
      return ok;
    }
    case LlTerm::Kind::Sample: {
      if (a->args.size() != b->args.size() || a->binders.size() != b->binders.size()) {
        return false;
      }
      for (std::size_t i = 0; i < a->args.size(); ++i) {
        if (!alpha(a->args[i], b->args[i], env)) return false;
      }
      BinderStack body_env;
      for (std::size_t i = 0; i < a->binders.size(); ++i) {
        body_env.emplace_back(a->binders[i], b->binders[i]);
      }
      return alpha(a->body, b->body, body_env);
    }
  }
  return false;
}

}  // namespace

bool alpha_eq(const MkTermPtr& a, const MkTermPtr& b) {
  BinderStack env;
  return alpha(a, b, env);
}

bool alpha_eq(const LlTermPtr& a, const LlTermPtr& b) {
  BinderStack env;
  return alpha(a, b, env);
}

std::size_t term_size(const MkTermPtr& t) {
  switch (t->kind) {
    case MkTerm::Kind::Var:
    case MkTerm::Kind::Unit: return 1;
    case MkTerm::Kind::Let:
    case MkTerm::Kind::Pair: return 1 + term_size(t->first) + term_size(t->second);
    case MkTerm::Kind::Fst:
    case MkTerm::Kind::Snd:
    case MkTerm::Kind::Prim: return 1 + term_size(t->first);
  }
  return 1;
}

std::size_t term_size(const LlTermPtr& t) {
  switch (t->kind) {
    case LlTerm::Kind::Var:
    case LlTerm::Kind::Unit: return 1;
    case LlTerm::Kind::Lam: return 1 + term_size(t->first);
    case LlTerm::Kind::App:
    case LlTerm::Kind::Tensor:
    case LlTerm::Kind::LetTensor: return 1 + term_size(t->first) + term_size(t->second);
    case LlTerm::Kind::Sample: {
      std::size_t n = 1 + term_size(t->body);
      for (const auto& a : t->args) n += term_size(a);
      return n;
    }
  }
  return 1;
}

}  // namespace llmk
