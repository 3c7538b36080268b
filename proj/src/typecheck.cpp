#include "llmk/typecheck.hpp"

#include <map>

#include "llmk/printer.hpp"

namespace llmk {

TypeError::TypeError(Kind kind, Span span, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind(kind),
      span(span),
      message(message) {}

const char* to_string(TypeError::Kind kind) {
  switch (kind) {
    case TypeError::Kind::Unbound: return "unbound";
    case TypeError::Kind::DuplicateUse: return "duplicate-use";
    case TypeError::Kind::UnusedLinear: return "unused-linear";
    case TypeError::Kind::TypeMismatch: return "type-mismatch";
    case TypeError::Kind::NonemptyContextUnit: return "nonempty-context-unit";
    case TypeError::Kind::SampleArity: return "sample-arity";
    case TypeError::Kind::NotMeasureType: return "not-measure-type";
  }
  return "type-error";
}

namespace {

void check_type(const Signature& sig, const MkTypePtr& t, Span span) {
  switch (t->kind) {
    case MkType::Kind::Unit: return;
    case MkType::Kind::Base:
      if (!sig.bases.count(t->name)) {
        throw TypeError(TypeError::Kind::Unbound, span, "unknown base type " + t->name);
      }
      return;
    case MkType::Kind::Prod:
      check_type(sig, t->left, span);
      check_type(sig, t->right, span);
      return;
  }
}

void check_type(const Signature& sig, const LlTypePtr& t, Span span) {
  switch (t->kind) {
    case LlType::Kind::Unit: return;
    case LlType::Kind::Meas: check_type(sig, t->inner, span); return;
    case LlType::Kind::Lolli:
    case LlType::Kind::Tensor:
      check_type(sig, t->left, span);
      check_type(sig, t->right, span);
      return;
  }
}

std::string show(const MkTypePtr& t) { return pretty_print(t); }
std::string show(const LlTypePtr& t) { return pretty_print(t); }

// ---------------------------------------------------------------------------
// MK

using MkEnv = std::map<Var, MkTypePtr>;

MkTypePtr check_mk(const Signature& sig, const MkEnv& env, const MkTermPtr& t) {
  switch (t->kind) {
    case MkTerm::Kind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) {
        throw TypeError(TypeError::Kind::Unbound, t->span, "unbound variable " + t->name);
      }
      return it->second;
    }
    case MkTerm::Kind::Unit: return MkType::unit();
    case MkTerm::Kind::Let: {
      auto bound = check_mk(sig, env, t->first);
      MkEnv inner = env;
      inner[t->name] = bound;
      return check_mk(sig, inner, t->second);
    }
    case MkTerm::Kind::Pair:
      return MkType::prod(check_mk(sig, env, t->first), check_mk(sig, env, t->second));
    case MkTerm::Kind::Fst:
    case MkTerm::Kind::Snd: {
      auto operand = check_mk(sig, env, t->first);
      if (operand->kind != MkType::Kind::Prod) {
        throw TypeError(TypeError::Kind::TypeMismatch, t->span,
                        std::string(t->kind == MkTerm::Kind::Fst ? "fst" : "snd") +
                            " expects a product, found " + show(operand));
      }
      return t->kind == MkTerm::Kind::Fst ? operand->left : operand->right;
    }
    case MkTerm::Kind::Prim: {
      auto it = sig.prims.find(t->name);
      if (it == sig.prims.end()) {
        throw TypeError(TypeError::Kind::Unbound, t->span, "unknown primitive " + t->name);
      }
      auto arg = check_mk(sig, env, t->first);
      if (!equal(arg, it->second.dom)) {
        throw TypeError(TypeError::Kind::TypeMismatch, t->span,
                        "primitive " + t->name + " expects " + show(it->second.dom) + ", found " +
                            show(arg));
      }
      return it->second.cod;
    }
  }
  throw TypeError(TypeError::Kind::TypeMismatch, t->span, "malformed MK term");
}

// ---------------------------------------------------------------------------
// LL

using LlEnv = std::map<Var, LlTypePtr>;

struct Judgement {
  LlTypePtr type;
  VarSet used;
};

void require_disjoint(const VarSet& a, const VarSet& b, Span span) {
  for (const auto& x : a) {
    if (b.count(x)) {
      throw TypeError(TypeError::Kind::DuplicateUse, span,
                      "linear variable " + x + " is used more than once");
    }
  }
}

void report_unused(const Var& x, const LlTermPtr& scope) {
  if (scope->kind == LlTerm::Kind::Unit) {
    throw TypeError(TypeError::Kind::NonemptyContextUnit, scope->span,
                    "unit requires an empty context, but " + x + " is still available");
  }
  throw TypeError(TypeError::Kind::UnusedLinear, scope->span,
                  "linear variable " + x + " is never used");
}

// Binders that collide with names already in scope are renamed so that the
// environment stays a function of names.
Var rebind(const Var& x, const LlEnv& env, const LlTermPtr& scope, LlTermPtr& renamed_scope) {
  renamed_scope = scope;
  if (!env.count(x)) return x;
  VarSet avoid = free_vars(scope);
  for (const auto& [name, _] : env) avoid.insert(name);
  Var fresh = fresh_var(x, avoid);
  renamed_scope = subst_ll(scope, {{x, LlTerm::var(fresh)}});
  return fresh;
}

Judgement check_ll(const Signature& sig, const LlEnv& env, const LlTermPtr& t) {
  switch (t->kind) {
    case LlTerm::Kind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) {
        throw TypeError(TypeError::Kind::Unbound, t->span, "unbound variable " + t->name);
      }
      return {it->second, {t->name}};
    }
    case LlTerm::Kind::Unit: return {LlType::unit(), {}};
    case LlTerm::Kind::Lam: {
      check_type(sig, t->annot, t->span);
      LlTermPtr body;
      Var x = rebind(t->name, env, t->first, body);
      LlEnv inner = env;
      inner[x] = t->annot;
      auto j = check_ll(sig, inner, body);
      if (!j.used.count(x)) report_unused(t->name, body);
      j.used.erase(x);
      return {LlType::lolli(t->annot, j.type), std::move(j.used)};
    }
    case LlTerm::Kind::App: {
      auto fn = check_ll(sig, env, t->first);
      auto arg = check_ll(sig, env, t->second);
      require_disjoint(fn.used, arg.used, t->span);
      if (fn.type->kind != LlType::Kind::Lolli) {
        throw TypeError(TypeError::Kind::TypeMismatch, t->span,
                        "applying a term of non-function type " + show(fn.type));
      }
      if (!equal(fn.type->left, arg.type)) {
        throw TypeError(TypeError::Kind::TypeMismatch, t->span,
                        "argument has type " + show(arg.type) + ", expected " +
                            show(fn.type->left));
      }
      fn.used.insert(arg.used.begin(), arg.used.end());
      return {fn.type->right, std::move(fn.used)};
    }
    case LlTerm::Kind::Tensor: {
      auto l = check_ll(sig, env, t->first);
      auto r = check_ll(sig, env, t->second);
      require_disjoint(l.used, r.used, t->span);
      l.used.insert(r.used.begin(), r.used.end());
      return {LlType::tensor(l.type, r.type), std::move(l.used)};
    }
    case LlTerm::Kind::LetTensor: {
      if (t->name == t->name2) {
        throw TypeError(TypeError::Kind::DuplicateUse, t->span,
                        "let-tensor binds " + t->name + " twice");
      }
      auto bound = check_ll(sig, env, t->first);
      if (bound.type->kind != LlType::Kind::Tensor) {
        throw TypeError(TypeError::Kind::TypeMismatch, t->span,
                        "let-tensor expects a tensor, found " + show(bound.type));
      }
      LlTermPtr body;
      Var x = rebind(t->name, env, t->second, body);
      LlEnv with_x = env;
      with_x[x] = bound.type->left;
      LlTermPtr body2;
      Var y = rebind(t->name2, with_x, body, body2);
      LlEnv inner = with_x;
      inner[y] = bound.type->right;
      auto j = check_ll(sig, inner, body2);
      if (!j.used.count(x)) report_unused(t->name, body2);
      if (!j.used.count(y)) report_unused(t->name2, body2);
      j.used.erase(x);
      j.used.erase(y);
      require_disjoint(bound.used, j.used, t->span);
      j.used.insert(bound.used.begin(), bound.used.end());
      return {j.type, std::move(j.used)};
    }
    case LlTerm::Kind::Sample: {
      if (t->args.size() != t->binders.size()) {
        throw TypeError(TypeError::Kind::SampleArity, t->span,
                        "sample has " + std::to_string(t->args.size()) + " arguments but " +
                            std::to_string(t->binders.size()) + " binders");
      }
      MkEnv body_env;
      VarSet used;
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (body_env.count(t->binders[i])) {
          throw TypeError(TypeError::Kind::DuplicateUse, t->span,
                          "sample binds " + t->binders[i] + " twice");
        }
        auto arg = check_ll(sig, env, t->args[i]);
        if (arg.type->kind != LlType::Kind::Meas) {
          throw TypeError(TypeError::Kind::NotMeasureType, t->args[i]->span,
                          "sample argument " + std::to_string(i + 1) + " has type " +
                              show(arg.type) + ", expected a measure type M t");
        }
        require_disjoint(used, arg.used, t->span);
        used.insert(arg.used.begin(), arg.used.end());
        body_env[t->binders[i]] = arg.type->inner;
      }
      for (const auto& x : free_vars(t->body)) {
        if (!body_env.count(x) && env.count(x)) {
          throw TypeError(TypeError::Kind::Unbound, t->body->span,
                          "LL variable " + x + " cannot be used inside a sample body");
        }
      }
      auto result = check_mk(sig, body_env, t->body);
      return {LlType::meas(result), std::move(used)};
    }
  }
  throw TypeError(TypeError::Kind::TypeMismatch, t->span, "malformed LL term");
}

}  // namespace

MkTypePtr typecheck_mk(const Signature& sig, const MkContext& ctx, const MkTermPtr& term) {
  MkEnv env;
  for (const auto& [x, t] : ctx.entries()) {
    check_type(sig, t, term->span);
    env[x] = t;
  }
  return check_mk(sig, env, term);
}

LlTypePtr typecheck_ll(const Signature& sig, const LlContext& ctx, const LlTermPtr& term) {
  LlEnv env;
  for (const auto& [x, t] : ctx.entries()) {
    check_type(sig, t, term->span);
    env[x] = t;
  }
  auto j = check_ll(sig, env, term);
  for (const auto& [x, _] : ctx.entries()) {
    if (!j.used.count(x)) report_unused(x, term);
  }
  return j.type;
}

void typecheck_def(const Program& program, const Def& def) {
  auto sig = program.signature();
  if (def.lang == Lang::MK) {
    auto t = typecheck_mk(sig, def.params, expand_mk(program, def));
    if (!equal(t, def.mk_type)) {
      throw TypeError(TypeError::Kind::TypeMismatch, def.span,
                      def.name + " is declared " + show(def.mk_type) + " but has type " + show(t));
    }
    return;
  }
  auto t = typecheck_ll(sig, {}, expand_ll(program, def));
  if (!equal(t, def.ll_type)) {
    throw TypeError(TypeError::Kind::TypeMismatch, def.span,
                    def.name + " is declared " + show(def.ll_type) + " but has type " + show(t));
  }
}

}  // namespace llmk
