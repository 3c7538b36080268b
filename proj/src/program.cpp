#include "llmk/program.hpp"

namespace llmk {

const BaseDecl* Program::find_base(const std::string& name) const {
  for (const auto& b : bases) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

const PrimDecl* Program::find_prim(const std::string& name) const {
  for (const auto& p : prims) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const Def* Program::find_def(const std::string& name) const {
  for (const auto& d : defs) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

Signature Program::signature() const {
  Signature sig;
  for (const auto& b : bases) sig.bases[b.name] = b.labels;
  for (const auto& p : prims) sig.prims[p.name] = PrimSig{p.dom, p.cod};
  return sig;
}

namespace {

// Closed definitions visible before `upto`, already expanded.
struct DefTables {
  MkSubst mk;
  LlSubst ll;
};

MkTermPtr expand_mk_term(const MkTermPtr& t, const MkSubst& defs, const VarSet& bound) {
  MkSubst visible;
  for (const auto& [name, term] : defs) {
    if (!bound.count(name)) visible.emplace(name, term);
  }
  return subst_mk(t, visible);
}

LlTermPtr expand_ll_term(const LlTermPtr& t, const DefTables& defs, VarSet& bound) {
  switch (t->kind) {
    case LlTerm::Kind::Var: {
      if (bound.count(t->name)) return t;
      auto it = defs.ll.find(t->name);
      return it == defs.ll.end() ? t : it->second;
    }
    case LlTerm::Kind::Unit: return t;
    case LlTerm::Kind::Lam: {
      bool fresh = bound.insert(t->name).second;
      auto body = expand_ll_term(t->first, defs, bound);
      if (fresh) bound.erase(t->name);
      return LlTerm::lam(t->name, t->annot, body, t->span);
    }
    case LlTerm::Kind::App:
      return LlTerm::app(expand_ll_term(t->first, defs, bound),
                         expand_ll_term(t->second, defs, bound), t->span);
    case LlTerm::Kind::Tensor:
      return LlTerm::tensor(expand_ll_term(t->first, defs, bound),
                            expand_ll_term(t->second, defs, bound), t->span);
    case LlTerm::Kind::LetTensor: {
      auto bound_term = expand_ll_term(t->first, defs, bound);
      bool fx = bound.insert(t->name).second;
      bool fy = bound.insert(t->name2).second;
      auto body = expand_ll_term(t->second, defs, bound);
      if (fx) bound.erase(t->name);
      if (fy) bound.erase(t->name2);
      return LlTerm::let_tensor(t->name, t->name2, bound_term, body, t->span);
    }
    case LlTerm::Kind::Sample: {
      std::vector<LlTermPtr> args;
      for (const auto& a : t->args) args.push_back(expand_ll_term(a, defs, bound));
      VarSet body_bound(t->binders.begin(), t->binders.end());
      return LlTerm::sample(std::move(args), t->binders,
                            expand_mk_term(t->body, defs.mk, body_bound), t->span);
    }
  }
  return t;
}

DefTables tables_before(const Program& program, const Def& upto) {
  DefTables tables;
  for (const auto& d : program.defs) {
    if (&d == &upto || d.name == upto.name) break;
    if (d.lang == Lang::LL) {
      VarSet bound;
      tables.ll[d.name] = expand_ll_term(d.ll_term, tables, bound);
    } else if (d.params.empty()) {
      tables.mk[d.name] = expand_mk_term(d.mk_term, tables.mk, {});
    }
  }
  return tables;
}

}  // namespace

LlTermPtr expand_ll(const Program& program, const Def& def) {
  auto tables = tables_before(program, def);
  VarSet bound;
  return expand_ll_term(def.ll_term, tables, bound);
}

MkTermPtr expand_mk(const Program& program, const Def& def) {
  auto tables = tables_before(program, def);
  return expand_mk_term(def.mk_term, tables.mk, def.params.names());
}

}  // namespace llmk
