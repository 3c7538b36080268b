#include "llmk/denote.hpp"

#include <sstream>

#include "llmk/typecheck.hpp"

namespace llmk {

Matrix kernel_matrix(const PrimDecl& prim, const BaseTable& bases, std::size_t max_index) {
  FinSet dom = points(prim.dom, bases, max_index);
  FinSet cod = points(prim.cod, bases, max_index);
  Matrix m(dom, cod);
  for (const auto& [a, row] : prim.kernel) {
    auto i = dom.index_of(a);
    if (!i) throw std::invalid_argument("kernel row " + a + " is not a point of the domain");
    for (const auto& [b, p] : row) {
      auto j = cod.index_of(b);
      if (!j) throw std::invalid_argument("kernel entry " + b + " is not a point of the codomain");
      m.set(*i, *j, p);
    }
  }
  return m;
}

Interpretation Interpretation::from_program(const Program& program, Semiring s,
                                            std::size_t max_index) {
  Interpretation interp;
  interp.semiring = s;
  interp.max_index = max_index;
  for (const auto& b : program.bases) interp.bases[b.name] = b.labels;
  for (const auto& p : program.prims) {
    interp.prims[p.name] = kernel_matrix(p, interp.bases, max_index).in_semiring(s);
    interp.sigs[p.name] = PrimSig{p.dom, p.cod};
  }
  return interp;
}

FinSet denote_mk_type(const Interpretation& interp, const MkTypePtr& type) {
  return points(type, interp.bases, interp.max_index);
}

FinSet denote_ll_type(const Interpretation& interp, const LlTypePtr& type) {
  return web_index(type, interp.bases, interp.max_index);
}

namespace {

template <typename Ctx, typename F>
FinSet flat_index(const Interpretation& interp, const Ctx& ctx, F&& index_of) {
  std::vector<FinSet> factors;
  for (const auto& [_, t] : ctx) factors.push_back(index_of(interp, t));
  return FinSet::product(factors, interp.max_index);
}

// ---------------------------------------------------------------------------
// MK

using MkEntries = std::vector<std::pair<Var, MkTypePtr>>;

struct MkResult {
  Matrix matrix;
  MkTypePtr type;
};

class MkDenoter {
 public:
  explicit MkDenoter(const Interpretation& interp) : interp_(interp) {}

  MkResult run(const MkEntries& ctx, const MkTermPtr& t) {
    const Semiring s = interp_.semiring;
    switch (t->kind) {
      case MkTerm::Kind::Var: {
        std::vector<FinSet> factors;
        std::size_t slot = ctx.size();
        for (std::size_t i = 0; i < ctx.size(); ++i) {
          factors.push_back(points_of(ctx[i].second));
          if (ctx[i].first == t->name) slot = i;
        }
        if (slot == ctx.size()) throw std::logic_error("unbound variable " + t->name);
        return {projection(factors, slot, s, interp_.max_index), ctx[slot].second};
      }
      case MkTerm::Kind::Unit:
        return {discard(rows(ctx), s), MkType::unit()};
      case MkTerm::Kind::Pair: {
        auto l = run(ctx, t->first);
        auto r = run(ctx, t->second);
        return {fork(l.matrix, r.matrix, interp_.max_index), MkType::prod(l.type, r.type)};
      }
      case MkTerm::Kind::Let: {
        auto bound = run(ctx, t->first);
        Var x = t->name;
        MkTermPtr body = t->second;
        VarSet in_scope;
        for (const auto& [name, _] : ctx) in_scope.insert(name);
        if (in_scope.count(x)) {
          VarSet avoid = in_scope;
          for (const auto& v : free_vars(body)) avoid.insert(v);
          x = fresh_var(t->name, avoid);
          body = subst_mk(body, {{t->name, MkTerm::var(x)}});
        }
        MkEntries extended = ctx;
        extended.emplace_back(x, bound.type);
        FinSet g = rows(ctx);
        Matrix widen = fork(identity(g, s), bound.matrix, interp_.max_index)
                           .relabeled(g, rows(extended));
        auto rest = run(extended, body);
        return {compose(widen, rest.matrix), rest.type};
      }
      case MkTerm::Kind::Fst:
      case MkTerm::Kind::Snd: {
        auto inner = run(ctx, t->first);
        FinSet a = points_of(inner.type->left);
        FinSet b = points_of(inner.type->right);
        bool first = t->kind == MkTerm::Kind::Fst;
        Matrix proj = first ? compose(tensor(identity(a, s), discard(b, s)), right_unitor(a, s))
                            : compose(tensor(discard(a, s), identity(b, s)), left_unitor(b, s));
        return {compose(inner.matrix, proj), first ? inner.type->left : inner.type->right};
      }
      case MkTerm::Kind::Prim: {
        auto arg = run(ctx, t->first);
        auto it = interp_.prims.find(t->name);
        auto sig = interp_.sigs.find(t->name);
        if (it == interp_.prims.end() || sig == interp_.sigs.end()) {
          throw std::logic_error("no interpretation for primitive " + t->name);
        }
        return {compose(arg.matrix, it->second), sig->second.cod};
      }
    }
    throw std::logic_error("malformed MK term");
  }

  FinSet points_of(const MkTypePtr& t) const { return denote_mk_type(interp_, t); }

  FinSet rows(const MkEntries& ctx) const {
    std::vector<FinSet> factors;
    for (const auto& [_, t] : ctx) factors.push_back(points_of(t));
    return FinSet::product(factors, interp_.max_index);
  }

 private:
  const Interpretation& interp_;
};

// ---------------------------------------------------------------------------
// LL

using LlEntries = std::vector<std::pair<Var, LlTypePtr>>;

struct LlResult {
  Matrix matrix;
  LlTypePtr type;
};

class LlDenoter {
 public:
  explicit LlDenoter(const Interpretation& interp) : interp_(interp), mk_(interp) {}

  LlResult run(const LlEntries& ctx, const LlTermPtr& t) {
    const Semiring s = interp_.semiring;
    switch (t->kind) {
      case LlTerm::Kind::Var: {
        if (ctx.size() != 1 || ctx[0].first != t->name) {
          throw std::logic_error("variable " + t->name + " in a non-singleton context");
        }
        return {identity(web(ctx[0].second), s), ctx[0].second};
      }
      case LlTerm::Kind::Unit:
        return {identity(FinSet::singleton(), s).relabeled(rows(ctx), FinSet::singleton()),
                LlType::unit()};
      case LlTerm::Kind::Lam: {
        LlTermPtr body = t->first;
        Var x = rebind(t->name, ctx, body);
        LlEntries extended = ctx;
        extended.emplace_back(x, t->annot);
        auto inner = run(extended, body);
        FinSet g = rows(ctx);
        FinSet a = web(t->annot);
        Matrix f = inner.matrix.relabeled(FinSet::product(g, a, interp_.max_index),
                                          inner.matrix.cols());
        return {cur(f, g, a, inner.matrix.cols()), LlType::lolli(t->annot, inner.type)};
      }
      case LlTerm::Kind::App:
      case LlTerm::Kind::Tensor: {
        std::vector<LlTermPtr> parts{t->first, t->second};
        std::vector<LlEntries> splits;
        Matrix head = split(ctx, parts, splits);
        auto l = run(splits[0], t->first);
        auto r = run(splits[1], t->second);
        Matrix both = compose(head, tensor(l.matrix, r.matrix, interp_.max_index));
        if (t->kind == LlTerm::Kind::Tensor) {
          return {both, LlType::tensor(l.type, r.type)};
        }
        FinSet y = web(l.type->left);
        FinSet z = web(l.type->right);
        return {compose(both, ev(y, z, s)), l.type->right};
      }
      case LlTerm::Kind::LetTensor: {
        // Context reordered as (rest, bound) so that the pair lands at the end.
        std::vector<LlTermPtr> parts{t->first};
        std::vector<LlEntries> splits;
        VarSet used = free_vars(t->first);
        LlEntries bound_ctx, rest_ctx;
        std::vector<std::size_t> order_rest, order_bound;
        for (std::size_t i = 0; i < ctx.size(); ++i) {
          if (used.count(ctx[i].first)) {
            bound_ctx.push_back(ctx[i]);
            order_bound.push_back(i);
          } else {
            rest_ctx.push_back(ctx[i]);
            order_rest.push_back(i);
          }
        }
        std::vector<std::size_t> order = order_rest;
        order.insert(order.end(), order_bound.begin(), order_bound.end());
        Matrix head = exchange(factors(ctx), order, s, interp_.max_index);
        auto bound = run(bound_ctx, t->first);

        LlTermPtr body = t->second;
        Var x = rebind(t->name, rest_ctx, body);
        LlEntries with_x = rest_ctx;
        with_x.emplace_back(x, bound.type->left);
        Var y = rebind(t->name2, with_x, body);
        LlEntries extended = with_x;
        extended.emplace_back(y, bound.type->right);

        FinSet rest_rows = rows(rest_ctx);
        Matrix widen = tensor(identity(rest_rows, s), bound.matrix, interp_.max_index);
        widen = widen.relabeled(head.cols(), rows(extended));
        auto u = run(extended, body);
        return {compose(compose(head, widen), u.matrix), u.type};
      }
      case LlTerm::Kind::Sample: {
        std::vector<LlEntries> splits;
        Matrix head = split(ctx, t->args, splits);
        Matrix args = identity(FinSet::singleton(), s);
        MkEntries body_ctx;
        MkTypePtr joint;
        for (std::size_t i = 0; i < t->args.size(); ++i) {
          auto r = run(splits[i], t->args[i]);
          MkTypePtr tau = r.type->inner;
          body_ctx.emplace_back(t->binders[i], tau);
          if (i == 0) {
            args = r.matrix;
            joint = tau;
            continue;
          }
          // mu: M joint (*) M tau -> M (joint * tau), the identity on indices.
          Matrix paired = tensor(args, r.matrix, interp_.max_index);
          MkTypePtr next = MkType::prod(joint, tau);
          args = compose(paired, index_bijection(paired.cols(), mk_.points_of(next), s));
          joint = next;
        }
        if (t->args.empty()) {
          // epsilon: 1 -> M 1.
          args = index_bijection(FinSet::singleton(), FinSet::singleton(), s);
        }
        Matrix into_body = args.relabeled(args.rows(), mk_.rows(body_ctx));
        auto body = mk_.run(body_ctx, t->body);
        Matrix out = compose(compose(head, into_body), body.matrix);
        return {out, LlType::meas(body.type)};
      }
    }
    throw std::logic_error("malformed LL term");
  }

 private:
  FinSet web(const LlTypePtr& t) const { return denote_ll_type(interp_, t); }

  std::vector<FinSet> factors(const LlEntries& ctx) const {
    std::vector<FinSet> out;
    for (const auto& [_, t] : ctx) out.push_back(web(t));
    return out;
  }

  FinSet rows(const LlEntries& ctx) const {
    return FinSet::product(factors(ctx), interp_.max_index);
  }

  // Partitions `ctx` by the free variables of each part and returns the
  // exchange that brings the context into the order of the parts.
  Matrix split(const LlEntries& ctx, const std::vector<LlTermPtr>& parts,
               std::vector<LlEntries>& out) {
    out.assign(parts.size(), {});
    std::vector<std::vector<std::size_t>> slots(parts.size());
    std::vector<VarSet> fvs;
    for (const auto& p : parts) fvs.push_back(free_vars(p));
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      std::size_t owner = parts.size();
      for (std::size_t k = 0; k < parts.size(); ++k) {
        if (fvs[k].count(ctx[i].first)) {
          owner = k;
          break;
        }
      }
      if (owner == parts.size()) throw std::logic_error("unused linear variable " + ctx[i].first);
      out[owner].push_back(ctx[i]);
      slots[owner].push_back(i);
    }
    std::vector<std::size_t> order;
    for (const auto& s : slots) order.insert(order.end(), s.begin(), s.end());
    Matrix ex = exchange(factors(ctx), order, interp_.semiring, interp_.max_index);
    std::vector<FinSet> grouped;
    for (const auto& part : out) grouped.push_back(rows(part));
    FinSet target = grouped.empty() ? FinSet::singleton() : grouped[0];
    for (std::size_t k = 1; k < grouped.size(); ++k) {
      target = FinSet::product(target, grouped[k], interp_.max_index);
    }
    return ex.relabeled(ex.rows(), target);
  }

  static Var rebind(const Var& x, const LlEntries& ctx, LlTermPtr& scope) {
    VarSet names;
    for (const auto& [n, _] : ctx) names.insert(n);
    if (!names.count(x)) return x;
    VarSet avoid = names;
    for (const auto& v : free_vars(scope)) avoid.insert(v);
    Var fresh = fresh_var(x, avoid);
    scope = subst_ll(scope, {{x, LlTerm::var(fresh)}});
    return fresh;
  }

  const Interpretation& interp_;
  MkDenoter mk_;
};

}  // namespace

FinSet context_index(const Interpretation& interp, const MkContext& ctx) {
  return flat_index(interp, ctx.entries(), denote_mk_type);
}

FinSet context_index(const Interpretation& interp, const LlContext& ctx) {
  return flat_index(interp, ctx.entries(), denote_ll_type);
}

Matrix denote_mk(const Interpretation& interp, const MkContext& ctx, const MkTermPtr& term) {
  MkDenoter d(interp);
  auto r = d.run(ctx.entries(), term);
  return r.matrix.relabeled(context_index(interp, ctx), denote_mk_type(interp, r.type));
}

Matrix denote_ll(const Interpretation& interp, const LlContext& ctx, const LlTermPtr& term) {
  LlDenoter d(interp);
  auto r = d.run(ctx.entries(), term);
  return r.matrix.relabeled(context_index(interp, ctx), denote_ll_type(interp, r.type));
}

Matrix observe_denote(const Interpretation& rel, const LlContext& ctx, const LlTermPtr& term) {
  if (rel.semiring != Semiring::Bool) {
    throw std::invalid_argument("observe_denote needs a bool-semiring interpretation");
  }
  return denote_ll(rel, ctx, term);
}

Matrix denote_def(const Program& program, const Def& def, Semiring s, std::size_t max_index) {
  typecheck_def(program, def);
  auto interp = Interpretation::from_program(program, s, max_index);
  if (def.lang == Lang::MK) return denote_mk(interp, def.params, expand_mk(program, def));
  return denote_ll(interp, {}, expand_ll(program, def));
}

std::string format_distribution(const Matrix& m) {
  std::ostringstream out;
  const bool many = m.rows().size() != 1;
  for (std::size_t i = 0; i < m.rows().size(); ++i) {
    for (std::size_t j = 0; j < m.cols().size(); ++j) {
      if (is_zero(m.at(i, j))) continue;
      if (many) out << m.rows().label(i) << " | ";
      out << m.cols().label(j) << " : " << to_string(m.at(i, j)) << "\n";
    }
  }
  return out.str();
}

}  // namespace llmk
