#include "llmk/generate.hpp"

#include "llmk/parser.hpp"

namespace llmk {

const Program& law_pool() {
  static const Program pool = parse_program(R"(
base Bool = {tt, ff};
base Three = {a, b, c};

prim coin : 1 -> Bool = { () -> {tt: 1/2, ff: 1/2} };
prim bern : 1 -> Bool = { () -> {tt: 1/3, ff: 2/3} };
prim die : 1 -> Three = { () -> {a: 1/3, b: 1/3, c: 1/3} };
prim negb : Bool -> Bool = { tt -> {ff: 1}, ff -> {tt: 1} };
prim noisy : Bool -> Bool = { tt -> {tt: 3/4, ff: 1/4}, ff -> {tt: 1/5, ff: 4/5} };
prim pick : Three -> Bool = { a -> {tt: 1}, b -> {ff: 1}, c -> {tt: 1/2, ff: 1/2} };
prim step : Three -> Three = { a -> {b: 1}, b -> {c: 1/2, a: 1/2}, c -> {c: 1} };
prim both : Bool * Bool -> Bool = {
  (tt, tt) -> {tt: 1}, (tt, ff) -> {ff: 1}, (ff, tt) -> {ff: 1}, (ff, ff) -> {tt: 1/4, ff: 3/4}
};
prim spread : Bool -> Bool * Bool = {
  tt -> {(tt, tt): 1/2, (ff, tt): 1/2}, ff -> {(ff, ff): 2/3, (tt, ff): 1/3}
};
)");
  return pool;
}

Generator::Generator(const Program& pool, std::uint64_t seed, std::size_t max_size)
    : pool_(pool), sig_(pool.signature()), rng_(seed), max_size_(max_size) {}

std::size_t Generator::below(std::size_t n) {
  if (n == 0) throw GenerationError("empty choice");
  return static_cast<std::size_t>(rng_() % n);
}

bool Generator::chance(int num, int den) {
  return below(static_cast<std::size_t>(den)) < static_cast<std::size_t>(num);
}

Var Generator::fresh(const std::string& prefix) { return prefix + std::to_string(++counter_); }

MkTypePtr Generator::random_mk_type() {
  auto b = MkType::base("Bool");
  switch (below(8)) {
    case 0: return MkType::unit();
    case 1: return MkType::base("Three");
    case 2: return MkType::prod(b, b);
    case 3: return MkType::prod(b, MkType::unit());
    case 4: return MkType::prod(MkType::unit(), b);
    default: return b;
  }
}

LlTypePtr Generator::random_pool_type(int depth) {
  if (depth <= 1 || chance(3, 5)) return LlType::meas(random_mk_type());
  if (chance(1, 2)) {
    return LlType::tensor(random_pool_type(depth - 1), random_pool_type(depth - 1));
  }
  return LlType::lolli(random_pool_type(depth - 1), random_pool_type(depth - 1));
}

// ---------------------------------------------------------------------------
// MK

MkTermPtr Generator::gen_mk(const MkContext& ctx, const MkTypePtr& type) {
  return mk(ctx.entries(), type, static_cast<int>(max_size_));
}

MkTermPtr Generator::mk_finish(const MkEntries& ctx, const MkTypePtr& type) {
  std::vector<Var> vars;
  for (const auto& [x, t] : ctx) {
    if (equal(t, type)) vars.push_back(x);
  }
  if (!vars.empty() && !chance(1, 4)) return MkTerm::var(vars[below(vars.size())]);
  switch (type->kind) {
    case MkType::Kind::Unit: return MkTerm::unit();
    case MkType::Kind::Prod:
      return MkTerm::pair(mk_finish(ctx, type->left), mk_finish(ctx, type->right));
    case MkType::Kind::Base: {
      std::vector<std::string> nullary;
      for (const auto& [name, s] : sig_.prims) {
        if (s.dom->kind == MkType::Kind::Unit && equal(s.cod, type)) nullary.push_back(name);
      }
      if (nullary.empty()) {
        if (!vars.empty()) return MkTerm::var(vars[below(vars.size())]);
        throw GenerationError("no closed producer for base " + type->name);
      }
      return MkTerm::prim(nullary[below(nullary.size())], MkTerm::unit());
    }
  }
  throw GenerationError("malformed MK type");
}

MkTermPtr Generator::mk(const MkEntries& ctx, const MkTypePtr& type, int budget) {
  if (budget <= 1) return mk_finish(ctx, type);
  std::vector<std::string> prims;
  for (const auto& [name, s] : sig_.prims) {
    if (equal(s.cod, type)) prims.push_back(name);
  }
  for (;;) {
    switch (below(7)) {
      case 0: return mk_finish(ctx, type);
      case 1:
        if (type->kind != MkType::Kind::Prod) break;
        {
          int left = 1 + static_cast<int>(below(static_cast<std::size_t>(budget - 1)));
          return MkTerm::pair(mk(ctx, type->left, left), mk(ctx, type->right, budget - left));
        }
      case 2:
      case 3:
        if (prims.empty()) break;
        {
          const auto& name = prims[below(prims.size())];
          return MkTerm::prim(name, mk(ctx, sig_.prims.at(name).dom, budget - 1));
        }
      case 4: {
        auto sigma = random_mk_type();
        Var x = fresh("m");
        int bound = 1 + static_cast<int>(below(static_cast<std::size_t>(budget - 1)));
        auto m = mk(ctx, sigma, bound);
        MkEntries inner = ctx;
        inner.emplace_back(x, sigma);
        return MkTerm::let(x, m, mk(inner, type, budget - bound));
      }
      case 5:
      case 6: {
        auto sigma = random_mk_type();
        if (below(2) == 0) return MkTerm::fst(mk(ctx, MkType::prod(type, sigma), budget - 1));
        return MkTerm::snd(mk(ctx, MkType::prod(sigma, type), budget - 1));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// LL

LlTermPtr Generator::gen_ll(const LlContext& ctx, const LlTypePtr& type) {
  return ll(ctx.entries(), type, static_cast<int>(max_size_));
}

LlTermPtr Generator::gen_ll_within(const LlContext& ctx, const LlTypePtr& type,
                                   std::size_t limit, int attempts) {
  const std::size_t saved = max_size_;
  for (int i = 0; i < attempts; ++i) {
    max_size_ = std::max<std::size_t>(1, limit - std::min<std::size_t>(limit - 1, i / 4));
    auto t = gen_ll(ctx, type);
    if (term_size(t) <= limit) {
      max_size_ = saved;
      return t;
    }
  }
  max_size_ = saved;
  throw GenerationError("no term of size <= " + std::to_string(limit) + " after " +
                        std::to_string(attempts) + " attempts");
}

std::pair<Generator::LlEntries, Generator::LlEntries> Generator::split(const LlEntries& ctx) {
  LlEntries l, r;
  for (const auto& e : ctx) (chance(1, 2) ? l : r).push_back(e);
  return {l, r};
}

LlTermPtr Generator::ll_sample(const LlEntries& ctx, const MkTypePtr& result, int budget,
                               bool minimal) {
  // Every context entry lands in exactly one argument group.
  std::size_t n;
  if (minimal) {
    n = ctx.size();
  } else if (ctx.empty()) {
    n = below(3);
  } else {
    n = 1 + below(std::min<std::size_t>(3, ctx.size() + 1));
  }
  std::vector<LlEntries> groups(n);
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    groups[minimal ? i : below(n)].push_back(ctx[i]);
  }
  int share = std::max(1, (budget - 1) / static_cast<int>(n + 1));
  std::vector<LlTermPtr> args;
  std::vector<Var> binders;
  MkEntries body_ctx;
  for (const auto& g : groups) {
    MkTypePtr sigma;
    if (g.size() == 1 && g[0].second->kind == LlType::Kind::Meas &&
        (minimal || chance(2, 3))) {
      sigma = g[0].second->inner;
      args.push_back(LlTerm::var(g[0].first));
    } else {
      sigma = random_mk_type();
      args.push_back(minimal ? ll_finish(g, LlType::meas(sigma))
                             : ll(g, LlType::meas(sigma), share));
    }
    Var x = fresh("s");
    binders.push_back(x);
    body_ctx.emplace_back(x, sigma);
  }
  auto body = minimal ? mk_finish(body_ctx, result) : mk(body_ctx, result, share);
  return LlTerm::sample(std::move(args), std::move(binders), body);
}

LlTermPtr Generator::eliminate(const LlEntries& ctx, std::size_t slot, const LlTypePtr& type,
                               int budget) {
  const auto& [x, a] = ctx[slot];
  LlEntries rest;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i != slot) rest.push_back(ctx[i]);
  }
  if (a->kind == LlType::Kind::Tensor) {
    Var l = fresh("p"), r = fresh("q");
    LlEntries inner = rest;
    inner.emplace_back(l, a->left);
    inner.emplace_back(r, a->right);
    auto body = budget <= 1 ? ll_finish(inner, type) : ll(inner, type, budget - 1);
    return LlTerm::let_tensor(l, r, LlTerm::var(x), body);
  }
  // a = A -o B: (\y:B. rest) (x arg)
  Var y = fresh("y");
  LlEntries inner = rest;
  inner.emplace_back(y, a->right);
  auto arg = budget <= 1 ? ll_finish({}, a->left) : ll({}, a->left, budget / 2);
  auto body = budget <= 1 ? ll_finish(inner, type) : ll(inner, type, budget - 1);
  return LlTerm::app(LlTerm::lam(y, a->right, body), LlTerm::app(LlTerm::var(x), arg));
}

LlTermPtr Generator::ll_finish(const LlEntries& ctx, const LlTypePtr& type) {
  if (ctx.size() == 1 && equal(ctx[0].second, type)) return LlTerm::var(ctx[0].first);
  switch (type->kind) {
    case LlType::Kind::Unit:
      if (!ctx.empty()) throw GenerationError("unit requested in a nonempty context");
      return LlTerm::unit();
    case LlType::Kind::Lolli: {
      Var x = fresh("x");
      LlEntries inner = ctx;
      inner.emplace_back(x, type->left);
      return LlTerm::lam(x, type->left, ll_finish(inner, type->right));
    }
    case LlType::Kind::Tensor:
      if (type->left->kind == LlType::Kind::Unit) {
        return LlTerm::tensor(LlTerm::unit(), ll_finish(ctx, type->right));
      }
      return LlTerm::tensor(ll_finish(ctx, type->left), ll_finish({}, type->right));
    case LlType::Kind::Meas:
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (ctx[i].second->kind != LlType::Kind::Meas) return eliminate(ctx, i, type, 0);
      }
      return ll_sample(ctx, type->inner, 0, true);
  }
  throw GenerationError("malformed LL type");
}

LlTermPtr Generator::ll(const LlEntries& ctx, const LlTypePtr& type, int budget) {
  if (budget <= 1) return ll_finish(ctx, type);
  if (type->kind == LlType::Kind::Unit) {
    if (!ctx.empty()) throw GenerationError("unit requested in a nonempty context");
    return LlTerm::unit();
  }
  for (;;) {
    switch (below(9)) {
      case 0:
      case 1:
        if (ctx.size() == 1 && equal(ctx[0].second, type)) return LlTerm::var(ctx[0].first);
        break;
      case 2:
      case 3:
      case 4:
        switch (type->kind) {
          case LlType::Kind::Lolli: {
            Var x = fresh("x");
            LlEntries inner = ctx;
            inner.emplace_back(x, type->left);
            return LlTerm::lam(x, type->left, ll(inner, type->right, budget - 1));
          }
          case LlType::Kind::Tensor: {
            auto [l, r] = split(ctx);
            int left = 1 + static_cast<int>(below(static_cast<std::size_t>(budget - 1)));
            return LlTerm::tensor(ll(l, type->left, left), ll(r, type->right, budget - left));
          }
          case LlType::Kind::Meas: return ll_sample(ctx, type->inner, budget, false);
          case LlType::Kind::Unit: break;
        }
        break;
      case 5: {
        auto a = random_pool_type(1 + static_cast<int>(below(2)));
        auto [l, r] = split(ctx);
        int fn = 1 + static_cast<int>(below(static_cast<std::size_t>(budget - 1)));
        return LlTerm::app(ll(l, LlType::lolli(a, type), fn), ll(r, a, budget - fn));
      }
      case 6: {
        auto a = random_pool_type(1);
        auto b = random_pool_type(1);
        auto [l, r] = split(ctx);
        Var x = fresh("p"), y = fresh("q");
        r.emplace_back(x, a);
        r.emplace_back(y, b);
        int bound = 1 + static_cast<int>(below(static_cast<std::size_t>(budget - 1)));
        return LlTerm::let_tensor(x, y, ll(l, LlType::tensor(a, b), bound),
                                  ll(r, type, budget - bound));
      }
      case 7:
      case 8: {
        std::vector<std::size_t> slots;
        for (std::size_t i = 0; i < ctx.size(); ++i) {
          if (ctx[i].second->kind != LlType::Kind::Meas) slots.push_back(i);
        }
        if (slots.empty()) break;
        return eliminate(ctx, slots[below(slots.size())], type, budget);
      }
    }
  }
}

}  // namespace llmk
