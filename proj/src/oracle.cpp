#include "llmk/oracle.hpp"

#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "llmk/finset.hpp"
#include "llmk/typecheck.hpp"

namespace llmk {

Rational TraceDist::weight(const std::string& point) const {
  for (const auto& [p, w] : outcomes) {
    if (p == point) return w;
  }
  return 0;
}

namespace {

// MK values are kept structured; their printed form is the point label.
struct Value;
using ValuePtr = std::shared_ptr<const Value>;
struct Value {
  enum class Kind { Unit, Atom, Pair } kind = Kind::Unit;
  std::string atom;
  ValuePtr left, right;
  std::string label;
};

ValuePtr unit_value() {
  auto v = std::make_shared<Value>();
  v->label = "()";
  return v;
}

ValuePtr atom_value(const std::string& a) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Atom;
  v->atom = a;
  v->label = a;
  return v;
}

ValuePtr pair_value(ValuePtr l, ValuePtr r) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Pair;
  v->label = "(" + l->label + "," + r->label + ")";
  v->left = std::move(l);
  v->right = std::move(r);
  return v;
}

// Every value of an MK type, keyed by label.
std::map<std::string, ValuePtr> values_of(const MkTypePtr& t, const BaseTable& bases) {
  std::map<std::string, ValuePtr> out;
  switch (t->kind) {
    case MkType::Kind::Unit: out["()"] = unit_value(); break;
    case MkType::Kind::Base:
      for (const auto& a : bases.at(t->name)) out[a] = atom_value(a);
      break;
    case MkType::Kind::Prod: {
      auto ls = values_of(t->left, bases);
      auto rs = values_of(t->right, bases);
      for (const auto& [_, l] : ls) {
        for (const auto& [_r, r] : rs) {
          auto p = pair_value(l, r);
          out[p->label] = p;
        }
      }
      break;
    }
  }
  return out;
}

struct Kernel {
  const PrimDecl* decl;
  std::map<std::string, ValuePtr> cod_values;
};

struct World {
  BaseTable bases;
  std::map<std::string, Kernel> kernels;

  explicit World(const Program& program) {
    for (const auto& b : program.bases) bases[b.name] = b.labels;
    for (const auto& p : program.prims) kernels[p.name] = Kernel{&p, values_of(p.cod, bases)};
  }

  const Kernel& kernel(const std::string& name) const {
    auto it = kernels.find(name);
    if (it == kernels.end()) throw OracleError("unknown primitive " + name);
    return it->second;
  }
};

using Branches = std::vector<std::pair<ValuePtr, Rational>>;
using MkEnv = std::map<Var, ValuePtr>;

// ---------------------------------------------------------------------------
// Exhaustive evaluation

class Enumerator {
 public:
  Enumerator(const World& world, std::size_t cap) : world_(world), cap_(cap) {}

  Branches mk(const MkEnv& env, const MkTermPtr& t) {
    switch (t->kind) {
      case MkTerm::Kind::Var: {
        auto it = env.find(t->name);
        if (it == env.end()) throw OracleError("unbound variable " + t->name);
        return {{it->second, 1}};
      }
      case MkTerm::Kind::Unit: return {{unit_value(), 1}};
      case MkTerm::Kind::Let: {
        Branches out;
        for (const auto& [v, w] : mk(env, t->first)) {
          MkEnv inner = env;
          inner[t->name] = v;
          for (const auto& [u, w2] : mk(inner, t->second)) emit(out, u, w * w2);
        }
        return out;
      }
      case MkTerm::Kind::Pair: {
        auto ls = mk(env, t->first);
        auto rs = mk(env, t->second);
        Branches out;
        for (const auto& [l, wl] : ls) {
          for (const auto& [r, wr] : rs) emit(out, pair_value(l, r), wl * wr);
        }
        return out;
      }
      case MkTerm::Kind::Fst:
      case MkTerm::Kind::Snd: {
        Branches out;
        for (const auto& [v, w] : mk(env, t->first)) {
          if (v->kind != Value::Kind::Pair) throw OracleError("projection of a non-pair");
          emit(out, t->kind == MkTerm::Kind::Fst ? v->left : v->right, w);
        }
        return out;
      }
      case MkTerm::Kind::Prim: {
        const Kernel& k = world_.kernel(t->name);
        Branches out;
        for (const auto& [v, w] : mk(env, t->first)) {
          auto row = k.decl->kernel.find(v->label);
          if (row == k.decl->kernel.end()) throw OracleError("no kernel row for " + v->label);
          for (const auto& [b, p] : row->second) {
            if (sgn(p) == 0) continue;
            emit(out, k.cod_values.at(b), w * p);
          }
        }
        return out;
      }
    }
    throw OracleError("malformed MK term");
  }

  // LL values: measures are fully enumerated distributions.
  struct LlValue;
  using LlPtr = std::shared_ptr<const LlValue>;
  using LlEnv = std::map<Var, LlPtr>;
  struct LlValue {
    enum class Kind { Unit, Dist, Closure, Pair } kind = Kind::Unit;
    Branches dist;
    Var param;
    LlTermPtr body;
    LlEnv env;
    LlPtr left, right;
  };

  LlPtr ll(const LlEnv& env, const LlTermPtr& t) {
    switch (t->kind) {
      case LlTerm::Kind::Var: {
        auto it = env.find(t->name);
        if (it == env.end()) throw OracleError("unbound variable " + t->name);
        return it->second;
      }
      case LlTerm::Kind::Unit: return std::make_shared<LlValue>();
      case LlTerm::Kind::Lam: {
        auto v = std::make_shared<LlValue>();
        v->kind = LlValue::Kind::Closure;
        v->param = t->name;
        v->body = t->first;
        v->env = env;
        return v;
      }
      case LlTerm::Kind::App: {
        auto f = ll(env, t->first);
        auto a = ll(env, t->second);
        if (f->kind != LlValue::Kind::Closure) throw OracleError("application of a non-function");
        LlEnv inner = f->env;
        inner[f->param] = a;
        return ll(inner, f->body);
      }
      case LlTerm::Kind::Tensor: {
        auto v = std::make_shared<LlValue>();
        v->kind = LlValue::Kind::Pair;
        v->left = ll(env, t->first);
        v->right = ll(env, t->second);
        return v;
      }
      case LlTerm::Kind::LetTensor: {
        auto p = ll(env, t->first);
        if (p->kind != LlValue::Kind::Pair) throw OracleError("let-tensor of a non-pair");
        LlEnv inner = env;
        inner[t->name] = p->left;
        inner[t->name2] = p->right;
        return ll(inner, t->second);
      }
      case LlTerm::Kind::Sample: {
        // Independent product of the argument distributions.
        std::vector<std::pair<MkEnv, Rational>> joint{{MkEnv{}, 1}};
        for (std::size_t i = 0; i < t->args.size(); ++i) {
          auto d = ll(env, t->args[i]);
          if (d->kind != LlValue::Kind::Dist) throw OracleError("sample of a non-measure");
          std::vector<std::pair<MkEnv, Rational>> next;
          for (const auto& [e, w] : joint) {
            for (const auto& [v, p] : d->dist) {
              count();
              MkEnv e2 = e;
              e2[t->binders[i]] = v;
              next.emplace_back(std::move(e2), w * p);
            }
          }
          joint = std::move(next);
        }
        auto out = std::make_shared<LlValue>();
        out->kind = LlValue::Kind::Dist;
        for (const auto& [e, w] : joint) {
          for (const auto& [v, p] : mk(e, t->body)) emit(out->dist, v, w * p);
        }
        out->dist = aggregate(out->dist);
        return out;
      }
    }
    throw OracleError("malformed LL term");
  }

  static Branches aggregate(const Branches& b) {
    std::map<std::string, std::pair<ValuePtr, Rational>> acc;
    for (const auto& [v, w] : b) {
      auto it = acc.find(v->label);
      if (it == acc.end()) {
        acc.emplace(v->label, std::make_pair(v, w));
      } else {
        it->second.second += w;
      }
    }
    Branches out;
    for (const auto& [_, vw] : acc) {
      if (sgn(vw.second) > 0) out.push_back(vw);
    }
    return out;
  }

 private:
  void count() {
    if (++paths_ > cap_) {
      throw OracleError("branch count exceeds the cap of " + std::to_string(cap_));
    }
  }

  void emit(Branches& out, ValuePtr v, Rational w) {
    count();
    out.emplace_back(std::move(v), std::move(w));
  }

  const World& world_;
  std::size_t cap_;
  std::size_t paths_ = 0;
};

TraceDist to_trace(const Branches& branches, const MkTypePtr& type, const BaseTable& bases) {
  auto merged = Enumerator::aggregate(branches);
  std::map<std::string, Rational> by_label;
  for (const auto& [v, w] : merged) by_label[v->label] = w;
  TraceDist out;
  const FinSet all = points(type, bases);
  for (const auto& p : all.labels()) {
    auto it = by_label.find(p);
    if (it != by_label.end()) out.outcomes.emplace_back(p, it->second);
  }
  return out;
}

MkTypePtr ground_type(const Program& program, const LlTermPtr& term) {
  auto type = typecheck_ll(program.signature(), {}, term);
  if (type->kind != LlType::Kind::Meas) {
    throw OracleError("result type is not a measure type; the oracle only runs ground programs");
  }
  return type->inner;
}

// ---------------------------------------------------------------------------
// Sampling

class Sampler {
 public:
  Sampler(const World& world, std::uint64_t seed) : world_(world), rng_(seed) {}

  ValuePtr mk(const MkEnv& env, const MkTermPtr& t) {
    switch (t->kind) {
      case MkTerm::Kind::Var: return env.at(t->name);
      case MkTerm::Kind::Unit: return unit_value();
      case MkTerm::Kind::Let: {
        MkEnv inner = env;
        inner[t->name] = mk(env, t->first);
        return mk(inner, t->second);
      }
      case MkTerm::Kind::Pair: {
        auto l = mk(env, t->first);
        return pair_value(l, mk(env, t->second));
      }
      case MkTerm::Kind::Fst: return mk(env, t->first)->left;
      case MkTerm::Kind::Snd: return mk(env, t->first)->right;
      case MkTerm::Kind::Prim: {
        const Kernel& k = world_.kernel(t->name);
        auto v = mk(env, t->first);
        const auto& row = k.decl->kernel.at(v->label);
        // Exact comparison of a 53-bit uniform against the cumulative row.
        Rational u(mpz_class(rng_() >> 11), mpz_class(1) << 53);
        u.canonicalize();
        Rational acc = 0;
        std::string last;
        for (const auto& [b, p] : row) {
          if (sgn(p) == 0) continue;
          last = b;
          acc += p;
          if (u < acc) return k.cod_values.at(b);
        }
        return k.cod_values.at(last);
      }
    }
    throw OracleError("malformed MK term");
  }

  // Measures are drawn eagerly: linearity means each is sampled exactly once.
  struct LlValue;
  using LlPtr = std::shared_ptr<const LlValue>;
  using LlEnv = std::map<Var, LlPtr>;
  struct LlValue {
    enum class Kind { Unit, Point, Closure, Pair } kind = Kind::Unit;
    ValuePtr point;
    Var param;
    LlTermPtr body;
    LlEnv env;
    LlPtr left, right;
  };

  LlPtr ll(const LlEnv& env, const LlTermPtr& t) {
    switch (t->kind) {
      case LlTerm::Kind::Var: return env.at(t->name);
      case LlTerm::Kind::Unit: return std::make_shared<LlValue>();
      case LlTerm::Kind::Lam: {
        auto v = std::make_shared<LlValue>();
        v->kind = LlValue::Kind::Closure;
        v->param = t->name;
        v->body = t->first;
        v->env = env;
        return v;
      }
      case LlTerm::Kind::App: {
        auto f = ll(env, t->first);
        auto a = ll(env, t->second);
        LlEnv inner = f->env;
        inner[f->param] = a;
        return ll(inner, f->body);
      }
      case LlTerm::Kind::Tensor: {
        auto v = std::make_shared<LlValue>();
        v->kind = LlValue::Kind::Pair;
        v->left = ll(env, t->first);
        v->right = ll(env, t->second);
        return v;
      }
      case LlTerm::Kind::LetTensor: {
        auto p = ll(env, t->first);
        LlEnv inner = env;
        inner[t->name] = p->left;
        inner[t->name2] = p->right;
        return ll(inner, t->second);
      }
      case LlTerm::Kind::Sample: {
        MkEnv body_env;
        for (std::size_t i = 0; i < t->args.size(); ++i) {
          body_env[t->binders[i]] = ll(env, t->args[i])->point;
        }
        auto out = std::make_shared<LlValue>();
        out->kind = LlValue::Kind::Point;
        out->point = mk(body_env, t->body);
        return out;
      }
    }
    throw OracleError("malformed LL term");
  }

 private:
  const World& world_;
  std::mt19937_64 rng_;
};

const Def& closed_def(const Program& program, const std::string& name) {
  const Def* def = program.find_def(name);
  if (!def) throw OracleError("no definition named " + name);
  if (def->lang == Lang::MK && !def->params.empty()) {
    throw OracleError(name + " takes parameters; the oracle only runs closed programs");
  }
  return *def;
}

}  // namespace

TraceDist enumerate_term(const Program& program, const LlTermPtr& term, std::size_t branch_cap) {
  MkTypePtr type = ground_type(program, term);
  World world(program);
  Enumerator e(world, branch_cap);
  auto v = e.ll({}, term);
  return to_trace(v->dist, type, world.bases);
}

TraceDist enumerate_term(const Program& program, const MkTermPtr& term, std::size_t branch_cap) {
  MkTypePtr type = typecheck_mk(program.signature(), {}, term);
  World world(program);
  Enumerator e(world, branch_cap);
  return to_trace(e.mk({}, term), type, world.bases);
}

TraceDist enumerate(const Program& program, const std::string& def_name, std::size_t branch_cap) {
  const Def& def = closed_def(program, def_name);
  if (def.lang == Lang::MK) return enumerate_term(program, expand_mk(program, def), branch_cap);
  return enumerate_term(program, expand_ll(program, def), branch_cap);
}

Tally mc_sample_term(const Program& program, const LlTermPtr& term, std::uint64_t seed,
                     std::size_t n) {
  MkTypePtr type = ground_type(program, term);
  World world(program);
  Sampler s(world, seed);
  std::map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i < n; ++i) ++counts[s.ll({}, term)->point->label];
  Tally out;
  out.draws = n;
  const FinSet all = points(type, world.bases);
  for (const auto& p : all.labels()) {
    auto it = counts.find(p);
    if (it != counts.end()) out.counts.emplace_back(p, it->second);
  }
  return out;
}

Tally mc_sample(const Program& program, const std::string& def_name, std::uint64_t seed,
                std::size_t n) {
  const Def& def = closed_def(program, def_name);
  if (def.lang == Lang::MK) {
    // A closed MK program runs as the body of a nullary sample.
    return mc_sample_term(program, LlTerm::sample({}, {}, expand_mk(program, def)), seed, n);
  }
  return mc_sample_term(program, expand_ll(program, def), seed, n);
}

Rational total_variation(const TraceDist& exact, const Tally& tally) {
  std::map<std::string, Rational> diff;
  for (const auto& [p, w] : exact.outcomes) diff[p] += w;
  if (tally.draws > 0) {
    for (const auto& [p, c] : tally.counts) {
      diff[p] -= Rational(mpz_class(std::to_string(c))) / Rational(mpz_class(std::to_string(tally.draws)));
    }
  }
  Rational sum = 0;
  for (const auto& [_, d] : diff) sum += abs(d);
  return sum / 2;
}

std::string format_trace(const TraceDist& dist) {
  std::ostringstream out;
  for (const auto& [p, w] : dist.outcomes) out << p << " : " << to_string(w) << "\n";
  return out.str();
}

std::string format_tally(const Tally& tally) {
  std::ostringstream out;
  for (const auto& [p, c] : tally.counts) {
    Rational f(mpz_class(std::to_string(c)), mpz_class(std::to_string(tally.draws)));
    f.canonicalize();
    out << p << " : " << to_string(f) << "\n";
  }
  return out.str();
}

}  // namespace llmk
