#include "llmk/laws.hpp"

#include <sstream>
#include <stdexcept>

#include "llmk/denote.hpp"
#include "llmk/generate.hpp"
#include "llmk/oracle.hpp"
#include "llmk/pcoh.hpp"
#include "llmk/printer.hpp"
#include "llmk/typecheck.hpp"

namespace llmk {

bool LawReport::all_pass() const {
  for (const auto& l : laws) {
    if (!l.pass()) return false;
  }
  return true;
}

const LawResult* LawReport::find(const std::string& name) const {
  for (const auto& l : laws) {
    if (l.name == name) return &l;
  }
  return nullptr;
}

const std::vector<LawInfo>& law_catalog() {
  static const std::vector<LawInfo> catalog = {
      {"generator-soundness", "typing-rules", "generated terms re-typecheck at their type"},
      {"substitution", "substitution-theorem", "t[u/x] is typed in the merged context"},
      {"sample-identity", "sample-identity-theorem", "[[sample t as x in x]] = [[t]]"},
      {"sample-identity-rel", "observe-identity", "sample identity in the relational model"},
      {"sample-fusion", "sample-fusion-theorem",
       "(\\y. sample y as z in N)(sample t as x in M) = sample t as x in let z = M in N"},
      {"sample-fusion-rel", "observe-fusion", "sample fusion in the relational model"},
      {"modularity", "modularity-theorem", "kernel-equal bodies give equal samples"},
      {"compositionality", "compositionality-theorem",
       "[[t[t_i/x_i]]] = (t_1 (*) ... (*) t_n) ; [[t]]"},
      {"substitution-rule", "substitution-rule-soundness",
       "u1 = u2 implies t[u1/x] = t[u2/x]"},
      {"full-abstraction", "full-abstraction-theorem",
       "equal samples over a variable imply equal kernels"},
      {"adequacy", "oracle-adequacy", "trace enumeration equals the denotation"},
      {"mk-stochastic", "mk-kernels-stochastic", "MK denotations are row-stochastic"},
      {"comonoid", "markov-comonoid", "copy/discard comonoid laws and copy on products"},
      {"lax-monoidal", "lax-monoidal-coherence", "associativity and unit diagrams for (eps, mu)"},
      {"bipolar", "pcs-bipolar-closure", "measure and tensor webs are bipolar closed"},
      {"tensor-web", "tensor-web-iso", "M X (*) M Y and M (X * Y) have the same points"},
      {"pcoh-morphism", "kernels-are-pcoh-morphisms",
       "kernels and closed terms land in their webs"},
      {"polar-antitone", "polar-antitone", "S in T implies polar(T) in polar(S)"},
      {"duality-pairing", "polar-pairing-bound", "<g, h> <= 1 across a web and its polar"},
      {"kernel-fullness", "measure-functor-full", "kernel denotations reify to the kernel"},
      {"semiring", "semiring-axioms", "commutative semiring laws for prob and bool"},
  };
  return catalog;
}

namespace {

constexpr std::size_t kMaxCounterexamples = 3;

std::uint64_t mix_seed(std::uint64_t seed, std::size_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string show(const Matrix& m) {
  std::string s = format_distribution(m);
  if (s.empty()) s = "(zero)\n";
  return s;
}

std::string indent(const std::string& text, const std::string& pad) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) out += pad + line + "\n";
  return out;
}

class Law {
 public:
  Law(const LawInfo& info, const GenConfig& config, std::size_t salt)
      : config_(config),
        gen_(law_pool(), mix_seed(config.seed, salt), config.max_size),
        prob_(Interpretation::from_program(law_pool(), Semiring::Prob)),
        rel_(Interpretation::from_program(law_pool(), Semiring::Bool)),
        sig_(law_pool().signature()) {
    result_.name = info.name;
    result_.anchor = info.anchor;
  }

  LawResult run() {
    if (config_.instances == 0) return result_;
    const std::string& n = result_.name;
    if (n == "generator-soundness") return repeat([&] { generator_soundness(); });
    if (n == "substitution") return repeat([&] { substitution(); });
    if (n == "sample-identity") return repeat([&] { sample_identity(prob_); });
    if (n == "sample-identity-rel") return repeat([&] { sample_identity(rel_); });
    if (n == "sample-fusion") return repeat([&] { sample_fusion(prob_); });
    if (n == "sample-fusion-rel") return repeat([&] { sample_fusion(rel_); });
    if (n == "modularity") return repeat([&] { modularity(); });
    if (n == "compositionality") return repeat([&] { compositionality(); });
    if (n == "substitution-rule") return repeat([&] { substitution_rule(); });
    if (n == "full-abstraction") return repeat([&] { full_abstraction(); });
    if (n == "adequacy") return repeat([&] { adequacy(); });
    if (n == "mk-stochastic") return repeat([&] { mk_stochastic(); });
    if (n == "pcoh-morphism") return repeat([&] { pcoh_morphism(); });
    if (n == "polar-antitone") return repeat([&] { polar_antitone(); });
    if (n == "comonoid") return comonoid(), result_;
    if (n == "lax-monoidal") return lax_monoidal(), result_;
    if (n == "bipolar") return bipolar(), result_;
    if (n == "tensor-web") return tensor_web(), result_;
    if (n == "duality-pairing") return duality_pairing(), result_;
    if (n == "kernel-fullness") return kernel_fullness(), result_;
    if (n == "semiring") return semiring(), result_;
    throw std::invalid_argument("unknown law " + n);
  }

 private:
  template <typename F>
  LawResult repeat(F&& body) {
    for (std::size_t i = 0; i < config_.instances; ++i) body();
    return result_;
  }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++result_.instances;
    if (ok) return;
    ++result_.failures;
    if (result_.counterexamples.size() < kMaxCounterexamples) {
      result_.counterexamples.push_back(describe());
    }
  }

  LlContext meas_context(std::size_t max_entries, const std::string& prefix) {
    LlContext ctx;
    std::size_t n = gen_.below(max_entries + 1);
    for (std::size_t i = 0; i < n; ++i) {
      ctx.push(gen_.fresh(prefix), LlType::meas(gen_.random_mk_type()));
    }
    return ctx;
  }

  LlContext pool_context(std::size_t max_entries, const std::string& prefix) {
    LlContext ctx;
    std::size_t n = gen_.below(max_entries + 1);
    for (std::size_t i = 0; i < n; ++i) ctx.push(gen_.fresh(prefix), gen_.random_pool_type(2));
    return ctx;
  }

  LlTermPtr closed_measure(const MkTypePtr& tau) {
    return gen_.gen_ll_within({}, LlType::meas(tau), config_.max_size);
  }

  // Shrinks a closed measure term against a failing predicate.
  LlTermPtr shrink_closed(const LlTermPtr& t, const std::function<bool(const LlTermPtr&)>& fails) {
    auto type = typecheck_ll(sig_, {}, t);
    return shrink_ll(t, [&](const LlTermPtr& c) {
      try {
        if (!equal(typecheck_ll(sig_, {}, c), type)) return false;
        return fails(c);
      } catch (const std::exception&) {
        return false;
      }
    });
  }

  // --- typing -------------------------------------------------------------

  void generator_soundness() {
    if (gen_.chance(1, 2)) {
      MkContext ctx;
      std::size_t n = gen_.below(3);
      for (std::size_t i = 0; i < n; ++i) ctx.push(gen_.fresh("g"), gen_.random_mk_type());
      auto tau = gen_.random_mk_type();
      auto m = gen_.gen_mk(ctx, tau);
      bool ok = false;
      try {
        ok = equal(typecheck_mk(sig_, ctx, m), tau);
      } catch (const TypeError&) {
      }
      check(ok, [&] { return "MK term " + pretty_print(m) + " is not of type " + pretty_print(tau); });
      return;
    }
    auto ctx = pool_context(2, "g");
    auto type = gen_.random_pool_type(2);
    auto t = gen_.gen_ll(ctx, type);
    std::string why;
    try {
      if (!equal(typecheck_ll(sig_, ctx, t), type)) why = "wrong type";
    } catch (const TypeError& e) {
      why = e.what();
    }
    check(why.empty(), [&] {
      return "LL term " + pretty_print(t) + " : " + pretty_print(type) + " rejected: " + why;
    });
  }

  void substitution() {
    auto gamma = pool_context(2, "g");
    auto delta = meas_context(1, "d");
    auto a = gen_.random_pool_type(2);
    auto b = gen_.random_pool_type(2);
    Var x = gen_.fresh("x");
    LlContext with_x = gamma;
    with_x.push(x, a);
    auto t = gen_.gen_ll(with_x, b);
    auto u = gen_.gen_ll(delta, a);
    auto s = subst_ll(t, {{x, u}});
    LlContext merged = gamma;
    for (const auto& [n, ty] : delta.entries()) merged.push(n, ty);
    std::string why;
    try {
      if (!equal(typecheck_ll(sig_, merged, s), b)) why = "type changed";
    } catch (const TypeError& e) {
      why = e.what();
    }
    VarSet expected = free_vars(t);
    expected.erase(x);
    for (const auto& v : free_vars(u)) expected.insert(v);
    if (why.empty() && free_vars(s) != expected) why = "free variables not preserved";
    check(why.empty(), [&] {
      return "t = " + pretty_print(t) + "\nu = " + pretty_print(u) + "\nt[u/" + x +
             "] = " + pretty_print(s) + "\n" + why;
    });
  }

  // --- sample laws ----------------------------------------------------------

  void sample_identity(const Interpretation& interp) {
    auto tau = gen_.random_mk_type();
    auto t = closed_measure(tau);
    Var x = gen_.fresh("x");
    auto wrap = [&](const LlTermPtr& inner) {
      return LlTerm::sample({inner}, {x}, MkTerm::var(x));
    };
    auto fails = [&](const LlTermPtr& c) {
      return denote_ll(interp, {}, wrap(c)) != denote_ll(interp, {}, c);
    };
    bool bad = fails(t);
    check(!bad, [&] {
      auto small = shrink_closed(t, fails);
      return "t = " + pretty_print(small) + "\nlhs:\n" +
             indent(show(denote_ll(interp, {}, wrap(small))), "  ") + "rhs:\n" +
             indent(show(denote_ll(interp, {}, small)), "  ");
    });
  }

  void sample_fusion(const Interpretation& interp) {
    auto s1 = gen_.random_mk_type();
    auto s2 = gen_.random_mk_type();
    auto s3 = gen_.random_mk_type();
    Var x = gen_.fresh("x"), y = gen_.fresh("y"), z = gen_.fresh("z");
    auto t = closed_measure(s1);
    auto m = gen_.gen_mk(MkContext{{x, s1}}, s2);
    auto n = gen_.gen_mk(MkContext{{z, s2}}, s3);
    auto lhs_of = [&](const LlTermPtr& tt) {
      return LlTerm::app(
          LlTerm::lam(y, LlType::meas(s2), LlTerm::sample({LlTerm::var(y)}, {z}, n)),
          LlTerm::sample({tt}, {x}, m));
    };
    auto rhs_of = [&](const LlTermPtr& tt) {
      return LlTerm::sample({tt}, {x}, MkTerm::let(z, m, n));
    };
    auto fails = [&](const LlTermPtr& c) {
      return denote_ll(interp, {}, lhs_of(c)) != denote_ll(interp, {}, rhs_of(c));
    };
    check(!fails(t), [&] {
      auto small = shrink_closed(t, fails);
      return "lhs = " + pretty_print(lhs_of(small)) + "\nrhs = " + pretty_print(rhs_of(small));
    });
  }

  // A syntactically different MK term with the same kernel.
  MkTermPtr kernel_equal_variant(const MkTermPtr& m, const Var& x) {
    switch (gen_.below(4)) {
      case 0: {
        Var w = gen_.fresh("w");
        return MkTerm::let(w, m, MkTerm::var(w));
      }
      case 1: return MkTerm::fst(MkTerm::pair(m, MkTerm::unit()));
      case 2: return MkTerm::snd(MkTerm::pair(MkTerm::unit(), m));
      default: {
        Var w = gen_.fresh("w");
        return MkTerm::let(w, MkTerm::var(x), subst_mk(m, {{x, MkTerm::var(w)}}));
      }
    }
  }

  void modularity() {
    auto sigma = gen_.random_mk_type();
    auto tau = gen_.random_mk_type();
    Var x = gen_.fresh("x");
    MkContext ctx{{x, sigma}};
    auto m = gen_.gen_mk(ctx, tau);
    auto n = kernel_equal_variant(m, x);
    bool premise = denote_mk(prob_, ctx, m) == denote_mk(prob_, ctx, n);
    auto t = closed_measure(sigma);
    auto lhs = LlTerm::sample({t}, {x}, m);
    auto rhs = LlTerm::sample({t}, {x}, n);
    bool ok = premise && denote_ll(prob_, {}, lhs) == denote_ll(prob_, {}, rhs);
    check(ok, [&] {
      return std::string(premise ? "" : "kernels differ\n") + "M = " + pretty_print(m) +
             "\nN = " + pretty_print(n) + "\nt = " + pretty_print(t);
    });
  }

  void compositionality() {
    std::size_t n = 1 + gen_.below(3);
    LlContext xs, delta;
    std::vector<LlContext> deltas;
    std::vector<LlTermPtr> parts;
    LlSubst subst;
    for (std::size_t i = 0; i < n; ++i) {
      auto a = gen_.chance(2, 3) ? LlType::meas(gen_.random_mk_type()) : gen_.random_pool_type(2);
      Var x = gen_.fresh("x");
      xs.push(x, a);
      auto di = meas_context(1, "d");
      auto ti = gen_.gen_ll(di, a);
      for (const auto& [name, ty] : di.entries()) delta.push(name, ty);
      deltas.push_back(di);
      parts.push_back(ti);
      subst.emplace(x, ti);
    }
    auto target = gen_.random_pool_type(2);
    auto t = gen_.gen_ll(xs, target);
    auto substituted = subst_ll(t, subst);
    Matrix lhs = denote_ll(prob_, delta, substituted);
    Matrix args = denote_ll(prob_, deltas[0], parts[0]);
    for (std::size_t i = 1; i < n; ++i) {
      args = tensor(args, denote_ll(prob_, deltas[i], parts[i]));
    }
    Matrix rhs = compose(args, denote_ll(prob_, xs, t));
    check(same_entries(lhs, rhs), [&] {
      std::string s = "t = " + pretty_print(t) + "\n";
      for (std::size_t i = 0; i < n; ++i) {
        s += xs.entries()[i].first + " := " + pretty_print(parts[i]) + "\n";
      }
      return s;
    });
  }

  // An LL term denoting the same matrix as u in the same context.
  LlTermPtr equivalent_variant(const LlTermPtr& u, const LlTypePtr& a) {
    switch (gen_.below(2) == 0 ? 0 : static_cast<int>(a->kind) + 1) {
      case 0: {
        Var z = gen_.fresh("z");
        return LlTerm::app(LlTerm::lam(z, a, LlTerm::var(z)), u);
      }
      case static_cast<int>(LlType::Kind::Meas) + 1: {
        Var y = gen_.fresh("y");
        return LlTerm::sample({u}, {y}, MkTerm::var(y));
      }
      case static_cast<int>(LlType::Kind::Tensor) + 1: {
        Var p = gen_.fresh("p"), q = gen_.fresh("q");
        return LlTerm::let_tensor(p, q, u, LlTerm::tensor(LlTerm::var(p), LlTerm::var(q)));
      }
      case static_cast<int>(LlType::Kind::Lolli) + 1: {
        Var w = gen_.fresh("w");
        return LlTerm::lam(w, a->left, LlTerm::app(u, LlTerm::var(w)));
      }
      default: return u;
    }
  }

  void substitution_rule() {
    auto a = gen_.random_pool_type(2);
    auto delta = meas_context(1, "d");
    auto u1 = gen_.gen_ll(delta, a);
    auto u2 = equivalent_variant(u1, a);
    bool premise = denote_ll(prob_, delta, u1) == denote_ll(prob_, delta, u2);
    auto gamma = meas_context(1, "g");
    Var x = gen_.fresh("x");
    LlContext with_x = gamma;
    with_x.push(x, a);
    auto t = gen_.gen_ll(with_x, gen_.random_pool_type(2));
    LlContext merged = gamma;
    for (const auto& [n, ty] : delta.entries()) merged.push(n, ty);
    bool ok = premise && denote_ll(prob_, merged, subst_ll(t, {{x, u1}})) ==
                             denote_ll(prob_, merged, subst_ll(t, {{x, u2}}));
    check(ok, [&] {
      return std::string(premise ? "" : "u1 and u2 differ\n") + "t = " + pretty_print(t) +
             "\nu1 = " + pretty_print(u1) + "\nu2 = " + pretty_print(u2);
    });
  }

  void full_abstraction() {
    auto sigma = gen_.random_mk_type();
    auto tau = gen_.random_mk_type();
    Var x = gen_.fresh("x");
    MkContext mctx{{x, sigma}};
    const std::size_t saved = gen_.max_size();
    gen_.set_max_size(4);
    auto m = gen_.gen_mk(mctx, tau);
    auto n = gen_.chance(1, 2) ? kernel_equal_variant(m, x) : gen_.gen_mk(mctx, tau);
    gen_.set_max_size(saved);
    LlContext lctx{{x, LlType::meas(sigma)}};
    bool samples_equal =
        denote_ll(prob_, lctx, LlTerm::sample({LlTerm::var(x)}, {x}, m)) ==
        denote_ll(prob_, lctx, LlTerm::sample({LlTerm::var(x)}, {x}, n));
    bool kernels_equal = denote_mk(prob_, mctx, m) == denote_mk(prob_, mctx, n);
    check(!samples_equal || kernels_equal,
          [&] { return "M = " + pretty_print(m) + "\nN = " + pretty_print(n); });
  }

  // --- operational agreement ------------------------------------------------

  void adequacy() {
    auto tau = gen_.random_mk_type();
    auto t = closed_measure(tau);
    auto fails = [&](const LlTermPtr& c) {
      Matrix d = denote_ll(prob_, {}, c);
      TraceDist trace = enumerate_term(law_pool(), c);
      Rational seen = 0;
      for (std::size_t j = 0; j < d.cols().size(); ++j) {
        if (d.at(0, j) != trace.weight(d.cols().label(j))) return true;
        seen += d.at(0, j);
      }
      Rational total = 0;
      for (const auto& [_, w] : trace.outcomes) total += w;
      return total != seen;
    };
    check(!fails(t), [&] {
      auto small = shrink_closed(t, fails);
      return "t = " + pretty_print(small) + "\ndenotation:\n" +
             indent(show(denote_ll(prob_, {}, small)), "  ") + "traces:\n" +
             indent(format_trace(enumerate_term(law_pool(), small)), "  ");
    });
  }

  void mk_stochastic() {
    MkContext ctx;
    std::size_t n = gen_.below(3);
    for (std::size_t i = 0; i < n; ++i) ctx.push(gen_.fresh("g"), gen_.random_mk_type());
    auto m = gen_.gen_mk(ctx, gen_.random_mk_type());
    check(denote_mk(prob_, ctx, m).is_row_stochastic(),
          [&] { return "M = " + pretty_print(m); });
  }

  // --- Markov category and lax monoidal structure ---------------------------

  static FinSet finset(std::size_t n, const std::string& prefix) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
    return FinSet(labels);
  }

  Matrix product_copy(const FinSet& x, const FinSet& y) {
    Matrix both = tensor(copy(x), copy(y));
    Matrix middle = config_.mutate_drop_braid
                        ? identity(both.cols())
                        : tensor(tensor(identity(x), braid(x, y)), identity(y));
    FinSet xy = FinSet::product(x, y);
    return compose(both, middle).relabeled(xy, FinSet::product(xy, xy));
  }

  void comonoid() {
    for (std::size_t n = 0; n <= 4; ++n) {
      FinSet x = finset(n, "p");
      Matrix c = copy(x);
      Matrix lhs = compose(compose(c, tensor(c, identity(x))), associator(x, x, x));
      Matrix rhs = compose(c, tensor(identity(x), c));
      check(lhs == rhs, [&] { return "coassociativity fails at |X| = " + std::to_string(n); });
      check(compose(c, braid(x, x)) == c,
            [&] { return "cocommutativity fails at |X| = " + std::to_string(n); });
      check(compose(compose(c, tensor(discard(x), identity(x))), left_unitor(x)) == identity(x),
            [&] { return "left counit fails at |X| = " + std::to_string(n); });
      check(compose(compose(c, tensor(identity(x), discard(x))), right_unitor(x)) == identity(x),
            [&] { return "right counit fails at |X| = " + std::to_string(n); });
    }
    for (std::size_t n = 0; n <= 4; ++n) {
      for (std::size_t k = 0; k <= 4; ++k) {
        FinSet x = finset(n, "p"), y = finset(k, "q");
        Matrix direct = copy(FinSet::product(x, y));
        Matrix built = product_copy(x, y);
        check(direct == built, [&] {
          return "copy on X (*) Y differs from (copy (*) copy) ; (id (*) braid (*) id) at |X| = " +
                 std::to_string(n) + ", |Y| = " + std::to_string(k) + "\ndirect:\n" +
                 indent(show(direct), "  ") + "built:\n" + indent(show(built), "  ");
        });
      }
    }
  }

  void lax_monoidal() {
    auto one = MkType::unit();
    auto b = MkType::base("Bool");
    std::vector<MkTypePtr> types{one, b};
    for (const auto& l : std::vector<MkTypePtr>{one, b}) {
      for (const auto& r : std::vector<MkTypePtr>{one, b}) types.push_back(MkType::prod(l, r));
    }
    const BaseTable& bases = prob_.bases;
    auto pts = [&](const MkTypePtr& t) { return points(t, bases); };
    auto mu = [&](const MkTypePtr& x, const MkTypePtr& y) {
      return index_bijection(FinSet::product(pts(x), pts(y)), pts(MkType::prod(x, y)));
    };
    Matrix eps = index_bijection(FinSet::singleton(), pts(one));
    for (const auto& a : types) {
      for (const auto& bb : types) {
        for (const auto& c : types) {
          FinSet pa = pts(a), pb = pts(bb), pc = pts(c);
          Matrix lhs = compose(compose(tensor(mu(a, bb), identity(pc)), mu(MkType::prod(a, bb), c)),
                               associator(pa, pb, pc));
          Matrix rhs = compose(compose(associator(pa, pb, pc), tensor(identity(pa), mu(bb, c))),
                               mu(a, MkType::prod(bb, c)));
          check(lhs == rhs, [&] {
            return "associativity diagram fails at (" + pretty_print(a) + ", " + pretty_print(bb) +
                   ", " + pretty_print(c) + ")";
          });
        }
      }
      FinSet pa = pts(a);
      Matrix left = compose(compose(tensor(eps, identity(pa)), mu(one, a)), left_unitor(pa));
      check(left == left_unitor(pa),
            [&] { return "left unit diagram fails at " + pretty_print(a); });
      Matrix right = compose(compose(tensor(identity(pa), eps), mu(a, one)), right_unitor(pa));
      check(right == right_unitor(pa),
            [&] { return "right unit diagram fails at " + pretty_print(a); });
    }
  }

  // --- coherence spaces -------------------------------------------------------

  std::vector<MkTypePtr> small_types(std::size_t max_points) {
    auto one = MkType::unit();
    std::vector<MkTypePtr> leaves{one, MkType::base("Bool"), MkType::base("Three")};
    std::vector<MkTypePtr> out = leaves;
    for (const auto& l : leaves) {
      for (const auto& r : leaves) out.push_back(MkType::prod(l, r));
    }
    std::vector<MkTypePtr> kept;
    for (const auto& t : out) {
      if (points(t, prob_.bases).size() <= max_points) kept.push_back(t);
    }
    return kept;
  }

  void bipolar() {
    auto types = small_types(4);
    for (const auto& t : types) {
      Web w = web_meas(t, prob_.bases);
      auto pp = polar(w.index.size(), polar(w.index.size(), w.gens).points);
      bool exact = pp.rays.empty() && pp.points == canonical_points(w.gens);
      check(exact && check_bipolar_closed(w),
            [&] { return "web of M " + pretty_print(t) + " is not bipolar closed"; });
    }
    for (const auto& a : types) {
      for (const auto& b : types) {
        if (points(a, prob_.bases).size() * points(b, prob_.bases).size() > 4) continue;
        Web w = web_tensor(web_meas(a, prob_.bases), web_meas(b, prob_.bases));
        check(check_bipolar_closed(w), [&] {
          return "tensor web M " + pretty_print(a) + " (*) M " + pretty_print(b) +
                 " is not bipolar closed";
        });
      }
    }
  }

  static std::vector<Rational> grid() {
    return {Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2),
            Rational(2, 3), Rational(3, 4), Rational(1)};
  }

  void tensor_web() {
    auto types = small_types(4);
    const auto values = grid();
    for (const auto& a : types) {
      for (const auto& b : types) {
        if (points(a, prob_.bases).size() * points(b, prob_.bases).size() > 4) continue;
        Web t = web_tensor(web_meas(a, prob_.bases), web_meas(b, prob_.bases));
        Web m = web_meas(MkType::prod(a, b), prob_.bases);
        const std::size_t dim = t.index.size();
        std::vector<std::size_t> digits(dim, 0);
        for (;;) {
          Vec v;
          for (auto d : digits) v.push_back(values[d]);
          bool in_t = member(t, v);
          bool agree = in_t == member(m, v) && in_t == member_via_gens(t, v) &&
                       member(m, v) == member_via_gens(m, v);
          check(agree, [&] {
            std::string s = "membership differs for M " + pretty_print(a) + " (*) M " +
                            pretty_print(b) + " at (";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
            return s + ")";
          });
          std::size_t k = 0;
          while (k < dim && ++digits[k] == values.size()) digits[k++] = 0;
          if (k == dim) break;
        }
      }
    }
  }

  void pcoh_morphism() {
    auto sigma = gen_.random_mk_type();
    auto tau = gen_.random_mk_type();
    Var x = gen_.fresh("x");
    MkContext ctx{{x, sigma}};
    auto m = gen_.gen_mk(ctx, tau);
    Matrix f = denote_mk(prob_, ctx, m);
    check(check_pcoh_morphism(f, web_meas(sigma, prob_.bases), web_meas(tau, prob_.bases)),
          [&] { return "kernel of " + pretty_print(m) + " is not a PCoh morphism"; });

    auto type = gen_.random_pool_type(2);
    Web w;
    try {
      w = web_of_type(type, prob_.bases);
    } catch (const ResourceError&) {
      return;
    }
    auto t = gen_.gen_ll({}, type);
    Matrix d = denote_ll(prob_, {}, t);
    Vec row;
    for (std::size_t j = 0; j < d.cols().size(); ++j) row.push_back(d.at(0, j));
    check(member(w, row), [&] {
      return "denotation of " + pretty_print(t) + " is outside the web of " + pretty_print(type);
    });
  }

  Vec random_vector(std::size_t dim) {
    static const std::vector<Rational> values{Rational(0),    Rational(1, 4), Rational(1, 2),
                                              Rational(2, 3), Rational(1),    Rational(3, 2),
                                              Rational(2)};
    Vec v;
    for (std::size_t i = 0; i < dim; ++i) v.push_back(values[gen_.below(values.size())]);
    return v;
  }

  void polar_antitone() {
    std::size_t dim = 1 + gen_.below(3);
    std::vector<Vec> s, t;
    std::size_t ns = 1 + gen_.below(3);
    for (std::size_t i = 0; i < ns; ++i) s.push_back(random_vector(dim));
    t = s;
    std::size_t extra = 1 + gen_.below(2);
    for (std::size_t i = 0; i < extra; ++i) t.push_back(random_vector(dim));
    auto pt = polar(dim, t);
    bool ok = true;
    for (const auto& w : pt.points) {
      for (const auto& g : s) ok = ok && dot(g, w) <= 1;
    }
    for (const auto& r : pt.rays) {
      for (const auto& g : s) ok = ok && sgn(dot(g, r)) <= 0;
    }
    check(ok, [&] { return "polar(T) escapes polar(S) in dimension " + std::to_string(dim); });
  }

  void duality_pairing() {
    std::vector<std::pair<std::string, Web>> webs;
    auto types = small_types(4);
    for (const auto& t : types) {
      webs.emplace_back("M " + pretty_print(t), web_meas(t, prob_.bases));
    }
    for (const auto& a : types) {
      for (const auto& b : types) {
        std::size_t na = points(a, prob_.bases).size(), nb = points(b, prob_.bases).size();
        std::string name = "M " + pretty_print(a) + " ? M " + pretty_print(b);
        if (na * nb <= 4) {
          webs.emplace_back(name, web_tensor(web_meas(a, prob_.bases), web_meas(b, prob_.bases)));
        }
        if (na * nb <= kDefaultMaxVertexDim) {
          webs.emplace_back(name, web_lolli(web_meas(a, prob_.bases), web_meas(b, prob_.bases)));
        }
      }
    }
    for (const auto& [name, w] : webs) {
      bool ok = !w.gens.empty() && !w.polar_gens.empty();
      for (const auto& g : w.gens) {
        for (const auto& h : w.polar_gens) ok = ok && dot(g, h) <= 1;
      }
      check(ok, [&, n = name] { return "pairing exceeds 1 on " + n; });
    }
  }

  void kernel_fullness() {
    for (const auto& p : law_pool().prims) {
      Var m = gen_.fresh("m"), x = gen_.fresh("x");
      auto term = LlTerm::lam(m, LlType::meas(p.dom),
                              LlTerm::sample({LlTerm::var(m)}, {x},
                                             MkTerm::prim(p.name, MkTerm::var(x))));
      Matrix row = denote_ll(prob_, {}, term);
      FinSet dom = points(p.dom, prob_.bases), cod = points(p.cod, prob_.bases);
      Matrix reshaped(dom, cod);
      for (std::size_t a = 0; a < dom.size(); ++a) {
        for (std::size_t b = 0; b < cod.size(); ++b) {
          reshaped.set(a, b, row.at(0, a * cod.size() + b));
        }
      }
      bool ok = false;
      try {
        ok = reify_kernel(reshaped, p.dom, p.cod, prob_.bases) ==
             kernel_matrix(p, prob_.bases);
      } catch (const NotAKernel&) {
      }
      // A halved kernel is substochastic and must be refused.
      Matrix halved(dom, cod);
      for (std::size_t a = 0; a < dom.size(); ++a) {
        for (std::size_t b = 0; b < cod.size(); ++b) {
          halved.set(a, b, reshaped.at(a, b) / 2);
        }
      }
      bool refused = false;
      try {
        reify_kernel(halved, p.dom, p.cod, prob_.bases);
      } catch (const NotAKernel&) {
        refused = true;
      }
      check(ok && refused, [&] { return "kernel " + p.name + " does not reify to itself"; });
    }
  }

  void semiring() {
    const std::vector<std::pair<Semiring, std::vector<Rational>>> carriers{
        {Semiring::Prob, {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1), Rational(2)}},
        {Semiring::Bool, {Rational(0), Rational(1)}},
    };
    for (const auto& [s, values] : carriers) {
      auto add = [s = s](const Rational& a, const Rational& b) { return semiring_add(s, a, b); };
      auto mul = [s = s](const Rational& a, const Rational& b) { return semiring_mul(s, a, b); };
      for (const auto& a : values) {
        for (const auto& b : values) {
          for (const auto& c : values) {
            bool ok = add(add(a, b), c) == add(a, add(b, c)) && add(a, b) == add(b, a) &&
                      mul(mul(a, b), c) == mul(a, mul(b, c)) && mul(a, b) == mul(b, a) &&
                      mul(a, add(b, c)) == add(mul(a, b), mul(a, c)) &&
                      add(a, semiring_zero()) == a && mul(a, semiring_one()) == a &&
                      mul(a, semiring_zero()) == semiring_zero();
            check(ok, [&] {
              return std::string(to_string(s)) + " semiring law fails at (" + to_string(a) +
                     ", " + to_string(b) + ", " + to_string(c) + ")";
            });
          }
        }
      }
    }
  }

  const GenConfig& config_;
  Generator gen_;
  Interpretation prob_;
  Interpretation rel_;
  Signature sig_;
  LawResult result_;
};

// --- shrinking ----------------------------------------------------------------

std::vector<LlTermPtr> ll_children(const LlTermPtr& t) {
  switch (t->kind) {
    case LlTerm::Kind::Lam: return {t->first};
    case LlTerm::Kind::App:
    case LlTerm::Kind::Tensor:
    case LlTerm::Kind::LetTensor: return {t->first, t->second};
    case LlTerm::Kind::Sample: return t->args;
    default: return {};
  }
}

LlTermPtr with_child(const LlTermPtr& t, std::size_t i, const LlTermPtr& c) {
  switch (t->kind) {
    case LlTerm::Kind::Lam: return LlTerm::lam(t->name, t->annot, c, t->span);
    case LlTerm::Kind::App:
      return i == 0 ? LlTerm::app(c, t->second, t->span) : LlTerm::app(t->first, c, t->span);
    case LlTerm::Kind::Tensor:
      return i == 0 ? LlTerm::tensor(c, t->second, t->span) : LlTerm::tensor(t->first, c, t->span);
    case LlTerm::Kind::LetTensor:
      return i == 0 ? LlTerm::let_tensor(t->name, t->name2, c, t->second, t->span)
                    : LlTerm::let_tensor(t->name, t->name2, t->first, c, t->span);
    case LlTerm::Kind::Sample: {
      auto args = t->args;
      args[i] = c;
      return LlTerm::sample(args, t->binders, t->body, t->span);
    }
    default: return t;
  }
}

void mk_subterms(const MkTermPtr& m, std::vector<MkTermPtr>& out) {
  out.push_back(m);
  if (m->first) mk_subterms(m->first, out);
  if (m->second) mk_subterms(m->second, out);
}

void ll_subterms(const LlTermPtr& t, std::vector<LlTermPtr>& out) {
  out.push_back(t);
  for (const auto& c : ll_children(t)) ll_subterms(c, out);
}

// All one-step shrink candidates of t.
std::vector<LlTermPtr> candidates(const LlTermPtr& t) {
  std::vector<LlTermPtr> out;
  std::vector<LlTermPtr> subs;
  ll_subterms(t, subs);
  for (std::size_t i = 1; i < subs.size(); ++i) out.push_back(subs[i]);
  if (t->kind == LlTerm::Kind::Sample) {
    std::vector<MkTermPtr> bodies;
    mk_subterms(t->body, bodies);
    for (std::size_t i = 1; i < bodies.size(); ++i) {
      out.push_back(LlTerm::sample(t->args, t->binders, bodies[i], t->span));
    }
    out.push_back(LlTerm::sample(t->args, t->binders, MkTerm::unit(), t->span));
  }
  auto kids = ll_children(t);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    for (const auto& c : candidates(kids[i])) out.push_back(with_child(t, i, c));
  }
  return out;
}

}  // namespace

LlTermPtr shrink_ll(const LlTermPtr& term, const std::function<bool(const LlTermPtr&)>& still_fails,
                    int max_rounds) {
  LlTermPtr best = term;
  for (int round = 0; round < max_rounds; ++round) {
    bool improved = false;
    for (const auto& c : candidates(best)) {
      if (term_size(c) >= term_size(best)) continue;
      if (still_fails(c)) {
        best = c;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return best;
}

LawResult run_law(const std::string& name, const GenConfig& config) {
  const auto& catalog = law_catalog();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (catalog[i].name == name) return Law(catalog[i], config, i).run();
  }
  throw std::invalid_argument("unknown law " + name);
}

LawReport run_laws(const GenConfig& config, const std::vector<std::string>& only) {
  LawReport report;
  if (only.empty()) {
    for (const auto& info : law_catalog()) report.laws.push_back(run_law(info.name, config));
  } else {
    for (const auto& name : only) report.laws.push_back(run_law(name, config));
  }
  return report;
}

std::string format_report(const LawReport& report) {
  std::ostringstream out;
  for (const auto& l : report.laws) {
    out << "LAW " << l.name << " " << l.anchor << " " << (l.pass() ? "pass" : "fail") << " "
        << l.instances << "\n";
    if (l.vacuous()) out << "  note: pass by vacuity, no instances were run\n";
    if (!l.pass()) {
      out << "  failures: " << l.failures << "\n";
      for (const auto& c : l.counterexamples) {
        out << "  counterexample:\n" << indent(c, "    ");
      }
    }
  }
  return out.str();
}

std::string format_report_kv(const LawReport& report) {
  std::ostringstream out;
  out << "laws=" << report.laws.size() << "\n";
  for (const auto& l : report.laws) {
    const std::string k = "law." + l.name + ".";
    out << k << "anchor=" << l.anchor << "\n";
    out << k << "status=" << (l.pass() ? "pass" : "fail") << "\n";
    out << k << "instances=" << l.instances << "\n";
    out << k << "failures=" << l.failures << "\n";
    out << k << "vacuous=" << (l.vacuous() ? "true" : "false") << "\n";
  }
  out << "all_pass=" << (report.all_pass() ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace llmk
