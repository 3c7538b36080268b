#include "llmk/printer.hpp"

#include <sstream>

#include "llmk/finset.hpp"

namespace llmk {

namespace {

// Precedence levels. A subterm printed at a level below the required one is
// wrapped in parentheses.
enum Level { kTop = 0, kTensor = 1, kApp = 2, kAtom = 3 };

std::string paren_if(bool wrap, std::string s) { return wrap ? "(" + s + ")" : s; }

std::string print_mk_type(const MkTypePtr& t) {
  switch (t->kind) {
    case MkType::Kind::Unit: return "1";
    case MkType::Kind::Base: return t->name;
    case MkType::Kind::Prod:
      return paren_if(t->left->kind == MkType::Kind::Prod, print_mk_type(t->left)) + " * " +
             print_mk_type(t->right);
  }
  return "?";
}

std::string print_ll_type(const LlTypePtr& t) {
  switch (t->kind) {
    case LlType::Kind::Unit: return "1";
    case LlType::Kind::Meas: return "M " + print_mk_type(t->inner);
    case LlType::Kind::Lolli:
      return paren_if(t->left->kind == LlType::Kind::Lolli, print_ll_type(t->left)) + " -o " +
             print_ll_type(t->right);
    case LlType::Kind::Tensor: {
      bool wrap_left =
          t->left->kind == LlType::Kind::Lolli || t->left->kind == LlType::Kind::Tensor;
      bool wrap_right = t->right->kind == LlType::Kind::Lolli;
      return paren_if(wrap_left, print_ll_type(t->left)) + " (*) " +
             paren_if(wrap_right, print_ll_type(t->right));
    }
  }
  return "?";
}

int mk_level(const MkTermPtr& t) {
  switch (t->kind) {
    case MkTerm::Kind::Let: return kTop;
    case MkTerm::Kind::Fst:
    case MkTerm::Kind::Snd: return kApp;
    default: return kAtom;
  }
}

std::string print_mk(const MkTermPtr& t, int need) {
  std::string s;
  switch (t->kind) {
    case MkTerm::Kind::Var: s = t->name; break;
    case MkTerm::Kind::Unit: s = "()"; break;
    case MkTerm::Kind::Let:
      s = "let " + t->name + " = " + print_mk(t->first, kTop) + " in " +
          print_mk(t->second, kTop);
      break;
    case MkTerm::Kind::Pair:
      s = "(" + print_mk(t->first, kTop) + ", " + print_mk(t->second, kTop) + ")";
      break;
    case MkTerm::Kind::Fst: s = "fst " + print_mk(t->first, kApp); break;
    case MkTerm::Kind::Snd: s = "snd " + print_mk(t->first, kApp); break;
    case MkTerm::Kind::Prim: s = t->name + "(" + print_mk(t->first, kTop) + ")"; break;
  }
  return paren_if(mk_level(t) < need, s);
}

bool is_prim_lift(const LlTermPtr& t) {
  return t->kind == LlTerm::Kind::Sample && t->args.empty() &&
         t->body->kind == MkTerm::Kind::Prim;
}

int ll_level(const LlTermPtr& t) {
  switch (t->kind) {
    case LlTerm::Kind::Lam:
    case LlTerm::Kind::LetTensor: return kTop;
    case LlTerm::Kind::Sample: return is_prim_lift(t) ? kAtom : kTop;
    case LlTerm::Kind::Tensor: return kTensor;
    case LlTerm::Kind::App: return kApp;
    default: return kAtom;
  }
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ", ";
    s += parts[i];
  }
  return s;
}

std::string print_ll(const LlTermPtr& t, int need) {
  std::string s;
  switch (t->kind) {
    case LlTerm::Kind::Var: s = t->name; break;
    case LlTerm::Kind::Unit: s = "()"; break;
    case LlTerm::Kind::Lam:
      s = "\\" + t->name + ":" + print_ll_type(t->annot) + ". " + print_ll(t->first, kTop);
      break;
    case LlTerm::Kind::App:
      s = print_ll(t->first, kApp) + " " + print_ll(t->second, kAtom);
      break;
    case LlTerm::Kind::Tensor:
      s = print_ll(t->first, kApp) + " (*) " + print_ll(t->second, kTensor);
      break;
    case LlTerm::Kind::LetTensor:
      s = "let " + t->name + " (*) " + t->name2 + " = " + print_ll(t->first, kTop) + " in " +
          print_ll(t->second, kTop);
      break;
    case LlTerm::Kind::Sample: {
      if (is_prim_lift(t)) {
        s = print_mk(t->body, kAtom);
        break;
      }
      std::vector<std::string> args;
      for (const auto& a : t->args) args.push_back(print_ll(a, kTensor));
      s = "sample " + join(args);
      s += args.empty() ? "as" : " as";
      s += t->binders.empty() ? " in " : " " + join(t->binders) + " in ";
      s += print_mk(t->body, kTop);
      break;
    }
  }
  return paren_if(ll_level(t) < need, s);
}

}  // namespace

std::string pretty_print(const MkTypePtr& type) { return print_mk_type(type); }
std::string pretty_print(const LlTypePtr& type) { return print_ll_type(type); }
std::string pretty_print(const MkTermPtr& term) { return print_mk(term, kTop); }
std::string pretty_print(const LlTermPtr& term) { return print_ll(term, kTop); }

std::string pretty_print(const Program& program) {
  std::ostringstream out;
  BaseTable bases;
  for (const auto& b : program.bases) {
    bases[b.name] = b.labels;
    out << "base " << b.name << " = {" << join(b.labels) << "};\n";
  }
  for (const auto& p : program.prims) {
    out << "prim " << p.name << " : " << print_mk_type(p.dom) << " -> " << print_mk_type(p.cod)
        << " = {";
    auto dom = points(p.dom, bases);
    auto cod = points(p.cod, bases);
    std::vector<std::string> rows;
    for (const auto& a : dom.labels()) {
      auto it = p.kernel.find(a);
      if (it == p.kernel.end()) continue;
      std::vector<std::string> entries;
      for (const auto& b : cod.labels()) {
        auto e = it->second.find(b);
        if (e == it->second.end() || is_zero(e->second)) continue;
        entries.push_back(b + ": " + to_string(e->second));
      }
      rows.push_back(a + " -> {" + join(entries) + "}");
    }
    out << " " << join(rows) << " };\n";
  }
  for (const auto& d : program.defs) {
    if (d.lang == Lang::LL) {
      out << "def " << d.name << " : " << print_ll_type(d.ll_type) << " = "
          << print_ll(d.ll_term, kTop) << ";\n";
      continue;
    }
    out << "def mk " << d.name;
    if (!d.params.empty()) {
      std::vector<std::string> params;
      for (const auto& [x, t] : d.params.entries()) params.push_back(x + " : " + print_mk_type(t));
      out << "(" << join(params) << ")";
    }
    out << " : " << print_mk_type(d.mk_type) << " = " << print_mk(d.mk_term, kTop) << ";\n";
  }
  return out.str();
}

}  // namespace llmk
