#include "llmk/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "llmk/finset.hpp"

namespace llmk {

ParseError::ParseError(Kind kind, Span span, const std::string& message)
    : std::runtime_error("line " + std::to_string(span.line) + ", column " +
                         std::to_string(span.column) + ": " + message),
      kind(kind),
      span(span),
      message(message) {}

const char* to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::Lexical: return "lexical-error";
    case ParseError::Kind::Syntax: return "syntax-error";
    case ParseError::Kind::Duplicate: return "duplicate-declaration";
    case ParseError::Kind::UnknownIdentifier: return "unknown-identifier";
    case ParseError::Kind::InvalidKernel: return "invalid-kernel";
  }
  return "error";
}

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  TensorOp,  // (*)
  Lolli,     // -o
  Arrow,     // ->
  Colon,
  Semi,
  Comma,
  Equals,
  LBrace,
  RBrace,
  Backslash,
  Dot,
  Star,
  Slash,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"base", "prim", "def", "mk",  "sample", "observe",
                                          "as",   "in",   "let", "fst", "snd",    "M"};
  return k;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto at = [&](std::size_t k) -> char { return i + k < src.size() ? src[i + k] : '\0'; };
  while (i < src.size()) {
    char c = src[i];
    Span span{line, col};
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '-' && at(1) == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    auto uc = static_cast<unsigned char>(c);
    if (std::isalpha(uc) || c == '_') {
      std::size_t j = i;
      while (j < src.size()) {
        auto d = static_cast<unsigned char>(src[j]);
        if (!(std::isalnum(d) || d == '_' || d == '\'')) break;
        ++j;
      }
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    if (std::isdigit(uc)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    auto single = [&](Tok k, std::size_t n) {
      out.push_back({k, std::string(src.substr(i, n)), span});
      advance(n);
    };
    switch (c) {
      case '(':
        if (at(1) == '*' && at(2) == ')') {
          single(Tok::TensorOp, 3);
        } else {
          single(Tok::LParen, 1);
        }
        continue;
      case ')': single(Tok::RParen, 1); continue;
      case '-':
        if (at(1) == 'o' && !(std::isalnum(static_cast<unsigned char>(at(2))) || at(2) == '_')) {
          single(Tok::Lolli, 2);
          continue;
        }
        if (at(1) == '>') {
          single(Tok::Arrow, 2);
          continue;
        }
        break;
      case ':': single(Tok::Colon, 1); continue;
      case ';': single(Tok::Semi, 1); continue;
      case ',': single(Tok::Comma, 1); continue;
      case '=': single(Tok::Equals, 1); continue;
      case '{': single(Tok::LBrace, 1); continue;
      case '}': single(Tok::RBrace, 1); continue;
      case '\\': single(Tok::Backslash, 1); continue;
      case '.': single(Tok::Dot, 1); continue;
      case '*': single(Tok::Star, 1); continue;
      case '/': single(Tok::Slash, 1); continue;
      default: break;
    }
    std::string shown = std::isprint(uc) ? std::string(1, c) : "\\x" + [&] {
      const char* hex = "0123456789abcdef";
      return std::string{hex[uc >> 4], hex[uc & 15]};
    }();
    throw ParseError(ParseError::Kind::Lexical, span, "unexpected character '" + shown + "'");
  }
  out.push_back({Tok::End, "", Span{line, col}});
  return out;
}

const char* describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::TensorOp: return "'(*)'";
    case Tok::Lolli: return "'-o'";
    case Tok::Arrow: return "'->'";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Backslash: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::End: return "end of input";
  }
  return "token";
}

// Structured point literal in a kernel table.
struct PointLit {
  enum class Kind { Unit, Label, Pair } kind = Kind::Unit;
  std::string label;
  std::shared_ptr<PointLit> left, right;
  Span span;
};

class Parser {
 public:
  static constexpr int kMaxDepth = 512;

  Parser(std::string_view src, Signature sig) : toks_(lex(src)), sig_(std::move(sig)) {}

  Program program() {
    Program prog;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (is_kw(t, "base")) {
        parse_base(prog);
      } else if (is_kw(t, "prim")) {
        parse_prim(prog);
      } else if (is_kw(t, "def")) {
        parse_def(prog);
      } else {
        fail(t, std::string("expected 'base', 'prim' or 'def', found ") + show(t));
      }
    }
    return prog;
  }

  LlTermPtr ll_fragment() {
    auto t = ll_term();
    expect(Tok::End);
    return t;
  }
  MkTermPtr mk_fragment() {
    auto t = mk_term();
    expect(Tok::End);
    return t;
  }
  LlTypePtr ll_type_fragment() {
    auto t = ll_type();
    expect(Tok::End);
    return t;
  }
  MkTypePtr mk_type_fragment() {
    auto t = mk_type();
    expect(Tok::End);
    return t;
  }

 private:
  // -- token helpers -------------------------------------------------------

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  static bool is_kw(const Token& t, const char* kw) { return t.kind == Tok::Ident && t.text == kw; }
  static bool is_name(const Token& t) {
    return t.kind == Tok::Ident && !keywords().count(t.text);
  }
  static std::string show(const Token& t) {
    if (t.kind == Tok::Ident || t.kind == Tok::Number) return "'" + t.text + "'";
    return describe(t.kind);
  }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw ParseError(ParseError::Kind::Syntax, t.span, msg);
  }
  const Token& expect(Tok k) {
    if (peek().kind != k) {
      fail(peek(), std::string("expected ") + describe(k) + ", found " + show(peek()));
    }
    return next();
  }
  void expect_kw(const char* kw) {
    if (!is_kw(peek(), kw)) fail(peek(), std::string("expected '") + kw + "', found " + show(peek()));
    next();
  }
  const Token& expect_name() {
    if (!is_name(peek())) fail(peek(), "expected a name, found " + show(peek()));
    return next();
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth_ > kMaxDepth) fail(p.peek(), "nesting too deep");
    }
    ~DepthGuard() { --p.depth_; }
    Parser& p;
  };

  bool is_prim_call() const {
    return peek().kind == Tok::Ident && sig_.prims.count(peek().text) &&
           peek(1).kind == Tok::LParen;
  }

  // -- types ---------------------------------------------------------------

  MkTypePtr mk_type() {
    DepthGuard g(*this);
    auto left = mk_type_atom();
    if (peek().kind == Tok::Star) {
      next();
      return MkType::prod(left, mk_type());
    }
    return left;
  }

  MkTypePtr mk_type_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Number && t.text == "1") {
      next();
      return MkType::unit();
    }
    if (t.kind == Tok::LParen) {
      next();
      auto inner = mk_type();
      expect(Tok::RParen);
      return inner;
    }
    if (is_name(t)) {
      next();
      if (checking_ && !sig_.bases.count(t.text)) {
        throw ParseError(ParseError::Kind::UnknownIdentifier, t.span,
                         "unknown identifier " + t.text + " (not a declared base type)");
      }
      return MkType::base(t.text);
    }
    fail(t, "expected an MK type, found " + show(t));
  }

  LlTypePtr ll_type() {
    DepthGuard g(*this);
    auto left = ll_tensor_type();
    if (peek().kind == Tok::Lolli) {
      next();
      return LlType::lolli(left, ll_type());
    }
    return left;
  }

  LlTypePtr ll_tensor_type() {
    DepthGuard g(*this);
    auto left = ll_type_atom();
    if (peek().kind == Tok::TensorOp) {
      next();
      return LlType::tensor(left, ll_tensor_type());
    }
    return left;
  }

  LlTypePtr ll_type_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Number && t.text == "1") {
      next();
      return LlType::unit();
    }
    if (is_kw(t, "M")) {
      next();
      return LlType::meas(mk_type());
    }
    if (t.kind == Tok::LParen) {
      next();
      auto inner = ll_type();
      expect(Tok::RParen);
      return inner;
    }
    fail(t, "expected an LL type ('1', 'M', or '('), found " + show(t));
  }

  // -- MK terms ------------------------------------------------------------

  MkTermPtr mk_term() {
    DepthGuard g(*this);
    if (is_kw(peek(), "let")) {
      Span span = next().span;
      auto x = expect_name().text;
      if (peek().kind == Tok::TensorOp) fail(peek(), "'let x (*) y' is LL syntax, not allowed in an MK term");
      expect(Tok::Equals);
      auto bound = mk_term();
      expect_kw("in");
      auto body = mk_term();
      return MkTerm::let(x, bound, body, span);
    }
    return mk_app();
  }

  MkTermPtr mk_app() {
    DepthGuard g(*this);
    if (is_kw(peek(), "fst")) {
      Span span = next().span;
      return MkTerm::fst(mk_app(), span);
    }
    if (is_kw(peek(), "snd")) {
      Span span = next().span;
      return MkTerm::snd(mk_app(), span);
    }
    return mk_atom();
  }

  MkTermPtr mk_atom() {
    const Token& t = peek();
    if (is_prim_call()) {
      next();
      expect(Tok::LParen);
      auto arg = mk_term();
      expect(Tok::RParen);
      return MkTerm::prim(t.text, arg, t.span);
    }
    if (is_name(t)) {
      next();
      if (peek().kind == Tok::LParen && checking_) {
        throw ParseError(ParseError::Kind::UnknownIdentifier, t.span,
                         "unknown identifier " + t.text + " (not a declared primitive)");
      }
      return MkTerm::var(t.text, t.span);
    }
    if (t.kind == Tok::LParen) {
      next();
      if (peek().kind == Tok::RParen) {
        next();
        return MkTerm::unit(t.span);
      }
      auto first = mk_term();
      if (peek().kind == Tok::Comma) {
        next();
        auto second = mk_term();
        expect(Tok::RParen);
        return MkTerm::pair(first, second, t.span);
      }
      expect(Tok::RParen);
      return first;
    }
    fail(t, "expected an MK term, found " + show(t));
  }

  // -- LL terms ------------------------------------------------------------

  LlTermPtr ll_term() {
    DepthGuard g(*this);
    const Token& t = peek();
    if (t.kind == Tok::Backslash) {
      next();
      auto x = expect_name().text;
      expect(Tok::Colon);
      auto annot = ll_type();
      expect(Tok::Dot);
      return LlTerm::lam(x, annot, ll_term(), t.span);
    }
    if (is_kw(t, "let")) {
      next();
      auto x = expect_name().text;
      if (peek().kind != Tok::TensorOp) {
        fail(peek(), "LL let must destructure a tensor: 'let x (*) y = t in u'");
      }
      next();
      auto y = expect_name().text;
      expect(Tok::Equals);
      auto bound = ll_term();
      expect_kw("in");
      return LlTerm::let_tensor(x, y, bound, ll_term(), t.span);
    }
    if (is_kw(t, "sample") || is_kw(t, "observe")) {
      next();
      std::vector<LlTermPtr> args;
      if (!is_kw(peek(), "as")) {
        args.push_back(ll_tensor());
        while (peek().kind == Tok::Comma) {
          next();
          args.push_back(ll_tensor());
        }
      }
      expect_kw("as");
      std::vector<Var> binders;
      if (!is_kw(peek(), "in")) {
        binders.push_back(expect_name().text);
        while (peek().kind == Tok::Comma) {
          next();
          binders.push_back(expect_name().text);
        }
      }
      expect_kw("in");
      auto body = mk_term();
      return LlTerm::sample(std::move(args), std::move(binders), body, t.span);
    }
    return ll_tensor();
  }

  LlTermPtr ll_tensor() {
    DepthGuard g(*this);
    auto left = ll_app();
    if (peek().kind == Tok::TensorOp) {
      Span span = next().span;
      return LlTerm::tensor(left, ll_tensor(), span);
    }
    return left;
  }

  bool starts_ll_atom() const {
    return is_name(peek()) || peek().kind == Tok::LParen;
  }

  LlTermPtr ll_app() {
    DepthGuard g(*this);
    if (!starts_ll_atom()) {
      // Allow binders and sample in argument position without parentheses
      // only at the head: `f \x:T. t` is not accepted.
      if (peek().kind == Tok::Backslash || is_kw(peek(), "let") || is_kw(peek(), "sample") ||
          is_kw(peek(), "observe")) {
        return ll_term();
      }
      fail(peek(), "expected an LL term, found " + show(peek()));
    }
    auto head = ll_atom();
    while (starts_ll_atom()) {
      Span span = peek().span;
      head = LlTerm::app(head, ll_atom(), span);
    }
    return head;
  }

  LlTermPtr ll_atom() {
    const Token& t = peek();
    if (is_prim_call()) {
      // A primitive in LL position is lifted through an empty sample.
      auto call = mk_atom();
      return LlTerm::sample({}, {}, call, t.span);
    }
    if (is_name(t)) {
      next();
      return LlTerm::var(t.text, t.span);
    }
    if (t.kind == Tok::LParen) {
      next();
      if (peek().kind == Tok::RParen) {
        next();
        return LlTerm::unit(t.span);
      }
      auto inner = ll_term();
      expect(Tok::RParen);
      return inner;
    }
    fail(t, "expected an LL term, found " + show(t));
  }

  // -- declarations --------------------------------------------------------

  void check_fresh_name(const Program& prog, const Token& name, bool is_base) {
    bool clash = is_base ? prog.find_base(name.text) != nullptr
                         : (prog.find_prim(name.text) || prog.find_def(name.text));
    if (clash) {
      throw ParseError(ParseError::Kind::Duplicate, name.span,
                       "duplicate declaration of " + name.text);
    }
  }

  void parse_base(Program& prog) {
    next();
    const Token& name = expect_name();
    check_fresh_name(prog, name, true);
    expect(Tok::Equals);
    expect(Tok::LBrace);
    BaseDecl decl{name.text, {}, name.span};
    std::set<std::string> seen;
    do {
      const Token& l = expect_name();
      if (!seen.insert(l.text).second) {
        throw ParseError(ParseError::Kind::Duplicate, l.span,
                         "duplicate label " + l.text + " in base " + name.text);
      }
      decl.labels.push_back(l.text);
    } while (peek().kind == Tok::Comma && (next(), true));
    expect(Tok::RBrace);
    expect(Tok::Semi);
    prog.bases.push_back(std::move(decl));
    sig_.bases[name.text] = prog.bases.back().labels;
  }

  std::shared_ptr<PointLit> point_lit() {
    DepthGuard g(*this);
    auto p = std::make_shared<PointLit>();
    p->span = peek().span;
    if (peek().kind == Tok::LParen) {
      next();
      if (peek().kind == Tok::RParen) {
        next();
        return p;
      }
      p->kind = PointLit::Kind::Pair;
      p->left = point_lit();
      expect(Tok::Comma);
      p->right = point_lit();
      expect(Tok::RParen);
      return p;
    }
    p->kind = PointLit::Kind::Label;
    p->label = expect_name().text;
    return p;
  }

  // Canonical label of a point literal, checked against `type`.
  std::string point_label(const PointLit& p, const MkTypePtr& type) {
    auto bad = [&](const std::string& why) -> std::string {
      throw ParseError(ParseError::Kind::InvalidKernel, p.span, why);
    };
    switch (type->kind) {
      case MkType::Kind::Unit:
        if (p.kind != PointLit::Kind::Unit) bad("expected the unit point '()'");
        return "()";
      case MkType::Kind::Base: {
        if (p.kind != PointLit::Kind::Label) bad("expected a label of base " + type->name);
        const auto& labels = sig_.bases.at(type->name);
        if (std::find(labels.begin(), labels.end(), p.label) == labels.end()) {
          bad("'" + p.label + "' is not a label of base " + type->name);
        }
        return p.label;
      }
      case MkType::Kind::Prod:
        if (p.kind != PointLit::Kind::Pair) bad("expected a pair point");
        return "(" + point_label(*p.left, type->left) + "," + point_label(*p.right, type->right) +
               ")";
    }
    return bad("malformed point");
  }

  Rational rational_lit() {
    const Token& num = expect(Tok::Number);
    std::string text = num.text;
    if (peek().kind == Tok::Slash) {
      next();
      text += "/" + expect(Tok::Number).text;
    }
    try {
      return parse_rational(text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(ParseError::Kind::InvalidKernel, num.span, e.what());
    }
  }

  void parse_prim(Program& prog) {
    next();
    const Token& name = expect_name();
    check_fresh_name(prog, name, false);
    expect(Tok::Colon);
    checking_ = true;
    PrimDecl decl;
    decl.name = name.text;
    decl.span = name.span;
    decl.dom = mk_type();
    expect(Tok::Arrow);
    decl.cod = mk_type();
    expect(Tok::Equals);
    expect(Tok::LBrace);
    BaseTable bases = sig_.bases;
    auto dom = points(decl.dom, bases);
    auto cod = points(decl.cod, bases);
    if (peek().kind != Tok::RBrace) {
      do {
        auto from = point_lit();
        auto from_label = point_label(*from, decl.dom);
        if (decl.kernel.count(from_label)) {
          throw ParseError(ParseError::Kind::Duplicate, from->span,
                           "duplicate row " + from_label + " in primitive " + name.text);
        }
        expect(Tok::Arrow);
        expect(Tok::LBrace);
        auto& row = decl.kernel[from_label];
        Rational total = 0;
        if (peek().kind != Tok::RBrace) {
          do {
            auto to = point_lit();
            auto to_label = point_label(*to, decl.cod);
            expect(Tok::Colon);
            Span at = peek().span;
            Rational p = rational_lit();
            if (p > 1) {
              throw ParseError(ParseError::Kind::InvalidKernel, at,
                               "probability " + to_string(p) + " exceeds 1");
            }
            if (row.count(to_label)) {
              throw ParseError(ParseError::Kind::Duplicate, to->span,
                               "duplicate entry " + to_label + " in row " + from_label);
            }
            row[to_label] = p;
            total += p;
          } while (peek().kind == Tok::Comma && (next(), true));
        }
        expect(Tok::RBrace);
        if (total != 1) {
          throw ParseError(ParseError::Kind::InvalidKernel, from->span,
                           "row " + from_label + " of primitive " + name.text + " sums to " +
                               to_string(total) + " != 1");
        }
      } while (peek().kind == Tok::Comma && (next(), true));
    }
    expect(Tok::RBrace);
    expect(Tok::Semi);
    for (const auto& a : dom.labels()) {
      if (!decl.kernel.count(a)) {
        throw ParseError(ParseError::Kind::InvalidKernel, name.span,
                         "primitive " + name.text + " has no row for point " + a);
      }
    }
    (void)cod;
    checking_ = false;
    sig_.prims[name.text] = PrimSig{decl.dom, decl.cod};
    prog.prims.push_back(std::move(decl));
  }

  void parse_def(Program& prog) {
    next();
    Def def;
    checking_ = true;
    if (is_kw(peek(), "mk")) {
      next();
      def.lang = Lang::MK;
    }
    const Token& name = expect_name();
    check_fresh_name(prog, name, false);
    def.name = name.text;
    def.span = name.span;
    if (def.lang == Lang::MK) {
      if (peek().kind == Tok::LParen) {
        next();
        do {
          const Token& x = expect_name();
          expect(Tok::Colon);
          if (def.params.contains(x.text)) {
            throw ParseError(ParseError::Kind::Duplicate, x.span, "duplicate parameter " + x.text);
          }
          def.params.push(x.text, mk_type());
        } while (peek().kind == Tok::Comma && (next(), true));
        expect(Tok::RParen);
      }
      expect(Tok::Colon);
      def.mk_type = mk_type();
      expect(Tok::Equals);
      def.mk_term = mk_term();
      expect(Tok::Semi);
      resolve_mk(prog, def.mk_term, def.params.names(), {});
    } else {
      expect(Tok::Colon);
      def.ll_type = ll_type();
      expect(Tok::Equals);
      def.ll_term = ll_term();
      expect(Tok::Semi);
      VarSet scope;
      resolve_ll(prog, def.ll_term, scope);
    }
    checking_ = false;
    prog.defs.push_back(std::move(def));
  }

  // -- name resolution -----------------------------------------------------
  //
  // Every variable occurrence must be bound by an enclosing binder (of either
  // language) or name an earlier definition. Whether the binder belongs to
  // the right language is a typing question, reported by the typechecker.

  void check_type_names(const LlTypePtr& t, Span span) {
    switch (t->kind) {
      case LlType::Kind::Unit: return;
      case LlType::Kind::Meas: check_type_names(t->inner, span); return;
      default:
        check_type_names(t->left, span);
        check_type_names(t->right, span);
    }
  }
  void check_type_names(const MkTypePtr& t, Span span) {
    if (t->kind == MkType::Kind::Base && !sig_.bases.count(t->name)) {
      throw ParseError(ParseError::Kind::UnknownIdentifier, span,
                       "unknown identifier " + t->name + " (not a declared base type)");
    }
    if (t->kind == MkType::Kind::Prod) {
      check_type_names(t->left, span);
      check_type_names(t->right, span);
    }
  }

  static void unknown(const std::string& x, Span span) {
    throw ParseError(ParseError::Kind::UnknownIdentifier, span, "unknown identifier " + x);
  }

  void resolve_mk(const Program& prog, const MkTermPtr& t, const VarSet& mk_scope,
                  const VarSet& ll_scope) {
    switch (t->kind) {
      case MkTerm::Kind::Var: {
        if (mk_scope.count(t->name) || ll_scope.count(t->name)) return;
        const Def* d = prog.find_def(t->name);
        if (d && d->lang == Lang::MK && d->params.empty()) return;
        unknown(t->name, t->span);
      }
      case MkTerm::Kind::Unit: return;
      case MkTerm::Kind::Let: {
        resolve_mk(prog, t->first, mk_scope, ll_scope);
        VarSet inner = mk_scope;
        inner.insert(t->name);
        resolve_mk(prog, t->second, inner, ll_scope);
        return;
      }
      case MkTerm::Kind::Pair:
        resolve_mk(prog, t->first, mk_scope, ll_scope);
        resolve_mk(prog, t->second, mk_scope, ll_scope);
        return;
      case MkTerm::Kind::Fst:
      case MkTerm::Kind::Snd:
      case MkTerm::Kind::Prim: resolve_mk(prog, t->first, mk_scope, ll_scope); return;
    }
  }

  void resolve_ll(const Program& prog, const LlTermPtr& t, VarSet& scope) {
    switch (t->kind) {
      case LlTerm::Kind::Var: {
        if (scope.count(t->name)) return;
        const Def* d = prog.find_def(t->name);
        if (d && d->lang == Lang::LL) return;
        unknown(t->name, t->span);
      }
      case LlTerm::Kind::Unit: return;
      case LlTerm::Kind::Lam: {
        check_type_names(t->annot, t->span);
        bool fresh = scope.insert(t->name).second;
        resolve_ll(prog, t->first, scope);
        if (fresh) scope.erase(t->name);
        return;
      }
      case LlTerm::Kind::App:
      case LlTerm::Kind::Tensor:
        resolve_ll(prog, t->first, scope);
        resolve_ll(prog, t->second, scope);
        return;
      case LlTerm::Kind::LetTensor: {
        resolve_ll(prog, t->first, scope);
        bool fx = scope.insert(t->name).second;
        bool fy = scope.insert(t->name2).second;
        resolve_ll(prog, t->second, scope);
        if (fx) scope.erase(t->name);
        if (fy) scope.erase(t->name2);
        return;
      }
      case LlTerm::Kind::Sample: {
        for (const auto& a : t->args) resolve_ll(prog, a, scope);
        VarSet mk_scope(t->binders.begin(), t->binders.end());
        resolve_mk(prog, t->body, mk_scope, scope);
        return;
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  Signature sig_;
  bool checking_ = false;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text, {}).program(); }

LlTermPtr parse_ll_term(std::string_view text, const Signature& sig) {
  return Parser(text, sig).ll_fragment();
}

MkTermPtr parse_mk_term(std::string_view text, const Signature& sig) {
  return Parser(text, sig).mk_fragment();
}

LlTypePtr parse_ll_type(std::string_view text) { return Parser(text, {}).ll_type_fragment(); }

MkTypePtr parse_mk_type(std::string_view text) { return Parser(text, {}).mk_type_fragment(); }

}  // namespace llmk
