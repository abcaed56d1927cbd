#include "hott/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace hott {

std::string SourceSpan::str() const {
  return file + ":" + std::to_string(line) + ":" + std::to_string(column);
}

SourceError::SourceError(const std::string& kind, const std::string& msg, SourceSpan span)
    : std::runtime_error(span.str() + ": " + kind + ": " + msg),
      kind_(kind),
      detail_(msg),
      span_(std::move(span)) {}

namespace {

std::string joinExpected(const std::set<std::string>& e) {
  std::string out;
  for (const auto& s : e) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& msg, SourceSpan span, std::set<std::string> expected)
    : SourceError("parse error",
                  expected.empty() ? msg : msg + " (expected one of: " + joinExpected(expected) + ")",
                  std::move(span)),
      expected_(std::move(expected)) {}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

enum class Tok { Ident, Nat, LParen, RParen, Colon, DefEq, Arrow, Backslash, Dot, Comma, Eof };

const char* tokName(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Nat: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Colon: return "':'";
    case Tok::DefEq: return "':='";
    case Tok::Arrow: return "'->'";
    case Tok::Backslash: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
  bool spaceBefore = false;
};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& src, const std::string& file) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  bool space = true;
  auto at = [&](int l, int c) {
    SourceSpan s;
    s.file = file;
    s.line = s.endLine = l;
    s.column = c;
    s.endColumn = c;
    return s;
  };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      space = true;
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      space = true;
      continue;
    }
    Token t;
    t.span = at(line, col);
    t.spaceBefore = space;
    space = false;
    std::size_t start = i;
    if (identStart(c)) {
      while (i < src.size()) {
        if (identChar(src[i])) {
          advance(1);
        } else if (src[i] == '-' && i + 1 < src.size() &&
                   std::isalpha(static_cast<unsigned char>(src[i + 1]))) {
          advance(1);
        } else {
          break;
        }
      }
      t.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
      t.kind = Tok::Nat;
    } else if (c == ':' && i + 1 < src.size() && src[i + 1] == '=') {
      advance(2);
      t.kind = Tok::DefEq;
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      advance(2);
      t.kind = Tok::Arrow;
    } else {
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case ':': t.kind = Tok::Colon; break;
        case '\\': t.kind = Tok::Backslash; break;
        case '.': t.kind = Tok::Dot; break;
        case ',': t.kind = Tok::Comma; break;
        default: {
          std::string shown(1, c);
          if (static_cast<unsigned char>(c) >= 0x80) shown = "non-ASCII character";
          throw LexError("unexpected character " + shown, t.span);
        }
      }
      advance(1);
    }
    t.text = src.substr(start, i - start);
    t.span.endLine = line;
    t.span.endColumn = col;
    out.push_back(std::move(t));
  }
  Token eof;
  eof.kind = Tok::Eof;
  eof.span = at(line, col);
  eof.spaceBefore = true;
  out.push_back(eof);
  return out;
}

const std::set<std::string> kKeywords = {"def", "Pi", "Sg", "Id", "refl", "J", "U", "El",
                                         "lift", "funext", "ua", "resize", "code-pi",
                                         "code-sg", "code-id", "code-U"};

bool isUnivIdent(const std::string& s, int* level) {
  if (s.size() < 2 || s[0] != 'U') return false;
  for (std::size_t k = 1; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  *level = std::stoi(s.substr(1));
  return true;
}

bool isKeyword(const std::string& s) {
  int lvl;
  return kKeywords.count(s) > 0 || isUnivIdent(s, &lvl);
}

using K = SurfaceTerm::Kind;

class Parser {
 public:
  Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<SurfaceDecl> module() {
    std::vector<SurfaceDecl> decls;
    while (peek().kind != Tok::Eof) decls.push_back(decl());
    return decls;
  }

  STerm wholeTerm() {
    STerm t = term();
    expect(Tok::Eof);
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<SourceSpan> openParens_;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool isKw(const char* kw, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == kw;
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, std::set<std::string> expected) {
    const Token& t = peek();
    if (t.kind == Tok::Eof && !openParens_.empty())
      throw ParseError("unclosed '('", openParens_.back(), std::move(expected));
    std::string found = t.kind == Tok::Eof ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + found, t.span, std::move(expected));
  }

  Token expect(Tok k) {
    if (peek().kind != k) fail("unexpected token", {tokName(k)});
    return next();
  }

  void expectKw(const char* kw) {
    if (!isKw(kw)) fail("unexpected token", {std::string("'") + kw + "'"});
    next();
  }

  std::string ident() {
    if (peek().kind != Tok::Ident || isKeyword(peek().text)) fail("expected a name", {"identifier"});
    return next().text;
  }

  int nat() {
    Token t = expect(Tok::Nat);
    return std::stoi(t.text);
  }

  static SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
    SourceSpan s = a;
    s.endLine = b.endLine;
    s.endColumn = b.endColumn;
    return s;
  }
  SourceSpan spanFrom(const SourceSpan& start) const {
    const Token& prev = toks_[pos_ == 0 ? 0 : pos_ - 1];
    return join(start, prev.span);
  }

  static STerm node(K kind, SourceSpan span, std::vector<STerm> args = {}, int level = 0) {
    auto t = std::make_shared<SurfaceTerm>();
    t->kind = kind;
    t->span = std::move(span);
    t->args = std::move(args);
    t->level = level;
    return t;
  }

  SurfaceDecl decl() {
    SourceSpan start = peek().span;
    expectKw("def");
    SurfaceDecl d;
    d.name = ident();
    if (peek().kind == Tok::Colon) {
      next();
      d.annotation = term();
    }
    expect(Tok::DefEq);
    d.body = term();
    d.span = spanFrom(start);
    return d;
  }

  std::vector<SBinder> binders() {
    std::vector<SBinder> bs;
    while (peek().kind == Tok::LParen) {
      SBinder b;
      SourceSpan start = peek().span;
      openParens_.push_back(start);
      next();
      do {
        b.names.push_back(ident());
      } while (peek().kind == Tok::Ident);
      expect(Tok::Colon);
      b.type = term();
      expect(Tok::RParen);
      openParens_.pop_back();
      b.span = spanFrom(start);
      bs.push_back(std::move(b));
    }
    if (bs.empty()) fail("expected a binder", {"'('"});
    return bs;
  }

  STerm binderForm(K kind, Tok sep) {
    SourceSpan start = next().span;
    auto bs = binders();
    expect(sep);
    STerm body = term();
    auto t = std::make_shared<SurfaceTerm>();
    t->kind = kind;
    t->binders = std::move(bs);
    t->args = {body};
    t->span = spanFrom(start);
    return t;
  }

  STerm term() {
    const Token& t = peek();
    if (isKw("Pi")) return binderForm(K::Pi, Tok::Arrow);
    if (isKw("Sg")) return binderForm(K::Sg, Tok::Dot);
    if (isKw("code-pi")) return binderForm(K::CodePi, Tok::Arrow);
    if (isKw("code-sg")) return binderForm(K::CodeSg, Tok::Dot);
    if (t.kind == Tok::Backslash) {
      SourceSpan start = next().span;
      auto lam = std::make_shared<SurfaceTerm>();
      lam->kind = K::Lam;
      do {
        lam->params.push_back(ident());
      } while (peek().kind == Tok::Ident);
      expect(Tok::Dot);
      lam->args = {term()};
      lam->span = spanFrom(start);
      return lam;
    }
    STerm lhs = application();
    if (peek().kind == Tok::Arrow) {
      next();
      STerm rhs = term();
      return node(K::Arrow, join(lhs->span, rhs->span), {lhs, rhs});
    }
    return lhs;
  }

  bool atAtomStart() const {
    const Token& t = peek();
    if (t.kind == Tok::LParen) return true;
    int lvl;
    if (t.kind == Tok::Ident && isUnivIdent(t.text, &lvl)) return true;
    return t.kind == Tok::Ident && !isKeyword(t.text);
  }

  STerm application() {
    STerm head = headForm();
    std::vector<STerm> args;
    while (atAtomStart()) args.push_back(atom());
    if (args.empty()) return head;
    SourceSpan s = join(head->span, args.back()->span);
    args.insert(args.begin(), head);
    return node(K::App, s, std::move(args));
  }

  std::vector<STerm> atoms(int n) {
    std::vector<STerm> out;
    for (int k = 0; k < n; ++k) {
      if (!atAtomStart()) fail("expected an argument", {"identifier", "'('"});
      out.push_back(atom());
    }
    return out;
  }

  STerm headForm() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      SourceSpan start = t.span;
      auto prefix = [&](K kind, int n) {
        next();
        auto a = atoms(n);
        return node(kind, spanFrom(start), std::move(a));
      };
      if (t.text == "Id") return prefix(K::Id, 3);
      if (t.text == "refl") return prefix(K::Refl, 1);
      if (t.text == "J") return prefix(K::J, 5);
      if (t.text == "El") return prefix(K::El, 1);
      if (t.text == "lift") return prefix(K::Lift, 1);
      if (t.text == "code-id") return prefix(K::CodeId, 3);
      if (t.text == "U") {
        next();
        int n = nat();
        return node(K::Univ, spanFrom(start), {}, n);
      }
      if (t.text == "code-U") {
        next();
        int n = nat();
        return node(K::CodeUniv, spanFrom(start), {}, n);
      }
      if (t.text == "ua" || t.text == "resize") {
        K kind = t.text == "ua" ? K::Ua : K::Resize;
        next();
        int n = nat();
        return node(kind, spanFrom(start), {}, n);
      }
      if (t.text == "funext") {
        next();
        int n = 0;
        if (peek().kind == Tok::Nat) n = nat();
        return node(K::Funext, spanFrom(start), {}, n);
      }
    }
    if (atAtomStart()) return atom();
    fail("expected a term",
         {"identifier", "'('", "'\\'", "Pi", "Sg", "Id", "refl", "J", "U", "El", "lift", "funext",
          "ua", "resize", "code-pi", "code-sg", "code-id", "code-U"});
  }

  STerm atom() {
    STerm a;
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      SourceSpan start = next().span;
      openParens_.push_back(start);
      STerm inner = term();
      if (peek().kind == Tok::Comma) {
        std::vector<STerm> parts{inner};
        while (peek().kind == Tok::Comma) {
          next();
          parts.push_back(term());
        }
        expect(Tok::RParen);
        SourceSpan whole = spanFrom(start);
        STerm acc = parts.back();
        for (std::size_t k = parts.size() - 1; k-- > 0;)
          acc = node(K::Pair, k == 0 ? whole : join(parts[k]->span, whole), {parts[k], acc});
        a = acc;
      } else {
        expect(Tok::RParen);
        a = inner;
      }
      openParens_.pop_back();
    } else if (int lvl; isUnivIdent(t.text, &lvl)) {
      a = node(K::Univ, t.span, {}, lvl);
      next();
    } else {
      auto id = std::make_shared<SurfaceTerm>();
      id->kind = K::Ident;
      id->span = t.span;
      id->name = ident();
      a = id;
    }
    // postfix projections: no whitespace before the dot
    while (peek().kind == Tok::Dot && !peek().spaceBefore && peek(1).kind == Tok::Nat &&
           !peek(1).spaceBefore && (peek(1).text == "1" || peek(1).text == "2")) {
      next();
      Token n = next();
      a = node(n.text == "1" ? K::Fst : K::Snd, join(a->span, n.span), {a});
    }
    return a;
  }
};

class Resolver {
 public:
  explicit Resolver(const std::set<std::string>& globals) : globals_(globals) {}

  Term resolve(const STerm& t, std::vector<std::string>& scope) {
    switch (t->kind) {
      case K::Ident: {
        for (std::size_t k = scope.size(); k-- > 0;)
          if (scope[k] == t->name) return mk::var(scope.size() - 1 - k);
        if (globals_.count(t->name)) return mk::constant(t->name);
        throw ResolveError("unbound identifier", "'" + t->name + "' is not in scope", t->span);
      }
      case K::Pi:
      case K::Sg:
      case K::CodePi:
      case K::CodeSg: return binders(t, 0, 0, scope);
      case K::Arrow: {
        Term dom = resolve(t->args[0], scope);
        scope.push_back("");
        Term cod = resolve(t->args[1], scope);
        scope.pop_back();
        return mk::pi(dom, cod);
      }
      case K::Lam: return lambda(t->params, 0, t->args[0], scope);
      case K::App: {
        Term f = resolve(t->args[0], scope);
        for (std::size_t k = 1; k < t->args.size(); ++k) f = mk::app(f, resolve(t->args[k], scope));
        return f;
      }
      case K::Pair: return mk::pair(resolve(t->args[0], scope), resolve(t->args[1], scope));
      case K::Fst: return mk::fst(resolve(t->args[0], scope));
      case K::Snd: return mk::snd(resolve(t->args[0], scope));
      case K::Id:
        return mk::id(resolve(t->args[0], scope), resolve(t->args[1], scope),
                      resolve(t->args[2], scope));
      case K::CodeId:
        return mk::codeId(resolve(t->args[0], scope), resolve(t->args[1], scope),
                          resolve(t->args[2], scope));
      case K::Refl: return mk::refl(resolve(t->args[0], scope));
      case K::El: return mk::el(resolve(t->args[0], scope));
      case K::Lift: return mk::lift(resolve(t->args[0], scope));
      case K::Univ: return mk::univ(t->level);
      case K::CodeUniv: return mk::codeUniv(t->level);
      case K::Funext: return mk::axiom(Axiom::Funext, t->level);
      case K::Ua: return mk::axiom(Axiom::Ua, t->level);
      case K::Resize: return mk::axiom(Axiom::Resize, t->level);
      case K::J: return jElim(t, scope);
    }
    throw ResolveError("internal error", "unknown surface node", t->span);
  }

 private:
  const std::set<std::string>& globals_;

  Term binders(const STerm& t, std::size_t group, std::size_t idx, std::vector<std::string>& scope) {
    if (group == t->binders.size()) return resolve(t->args[0], scope);
    const SBinder& b = t->binders[group];
    // the binder type is resolved in the scope before the names of its own group
    std::vector<std::string> outer(scope.begin(), scope.end() - static_cast<long>(idx));
    Term ty = shift(resolve(b.type, outer), static_cast<long>(idx));
    scope.push_back(b.names[idx] == "_" ? "" : b.names[idx]);
    Term body = idx + 1 < b.names.size() ? binders(t, group, idx + 1, scope)
                                         : binders(t, group + 1, 0, scope);
    scope.pop_back();
    switch (t->kind) {
      case K::Pi: return mk::pi(ty, body);
      case K::Sg: return mk::sigma(ty, body);
      case K::CodePi: return mk::codePi(ty, body);
      default: return mk::codeSigma(ty, body);
    }
  }

  Term lambda(const std::vector<std::string>& params, std::size_t k, const STerm& body,
              std::vector<std::string>& scope) {
    if (k == params.size()) return resolve(body, scope);
    scope.push_back(params[k] == "_" ? "" : params[k]);
    Term b = lambda(params, k + 1, body, scope);
    scope.pop_back();
    return mk::lam(b);
  }

  // Collect up to n leading lambda parameters through nested lambdas.
  static bool peel(const STerm& t, std::size_t n, std::vector<std::string>& names, STerm& rest) {
    STerm cur = t;
    std::size_t used = 0;
    names.clear();
    while (names.size() < n && cur->kind == K::Lam) {
      while (used < cur->params.size() && names.size() < n) names.push_back(cur->params[used++]);
      if (names.size() == n) break;
      cur = cur->args[0];
      used = 0;
    }
    if (names.size() < n) return false;
    if (used < cur->params.size()) {
      auto inner = std::make_shared<SurfaceTerm>(*cur);
      inner->params.assign(cur->params.begin() + static_cast<long>(used), cur->params.end());
      rest = inner;
    } else {
      rest = cur->args[0];
    }
    return true;
  }

  Term underBinders(const std::vector<std::string>& names, const STerm& body,
                    std::vector<std::string>& scope) {
    for (const auto& n : names) scope.push_back(n == "_" ? "" : n);
    Term out = resolve(body, scope);
    scope.resize(scope.size() - names.size());
    return out;
  }

  Term jElim(const STerm& t, std::vector<std::string>& scope) {
    std::vector<std::string> names;
    STerm rest;
    Term motive;
    if (peel(t->args[0], 3, names, rest)) {
      motive = underBinders(names, rest, scope);
    } else {
      Term m = shift(resolve(t->args[0], scope), 3);
      motive = mk::el(mk::app(m, {mk::var(2), mk::var(1), mk::var(0)}));
    }
    Term base;
    if (peel(t->args[1], 1, names, rest)) {
      base = underBinders(names, rest, scope);
    } else {
      base = mk::app(shift(resolve(t->args[1], scope), 1), mk::var(0));
    }
    return mk::j(motive, base, resolve(t->args[2], scope), resolve(t->args[3], scope),
                 resolve(t->args[4], scope));
  }
};

}  // namespace

std::vector<SurfaceDecl> parseModule(const std::string& source, const std::string& file) {
  Parser p(lex(source, file));
  return p.module();
}

STerm parseTerm(const std::string& source, const std::string& file) {
  Parser p(lex(source, file));
  return p.wholeTerm();
}

std::vector<ResolvedDecl> resolveNames(const std::vector<SurfaceDecl>& decls,
                                       const std::set<std::string>& globals) {
  std::set<std::string> known = globals;
  std::vector<ResolvedDecl> out;
  for (const auto& d : decls) {
    if (known.count(d.name))
      throw ResolveError("duplicate definition", "'" + d.name + "' is already defined", d.span);
    Resolver r(known);
    std::vector<std::string> scope;
    ResolvedDecl rd;
    rd.name = d.name;
    rd.span = d.span;
    if (d.annotation) rd.type = r.resolve(*d.annotation, scope);
    rd.body = r.resolve(d.body, scope);
    out.push_back(std::move(rd));
    known.insert(d.name);
  }
  return out;
}

Term resolveTerm(const STerm& t, const std::set<std::string>& globals,
                 const std::vector<std::string>& scope) {
  Resolver r(globals);
  std::vector<std::string> s = scope;
  return r.resolve(t, s);
}

namespace {

class Printer {
 public:
  Printer(std::vector<std::string> scope, const std::set<std::string>& reserved)
      : scope_(std::move(scope)), reserved_(reserved) {}

  // prec 0: any term; 1: application head/arrow operand; 2: atom
  std::string print(const Term& t, int prec) {
    using namespace term;
    if (auto* v = as<Var>(t)) {
      if (v->index >= scope_.size()) throw MalformedTerm("printTerm: free variable out of scope");
      return scope_[scope_.size() - 1 - v->index];
    }
    if (auto* c = as<Const>(t)) return c->name;
    if (auto* u = as<Univ>(t)) return "U" + std::to_string(u->level);
    if (auto* a = as<Pair>(t)) return "(" + print(a->a, 0) + ", " + print(a->b, 0) + ")";
    if (auto* p = as<Fst>(t)) return print(p->p, 2) + ".1";
    if (auto* p = as<Snd>(t)) return print(p->p, 2) + ".2";
    std::string s;
    int own = 1;
    if (auto* p = as<term::Pi>(t)) {
      s = binderForm("Pi", p->dom, p->cod, " -> ");
      own = 0;
    } else if (auto* p = as<Sigma>(t)) {
      s = binderForm("Sg", p->fst, p->snd, " . ");
      own = 0;
    } else if (auto* p = as<CodePi>(t)) {
      s = binderForm("code-pi", p->dom, p->cod, " -> ");
      own = 0;
    } else if (auto* p = as<CodeSigma>(t)) {
      s = binderForm("code-sg", p->dom, p->cod, " . ");
      own = 0;
    } else if (auto* l = as<Lam>(t)) {
      std::string x = fresh();
      scope_.push_back(x);
      s = "\\" + x + ". " + print(l->body, 0);
      scope_.pop_back();
      own = 0;
    } else if (auto* a = as<App>(t)) {
      s = print(a->fn, 1) + " " + print(a->arg, 2);
    } else if (auto* i = as<IdTy>(t)) {
      s = "Id " + print(i->ty, 2) + " " + print(i->lhs, 2) + " " + print(i->rhs, 2);
    } else if (auto* i = as<CodeId>(t)) {
      s = "code-id " + print(i->code, 2) + " " + print(i->lhs, 2) + " " + print(i->rhs, 2);
    } else if (auto* r = as<Refl>(t)) {
      s = "refl " + print(r->t, 2);
    } else if (auto* e = as<El>(t)) {
      s = "El " + print(e->code, 2);
    } else if (auto* l = as<Lift>(t)) {
      s = "lift " + print(l->code, 2);
    } else if (auto* u = as<CodeUniv>(t)) {
      s = "code-U " + std::to_string(u->level);
    } else if (auto* ax = as<Ax>(t)) {
      s = std::string(axiomName(ax->kind)) + " " + std::to_string(ax->level);
    } else if (auto* j = as<J>(t)) {
      std::string x = fresh();
      scope_.push_back(x);
      std::string y = fresh();
      scope_.push_back(y);
      std::string p = fresh();
      scope_.push_back(p);
      std::string motive = "(\\" + x + " " + y + " " + p + ". " + print(j->motive, 0) + ")";
      scope_.resize(scope_.size() - 3);
      std::string z = fresh();
      scope_.push_back(z);
      std::string base = "(\\" + z + ". " + print(j->base, 0) + ")";
      scope_.pop_back();
      s = "J " + motive + " " + base + " " + print(j->lhs, 2) + " " + print(j->rhs, 2) + " " +
          print(j->path, 2);
    }
    return own >= prec ? s : "(" + s + ")";
  }

 private:
  std::vector<std::string> scope_;
  const std::set<std::string>& reserved_;
  std::size_t counter_ = 0;

  std::string fresh() {
    for (;;) {
      std::string n = "x" + std::to_string(counter_++);
      if (reserved_.count(n)) continue;
      if (std::find(scope_.begin(), scope_.end(), n) != scope_.end()) continue;
      return n;
    }
  }

  std::string binderForm(const char* kw, const Term& dom, const Term& cod, const char* sep) {
    std::string d = print(dom, 0);
    std::string x = fresh();
    scope_.push_back(x);
    std::string c = print(cod, 0);
    scope_.pop_back();
    return std::string(kw) + " (" + x + " : " + d + ")" + sep + c;
  }
};

}  // namespace

std::string printTerm(const Term& t, const std::vector<std::string>& scope,
                      const std::set<std::string>& reserved) {
  Printer p(scope, reserved);
  return p.print(t, 0);
}

}  // namespace hott
