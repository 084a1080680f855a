#include "contlogic/lang/parser.hpp"

#include <cctype>
#include <optional>

#include "contlogic/errors.hpp"

namespace contlogic {

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : std::runtime_error(std::string(kind_name(kind)) + " error at offset " + std::to_string(position) + ": " + message),
      kind_(kind),
      position_(position) {}

std::string_view ParseError::kind_name(Kind kind) {
  switch (kind) {
    case Kind::Lexical: return "lexical";
    case Kind::Syntax: return "syntax";
    case Kind::UnknownSymbol: return "unknown-symbol";
    case Kind::SortMismatch: return "sort-mismatch";
    case Kind::Arity: return "arity";
  }
  return "parse";
}

namespace {

enum class Tok { Ident, Int, LParen, RParen, Comma, Dot, Bar, Colon, Slash, MinusDot, PlusDot, Minus, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Ident:
    case Tok::Int: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      std::string word(text.substr(start, i - start));
      if (word.size() > 3 && word.compare(0, 3, "med") == 0 &&
          word.find_first_not_of("0123456789", 3) == std::string::npos) {
        out.push_back({Tok::Ident, "med", start});
        out.push_back({Tok::Int, word.substr(3), start + 3});
      } else {
        out.push_back({Tok::Ident, word, start});
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i < text.size() && text[i] == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        throw ParseError(ParseError::Kind::Lexical, start, "decimal constants are not accepted; write p/q");
      }
      out.push_back({Tok::Int, std::string(text.substr(start, i - start)), start});
      continue;
    }
    ++i;
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", start}); break;
      case ')': out.push_back({Tok::RParen, ")", start}); break;
      case ',': out.push_back({Tok::Comma, ",", start}); break;
      case '.': out.push_back({Tok::Dot, ".", start}); break;
      case '|': out.push_back({Tok::Bar, "|", start}); break;
      case ':': out.push_back({Tok::Colon, ":", start}); break;
      case '/': out.push_back({Tok::Slash, "/", start}); break;
      case '-':
        if (i < text.size() && text[i] == '.') {
          ++i;
          out.push_back({Tok::MinusDot, "-.", start});
        } else {
          out.push_back({Tok::Minus, "-", start});
        }
        break;
      case '+':
        if (i < text.size() && text[i] == '.') {
          ++i;
          out.push_back({Tok::PlusDot, "+.", start});
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError(ParseError::Kind::Lexical, start, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

bool is_keyword(const std::string& w) {
  return w == "sup" || w == "inf" || w == "not" || w == "half" || w == "min" || w == "max" || w == "med";
}

bool is_var_name(const std::string& w) { return !w.empty() && std::islower(static_cast<unsigned char>(w[0])) && !is_keyword(w); }

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : toks_(tokenize(text)), sig_(sig) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End) syntax("unexpected " + describe(peek()) + " after formula");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_ident(const char* word, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == word;
  }
  [[noreturn]] void syntax(const std::string& msg) const { throw ParseError(ParseError::Kind::Syntax, peek().pos, msg); }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) syntax(std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }

  Formula formula() {
    if (at_ident("sup") || at_ident("inf")) {
      Quantifier q = next().text == "sup" ? Quantifier::Sup : Quantifier::Inf;
      Variable v = binder();
      expect(Tok::Dot, "'.' after bound variable");
      scope_.push_back(v);
      Formula body = formula();
      scope_.pop_back();
      return make_quantifier(q, v, body);
    }
    return sum();
  }

  Variable binder() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || !is_var_name(t.text)) syntax("expected a variable, found " + describe(t));
    next();
    if (peek().kind == Tok::Colon) {
      next();
      return {t.text, sort_annotation()};
    }
    if (sig_.sort_count() == 0) throw ParseError(ParseError::Kind::SortMismatch, t.pos, "signature has no sorts");
    return {t.text, 0};
  }

  int sort_annotation() {
    const Token& s = expect(Tok::Ident, "a sort name");
    auto id = sig_.find_sort(s.text);
    if (!id) throw ParseError(ParseError::Kind::UnknownSymbol, s.pos, "unknown sort '" + s.text + "'");
    return *id;
  }

  Formula sum() {
    Formula lhs = prod();
    while (peek().kind == Tok::MinusDot || peek().kind == Tok::PlusDot) {
      ConnectiveId op = next().kind == Tok::MinusDot ? ConnectiveId::Monus : ConnectiveId::PlusTrunc;
      lhs = make_connective(op, {lhs, prod()});
    }
    return lhs;
  }

  Formula prod() {
    if (at_ident("not")) {
      next();
      return f_neg(prod());
    }
    if (at_ident("half")) {
      next();
      return f_half(prod());
    }
    return atom();
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: return rational();
      case Tok::LParen: {
        next();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Bar: {
        next();
        Formula a = formula();
        expect(Tok::Minus, "'-' inside |...|");
        Formula b = formula();
        expect(Tok::Bar, "closing '|'");
        return f_absdiff(a, b);
      }
      case Tok::Ident: break;
      default: syntax("expected a formula, found " + describe(t));
    }
    if ((t.text == "min" || t.text == "max") && peek(1).kind == Tok::LParen) {
      ConnectiveId id = t.text == "min" ? ConnectiveId::Min : ConnectiveId::Max;
      next();
      next();
      Formula a = formula();
      expect(Tok::Comma, "','");
      Formula b = formula();
      expect(Tok::RParen, "')'");
      return make_connective(id, {a, b});
    }
    if (t.text == "med") {
      next();
      const Token& n_tok = expect(Tok::Int, "the med index");
      int n = 0;
      try {
        n = std::stoi(n_tok.text);
      } catch (const std::exception&) {
        throw ParseError(ParseError::Kind::Lexical, n_tok.pos, "med index out of range");
      }
      if (n < 1) throw ParseError(ParseError::Kind::Arity, n_tok.pos, "med index must be positive");
      expect(Tok::LParen, "'('");
      std::vector<Formula> args = {formula()};
      while (peek().kind == Tok::Comma) {
        next();
        args.push_back(formula());
      }
      std::size_t close = peek().pos;
      expect(Tok::RParen, "')'");
      if (static_cast<long>(args.size()) != 2L * n - 1) {
        throw ParseError(ParseError::Kind::Arity, close,
                         "med " + std::to_string(n) + " takes " + std::to_string(2 * n - 1) + " arguments, got " +
                             std::to_string(args.size()));
      }
      return make_med(n, std::move(args));
    }
    if (is_keyword(t.text)) syntax("unexpected keyword '" + t.text + "'");
    if (peek(1).kind == Tok::LParen) return application();
    if (is_var_name(t.text)) {
      next();
      if (peek().kind == Tok::Colon) syntax("truth-value variables take no sort annotation");
      return make_value_var(t.text);
    }
    throw ParseError(ParseError::Kind::UnknownSymbol, t.pos, "unknown symbol '" + t.text + "'");
  }

  Formula rational() {
    const Token& p = next();
    std::string text = p.text;
    if (peek().kind == Tok::Slash) {
      next();
      text += "/" + expect(Tok::Int, "a denominator").text;
    }
    Rational r;
    try {
      r = Rational::parse(text);
    } catch (const std::exception& e) {
      throw ParseError(ParseError::Kind::Lexical, p.pos, e.what());
    }
    if (r > Rational(1)) throw ParseError(ParseError::Kind::Syntax, p.pos, "constant " + text + " outside [0,1]");
    return make_const(UnitValue(r));
  }

  std::vector<std::pair<Term, std::size_t>> term_list() {
    expect(Tok::LParen, "'('");
    std::vector<std::pair<Term, std::size_t>> args;
    if (peek().kind == Tok::RParen) {
      next();
      return args;
    }
    std::size_t p = peek().pos;
    args.emplace_back(term(), p);
    while (peek().kind == Tok::Comma) {
      next();
      p = peek().pos;
      args.emplace_back(term(), p);
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  void check_args(const std::string& name, const std::vector<int>& sorts,
                  const std::vector<std::pair<Term, std::size_t>>& args, std::size_t pos) {
    if (args.size() != sorts.size()) {
      throw ParseError(ParseError::Kind::Arity, pos,
                       name + " takes " + std::to_string(sorts.size()) + " argument(s), got " + std::to_string(args.size()));
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i].first->sort != sorts[i]) {
        throw ParseError(ParseError::Kind::SortMismatch, args[i].second,
                         "argument " + std::to_string(i + 1) + " of " + name + " has sort " +
                             sig_.sort_name(args[i].first->sort) + ", expected " + sig_.sort_name(sorts[i]));
      }
    }
  }

  static std::vector<Term> strip(std::vector<std::pair<Term, std::size_t>> args) {
    std::vector<Term> out;
    for (auto& a : args) out.push_back(std::move(a.first));
    return out;
  }

  Formula application() {
    const Token name = next();
    if (name.text == "d" || sig_.find_metric(name.text)) {
      auto args = term_list();
      if (args.size() != 2) throw ParseError(ParseError::Kind::Arity, name.pos, name.text + " takes 2 arguments");
      int sort = name.text == "d" ? args[0].first->sort : *sig_.find_metric(name.text);
      check_args(name.text, {sort, sort}, args, name.pos);
      return make_metric(sig_, args[0].first, args[1].first);
    }
    if (auto p = sig_.find_predicate(name.text)) {
      auto args = term_list();
      check_args(name.text, sig_.predicate(*p).arg_sorts, args, name.pos);
      return make_atomic(sig_, *p, strip(std::move(args)));
    }
    if (sig_.find_function(name.text)) {
      throw ParseError(ParseError::Kind::SortMismatch, name.pos,
                       "function symbol '" + name.text + "' used where a formula is expected");
    }
    throw ParseError(ParseError::Kind::UnknownSymbol, name.pos, "unknown predicate '" + name.text + "'");
  }

  Term term() {
    const Token t = peek();
    if (t.kind != Tok::Ident) syntax("expected a term, found " + describe(t));
    next();
    if (peek().kind == Tok::LParen) {
      auto f = sig_.find_function(t.text);
      if (!f) {
        if (sig_.find_predicate(t.text) || sig_.find_metric(t.text) || t.text == "d") {
          throw ParseError(ParseError::Kind::SortMismatch, t.pos, "predicate '" + t.text + "' used where a term is expected");
        }
        throw ParseError(ParseError::Kind::UnknownSymbol, t.pos, "unknown function '" + t.text + "'");
      }
      auto args = term_list();
      check_args(t.text, sig_.function(*f).arg_sorts, args, t.pos);
      return make_app(sig_, *f, strip(std::move(args)));
    }
    if (!is_var_name(t.text)) {
      if (sig_.find_function(t.text)) syntax("function '" + t.text + "' needs an argument list, e.g. " + t.text + "()");
      throw ParseError(ParseError::Kind::Syntax, t.pos, "variables must start with a lowercase letter: '" + t.text + "'");
    }
    if (peek().kind == Tok::Colon) {
      next();
      return make_var(t.text, sort_annotation());
    }
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->name == t.text) return make_var(t.text, it->sort);
    }
    if (sig_.sort_count() == 0) throw ParseError(ParseError::Kind::SortMismatch, t.pos, "signature has no sorts");
    return make_var(t.text, 0);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  std::vector<Variable> scope_;
};

// Printer

enum class Level { Formula, Sum, Prod };

class Printer {
 public:
  explicit Printer(const Signature& sig) : sig_(sig) {}

  std::string formula(const Formula& f, Level level) {
    using K = FormulaNode::Kind;
    switch (f->kind) {
      case K::Quantifier: {
        std::string s = f->quantifier == Quantifier::Sup ? "sup " : "inf ";
        s += f->var.name;
        if (f->var.sort != 0) s += ":" + sig_.sort_name(f->var.sort);
        s += ". ";
        scope_.push_back(f->var);
        s += formula(f->children[0], Level::Formula);
        scope_.pop_back();
        return level == Level::Formula ? s : "(" + s + ")";
      }
      case K::Atomic: return sig_.predicate(f->symbol).name + args(f->terms);
      case K::Metric: return sig_.metric_name(f->symbol) + args(f->terms);
      case K::ValueVar: return f->var.name;
      case K::Med: {
        std::string s = "med " + std::to_string(f->med_n) + "(";
        for (std::size_t i = 0; i < f->children.size(); ++i) {
          if (i) s += ", ";
          s += formula(f->children[i], Level::Formula);
        }
        return s + ")";
      }
      case K::Connective: break;
    }
    const auto& c = f->children;
    switch (f->connective) {
      case ConnectiveId::Const: return f->payload.to_string();
      case ConnectiveId::Neg: return "not " + formula(c[0], Level::Prod);
      case ConnectiveId::Half: return "half " + formula(c[0], Level::Prod);
      case ConnectiveId::Min: return "min(" + formula(c[0], Level::Formula) + ", " + formula(c[1], Level::Formula) + ")";
      case ConnectiveId::Max: return "max(" + formula(c[0], Level::Formula) + ", " + formula(c[1], Level::Formula) + ")";
      case ConnectiveId::AbsDiff: return "|" + formula(c[0], Level::Formula) + " - " + formula(c[1], Level::Formula) + "|";
      case ConnectiveId::Monus:
      case ConnectiveId::PlusTrunc: {
        std::string s = formula(c[0], Level::Sum) + (f->connective == ConnectiveId::Monus ? " -. " : " +. ") +
                        formula(c[1], Level::Prod);
        return level == Level::Prod ? "(" + s + ")" : s;
      }
    }
    return "";
  }

  std::string term(const Term& t) {
    if (t->kind == TermNode::Kind::Var) {
      int resolved = 0;
      for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
        if (it->name == t->var.name) {
          resolved = it->sort;
          break;
        }
      }
      if (resolved == t->var.sort) return t->var.name;
      return t->var.name + ":" + sig_.sort_name(t->var.sort);
    }
    return sig_.function(t->function).name + args(t->args);
  }

 private:
  std::string args(const std::vector<Term>& ts) {
    std::string s = "(";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i) s += ", ";
      s += term(ts[i]);
    }
    return s + ")";
  }

  const Signature& sig_;
  std::vector<Variable> scope_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) { return Parser(text, sig).parse_all(); }

std::string print_formula(const Formula& f, const Signature& sig) { return Printer(sig).formula(f, Level::Formula); }

std::string print_term(const Term& t, const Signature& sig) { return Printer(sig).term(t); }

}  // namespace contlogic
