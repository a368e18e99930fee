#include "bnloc/expr.hpp"

#include "bnloc/errors.hpp"

#include <cctype>
#include <limits>

namespace bnloc {

namespace mp = boost::multiprecision;

namespace {

// ---------------------------------------------------------------- lexing

struct Token {
  enum class Type { Number, Ident, Op, End };
  Type type;
  std::string text;
  std::size_t pos;
};

std::string normalize_unicode(const std::string& text) {
  static const std::pair<std::string, std::string> table[] = {
      {"⟨", "<"}, {"⟩", ">"}, {"−", "-"}, {"ẽ", "et"}, {"·", "*"}};
  std::string out = text;
  for (const auto& [from, to] : table) {
    for (std::size_t at = out.find(from); at != std::string::npos; at = out.find(from, at + to.size()))
      out.replace(at, from.size(), to);
  }
  return out;
}

std::vector<Token> tokenize(const std::string& raw) {
  std::string s = normalize_unicode(raw);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Type::Number, s.substr(i, j - i), i});
      i = j;
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Type::Ident, s.substr(i, j - i), i});
      i = j;
    } else if (std::string("+-*/^()<>,").find(static_cast<char>(c)) != std::string::npos) {
      out.push_back({Token::Type::Op, std::string(1, static_cast<char>(c)), i});
      ++i;
    } else {
      fail(ErrorCode::ParseError, "unexpected character '" + std::string(1, static_cast<char>(c)) + "' at offset " +
                                      std::to_string(i) + " in '" + raw + "'");
    }
  }
  out.push_back({Token::Type::End, "", s.size()});
  return out;
}

// ---------------------------------------------------------------- parsing

class Parser {
 public:
  Parser(const std::string& text) : text_(text), tokens_(tokenize(text)) {}

  ExprNode parse() {
    ExprNode node = expr();
    if (peek().type != Token::Type::End) error("unexpected '" + peek().text + "'");
    return node;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool is_op(const char* op) const { return peek().type == Token::Type::Op && peek().text == op; }
  void expect(const char* op) {
    if (!is_op(op)) error(std::string("expected '") + op + "'");
    ++pos_;
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, what + " at offset " + std::to_string(peek().pos) + " in '" + text_ + "'");
  }

  static ExprNode binary(ExprNode::Kind kind, ExprNode a, ExprNode b) {
    ExprNode n{kind, 0, "", 0, {}};
    n.children.push_back(std::move(a));
    n.children.push_back(std::move(b));
    return n;
  }

  ExprNode expr() {
    ExprNode left = term();
    while (is_op("+") || is_op("-")) {
      bool plus = is_op("+");
      ++pos_;
      left = binary(plus ? ExprNode::Kind::Add : ExprNode::Kind::Sub, std::move(left), term());
    }
    return left;
  }

  bool starts_atom() const {
    auto t = peek().type;
    return t == Token::Type::Number || t == Token::Type::Ident || is_op("(") || is_op("<");
  }

  ExprNode term() {
    ExprNode left = unary();
    for (;;) {
      if (is_op("*") || is_op("/")) {
        bool mul = is_op("*");
        ++pos_;
        left = binary(mul ? ExprNode::Kind::Mul : ExprNode::Kind::Div, std::move(left), unary());
      } else if (starts_atom()) {
        left = binary(ExprNode::Kind::Mul, std::move(left), power());
      } else {
        return left;
      }
    }
  }

  ExprNode unary() {
    if (is_op("-")) {
      ++pos_;
      ExprNode n{ExprNode::Kind::Neg, 0, "", 0, {}};
      n.children.push_back(unary());
      return n;
    }
    if (is_op("+")) {
      ++pos_;
      return unary();
    }
    return power();
  }

  ExprNode power() {
    ExprNode base = atom();
    if (!is_op("^")) return base;
    ++pos_;
    bool paren = is_op("(");
    if (paren) ++pos_;
    bool negative = false;
    if (is_op("-") || is_op("+")) {
      negative = is_op("-");
      ++pos_;
    }
    if (peek().type != Token::Type::Number) error("expected an integer exponent");
    if (peek().text.size() > 6) error("exponent too large");
    int k = std::stoi(peek().text);
    ++pos_;
    if (paren) expect(")");
    ExprNode n{ExprNode::Kind::Pow, 0, "", negative ? -k : k, {}};
    n.children.push_back(std::move(base));
    return n;
  }

  ExprNode atom() {
    const Token& t = peek();
    if (t.type == Token::Type::Number) {
      ++pos_;
      return {ExprNode::Kind::Number, Integer(t.text), "", 0, {}};
    }
    if (t.type == Token::Type::Ident) {
      ++pos_;
      return {ExprNode::Kind::Symbol, 0, t.text, 0, {}};
    }
    if (is_op("(")) {
      ++pos_;
      ExprNode inner = expr();
      expect(")");
      return inner;
    }
    if (is_op("<")) {
      ++pos_;
      ExprNode lit{ExprNode::Kind::Witt, 0, "", 0, {}};
      if (is_op(">")) {
        ++pos_;
        return lit;
      }
      lit.children.push_back(expr());
      while (is_op(",")) {
        ++pos_;
        lit.children.push_back(expr());
      }
      expect(">");
      return lit;
    }
    error(t.type == Token::Type::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }

  std::string text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

[[noreturn]] void eval_error(const std::string& what) { fail(ErrorCode::ParseError, what); }

}  // namespace

ExprNode parse_expression(const std::string& text) { return Parser(text).parse(); }

// ---------------------------------------------------------------- scalars

Rational eval_scalar(const ExprNode& n, const Bindings& vars) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Number: return Rational(n.number);
    case K::Symbol: {
      auto it = vars.find(n.symbol);
      if (it == vars.end()) eval_error("unbound variable '" + n.symbol + "'");
      return it->second;
    }
    case K::Witt: eval_error("a Witt literal cannot be a form entry");
    case K::Add: return eval_scalar(n.children[0], vars) + eval_scalar(n.children[1], vars);
    case K::Sub: return eval_scalar(n.children[0], vars) - eval_scalar(n.children[1], vars);
    case K::Neg: return -eval_scalar(n.children[0], vars);
    case K::Mul: return eval_scalar(n.children[0], vars) * eval_scalar(n.children[1], vars);
    case K::Div: {
      Rational d = eval_scalar(n.children[1], vars);
      if (d == 0) fail(ErrorCode::ZeroElement, "division by zero");
      return eval_scalar(n.children[0], vars) / d;
    }
    case K::Pow: {
      Rational base = eval_scalar(n.children[0], vars);
      if (n.exponent < 0 && base == 0) fail(ErrorCode::ZeroElement, "zero to a negative power");
      Rational out = 1;
      for (int i = 0; i < std::abs(n.exponent); ++i) out *= base;
      return n.exponent < 0 ? Rational(1 / out) : out;
    }
  }
  eval_error("bad expression");
}

// ---------------------------------------------------------------- Witt expressions

namespace {

WittClass witt_literal(const ExprNode& n, const FieldSpec& field, const Bindings& vars) {
  std::vector<Rational> entries;
  for (const auto& child : n.children) entries.push_back(eval_scalar(child, vars));
  return witt_class(QForm(field, entries));
}

}  // namespace

WittClass eval_witt(const ExprNode& n, const FieldSpec& field, const Bindings& vars) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Number: return WittClass::integer(field, n.number);
    case K::Symbol: eval_error("unknown symbol '" + n.symbol + "' in a Witt expression");
    case K::Witt: return witt_literal(n, field, vars);
    case K::Add: return eval_witt(n.children[0], field, vars) + eval_witt(n.children[1], field, vars);
    case K::Sub: return eval_witt(n.children[0], field, vars) - eval_witt(n.children[1], field, vars);
    case K::Neg: return -eval_witt(n.children[0], field, vars);
    case K::Mul: return eval_witt(n.children[0], field, vars) * eval_witt(n.children[1], field, vars);
    case K::Div: eval_error("division is not defined in the Witt ring");
    case K::Pow: {
      if (n.exponent < 0) eval_error("negative power in the Witt ring");
      WittClass base = eval_witt(n.children[0], field, vars);
      WittClass out = WittClass::one(field);
      for (int i = 0; i < n.exponent; ++i) out = out * base;
      return out;
    }
  }
  eval_error("bad expression");
}

WittClass eval_witt_command(const std::string& text, const FieldSpec& field) {
  auto semi = text.find(';');
  std::string body = text.substr(0, semi);
  Bindings vars;
  if (semi != std::string::npos) {
    std::string rest = text.substr(semi + 1);
    for (char& c : rest)
      if (c == ';') c = ',';
    std::size_t start = 0;
    while (start <= rest.size()) {
      std::size_t end = rest.find(',', start);
      std::string item = rest.substr(start, end == std::string::npos ? std::string::npos : end - start);
      start = end == std::string::npos ? rest.size() + 1 : end + 1;
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) fail(ErrorCode::ParseError, "binding '" + item + "' needs the form name=value");
      std::string name = item.substr(0, eq);
      name.erase(0, name.find_first_not_of(" \t"));
      name.erase(name.find_last_not_of(" \t") + 1);
      ExprNode value = parse_expression(item.substr(eq + 1));
      vars[name] = eval_scalar(value, vars);
    }
  }
  return eval_witt(parse_expression(body), field, vars);
}

// ---------------------------------------------------------------- ring expressions

namespace {

bool ring_is_zero(const RingValue& v) {
  return std::visit([](const auto& x) { return x.is_zero(); }, v);
}

RingValue ring_add(const RingValue& a, const RingValue& b) {
  if (a.index() == b.index()) {
    if (a.index() == 0) return std::get<BNElem>(a) + std::get<BNElem>(b);
    return std::get<TwistedElem>(a) + std::get<TwistedElem>(b);
  }
  if (ring_is_zero(a)) return b;
  if (ring_is_zero(b)) return a;
  fail(ErrorCode::TagMismatch, "cannot add an untwisted and a twisted element");
}

RingValue ring_neg(const RingValue& a) {
  return std::visit([](const auto& x) -> RingValue { return -x; }, a);
}

RingValue ring_mul(const RingValue& a, const RingValue& b, const BNElem& etilde_square) {
  if (a.index() == 0 && b.index() == 0) return std::get<BNElem>(a) * std::get<BNElem>(b);
  if (a.index() == 0) return twisted_scalar(std::get<BNElem>(a), std::get<TwistedElem>(b));
  if (b.index() == 0) return twisted_scalar(std::get<BNElem>(b), std::get<TwistedElem>(a));
  return twisted_product(std::get<TwistedElem>(a), std::get<TwistedElem>(b), etilde_square);
}

struct RingEval {
  const EulerTable& table;
  int truncation;
  BNElem etilde_square;

  RingValue operator()(const ExprNode& n) const {
    using K = ExprNode::Kind;
    const FieldSpec& k = table.field();
    const CoeffTheory& th = table.theory();
    switch (n.kind) {
      case K::Number: return BNElem::constant(th, WittClass::integer(k, n.number), truncation);
      case K::Witt: return BNElem::constant(th, witt_literal(n, k, {}), truncation);
      case K::Symbol:
        if (n.symbol == "e") return BNElem::e(th, k, truncation);
        if (n.symbol == "q0") return BNElem::q0(th, k, truncation);
        if (n.symbol == "et" || n.symbol == "etilde") return TwistedElem::etilde(th, k, truncation);
        if (n.symbol == "q1") return TwistedElem::q1(th, k, truncation);
        eval_error("unknown symbol '" + n.symbol + "' (expected e, q0, et or q1)");
      case K::Add: return ring_add((*this)(n.children[0]), (*this)(n.children[1]));
      case K::Sub: return ring_add((*this)(n.children[0]), ring_neg((*this)(n.children[1])));
      case K::Neg: return ring_neg((*this)(n.children[0]));
      case K::Mul: return ring_mul((*this)(n.children[0]), (*this)(n.children[1]), etilde_square);
      case K::Div: eval_error("division is not defined in the ring; localize first");
      case K::Pow: {
        if (n.exponent < 0) eval_error("negative power in the ring; localize first");
        RingValue base = (*this)(n.children[0]);
        RingValue out = BNElem::constant(th, WittClass::one(k), truncation);
        for (int i = 0; i < n.exponent; ++i) out = ring_mul(out, base, etilde_square);
        return out;
      }
    }
    eval_error("bad expression");
  }
};

}  // namespace

RingValue eval_ring(const ExprNode& node, const EulerTable& table, int truncation) {
  PowerSeries sq(table.field(), truncation);
  for (const auto& [i, c] : table.etilde_square())
    if (i < truncation) sq = sq.with_coefficient(i, c);
  RingEval ev{table, truncation, BNElem(table.theory(), sq, WittClass::zero(table.field()))};
  return ev(node);
}

std::string to_string(const RingValue& v) {
  return std::visit([](const auto& x) { return x.to_string(); }, v);
}

// ---------------------------------------------------------------- Laurent literals

namespace {

LaurentLiteral lit_add(const LaurentLiteral& a, const LaurentLiteral& b) {
  LaurentLiteral out = a;
  if (a.tag != b.tag) {
    if (a.is_zero())
      out.tag = b.tag;
    else if (!b.is_zero())
      fail(ErrorCode::TagMismatch, "cannot add an untwisted and a twisted term");
  }
  for (const auto& [k, c] : b.terms) {
    auto it = out.terms.find(k);
    WittFraction sum = it == out.terms.end() ? c : it->second + c;
    if (sum.is_zero())
      out.terms.erase(k);
    else
      out.terms.insert_or_assign(k, sum);
  }
  return out;
}

LaurentLiteral lit_neg(LaurentLiteral a) {
  for (auto& [k, c] : a.terms) c = -c;
  return a;
}

LaurentLiteral lit_mul(const LaurentLiteral& a, const LaurentLiteral& b) {
  if (a.tag == TwistParity::Twisted && b.tag == TwistParity::Twisted)
    eval_error("a class literal may contain et at most once");
  LaurentLiteral out;
  out.tag = a.tag ^ b.tag;
  for (const auto& [i, x] : a.terms)
    for (const auto& [j, y] : b.terms) {
      LaurentLiteral term;
      term.terms.emplace(i + j, x * y);
      term.tag = out.tag;
      out = lit_add(out, term);
    }
  return out;
}

LaurentLiteral lit_constant(const WittFraction& c) {
  LaurentLiteral out;
  if (!c.is_zero()) out.terms.emplace(0, c);
  return out;
}

bool has_symbols(const ExprNode& n) {
  if (n.kind == ExprNode::Kind::Symbol || n.kind == ExprNode::Kind::Witt) return true;
  for (const auto& c : n.children)
    if (has_symbols(c)) return true;
  return false;
}

LaurentLiteral eval_laurent(const ExprNode& n, const FieldSpec& field) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Number: return lit_constant(WittFraction::rational(field, Rational(n.number)));
    case K::Witt: return lit_constant(WittFraction::of(witt_literal(n, field, {})));
    case K::Symbol: {
      LaurentLiteral out;
      if (n.symbol == "e") {
        out.terms.emplace(1, WittFraction::of(WittClass::one(field)));
      } else if (n.symbol == "et" || n.symbol == "etilde") {
        out.tag = TwistParity::Twisted;
        out.terms.emplace(0, WittFraction::of(WittClass::one(field)));
      } else {
        eval_error("unknown symbol '" + n.symbol + "' in a class literal (expected e or et)");
      }
      return out;
    }
    case K::Add: return lit_add(eval_laurent(n.children[0], field), eval_laurent(n.children[1], field));
    case K::Sub: return lit_add(eval_laurent(n.children[0], field), lit_neg(eval_laurent(n.children[1], field)));
    case K::Neg: return lit_neg(eval_laurent(n.children[0], field));
    case K::Mul: return lit_mul(eval_laurent(n.children[0], field), eval_laurent(n.children[1], field));
    case K::Div: {
      const ExprNode& d = n.children[1];
      LaurentLiteral num = eval_laurent(n.children[0], field);
      if (!has_symbols(d)) {
        Rational r = eval_scalar(d);
        if (r == 0) fail(ErrorCode::ZeroElement, "division by zero");
        LaurentLiteral out = num;
        for (auto& [k, c] : out.terms) c = WittFraction{c.numerator.times(mp::denominator(r)), c.denominator}.divided_by(mp::numerator(r));
        return out;
      }
      int shift = 0;
      if (d.kind == K::Symbol && d.symbol == "e")
        shift = 1;
      else if (d.kind == K::Pow && d.children[0].kind == K::Symbol && d.children[0].symbol == "e")
        shift = d.exponent;
      else
        eval_error("a class literal may only be divided by a rational constant or a power of e");
      LaurentLiteral out;
      out.tag = num.tag;
      for (const auto& [k, c] : num.terms) out.terms.emplace(k - shift, c);
      return out;
    }
    case K::Pow: {
      const ExprNode& b = n.children[0];
      if (b.kind == K::Symbol && b.symbol == "e") {
        LaurentLiteral out;
        out.terms.emplace(n.exponent, WittFraction::of(WittClass::one(field)));
        return out;
      }
      if (n.exponent < 0) eval_error("only e may carry a negative exponent in a class literal");
      LaurentLiteral base = eval_laurent(b, field);
      LaurentLiteral out = lit_constant(WittFraction::of(WittClass::one(field)));
      for (int i = 0; i < n.exponent; ++i) out = lit_mul(out, base);
      return out;
    }
  }
  eval_error("bad expression");
}

}  // namespace

LaurentLiteral parse_laurent_literal(const std::string& text, const FieldSpec& field) {
  return eval_laurent(parse_expression(text), field);
}

std::string to_string(const WittFraction& f) {
  std::string num = f.numerator.to_string();
  if (f.denominator == 1) return num;
  bool compound = num.find_first_of("+<") != std::string::npos;
  return (compound ? "(" + num + ")" : num) + "/" + to_string(f.denominator);
}

std::string to_string(const LaurentLiteral& lit) {
  std::string out;
  bool twisted = lit.tag == TwistParity::Twisted;
  for (const auto& [k, c] : lit.terms) {
    if (c.is_zero()) continue;
    std::string coef = to_string(c);
    if (coef.find('+') != std::string::npos) coef = "(" + coef + ")";
    std::string mono = k == 0 ? "" : (k == 1 ? "e" : "e^" + std::to_string(k));
    if (twisted) mono = mono.empty() ? "et" : mono + "*et";
    std::string term;
    if (mono.empty())
      term = coef;
    else if (coef == "1")
      term = mono;
    else if (coef == "-1")
      term = "-" + mono;
    else
      term = coef + "*" + mono;
    out += out.empty() ? term : " + " + term;
  }
  if (out.empty()) return twisted ? "0*et" : "0";
  return out;
}

}  // namespace bnloc
