#include "ordsum/notation.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace ordsum {

namespace {

enum class Tok { omega, number, plus, caret, star, lparen, rparen, lbracket, rbracket,
                 comma, semicolon, tilde, ident, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  Token expect(Tok kind, const char* what) {
    if (tok_.kind != kind) throw ParseError(std::string("expected ") + what, tok_.pos);
    return take();
  }

 private:
  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= text_.size()) {
      tok_ = Token{Tok::end, "", i_};
      return;
    }
    char c = text_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
      tok_ = Token{Tok::number, std::string(text_.substr(i_, j - i_)), i_};
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '-') {
      std::size_t j = i_;
      while (j < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '-'))
        ++j;
      std::string word(text_.substr(i_, j - i_));
      i_ = j;
      tok_ = Token{word == "w" ? Tok::omega : Tok::ident, std::move(word), tok_.pos};
      return;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '^': k = Tok::caret; break;
      case '*': k = Tok::star; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case '[': k = Tok::lbracket; break;
      case ']': k = Tok::rbracket; break;
      case ',': k = Tok::comma; break;
      case ';': k = Tok::semicolon; break;
      case '~': k = Tok::tilde; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }
    tok_ = Token{k, std::string(1, c), i_};
    ++i_;
  }

  std::string_view text_;
  std::size_t i_ = 0;
  Token tok_;
};

Nat parse_nat(const Token& t) {
  Nat n = 0;
  for (char c : t.text) n = n * 10 + (c - '0');
  return n;
}

Ordinal parse_ordinal_expr(Lexer& lx);

// factor := nat | "w" | "(" ordinal ")"
Ordinal parse_factor(Lexer& lx) {
  const Token& t = lx.peek();
  switch (t.kind) {
    case Tok::number: return Ordinal(parse_nat(lx.take()));
    case Tok::omega: {
      Token w = lx.take();
      if (lx.peek().kind == Tok::caret)
        throw ParseError("nested exponent needs parentheses", lx.peek().pos);
      return Ordinal::omega();
    }
    case Tok::lparen: {
      lx.take();
      Ordinal inner = parse_ordinal_expr(lx);
      lx.expect(Tok::rparen, "')'");
      return inner;
    }
    default: throw ParseError("expected exponent", t.pos);
  }
}

// term := "w" ["^" factor] ["*" nat] | nat
Ordinal parse_term(Lexer& lx) {
  const Token& t = lx.peek();
  if (t.kind == Tok::number) return Ordinal(parse_nat(lx.take()));
  if (t.kind != Tok::omega) throw ParseError("expected 'w' or a number", t.pos);
  lx.take();
  Ordinal exponent(std::uint64_t{1});
  if (lx.peek().kind == Tok::caret) {
    lx.take();
    exponent = parse_factor(lx);
  }
  Nat coeff = 1;
  if (lx.peek().kind == Tok::star) {
    lx.take();
    coeff = parse_nat(lx.expect(Tok::number, "coefficient"));
  }
  return Ordinal::omega_pow(exponent, coeff);
}

Ordinal parse_ordinal_expr(Lexer& lx) {
  Ordinal acc = parse_term(lx);
  while (lx.peek().kind == Tok::plus) {
    lx.take();
    acc = classical_add(acc, parse_term(lx));
  }
  return acc;
}

TreeDesc parse_tree_expr(Lexer& lx) {
  Token t = lx.take();
  if (t.kind != Tok::ident) throw ParseError("expected 'leaf' or 'node'", t.pos);
  if (t.text == "leaf") return TreeDesc::leaf();
  if (t.text != "node") throw ParseError("expected 'leaf' or 'node'", t.pos);
  lx.expect(Tok::lparen, "'('");
  std::vector<TreeDesc> children;
  std::vector<TreeDesc> repeated;
  if (lx.peek().kind != Tok::rparen) {
    for (;;) {
      if (lx.peek().kind == Tok::ident && lx.peek().text == "rep") {
        Token rep = lx.take();
        lx.expect(Tok::lparen, "'('");
        repeated.push_back(parse_tree_expr(lx));
        lx.expect(Tok::rparen, "')'");
        if (lx.peek().kind == Tok::comma)
          throw ParseError("rep(...) must be the last argument", lx.peek().pos);
        break;
      }
      children.push_back(parse_tree_expr(lx));
      if (lx.peek().kind != Tok::comma) break;
      lx.take();
    }
  }
  lx.expect(Tok::rparen, "')'");
  return TreeDesc::node(std::move(children), std::move(repeated));
}

void expect_end(Lexer& lx) {
  if (lx.peek().kind != Tok::end) throw ParseError("trailing input", lx.peek().pos);
}

}  // namespace

Ordinal parse_ordinal(std::string_view text) {
  Lexer lx(text);
  Ordinal a = parse_ordinal_expr(lx);
  expect_end(lx);
  return a;
}

std::string print_ordinal(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) out += " + ";
    first = false;
    if (t.exponent.is_zero()) {
      out += t.coefficient.str();
      continue;
    }
    out += "w";
    if (t.exponent != Ordinal(std::uint64_t{1})) {
      out += "^";
      if (t.exponent.is_finite()) {
        out += t.exponent.finite_value().str();
      } else if (t.exponent == Ordinal::omega()) {
        out += "w";
      } else {
        out += "(" + print_ordinal(t.exponent) + ")";
      }
    }
    if (t.coefficient != 1) out += "*" + t.coefficient.str();
  }
  return out;
}

OmegaSequence parse_sequence(std::string_view text) {
  Lexer lx(text);
  lx.expect(Tok::lbracket, "'['");
  std::vector<Ordinal> prefix;
  if (lx.peek().kind != Tok::semicolon) {
    for (;;) {
      prefix.push_back(parse_ordinal_expr(lx));
      if (lx.peek().kind != Tok::comma) break;
      lx.take();
    }
  }
  lx.expect(Tok::semicolon, "';'");
  Token kw = lx.expect(Tok::ident, "'const' or 'approach'");
  TailSpec tail;
  if (kw.text == "const") {
    tail = ConstTail{parse_ordinal_expr(lx)};
  } else if (kw.text == "approach") {
    Ordinal base = parse_ordinal_expr(lx);
    lx.expect(Tok::tilde, "'~'");
    Ordinal mu = parse_ordinal_expr(lx);
    if (classify(mu) != OrdinalKind::limit)
      throw ParseError("approach: mu must be a limit ordinal", kw.pos);
    tail = ApproachTail{std::move(base), std::move(mu)};
  } else {
    throw ParseError("expected 'const' or 'approach'", kw.pos);
  }
  lx.expect(Tok::rbracket, "']'");
  expect_end(lx);
  return OmegaSequence(std::move(prefix), std::move(tail));
}

std::string print_sequence(const OmegaSequence& s) {
  std::string out = "[";
  bool first = true;
  for (const auto& v : s.prefix()) {
    out += first ? "" : ", ";
    out += print_ordinal(v);
    first = false;
  }
  out += " ; ";
  if (const auto* c = std::get_if<ConstTail>(&s.tail())) {
    out += "const " + print_ordinal(c->value);
  } else {
    const auto& ap = std::get<ApproachTail>(s.tail());
    out += "approach " + print_ordinal(ap.base) + " ~ " + print_ordinal(ap.mu);
  }
  out += "]";
  return out;
}

TreeDesc parse_tree(std::string_view text) {
  Lexer lx(text);
  TreeDesc t = parse_tree_expr(lx);
  expect_end(lx);
  return t;
}

std::string print_tree(const TreeDesc& t) {
  if (t.is_leaf) return "leaf";
  std::string out = "node(";
  bool first = true;
  for (const auto& c : t.children) {
    out += first ? "" : ", ";
    out += print_tree(c);
    first = false;
  }
  if (!t.repeated.empty()) {
    out += first ? "" : ", ";
    out += "rep(" + print_tree(t.repeated.front()) + ")";
  }
  out += ")";
  return out;
}

}  // namespace ordsum
