#include "intstab/parser.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "intstab/eval.hpp"

namespace intstab {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, semi, comma, end };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c) || (c == '.' && i + 1 < s.size() && is_digit(s[i + 1]))) {
      while (i < s.size() && is_digit(s[i])) ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && is_digit(s[i])) ++i;
      }
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && is_digit(s[j])) {
          i = j;
          while (i < s.size() && is_digit(s[i])) ++i;
        }
      }
      out.push_back({Tok::number, start, std::string(s.substr(start, i - start))});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::ident, start, std::string(s.substr(start, i - start))});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case ';': kind = Tok::semi; break;
      case ',': kind = Tok::comma; break;
      default:
        throw ParseError(ErrorCode::syntax_error, i, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, start, std::string(1, c)});
    ++i;
  }
  // End of input is reported right after the last non-blank character.
  std::size_t end = s.size();
  while (end > 0 && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  out.push_back({Tok::end, end, ""});
  return out;
}

// "x12" -> 12 when the identifier is a variable of the given prefix.
std::optional<std::size_t> variable_index(const std::string& id, char prefix) {
  if (id.size() < 2 || id[0] != prefix) return std::nullopt;
  if (!std::all_of(id.begin() + 1, id.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::nullopt;
  }
  if (id[1] == '0' || id.size() > 7) return std::nullopt;
  return std::stoul(id.substr(1));
}

Op function_op(const std::string& id) {
  if (id == "sin") return Op::sin;
  if (id == "cos") return Op::cos;
  if (id == "exp") return Op::exp;
  if (id == "ln") return Op::ln;
  if (id == "sqr") return Op::sqr;
  if (id == "sqrt") return Op::sqrt;
  return Op::constant;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, ExprBuilder& b) : t_(std::move(tokens)), b_(b) {}

  std::vector<Expr> program() {
    std::vector<Expr> outputs;
    outputs.push_back(expression());
    while (peek().kind == Tok::semi) {
      ++pos_;
      if (peek().kind == Tok::end) break;
      outputs.push_back(expression());
    }
    if (peek().kind != Tok::end) fail("expected operator or ';'");
    return outputs;
  }

 private:
  const Token& peek() const { return t_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ErrorCode::syntax_error, peek().offset,
                     peek().kind == Tok::end ? what + ", found end of input" : what + ", found '" + peek().text + "'");
  }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    ++pos_;
  }

  Expr expression() {
    Expr e = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const Tok op = t_[pos_++].kind;
      Expr r = term();
      e = op == Tok::plus ? e + r : e - r;
    }
    return e;
  }

  Expr term() {
    Expr e = unary();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      const Tok op = t_[pos_++].kind;
      Expr r = unary();
      e = op == Tok::star ? e * r : e / r;
    }
    return e;
  }

  Expr unary() {
    if (peek().kind == Tok::minus) {
      ++pos_;
      return -unary();
    }
    if (peek().kind == Tok::plus) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (peek().kind != Tok::caret) return base;
    ++pos_;
    bool negative = false;
    if (peek().kind == Tok::minus) {
      negative = true;
      ++pos_;
    }
    const Token& tok = peek();
    if (tok.kind != Tok::number || tok.text.find_first_not_of("0123456789") != std::string::npos ||
        tok.text.size() > 6) {
      fail("expected integer exponent");
    }
    ++pos_;
    const int k = std::stoi(tok.text);
    return pow(base, negative ? -k : k);
  }

  Expr primary() {
    const Token tok = peek();
    switch (tok.kind) {
      case Tok::number:
        ++pos_;
        return b_.decimal(tok.text);
      case Tok::lparen: {
        ++pos_;
        Expr e = expression();
        expect(Tok::rparen, "')'");
        return e;
      }
      case Tok::ident:
        ++pos_;
        return identifier(tok);
      default:
        fail("expected operand");
    }
  }

  Expr identifier(const Token& tok) {
    if (const Op op = function_op(tok.text); op != Op::constant) {
      expect(Tok::lparen, "'(' after function name");
      Expr arg = expression();
      if (peek().kind == Tok::comma) {
        throw ParseError(ErrorCode::arity_error, peek().offset, tok.text + " takes exactly one argument");
      }
      expect(Tok::rparen, "')'");
      return b_.unary(op, arg);
    }
    if (tok.text == "pi") return b_.pi();
    if (auto i = variable_index(tok.text, 'x')) {
      if (*i > b_.state_dim()) {
        throw ParseError(ErrorCode::arity_error, tok.offset,
                         tok.text + " exceeds the state dimension " + std::to_string(b_.state_dim()));
      }
      return b_.state(*i - 1);
    }
    if (auto j = variable_index(tok.text, 'm')) {
      if (*j > b_.param_dim()) {
        throw ParseError(ErrorCode::arity_error, tok.offset,
                         tok.text + " exceeds the parameter dimension " + std::to_string(b_.param_dim()));
      }
      return b_.param(*j - 1);
    }
    throw ParseError(ErrorCode::unknown_identifier, tok.offset, "unknown identifier '" + tok.text + "'");
  }

  std::vector<Token> t_;
  ExprBuilder& b_;
  std::size_t pos_ = 0;
};

}  // namespace

VectorFunc parse(std::string_view text, const ParseOptions& options) {
  std::vector<Token> tokens = tokenize(text);
  std::size_t max_x = 0, max_m = 0;
  for (const Token& t : tokens) {
    if (t.kind != Tok::ident) continue;
    if (auto i = variable_index(t.text, 'x')) max_x = std::max(max_x, *i);
    if (auto j = variable_index(t.text, 'm')) max_m = std::max(max_m, *j);
  }
  ExprBuilder b(options.state_dim.value_or(max_x), options.param_dim.value_or(max_m));
  Parser parser(std::move(tokens), b);
  const std::vector<Expr> outputs = parser.program();
  return b.build(outputs);
}

Interval parse_constant(std::string_view text) {
  const VectorFunc f = parse(text, ParseOptions{0, 0});
  if (f.output_dim() != 1) throw Error(ErrorCode::syntax_error, "expected a single constant, got a list");
  return eval_natural(f, Box())[0];
}

}  // namespace intstab
