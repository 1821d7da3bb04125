#include "tps/exprlang.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace tps::expr {

namespace {

std::string with_pos(const std::string& msg, int pos) {
  return msg + " (column " + std::to_string(pos) + ")";
}

}  // namespace

ParseError::ParseError(const std::string& msg, int position)
    : Error(with_pos(msg, position)), pos(position) {}

EvalError::EvalError(const std::string& msg, int position)
    : Error(with_pos(msg, position)), pos(position) {}

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  size_t i = 0;
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_ident = [&](char c) { return is_ident_start(c) || is_digit(c); };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    int pos = static_cast<int>(i);
    if (is_digit(c) || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
      size_t j = i;
      while (j < src.size() && is_digit(src[j])) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && is_digit(src[j])) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && is_digit(src[k])) {
          ++k;
          while (k < src.size() && is_digit(src[k])) ++k;
          j = k;  // exponent only consumed when complete
        }
      }
      std::string text = src.substr(i, j - i);
      out.push_back({TokenKind::number, text, std::strtod(text.c_str(), nullptr), pos});
      i = j;
      continue;
    }
    if (is_ident_start(c)) {
      size_t j = i;
      while (j < src.size() && is_ident(src[j])) ++j;
      out.push_back({TokenKind::ident, src.substr(i, j - i), 0, pos});
      i = j;
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '+': kind = TokenKind::plus; break;
      case '-': kind = TokenKind::minus; break;
      case '*': kind = TokenKind::star; break;
      case '/': kind = TokenKind::slash; break;
      case '^': kind = TokenKind::caret; break;
      case '(': kind = TokenKind::lparen; break;
      case ')': kind = TokenKind::rparen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
    out.push_back({kind, std::string(1, c), 0, pos});
    ++i;
  }
  out.push_back({TokenKind::end, "", 0, static_cast<int>(src.size())});
  return out;
}

namespace {

Ast make_node(Node node) { return std::make_shared<const Node>(std::move(node)); }

class Parser {
 public:
  Parser(std::vector<Token> tokens, const std::vector<std::string>& variables)
      : tokens_(std::move(tokens)), variables_(variables) {}

  Ast run() {
    Ast e = expression();
    if (peek().kind != TokenKind::end) {
      throw ParseError("unexpected trailing input", peek().pos);
    }
    return e;
  }

 private:
  const Token& peek() const { return tokens_[idx_]; }
  const Token& advance() { return tokens_[idx_++]; }
  bool accept(TokenKind k) {
    if (peek().kind == k) {
      ++idx_;
      return true;
    }
    return false;
  }

  // expr := term (('+'|'-') term)*
  Ast expression() {
    Ast left = term();
    for (;;) {
      int pos = peek().pos;
      if (accept(TokenKind::plus)) {
        left = make_node({NodeKind::add, 0, "", -1, left, term(), pos});
      } else if (accept(TokenKind::minus)) {
        left = make_node({NodeKind::sub, 0, "", -1, left, term(), pos});
      } else {
        return left;
      }
    }
  }

  // term := unary (('*'|'/') unary)*
  Ast term() {
    Ast left = unary();
    for (;;) {
      int pos = peek().pos;
      if (accept(TokenKind::star)) {
        left = make_node({NodeKind::mul, 0, "", -1, left, unary(), pos});
      } else if (accept(TokenKind::slash)) {
        left = make_node({NodeKind::div, 0, "", -1, left, unary(), pos});
      } else {
        return left;
      }
    }
  }

  // unary := '-' unary | power; minus binds looser than '^'
  Ast unary() {
    if (peek().kind == TokenKind::minus) {
      int pos = advance().pos;
      return make_node({NodeKind::neg, 0, "", -1, unary(), nullptr, pos});
    }
    return power();
  }

  // power := atom ('^' unary)?  — right associative via the unary recursion
  Ast power() {
    Ast base = atom();
    if (peek().kind == TokenKind::caret) {
      int pos = advance().pos;
      return make_node({NodeKind::pow, 0, "", -1, base, unary(), pos});
    }
    return base;
  }

  Ast atom() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::number: {
        advance();
        return make_node({NodeKind::number, t.number, "", -1, nullptr, nullptr, t.pos});
      }
      case TokenKind::lparen: {
        advance();
        Ast inner = expression();
        if (!accept(TokenKind::rparen)) {
          throw ParseError("expected ')'", peek().pos);
        }
        return inner;
      }
      case TokenKind::ident: {
        advance();
        if (accept(TokenKind::lparen)) {
          if (t.text != "exp" && t.text != "ln" && t.text != "sqrt") {
            throw ParseError("unknown function '" + t.text + "' (available: exp, ln, sqrt)",
                             t.pos);
          }
          Ast arg = expression();
          if (!accept(TokenKind::rparen)) {
            throw ParseError("expected ')'", peek().pos);
          }
          return make_node({NodeKind::call, 0, t.text, -1, arg, nullptr, t.pos});
        }
        for (size_t s = 0; s < variables_.size(); ++s) {
          if (variables_[s] == t.text) {
            return make_node(
                {NodeKind::variable, 0, t.text, static_cast<int>(s), nullptr, nullptr, t.pos});
          }
        }
        throw ParseError("unknown variable '" + t.text + "'", t.pos);
      }
      default:
        throw ParseError("expected a number, variable, function call, or '('", t.pos);
    }
  }

  std::vector<Token> tokens_;
  const std::vector<std::string>& variables_;
  size_t idx_ = 0;
};

int precedence(const Node* n) {
  switch (n->kind) {
    case NodeKind::add:
    case NodeKind::sub:
      return 1;
    case NodeKind::mul:
    case NodeKind::div:
      return 2;
    case NodeKind::neg:
      return 3;
    case NodeKind::pow:
      return 4;
    default:
      return 6;
  }
}

void print_node(const Node* n, std::string& out);

void print_child(const Node* child, bool parens, std::string& out) {
  if (parens) out += '(';
  print_node(child, out);
  if (parens) out += ')';
}

void print_node(const Node* n, std::string& out) {
  switch (n->kind) {
    case NodeKind::number: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", n->number);
      out += buf;
      return;
    }
    case NodeKind::variable:
      out += n->name;
      return;
    case NodeKind::call:
      out += n->name;
      out += '(';
      print_node(n->a.get(), out);
      out += ')';
      return;
    case NodeKind::neg:
      out += '-';
      print_child(n->a.get(), precedence(n->a.get()) < 3, out);
      return;
    case NodeKind::add:
    case NodeKind::sub: {
      print_child(n->a.get(), precedence(n->a.get()) < 1, out);
      out += n->kind == NodeKind::add ? '+' : '-';
      print_child(n->b.get(), precedence(n->b.get()) <= 1, out);
      return;
    }
    case NodeKind::mul:
    case NodeKind::div: {
      print_child(n->a.get(), precedence(n->a.get()) < 2, out);
      out += n->kind == NodeKind::mul ? '*' : '/';
      print_child(n->b.get(), precedence(n->b.get()) <= 2, out);
      return;
    }
    case NodeKind::pow: {
      print_child(n->a.get(), precedence(n->a.get()) <= 4, out);
      out += '^';
      print_child(n->b.get(), precedence(n->b.get()) < 3, out);
      return;
    }
  }
}

}  // namespace

Ast parse(const std::string& src, const std::vector<std::string>& variables) {
  return Parser(tokenize(src), variables).run();
}

std::string to_string(const Ast& ast) {
  std::string out;
  print_node(ast.get(), out);
  return out;
}

bool structurally_equal(const Ast& a, const Ast& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::number:
      return a->number == b->number;
    case NodeKind::variable:
      return a->name == b->name && a->slot == b->slot;
    case NodeKind::call:
      return a->name == b->name && structurally_equal(a->a, b->a);
    case NodeKind::neg:
      return structurally_equal(a->a, b->a);
    default:
      return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
  }
}

bool is_constant(const Ast& ast) {
  if (!ast) return true;
  if (ast->kind == NodeKind::variable) return false;
  return is_constant(ast->a) && is_constant(ast->b);
}

Ast substitute(const Ast& ast, const std::map<std::string, Ast>& replacements) {
  if (!ast) return ast;
  if (ast->kind == NodeKind::variable) {
    auto it = replacements.find(ast->name);
    return it == replacements.end() ? ast : it->second;
  }
  if (ast->kind == NodeKind::number) return ast;
  Node copy = *ast;
  copy.a = substitute(ast->a, replacements);
  copy.b = substitute(ast->b, replacements);
  return std::make_shared<const Node>(std::move(copy));
}

ScalarField to_field(const Ast& ast) {
  return ScalarField::from([ast](auto xs) {
    using T = std::decay_t<decltype(xs[0])>;
    return evaluate<T>(ast, {xs.data(), xs.size()});
  });
}

std::vector<std::string> darboux_variables(int n) { return DarbouxChart{n}.coordinate_names(); }

Ast parse_darboux(const std::string& src, int n) { return parse(src, darboux_variables(n)); }

namespace {

Ast var_node(const std::string& name, int slot) {
  return make_node({NodeKind::variable, 0, name, slot, nullptr, nullptr, 0});
}

Ast num_node(double v) { return make_node({NodeKind::number, v, "", -1, nullptr, nullptr, 0}); }

Ast neg_node(Ast a) { return make_node({NodeKind::neg, 0, "", -1, std::move(a), nullptr, 0}); }

Ast div_node(Ast a, Ast b) {
  return make_node({NodeKind::div, 0, "", -1, std::move(a), std::move(b), 0});
}

void require_two_dof(int n, const char* what) {
  if (n < 2) throw Error(std::string(what) + " requires n >= 2 (closed-system slots)");
}

}  // namespace

std::map<std::string, Ast> energy_aliases(int n) {
  require_two_dof(n, "energy alias table");
  DarbouxChart chart{n};
  return {
      {"u", var_node("w", chart.index_w())},
      {"s", var_node("q1", chart.index_q(0))},
      {"v", var_node("q2", chart.index_q(1))},
      {"T", neg_node(var_node("p1", chart.index_p(0)))},
      {"p", var_node("p2", chart.index_p(1))},
  };
}

std::map<std::string, Ast> entropy_aliases(int n) {
  require_two_dof(n, "entropy alias table");
  DarbouxChart chart{n};
  return {
      {"s", var_node("w", chart.index_w())},
      {"u", var_node("q1", chart.index_q(0))},
      {"v", var_node("q2", chart.index_q(1))},
      {"T", neg_node(div_node(num_node(1), var_node("p1", chart.index_p(0))))},
      {"p", div_node(var_node("p2", chart.index_p(1)), var_node("p1", chart.index_p(0)))},
  };
}

Ast parse_with_representation(const std::string& src, int n, const std::string& rep) {
  std::map<std::string, Ast> aliases;
  if (rep == "energy") {
    aliases = energy_aliases(n);
  } else if (rep == "entropy") {
    aliases = entropy_aliases(n);
  } else {
    throw Error("unknown representation '" + rep + "' (expected energy or entropy)");
  }
  std::vector<std::string> names = darboux_variables(n);
  for (const auto& [name, replacement] : aliases) {
    (void)replacement;
    names.push_back(name);
  }
  return substitute(parse(src, names), aliases);
}

}  // namespace tps::expr
