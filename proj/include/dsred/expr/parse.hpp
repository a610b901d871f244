#pragma once

// Small expression language shared by scalars, field expressions and bracket tables:
//   sums/differences, products '*', quotients '/', integer powers '^',
//   normal products ':A B C:' (right-nested), derivatives d(X) and d^n(X).
// Parsing builds an AST; a backend gives it meaning.

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dsred/error.hpp"
#include "dsred/scalar/poly.hpp"

namespace dsred::expr {

struct Node {
  enum Kind { Number, Symbol, Add, Sub, Neg, Mul, Div, Pow, NormalProduct, Deriv } kind;
  Rational number;
  std::string name;
  int exponent = 0;  // Pow exponent or derivative order
  std::size_t pos = 0;
  std::vector<std::shared_ptr<const Node>> kids;
};
using NodePtr = std::shared_ptr<const Node>;

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  NodePtr parse() {
    auto n = parse_sum();
    skip_ws();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, msg + " at offset " + std::to_string(i_) + " in '" + std::string(s_) + "'");
  }
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip_ws();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++i_;
      return true;
    }
    return false;
  }
  static NodePtr make(Node::Kind k, std::size_t pos, std::vector<NodePtr> kids = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->pos = pos;
    n->kids = std::move(kids);
    return n;
  }
  int parse_int() {
    skip_ws();
    bool neg = false;
    if (i_ < s_.size() && s_[i_] == '-') {
      neg = true;
      ++i_;
    }
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected integer");
    int v = std::stoi(std::string(s_.substr(st, i_ - st)));
    return neg ? -v : v;
  }

  NodePtr parse_sum() {
    skip_ws();
    std::size_t pos = i_;
    NodePtr lhs;
    if (eat('-')) {
      lhs = make(Node::Neg, pos, {parse_product()});
    } else {
      eat('+');
      lhs = parse_product();
    }
    for (;;) {
      pos = i_;
      if (eat('+'))
        lhs = make(Node::Add, pos, {lhs, parse_product()});
      else if (eat('-'))
        lhs = make(Node::Sub, pos, {lhs, parse_product()});
      else
        return lhs;
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_power();
    for (;;) {
      std::size_t pos = i_;
      if (eat('*'))
        lhs = make(Node::Mul, pos, {lhs, parse_power()});
      else if (eat('/'))
        lhs = make(Node::Div, pos, {lhs, parse_power()});
      else
        return lhs;
    }
  }

  NodePtr parse_power() {
    skip_ws();
    std::size_t pos = i_;
    if (eat('-')) return make(Node::Neg, pos, {parse_power()});
    NodePtr base = parse_atom();
    if (eat('^')) {
      auto n = make(Node::Pow, pos, {base});
      const_cast<Node&>(*n).exponent = parse_int();
      return n;
    }
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    std::size_t pos = i_;
    if (i_ >= s_.size()) fail("unexpected end of input");
    char ch = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      auto n = make(Node::Number, pos);
      const_cast<Node&>(*n).number = Rational(Integer(std::string(s_.substr(st, i_ - st))));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t st = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string name(s_.substr(st, i_ - st));
      if (name == "d" && (peek('(') || peek('^'))) {
        int order = 1;
        if (eat('^')) order = parse_int();
        if (order < 0) fail("negative derivative order");
        if (!eat('(')) fail("expected '(' after d");
        auto inner = parse_sum();
        if (!eat(')')) fail("expected ')'");
        auto n = make(Node::Deriv, pos, {inner});
        const_cast<Node&>(*n).exponent = order;
        return n;
      }
      auto n = make(Node::Symbol, pos);
      const_cast<Node&>(*n).name = name;
      return n;
    }
    if (ch == '(') {
      ++i_;
      auto n = parse_sum();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (ch == ':') {
      ++i_;
      std::vector<NodePtr> elems;
      while (!peek(':')) {
        if (i_ >= s_.size()) fail("unterminated normal product");
        elems.push_back(parse_atom());
      }
      ++i_;
      if (elems.empty()) fail("empty normal product");
      return make(Node::NormalProduct, pos, std::move(elems));
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

inline NodePtr parse(std::string_view text) { return Parser(text).parse(); }

// Backend interface: number, symbol, add, sub, neg, mul, div, pow, normal_product, derive.
template <class B>
auto evaluate(const Node& n, B& b) -> decltype(b.number(Rational())) {
  switch (n.kind) {
    case Node::Number: return b.number(n.number);
    case Node::Symbol: return b.symbol(n.name, n.pos);
    case Node::Add: return b.add(evaluate(*n.kids[0], b), evaluate(*n.kids[1], b));
    case Node::Sub: return b.sub(evaluate(*n.kids[0], b), evaluate(*n.kids[1], b));
    case Node::Neg: return b.neg(evaluate(*n.kids[0], b));
    case Node::Mul: return b.mul(evaluate(*n.kids[0], b), evaluate(*n.kids[1], b));
    case Node::Div: return b.div(evaluate(*n.kids[0], b), evaluate(*n.kids[1], b));
    case Node::Pow: return b.pow(evaluate(*n.kids[0], b), n.exponent);
    case Node::NormalProduct: {
      std::vector<decltype(b.number(Rational()))> v;
      for (auto& k : n.kids) v.push_back(evaluate(*k, b));
      return b.normal_product(std::move(v));
    }
    case Node::Deriv: return b.derive(evaluate(*n.kids[0], b), n.exponent);
  }
  throw Error(ErrorCode::SyntaxError, "bad node");
}

}  // namespace dsred::expr
