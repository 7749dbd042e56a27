#include "ecj/expr.hpp"

#include <cctype>
#include <string>

#include "ecj/error.hpp"

namespace ecj {

namespace {

struct PolyOps {
  RegistryPtr reg;
  OrderPtr order;
  using Value = MPoly;
  MPoly constant(const Rational& c) const { return MPoly::constant(reg, c, order); }
  MPoly variable(std::size_t v) const { return MPoly::variable(reg, v, order); }
  MPoly add(const MPoly& a, const MPoly& b) const { return a + b; }
  MPoly sub(const MPoly& a, const MPoly& b) const { return a - b; }
  MPoly mul(const MPoly& a, const MPoly& b) const { return a * b; }
  // Empty string on success, otherwise the error message.
  std::string div(MPoly& a, const MPoly& b) const {
    if (!b.is_constant()) return "division by a non-constant polynomial";
    if (b.is_zero()) return "division by zero";
    a = a.scaled(1 / b.constant_value());
    return {};
  }
  MPoly neg(const MPoly& a) const { return -a; }
  MPoly pow(const MPoly& a, unsigned e) const { return a.pow(e); }
};

struct RatOps {
  RegistryPtr reg;
  using Value = RatFunc;
  RatFunc constant(const Rational& c) const { return RatFunc::constant(reg, c); }
  RatFunc variable(std::size_t v) const { return RatFunc(MPoly::variable(reg, v)); }
  RatFunc add(const RatFunc& a, const RatFunc& b) const { return a + b; }
  RatFunc sub(const RatFunc& a, const RatFunc& b) const { return a - b; }
  RatFunc mul(const RatFunc& a, const RatFunc& b) const { return a * b; }
  std::string div(RatFunc& a, const RatFunc& b) const {
    if (b.is_zero()) return "division by zero";
    a = a / b;
    return {};
  }
  RatFunc neg(const RatFunc& a) const { return -a; }
  RatFunc pow(const RatFunc& a, unsigned e) const { return a.pow(int(e)); }
};

template <class Ops>
class Parser {
 public:
  using Value = typename Ops::Value;

  Parser(std::string_view text, const RegistryPtr& reg, int line, Ops ops)
      : text_(text), reg_(reg), line_(line), ops_(std::move(ops)) {}

  Value parse() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty expression");
    Value v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, int(pos_) + 1, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value expr() {
    Value acc = term();
    while (true) {
      if (accept('+')) {
        acc = ops_.add(acc, term());
      } else if (accept('-')) {
        acc = ops_.sub(acc, term());
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = unary();
    while (true) {
      if (accept('*')) {
        acc = ops_.mul(acc, unary());
      } else if (accept('/')) {
        std::size_t at = pos_;
        Value d = unary();
        std::string err = ops_.div(acc, d);
        if (!err.empty()) {
          pos_ = at;
          fail(err);
        }
      } else {
        return acc;
      }
    }
  }

  Value unary() {
    if (accept('-')) return ops_.neg(unary());
    return factor();
  }

  Value factor() {
    Value base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a natural-number exponent");
      if (pos_ - start > 5) fail("exponent too large");
      unsigned e = unsigned(std::stoul(std::string(text_.substr(start, pos_ - start))));
      base = ops_.pow(base, e);
    }
    return base;
  }

  Value atom() {
    skip_ws();
    if (pos_ == text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return ops_.constant(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = reg_->find(name);
      if (!idx) {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      return ops_.variable(*idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  RegistryPtr reg_;
  int line_;
  Ops ops_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_polynomial(std::string_view text, const RegistryPtr& reg, int line, OrderPtr order) {
  return Parser<PolyOps>(text, reg, line, PolyOps{reg, std::move(order)}).parse();
}

RatFunc parse_ratfunc(std::string_view text, const RegistryPtr& reg, int line) {
  return Parser<RatOps>(text, reg, line, RatOps{reg}).parse();
}

}  // namespace ecj
