#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecj/rational.hpp"

namespace ecj {

inline constexpr std::size_t kMaxVars = 32;

// Ordered list of variable names. Polynomials referring to the same registry
// (by identity or by identical name lists) can be combined.
class Registry {
 public:
  explicit Registry(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;
  // Throws Error(RegistryMismatch) when the name is unknown.
  std::size_t index(std::string_view name) const;

  bool operator==(const Registry& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

using RegistryPtr = std::shared_ptr<const Registry>;

RegistryPtr make_registry(std::vector<std::string> names);
bool same_registry(const RegistryPtr& a, const RegistryPtr& b);

class Monomial {
 public:
  Monomial() { exps_.fill(0); }

  unsigned operator[](std::size_t var) const { return exps_[var]; }
  void set(std::size_t var, unsigned e);
  unsigned degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  // Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  bool operator!=(const Monomial& other) const { return !(*this == other); }
  // Plain lexicographic comparison on the raw exponent arrays; used only for
  // container keys that must not depend on a monomial order.
  bool raw_less(const Monomial& other) const { return exps_ < other.exps_; }

 private:
  std::array<std::uint16_t, kMaxVars> exps_;
  unsigned degree_ = 0;
};

// Block order: blocks are compared most-significant first, each block by
// total degree and then reverse lexicographically. A single block is grevlex,
// singleton blocks give lex.
class MonomialOrder {
 public:
  explicit MonomialOrder(std::vector<std::vector<std::size_t>> blocks);

  static std::shared_ptr<const MonomialOrder> grevlex(std::size_t nvars);
  static std::shared_ptr<const MonomialOrder> lex(std::size_t nvars);

  // -1, 0, +1 for a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::size_t nvars() const noexcept { return block_of_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
  std::size_t block_of(std::size_t var) const { return block_of_.at(var); }
  std::string tag() const;

  bool operator==(const MonomialOrder& other) const { return blocks_ == other.blocks_; }

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

using OrderPtr = std::shared_ptr<const MonomialOrder>;

bool same_order(const OrderPtr& a, const OrderPtr& b);

struct Term {
  Monomial mono;
  Rational coeff;
};

// Sparse multivariate polynomial over Q. Terms are kept strictly decreasing
// under the polynomial's monomial order and never carry a zero coefficient, so
// structural equality is mathematical equality.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(RegistryPtr reg, OrderPtr order = nullptr);

  static MPoly constant(RegistryPtr reg, const Rational& c, OrderPtr order = nullptr);
  static MPoly variable(RegistryPtr reg, std::size_t var, OrderPtr order = nullptr);
  static MPoly variable(RegistryPtr reg, std::string_view name, OrderPtr order = nullptr);
  static MPoly monomial(RegistryPtr reg, const Monomial& m, const Rational& c,
                        OrderPtr order = nullptr);
  // Sorts, merges duplicate monomials and drops zero coefficients.
  static MPoly from_terms(RegistryPtr reg, OrderPtr order, std::vector<Term> terms);

  const RegistryPtr& registry() const noexcept { return reg_; }
  const OrderPtr& order() const noexcept { return order_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t length() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  // Zero for the zero polynomial; requires is_constant().
  Rational constant_value() const;
  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  MPoly zero_like() const { return MPoly(reg_, order_); }
  MPoly constant_like(const Rational& c) const { return constant(reg_, c, order_); }

  MPoly operator-() const;
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly scaled(const Rational& c) const;
  MPoly mul_term(const Monomial& m, const Rational& c) const;
  // f - c*m*g, the elementary reduction step.
  MPoly sub_mul_term(const Monomial& m, const Rational& c, const MPoly& g) const;

  MPoly pow(unsigned e) const;
  MPoly partial(std::size_t var) const;
  MPoly substitute(std::size_t var, const MPoly& value) const;

  unsigned degree_in(std::size_t var) const;
  unsigned total_degree() const;
  bool involves(std::size_t var) const;
  std::vector<std::size_t> support() const;
  // Coefficient of var^d, as a polynomial not involving var.
  MPoly coefficient_in(std::size_t var, unsigned d) const;

  MPoly with_order(OrderPtr order) const;
  // Re-expresses the polynomial over `target`, matching variables by name.
  MPoly remap(const RegistryPtr& target, OrderPtr order = nullptr) const;

  // Lcm of coefficient denominators times the polynomial, divided by the gcd
  // of the resulting integer coefficients; leading coefficient made positive.
  MPoly primitive_integer() const;
  MPoly monic() const;

  std::string to_string() const;

  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }

 private:
  void check_compatible(const MPoly& o) const;
  const std::vector<Term>& terms_in_my_order(const MPoly& o, std::vector<Term>& scratch) const;

  RegistryPtr reg_;
  OrderPtr order_;
  std::vector<Term> terms_;
};

MPoly operator*(const Rational& c, const MPoly& p);

// Exact quotient a / b when b divides a, otherwise nullopt.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);

// Monic greatest common divisor (zero only when both inputs are zero).
// Content/primitive-part recursion with a subresultant remainder sequence.
MPoly gcd(const MPoly& a, const MPoly& b);

// Greatest-common-divisor-free content of a polynomial with respect to var.
MPoly content_in(const MPoly& p, std::size_t var);

// Sylvester resultant of a and b with respect to var (via subresultant-free
// determinant expansion). Used by tests and cross-checks.
MPoly resultant(const MPoly& a, const MPoly& b, std::size_t var);

}  // namespace ecj
