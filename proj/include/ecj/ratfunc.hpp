#pragma once

#include <string>

#include "ecj/mpoly.hpp"

namespace ecj {

// num/den with gcd(num, den) = 1, integer coefficients without common content,
// and den's leading coefficient positive. Zero is 0/1.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(const MPoly& num);
  // Throws Error(ZeroDenominator) when den == 0.
  RatFunc(const MPoly& num, const MPoly& den);

  static RatFunc constant(const RegistryPtr& reg, const Rational& c);

  const MPoly& num() const noexcept { return num_; }
  const MPoly& den() const noexcept { return den_; }
  const RegistryPtr& registry() const noexcept { return num_.registry(); }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Rational constant_value() const;

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  // Throws Error(DivisionByZero) for a zero divisor.
  RatFunc operator/(const RatFunc& o) const;
  RatFunc inverse() const;
  RatFunc pow(int e) const;

  RatFunc partial(std::size_t var) const;
  RatFunc substitute(std::size_t var, const RatFunc& value) const;
  RatFunc remap(const RegistryPtr& target) const;

  std::string to_string() const;

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

 private:
  // Content and sign normalization; `cancel` also divides out the gcd.
  void normalize(bool cancel = true);

  MPoly num_;
  MPoly den_;
};

}  // namespace ecj
