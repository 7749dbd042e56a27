#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecj/rational.hpp"

namespace ecj {

// Truncated Laurent series in q on the grid q^{1/d}, d in {1, 2}. Exponents are
// stored in grid units: exponent k stands for q^{k/d}. Every coefficient with
// exponent <= precision() is known; precision() == kExact means no truncation.
class LaurentSeries {
 public:
  static constexpr std::int64_t kExact = std::int64_t{1} << 40;

  LaurentSeries() = default;
  // Coefficients start at exponent `valuation`; leading zeros are stripped.
  LaurentSeries(int grid, std::int64_t valuation, std::vector<Rational> coeffs,
                std::int64_t precision);

  static LaurentSeries constant(const Rational& c, int grid = 1);
  static LaurentSeries monomial(const Rational& c, std::int64_t exponent, int grid = 1);
  // Known zero through `precision`.
  static LaurentSeries zero(std::int64_t precision, int grid = 1);

  int grid() const noexcept { return grid_; }
  // valuation() > precision() for a series that is zero through its precision.
  std::int64_t valuation() const noexcept { return valuation_; }
  std::int64_t precision() const noexcept { return precision_; }
  bool is_exact() const noexcept { return precision_ >= kExact; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  // Coefficient at grid exponent k. Throws Error(InsufficientOrder) past precision.
  Rational coeff(std::int64_t k) const;

  LaurentSeries operator-() const;
  LaurentSeries operator+(const LaurentSeries& o) const;
  LaurentSeries operator-(const LaurentSeries& o) const;
  LaurentSeries operator*(const LaurentSeries& o) const;
  LaurentSeries scaled(const Rational& c) const;
  LaurentSeries pow(unsigned e) const;
  // Multiplicative inverse; precision capped at `order`. Throws
  // Error(DivisionByZero) when no nonzero coefficient is known.
  LaurentSeries invert(std::int64_t order) const;
  // q d/dq: coefficient c_k becomes (k/d) c_k.
  LaurentSeries theta() const;
  // q -> q^N.
  LaurentSeries substitute_power(unsigned n) const;
  // Same series re-expressed on the half-integral grid.
  LaurentSeries to_half_grid() const;
  // Multiplies the coefficient at grid exponent k by (-1)^k: q^{1/2} -> -q^{1/2}
  // on grid 2, q -> -q on grid 1.
  LaurentSeries twist() const;
  // Sum c_{nN} q^n, the U_N operator; requires grid 1.
  LaurentSeries u_operator(unsigned n) const;
  LaurentSeries truncated(std::int64_t precision) const;
  // Requires every stored exponent to be even; returns the grid-1 series.
  LaurentSeries to_integral_grid() const;

  std::string to_string() const;

  // Equal iff same grid and the coefficient sequences agree through the common precision.
  bool agrees_with(const LaurentSeries& o) const;

 private:
  void strip();

  int grid_ = 1;
  std::int64_t valuation_ = 0;
  std::vector<Rational> coeffs_;
  std::int64_t precision_ = kExact;
};

}  // namespace ecj
