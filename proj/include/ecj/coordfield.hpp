#pragma once

#include <string>
#include <vector>

#include "ecj/groebner.hpp"
#include "ecj/ratfunc.hpp"
#include "ecj/variety.hpp"

namespace ecj {

// Fraction field of Base[coordinates]/P for the prime ideal P generated by
// the variety (prime by contract).
//
// A transcendence basis U of the coordinates is fixed, and P is presented by
// a Groebner basis for the block order [other coordinates] >> [U, params].
// Over Q(U, params) this presents a finite extension, so every element has a
// unique representative num/den with den in Q[U, params] and num reduced;
// all operations return that representative and equality is structural.
class CoordField {
 public:
  using Elem = RatFunc;

  // Throws NotPrimeAssumed when the variety does not carry assume_prime,
  // UnitIdeal when P is improper over the base.
  explicit CoordField(const Variety& V, const GroebnerOptions& opts = {});

  const Variety& variety() const noexcept { return V_; }
  const RegistryPtr& registry() const noexcept { return V_.registry(); }
  const GroebnerBasis& basis() const noexcept { return G_; }
  // Transcendence degree over the base field.
  int transcendence_degree() const noexcept { return td_; }
  // The chosen transcendence basis and the degree of K over Q(U, params).
  const std::vector<std::size_t>& transcendence_basis() const noexcept { return basis_vars_; }
  std::size_t extension_degree() const noexcept { return standard_.size(); }

  RatFunc zero() const;
  RatFunc one() const;
  RatFunc constant(const Rational& c) const;
  RatFunc variable(std::size_t idx) const;
  RatFunc from_poly(const MPoly& p) const;
  // Normal form of an arbitrary rational function; throws ZeroDenominator
  // when the denominator vanishes on the variety.
  RatFunc normalize(const RatFunc& f) const;

  RatFunc add(const RatFunc& a, const RatFunc& b) const { return normalize(a + b); }
  RatFunc sub(const RatFunc& a, const RatFunc& b) const { return normalize(a - b); }
  RatFunc mul(const RatFunc& a, const RatFunc& b) const { return normalize(a * b); }
  // Throws DivisionByZero when b is zero in the field.
  RatFunc div(const RatFunc& a, const RatFunc& b) const;
  bool is_zero(const RatFunc& a) const;
  bool is_zero_poly(const MPoly& p) const;
  bool equal(const RatFunc& a, const RatFunc& b) const { return is_zero(a - b); }
  // Multiplicative inverse of a polynomial that is nonzero in the field.
  RatFunc inverse_poly(const MPoly& p) const;

  // Partial derivative with respect to a registry variable, in normal form.
  RatFunc partial(const RatFunc& f, std::size_t var) const { return normalize(f.partial(var)); }

 private:
  bool in_base(const MPoly& p) const;
  PseudoRemainder reduce(const MPoly& p) const;
  std::vector<MPoly> coefficients(const MPoly& reduced) const;

  Variety V_;
  GroebnerBasis G_;        // order [coordinates] >> [params]
  GroebnerBasis field_;    // order [coordinates \ U] >> [U, params]
  std::vector<std::size_t> basis_vars_;
  std::vector<std::size_t> coefficient_vars_;  // U and params
  std::vector<bool> is_coefficient_;
  std::vector<Monomial> standard_;  // standard monomials, 1 first
  OrderPtr order_;
  int td_ = 0;
};

}  // namespace ecj
