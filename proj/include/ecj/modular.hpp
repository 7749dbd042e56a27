#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ecj/laurent.hpp"
#include "ecj/mpoly.hpp"

namespace ecj {

struct JExpansion {
  LaurentSeries E4, E6, Delta, j;
  std::int64_t order;
};

// E4, E6, Delta known through q^order and j through q^order.
JExpansion j_series(std::int64_t order);

// Coefficients of P = 2 j^2 (j - 1728)^2 (theta^3 j * theta j - 3/2 (theta^2 j)^2)
//                   + (j^2 - 1968 j + 2654208) (theta j)^4.
struct OdeReport {
  bool identity_holds = false;
  std::int64_t lowest_exponent = 0;
  std::int64_t checked_through = 0;
  std::size_t coefficients_checked = 0;
  std::optional<std::int64_t> offending_exponent;
  Rational offending_coefficient;
};

OdeReport check_j_ode(const LaurentSeries& j);
// j_series(order) fed through check_j_ode. Requires order >= 5.
OdeReport verify_j_ode(std::int64_t order);

struct ModularTerm {
  unsigned x_exp;
  unsigned y_exp;
  Integer coeff;
};

class ModularPolynomial {
 public:
  ModularPolynomial() = default;
  ModularPolynomial(unsigned level, std::vector<ModularTerm> terms);

  unsigned level() const noexcept { return level_; }
  const std::vector<ModularTerm>& terms() const noexcept { return terms_; }
  Integer coefficient(unsigned a, unsigned b) const;
  unsigned degree_x() const;
  unsigned degree_y() const;
  bool is_symmetric() const;
  // Phi_N(x_var, y_var) as a polynomial over `reg`.
  MPoly as_poly(const RegistryPtr& reg, std::size_t x_var, std::size_t y_var,
                OrderPtr order = nullptr) const;

  bool operator==(const ModularPolynomial& o) const;

 private:
  unsigned level_ = 0;
  std::vector<ModularTerm> terms_;  // sorted by (x_exp, y_exp) descending
};

// psi(N) = N prod_{p | N} (1 + 1/p).
unsigned psi(unsigned level);

inline constexpr unsigned kMaxModularLevel = 5;

// Coefficient matching against the pole part of the elementary symmetric
// functions of j over the psi(N) transformations of level N. `order` is the
// precision of the j-expansion used. Throws InsufficientOrder or
// LevelUnavailable (N = 0 or N > 5).
ModularPolynomial modular_polynomial(unsigned level, std::int64_t order);

// Smallest j-expansion order for which modular_polynomial succeeds.
std::int64_t required_order(unsigned level);

// Memoized modular_polynomial(level, required_order(level)).
const ModularPolynomial& modular_polynomial_cached(unsigned level);

struct SubstitutionReport {
  bool vanishes = false;
  std::int64_t checked_through = 0;
  std::optional<std::int64_t> offending_exponent;
};

// Expands Phi(j(q), j(q^N)) and checks that every coefficient through q^through is 0.
SubstitutionReport check_modular_substitution(const ModularPolynomial& phi, std::int64_t through);

// Cache text: "level N" then "monomial a b coeff" lines.
void write_modular_cache(std::ostream& out, const std::vector<ModularPolynomial>& polys);
// Re-verifies each entry through q^verify_through; throws InvalidInput on a
// malformed file or a failed verification.
std::vector<ModularPolynomial> read_modular_cache(std::istream& in, std::int64_t verify_through = 20);

}  // namespace ecj
