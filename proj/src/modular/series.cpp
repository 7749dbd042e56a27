#include <algorithm>

#include "ecj/error.hpp"
#include "ecj/modular.hpp"

namespace ecj {

namespace {

Integer divisor_power_sum(std::int64_t n, unsigned power) {
  Integer s = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    Integer a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(d), power);
    s += a;
    std::int64_t e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(e), power);
      s += b;
    }
  }
  return s;
}

LaurentSeries eisenstein(std::int64_t prec, unsigned power, long scale) {
  std::vector<Rational> c(std::size_t(prec + 1));
  c[0] = 1;
  for (std::int64_t n = 1; n <= prec; ++n) c[std::size_t(n)] = Rational(divisor_power_sum(n, power) * scale);
  return LaurentSeries(1, 0, std::move(c), prec);
}

// q * prod (1 - q^n)^24 through q^prec, from Euler's pentagonal series.
LaurentSeries discriminant(std::int64_t prec) {
  std::int64_t inner = prec - 1;
  std::vector<Rational> e(std::size_t(inner + 1), 0);
  e[0] = 1;
  for (std::int64_t k = 1; k * (3 * k - 1) / 2 <= inner; ++k) {
    int sign = k % 2 == 0 ? 1 : -1;
    e[std::size_t(k * (3 * k - 1) / 2)] += sign;
    if (k * (3 * k + 1) / 2 <= inner) e[std::size_t(k * (3 * k + 1) / 2)] += sign;
  }
  LaurentSeries euler(1, 0, std::move(e), inner);
  return LaurentSeries::monomial(1, 1) * euler.pow(24);
}

}  // namespace

JExpansion j_series(std::int64_t order) {
  if (order < 2) throw Error(Error::Kind::InvalidInput, "j_series requires order >= 2");
  std::int64_t prec = order + 2;
  LaurentSeries E4 = eisenstein(prec, 3, 240);
  LaurentSeries E6 = eisenstein(prec, 5, -504);
  LaurentSeries Delta = discriminant(prec);
  LaurentSeries j = E4.pow(3) * Delta.invert(LaurentSeries::kExact - 1);
  return JExpansion{E4.truncated(order), E6.truncated(order), Delta.truncated(order), j.truncated(order),
                    order};
}

OdeReport check_j_ode(const LaurentSeries& j) {
  LaurentSeries t1 = j.theta();
  LaurentSeries t2 = t1.theta();
  LaurentSeries t3 = t2.theta();
  LaurentSeries schwarz = t3 * t1 - (t2 * t2).scaled(Rational(3, 2));
  LaurentSeries shifted = j - LaurentSeries::constant(1728);
  LaurentSeries den = (j * j * shifted * shifted).scaled(2);
  LaurentSeries num = j * j - j.scaled(1968) + LaurentSeries::constant(2654208);
  LaurentSeries t1sq = t1 * t1;
  LaurentSeries P = den * schwarz + num * (t1sq * t1sq);

  OdeReport rep;
  rep.checked_through = P.precision();
  // lowest exponent that can occur: valuation of the two summands
  rep.lowest_exponent = std::min(den.valuation() + schwarz.valuation(), num.valuation() + 4 * t1.valuation());
  rep.coefficients_checked =
      rep.checked_through >= rep.lowest_exponent ? std::size_t(rep.checked_through - rep.lowest_exponent + 1) : 0;
  if (P.is_zero()) {
    rep.identity_holds = rep.coefficients_checked > 0;
  } else {
    rep.offending_exponent = P.valuation();
    rep.offending_coefficient = P.coeffs().front();
  }
  return rep;
}

OdeReport verify_j_ode(std::int64_t order) {
  if (order < 5) throw Error(Error::Kind::InvalidInput, "verify_j_ode requires order >= 5");
  return check_j_ode(j_series(order).j);
}

}  // namespace ecj
