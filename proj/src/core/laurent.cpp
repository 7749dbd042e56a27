#include "ecj/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "ecj/error.hpp"

namespace ecj {

namespace {

std::int64_t add_prec(std::int64_t a, std::int64_t b) {
  if (a >= LaurentSeries::kExact || b >= LaurentSeries::kExact) return LaurentSeries::kExact;
  return std::min(a + b, LaurentSeries::kExact);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void check_grid(int d) {
  if (d != 1 && d != 2) throw Error(Error::Kind::InvalidInput, "series grid must be 1 or 2");
}

}  // namespace

LaurentSeries::LaurentSeries(int grid, std::int64_t valuation, std::vector<Rational> coeffs,
                             std::int64_t precision)
    : grid_(grid), valuation_(valuation), coeffs_(std::move(coeffs)), precision_(precision) {
  check_grid(grid);
  if (precision_ > kExact) precision_ = kExact;
  if (!is_exact() && valuation_ + std::int64_t(coeffs_.size()) - 1 > precision_) {
    coeffs_.resize(std::size_t(std::max<std::int64_t>(0, precision_ - valuation_ + 1)));
  }
  strip();
}

void LaurentSeries::strip() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && sgn(coeffs_[lead]) == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    valuation_ = is_exact() ? 0 : precision_ + 1;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + std::ptrdiff_t(lead));
    valuation_ += std::int64_t(lead);
  }
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0 && is_exact()) coeffs_.pop_back();
}

LaurentSeries LaurentSeries::constant(const Rational& c, int grid) {
  return LaurentSeries(grid, 0, {c}, kExact);
}

LaurentSeries LaurentSeries::monomial(const Rational& c, std::int64_t exponent, int grid) {
  return LaurentSeries(grid, exponent, {c}, kExact);
}

LaurentSeries LaurentSeries::zero(std::int64_t precision, int grid) {
  return LaurentSeries(grid, 0, {}, precision);
}

Rational LaurentSeries::coeff(std::int64_t k) const {
  if (k > precision_) {
    throw Error(Error::Kind::InsufficientOrder,
                "coefficient at exponent " + std::to_string(k) + " beyond precision " +
                    std::to_string(precision_));
  }
  if (k < valuation_) return 0;
  std::int64_t i = k - valuation_;
  if (i >= std::int64_t(coeffs_.size())) return 0;
  return coeffs_[std::size_t(i)];
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
  if (grid_ != o.grid_) {
    return grid_ == 1 ? to_half_grid() + o : *this + o.to_half_grid();
  }
  std::int64_t prec = std::min(precision_, o.precision_);
  if (is_zero() && o.is_zero()) return zero(prec, grid_);
  std::int64_t lo = std::min(is_zero() ? o.valuation_ : valuation_,
                             o.is_zero() ? valuation_ : o.valuation_);
  std::int64_t hi_a = is_zero() ? lo - 1 : valuation_ + std::int64_t(coeffs_.size()) - 1;
  std::int64_t hi_b = o.is_zero() ? lo - 1 : o.valuation_ + std::int64_t(o.coeffs_.size()) - 1;
  std::int64_t hi = std::min(std::max(hi_a, hi_b), prec);
  std::vector<Rational> out;
  if (hi >= lo) out.resize(std::size_t(hi - lo + 1));
  for (std::int64_t k = lo; k <= hi; ++k) {
    Rational s = 0;
    if (!is_zero() && k >= valuation_ && k <= hi_a) s += coeffs_[std::size_t(k - valuation_)];
    if (!o.is_zero() && k >= o.valuation_ && k <= hi_b) s += o.coeffs_[std::size_t(k - o.valuation_)];
    out[std::size_t(k - lo)] = std::move(s);
  }
  return LaurentSeries(grid_, lo, std::move(out), prec);
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
  if (grid_ != o.grid_) {
    return grid_ == 1 ? to_half_grid() * o : *this * o.to_half_grid();
  }
  // Known up to min(Pa + vb, Pb + va); for a series known to be zero the
  // valuation is one past the precision, which gives the right bound.
  std::int64_t prec = std::min(add_prec(precision_, o.valuation_), add_prec(o.precision_, valuation_));
  if ((is_zero() && is_exact()) || (o.is_zero() && o.is_exact())) return zero(kExact, grid_);
  if (is_zero() || o.is_zero()) return zero(prec, grid_);
  std::int64_t lo = valuation_ + o.valuation_;
  std::int64_t hi = lo + std::int64_t(coeffs_.size() + o.coeffs_.size()) - 2;
  hi = std::min(hi, prec);
  if (hi < lo) return zero(prec, grid_);
  std::vector<Rational> out(std::size_t(hi - lo + 1));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    std::int64_t base = valuation_ + std::int64_t(i) + o.valuation_;
    if (base > hi) break;
    std::size_t jmax = std::min(o.coeffs_.size(), std::size_t(hi - base + 1));
    for (std::size_t j = 0; j < jmax; ++j) {
      out[std::size_t(base - lo) + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return LaurentSeries(grid_, lo, std::move(out), prec);
}

LaurentSeries LaurentSeries::scaled(const Rational& c) const {
  LaurentSeries r = *this;
  for (auto& x : r.coeffs_) x *= c;
  r.strip();
  return r;
}

LaurentSeries LaurentSeries::pow(unsigned e) const {
  LaurentSeries result = constant(1, grid_);
  LaurentSeries base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

LaurentSeries LaurentSeries::invert(std::int64_t order) const {
  if (is_zero()) throw Error(Error::Kind::DivisionByZero, "inversion of a series with no known nonzero coefficient");
  std::int64_t v = valuation_;
  std::int64_t prec = is_exact() ? order : std::min(order, precision_ - 2 * v);
  std::int64_t lo = -v;
  if (prec < lo) return zero(prec, grid_);
  std::size_t len = std::size_t(prec - lo + 1);
  std::vector<Rational> out(len);
  Rational inv_lead = 1 / coeffs_[0];
  for (std::size_t n = 0; n < len; ++n) {
    Rational s = n == 0 ? Rational(1) : Rational(0);
    std::size_t kmax = std::min(n, coeffs_.size() - 1);
    for (std::size_t k = 1; k <= kmax; ++k) s -= coeffs_[k] * out[n - k];
    out[n] = s * inv_lead;
  }
  return LaurentSeries(grid_, lo, std::move(out), prec);
}

LaurentSeries LaurentSeries::theta() const {
  LaurentSeries r = *this;
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
    r.coeffs_[i] *= make_rational(Integer(long(valuation_ + std::int64_t(i))), Integer(grid_));
  }
  r.strip();
  return r;
}

LaurentSeries LaurentSeries::substitute_power(unsigned n) const {
  if (n == 0) throw Error(Error::Kind::InvalidInput, "substitution q -> q^0");
  std::int64_t prec = is_exact() ? kExact : (precision_ + 1) * std::int64_t(n) - 1;
  if (is_zero()) return zero(prec, grid_);
  std::vector<Rational> out((coeffs_.size() - 1) * n + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * n] = coeffs_[i];
  return LaurentSeries(grid_, valuation_ * std::int64_t(n), std::move(out), prec);
}

LaurentSeries LaurentSeries::to_half_grid() const {
  if (grid_ == 2) return *this;
  LaurentSeries r = substitute_power(2);
  r.grid_ = 2;
  return r;
}

LaurentSeries LaurentSeries::twist() const {
  LaurentSeries r = *this;
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
    if ((valuation_ + std::int64_t(i)) % 2 != 0) r.coeffs_[i] = -r.coeffs_[i];
  }
  return r;
}

LaurentSeries LaurentSeries::u_operator(unsigned n) const {
  if (grid_ != 1) throw Error(Error::Kind::InvalidInput, "U operator requires the integral grid");
  std::int64_t N = n;
  std::int64_t prec = is_exact() ? kExact : floor_div(precision_, N);
  if (is_zero()) return zero(prec, 1);
  std::int64_t lo = -floor_div(-valuation_, N);
  std::int64_t last = valuation_ + std::int64_t(coeffs_.size()) - 1;
  std::int64_t hi = std::min(floor_div(last, N), prec);
  std::vector<Rational> out;
  for (std::int64_t m = lo; m <= hi; ++m) out.push_back(coeff(m * N));
  return LaurentSeries(1, lo, std::move(out), prec);
}

LaurentSeries LaurentSeries::truncated(std::int64_t precision) const {
  if (precision >= precision_) return *this;
  return LaurentSeries(grid_, valuation_, coeffs_, precision);
}

LaurentSeries LaurentSeries::to_integral_grid() const {
  if (grid_ == 1) return *this;
  if (is_zero()) return zero(is_exact() ? kExact : floor_div(precision_, 2), 1);
  std::vector<Rational> out;
  if (valuation_ % 2 != 0) throw Error(Error::Kind::Internal, "series has half-integral exponents");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i % 2 == 1) {
      if (sgn(coeffs_[i]) != 0) throw Error(Error::Kind::Internal, "series has half-integral exponents");
      continue;
    }
    out.push_back(coeffs_[i]);
  }
  return LaurentSeries(1, valuation_ / 2, std::move(out), is_exact() ? kExact : floor_div(precision_, 2));
}

bool LaurentSeries::agrees_with(const LaurentSeries& o) const {
  if (grid_ != o.grid_) return false;
  LaurentSeries d = *this - o;
  return d.is_zero();
}

std::string LaurentSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    std::int64_t k = valuation_ + std::int64_t(i);
    Rational c = coeffs_[i];
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (k == 0) {
      os << ecj::to_string(c);
      continue;
    }
    if (c != 1) os << ecj::to_string(c) << "*";
    os << "q";
    if (grid_ == 1 && k != 1) os << "^" << k;
    if (grid_ == 2) os << "^(" << k << "/2)";
  }
  if (first) os << "0";
  if (!is_exact()) os << " + O(q^" << (grid_ == 1 ? std::to_string(precision_ + 1)
                                                  : "(" + std::to_string(precision_ + 1) + "/2)")
                      << ")";
  return os.str();
}

}  // namespace ecj
