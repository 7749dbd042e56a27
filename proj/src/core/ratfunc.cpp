#include "ecj/ratfunc.hpp"

#include "ecj/error.hpp"

namespace ecj {

namespace {

MPoly exact_div(const MPoly& a, const MPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error(Error::Kind::Internal, "gcd does not divide operand");
  return *q;
}

Integer coeff_lcm_den(const MPoly& p) {
  Integer l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  return l;
}

Integer coeff_gcd_num(const MPoly& p) {
  Integer g = 0;
  for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
  return g;
}

}  // namespace

RatFunc::RatFunc(const MPoly& num) : num_(num), den_(num.constant_like(1)) { normalize(); }

RatFunc::RatFunc(const MPoly& num, const MPoly& den) : num_(num), den_(den.with_order(num.order())) {
  if (!same_registry(num.registry(), den.registry())) {
    throw Error(Error::Kind::RegistryMismatch, "numerator and denominator registries differ");
  }
  if (den.is_zero()) throw Error(Error::Kind::ZeroDenominator, "rational function with zero denominator");
  normalize();
}

RatFunc RatFunc::constant(const RegistryPtr& reg, const Rational& c) {
  return RatFunc(MPoly::constant(reg, c));
}

void RatFunc::normalize(bool cancel) {
  if (num_.is_zero()) {
    den_ = num_.constant_like(1);
    return;
  }
  if (cancel && !den_.is_constant()) {
    MPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
  }
  // Clear coefficient denominators jointly, then remove the joint integer content.
  Integer l = coeff_lcm_den(num_);
  Integer ld = coeff_lcm_den(den_);
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), ld.get_mpz_t());
  num_ = num_.scaled(Rational(l));
  den_ = den_.scaled(Rational(l));
  Integer g = coeff_gcd_num(num_);
  Integer gd = coeff_gcd_num(den_);
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), gd.get_mpz_t());
  if (sgn(den_.leading_coeff()) < 0) g = -g;
  Rational s = make_rational(1, g);
  num_ = num_.scaled(s);
  den_ = den_.scaled(s);
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw Error(Error::Kind::Internal, "constant_value of non-constant rational function");
  return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  if (den_.is_constant() || o.den_.is_constant()) {
    // One denominator is a unit: num/den is already coprime.
    RatFunc r;
    r.num_ = num_ * o.den_ + o.num_ * den_;
    r.den_ = den_ * o.den_;
    r.normalize(false);
    return r;
  }
  // With g = gcd(b, d), the sum a/b + c/d = (a d' + c b') / (b' d' g) can only
  // share factors with g.
  MPoly g = gcd(den_, o.den_);
  MPoly b1 = exact_div(den_, g), d1 = exact_div(o.den_, g);
  RatFunc r;
  r.num_ = num_ * d1 + o.num_ * b1;
  r.den_ = b1 * o.den_;
  if (r.num_.is_zero()) return RatFunc(r.num_);
  if (!g.is_constant()) {
    MPoly h = gcd(r.num_, g);
    if (!h.is_constant()) {
      r.num_ = exact_div(r.num_, h);
      r.den_ = exact_div(r.den_, h);
    }
  }
  r.normalize(false);
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc(num_.zero_like());
  // Cross-cancel first to keep the gcd inputs small.
  MPoly g1 = gcd(num_, o.den_);
  MPoly g2 = gcd(o.num_, den_);
  MPoly a = exact_div(num_, g1), d = exact_div(o.den_, g1);
  MPoly c = exact_div(o.num_, g2), b = exact_div(den_, g2);
  RatFunc r;
  r.num_ = a * c;
  r.den_ = b * d;
  r.normalize(false);
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error(Error::Kind::DivisionByZero, "inverse of zero rational function");
  RatFunc r;
  r.num_ = den_;
  r.den_ = num_;
  r.normalize(false);
  return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r;
  r.num_ = num_.pow(unsigned(e));
  r.den_ = den_.pow(unsigned(e));
  r.normalize(false);
  return r;
}

RatFunc RatFunc::partial(std::size_t var) const {
  MPoly dn = num_.partial(var);
  MPoly dd = den_.partial(var);
  if (dd.is_zero()) return RatFunc(dn, den_);
  return RatFunc(dn * den_ - num_ * dd, den_ * den_);
}

RatFunc RatFunc::substitute(std::size_t var, const RatFunc& value) const {
  // Homogenize: p(v) with v = a/b becomes b^deg p(a/b) / b^deg.
  auto subst = [&](const MPoly& p, unsigned deg) {
    MPoly acc = p.zero_like();
    for (unsigned e = 0; e <= p.degree_in(var); ++e) {
      MPoly c = p.coefficient_in(var, e);
      if (c.is_zero()) continue;
      acc += c * value.num_.pow(e) * value.den_.pow(deg - e);
    }
    return acc;
  };
  unsigned dn = num_.degree_in(var), dd = den_.degree_in(var);
  if (dn == 0 && dd == 0) return *this;
  unsigned deg = std::max(dn, dd);
  MPoly n = subst(num_, deg);
  MPoly d = subst(den_, deg);
  if (d.is_zero()) throw Error(Error::Kind::ZeroDenominator, "substitution makes the denominator vanish");
  return RatFunc(n, d);
}

RatFunc RatFunc::remap(const RegistryPtr& target) const {
  MPoly n = num_.remap(target);
  return RatFunc(n, den_.remap(target, n.order()));
}

std::string RatFunc::to_string() const {
  if (den_.is_constant() && den_.constant_value() == 1) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.length() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  bool bare = den_.length() == 1 && (den_.is_constant() || (den_.leading_coeff() == 1 &&
                                                             den_.leading_monomial().degree() == 1));
  if (!bare) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace ecj
