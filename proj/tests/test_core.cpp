#include <random>

#include "doctest.h"
#include "ecj/error.hpp"
#include "ecj/expr.hpp"
#include "ecj/laurent.hpp"
#include "ecj/linsolve.hpp"
#include "ecj/mpoly.hpp"
#include "ecj/ratfunc.hpp"

using namespace ecj;

namespace {

RegistryPtr xyz() { return make_registry({"x", "y", "z"}); }

MPoly P(const char* s, const RegistryPtr& reg) { return parse_polynomial(s, reg); }

MPoly random_poly(std::mt19937& rng, const RegistryPtr& reg, int terms, int maxdeg) {
  std::uniform_int_distribution<int> coef(-9, 9), den(1, 3), deg(0, maxdeg);
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (std::size_t v = 0; v < reg->size(); ++v) m.set(v, unsigned(deg(rng)));
    ts.push_back(Term{m, make_rational(coef(rng), den(rng))});
  }
  return MPoly::from_terms(reg, nullptr, std::move(ts));
}

LaurentSeries random_series(std::mt19937& rng, std::int64_t prec) {
  std::uniform_int_distribution<int> coef(-20, 20), val(-2, 2);
  std::vector<Rational> c;
  std::int64_t v = val(rng);
  for (std::int64_t k = v; k <= prec; ++k) c.push_back(coef(rng));
  return LaurentSeries(1, v, std::move(c), prec);
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-0/5") == 0);
  CHECK(to_string(parse_rational("-10/4")) == "-5/2");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  Rational z = make_rational(0, -7);
  CHECK(z.get_den() == 1);
}

TEST_CASE("partial derivative of the R numerator") {
  auto reg = make_registry({"y0"});
  MPoly f = P("y0^2 - 1968*y0 + 2654208", reg);
  CHECK(f.partial(0) == P("2*y0 - 1968", reg));
}

TEST_CASE("basic arithmetic and substitution") {
  auto reg = make_registry({"x", "y"});
  CHECK(P("(x+y)*(x-y)", reg) == P("x^2 - y^2", reg));
  MPoly f = P("x*y^2", reg);
  CHECK(f.substitute(1, MPoly::constant(reg, 2)) == P("4*x", reg));
  CHECK(P("x - x", reg).is_zero());
  CHECK(P("(x+1)^0", reg) == MPoly::constant(reg, 1));
}

TEST_CASE("registry mismatch is reported") {
  auto a = make_registry({"x"});
  auto b = make_registry({"y"});
  CHECK_THROWS_AS(MPoly::variable(a, 0) + MPoly::variable(b, 0), Error);
  try {
    (void)(MPoly::variable(a, 0) * MPoly::variable(b, 0));
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::RegistryMismatch);
  }
  // Identical name lists are interchangeable.
  auto a2 = make_registry({"x"});
  CHECK(MPoly::variable(a, 0) + MPoly::variable(a2, 0) == P("2*x", a));
}

TEST_CASE("monomial orders") {
  auto reg = xyz();
  Monomial x, y2;
  x.set(0, 1);
  y2.set(1, 2);
  auto grev = MonomialOrder::grevlex(3);
  auto lex = MonomialOrder::lex(3);
  CHECK(grev->compare(y2, x) > 0);
  CHECK(lex->compare(x, y2) > 0);
  MPoly f = P("x + y^2", reg).with_order(lex);
  CHECK(f.leading_monomial() == x);
  // elimination block order {x} >> {y, z}
  auto blk = std::make_shared<const MonomialOrder>(std::vector<std::vector<std::size_t>>{{0}, {1, 2}});
  Monomial z5;
  z5.set(2, 5);
  CHECK(blk->compare(x, z5) > 0);
}

TEST_CASE("gcd and exact division") {
  auto reg = xyz();
  MPoly a = P("(x+y)^2*(x-z)", reg);
  MPoly b = P("(x+y)*(x+z)^2", reg);
  CHECK(gcd(a, b) == P("x+y", reg));
  CHECK(gcd(P("2*x^2-2", reg), P("4*x-4", reg)) == P("x-1", reg));
  CHECK(gcd(P("x*y", reg), P("x*z", reg)) == P("x", reg));
  CHECK(gcd(P("(x*y+1)*(y-z^2)", reg), P("(x*y+1)*(z+3)", reg)) == P("x*y+1", reg));
  auto q = divide_exact(P("x^3-y^3", reg), P("x-y", reg));
  REQUIRE(q);
  CHECK(*q == P("x^2+x*y+y^2", reg));
  CHECK_FALSE(divide_exact(P("x^2+1", reg), P("x-1", reg)));
}

TEST_CASE("gcd agrees with known common factors on random inputs") {
  std::mt19937 rng(42);
  auto reg = xyz();
  for (int it = 0; it < 25; ++it) {
    MPoly c = random_poly(rng, reg, 2, 2);
    MPoly a = random_poly(rng, reg, 3, 2);
    MPoly b = random_poly(rng, reg, 3, 2);
    if (c.is_zero() || a.is_zero() || b.is_zero()) continue;
    MPoly g = gcd(a * c, b * c);
    CHECK(divide_exact(g, c.monic()));
    CHECK(divide_exact(a * c, g));
    CHECK(divide_exact(b * c, g));
    // cofactors are coprime
    MPoly ca = *divide_exact(a * c, g);
    MPoly cb = *divide_exact(b * c, g);
    CHECK(gcd(ca, cb).is_constant());
  }
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937 rng(42);
  auto reg = xyz();
  for (int it = 0; it < 40; ++it) {
    MPoly a = random_poly(rng, reg, 4, 3);
    MPoly b = random_poly(rng, reg, 4, 3);
    MPoly c = random_poly(rng, reg, 4, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("resultant of the cusp generators") {
  auto reg = xyz();
  MPoly r = resultant(P("x^2-y", reg), P("x^3-z", reg), 0);
  CHECK((r == P("y^3-z^2", reg) || r == P("z^2-y^3", reg)));
}

TEST_CASE("ratfunc normalization") {
  auto reg = make_registry({"x"});
  RatFunc a(P("x^2-1", reg), P("x-1", reg));
  CHECK(a.num() == P("x+1", reg));
  CHECK(a.den() == P("1", reg));
  RatFunc b(P("0", reg), P("x", reg));
  CHECK(b.num().is_zero());
  CHECK(b.den() == P("1", reg));
  RatFunc c(P("2*x", reg), P("4", reg));
  CHECK(c.num() == P("x", reg));
  CHECK(c.den() == P("2", reg));
  RatFunc d(P("x", reg), P("-3*x^2", reg));
  CHECK(d.num() == P("-1", reg));
  CHECK(d.den() == P("3*x", reg));
  CHECK_THROWS_AS(RatFunc(P("x", reg), P("0", reg)), Error);
  CHECK(parse_ratfunc("(x^2-1)/(2*x-2)", reg) == RatFunc(P("x+1", reg), P("2", reg)));
}

TEST_CASE("ratfunc equality agrees with cross multiplication") {
  std::mt19937 rng(42);
  auto reg = xyz();
  for (int it = 0; it < 20; ++it) {
    MPoly a = random_poly(rng, reg, 3, 2), b = random_poly(rng, reg, 3, 2);
    MPoly c = random_poly(rng, reg, 2, 2);
    if (b.is_zero() || c.is_zero()) continue;
    CHECK(RatFunc(a * c, b * c) == RatFunc(a, b));
    MPoly d = random_poly(rng, reg, 3, 2), e = random_poly(rng, reg, 3, 2);
    if (e.is_zero()) continue;
    CHECK((RatFunc(a, b) == RatFunc(d, e)) == (a * e == d * b));
  }
}

TEST_CASE("ratfunc field operations") {
  auto reg = make_registry({"x", "y"});
  RatFunc f = parse_ratfunc("x/(x+y)", reg);
  RatFunc g = parse_ratfunc("y/(x+y)", reg);
  CHECK(f + g == RatFunc::constant(reg, 1));
  CHECK((f / g) * g == f);
  CHECK(f.partial(0) == parse_ratfunc("y/(x+y)^2", reg));
  CHECK(parse_ratfunc(f.to_string(), reg) == f);
  RatFunc h = parse_ratfunc("x^2/(3*y)", reg);
  CHECK(parse_ratfunc(h.to_string(), reg) == h);
}

TEST_CASE("parser errors carry positions") {
  auto reg = make_registry({"z1", "j1"});
  CHECK(parse_polynomial("z1 + j1", reg) == MPoly::variable(reg, 0) + MPoly::variable(reg, 1));
  try {
    parse_polynomial("w1 + j1", reg, 3);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 1);
  }
  CHECK_THROWS_AS(parse_polynomial("z1 +", reg), ParseError);
  CHECK_THROWS_AS(parse_polynomial("z1/j1", reg), ParseError);
  CHECK(parse_polynomial("-z1^2", reg) == -(MPoly::variable(reg, 0).pow(2)));
  CHECK(parse_polynomial("3/4*z1", reg) == MPoly::variable(reg, 0).scaled(Rational(3, 4)));
}

TEST_CASE("series: invert, theta, product with inverse") {
  auto one_minus_q = LaurentSeries(1, 0, {1, -1}, LaurentSeries::kExact);
  auto inv = one_minus_q.invert(3);
  CHECK(inv.precision() == 3);
  for (int k = 0; k <= 3; ++k) CHECK(inv.coeff(k) == 1);
  auto jtrunc = LaurentSeries(1, -1, {1, 744, 196884}, 1);
  auto th = jtrunc.theta();
  CHECK(th.coeff(-1) == -1);
  CHECK(th.coeff(0) == 0);
  CHECK(th.coeff(1) == 196884);
  CHECK_THROWS_AS(th.coeff(2), Error);
  // q(1-q)^24 through q^12
  auto delta = LaurentSeries::monomial(1, 1) * one_minus_q.pow(24).truncated(11);
  auto prod = delta * delta.invert(100);
  CHECK(prod.precision() >= 0);
  CHECK(prod.agrees_with(LaurentSeries::constant(1)));
  CHECK_THROWS_AS(LaurentSeries::zero(5).invert(3), Error);
}

TEST_CASE("series precision rules") {
  auto a = LaurentSeries(1, -1, {1, 2, 3}, 1);  // known through q^1
  auto b = LaurentSeries(1, 2, {5}, 4);         // known through q^4
  auto p = a * b;
  CHECK(p.precision() == 3);  // min(1 + 2, 4 - 1)
  CHECK((a + b).precision() == 1);
  auto s = a.substitute_power(3);
  CHECK(s.precision() == 5);
  CHECK(s.coeff(-3) == 1);
  CHECK(s.coeff(0) == 2);
  CHECK(s.coeff(-1) == 0);
  auto u = LaurentSeries(1, -2, {1, 2, 3, 4, 5, 6, 7}, 4).u_operator(2);
  CHECK(u.valuation() == -1);
  CHECK(u.coeff(-1) == 1);
  CHECK(u.coeff(0) == 3);
  CHECK(u.coeff(2) == 7);
  CHECK(u.precision() == 2);
  auto h = a.to_half_grid();
  CHECK(h.grid() == 2);
  CHECK(h.coeff(-2) == 1);
  CHECK(h.twist().coeff(-2) == 1);
  CHECK(LaurentSeries(2, 1, {1}, 5).twist().coeff(1) == -1);
  CHECK(h.to_integral_grid().agrees_with(a));
}

TEST_CASE("series ring properties and Leibniz rule") {
  std::mt19937 rng(42);
  for (int it = 0; it < 30; ++it) {
    auto f = random_series(rng, 8), g = random_series(rng, 7), h = random_series(rng, 9);
    CHECK((f * g).agrees_with(g * f));
    CHECK(((f * g) * h).agrees_with(f * (g * h)));
    CHECK((f * g).theta().agrees_with(f.theta() * g + f * g.theta()));
  }
}

TEST_CASE("affine solver examples") {
  RationalField Q;
  FieldMatrix<Rational> id(2, 2, 0);
  id.at(0, 0) = 1;
  id.at(1, 1) = 1;
  auto s = solve_affine_system(Q, id, std::vector<Rational>{3, -4});
  CHECK(s.particular == std::vector<Rational>{3, -4});
  CHECK(s.kernel.empty());

  FieldMatrix<Rational> one(1, 2, 1);
  auto t = solve_affine_system(Q, one, std::vector<Rational>{1});
  CHECK(t.particular == std::vector<Rational>{1, 0});
  REQUIRE(t.kernel.size() == 1);
  CHECK(t.kernel[0] == std::vector<Rational>{-1, 1});  // spans (1, -1)

  FieldMatrix<Rational> z(1, 2, 0);
  try {
    solve_affine_system(Q, z, std::vector<Rational>{1});
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::Infeasible);
  }
}

TEST_CASE("affine solver residuals on random systems") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> dist(-3, 3), dim(1, 5);
  RationalField Q;
  for (int it = 0; it < 60; ++it) {
    std::size_t r = std::size_t(dim(rng)), c = std::size_t(dim(rng));
    FieldMatrix<Rational> M(r, c, 0);
    std::vector<Rational> x0(c);
    for (auto& v : x0) v = dist(rng);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) M.at(i, j) = dist(rng) * (dist(rng) != 0);
    std::vector<Rational> b(r, 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) b[i] += M.at(i, j) * x0[j];
    auto sol = solve_affine_system(Q, M, b);
    CHECK(sol.kernel.size() == c - matrix_rank(Q, M));
    for (std::size_t i = 0; i < r; ++i) {
      Rational res = -b[i];
      for (std::size_t j = 0; j < c; ++j) res += M.at(i, j) * sol.particular[j];
      CHECK(res == 0);
      for (const auto& k : sol.kernel) {
        Rational h = 0;
        for (std::size_t j = 0; j < c; ++j) h += M.at(i, j) * k[j];
        CHECK(h == 0);
      }
    }
  }
}

TEST_CASE("solver over rational functions") {
  auto reg = make_registry({"t"});
  RatFuncField F{reg};
  FieldMatrix<RatFunc> M(1, 2, F.zero());
  M.at(0, 0) = parse_ratfunc("t", reg);
  M.at(0, 1) = parse_ratfunc("t^2", reg);
  auto s = solve_affine_system(F, M, std::vector<RatFunc>{F.one()});
  CHECK(s.particular[0] == parse_ratfunc("1/t", reg));
  REQUIRE(s.kernel.size() == 1);
  CHECK(s.kernel[0][0] == parse_ratfunc("-t", reg));
}
