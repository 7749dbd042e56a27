#include <random>

#include "doctest.h"
#include "ecj/error.hpp"
#include "ecj/expr.hpp"
#include "ecj/modular.hpp"
#include "ecj/reductions.hpp"

using namespace ecj;

namespace {

Variety V_of(Model m, std::size_t n, std::vector<std::string> gens, const char* base = "Q(t)") {
  return Variety::from_strings(m, n, parse_base(base), true, gens);
}

Error::Kind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return Error::Kind::Internal;
}

std::array<Rational, 4> pt(int a, int b, int c, int d) { return {Rational(a), Rational(b), Rational(c), Rational(d)}; }

// Equal up to a nonzero rational factor.
bool proportional(const MPoly& f, const MPoly& g) {
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  return f.scaled(g.terms().front().coeff) == g.scaled(f.terms().front().coeff);
}

}  // namespace

TEST_CASE("j to J lift") {
  auto c = j_lift(V_of(Model::j, 1, {"z1 - j1"}));
  CHECK(c.target.model() == Model::J);
  CHECK(variety_dimension(c.target) == 3);
  CHECK(c.source_broad);
  CHECK(c.target_broad);

  auto full = j_lift(V_of(Model::j, 1, {}));
  CHECK(variety_dimension(full.target) == 4);
  CHECK(full.target.generators().empty());

  auto point = j_lift(V_of(Model::j, 1, {"z1 - 1", "j1 - 2"}));
  CHECK(variety_dimension(point.target) == 2);
  CHECK_FALSE(point.source_broad);
  CHECK_FALSE(point.target_broad);

  CHECK(kind_of([] { j_lift(V_of(Model::J, 1, {})); }) == Error::Kind::InvalidInput);
}

TEST_CASE("constant fiber") {
  Variety V = V_of(Model::J, 2, {"z1 - 5"});
  CHECK(variety_dimension(V) == 7);
  auto c = fiber_constant_coordinate(V, 1, pt(5, 2, 1, 1));
  CHECK(c.target.n() == 1);
  CHECK(c.target.generators().empty());
  CHECK(variety_dimension(c.target) == 4);
  CHECK(c.target_broad);
  CHECK(surviving_blocks(c) == std::vector<std::size_t>{2});

  CHECK(kind_of([&] { fiber_constant_coordinate(V, 1, pt(6, 2, 1, 1)); }) == Error::Kind::FiberEmpty);
  CHECK(kind_of([&] { fiber_constant_coordinate(V_of(Model::J, 2, {}), 1, pt(5, 2, 1, 1)); }) ==
        Error::Kind::NoConstantCoordinate);
  CHECK(kind_of([&] { fiber_constant_coordinate(V, 1, pt(5, 2, 0, 1)); }) == Error::Kind::InvalidInput);
  CHECK(kind_of([&] { fiber_constant_coordinate(V, 1, pt(5, 1728, 1, 1)); }) == Error::Kind::InvalidInput);
  CHECK(kind_of([&] { fiber_constant_coordinate(V_of(Model::J, 1, {"z1 - 5"}), 1, pt(5, 2, 1, 1)); }) ==
        Error::Kind::InvalidInput);

  // Block 2 survives and is renumbered; relations tying it to block 1 are specialized.
  Variety V2 = V_of(Model::J, 2, {"j1 - 2", "z2 - z1*j2"});
  auto c2 = fiber_constant_coordinate(V2, 1, pt(3, 2, 1, 1));
  REQUIRE(c2.target.generators().size() == 1);
  CHECK(proportional(c2.target.generators()[0], c2.target.var("z1") - c2.target.var("j1").scaled(3)));
}

TEST_CASE("fiber dimension bound") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> coef(1, 5);
  for (int trial = 0; trial < 6; ++trial) {
    int a = coef(rng), b = coef(rng), e = coef(rng);
    // z1 = a pinned, j1 free or tied to block 2.
    std::vector<std::string> gens = {"z1 - " + std::to_string(a)};
    if (trial % 2 == 1) gens.push_back("j2 - " + std::to_string(b) + "*jp1 - " + std::to_string(e));
    Variety V = V_of(Model::J, 2, gens);
    auto c = fiber_constant_coordinate(V, 1, pt(a, b + 1, e, 1));
    int fiber = variety_dimension(c.target);
    int proj = projection_dimension(V, {1});
    CHECK(fiber >= variety_dimension(V) - proj);
  }
}

TEST_CASE("Moebius reduction relations for Phi_1") {
  Variety V = V_of(Model::J, 2, {"j1 - j2"});
  auto c = mobius_modular_reduction(V, 1, 2, 1);
  REQUIRE(c.auxiliary);
  const Variety& S = *c.auxiliary;
  CHECK(c.constants[0] == "a1");
  CHECK(S.generators().size() == 4);
  CHECK(proportional(S.generators()[0], S.var("j1") - S.var("j2")));
  MPoly a = S.var("a1"), b = S.var("b1"), cc = S.var("c1"), d = S.var("d1");
  MPoly w = cc * S.var("z1") + d, D = a * d - b * cc;
  CHECK(proportional(S.generators()[1], a * S.var("z1") + b - S.var("z2") * w));
  CHECK(proportional(S.generators()[2], S.var("jp1") * w * w - S.var("jp2") * D));
  MPoly two = MPoly::constant(S.registry(), 2);
  CHECK(proportional(S.generators()[3],
                     S.var("jpp1") * w.pow(4) + two * cc * S.var("jp1") * w.pow(3) - S.var("jpp2") * D * D));
  CHECK(c.target.n() == 1);
  CHECK(c.target_broad);
  CHECK(variety_dimension(c.target) == 4);
  CHECK(c.target.base().constants == std::vector<std::string>{"a1", "b1", "c1", "d1"});

  CHECK(kind_of([] { mobius_modular_reduction(V_of(Model::J, 2, {}), 1, 2, 1); }) ==
        Error::Kind::ModularRelationAbsent);
  CHECK(kind_of([&] { mobius_modular_reduction(V, 1, 2, 6); }) == Error::Kind::LevelUnavailable);
  CHECK(kind_of([&] { mobius_modular_reduction(V, 1, 1, 1); }) == Error::Kind::InvalidInput);
}

TEST_CASE("Moebius reduction for Phi_2") {
  Variety V = V_of(Model::J, 2, {});
  V.set_generators({modular_polynomial_cached(2).as_poly(V.registry(), V.coord(1, 1), V.coord(2, 1))});
  auto c = mobius_modular_reduction(V, 2, 1, 2);
  CHECK(c.target.n() == 1);
  CHECK(c.target_broad);
}

TEST_CASE("lifting witnesses back") {
  Variety V = V_of(Model::J, 2, {"j1 - j2"});
  auto c = mobius_modular_reduction(V, 1, 2, 1);
  DerivationWitness wW = extend_derivation(c.target);
  DerivationWitness wV = lift_point(wW, c);
  CHECK(wV.verified);
  CHECK(wV.n == 2);
  CHECK(verify_witness(V, wV).verified);

  Variety F = V_of(Model::J, 2, {"z1 - 5"});
  auto cf = fiber_constant_coordinate(F, 1, pt(5, 2, 1, 1));
  DerivationWitness lifted = lift_point(extend_derivation(cf.target), cf);
  CHECK(lifted.verified);
  CHECK(lifted.value(0, "z1").is_zero());
  CHECK(lifted.value(0, "z2") == RatFunc::constant(lifted.field.registry(), 1));

  auto cj = j_lift(V_of(Model::j, 1, {"z1 - j1"}));
  DerivationWitness lj = lift_point(extend_derivation(cj.target), cj);
  CHECK(lj.model == Model::j);
  CHECK(lj.verified);

  CHECK(kind_of([&] { lift_point(wW, cf); }) == Error::Kind::Internal);
}

TEST_CASE("lift on c*z + d = 0") {
  Variety V = V_of(Model::J, 2, {"j1 - j2"});
  auto c = mobius_modular_reduction(V, 1, 2, 1);
  // A W-point with z = a/c, which only comes from z_i at c*z_i + d = 0.
  Variety field(Model::J, 1, c.target.base(), true);
  field.set_generators({field.var("c1") * field.var("z1") - field.var("a1")});
  DerivationWitness w;
  w.model = Model::J;
  w.n = 1;
  w.field = field;
  w.delta = {std::vector<RatFunc>(4, RatFunc::constant(field.registry(), 0))};
  w.lambda = {RatFunc::constant(field.registry(), 0)};
  CHECK(verify_witness(c.target, w).verified);
  CHECK(kind_of([&] { lift_point(w, c); }) == Error::Kind::LiftSingular);
}

TEST_CASE("j lift preserves broadness both ways") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> coef(-2, 2);
  const char* names[] = {"z1", "j1", "z2", "j2"};
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<std::string> gens;
    int count = int(rng() % 3);
    for (int g = 0; g < count; ++g) {
      std::string s = std::to_string(coef(rng));
      for (int v = 0; v < 4; ++v) {
        int a = coef(rng);
        if (a != 0) s += "+" + std::to_string(a) + "*" + names[v] + (rng() % 2 ? "^2" : "");
      }
      gens.push_back(s);
    }
    Variety V = Variety::from_strings(Model::j, 2, parse_base("Q(t)"), true, gens);
    if (variety_dimension(V) < 0) continue;
    auto c = j_lift(V);
    CHECK(c.source_broad == c.target_broad);
  }
}

TEST_CASE("Moebius elimination agrees with direct elimination") {
  const std::vector<std::vector<std::string>> cases = {
      {"j1 - j2"}, {"j1 - j2", "z2 - jp2"}, {"j1 - j2", "jp1 - 2*jpp2"}, {"j1 - j2", "z1 - jp2"}};
  for (const auto& gens : cases) {
    CAPTURE(gens.back());
    Variety V = V_of(Model::J, 2, gens);
    auto c = mobius_modular_reduction(V, 1, 2, 1);
    const Variety& S = *c.auxiliary;
    std::vector<MPoly> all = S.generators();
    for (const MPoly& g : V.generators()) all.push_back(g.remap(S.registry()));
    std::vector<std::size_t> keep = S.block(2);
    GroebnerBasis E = eliminate(all, S.registry(), S.block(1), {keep, S.parameters()});
    // Read block 2 as block 1 of W.
    Variety direct(Model::J, 1, c.target.base(), true);
    std::vector<MPoly> renamed;
    for (const MPoly& g : E.gens()) {
      MPoly h = g;
      for (std::size_t s = 0; s < 4; ++s) h = h.substitute(S.coord(1, s), MPoly::constant(S.registry(), 0));
      std::vector<Term> terms;
      for (const Term& t : h.terms()) {
        Monomial m;
        for (std::size_t v = 0; v < S.registry()->size(); ++v) {
          if (t.mono[v] == 0) continue;
          m.set(v - 4, t.mono[v]);  // block 2, then t and the constants, shift down by one block
        }
        terms.push_back(Term{m, t.coeff});
      }
      renamed.push_back(MPoly::from_terms(direct.registry(), nullptr, terms));
    }
    direct.set_generators(renamed);
    GroebnerBasis Gd = variety_basis(direct), Gw = variety_basis(c.target);
    for (const MPoly& g : c.target.generators()) CHECK(vanishes_on(g.remap(direct.registry()), direct, Gd));
    for (const MPoly& g : direct.generators()) CHECK(vanishes_on(g.remap(c.target.registry()), c.target, Gw));
    DerivationWitness lifted = lift_point(extend_derivation(c.target), c);
    CHECK(lifted.verified);
  }
}
