#include "ecj/reductions.hpp"

#include <algorithm>
#include <map>

#include "ecj/coordfield.hpp"
#include "ecj/error.hpp"
#include "ecj/jpoly.hpp"
#include "ecj/modular.hpp"

namespace ecj {

const char* reduction_kind_name(ReductionKind k) noexcept {
  switch (k) {
    case ReductionKind::JLift: return "j-lift";
    case ReductionKind::ConstantFiber: return "constant-fiber";
    case ReductionKind::MobiusModular: return "mobius-modular";
  }
  return "?";
}

ReductionKind parse_reduction_kind(std::string_view s) {
  if (s == "j-lift") return ReductionKind::JLift;
  if (s == "constant-fiber") return ReductionKind::ConstantFiber;
  if (s == "mobius-modular") return ReductionKind::MobiusModular;
  throw Error(Error::Kind::InvalidInput, "unknown reduction kind '" + std::string(s) + "'");
}

namespace {

using NameMap = std::map<std::string, std::string>;

MPoly rename(const MPoly& p, const NameMap& m, const RegistryPtr& target) {
  std::vector<std::string> names = p.registry()->names();
  std::vector<bool> used(names.size(), false);
  for (std::size_t v : p.support()) used[v] = true;
  for (std::size_t v = 0; v < names.size(); ++v) {
    auto it = m.find(names[v]);
    if (it != m.end()) {
      names[v] = it->second;
    } else if (!used[v]) {
      names[v] = "#" + std::to_string(v);  // keeps unused names from colliding with renamed ones
    }
  }
  return MPoly::from_terms(make_registry(names), nullptr, p.terms()).remap(target);
}

RatFunc rename(const RatFunc& f, const NameMap& m, const RegistryPtr& target) {
  return RatFunc(rename(f.num(), m, target), rename(f.den(), m, target));
}

// Names of the target's block b mapped to the source's block surviving[b-1].
NameMap block_map(std::size_t arity_n, const std::vector<std::size_t>& surviving) {
  NameMap m;
  for (std::size_t b = 1; b <= surviving.size(); ++b) {
    for (std::size_t s = 0; s < arity_n; ++s) {
      m[coordinate_name(Model::J, b, s)] = coordinate_name(Model::J, surviving[b - 1], s);
    }
  }
  return m;
}

NameMap inverse(const NameMap& m) {
  NameMap r;
  for (const auto& kv : m) r[kv.second] = kv.first;
  return r;
}

void require_model_J(const Variety& V, const char* what) {
  if (V.model() != Model::J) {
    throw Error(Error::Kind::InvalidInput, std::string(what) + " needs a model J variety (lift model j first)");
  }
}

void require_block(const Variety& V, std::size_t i, const char* name) {
  if (i < 1 || i > V.n()) {
    throw Error(Error::Kind::InvalidInput, std::string(name) + " = " + std::to_string(i) + " is not a block of V");
  }
}

std::vector<std::size_t> others(std::size_t n, std::size_t i) {
  std::vector<std::size_t> out;
  for (std::size_t b = 1; b <= n; ++b) {
    if (b != i) out.push_back(b);
  }
  return out;
}

std::vector<std::size_t> coordinates_outside(const Variety& V, std::size_t i) {
  std::vector<std::size_t> out;
  for (std::size_t b : others(V.n(), i)) {
    for (std::size_t c : V.block(b)) out.push_back(c);
  }
  return out;
}

std::string fresh_suffix(const Variety& V) {
  for (int s = 1;; ++s) {
    std::string x = std::to_string(s);
    bool taken = false;
    for (const char* l : {"a", "b", "c", "d"}) taken = taken || V.registry()->find(l + x).has_value();
    if (!taken) return x;
  }
}

bool base_contains(const BaseField& outer, const BaseField& inner) {
  auto has = [](const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  for (const auto& p : inner.params) {
    if (!has(outer.params, p)) return false;
  }
  for (const auto& c : inner.constants) {
    if (!has(outer.constants, c)) return false;
  }
  return true;
}


// Pr_i(V meets S) on the open set where c z_i + d and dPhi/dX are nonzero.
// There E0, E1, E2 solve for z_i, jp_i, jpp_i rationally, so only j_i is left
// to eliminate; the auxiliary variable saturates by the denominators.
GroebnerBasis eliminate_mobius_block(const Variety& Vc, const std::vector<MPoly>& source_gens, std::size_t i,
                                     std::size_t k, unsigned N, const std::array<std::string, 4>& constants,
                                     const GroebnerOptions& opts) {
  std::vector<std::string> names = Vc.registry()->names();
  names.push_back("#u");
  RegistryPtr reg = make_registry(names);
  const std::size_t u = names.size() - 1;
  auto var = [&](std::size_t idx) { return MPoly::variable(reg, idx); };
  auto named = [&](const std::string& x) { return MPoly::variable(reg, x); };
  auto at = [&](std::size_t b, std::size_t s) { return Vc.coord(b, s); };
  MPoly a = named(constants[0]), b = named(constants[1]), c = named(constants[2]), d = named(constants[3]);
  MPoly phi = modular_polynomial_cached(N).as_poly(reg, at(i, 1), at(k, 1));
  MPoly PX = phi.partial(at(i, 1)), PY = phi.partial(at(k, 1));
  MPoly PXX = PX.partial(at(i, 1)), PXY = PX.partial(at(k, 1)), PYY = PY.partial(at(k, 1));
  MPoly q0 = a - c * var(at(k, 0));
  MPoly delta = a * d - b * c;
  RatFunc zi(d * var(at(k, 0)) - b, q0);
  RatFunc w(delta, q0);
  RatFunc jpk(var(at(k, 2))), jppk(var(at(k, 3)));
  RatFunc D(delta);
  RatFunc jpi = RatFunc(PY * var(at(k, 2)) * q0 * q0 * MPoly::constant(reg, -1), PX * delta);
  RatFunc w2 = w * w, w3 = w2 * w, w4 = w2 * w2;
  RatFunc two = RatFunc::constant(reg, 2);
  RatFunc rest = RatFunc(PXX) * jpi * jpi * w4 + two * RatFunc(PXY) * jpi * jpk * D * w2 +
                 RatFunc(PYY) * jpk * jpk * D * D +
                 two * RatFunc(PX) * RatFunc(c) * jpi * w3 + RatFunc(PY) * jppk * D * D;
  RatFunc jppi = (RatFunc::constant(reg, 0) - rest) / (RatFunc(PX) * w4);

  std::vector<MPoly> gens{phi, var(u) * q0 * PX - MPoly::constant(reg, 1)};
  for (const MPoly& g : source_gens) {
    RatFunc f(g.remap(reg));
    f = f.substitute(at(i, 0), zi).substitute(at(i, 2), jpi).substitute(at(i, 3), jppi);
    if (!f.is_zero()) gens.push_back(f.num());
  }
  std::vector<std::size_t> keep = coordinates_outside(Vc, i);
  GroebnerBasis E = eliminate(gens, reg, {u, at(i, 0), at(i, 1), at(i, 2), at(i, 3)}, {keep, Vc.parameters()}, opts);
  std::vector<MPoly> out;
  for (const MPoly& g : E.gens()) out.push_back(g.remap(Vc.registry()));
  return buchberger(out, Vc.registry(), elimination_order(keep, {Vc.parameters(), Vc.block(i)}, Vc.registry()->size()),
                    opts);
}

}  // namespace

std::vector<std::size_t> surviving_blocks(const ReductionCertificate& c) {
  if (c.kind == ReductionKind::JLift) {
    std::vector<std::size_t> all;
    for (std::size_t b = 1; b <= c.source.n(); ++b) all.push_back(b);
    return all;
  }
  return others(c.source.n(), c.block);
}

ReductionCertificate j_lift(const Variety& V, const GroebnerOptions& opts) {
  ReductionCertificate c;
  c.kind = ReductionKind::JLift;
  c.source = V;
  c.target = lift_j_to_J(V);
  c.source_broad = check_broadness(V, opts).broad;
  c.target_broad = check_broadness(c.target, opts).broad;
  return c;
}

ReductionCertificate fiber_constant_coordinate(const Variety& V, std::size_t i, const std::array<Rational, 4>& p,
                                               const GroebnerOptions& opts) {
  require_model_J(V, "fibering");
  if (V.n() < 2) throw Error(Error::Kind::InvalidInput, "fibering needs n >= 2");
  require_block(V, i, "block");
  if (sgn(p[2]) == 0) throw Error(Error::Kind::InvalidInput, "fiber point needs b' != 0");
  if (sgn(p[1]) == 0 || p[1] == 1728) {
    throw Error(Error::Kind::InvalidInput, "fiber point needs b not in {0, 1728} so that eta is defined");
  }
  bool any = false;
  for (std::size_t c : V.block(i)) any = any || coordinate_is_constant(V, c, opts);
  if (!any) {
    throw Error(Error::Kind::NoConstantCoordinate, "no coordinate of block " + std::to_string(i) + " is constant on V");
  }
  auto at_p = [&](MPoly f) {
    for (std::size_t s = 0; s < 4; ++s) f = f.substitute(V.coord(i, s), MPoly::constant(V.registry(), p[s]));
    return f;
  };
  GroebnerBasis E = eliminate(V.generators(), V.registry(), coordinates_outside(V, i), {V.block(i), V.parameters()},
                              opts);
  for (const MPoly& g : E.gens()) {
    if (!at_p(g).is_zero()) {
      throw Error(Error::Kind::FiberEmpty, "the point does not satisfy " + g.to_string() + " = 0 on block " +
                                               std::to_string(i));
    }
  }
  ReductionCertificate c;
  c.kind = ReductionKind::ConstantFiber;
  c.source = V;
  c.block = i;
  c.point = p;
  Variety W(Model::J, V.n() - 1, V.base(), V.assume_prime());
  NameMap to_W = inverse(block_map(4, others(V.n(), i)));
  std::vector<MPoly> gens;
  for (const MPoly& g : V.generators()) {
    MPoly f = at_p(g);
    if (!f.is_zero()) gens.push_back(rename(f, to_W, W.registry()));
  }
  W.set_generators(std::move(gens));
  if (variety_basis(W, opts).is_unit()) throw Error(Error::Kind::FiberEmpty, "the fiber is empty");
  c.target = W;
  c.source_broad = check_broadness(V, opts).broad;
  c.target_broad = check_broadness(W, opts).broad;
  return c;
}

std::array<MPoly, 3> mobius_relations(const Variety& Vc, std::size_t i, std::size_t k, unsigned N,
                                      const std::array<std::string, 4>& constants) {
  auto v = [&](std::size_t b, std::size_t s) { return Vc.var(Vc.coord(b, s)); };
  MPoly a = Vc.var(constants[0]), b = Vc.var(constants[1]), c = Vc.var(constants[2]), d = Vc.var(constants[3]);
  const std::size_t ji = Vc.coord(i, 1), jk = Vc.coord(k, 1);
  MPoly phi = modular_polynomial_cached(N).as_poly(Vc.registry(), ji, jk);
  MPoly PX = phi.partial(ji), PY = phi.partial(jk);
  MPoly PXX = PX.partial(ji), PXY = PX.partial(jk), PYY = PY.partial(jk);
  MPoly w = c * v(i, 0) + d;
  MPoly delta = a * d - b * c;
  MPoly w2 = w * w, w3 = w2 * w, w4 = w2 * w2, delta2 = delta * delta;
  MPoly jpi = v(i, 2), jpk = v(k, 2), jppi = v(i, 3), jppk = v(k, 3);
  MPoly e0 = a * v(i, 0) + b - v(k, 0) * w;
  MPoly e1 = PX * jpi * w2 + PY * jpk * delta;
  MPoly two = MPoly::constant(Vc.registry(), 2);
  MPoly e2 = PXX * jpi * jpi * w4 + two * PXY * jpi * jpk * delta * w2 + PYY * jpk * jpk * delta2 +
             PX * (jppi * w4 + two * c * jpi * w3) + PY * jppk * delta2;
  return {e0, e1, e2};
}

ReductionCertificate mobius_modular_reduction(const Variety& V, std::size_t i, std::size_t k, unsigned N,
                                              const GroebnerOptions& opts) {
  require_model_J(V, "the Moebius reduction");
  if (V.n() < 2) throw Error(Error::Kind::InvalidInput, "the Moebius reduction needs n >= 2");
  require_block(V, i, "i");
  require_block(V, k, "k");
  if (i == k) throw Error(Error::Kind::InvalidInput, "the Moebius reduction needs i != k");
  if (N < 1 || N > kMaxModularLevel) {
    throw Error(Error::Kind::LevelUnavailable,
                "modular polynomials are available up to level " + std::to_string(kMaxModularLevel));
  }
  GroebnerBasis G = variety_basis(V, opts);
  MPoly phi = modular_polynomial_cached(N).as_poly(V.registry(), V.coord(i, 1), V.coord(k, 1));
  if (!vanishes_on(phi, V, G)) {
    throw Error(Error::Kind::ModularRelationAbsent, "Phi_" + std::to_string(N) + "(j" + std::to_string(i) + ", j" +
                                                        std::to_string(k) + ") does not vanish on V");
  }
  ReductionCertificate c;
  c.kind = ReductionKind::MobiusModular;
  c.source = V;
  c.block = i;
  c.partner = k;
  c.level = N;
  std::string sfx = fresh_suffix(V);
  c.constants = {"a" + sfx, "b" + sfx, "c" + sfx, "d" + sfx};
  BaseField base = V.base();
  for (const auto& x : c.constants) base.constants.push_back(x);

  Variety Vc(Model::J, V.n(), base, V.assume_prime());
  auto rels = mobius_relations(Vc, i, k, N, c.constants);
  Variety S(Model::J, V.n(), base, false);
  S.set_generators({phi.remap(Vc.registry()), rels[0], rels[1], rels[2]});
  c.auxiliary = S;
  c.notes.push_back(c.constants[0] + "*" + c.constants[3] + " - " + c.constants[1] + "*" + c.constants[2] +
                    " != 0");

  GroebnerBasis E = eliminate_mobius_block(Vc, V.generators(), i, k, N, c.constants, opts);
  if (E.is_unit()) throw Error(Error::Kind::UnitIdeal, "V meets S in the empty set");
  Variety W(Model::J, V.n() - 1, base, V.assume_prime());
  NameMap to_W = inverse(block_map(4, others(V.n(), i)));
  std::vector<MPoly> gens;
  for (const MPoly& g : E.gens()) gens.push_back(rename(g, to_W, W.registry()));
  W.set_generators(std::move(gens));
  c.target = W;
  c.source_broad = check_broadness(V, opts).broad;
  c.target_broad = check_broadness(W, opts).broad;
  return c;
}

DerivationWitness lift_point(const DerivationWitness& w, const ReductionCertificate& c) {
  const Variety& T = c.target;
  if (w.model != T.model() || w.n != T.n()) {
    throw Error(Error::Kind::InvalidInput, "witness does not match the certificate's target (" +
                                               std::string(model_name(w.model)) + ", n=" + std::to_string(w.n) + ")");
  }
  auto finish = [&](DerivationWitness& out) {
    VerifyReport rep = verify_witness(c.source, out);
    out.verified = rep.verified;
    out.all_nonconstant = rep.all_nonconstant;
    if (!rep.verified) {
      std::string msg = "lifted witness failed verification:";
      for (const auto& f : rep.failures) msg += " [" + f + "]";
      throw Error(Error::Kind::Internal, msg);
    }
  };
  if (c.kind == ReductionKind::JLift) {
    DerivationWitness out = w;
    out.model = c.source.model();
    finish(out);
    return out;
  }

  const Variety& F = w.field;
  if (F.model() != Model::J || F.n() != w.n) throw Error(Error::Kind::InvalidInput, "witness field has the wrong layout");
  if (!base_contains(F.base(), c.source.base()) || !base_contains(F.base(), T.base())) {
    throw Error(Error::Kind::InvalidInput, "witness field base " + F.base().descriptor() +
                                               " lacks parameters or constants of the certificate");
  }
  const std::size_t n = c.source.n(), i = c.block;
  std::vector<std::size_t> surviving = surviving_blocks(c);
  NameMap to_L = block_map(4, surviving);
  Variety L(Model::J, n, F.base(), true);
  const RegistryPtr& reg = L.registry();
  std::vector<MPoly> gens;
  for (const MPoly& g : F.generators()) gens.push_back(rename(g, to_L, reg));
  for (const MPoly& g : c.source.generators()) gens.push_back(g.remap(reg));
  if (c.kind == ReductionKind::ConstantFiber) {
    for (std::size_t s = 0; s < 4; ++s) gens.push_back(L.var(L.coord(i, s)) - MPoly::constant(reg, c.point[s]));
  } else {
    if (!c.auxiliary) throw Error(Error::Kind::InvalidInput, "Moebius certificate without S");
    // z_i = (d z_k - b)/(a - c z_k) needs a - c z_k != 0, i.e. c z_i + d finite and nonzero.
    CoordField KW(F);
    std::size_t kpos = std::size_t(std::find(surviving.begin(), surviving.end(), c.partner) - surviving.begin()) + 1;
    MPoly zk = F.var(F.coord(kpos, 0));
    MPoly den = F.var(c.constants[0]) - F.var(c.constants[2]) * zk;
    if (KW.is_zero_poly(den)) {
      throw Error(Error::Kind::LiftSingular, "c*z" + std::to_string(i) + " + d = 0 at the witness");
    }
    for (const MPoly& g : c.auxiliary->generators()) gens.push_back(g.remap(reg));
  }
  L.set_generators(std::move(gens));

  std::optional<CoordField> Kopt;
  try {
    Kopt.emplace(L);
  } catch (const Error& e) {
    if (e.kind() != Error::Kind::UnitIdeal) throw;
    throw Error(Error::Kind::LiftSingular, "the witness point does not extend to block " + std::to_string(i));
  }
  const CoordField& K = *Kopt;

  DerivationWitness out;
  out.model = c.source.model();
  out.n = n;
  out.field = L;
  for (const auto& l : w.lambda) out.lambda.push_back(K.normalize(rename(l, to_L, reg)));
  for (const auto& x : w.constants) out.constants.push_back(K.normalize(rename(x, to_L, reg)));
  out.delta.assign(w.derivations(), std::vector<RatFunc>(L.ncoords(), K.zero()));
  for (std::size_t k = 0; k < w.derivations(); ++k) {
    for (std::size_t b = 1; b <= surviving.size(); ++b) {
      for (std::size_t s = 0; s < 4; ++s) {
        out.delta[k][L.coord(surviving[b - 1], s)] = K.normalize(rename(w.delta[k][F.coord(b, s)], to_L, reg));
      }
    }
  }
  if (c.kind == ReductionKind::MobiusModular) {
    const std::size_t kb = c.partner;
    RatFunc wv = K.from_poly(L.var(c.constants[2]) * L.var(L.coord(i, 0)) + L.var(c.constants[3]));
    RatFunc delta = K.from_poly(L.var(c.constants[0]) * L.var(c.constants[3]) -
                                L.var(c.constants[1]) * L.var(c.constants[2]));
    MPoly phi = modular_polynomial_cached(c.level).as_poly(reg, L.coord(i, 1), L.coord(kb, 1));
    if (K.is_zero(wv) || K.is_zero_poly(phi.partial(L.coord(i, 1)))) {
      throw Error(Error::Kind::LiftSingular, "c*z + d or d/dX Phi_N vanishes at the witness");
    }
    RatFunc eta;
    try {
      eta = j_eta(K, K.variable(L.coord(i, 1)), K.variable(L.coord(i, 2)), K.variable(L.coord(i, 3)));
    } catch (const PoleError& e) {
      throw Error(Error::Kind::LiftSingular, "eta has a pole at block " + std::to_string(i) + " (" + e.denominator() +
                                                 " = 0)");
    }
    RatFunc factor = K.div(K.mul(wv, wv), delta);
    for (std::size_t k = 0; k < w.derivations(); ++k) {
      RatFunc dz = K.mul(factor, out.delta[k][L.coord(kb, 0)]);
      out.delta[k][L.coord(i, 0)] = dz;
      out.delta[k][L.coord(i, 1)] = K.mul(K.variable(L.coord(i, 2)), dz);
      out.delta[k][L.coord(i, 2)] = K.mul(K.variable(L.coord(i, 3)), dz);
      out.delta[k][L.coord(i, 3)] = K.mul(eta, dz);
    }
  }
  finish(out);
  return out;
}

}  // namespace ecj
