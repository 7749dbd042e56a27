#include "ecj/engine.hpp"

#include <algorithm>

#include "ecj/error.hpp"
#include "ecj/geometry.hpp"
#include "ecj/jpoly.hpp"

namespace ecj {

const RatFunc& DerivationWitness::value(std::size_t k, const std::string& coordinate) const {
  std::size_t idx = field.registry()->index(coordinate);
  std::vector<std::size_t> coords = field.coordinates();
  for (std::size_t c = 0; c < coords.size(); ++c) {
    if (coords[c] == idx) return delta.at(k).at(c);
  }
  throw Error(Error::Kind::InvalidInput, coordinate + " is not a coordinate of the witness field");
}

RatFunc apply_derivation(const CoordField& L, const DerivationWitness& w, std::size_t k, const RatFunc& f) {
  const Variety& V = L.variety();
  RatFunc g = f.remap(V.registry());
  RatFunc out = L.zero();
  std::vector<std::size_t> coords = V.coordinates();
  for (std::size_t c = 0; c < coords.size(); ++c) {
    const RatFunc& d = w.delta.at(k).at(c);
    if (d.is_zero()) continue;
    RatFunc p = g.partial(coords[c]);
    if (!p.is_zero()) out = out + p * d;
  }
  std::vector<std::size_t> params = V.derivation_params();
  if (k < params.size() && k < w.lambda.size() && !w.lambda[k].is_zero()) {
    RatFunc p = g.partial(params[k]);
    if (!p.is_zero()) out = out + p * w.lambda[k];
  }
  return L.normalize(out);
}

namespace {

void require_model_supported(const Variety& V) {
  if (V.model() == Model::j) {
    throw Error(Error::Kind::InvalidInput, "model j varieties must be lifted to model J first");
  }
}

// eta at block i of a model J field, with poles reported as SingularLocus.
RatFunc block_eta(const CoordField& K, std::size_t i) {
  const Variety& V = K.variety();
  try {
    return j_eta(K, K.variable(V.coord(i, 1)), K.variable(V.coord(i, 2)), K.variable(V.coord(i, 3)));
  } catch (const PoleError& e) {
    throw Error(Error::Kind::SingularLocus,
                "eta has a pole on the variety at block " + std::to_string(i) + " (" + e.denominator() + " = 0)");
  }
}

void require_singular_clean(const Variety& V, const GroebnerOptions& opts) {
  if (V.model() != Model::J) return;
  SingularReport rep = singular_locus_check(V, opts);
  if (rep.pass) return;
  std::string msg = "the variety lies in the singular locus:";
  for (const auto& f : rep.failures) msg += " " + f.second.to_string() + "=0";
  throw Error(Error::Kind::SingularLocus, msg);
}


FieldMatrix<RatFunc> coordinate_block(const CoordField& K, const ConstraintSystem& S, bool generators_only) {
  FieldMatrix<RatFunc> M(0, S.ncoords, K.zero());
  for (std::size_t r = 0; r < S.matrix.rows(); ++r) {
    if (generators_only && S.rows[r].kind != ConstraintRow::Kind::Generator) continue;
    std::vector<RatFunc> row = S.matrix.row(r);
    row.resize(S.ncoords);
    M.append_row(row);
  }
  return M;
}

DerivationWitness make_witness(const Variety& field, std::size_t nder, Model model, std::size_t n) {
  DerivationWitness w;
  w.model = model;
  w.n = n;
  w.field = field;
  w.delta.assign(nder, std::vector<RatFunc>(field.ncoords(), RatFunc::constant(field.registry(), 0)));
  w.lambda.assign(nder, RatFunc::constant(field.registry(), 0));
  return w;
}

void finish(const Variety& V, DerivationWitness& w) {
  VerifyReport rep = verify_witness(V, w);
  w.verified = rep.verified;
  w.all_nonconstant = rep.all_nonconstant;
  if (!rep.verified) {
    std::string msg = "constructed witness failed verification:";
    for (const auto& f : rep.failures) msg += " [" + f + "]";
    throw Error(Error::Kind::Internal, msg);
  }
}

// The model rows give delta(slot s of block i) = f_s * delta(first slot of
// block i), with f = (1, jp, jpp, eta) or (1, y). Substituting them leaves one
// unknown per block: the generator rows times that basis.
struct ReducedSystem {
  std::vector<std::vector<RatFunc>> basis;  // [block][coordinate index]
  FieldMatrix<RatFunc> matrix;              // generators x blocks
  FieldMatrix<RatFunc> lambda;              // generators x derivation params
};

ReducedSystem reduce_system(const CoordField& K) {
  const Variety& V = K.variety();
  require_model_supported(V);
  std::vector<std::size_t> coords = V.coordinates();
  std::vector<std::size_t> params = V.derivation_params();
  std::vector<std::size_t> position(V.registry()->size(), 0);
  for (std::size_t c = 0; c < coords.size(); ++c) position[coords[c]] = c;
  ReducedSystem R;
  for (std::size_t i = 1; i <= V.n(); ++i) {
    std::vector<RatFunc> b(coords.size(), K.zero());
    b[position[V.coord(i, 0)]] = K.one();
    if (V.model() == Model::J) {
      b[position[V.coord(i, 1)]] = K.variable(V.coord(i, 2));
      b[position[V.coord(i, 2)]] = K.variable(V.coord(i, 3));
      b[position[V.coord(i, 3)]] = block_eta(K, i);
    } else {
      b[position[V.coord(i, 1)]] = K.variable(V.coord(i, 1));
    }
    R.basis.push_back(std::move(b));
  }
  R.matrix = FieldMatrix<RatFunc>(0, V.n(), K.zero());
  R.lambda = FieldMatrix<RatFunc>(0, params.size(), K.zero());
  const std::size_t arity = V.model() == Model::J ? 4 : 2;
  for (const MPoly& f : V.generators()) {
    std::vector<RatFunc> row;
    for (std::size_t i = 1; i <= V.n(); ++i) {
      RatFunc e = K.zero();
      for (std::size_t s = 0; s < arity; ++s) {
        MPoly d = f.partial(V.coord(i, s));
        if (d.is_zero()) continue;
        e = e + K.from_poly(d) * R.basis[i - 1][position[V.coord(i, s)]];
      }
      row.push_back(K.normalize(e));
    }
    R.matrix.append_row(row);
    std::vector<RatFunc> lrow;
    for (std::size_t t : params) lrow.push_back(K.from_poly(f.partial(t)));
    R.lambda.append_row(lrow);
  }
  return R;
}

std::vector<RatFunc> expand(const CoordField& K, const ReducedSystem& R, const std::vector<RatFunc>& u) {
  std::vector<RatFunc> x(R.basis.empty() ? 0 : R.basis[0].size(), K.zero());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (K.is_zero(u[i])) continue;
    for (std::size_t c = 0; c < x.size(); ++c) {
      if (!R.basis[i][c].is_zero()) x[c] = K.add(x[c], K.mul(u[i], R.basis[i][c]));
    }
  }
  return x;
}

// Solution for derivation k: lambda = e_k, kernel parameters 0, except that
// with `pin_blocks` each delta(z_i) (or delta(x_i)), in block order, is set
// to 1 while it is still free on the remaining kernel.
std::vector<RatFunc> solve_for(const CoordField& K, const ReducedSystem& R, std::size_t k, bool pin_blocks) {
  std::vector<RatFunc> b(R.matrix.rows(), K.zero());
  if (k < R.lambda.cols()) {
    for (std::size_t r = 0; r < R.matrix.rows(); ++r) b[r] = K.sub(K.zero(), R.lambda.at(r, k));
  }
  AffineSolution<RatFunc> sol = solve_affine_system(K, R.matrix, b);
  std::vector<RatFunc> u = sol.particular;
  std::vector<std::vector<RatFunc>> kernel = sol.kernel;
  for (std::size_t i = 0; pin_blocks && i < u.size(); ++i) {
    auto it = std::find_if(kernel.begin(), kernel.end(), [&](const auto& kv) { return !K.is_zero(kv[i]); });
    if (it == kernel.end()) continue;
    std::vector<RatFunc> piv = *it;
    kernel.erase(it);
    RatFunc s = K.div(K.sub(K.one(), u[i]), piv[i]);
    for (std::size_t c = 0; c < u.size(); ++c) u[c] = K.add(u[c], K.mul(s, piv[c]));
    for (auto& kv : kernel) {
      if (K.is_zero(kv[i])) continue;
      RatFunc f = K.div(kv[i], piv[i]);
      for (std::size_t c = 0; c < kv.size(); ++c) kv[c] = K.sub(kv[c], K.mul(f, piv[c]));
    }
  }
  return expand(K, R, u);
}

std::string delta_label(const Variety& V, std::size_t idx) { return "delta(" + V.registry()->name(idx) + ")"; }

}  // namespace

ConstraintSystem assemble_constraints(const CoordField& K) {
  const Variety& V = K.variety();
  require_model_supported(V);
  ConstraintSystem S;
  std::vector<std::size_t> coords = V.coordinates();
  std::vector<std::size_t> params = V.derivation_params();
  S.ncoords = coords.size();
  S.nlambda = params.size();
  for (std::size_t c : coords) S.unknowns.push_back(delta_label(V, c));
  for (std::size_t l = 0; l < params.size(); ++l) S.unknowns.push_back("lambda" + std::to_string(l + 1));
  S.matrix = FieldMatrix<RatFunc>(0, S.ncoords + S.nlambda, K.zero());

  for (std::size_t g = 0; g < V.generators().size(); ++g) {
    const MPoly& f = V.generators()[g];
    std::vector<RatFunc> row;
    for (std::size_t c : coords) row.push_back(K.from_poly(f.partial(c)));
    for (std::size_t t : params) row.push_back(K.from_poly(f.partial(t)));
    S.matrix.append_row(row);
    S.rows.push_back({ConstraintRow::Kind::Generator, g, "prolongation of " + f.to_string()});
  }

  auto model_row = [&](std::size_t i, std::size_t target, std::size_t source, const RatFunc& factor,
                       const std::string& label) {
    std::vector<RatFunc> row(S.ncoords + S.nlambda, K.zero());
    row[target] = K.one();
    row[source] = K.sub(row[source], factor);
    S.matrix.append_row(row);
    S.rows.push_back({ConstraintRow::Kind::Model, i, label});
  };
  for (std::size_t i = 1; i <= V.n(); ++i) {
    const std::string si = std::to_string(i);
    if (V.model() == Model::J) {
      RatFunc eta = block_eta(K, i);
      model_row(i, V.coord(i, 1), V.coord(i, 0), K.variable(V.coord(i, 2)), "delta(j" + si + ") - jp" + si + "*delta(z" + si + ")");
      model_row(i, V.coord(i, 2), V.coord(i, 0), K.variable(V.coord(i, 3)), "delta(jp" + si + ") - jpp" + si + "*delta(z" + si + ")");
      model_row(i, V.coord(i, 3), V.coord(i, 0), eta, "delta(jpp" + si + ") - eta" + si + "*delta(z" + si + ")");
    } else {
      model_row(i, V.coord(i, 1), V.coord(i, 0), K.variable(V.coord(i, 1)), "delta(y" + si + ") - y" + si + "*delta(x" + si + ")");
    }
  }
  return S;
}

// rank[G; M] = rank M + rank(G restricted to ker M), and ker M is spanned by
// the reduced basis.
std::size_t lambda_rank(const CoordField& K, const ConstraintSystem& S) {
  ReducedSystem R = reduce_system(K);
  std::size_t all = S.ncoords - R.basis.size() + matrix_rank(K, R.matrix);
  std::size_t gens = matrix_rank(K, coordinate_block(K, S, true));
  return all - gens;
}

std::size_t solution_dimension(const CoordField& K, const ConstraintSystem&) {
  ReducedSystem R = reduce_system(K);
  return R.basis.size() - matrix_rank(K, R.matrix);
}

DerivationWitness extend_derivation(const Variety& V0, const EngineOptions& opts) {
  Variety V = V0.model() == Model::j ? lift_j_to_J(V0) : V0;
  if (V.base().derivations() != 1) {
    throw Error(Error::Kind::InvalidInput, "construct requires a base with exactly one derivation (base " +
                                               V.base().descriptor() + ")");
  }
  CoordField K(V, opts.groebner);
  require_singular_clean(V, opts.groebner);
  ReducedSystem R = reduce_system(K);
  std::vector<RatFunc> x = solve_for(K, R, 0, true);
  DerivationWitness w = make_witness(V, 1, V0.model(), V0.n());
  w.delta[0] = x;
  w.lambda[0] = K.one();
  finish(V0, w);
  return w;
}

NonconstantResult extend_derivation_nonconstant(const Variety& V0, const EngineOptions& opts) {
  Variety V = V0.model() == Model::j ? lift_j_to_J(V0) : V0;
  if (V.base().derivations() != 0) {
    throw Error(Error::Kind::InvalidInput, "construct-nonconstant requires a base of constants (base " +
                                               V.base().descriptor() + ")");
  }
  NonconstantResult res;
  CoordField K(V, opts.groebner);
  require_singular_clean(V, opts.groebner);
  if (V.model() == Model::J) {
    BroadnessReport br = check_broadness(V, opts.groebner);
    if (!br.strong) res.warnings.push_back("variety is not strongly J-broad");
    FreenessReport fr = check_freeness(V, opts.nmax, opts.groebner);
    if (!fr.free) res.warnings.push_back("variety is not J-free up to level " + std::to_string(opts.nmax));
  }
  ReducedSystem R = reduce_system(K);
  AffineSolution<RatFunc> sol = solve_homogeneous(K, R.matrix);
  for (auto& kv : sol.kernel) kv = expand(K, R, kv);
  res.solution_dimension = sol.kernel.size();
  std::vector<std::size_t> coords = V.coordinates();
  for (std::size_t c = 0; c < coords.size(); ++c) {
    bool vanishes = true;
    for (const auto& kv : sol.kernel) vanishes = vanishes && K.is_zero(kv[c]);
    if (vanishes) {
      throw Error(Error::Kind::ConstantForced, "every derivation in the solution space kills " +
                                                   V.registry()->name(coords[c]));
    }
  }
  const long kMaxMultiplier = 100000;
  for (long cm = 1; cm <= kMaxMultiplier; ++cm) {
    std::vector<RatFunc> x(coords.size(), K.zero());
    RatFunc power = K.one();
    for (const auto& kv : sol.kernel) {
      for (std::size_t c = 0; c < x.size(); ++c) x[c] = K.add(x[c], K.mul(power, kv[c]));
      power = K.mul(power, K.constant(cm));
    }
    bool ok = true;
    for (const auto& v : x) ok = ok && !K.is_zero(v);
    if (!ok) continue;
    res.multiplier = cm;
    res.witness = make_witness(V, 1, V0.model(), V0.n());
    res.witness.delta[0] = x;
    finish(V0, res.witness);
    return res;
  }
  throw Error(Error::Kind::Internal, "no admissible multiplier found");
}

MultiResult extend_derivations_multi(const Variety& V0, const EngineOptions& opts) {
  Variety V = V0.model() == Model::j ? lift_j_to_J(V0) : V0;
  std::size_t m = V.base().derivations();
  if (m == 0) throw Error(Error::Kind::InvalidInput, "construct-multi requires a base with derivations");
  CoordField K(V, opts.groebner);
  require_singular_clean(V, opts.groebner);
  ReducedSystem R = reduce_system(K);
  MultiResult res;
  res.witness = make_witness(V, m, V0.model(), V0.n());
  for (std::size_t k = 0; k < m; ++k) {
    res.witness.delta[k] = solve_for(K, R, k, k == 0);
    res.witness.lambda[k] = K.one();
  }
  finish(V0, res.witness);
  std::vector<std::size_t> coords = V.coordinates();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t c = 0; c < coords.size(); ++c) {
        RatFunc ab = apply_derivation(K, res.witness, a, res.witness.delta[b][c]);
        RatFunc ba = apply_derivation(K, res.witness, b, res.witness.delta[a][c]);
        RatFunc r = K.sub(ab, ba);
        if (!K.is_zero(r)) res.commuting = false;
        res.residues.push_back({a, b, V.registry()->name(coords[c]), r});
      }
    }
  }
  return res;
}

std::vector<std::string> model_relation_failures(const CoordField& L, const DerivationWitness& w,
                                                 std::vector<std::string>* notes) {
  const Variety& F = L.variety();
  std::vector<std::string> out;
  auto var = [&](const std::string& name) { return L.variable(F.registry()->index(name)); };
  for (std::size_t k = 0; k < w.derivations(); ++k) {
    const std::string sk = std::to_string(k + 1);
    for (std::size_t i = 1; i <= w.n; ++i) {
      const std::string si = std::to_string(i);
      auto check = [&](const RatFunc& r, const std::string& label) {
        if (!L.is_zero(r)) out.push_back("derivation " + sk + ": " + label + " = " + r.to_string());
      };
      if (w.model == Model::exp) {
        const RatFunc& dx = w.value(k, "x" + si);
        const RatFunc& dy = w.value(k, "y" + si);
        check(L.sub(dy, L.mul(var("y" + si), dx)), "delta(y" + si + ") - y" + si + "*delta(x" + si + ")");
        continue;
      }
      const RatFunc& dz = w.value(k, "z" + si);
      const RatFunc& dj = w.value(k, "j" + si);
      const RatFunc& djp = w.value(k, "jp" + si);
      const RatFunc& djpp = w.value(k, "jpp" + si);
      RatFunc j = var("j" + si), jp = var("jp" + si), jpp = var("jpp" + si);
      std::optional<RatFunc> eta;
      std::string pole;
      try {
        eta = j_eta(L, j, jp, jpp);
      } catch (const PoleError& e) {
        pole = e.denominator();
      }
      if (!eta) {
        bool constant = L.is_zero(dz) && L.is_zero(dj) && L.is_zero(djp) && L.is_zero(djpp);
        if (constant) {
          if (notes) notes->push_back("derivation " + sk + ": block " + si + " is constant (" + pole + " = 0)");
        } else {
          out.push_back("derivation " + sk + ": eta" + si + " undefined (" + pole + " = 0) on a nonconstant block");
        }
        continue;
      }
      check(L.sub(dj, L.mul(jp, dz)), "delta(j" + si + ") - jp" + si + "*delta(z" + si + ")");
      check(L.sub(djp, L.mul(jpp, dz)), "delta(jp" + si + ") - jpp" + si + "*delta(z" + si + ")");
      check(L.sub(djpp, L.mul(*eta, dz)), "delta(jpp" + si + ") - eta" + si + "*delta(z" + si + ")");
    }
  }
  return out;
}

VerifyReport verify_witness(const Variety& V, const DerivationWitness& w) {
  VerifyReport rep;
  try {
    if (w.model != V.model() || w.n != V.n()) {
      rep.failures.push_back(std::string("witness is for model ") + model_name(w.model) + " n=" +
                             std::to_string(w.n) + ", variety has model " + model_name(V.model()) +
                             " n=" + std::to_string(V.n()));
      return rep;
    }
    Model need = V.model() == Model::exp ? Model::exp : Model::J;
    if (w.field.model() != need || w.field.n() != V.n()) {
      rep.failures.push_back("witness field has the wrong coordinate layout");
      return rep;
    }
    if (w.lambda.size() != w.derivations()) {
      rep.failures.push_back("lambda count differs from the derivation count");
      return rep;
    }
    for (const auto& d : w.delta) {
      if (d.size() != w.field.ncoords()) {
        rep.failures.push_back("derivation table has the wrong number of coordinates");
        return rep;
      }
    }
    for (std::size_t k = w.field.base().derivations(); k < w.derivations(); ++k) {
      if (!w.lambda[k].is_zero()) {
        rep.failures.push_back("lambda " + std::to_string(k + 1) + " refers to a missing base derivation");
      }
    }
    for (std::size_t p : V.parameters()) {
      if (!w.field.registry()->find(V.registry()->name(p))) {
        rep.failures.push_back("base parameter " + V.registry()->name(p) + " is missing from the witness field");
      }
    }
    if (!rep.failures.empty()) return rep;

    CoordField L(w.field);
    for (std::size_t k = 0; k < w.derivations(); ++k) {
      const std::string sk = std::to_string(k + 1);
      for (const MPoly& g : w.field.generators()) {
        RatFunc r = apply_derivation(L, w, k, RatFunc(g));
        if (!L.is_zero(r)) {
          rep.failures.push_back("derivation " + sk + " is not well defined: prolongation of field relation " +
                                 g.to_string() + " = " + r.to_string());
        }
      }
      for (const MPoly& g0 : V.generators()) {
        MPoly g = g0.remap(w.field.registry());
        if (k == 0 && !L.is_zero_poly(g)) {
          rep.failures.push_back("generator " + g0.to_string() + " does not vanish at the point");
        }
        RatFunc r = apply_derivation(L, w, k, RatFunc(g));
        if (!L.is_zero(r)) {
          rep.failures.push_back("derivation " + sk + ": prolongation of " + g0.to_string() + " = " + r.to_string());
        }
      }
    }
    for (auto& f : model_relation_failures(L, w, &rep.notes)) rep.failures.push_back(std::move(f));

    rep.all_nonconstant = true;
    for (std::size_t c : V.coordinates()) {
      const std::string& name = V.registry()->name(c);
      bool moved = false;
      for (std::size_t k = 0; k < w.derivations() && !moved; ++k) moved = !L.is_zero(w.value(k, name));
      rep.all_nonconstant = rep.all_nonconstant && moved;
    }
  } catch (const Error& e) {
    rep.failures.push_back(std::string("verification error (") + kind_name(e.kind()) + "): " + e.what());
  }
  rep.verified = rep.failures.empty();
  return rep;
}

}  // namespace ecj
