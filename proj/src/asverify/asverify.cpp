#include "ecj/asverify.hpp"

#include <algorithm>
#include <map>

#include "ecj/error.hpp"
#include "ecj/modular.hpp"

namespace ecj {

const char* verdict_name(ASVerdict v) noexcept {
  switch (v) {
    case ASVerdict::HypothesesUnmet: return "hypotheses-unmet";
    case ASVerdict::Holds: return "inequality-holds";
    case ASVerdict::Violation: return "VIOLATION";
  }
  return "?";
}

namespace {

std::vector<RatFunc> differential(const CoordField& L, const RatFunc& f) {
  std::vector<RatFunc> row;
  for (std::size_t v = 0; v < L.registry()->size(); ++v) row.push_back(L.partial(f, v));
  return row;
}

std::size_t relation_rank(const CoordField& L, FieldMatrix<RatFunc>& M) {
  for (const MPoly& g : L.variety().generators()) M.append_row(differential(L, RatFunc(g)));
  return matrix_rank(L, M);
}

RatFunc evaluate_phi(const CoordField& L, const ModularPolynomial& phi, const RatFunc& x, const RatFunc& y) {
  std::vector<RatFunc> xp{L.one()}, yp{L.one()};
  for (unsigned e = 1; e <= phi.degree_x(); ++e) xp.push_back(L.mul(xp.back(), x));
  for (unsigned e = 1; e <= phi.degree_y(); ++e) yp.push_back(L.mul(yp.back(), y));
  RatFunc sum = L.zero();
  for (const ModularTerm& t : phi.terms()) {
    sum = sum + L.constant(Rational(t.coeff)) * xp[t.x_exp] * yp[t.y_exp];
  }
  return L.normalize(sum);
}

MPoly lcm(const MPoly& a, const MPoly& b) {
  MPoly g = gcd(a, b);
  return *divide_exact(a * b, g);
}

// Rational vectors q with sum_i q_i values[k][i] = 0 for every k.
std::vector<std::vector<Rational>> rational_relations(const CoordField& L,
                                                      const std::vector<std::vector<RatFunc>>& values,
                                                      std::size_t width) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& vk : values) {
    MPoly den = MPoly::constant(L.registry(), 1);
    std::vector<RatFunc> canon;
    for (const auto& v : vk) {
      canon.push_back(L.normalize(v));
      den = lcm(den, canon.back().den());
    }
    std::map<std::vector<unsigned>, std::vector<Rational>> by_mono;
    for (std::size_t i = 0; i < canon.size(); ++i) {
      MPoly n = canon[i].num() * *divide_exact(den, canon[i].den());
      for (const Term& t : n.terms()) {
        std::vector<unsigned> key;
        for (std::size_t v = 0; v < L.registry()->size(); ++v) key.push_back(t.mono[v]);
        auto& row = by_mono[key];
        if (row.empty()) row.assign(width, Rational(0));
        row[i] += t.coeff;
      }
    }
    for (auto& kv : by_mono) rows.push_back(kv.second);
  }
  RationalField Q;
  FieldMatrix<Rational> M(0, width, Rational(0));
  for (const auto& r : rows) M.append_row(r);
  return solve_homogeneous(Q, M).kernel;
}

struct Instance {
  std::vector<std::size_t> blocks;  // 1-based
  std::vector<RatFunc> constants;
};

std::string slot_name(Model m, std::size_t i, std::size_t s) {
  return coordinate_name(m == Model::exp ? Model::exp : Model::J, i, s);
}

// lhs, rhs and rank for the given blocks.
void measure(const CoordField& L, const DerivationWitness& w, const Instance& in, bool j_side, int& lhs, int& rhs,
             int& rank) {
  const Variety& F = L.variety();
  std::size_t arity = j_side ? 4 : 2;
  std::vector<RatFunc> coords;
  for (std::size_t i : in.blocks) {
    for (std::size_t s = 0; s < arity; ++s) coords.push_back(L.variable(F.registry()->index(slot_name(w.model, i, s))));
  }
  std::vector<RatFunc> all = in.constants;
  all.insert(all.end(), coords.begin(), coords.end());
  lhs = transcendence_degree(L, all) - transcendence_degree(L, in.constants);
  FieldMatrix<RatFunc> D(0, in.blocks.size(), L.zero());
  for (std::size_t k = 0; k < w.derivations(); ++k) {
    std::vector<RatFunc> row;
    for (std::size_t i : in.blocks) row.push_back(L.normalize(w.value(k, slot_name(w.model, i, 0))));
    D.append_row(row);
  }
  rank = int(matrix_rank(L, D));
  rhs = int((j_side ? 3 : 1) * in.blocks.size()) + rank;
}

std::vector<RatFunc> declared_constants(const CoordField& L, const DerivationWitness& w) {
  std::vector<RatFunc> c;
  for (std::size_t p : L.variety().constant_params()) c.push_back(L.variable(p));
  for (const auto& x : w.constants) c.push_back(L.normalize(x.remap(L.registry())));
  return c;
}

bool coordinate_moves(const CoordField& L, const DerivationWitness& w, const std::string& name) {
  for (std::size_t k = 0; k < w.derivations(); ++k) {
    if (!L.is_zero(w.value(k, name))) return true;
  }
  return false;
}

// Common part: relations, nonconstancy, and the blocks that are wholly constant.
void common_checks(const CoordField& L, const DerivationWitness& w, ASReport& rep,
                   std::vector<std::size_t>& constant_blocks, bool& partial_constant) {
  for (std::size_t k = 0; k < w.derivations(); ++k) {
    for (const MPoly& g : L.variety().generators()) {
      if (!L.is_zero(apply_derivation(L, w, k, RatFunc(g)))) {
        rep.problems.push_back("derivation " + std::to_string(k + 1) + " does not respect field relation " +
                               g.to_string());
      }
    }
  }
  for (auto& f : model_relation_failures(L, w)) rep.problems.push_back(f);
  rep.relations_hold = rep.problems.empty();
  std::size_t arity = w.model == Model::exp ? 2 : 4;
  partial_constant = false;
  for (std::size_t i = 1; i <= w.n; ++i) {
    std::size_t fixed = 0;
    for (std::size_t s = 0; s < arity; ++s) {
      std::string name = slot_name(w.model, i, s);
      if (!coordinate_moves(L, w, name)) {
        rep.constant_coordinates.push_back(name);
        ++fixed;
      }
    }
    if (fixed == arity) {
      constant_blocks.push_back(i);
    } else if (fixed > 0) {
      partial_constant = true;
    }
  }
  rep.nonconstant = rep.constant_coordinates.empty();
}

ASVerdict decide(bool hypotheses, int lhs, int rhs) {
  if (!hypotheses) return ASVerdict::HypothesesUnmet;
  return lhs >= rhs ? ASVerdict::Holds : ASVerdict::Violation;
}

bool check_shape(const DerivationWitness& w, bool j_side, ASReport& rep) {
  Model need = j_side ? Model::J : Model::exp;
  bool ok = (j_side ? w.model != Model::exp : w.model == Model::exp) && w.field.model() == need &&
            w.field.n() == w.n;
  for (const auto& d : w.delta) ok = ok && d.size() == w.field.ncoords();
  ok = ok && w.lambda.size() == w.delta.size();
  if (!ok) rep.problems.push_back(std::string("witness does not have the ") + (j_side ? "J" : "exp") + " layout");
  return ok;
}

}  // namespace

int transcendence_degree(const CoordField& L, const std::vector<RatFunc>& elems) {
  const std::size_t nv = L.registry()->size();
  FieldMatrix<RatFunc> base(0, nv, L.zero());
  std::size_t r0 = relation_rank(L, base);
  FieldMatrix<RatFunc> M(0, nv, L.zero());
  for (const auto& e : elems) M.append_row(differential(L, e.remap(L.registry())));
  std::size_t r1 = relation_rank(L, M);
  return int(r1 - r0);
}

ModularIndependenceReport modular_independence(const CoordField& L, const std::vector<RatFunc>& values,
                                               unsigned nmax) {
  if (nmax > kMaxModularLevel) {
    throw Error(Error::Kind::LevelUnavailable,
                "modular polynomials are available up to level " + std::to_string(kMaxModularLevel));
  }
  ModularIndependenceReport rep;
  rep.nmax = nmax;
  std::vector<RatFunc> v;
  for (const auto& x : values) v.push_back(L.normalize(x.remap(L.registry())));
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t k = i + 1; k < v.size(); ++k) {
      for (unsigned N = 1; N <= nmax; ++N) {
        if (L.is_zero(evaluate_phi(L, modular_polynomial_cached(N), v[i], v[k]))) {
          rep.relations.push_back(ModularRelation{N, i + 1, k + 1});
        }
      }
    }
  }
  rep.independent = rep.relations.empty();
  return rep;
}

ASReport check_ax_schanuel_j(const DerivationWitness& w, unsigned nmax) {
  ASReport rep;
  try {
    if (!check_shape(w, true, rep)) return rep;
    CoordField L(w.field);
    std::vector<std::size_t> constant_blocks;
    bool partial = false;
    common_checks(L, w, rep, constant_blocks, partial);
    auto jvalues = [&](const std::vector<std::size_t>& blocks) {
      std::vector<RatFunc> out;
      for (std::size_t i : blocks) out.push_back(L.variable(L.registry()->index("j" + std::to_string(i))));
      return out;
    };
    Instance full;
    for (std::size_t i = 1; i <= w.n; ++i) full.blocks.push_back(i);
    full.constants = declared_constants(L, w);
    rep.modular = modular_independence(L, jvalues(full.blocks), nmax);
    measure(L, w, full, true, rep.lhs, rep.rhs, rep.rank);
    rep.verdict = decide(rep.relations_hold && rep.nonconstant && rep.modular->independent, rep.lhs, rep.rhs);

    if (rep.relations_hold && !partial && !constant_blocks.empty()) {
      ASReducedInstance red;
      red.dropped = constant_blocks;
      Instance rest;
      rest.constants = full.constants;
      for (std::size_t i = 1; i <= w.n; ++i) {
        if (std::find(constant_blocks.begin(), constant_blocks.end(), i) != constant_blocks.end()) {
          for (std::size_t s = 0; s < 4; ++s) {
            rest.constants.push_back(L.variable(L.registry()->index(slot_name(w.model, i, s))));
          }
        } else {
          rest.blocks.push_back(i);
        }
      }
      red.n = rest.blocks.size();
      int rank = 0;
      measure(L, w, rest, true, red.lhs, red.rhs, rank);
      bool indep = modular_independence(L, jvalues(rest.blocks), nmax).independent;
      red.verdict = decide(indep, red.lhs, red.rhs);
      rep.reduced = red;
    }
  } catch (const Error& e) {
    rep.problems.push_back(std::string("check error (") + kind_name(e.kind()) + "): " + e.what());
    rep.verdict = ASVerdict::HypothesesUnmet;
  }
  return rep;
}

ASReport check_ax_schanuel_exp(const DerivationWitness& w) {
  ASReport rep;
  try {
    if (!check_shape(w, false, rep)) return rep;
    CoordField L(w.field);
    std::vector<std::size_t> constant_blocks;
    bool partial = false;
    common_checks(L, w, rep, constant_blocks, partial);
    auto independent = [&](const std::vector<std::size_t>& blocks, std::vector<Rational>* relation) {
      if (blocks.empty()) return true;
      std::vector<std::vector<RatFunc>> values;
      for (std::size_t k = 0; k < w.derivations(); ++k) {
        std::vector<RatFunc> row;
        for (std::size_t i : blocks) row.push_back(w.value(k, "x" + std::to_string(i)));
        values.push_back(row);
      }
      auto kernel = rational_relations(L, values, blocks.size());
      if (kernel.empty()) return true;
      if (relation) *relation = kernel.front();
      return false;
    };
    Instance full;
    for (std::size_t i = 1; i <= w.n; ++i) full.blocks.push_back(i);
    full.constants = declared_constants(L, w);
    rep.linearly_independent = independent(full.blocks, &rep.linear_relation);
    measure(L, w, full, false, rep.lhs, rep.rhs, rep.rank);
    rep.verdict = decide(rep.relations_hold && *rep.linearly_independent, rep.lhs, rep.rhs);

    if (rep.relations_hold && !constant_blocks.empty()) {
      ASReducedInstance red;
      red.dropped = constant_blocks;
      Instance rest;
      rest.constants = full.constants;
      for (std::size_t i = 1; i <= w.n; ++i) {
        if (std::find(constant_blocks.begin(), constant_blocks.end(), i) != constant_blocks.end()) {
          for (std::size_t s = 0; s < 2; ++s) {
            rest.constants.push_back(L.variable(L.registry()->index(slot_name(w.model, i, s))));
          }
        } else {
          rest.blocks.push_back(i);
        }
      }
      red.n = rest.blocks.size();
      int rank = 0;
      measure(L, w, rest, false, red.lhs, red.rhs, rank);
      red.verdict = decide(independent(rest.blocks, nullptr), red.lhs, red.rhs);
      rep.reduced = red;
    }
  } catch (const Error& e) {
    rep.problems.push_back(std::string("check error (") + kind_name(e.kind()) + "): " + e.what());
    rep.verdict = ASVerdict::HypothesesUnmet;
  }
  return rep;
}

}  // namespace ecj
