#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecj/coordfield.hpp"
#include "ecj/engine.hpp"
#include "ecj/geometry.hpp"

namespace ecj {

// Transcendence degree over Q of the field generated by `elems` inside L:
// the rank of their differentials modulo the differentials of L's relations.
int transcendence_degree(const CoordField& L, const std::vector<RatFunc>& elems);

struct ModularIndependenceReport {
  bool independent = true;
  unsigned nmax = 0;
  std::vector<ModularRelation> relations;  // 1-based indices into the value list
};

// Evaluates Phi_N(v_i, v_k) for i < k and N <= nmax (at most 5).
ModularIndependenceReport modular_independence(const CoordField& L, const std::vector<RatFunc>& values,
                                               unsigned nmax);

enum class ASVerdict { HypothesesUnmet, Holds, Violation };
const char* verdict_name(ASVerdict v) noexcept;

// The instance left after moving constant blocks into the constant field.
struct ASReducedInstance {
  std::vector<std::size_t> dropped;  // 1-based blocks
  std::size_t n = 0;
  int lhs = 0;
  int rhs = 0;
  ASVerdict verdict = ASVerdict::HypothesesUnmet;
};

struct ASReport {
  ASVerdict verdict = ASVerdict::HypothesesUnmet;
  bool relations_hold = false;
  bool nonconstant = false;                      // every coordinate moved by some derivation
  std::vector<std::string> constant_coordinates;
  std::optional<ModularIndependenceReport> modular;  // j side
  std::optional<bool> linearly_independent;          // exp side
  std::vector<Rational> linear_relation;             // q with sum q_i x_i constant
  int lhs = 0;
  int rhs = 0;
  int rank = 0;  // rank of (D_k z_i) or (D_k x_i)
  std::vector<std::string> problems;
  std::optional<ASReducedInstance> reduced;
};

// lhs = td(coordinates, C) - td(C) with C generated by the declared
// constants; rhs = 3n + rank(D_k z_i).
ASReport check_ax_schanuel_j(const DerivationWitness& w, unsigned nmax);
// lhs as above over the 2n coordinates; rhs = n + rank(D_k x_i).
ASReport check_ax_schanuel_exp(const DerivationWitness& w);

}  // namespace ecj
