#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecj/coordfield.hpp"
#include "ecj/linsolve.hpp"
#include "ecj/variety.hpp"

namespace ecj {

// Derivations delta_1..delta_m on a field L, given by their values on L's
// coordinates. L is presented as a variety (its registry, base and prime
// ideal); the points being certified are L's coordinates, matched by name
// against the target variety. delta_k restricted to the base is
// lambda_k * d/dt_k; lambda_k is 0 when the base has fewer than k
// derivations.
struct DerivationWitness {
  Model model = Model::J;  // model of the target variety
  std::size_t n = 0;
  Variety field;
  std::vector<std::vector<RatFunc>> delta;  // [k][index into field.coordinates()]
  std::vector<RatFunc> lambda;               // [k]
  std::vector<RatFunc> constants;            // declared constants besides the base constants
  bool all_nonconstant = false;
  bool verified = false;

  std::size_t derivations() const noexcept { return delta.size(); }
  // Value of delta_k (0-based) on the coordinate with the given name.
  const RatFunc& value(std::size_t k, const std::string& coordinate) const;
};

// delta_k(f) for f over the field's registry, in normal form.
RatFunc apply_derivation(const CoordField& L, const DerivationWitness& w, std::size_t k, const RatFunc& f);

struct ConstraintRow {
  enum class Kind { Generator, Model } kind;
  std::size_t index;  // generator index, or 1-based block index for model rows
  std::string label;
};

// Columns: delta(v) for every coordinate, then lambda_1..lambda_m.
struct ConstraintSystem {
  std::vector<std::string> unknowns;
  std::size_t ncoords = 0;
  std::size_t nlambda = 0;
  FieldMatrix<RatFunc> matrix;
  std::vector<ConstraintRow> rows;
};

// Prolongations of the generators plus the model relations (three per block
// for J, one for exp). Model j is not accepted; lift it first. Poles of eta
// surface as SingularLocus.
ConstraintSystem assemble_constraints(const CoordField& K);

// Rank of the model rows modulo the span of the generator rows, over the
// coordinate columns.
std::size_t lambda_rank(const CoordField& K, const ConstraintSystem& S);

// Dimension of the homogeneous solution space over the coordinate columns.
std::size_t solution_dimension(const CoordField& K, const ConstraintSystem& S);

struct EngineOptions {
  GroebnerOptions groebner;
  unsigned nmax = 5;
};

// One base derivation; the result extends D with lambda = 1. Model j
// varieties are lifted to model J first.
DerivationWitness extend_derivation(const Variety& V, const EngineOptions& opts = {});

struct NonconstantResult {
  DerivationWitness witness;
  long multiplier = 0;                // the c of delta = sum c^i delta_i
  std::size_t solution_dimension = 0;
  std::vector<std::string> warnings;  // unmet broadness/freeness hypotheses
};

// Base made of constants only; the derivation is sought in the homogeneous
// solution space with every coordinate value nonzero. Throws ConstantForced.
NonconstantResult extend_derivation_nonconstant(const Variety& V, const EngineOptions& opts = {});

struct CommutatorResidue {
  std::size_t a, b;  // 0-based derivation indices, a < b
  std::string coordinate;
  RatFunc value;
};

struct MultiResult {
  DerivationWitness witness;
  std::vector<CommutatorResidue> residues;
  bool commuting = true;
};

// delta_k extends D_k for every base derivation k.
MultiResult extend_derivations_multi(const Variety& V, const EngineOptions& opts = {});

struct VerifyReport {
  bool verified = false;
  bool all_nonconstant = false;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
};

// Exact check of the witness against V. Never throws; problems are listed.
VerifyReport verify_witness(const Variety& V, const DerivationWitness& w);

// Model-relation residues only (no generators), on every block of L.
std::vector<std::string> model_relation_failures(const CoordField& L, const DerivationWitness& w,
                                                 std::vector<std::string>* notes = nullptr);

}  // namespace ecj
