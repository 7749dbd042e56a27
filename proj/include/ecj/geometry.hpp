#pragma once

#include <optional>
#include <vector>

#include "ecj/variety.hpp"

namespace ecj {

using IndexTuple = std::vector<std::size_t>;  // strictly increasing, 1-based

// dim of the projection of V onto the coordinate blocks in `indices`, over the base.
int projection_dimension(const Variety& V, const IndexTuple& indices, const GroebnerOptions& opts = {});

struct ProjectionRecord {
  IndexTuple indices;
  int dimension;
  int threshold;         // 3k for J, k for j
  int strong_threshold;  // 3k+1 for J, k+1 for j
};

struct BroadnessReport {
  Model model;
  std::vector<ProjectionRecord> projections;
  bool broad = false;   // J_broad or j_broad
  bool strong = false;  // strongly J-broad (model J)
  std::optional<IndexTuple> failing;  // first tuple below the threshold
};

// All 2^n - 1 tuples, ordered by size then lexicographically.
std::vector<IndexTuple> all_index_tuples(std::size_t n);
BroadnessReport check_broadness(const Variety& V, const GroebnerOptions& opts = {});

struct ModularRelation {
  unsigned level;
  std::size_t i, k;
};

struct FreenessReport {
  bool free = false;
  unsigned nmax = 0;
  std::vector<std::size_t> constant_coordinates;  // registry indices
  std::vector<ModularRelation> relations;
};

// Model J or j. Throws LevelUnavailable for nmax > 5.
FreenessReport check_freeness(const Variety& V, unsigned nmax, const GroebnerOptions& opts = {});

// Bare constancy test for one coordinate.
bool coordinate_is_constant(const Variety& V, std::size_t coord, const GroebnerOptions& opts = {});

struct SingularReport {
  bool pass = false;
  // (registry index of the coordinate, offending polynomial) pairs
  std::vector<std::pair<std::size_t, MPoly>> failures;
};
SingularReport singular_locus_check(const Variety& V, const GroebnerOptions& opts = {});

using IntMatrix = std::vector<std::vector<long>>;

std::size_t integer_rank(const IntMatrix& M);
// Canonical basis of the Q-row space: reduced echelon rows scaled to
// primitive integers with positive pivots.
IntMatrix row_space_key(const IntMatrix& M);

int monomial_image_dimension(const Variety& V, const IntMatrix& M, const GroebnerOptions& opts = {});

struct RotundReport {
  bool rotund = false;
  long bound = 0;
  std::size_t classes_checked = 0;
  std::optional<IntMatrix> witness;
  int witness_dimension = 0;
  std::size_t witness_rank = 0;
};

// Checks matrices with entries in [-B, B] in a bound-independent order: by
// max |entry|, then row count, then lexicographic over 0, 1, -1, 2, -2, ...
RotundReport check_rotund(const Variety& V, long bound, const GroebnerOptions& opts = {});

}  // namespace ecj
