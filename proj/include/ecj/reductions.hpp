#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ecj/engine.hpp"
#include "ecj/geometry.hpp"
#include "ecj/variety.hpp"

namespace ecj {

enum class ReductionKind { JLift, ConstantFiber, MobiusModular };
const char* reduction_kind_name(ReductionKind k) noexcept;
ReductionKind parse_reduction_kind(std::string_view s);

// Enough to turn a witness on `target` into one on `source`.
struct ReductionCertificate {
  ReductionKind kind = ReductionKind::JLift;
  Variety source;
  Variety target;
  std::optional<Variety> auxiliary;  // S, Moebius case
  std::size_t block = 0;             // 1-based block removed (fiber, Moebius)
  std::size_t partner = 0;           // k in Phi_N(j_i, j_k), Moebius case
  unsigned level = 0;
  std::array<Rational, 4> point{};          // (a, b, b', b''), fiber case
  std::array<std::string, 4> constants{};  // names of a, b, c, d, Moebius case
  bool source_broad = false;
  bool target_broad = false;
  std::vector<std::string> notes;
};

// Target blocks in order; entry b - 1 is the source block for target block b.
std::vector<std::size_t> surviving_blocks(const ReductionCertificate& c);

// Model j to model J on the same generators. Broadness of both is recorded.
ReductionCertificate j_lift(const Variety& V, const GroebnerOptions& opts = {});

// Fiber of V over p in block i. Needs n >= 2, a constant coordinate in block i,
// and p with b' != 0 and b not in {0, 1728}.
ReductionCertificate fiber_constant_coordinate(const Variety& V, std::size_t i, const std::array<Rational, 4>& p,
                                               const GroebnerOptions& opts = {});

// S from Phi_N(j_i, j_k), z_k = (a z_i + b)/(c z_i + d) and its two derived
// relations, with a, b, c, d fresh constants; W eliminates block i from
// I(V) + I(S).
ReductionCertificate mobius_modular_reduction(const Variety& V, std::size_t i, std::size_t k, unsigned N,
                                              const GroebnerOptions& opts = {});

// The three relations of S besides Phi_N, in V's registry extended by the
// constants (in that order: Moebius, first, second derivative).
std::array<MPoly, 3> mobius_relations(const Variety& Vc, std::size_t i, std::size_t k, unsigned N,
                                      const std::array<std::string, 4>& constants);

// Witness on the certificate's target to a verified witness on its source.
DerivationWitness lift_point(const DerivationWitness& w, const ReductionCertificate& c);

}  // namespace ecj
