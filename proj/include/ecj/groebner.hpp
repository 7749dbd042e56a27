#pragma once

#include <cstddef>
#include <vector>

#include "ecj/mpoly.hpp"

namespace ecj {

struct GroebnerOptions {
  // Total number of elementary reduction steps before ResourceLimit.
  std::size_t step_budget = 200000;
};

class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(RegistryPtr reg, OrderPtr order, std::vector<MPoly> gens, bool reduced)
      : reg_(std::move(reg)), order_(std::move(order)), gens_(std::move(gens)), reduced_(reduced) {}

  const RegistryPtr& registry() const noexcept { return reg_; }
  const OrderPtr& order() const noexcept { return order_; }
  const std::vector<MPoly>& gens() const noexcept { return gens_; }
  bool reduced() const noexcept { return reduced_; }
  bool is_zero_ideal() const noexcept { return gens_.empty(); }
  bool is_unit() const { return gens_.size() == 1 && gens_.front().is_constant(); }

 private:
  RegistryPtr reg_;
  OrderPtr order_;
  std::vector<MPoly> gens_;
  bool reduced_ = false;
};

// Reduced, monic Groebner basis sorted by decreasing leading monomial.
// An empty or all-zero input yields the zero ideal. Throws ResourceLimit.
GroebnerBasis buchberger(const std::vector<MPoly>& gens, const RegistryPtr& reg, OrderPtr order,
                         const GroebnerOptions& opts = {});

// Fully reduced remainder. `steps`, when given, is incremented per reduction.
MPoly normal_form(const MPoly& f, const GroebnerBasis& G, std::size_t* steps = nullptr);

struct Membership {
  bool member;
  MPoly normal_form;
};
Membership ideal_membership(const MPoly& f, const GroebnerBasis& G);

// Block order [eliminate] >> trailing[0] >> trailing[1] ...; each block grevlex.
OrderPtr elimination_order(const std::vector<std::size_t>& eliminate,
                           const std::vector<std::vector<std::size_t>>& trailing, std::size_t nvars);

// Basis of I intersected with Q[keep]. The returned basis uses the order
// [complement] >> [keep] and contains only polynomials in `keep`.
GroebnerBasis elimination_ideal(const GroebnerBasis& G, const std::vector<std::size_t>& keep,
                                const GroebnerOptions& opts = {});

// As above with keep split into blocks, most significant first; used to keep
// coordinates ahead of base parameters.
GroebnerBasis eliminate(const std::vector<MPoly>& gens, const RegistryPtr& reg,
                        const std::vector<std::size_t>& eliminate_vars,
                        const std::vector<std::vector<std::size_t>>& keep_blocks,
                        const GroebnerOptions& opts = {});

// Krull dimension of Q[x_0..x_{nvars-1}]/I; -1 for the unit ideal.
int ideal_dimension(const GroebnerBasis& G, std::size_t nvars);

// Size of the largest subset S of `vars` such that no leading monomial,
// restricted to `vars`, is a nonconstant monomial in S alone. Returns -1 when
// some restricted leading monomial is 1. With G computed in an order where
// `vars` form the most significant block(s), this is the dimension over the
// field of rational functions in the remaining variables.
int independent_dimension(const GroebnerBasis& G, const std::vector<std::size_t>& vars);

// Pseudo-reduction modulo G over the coefficient ring Q[params], where the
// order on G ranks all non-parameter variables above parameters. Returns
// (r, h) with h in Q[params] nonzero and h*f = r modulo the ideal; f lies in
// the extension of the ideal to Q(params)[coords] iff r == 0.
struct PseudoRemainder {
  MPoly remainder;
  MPoly multiplier;
};
PseudoRemainder pseudo_reduce(const MPoly& f, const GroebnerBasis& G,
                              const std::vector<std::size_t>& params);

}  // namespace ecj
