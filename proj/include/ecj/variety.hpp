#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ecj/groebner.hpp"
#include "ecj/mpoly.hpp"

namespace ecj {

enum class Model { J, j, exp };

const char* model_name(Model m) noexcept;
Model parse_model(std::string_view s);
// Coordinates per index: 4 for J, 2 for j and exp.
std::size_t block_arity(Model m) noexcept;
// Coordinate name for block i (1-based) and slot s: z/j/jp/jpp or x/y.
std::string coordinate_name(Model m, std::size_t i, std::size_t slot);

// Base differential field: Q(t_1..t_m) with D_k = d/dt_k, plus optional
// named constants (elements killed by every derivation, algebraically
// independent over Q).
struct BaseField {
  std::vector<std::string> params;
  std::vector<std::string> constants;

  std::size_t derivations() const noexcept { return params.size(); }
  // "Q", "Q(t)", "Q(t1,t2)"; constants are not part of the descriptor.
  std::string descriptor() const;
  bool operator==(const BaseField& o) const { return params == o.params && constants == o.constants; }
};

// Accepts "Q", "Q(t)", "Q(t1,t2,...)" and "Q(t1..tm)".
BaseField parse_base(std::string_view descriptor);

class Variety {
 public:
  Variety() = default;
  // Registry: coordinates block by block, then base params, then constants.
  Variety(Model model, std::size_t n, BaseField base, bool assume_prime);

  static Variety from_strings(Model model, std::size_t n, BaseField base, bool assume_prime,
                              const std::vector<std::string>& generators);

  Model model() const noexcept { return model_; }
  std::size_t n() const noexcept { return n_; }
  const BaseField& base() const noexcept { return base_; }
  bool assume_prime() const noexcept { return assume_prime_; }
  const RegistryPtr& registry() const noexcept { return reg_; }
  const std::vector<MPoly>& generators() const noexcept { return gens_; }

  void add_generator(const MPoly& g);
  void set_generators(std::vector<MPoly> gens);

  std::size_t arity() const noexcept { return block_arity(model_); }
  std::size_t ncoords() const noexcept { return arity() * n_; }
  // i is 1-based.
  std::size_t coord(std::size_t i, std::size_t slot) const { return (i - 1) * arity() + slot; }
  std::vector<std::size_t> block(std::size_t i) const;
  std::vector<std::size_t> coordinates() const;
  // Derivation parameters followed by constants.
  std::vector<std::size_t> parameters() const;
  std::vector<std::size_t> derivation_params() const;
  std::vector<std::size_t> constant_params() const;

  MPoly var(std::size_t idx) const { return MPoly::variable(reg_, idx); }
  MPoly var(std::string_view name) const { return MPoly::variable(reg_, name); }

 private:
  Model model_ = Model::J;
  std::size_t n_ = 0;
  BaseField base_;
  bool assume_prime_ = true;
  RegistryPtr reg_;
  std::vector<MPoly> gens_;
};

// Groebner basis of I(V) in the order [coordinates] >> [parameters].
GroebnerBasis variety_basis(const Variety& V, const GroebnerOptions& opts = {});

// f vanishes on V over the base field (pseudo-reduction modulo I(V)).
bool vanishes_on(const MPoly& f, const Variety& V, const GroebnerBasis& G);

// Dimension of V over the base field; -1 when V is empty over it.
int variety_dimension(const Variety& V, const GroebnerOptions& opts = {});

}  // namespace ecj

namespace ecj {

// The same generators read in the model J registry, leaving jp_i and jpp_i
// unconstrained. Throws InvalidInput unless V has model j.
Variety lift_j_to_J(const Variety& V);

}  // namespace ecj
