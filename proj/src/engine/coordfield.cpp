#include "ecj/coordfield.hpp"

#include <algorithm>
#include <deque>

#include "ecj/error.hpp"
#include "ecj/linsolve.hpp"

namespace ecj {

namespace {

constexpr std::size_t kMaxStandardMonomials = 256;
constexpr std::size_t kMaxBasisCandidates = 70;

Monomial restrict_to(const Monomial& m, const std::vector<bool>& keep) {
  Monomial r;
  for (std::size_t v = 0; v < keep.size(); ++v) {
    if (keep[v] && m[v] != 0) r.set(v, m[v]);
  }
  return r;
}

// Standard monomials in the non-coefficient variables, or nullopt when there
// are more than the cap (or infinitely many).
std::optional<std::vector<Monomial>> standard_monomials(const GroebnerBasis& G, const std::vector<std::size_t>& vars,
                                                        const std::vector<bool>& is_var) {
  std::vector<Monomial> lead;
  for (const MPoly& g : G.gens()) lead.push_back(restrict_to(g.leading_monomial(), is_var));
  auto standard = [&](const Monomial& m) {
    return std::none_of(lead.begin(), lead.end(), [&](const Monomial& l) { return l.divides(m); });
  };
  std::vector<Monomial> out;
  std::deque<Monomial> queue{Monomial()};
  while (!queue.empty()) {
    Monomial m = queue.front();
    queue.pop_front();
    if (std::any_of(out.begin(), out.end(), [&](const Monomial& o) { return o == m; })) continue;
    out.push_back(m);
    if (out.size() > kMaxStandardMonomials) return std::nullopt;
    for (std::size_t v : vars) {
      Monomial next = m;
      next.set(v, m[v] + 1);
      if (standard(next)) queue.push_back(next);
    }
  }
  return out;
}

template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

CoordField::CoordField(const Variety& V, const GroebnerOptions& opts) : V_(V) {
  if (!V.assume_prime()) {
    throw Error(Error::Kind::NotPrimeAssumed, "coordinate field requires assume_prime=true");
  }
  G_ = variety_basis(V, opts);
  std::vector<std::size_t> coords = V.coordinates();
  td_ = independent_dimension(G_, coords);
  if (td_ < 0) throw Error(Error::Kind::UnitIdeal, "the variety is empty over the base field");
  order_ = MPoly(V.registry()).order();
  const std::size_t nvars = V.registry()->size();
  const std::size_t k = coords.size() - std::size_t(td_);

  // Try algebraic blocks A in lexicographic order of coordinate positions and
  // keep the one giving the smallest extension degree; degree 1 ends the search.
  bool found = false;
  std::size_t tried = 0;
  for_each_combination(coords.size(), k, [&](const std::vector<std::size_t>& pick) {
    if (++tried > kMaxBasisCandidates && found) return false;
    std::vector<std::size_t> A, B;
    std::vector<bool> in_A(nvars, false);
    for (std::size_t p : pick) {
      A.push_back(coords[p]);
      in_A[coords[p]] = true;
    }
    for (std::size_t c : coords) {
      if (!in_A[c]) B.push_back(c);
    }
    std::vector<std::size_t> U = B;
    for (std::size_t p : V.parameters()) B.push_back(p);
    GroebnerBasis G = buchberger(V.generators(), V.registry(), elimination_order(A, {B}, nvars), opts);
    for (const MPoly& g : G.gens()) {
      if (restrict_to(g.leading_monomial(), in_A).is_one()) return true;  // U not independent
    }
    auto std_monos = standard_monomials(G, A, in_A);
    if (!std_monos) return true;
    if (!found || std_monos->size() < standard_.size()) {
      found = true;
      field_ = std::move(G);
      basis_vars_ = U;
      coefficient_vars_ = B;
      standard_ = std::move(*std_monos);
    }
    return standard_.size() > 1;
  });
  if (!found) throw Error(Error::Kind::ResourceLimit, "no usable transcendence basis for the coordinate field");
  is_coefficient_.assign(nvars, false);
  for (std::size_t v : coefficient_vars_) is_coefficient_[v] = true;
}

bool CoordField::in_base(const MPoly& p) const {
  for (std::size_t v : p.support()) {
    if (!is_coefficient_[v]) return false;
  }
  return true;
}

PseudoRemainder CoordField::reduce(const MPoly& p) const {
  if (field_.is_zero_ideal()) return PseudoRemainder{p.with_order(order_), MPoly::constant(registry(), 1, order_)};
  PseudoRemainder r = pseudo_reduce(p, field_, coefficient_vars_);
  r.remainder = r.remainder.with_order(order_);
  r.multiplier = r.multiplier.with_order(order_);
  return r;
}

std::vector<MPoly> CoordField::coefficients(const MPoly& reduced) const {
  std::vector<bool> is_alg(is_coefficient_.size());
  for (std::size_t v = 0; v < is_alg.size(); ++v) is_alg[v] = !is_coefficient_[v];
  std::vector<std::vector<Term>> parts(standard_.size());
  for (const Term& t : reduced.terms()) {
    Monomial a = restrict_to(t.mono, is_alg);
    auto it = std::find(standard_.begin(), standard_.end(), a);
    if (it == standard_.end()) throw Error(Error::Kind::Internal, "coordinate-field element is not reduced");
    parts[std::size_t(it - standard_.begin())].push_back(Term{t.mono / a, t.coeff});
  }
  std::vector<MPoly> out;
  for (auto& p : parts) out.push_back(MPoly::from_terms(registry(), order_, std::move(p)));
  return out;
}

RatFunc CoordField::zero() const { return RatFunc::constant(registry(), 0); }
RatFunc CoordField::one() const { return RatFunc::constant(registry(), 1); }
RatFunc CoordField::constant(const Rational& c) const { return RatFunc::constant(registry(), c); }
RatFunc CoordField::variable(std::size_t idx) const { return from_poly(MPoly::variable(registry(), idx)); }
RatFunc CoordField::from_poly(const MPoly& p) const { return normalize(RatFunc(p.remap(registry()))); }

RatFunc CoordField::inverse_poly(const MPoly& p0) const {
  PseudoRemainder pr = reduce(p0.remap(registry()));
  const MPoly& p = pr.remainder;
  if (p.is_zero()) throw Error(Error::Kind::DivisionByZero, "division by an element that is zero on the variety");
  // p0^-1 = h * p^-1.
  RatFunc h(pr.multiplier);
  if (in_base(p)) return RatFunc(pr.multiplier, p);
  // Solve (p * sum x_s s) = 1 over Q(U, params) via the multiplication matrix.
  RatFuncField Q{registry()};
  const std::size_t D = standard_.size();
  FieldMatrix<RatFunc> M(D, D, Q.zero());
  for (std::size_t c = 0; c < D; ++c) {
    PseudoRemainder col = reduce(p.mul_term(standard_[c], 1));
    std::vector<MPoly> coeff = coefficients(col.remainder);
    for (std::size_t r = 0; r < D; ++r) {
      if (!coeff[r].is_zero()) M.at(r, c) = RatFunc(coeff[r], col.multiplier);
    }
  }
  std::vector<RatFunc> e(D, Q.zero());
  e[0] = Q.one();
  AffineSolution<RatFunc> sol = solve_affine_system(Q, M, e);
  RatFunc inv = zero();
  for (std::size_t s = 0; s < D; ++s) {
    if (!sol.particular[s].is_zero()) {
      inv = inv + sol.particular[s] * RatFunc(MPoly::monomial(registry(), standard_[s], 1));
    }
  }
  return normalize(inv * h);
}

RatFunc CoordField::normalize(const RatFunc& f) const {
  if (f.is_zero()) return zero();
  if (field_.is_zero_ideal()) return f;
  PseudoRemainder n = reduce(f.num());
  if (n.remainder.is_zero()) return zero();
  if (in_base(f.den())) {
    // An untouched numerator keeps f in lowest terms.
    if (n.multiplier.is_constant() && n.remainder == f.num().scaled(n.multiplier.constant_value())) return f;
    return RatFunc(n.remainder, n.multiplier * f.den().with_order(order_));
  }
  RatFunc inv = inverse_poly(f.den());
  // f = (r / h) * inv, with inv's denominator already in Q[U, params].
  PseudoRemainder m = reduce(n.remainder * inv.num());
  if (m.remainder.is_zero()) throw Error(Error::Kind::Internal, "product of nonzero field elements vanished");
  return RatFunc(m.remainder, m.multiplier * n.multiplier * inv.den());
}

RatFunc CoordField::div(const RatFunc& a, const RatFunc& b) const {
  if (is_zero(b)) throw Error(Error::Kind::DivisionByZero, "division by an element that is zero on the variety");
  return normalize(a * RatFunc(b.den(), b.num()));
}

bool CoordField::is_zero(const RatFunc& a) const { return is_zero_poly(a.num()); }

bool CoordField::is_zero_poly(const MPoly& p) const {
  if (p.is_zero()) return true;
  if (field_.is_zero_ideal()) return false;
  return reduce(p.remap(registry())).remainder.is_zero();
}

}  // namespace ecj
