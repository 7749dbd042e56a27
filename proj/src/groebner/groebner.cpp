#include "ecj/groebner.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "ecj/error.hpp"

namespace ecj {

namespace {

struct Budget {
  std::size_t used = 0;
  std::size_t cap;
  void tick() {
    if (++used > cap) {
      throw Error(Error::Kind::ResourceLimit,
                  "Groebner step budget of " + std::to_string(cap) + " reductions exceeded");
    }
  }
};

MPoly drop_leading(const MPoly& p) {
  return p - MPoly::monomial(p.registry(), p.leading_monomial(), p.leading_coeff(), p.order());
}

// Full reduction against the active polynomials (all monic).
MPoly reduce_full(MPoly r, const std::vector<const MPoly*>& basis, Budget* budget,
                  std::size_t* steps) {
  std::vector<Term> rem;
  while (!r.is_zero()) {
    const Monomial& lm = r.leading_monomial();
    const MPoly* div = nullptr;
    for (const MPoly* g : basis) {
      if (g->leading_monomial().divides(lm)) {
        div = g;
        break;
      }
    }
    if (div) {
      if (budget) budget->tick();
      if (steps) ++*steps;
      r = r.sub_mul_term(lm / div->leading_monomial(), r.leading_coeff() / div->leading_coeff(), *div);
    } else {
      rem.push_back(r.leading_term());
      r = drop_leading(r);
    }
  }
  return MPoly::from_terms(r.registry(), r.order(), std::move(rem));
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

}  // namespace

GroebnerBasis buchberger(const std::vector<MPoly>& gens, const RegistryPtr& reg, OrderPtr order,
                         const GroebnerOptions& opts) {
  if (!order) order = MonomialOrder::grevlex(reg->size());
  const MonomialOrder& ord = *order;
  Budget budget{0, opts.step_budget};

  std::vector<MPoly> polys;
  std::vector<bool> active;
  std::vector<Pair> pairs;

  auto push_poly = [&](MPoly h) {
    std::size_t hi = polys.size();
    polys.push_back(std::move(h));
    active.push_back(true);
    const Monomial& lh = polys[hi].leading_monomial();
    // Gebauer-Moeller update.
    std::vector<Pair> cand;
    for (std::size_t g = 0; g < hi; ++g) {
      if (active[g]) cand.push_back(Pair{g, hi, Monomial::lcm(polys[g].leading_monomial(), lh)});
    }
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      bool coprime = polys[cand[a].i].leading_monomial().coprime(lh);
      bool dominated = false;
      if (!coprime) {
        for (std::size_t b = 0; b < cand.size() && !dominated; ++b) {
          if (b == a) continue;
          if (cand[b].lcm.divides(cand[a].lcm)) {
            // strict divisibility, or equal lcm with an earlier index kept
            if (!(cand[b].lcm == cand[a].lcm) || b < a) dominated = true;
          }
        }
      }
      if (!dominated) kept.push_back(cand[a]);
    }
    std::vector<Pair> next;
    for (const Pair& p : pairs) {
      bool drop = lh.divides(p.lcm) &&
                  Monomial::lcm(polys[p.i].leading_monomial(), lh) != p.lcm &&
                  Monomial::lcm(polys[p.j].leading_monomial(), lh) != p.lcm;
      if (!drop) next.push_back(p);
    }
    for (const Pair& p : kept) {
      if (!polys[p.i].leading_monomial().coprime(lh)) next.push_back(p);
    }
    pairs = std::move(next);
    for (std::size_t g = 0; g < hi; ++g) {
      if (active[g] && lh.divides(polys[g].leading_monomial())) active[g] = false;
    }
  };

  auto active_basis = [&]() {
    std::vector<const MPoly*> b;
    for (std::size_t g = 0; g < polys.size(); ++g) {
      if (active[g]) b.push_back(&polys[g]);
    }
    return b;
  };

  // Seed with the inputs, each reduced against the earlier ones.
  std::vector<MPoly> seeds;
  for (const MPoly& g : gens) {
    if (!same_registry(g.registry(), reg)) {
      throw Error(Error::Kind::RegistryMismatch, "generator registry differs from the ideal's");
    }
    MPoly m = g.remap(reg, order);
    if (m.is_zero()) continue;
    if (m.is_constant()) {
      return GroebnerBasis(reg, order, {MPoly::constant(reg, 1, order)}, true);
    }
    seeds.push_back(m.monic());
  }
  std::stable_sort(seeds.begin(), seeds.end(), [&](const MPoly& a, const MPoly& b) {
    return ord.compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  for (MPoly& s : seeds) {
    MPoly r = reduce_full(s, active_basis(), &budget, nullptr);
    if (r.is_zero()) continue;
    if (r.is_constant()) return GroebnerBasis(reg, order, {MPoly::constant(reg, 1, order)}, true);
    push_poly(r.monic());
  }

  while (!pairs.empty()) {
    // Normal strategy: smallest lcm first, then earliest indices.
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      int c = ord.compare(pairs[k].lcm, pairs[best].lcm);
      if (c < 0 || (c == 0 && std::tie(pairs[k].j, pairs[k].i) < std::tie(pairs[best].j, pairs[best].i))) {
        best = k;
      }
    }
    Pair p = pairs[best];
    pairs.erase(pairs.begin() + std::ptrdiff_t(best));
    const MPoly& f = polys[p.i];
    const MPoly& g = polys[p.j];
    MPoly s = f.mul_term(p.lcm / f.leading_monomial(), 1)
                  .sub_mul_term(p.lcm / g.leading_monomial(), f.leading_coeff() / g.leading_coeff(), g);
    budget.tick();
    MPoly r = reduce_full(s, active_basis(), &budget, nullptr);
    if (r.is_zero()) continue;
    if (r.is_constant()) return GroebnerBasis(reg, order, {MPoly::constant(reg, 1, order)}, true);
    push_poly(r.monic());
  }

  // Minimal basis is the active set; inter-reduce tails.
  std::vector<MPoly> minimal;
  for (std::size_t g = 0; g < polys.size(); ++g) {
    if (active[g]) minimal.push_back(polys[g]);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const MPoly& a, const MPoly& b) {
    return ord.compare(a.leading_monomial(), b.leading_monomial()) > 0;
  });
  std::vector<MPoly> reduced;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<const MPoly*> others;
    for (std::size_t l = 0; l < minimal.size(); ++l) {
      if (l != k) others.push_back(&minimal[l]);
    }
    MPoly tail = reduce_full(drop_leading(minimal[k]), others, &budget, nullptr);
    reduced.push_back(tail + MPoly::monomial(reg, minimal[k].leading_monomial(), 1, order));
  }
  return GroebnerBasis(reg, order, std::move(reduced), true);
}

MPoly normal_form(const MPoly& f, const GroebnerBasis& G, std::size_t* steps) {
  MPoly r = f.remap(G.registry(), G.order());
  std::vector<const MPoly*> basis;
  for (const MPoly& g : G.gens()) basis.push_back(&g);
  return reduce_full(r, basis, nullptr, steps);
}

Membership ideal_membership(const MPoly& f, const GroebnerBasis& G) {
  MPoly nf = normal_form(f, G);
  return Membership{nf.is_zero(), nf};
}

OrderPtr elimination_order(const std::vector<std::size_t>& eliminate,
                           const std::vector<std::vector<std::size_t>>& trailing, std::size_t nvars) {
  std::vector<std::vector<std::size_t>> blocks;
  if (!eliminate.empty()) blocks.push_back(eliminate);
  for (const auto& b : trailing) {
    if (!b.empty()) blocks.push_back(b);
  }
  std::size_t covered = 0;
  for (const auto& b : blocks) covered += b.size();
  if (covered != nvars) throw Error(Error::Kind::Internal, "elimination blocks do not cover the registry");
  if (blocks.empty()) return MonomialOrder::grevlex(0);
  return std::make_shared<const MonomialOrder>(std::move(blocks));
}

GroebnerBasis eliminate(const std::vector<MPoly>& gens, const RegistryPtr& reg,
                        const std::vector<std::size_t>& eliminate_vars,
                        const std::vector<std::vector<std::size_t>>& keep_blocks,
                        const GroebnerOptions& opts) {
  OrderPtr order = elimination_order(eliminate_vars, keep_blocks, reg->size());
  GroebnerBasis G = buchberger(gens, reg, order, opts);
  std::vector<MPoly> kept;
  for (const MPoly& g : G.gens()) {
    bool touches = std::any_of(eliminate_vars.begin(), eliminate_vars.end(),
                               [&](std::size_t v) { return g.involves(v); });
    if (!touches) kept.push_back(g);
  }
  return GroebnerBasis(reg, order, std::move(kept), true);
}

GroebnerBasis elimination_ideal(const GroebnerBasis& G, const std::vector<std::size_t>& keep,
                                const GroebnerOptions& opts) {
  std::vector<std::size_t> elim;
  for (std::size_t v = 0; v < G.registry()->size(); ++v) {
    if (std::find(keep.begin(), keep.end(), v) == keep.end()) elim.push_back(v);
  }
  return eliminate(G.gens(), G.registry(), elim, {keep}, opts);
}

int independent_dimension(const GroebnerBasis& G, const std::vector<std::size_t>& vars) {
  // Leading monomials restricted to vars, as bit masks over positions in vars.
  std::vector<std::uint64_t> masks;
  for (const MPoly& g : G.gens()) {
    std::uint64_t m = 0;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (g.leading_monomial()[vars[k]] != 0) m |= std::uint64_t{1} << k;
    }
    if (m == 0) return -1;
    masks.push_back(m);
  }
  const std::size_t n = vars.size();
  int best = 0;
  // Depth-first search over subsets; a set is independent iff no mask is a subset of it.
  std::function<void(std::size_t, std::uint64_t, int)> dfs = [&](std::size_t k, std::uint64_t set, int size) {
    if (size + int(n - k) <= best) return;
    if (k == n) {
      best = size;
      return;
    }
    std::uint64_t with = set | (std::uint64_t{1} << k);
    bool ok = std::none_of(masks.begin(), masks.end(), [&](std::uint64_t m) { return (m & ~with) == 0; });
    if (ok) dfs(k + 1, with, size + 1);
    dfs(k + 1, set, size);
  };
  dfs(0, 0, 0);
  return best;
}

int ideal_dimension(const GroebnerBasis& G, std::size_t nvars) {
  std::vector<std::size_t> vars(nvars);
  std::iota(vars.begin(), vars.end(), std::size_t{0});
  return independent_dimension(G, vars);
}

namespace {

// Splits p by the monomial in the non-parameter variables.
Monomial coord_part(const Monomial& m, const std::vector<bool>& is_param) {
  Monomial r;
  for (std::size_t v = 0; v < is_param.size(); ++v) {
    if (!is_param[v] && m[v] != 0) r.set(v, m[v]);
  }
  return r;
}

// Coefficient (a polynomial in the parameters) of the coordinate monomial cm.
MPoly coord_coefficient(const MPoly& p, const Monomial& cm, const std::vector<bool>& is_param) {
  std::vector<Term> out;
  for (const Term& t : p.terms()) {
    if (coord_part(t.mono, is_param) == cm) out.push_back(Term{t.mono / cm, t.coeff});
  }
  return MPoly::from_terms(p.registry(), p.order(), std::move(out));
}

// Gcd of the parameter coefficients over all coordinate monomials.
MPoly coord_content(const MPoly& p, const std::vector<bool>& is_param) {
  std::vector<Monomial> seen;
  MPoly g = p.zero_like();
  for (const Term& t : p.terms()) {
    Monomial cm = coord_part(t.mono, is_param);
    if (std::find(seen.begin(), seen.end(), cm) != seen.end()) continue;
    seen.push_back(cm);
    g = gcd(g, coord_coefficient(p, cm, is_param));
    if (g.is_constant()) break;
  }
  return g;
}

}  // namespace

PseudoRemainder pseudo_reduce(const MPoly& f, const GroebnerBasis& G,
                              const std::vector<std::size_t>& params) {
  const RegistryPtr& reg = G.registry();
  std::vector<bool> is_param(reg->size(), false);
  for (std::size_t v : params) is_param[v] = true;
  MPoly r = f.remap(reg, G.order());
  MPoly one = MPoly::constant(reg, 1, G.order());
  if (params.empty()) return PseudoRemainder{normal_form(r, G), one};

  struct Div {
    Monomial cm;
    MPoly lc;
    const MPoly* g;
  };
  std::vector<Div> divs;
  for (const MPoly& g : G.gens()) {
    Monomial cm = coord_part(g.leading_monomial(), is_param);
    divs.push_back(Div{cm, coord_coefficient(g, cm, is_param), &g});
  }

  MPoly h = one;
  MPoly rem = r.zero_like();
  std::size_t guard = 0;
  while (!r.is_zero()) {
    Monomial cm = coord_part(r.leading_monomial(), is_param);
    MPoly c = coord_coefficient(r, cm, is_param);
    const Div* d = nullptr;
    for (const Div& x : divs) {
      if (x.cm.divides(cm)) {
        d = &x;
        break;
      }
    }
    MPoly chunk = c.mul_term(cm, 1);
    if (!d) {
      rem += chunk;
      r -= chunk;
      continue;
    }
    if (++guard > 200000) throw Error(Error::Kind::ResourceLimit, "pseudo-reduction step budget exceeded");
    Monomial m = cm / d->cm;
    if (d->lc.is_constant()) {
      r = r.sub_mul_term(m, 1, c.scaled(1 / d->lc.constant_value()) * *d->g);
    } else {
      MPoly cancel = gcd(d->lc, c);
      MPoly lg = *divide_exact(d->lc, cancel);
      MPoly cc = *divide_exact(c, cancel);
      r = lg * r - (cc * *d->g).mul_term(m, 1);
      rem = lg * rem;
      h = lg * h;
    }
  }
  if (!h.is_constant() && !rem.is_zero()) {
    MPoly g = gcd(h, coord_content(rem, is_param));
    if (!g.is_constant()) {
      rem = *divide_exact(rem, g);
      h = *divide_exact(h, g);
    }
  }
  return PseudoRemainder{rem, h};
}

}  // namespace ecj
