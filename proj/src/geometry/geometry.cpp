#include "ecj/geometry.hpp"

#include <algorithm>
#include <set>

#include "ecj/error.hpp"
#include "ecj/linsolve.hpp"
#include "ecj/modular.hpp"

namespace ecj {

int projection_dimension(const Variety& V, const IndexTuple& indices, const GroebnerOptions& opts) {
  for (std::size_t a = 0; a < indices.size(); ++a) {
    if (indices[a] < 1 || indices[a] > V.n() || (a > 0 && indices[a] <= indices[a - 1])) {
      throw Error(Error::Kind::InvalidInput, "index tuple must be strictly increasing within 1..n");
    }
  }
  std::vector<std::size_t> kept, elim;
  for (std::size_t i = 1; i <= V.n(); ++i) {
    auto b = V.block(i);
    bool keep = std::find(indices.begin(), indices.end(), i) != indices.end();
    (keep ? kept : elim).insert((keep ? kept : elim).end(), b.begin(), b.end());
  }
  GroebnerBasis E = eliminate(V.generators(), V.registry(), elim, {kept, V.parameters()}, opts);
  return independent_dimension(E, kept);
}

std::vector<IndexTuple> all_index_tuples(std::size_t n) {
  std::vector<IndexTuple> out;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + std::ptrdiff_t(k), true);
    do {
      IndexTuple t;
      for (std::size_t i = 0; i < n; ++i) {
        if (pick[i]) t.push_back(i + 1);
      }
      out.push_back(t);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

BroadnessReport check_broadness(const Variety& V, const GroebnerOptions& opts) {
  if (V.model() == Model::exp) {
    throw Error(Error::Kind::InvalidInput, "broadness is defined for the J and j models; use rotundity for exp");
  }
  BroadnessReport rep;
  rep.model = V.model();
  rep.broad = true;
  rep.strong = true;
  const int per = V.model() == Model::J ? 3 : 1;
  for (const IndexTuple& t : all_index_tuples(V.n())) {
    int k = int(t.size());
    ProjectionRecord r{t, projection_dimension(V, t, opts), per * k, per * k + 1};
    if (r.dimension < r.threshold) {
      if (rep.broad) rep.failing = t;
      rep.broad = false;
    }
    if (r.dimension < r.strong_threshold) rep.strong = false;
    rep.projections.push_back(std::move(r));
  }
  return rep;
}

bool coordinate_is_constant(const Variety& V, std::size_t coord, const GroebnerOptions& opts) {
  std::vector<std::size_t> others;
  for (std::size_t c : V.coordinates()) {
    if (c != coord) others.push_back(c);
  }
  GroebnerBasis E = eliminate(V.generators(), V.registry(), others, {{coord}, V.parameters()}, opts);
  return !E.is_zero_ideal();
}

FreenessReport check_freeness(const Variety& V, unsigned nmax, const GroebnerOptions& opts) {
  if (V.model() == Model::exp) throw Error(Error::Kind::InvalidInput, "freeness is defined for the J and j models");
  if (nmax < 1) throw Error(Error::Kind::InvalidInput, "nmax must be at least 1");
  if (nmax > kMaxModularLevel) {
    throw Error(Error::Kind::LevelUnavailable,
                "modular polynomials are available up to level " + std::to_string(kMaxModularLevel));
  }
  FreenessReport rep;
  rep.nmax = nmax;
  for (std::size_t c : V.coordinates()) {
    if (coordinate_is_constant(V, c, opts)) rep.constant_coordinates.push_back(c);
  }
  GroebnerBasis G = variety_basis(V, opts);
  for (std::size_t i = 1; i <= V.n(); ++i) {
    for (std::size_t k = i + 1; k <= V.n(); ++k) {
      for (unsigned N = 1; N <= nmax; ++N) {
        MPoly phi = modular_polynomial_cached(N).as_poly(V.registry(), V.coord(i, 1), V.coord(k, 1));
        if (vanishes_on(phi, V, G)) rep.relations.push_back(ModularRelation{N, i, k});
      }
    }
  }
  rep.free = rep.constant_coordinates.empty() && rep.relations.empty();
  return rep;
}

SingularReport singular_locus_check(const Variety& V, const GroebnerOptions& opts) {
  if (V.model() != Model::J) throw Error(Error::Kind::InvalidInput, "singular-locus check requires model J");
  GroebnerBasis G = variety_basis(V, opts);
  SingularReport rep;
  for (std::size_t i = 1; i <= V.n(); ++i) {
    MPoly j = V.var(V.coord(i, 1));
    MPoly jp = V.var(V.coord(i, 2));
    std::pair<std::size_t, MPoly> tests[] = {
        {V.coord(i, 1), j}, {V.coord(i, 1), j - j.constant_like(1728)}, {V.coord(i, 2), jp}};
    for (const auto& t : tests) {
      if (vanishes_on(t.second, V, G)) rep.failures.push_back(t);
    }
  }
  rep.pass = rep.failures.empty();
  return rep;
}

namespace {

std::vector<std::vector<Rational>> rref(const IntMatrix& M, std::size_t& rank) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : M) {
    std::vector<Rational> q;
    for (long v : r) q.push_back(v);
    rows.push_back(std::move(q));
  }
  rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    Rational inv = 1 / rows[rank][c];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][c]) == 0) continue;
      Rational f = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

}  // namespace

std::size_t integer_rank(const IntMatrix& M) {
  std::size_t r;
  rref(M, r);
  return r;
}

IntMatrix row_space_key(const IntMatrix& M) {
  std::size_t r;
  auto rows = rref(M, r);
  IntMatrix key;
  for (const auto& row : rows) {
    Integer l = 1, g = 0;
    for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> ints;
    for (const auto& x : row) {
      Rational y = x * l;
      ints.push_back(y.get_num());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_num_mpz_t());
    }
    std::vector<long> out;
    for (const auto& z : ints) out.push_back(Integer(z / g).get_si());
    key.push_back(std::move(out));
  }
  return key;
}

int monomial_image_dimension(const Variety& V, const IntMatrix& M, const GroebnerOptions& opts) {
  if (V.model() != Model::exp) throw Error(Error::Kind::InvalidInput, "monomial images require model exp");
  const std::size_t n = V.n(), k = M.size();
  for (const auto& row : M) {
    if (row.size() != n) throw Error(Error::Kind::InvalidInput, "matrix must have n columns");
  }
  std::vector<std::string> names;
  for (std::size_t c = 0; c < V.ncoords(); ++c) names.push_back(V.registry()->name(c));
  for (std::size_t j = 1; j <= n; ++j) names.push_back("w" + std::to_string(j));
  for (std::size_t i = 1; i <= k; ++i) names.push_back("u" + std::to_string(i));
  for (std::size_t i = 1; i <= k; ++i) names.push_back("v" + std::to_string(i));
  std::vector<std::size_t> params;
  for (std::size_t p : V.parameters()) {
    params.push_back(names.size());
    names.push_back(V.registry()->name(p));
  }
  auto reg = make_registry(names);
  auto var = [&](std::size_t idx) { return MPoly::variable(reg, idx); };
  const std::size_t w0 = V.ncoords(), u0 = w0 + n, v0 = u0 + k;
  std::vector<MPoly> gens;
  for (const MPoly& g : V.generators()) gens.push_back(g.remap(reg));
  for (std::size_t j = 0; j < n; ++j) gens.push_back(var(V.coord(j + 1, 1)) * var(w0 + j) - MPoly::constant(reg, 1));
  for (std::size_t i = 0; i < k; ++i) {
    MPoly lin = var(u0 + i);
    Monomial mono;
    for (std::size_t j = 0; j < n; ++j) {
      long m = M[i][j];
      lin -= var(V.coord(j + 1, 0)).scaled(m);
      if (m > 0) mono.set(V.coord(j + 1, 1), unsigned(m));
      if (m < 0) mono.set(w0 + j, unsigned(-m));
    }
    gens.push_back(lin);
    gens.push_back(var(v0 + i) - MPoly::monomial(reg, mono, 1));
  }
  std::vector<std::size_t> elim, keep;
  for (std::size_t c = 0; c < u0; ++c) elim.push_back(c);
  for (std::size_t c = u0; c < v0 + k; ++c) keep.push_back(c);
  GroebnerBasis E = eliminate(gens, reg, elim, {keep, params}, opts);
  return independent_dimension(E, keep);
}

RotundReport check_rotund(const Variety& V, long bound, const GroebnerOptions& opts) {
  if (V.model() != Model::exp) throw Error(Error::Kind::InvalidInput, "rotundity requires model exp");
  if (bound < 1) throw Error(Error::Kind::InvalidInput, "bound must be at least 1");
  RotundReport rep;
  rep.bound = bound;
  const std::size_t n = V.n();
  std::set<IntMatrix> seen;
  for (long h = 1; h <= bound; ++h) {
    std::vector<long> values{0};
    for (long v = 1; v <= h; ++v) {
      values.push_back(v);
      values.push_back(-v);
    }
    for (std::size_t k = 1; k <= n; ++k) {
      std::size_t cells = k * n;
      std::vector<std::size_t> idx(cells, 0);
      while (true) {
        IntMatrix M(k, std::vector<long>(n));
        long top = 0;
        for (std::size_t c = 0; c < cells; ++c) {
          M[c / n][c % n] = values[idx[c]];
          top = std::max(top, std::labs(values[idx[c]]));
        }
        if (top == h && integer_rank(M) == k) {
          IntMatrix key = row_space_key(M);
          if (seen.insert(key).second) {
            ++rep.classes_checked;
            int d = monomial_image_dimension(V, M, opts);
            if (d < int(k)) {
              rep.witness = M;
              rep.witness_dimension = d;
              rep.witness_rank = k;
              return rep;
            }
          }
        }
        std::size_t c = cells;
        while (c > 0) {
          --c;
          if (++idx[c] < values.size()) break;
          idx[c] = 0;
          if (c == 0) {
            c = cells + 1;
            break;
          }
        }
        if (c == cells + 1) break;
      }
    }
  }
  rep.rotund = true;
  return rep;
}

}  // namespace ecj
