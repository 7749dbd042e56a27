#include <algorithm>
#include <array>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "ecj/error.hpp"
#include "ecj/modular.hpp"

namespace ecj {

ModularPolynomial::ModularPolynomial(unsigned level, std::vector<ModularTerm> terms)
    : level_(level), terms_(std::move(terms)) {
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const ModularTerm& t) { return t.coeff == 0; }),
               terms_.end());
  std::sort(terms_.begin(), terms_.end(), [](const ModularTerm& a, const ModularTerm& b) {
    return std::tie(a.x_exp, a.y_exp) > std::tie(b.x_exp, b.y_exp);
  });
}

Integer ModularPolynomial::coefficient(unsigned a, unsigned b) const {
  for (const auto& t : terms_) {
    if (t.x_exp == a && t.y_exp == b) return t.coeff;
  }
  return 0;
}

unsigned ModularPolynomial::degree_x() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.x_exp);
  return d;
}

unsigned ModularPolynomial::degree_y() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.y_exp);
  return d;
}

bool ModularPolynomial::is_symmetric() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const ModularTerm& t) { return coefficient(t.y_exp, t.x_exp) == t.coeff; });
}

MPoly ModularPolynomial::as_poly(const RegistryPtr& reg, std::size_t x_var, std::size_t y_var,
                                 OrderPtr order) const {
  std::vector<Term> ts;
  for (const auto& t : terms_) {
    Monomial m;
    if (x_var == y_var) {
      m.set(x_var, t.x_exp + t.y_exp);
    } else {
      m.set(x_var, t.x_exp);
      m.set(y_var, t.y_exp);
    }
    ts.push_back(Term{m, Rational(t.coeff)});
  }
  return MPoly::from_terms(reg, std::move(order), std::move(ts));
}

bool ModularPolynomial::operator==(const ModularPolynomial& o) const {
  if (level_ != o.level_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].x_exp != o.terms_[i].x_exp || terms_[i].y_exp != o.terms_[i].y_exp ||
        terms_[i].coeff != o.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

unsigned psi(unsigned level) {
  unsigned n = level, r = level;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    r = r / p * (p + 1);
  }
  if (n > 1) r = r / n * (n + 1);
  return r;
}

namespace {

void check_level(unsigned level) {
  if (level == 0 || level > kMaxModularLevel) {
    throw Error(Error::Kind::LevelUnavailable,
                "modular polynomial of level " + std::to_string(level) + " is not available (levels 1.." +
                    std::to_string(kMaxModularLevel) + ")");
  }
}

// k-th power sum of j over the level-N transformations, as a q-series.
LaurentSeries power_sum(unsigned level, const LaurentSeries& j, const LaurentSeries& jk, unsigned k) {
  LaurentSeries top = j.substitute_power(level).pow(k);
  switch (level) {
    case 2: {
      // tau -> tau/2 and (tau+1)/2: j(q^{1/2}) and j(-q^{1/2}) on the half grid.
      LaurentSeries half(2, jk.valuation(), jk.coeffs(), jk.precision());
      return top + (half + half.twist()).to_integral_grid();
    }
    case 4:
      // 4 tau, tau + 1/2 (that is j(-q)), and (tau + b)/4.
      return top + jk.twist() + jk.u_operator(4).scaled(4);
    default:
      return top + jk.u_operator(level).scaled(level);
  }
}

}  // namespace

ModularPolynomial modular_polynomial(unsigned level, std::int64_t order) {
  check_level(level);
  if (level == 1) return ModularPolynomial(1, {{1, 0, 1}, {0, 1, -1}});
  const unsigned n = psi(level);
  const std::int64_t margin = level;
  LaurentSeries j = j_series(std::max<std::int64_t>(order, 2)).j;

  std::vector<LaurentSeries> jpow{LaurentSeries::constant(1)};
  for (unsigned k = 1; k <= n; ++k) jpow.push_back(jpow.back() * j);

  std::vector<LaurentSeries> p(n + 1), e(n + 1);
  for (unsigned k = 1; k <= n; ++k) p[k] = power_sum(level, j, jpow[k], k);
  e[0] = LaurentSeries::constant(1);
  for (unsigned k = 1; k <= n; ++k) {
    LaurentSeries acc = LaurentSeries::zero(LaurentSeries::kExact);
    for (unsigned i = 1; i <= k; ++i) {
      LaurentSeries term = e[k - i] * p[i];
      acc = (i % 2 == 1) ? acc + term : acc - term;
    }
    e[k] = acc.scaled(Rational(1, k));
  }

  // E_k(Y) with e_k = E_k(j): peel off the pole part with powers of j.
  std::vector<ModularTerm> terms;
  for (unsigned k = 0; k <= n; ++k) {
    LaurentSeries rem = e[k];
    if (rem.precision() < margin) {
      throw Error(Error::Kind::InsufficientOrder,
                  "order " + std::to_string(order) + " too small for level " + std::to_string(level));
    }
    std::vector<Rational> ek(n + 1, 0);
    while (!rem.is_zero() && rem.valuation() <= 0) {
      std::int64_t m = -rem.valuation();
      if (m > std::int64_t(n)) throw Error(Error::Kind::Internal, "pole order exceeds psi(N)");
      Rational c = rem.coeffs().front();
      ek[std::size_t(m)] = c;
      rem = rem - jpow[std::size_t(m)].scaled(c);
    }
    if (!rem.is_zero()) {
      throw Error(Error::Kind::Internal, "elementary symmetric function is not a polynomial in j");
    }
    Rational sign = (k % 2 == 0) ? 1 : -1;
    for (unsigned m = 0; m <= n; ++m) {
      if (sgn(ek[m]) == 0) continue;
      Rational c = sign * ek[m];
      if (!is_integer(c)) throw Error(Error::Kind::Internal, "non-integral modular polynomial coefficient");
      terms.push_back(ModularTerm{n - k, m, c.get_num()});
    }
  }
  return ModularPolynomial(level, std::move(terms));
}

std::int64_t required_order(unsigned level) {
  check_level(level);
  if (level == 1) return 2;
  auto works = [&](std::int64_t o) {
    try {
      modular_polynomial(level, o);
      return true;
    } catch (const Error& e) {
      if (e.kind() != Error::Kind::InsufficientOrder) throw;
      return false;
    }
  };
  std::int64_t hi = 8;
  while (!works(hi)) hi *= 2;
  std::int64_t lo = hi / 2;  // fails, or below the first probe
  while (hi - lo > 1) {
    std::int64_t mid = (lo + hi) / 2;
    if (works(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

const ModularPolynomial& modular_polynomial_cached(unsigned level) {
  check_level(level);
  static std::mutex mu;
  static std::array<std::optional<ModularPolynomial>, kMaxModularLevel + 1> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[level]) cache[level] = modular_polynomial(level, required_order(level));
  return *cache[level];
}

SubstitutionReport check_modular_substitution(const ModularPolynomial& phi, std::int64_t through) {
  const unsigned N = phi.level();
  const std::int64_t da = phi.degree_x(), db = phi.degree_y();
  std::int64_t order = through + da + std::int64_t(N) * db + 2;
  while (true) {
    LaurentSeries j = j_series(order).j;
    LaurentSeries jN = j.substitute_power(N);
    std::vector<LaurentSeries> pa{LaurentSeries::constant(1)}, pb{LaurentSeries::constant(1)};
    for (std::int64_t a = 1; a <= da; ++a) pa.push_back(pa.back() * j);
    for (std::int64_t b = 1; b <= db; ++b) pb.push_back(pb.back() * jN);
    LaurentSeries acc = LaurentSeries::zero(LaurentSeries::kExact);
    for (const auto& t : phi.terms()) acc = acc + (pa[t.x_exp] * pb[t.y_exp]).scaled(Rational(t.coeff));
    if (acc.precision() < through) {
      order += through - acc.precision();
      continue;
    }
    SubstitutionReport rep;
    rep.checked_through = through;
    LaurentSeries cut = acc.truncated(through);
    rep.vanishes = cut.is_zero();
    if (!rep.vanishes) rep.offending_exponent = cut.valuation();
    return rep;
  }
}

void write_modular_cache(std::ostream& out, const std::vector<ModularPolynomial>& polys) {
  for (const auto& phi : polys) {
    out << "level " << phi.level() << "\n";
    for (const auto& t : phi.terms()) out << "monomial " << t.x_exp << " " << t.y_exp << " " << t.coeff << "\n";
  }
}

std::vector<ModularPolynomial> read_modular_cache(std::istream& in, std::int64_t verify_through) {
  std::vector<ModularPolynomial> out;
  std::optional<unsigned> level;
  std::vector<ModularTerm> terms;
  auto flush = [&]() {
    if (!level) return;
    ModularPolynomial phi(*level, std::move(terms));
    terms.clear();
    if (*level < 1 || *level > kMaxModularLevel) {
      throw Error(Error::Kind::InvalidInput, "cache entry has unsupported level " + std::to_string(*level));
    }
    if (phi.degree_x() != psi(*level) || !check_modular_substitution(phi, verify_through).vanishes) {
      throw Error(Error::Kind::InvalidInput,
                  "cached modular polynomial of level " + std::to_string(*level) + " fails verification");
    }
    out.push_back(std::move(phi));
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "level") {
      flush();
      unsigned n;
      if (!(ls >> n)) throw Error(Error::Kind::InvalidInput, "cache line " + std::to_string(lineno) + ": bad level");
      level = n;
    } else if (kw == "monomial") {
      unsigned a, b;
      std::string c;
      if (!level || !(ls >> a >> b >> c)) {
        throw Error(Error::Kind::InvalidInput, "cache line " + std::to_string(lineno) + ": bad monomial");
      }
      Integer z;
      if (z.set_str(c, 10) != 0) {
        throw Error(Error::Kind::InvalidInput, "cache line " + std::to_string(lineno) + ": bad coefficient");
      }
      terms.push_back(ModularTerm{a, b, z});
    } else {
      throw Error(Error::Kind::InvalidInput, "cache line " + std::to_string(lineno) + ": unknown keyword " + kw);
    }
  }
  flush();
  return out;
}

}  // namespace ecj
