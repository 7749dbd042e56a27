#include "ecj/mpoly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "ecj/error.hpp"

namespace ecj {

// ---------------------------------------------------------------- Registry

Registry::Registry(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVars) {
    throw Error(Error::Kind::ResourceLimit,
                "registry has " + std::to_string(names_.size()) + " variables; at most " +
                    std::to_string(kMaxVars) + " are supported");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = i + 1; j < names_.size(); ++j) {
      if (names_[i] == names_[j]) {
        throw Error(Error::Kind::InvalidInput, "duplicate variable name " + names_[i]);
      }
    }
  }
}

std::optional<std::size_t> Registry::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Registry::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(Error::Kind::RegistryMismatch, "unknown variable " + std::string(name));
}

RegistryPtr make_registry(std::vector<std::string> names) {
  return std::make_shared<const Registry>(std::move(names));
}

bool same_registry(const RegistryPtr& a, const RegistryPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ---------------------------------------------------------------- Monomial

void Monomial::set(std::size_t var, unsigned e) {
  if (e > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(Error::Kind::ResourceLimit, "exponent overflow");
  }
  degree_ = degree_ - exps_[var] + e;
  exps_[var] = static_cast<std::uint16_t>(e);
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned e = unsigned(exps_[i]) + other.exps_[i];
    if (e > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(Error::Kind::ResourceLimit, "exponent overflow");
    }
    r.exps_[i] = static_cast<std::uint16_t>(e);
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.exps_[i] = static_cast<std::uint16_t>(exps_[i] - divisor.exps_[i]);
  }
  r.degree_ = degree_ - divisor.degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  unsigned d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    d += r.exps_[i];
  }
  r.degree_ = d;
  return r;
}

// ----------------------------------------------------------- MonomialOrder

MonomialOrder::MonomialOrder(std::vector<std::vector<std::size_t>> blocks)
    : blocks_(std::move(blocks)) {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.size();
  block_of_.assign(n, n);
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    for (std::size_t v : blocks_[bi]) {
      if (v >= n || block_of_[v] != n) {
        throw Error(Error::Kind::InvalidInput, "monomial order blocks must partition the variables");
      }
      block_of_[v] = bi;
    }
  }
}

OrderPtr MonomialOrder::grevlex(std::size_t nvars) {
  std::vector<std::size_t> all(nvars);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return std::make_shared<const MonomialOrder>(std::vector<std::vector<std::size_t>>{all});
}

OrderPtr MonomialOrder::lex(std::size_t nvars) {
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < nvars; ++i) blocks.push_back({i});
  return std::make_shared<const MonomialOrder>(std::move(blocks));
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (blocks_.size() == 1) {
    if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
    const auto& blk = blocks_.front();
    for (auto it = blk.rbegin(); it != blk.rend(); ++it) {
      unsigned ea = a[*it], eb = b[*it];
      if (ea != eb) return ea < eb ? 1 : -1;
    }
    return 0;
  }
  for (const auto& blk : blocks_) {
    unsigned da = 0, db = 0;
    for (std::size_t v : blk) {
      da += a[v];
      db += b[v];
    }
    if (da != db) return da > db ? 1 : -1;
    for (auto it = blk.rbegin(); it != blk.rend(); ++it) {
      unsigned ea = a[*it], eb = b[*it];
      if (ea != eb) return ea < eb ? 1 : -1;
    }
  }
  return 0;
}

std::string MonomialOrder::tag() const {
  if (blocks_.size() == 1) return "grevlex";
  bool singletons = std::all_of(blocks_.begin(), blocks_.end(),
                                [](const auto& b) { return b.size() == 1; });
  return singletons ? "lex" : "block";
}

bool same_order(const OrderPtr& a, const OrderPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ------------------------------------------------------------------- MPoly

namespace {

void sort_and_merge(std::vector<Term>& terms, const MonomialOrder& ord) {
  std::sort(terms.begin(), terms.end(),
            [&](const Term& x, const Term& y) { return ord.compare(x.mono, y.mono) > 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  terms = std::move(out);
}

}  // namespace

MPoly::MPoly(RegistryPtr reg, OrderPtr order) : reg_(std::move(reg)), order_(std::move(order)) {
  if (!reg_) throw Error(Error::Kind::RegistryMismatch, "polynomial without registry");
  if (!order_) order_ = MonomialOrder::grevlex(reg_->size());
  if (order_->nvars() != reg_->size()) {
    throw Error(Error::Kind::RegistryMismatch, "monomial order does not match registry size");
  }
}

MPoly MPoly::constant(RegistryPtr reg, const Rational& c, OrderPtr order) {
  MPoly p(std::move(reg), std::move(order));
  if (sgn(c) != 0) p.terms_.push_back(Term{Monomial{}, c});
  return p;
}

MPoly MPoly::variable(RegistryPtr reg, std::size_t var, OrderPtr order) {
  MPoly p(std::move(reg), std::move(order));
  if (var >= p.reg_->size()) throw Error(Error::Kind::RegistryMismatch, "variable index out of range");
  Monomial m;
  m.set(var, 1);
  p.terms_.push_back(Term{m, Rational(1)});
  return p;
}

MPoly MPoly::variable(RegistryPtr reg, std::string_view name, OrderPtr order) {
  std::size_t i = reg->index(name);
  return variable(std::move(reg), i, std::move(order));
}

MPoly MPoly::monomial(RegistryPtr reg, const Monomial& m, const Rational& c, OrderPtr order) {
  MPoly p(std::move(reg), std::move(order));
  if (sgn(c) != 0) p.terms_.push_back(Term{m, c});
  return p;
}

MPoly MPoly::from_terms(RegistryPtr reg, OrderPtr order, std::vector<Term> terms) {
  MPoly p(std::move(reg), std::move(order));
  sort_and_merge(terms, *p.order_);
  p.terms_ = std::move(terms);
  return p;
}

bool MPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
}

Rational MPoly::constant_value() const {
  if (!is_constant()) throw Error(Error::Kind::Internal, "constant_value of non-constant polynomial");
  return terms_.empty() ? Rational(0) : terms_.front().coeff;
}

void MPoly::check_compatible(const MPoly& o) const {
  if (!same_registry(reg_, o.reg_)) {
    throw Error(Error::Kind::RegistryMismatch, "operands use different variable registries");
  }
}

const std::vector<Term>& MPoly::terms_in_my_order(const MPoly& o,
                                                  std::vector<Term>& scratch) const {
  if (same_order(order_, o.order_)) return o.terms_;
  scratch = o.terms_;
  sort_and_merge(scratch, *order_);
  return scratch;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_compatible(o);
  std::vector<Term> scratch;
  const auto& b = terms_in_my_order(o, scratch);
  MPoly r(reg_, order_);
  r.terms_.reserve(terms_.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < b.size()) {
    int c = order_->compare(terms_[i].mono, b[j].mono);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(b[j++]);
    } else {
      Rational s = terms_[i].coeff + b[j].coeff;
      if (sgn(s) != 0) r.terms_.push_back(Term{terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
  while (j < b.size()) r.terms_.push_back(b[j++]);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return zero_like();
  MPoly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

MPoly MPoly::mul_term(const Monomial& m, const Rational& c) const {
  if (sgn(c) == 0) return zero_like();
  MPoly r(reg_, order_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.mono * m, t.coeff * c});
  return r;
}

MPoly MPoly::sub_mul_term(const Monomial& m, const Rational& c, const MPoly& g) const {
  check_compatible(g);
  std::vector<Term> scratch;
  const auto& b = terms_in_my_order(g, scratch);
  MPoly r(reg_, order_);
  r.terms_.reserve(terms_.size() + b.size());
  std::size_t i = 0, j = 0;
  Monomial bm;
  bool have_b = false;
  auto load_b = [&]() {
    if (j < b.size()) {
      bm = b[j].mono * m;
      have_b = true;
    } else {
      have_b = false;
    }
  };
  load_b();
  while (i < terms_.size() && have_b) {
    int cmp = order_->compare(terms_[i].mono, bm);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      r.terms_.push_back(Term{bm, -c * b[j].coeff});
      ++j;
      load_b();
    } else {
      Rational s = terms_[i].coeff - c * b[j].coeff;
      if (sgn(s) != 0) r.terms_.push_back(Term{bm, std::move(s)});
      ++i;
      ++j;
      load_b();
    }
  }
  while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
  while (have_b) {
    r.terms_.push_back(Term{bm, -c * b[j].coeff});
    ++j;
    load_b();
  }
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  check_compatible(o);
  if (is_zero() || o.is_zero()) return zero_like();
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coeff);
  if (terms_.size() == 1) {
    std::vector<Term> scratch;
    const auto& b = terms_in_my_order(o, scratch);
    MPoly r(reg_, order_);
    r.terms_.reserve(b.size());
    for (const auto& t : b) r.terms_.push_back(Term{t.mono * terms_[0].mono, t.coeff * terms_[0].coeff});
    return r;
  }
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) prod.push_back(Term{a.mono * b.mono, a.coeff * b.coeff});
  }
  sort_and_merge(prod, *order_);
  MPoly r(reg_, order_);
  r.terms_ = std::move(prod);
  return r;
}

MPoly operator*(const Rational& c, const MPoly& p) { return p.scaled(c); }

MPoly MPoly::pow(unsigned e) const {
  MPoly result = constant_like(1);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

MPoly MPoly::partial(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    out.push_back(Term{m, t.coeff * e});
  }
  return from_terms(reg_, order_, std::move(out));
}

MPoly MPoly::substitute(std::size_t var, const MPoly& value) const {
  check_compatible(value);
  unsigned dmax = degree_in(var);
  if (dmax == 0) return *this;
  std::vector<MPoly> powers{constant_like(1)};
  for (unsigned d = 1; d <= dmax; ++d) powers.push_back(powers.back() * value);
  std::vector<Term> rest;
  MPoly acc = zero_like();
  std::vector<std::vector<Term>> by_degree(dmax + 1);
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    unsigned e = m[var];
    m.set(var, 0);
    by_degree[e].push_back(Term{m, t.coeff});
  }
  for (unsigned d = 0; d <= dmax; ++d) {
    if (by_degree[d].empty()) continue;
    acc += from_terms(reg_, order_, std::move(by_degree[d])) * powers[d];
  }
  return acc;
}

unsigned MPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

unsigned MPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

bool MPoly::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono[var] != 0; });
}

std::vector<std::size_t> MPoly::support() const {
  std::vector<std::size_t> s;
  for (std::size_t v = 0; v < reg_->size(); ++v) {
    if (involves(v)) s.push_back(v);
  }
  return s;
}

MPoly MPoly::coefficient_in(std::size_t var, unsigned d) const {
  MPoly r(reg_, order_);
  for (const auto& t : terms_) {
    if (t.mono[var] != d) continue;
    Monomial m = t.mono;
    m.set(var, 0);
    r.terms_.push_back(Term{m, t.coeff});
  }
  // Dropping var^d can reorder terms under grevlex.
  sort_and_merge(r.terms_, *order_);
  return r;
}

MPoly MPoly::with_order(OrderPtr order) const {
  if (same_order(order_, order)) return *this;
  MPoly r(reg_, std::move(order));
  r.terms_ = terms_;
  sort_and_merge(r.terms_, *r.order_);
  return r;
}

MPoly MPoly::remap(const RegistryPtr& target, OrderPtr order) const {
  if (same_registry(reg_, target)) return order ? with_order(std::move(order)) : *this;
  std::vector<std::size_t> map(reg_->size(), kMaxVars);
  for (std::size_t v = 0; v < reg_->size(); ++v) {
    if (auto idx = target->find(reg_->name(v))) map[v] = *idx;
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t v = 0; v < reg_->size(); ++v) {
      if (t.mono[v] == 0) continue;
      if (map[v] == kMaxVars) {
        throw Error(Error::Kind::RegistryMismatch,
                    "variable " + reg_->name(v) + " does not exist in the target registry");
      }
      m.set(map[v], t.mono[v]);
    }
    out.push_back(Term{m, t.coeff});
  }
  return from_terms(target, std::move(order), std::move(out));
}

MPoly MPoly::primitive_integer() const {
  if (is_zero()) return *this;
  Integer l = 1, g = 0;
  for (const auto& t : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  MPoly r = *this;
  for (auto& t : r.terms_) {
    t.coeff *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  if (sgn(r.terms_.front().coeff) < 0) g = -g;
  for (auto& t : r.terms_) t.coeff /= g;
  return r;
}

MPoly MPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / leading_coeff());
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool printed = false;
    if (t.mono.is_one() || c != 1) {
      os << ecj::to_string(c);
      printed = true;
    }
    for (std::size_t v = 0; v < reg_->size(); ++v) {
      unsigned e = t.mono[v];
      if (e == 0) continue;
      if (printed) os << "*";
      os << reg_->name(v);
      if (e > 1) os << "^" << e;
      printed = true;
    }
  }
  return os.str();
}

bool MPoly::operator==(const MPoly& o) const {
  if (!same_registry(reg_, o.reg_)) return false;
  std::vector<Term> scratch;
  const auto& b = terms_in_my_order(o, scratch);
  if (terms_.size() != b.size()) return false;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (terms_[i].mono != b[i].mono || terms_[i].coeff != b[i].coeff) return false;
  }
  return true;
}

// ------------------------------------------------------- division and gcd

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw Error(Error::Kind::DivisionByZero, "exact division by zero polynomial");
  MPoly bb = b.with_order(a.order());
  if (bb.is_constant()) return a.scaled(1 / bb.constant_value());
  MPoly r = a;
  std::vector<Term> q;
  const Term& lt = bb.leading_term();
  while (!r.is_zero()) {
    const Term& rt = r.leading_term();
    if (!lt.mono.divides(rt.mono)) return std::nullopt;
    Monomial m = rt.mono / lt.mono;
    Rational c = rt.coeff / lt.coeff;
    r = r.sub_mul_term(m, c, bb);
    q.push_back(Term{m, c});
  }
  return MPoly::from_terms(a.registry(), a.order(), std::move(q));
}

namespace {

MPoly exact(const MPoly& a, const MPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error(Error::Kind::Internal, "expected exact polynomial division");
  return *q;
}

MPoly leading_coeff_in(const MPoly& p, std::size_t var) {
  return p.coefficient_in(var, p.degree_in(var));
}

MPoly var_power(const MPoly& like, std::size_t var, unsigned e) {
  Monomial m;
  m.set(var, e);
  return MPoly::monomial(like.registry(), m, 1, like.order());
}

// Pseudo-remainder of a by b as polynomials in var.
MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var) {
  unsigned db = b.degree_in(var);
  MPoly lb = leading_coeff_in(b, var);
  MPoly r = a;
  int e = int(a.degree_in(var)) - int(db) + 1;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    unsigned dr = r.degree_in(var);
    MPoly t = leading_coeff_in(r, var) * var_power(r, var, dr - db);
    r = lb * r - t * b;
    --e;
  }
  if (e > 0) r = lb.pow(unsigned(e)) * r;
  return r;
}

MPoly gcd_impl(const MPoly& a, const MPoly& b);

MPoly primitive_part_in(const MPoly& p, std::size_t var) { return exact(p, content_in(p, var)); }

// Subresultant remainder sequence; inputs primitive in var, both of positive degree.
MPoly subresultant_gcd(MPoly a, MPoly b, std::size_t var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  MPoly g = a.constant_like(1);
  MPoly h = a.constant_like(1);
  while (true) {
    unsigned d = a.degree_in(var) - b.degree_in(var);
    MPoly r = pseudo_remainder(a, b, var);
    if (r.is_zero()) return b;
    if (r.degree_in(var) == 0) return a.constant_like(1);
    a = b;
    b = exact(r, g * h.pow(d));
    g = leading_coeff_in(a, var);
    if (d == 1) {
      h = g;
    } else if (d > 1) {
      h = exact(g.pow(d), h.pow(d - 1));
    }
  }
}

// Upper bound for deg_var gcd(a, b): the degree of the univariate gcd of the
// images with every other variable evaluated at a fixed point modulo a prime.
// Returns -1 when the leading coefficients vanish at the points tried.
int modular_degree_bound(const MPoly& a, const MPoly& b, std::size_t var) {
  constexpr std::uint64_t P = 2147483647ULL;
  auto mulmod = [](std::uint64_t x, std::uint64_t y) { return x * y % P; };
  auto powmod = [&](std::uint64_t x, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, x = mulmod(x, x)) {
      if (e & 1) r = mulmod(r, x);
    }
    return r;
  };
  auto reduce = [&](const Integer& z) {
    Integer m = z % Integer(P);
    if (m < 0) m += P;
    return std::uint64_t(m.get_ui());
  };
  using Uni = std::vector<std::uint64_t>;
  auto trim = [](Uni& u) {
    while (!u.empty() && u.back() == 0) u.pop_back();
  };
  const std::size_t nv = a.registry()->size();
  for (unsigned attempt = 0; attempt < 3; ++attempt) {
    std::vector<std::uint64_t> point(nv);
    std::uint64_t state = 0x9E3779B97F4A7C15ULL + attempt;
    for (std::size_t v = 0; v < nv; ++v) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      point[v] = 2 + (state >> 33) % (P - 3);
    }
    bool bad = false;
    auto image = [&](const MPoly& f) {
      Uni u(f.degree_in(var) + 1, 0);
      for (const Term& t : f.terms()) {
        std::uint64_t den = reduce(t.coeff.get_den());
        if (den == 0) {
          bad = true;
          return u;
        }
        std::uint64_t c = mulmod(reduce(t.coeff.get_num()), powmod(den, P - 2));
        for (std::size_t v = 0; v < nv; ++v) {
          if (v != var && t.mono[v] != 0) c = mulmod(c, powmod(point[v], t.mono[v]));
        }
        std::uint64_t& slot = u[t.mono[var]];
        slot = (slot + c) % P;
      }
      return u;
    };
    Uni x = image(a), y = image(b);
    if (bad || x.back() == 0 || y.back() == 0) continue;
    while (!y.empty()) {
      // x := x mod y
      std::uint64_t inv = powmod(y.back(), P - 2);
      while (x.size() >= y.size()) {
        std::uint64_t q = mulmod(x.back(), inv);
        std::size_t shift = x.size() - y.size();
        for (std::size_t i = 0; i < y.size(); ++i) {
          x[shift + i] = (x[shift + i] + P - mulmod(q, y[i])) % P;
        }
        trim(x);
        if (x.empty()) break;
      }
      std::swap(x, y);
    }
    return int(x.size()) - 1;
  }
  return -1;
}

MPoly gcd_impl(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return a.constant_like(1);
  if (a == b) return a.monic();
  if (a.length() == 1 && b.length() == 1) {
    Monomial m;
    const Monomial& x = a.leading_monomial();
    const Monomial& y = b.leading_monomial();
    for (std::size_t v = 0; v < a.registry()->size(); ++v) m.set(v, std::min(x[v], y[v]));
    return MPoly::monomial(a.registry(), m, 1, a.order());
  }
  auto sa = a.support();
  auto sb = b.support();
  for (std::size_t v : sa) {
    if (!std::binary_search(sb.begin(), sb.end(), v)) return gcd_impl(content_in(a, v), b);
  }
  for (std::size_t v : sb) {
    if (!std::binary_search(sa.begin(), sa.end(), v)) return gcd_impl(a, content_in(b, v));
  }
  bool coprime = true;
  for (std::size_t v : sa) {
    if (modular_degree_bound(a, b, v) != 0) {
      coprime = false;
      break;
    }
  }
  if (coprime) return a.constant_like(1);
  if (auto q = divide_exact(a, b)) return b.monic();
  if (auto q = divide_exact(b, a)) return a.monic();
  // Main variable: the shared variable of smallest combined degree.
  std::size_t var = sa.front();
  unsigned best = ~0u;
  for (std::size_t v : sa) {
    unsigned d = a.degree_in(v) + b.degree_in(v);
    if (d < best) {
      best = d;
      var = v;
    }
  }
  MPoly ca = content_in(a, var);
  MPoly cb = content_in(b, var);
  MPoly pa = exact(a, ca);
  MPoly pb = exact(b, cb);
  MPoly g = subresultant_gcd(pa, pb, var);
  if (!g.is_constant()) g = primitive_part_in(g, var);
  return (gcd_impl(ca, cb) * g).monic();
}

}  // namespace

MPoly content_in(const MPoly& p, std::size_t var) {
  if (p.is_zero()) return p;
  unsigned d = p.degree_in(var);
  MPoly g = p.zero_like();
  for (unsigned e = 0; e <= d; ++e) {
    MPoly c = p.coefficient_in(var, e);
    if (c.is_zero()) continue;
    if (c.is_constant()) return p.constant_like(1);
    g = g.is_zero() ? c.monic() : gcd_impl(g, c);
    if (g.is_constant()) return p.constant_like(1);
  }
  return g.monic();
}

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (!same_registry(a.registry(), b.registry())) {
    throw Error(Error::Kind::RegistryMismatch, "gcd operands use different registries");
  }
  return gcd_impl(a, b.with_order(a.order()));
}

MPoly resultant(const MPoly& a, const MPoly& b, std::size_t var) {
  unsigned m = a.degree_in(var), n = b.degree_in(var);
  if (m == 0 && n == 0) return a.constant_like(1);
  std::size_t size = m + n;
  if (size == 0) return a.constant_like(1);
  std::vector<std::vector<MPoly>> mat(size, std::vector<MPoly>(size, a.zero_like()));
  for (unsigned r = 0; r < n; ++r) {
    for (unsigned k = 0; k <= m; ++k) mat[r][r + k] = a.coefficient_in(var, m - k);
  }
  for (unsigned r = 0; r < m; ++r) {
    for (unsigned k = 0; k <= n; ++k) mat[n + r][r + k] = b.coefficient_in(var, n - k);
  }
  // Bareiss fraction-free elimination.
  MPoly prev = a.constant_like(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < size && mat[p][k].is_zero()) ++p;
      if (p == size) return a.zero_like();
      std::swap(mat[p], mat[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        mat[i][j] = exact(mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j], prev);
      }
      mat[i][k] = a.zero_like();
    }
    prev = mat[k][k];
  }
  MPoly det = mat[size - 1][size - 1];
  return sign > 0 ? det : -det;
}

}  // namespace ecj
