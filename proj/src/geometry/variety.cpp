#include "ecj/variety.hpp"

#include <algorithm>
#include <cctype>

#include "ecj/error.hpp"
#include "ecj/expr.hpp"

namespace ecj {

const char* model_name(Model m) noexcept {
  switch (m) {
    case Model::J: return "J";
    case Model::j: return "j";
    case Model::exp: return "exp";
  }
  return "?";
}

Model parse_model(std::string_view s) {
  if (s == "J") return Model::J;
  if (s == "j") return Model::j;
  if (s == "exp") return Model::exp;
  throw Error(Error::Kind::InvalidInput, "unknown model '" + std::string(s) + "' (expected J, j or exp)");
}

std::size_t block_arity(Model m) noexcept { return m == Model::J ? 4 : 2; }

std::string coordinate_name(Model m, std::size_t i, std::size_t slot) {
  static const char* jnames[] = {"z", "j", "jp", "jpp"};
  static const char* enames[] = {"x", "y"};
  const char* base = m == Model::exp ? enames[slot] : jnames[slot];
  return base + std::to_string(i);
}

std::string BaseField::descriptor() const {
  if (params.empty()) return "Q";
  std::string s = "Q(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) s += ",";
    s += params[i];
  }
  return s + ")";
}

namespace {

bool valid_ident(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

BaseField parse_base(std::string_view d) {
  std::string s = trim(d);
  BaseField b;
  if (s == "Q") return b;
  if (s.size() < 4 || s.substr(0, 2) != "Q(" || s.back() != ')') {
    throw Error(Error::Kind::InvalidInput, "malformed base descriptor '" + s + "'");
  }
  std::string inner = s.substr(2, s.size() - 3);
  auto dots = inner.find("..");
  if (dots != std::string::npos) {
    std::string lo = trim(inner.substr(0, dots)), hi = trim(inner.substr(dots + 2));
    auto split = [&](const std::string& t, std::string& stem, long& idx) {
      std::size_t k = t.size();
      while (k > 0 && std::isdigit(static_cast<unsigned char>(t[k - 1]))) --k;
      if (k == 0 || k == t.size()) throw Error(Error::Kind::InvalidInput, "malformed range in base '" + s + "'");
      stem = t.substr(0, k);
      idx = std::stol(t.substr(k));
    };
    std::string s1, s2;
    long a, z;
    split(lo, s1, a);
    split(hi, s2, z);
    if (s1 != s2 || a > z || z - a > 16) throw Error(Error::Kind::InvalidInput, "malformed range in base '" + s + "'");
    for (long i = a; i <= z; ++i) b.params.push_back(s1 + std::to_string(i));
    return b;
  }
  std::size_t start = 0;
  while (start <= inner.size()) {
    auto comma = inner.find(',', start);
    std::string name = trim(inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!valid_ident(name)) throw Error(Error::Kind::InvalidInput, "bad parameter name in base '" + s + "'");
    b.params.push_back(name);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return b;
}

Variety::Variety(Model model, std::size_t n, BaseField base, bool assume_prime)
    : model_(model), n_(n), base_(std::move(base)), assume_prime_(assume_prime) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n_; ++i) {
    for (std::size_t s = 0; s < arity(); ++s) names.push_back(coordinate_name(model_, i, s));
  }
  for (const auto& p : base_.params) names.push_back(p);
  for (const auto& c : base_.constants) names.push_back(c);
  // Registry enforces distinct names, which also rejects parameter/coordinate clashes.
  reg_ = make_registry(std::move(names));
}

Variety Variety::from_strings(Model model, std::size_t n, BaseField base, bool assume_prime,
                              const std::vector<std::string>& generators) {
  Variety V(model, n, std::move(base), assume_prime);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    V.add_generator(parse_polynomial(generators[i], V.registry(), int(i) + 1));
  }
  return V;
}

void Variety::add_generator(const MPoly& g) {
  if (!same_registry(g.registry(), reg_)) {
    throw Error(Error::Kind::RegistryMismatch, "generator does not belong to the variety's registry");
  }
  gens_.push_back(g.remap(reg_));
}

void Variety::set_generators(std::vector<MPoly> gens) {
  gens_.clear();
  for (auto& g : gens) add_generator(g);
}

std::vector<std::size_t> Variety::block(std::size_t i) const {
  if (i < 1 || i > n_) throw Error(Error::Kind::InvalidInput, "block index " + std::to_string(i) + " out of range");
  std::vector<std::size_t> b;
  for (std::size_t s = 0; s < arity(); ++s) b.push_back(coord(i, s));
  return b;
}

std::vector<std::size_t> Variety::coordinates() const {
  std::vector<std::size_t> c(ncoords());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = k;
  return c;
}

std::vector<std::size_t> Variety::derivation_params() const {
  std::vector<std::size_t> p;
  for (std::size_t k = 0; k < base_.params.size(); ++k) p.push_back(ncoords() + k);
  return p;
}

std::vector<std::size_t> Variety::constant_params() const {
  std::vector<std::size_t> p;
  for (std::size_t k = 0; k < base_.constants.size(); ++k) p.push_back(ncoords() + base_.params.size() + k);
  return p;
}

std::vector<std::size_t> Variety::parameters() const {
  std::vector<std::size_t> p = derivation_params();
  for (std::size_t c : constant_params()) p.push_back(c);
  return p;
}

GroebnerBasis variety_basis(const Variety& V, const GroebnerOptions& opts) {
  OrderPtr ord = elimination_order({}, {V.coordinates(), V.parameters()}, V.registry()->size());
  return buchberger(V.generators(), V.registry(), ord, opts);
}

bool vanishes_on(const MPoly& f, const Variety& V, const GroebnerBasis& G) {
  return pseudo_reduce(f, G, V.parameters()).remainder.is_zero();
}

int variety_dimension(const Variety& V, const GroebnerOptions& opts) {
  return independent_dimension(variety_basis(V, opts), V.coordinates());
}

}  // namespace ecj

namespace ecj {

Variety lift_j_to_J(const Variety& V) {
  if (V.model() != Model::j) throw Error(Error::Kind::InvalidInput, "lift_j_to_J requires a model j variety");
  Variety out(Model::J, V.n(), V.base(), V.assume_prime());
  std::vector<MPoly> gens;
  for (const MPoly& g : V.generators()) gens.push_back(g.remap(out.registry()));
  out.set_generators(std::move(gens));
  return out;
}

}  // namespace ecj
