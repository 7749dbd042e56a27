#include <filesystem>
#include <map>
#include <sstream>

#include "doctest.h"
#include "ecj/asverify.hpp"
#include "ecj/error.hpp"
#include "ecj/io.hpp"

using namespace ecj;
namespace fs = std::filesystem;

namespace {

struct Entry {
  std::string name;
  Variety V;
  std::map<std::string, std::string> expect;
};

std::vector<Entry> load_corpus() {
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(ECJ_CORPUS_DIR)) {
    if (e.path().extension() == ".var") paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<Entry> out;
  for (const auto& p : paths) {
    std::string text = read_file(p.string());
    Entry e{p.stem().string(), parse_variety(text), {}};
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind("# expect ", 0) != 0) continue;
      std::istringstream toks(line.substr(9));
      std::string tok;
      while (toks >> tok) {
        auto eq = tok.find('=');
        e.expect[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

const std::vector<Entry>& corpus() {
  static const std::vector<Entry> c = load_corpus();
  return c;
}

bool flag(const Entry& e, const std::string& key) {
  auto it = e.expect.find(key);
  return it != e.expect.end() && it->second == "true";
}

std::string tuple_key(const IndexTuple& t) {
  std::string s = "projection{";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + "}";
}

}  // namespace

TEST_CASE("corpus size and coverage") {
  std::map<Model, int> models;
  for (const auto& e : corpus()) {
    CHECK(e.V.n() <= 2);
    CHECK(e.expect.count("dim"));
    ++models[e.V.model()];
  }
  CHECK(corpus().size() >= 12);
  CHECK(models[Model::J] > 0);
  CHECK(models[Model::j] > 0);
  CHECK(models[Model::exp] > 0);
}

TEST_CASE("corpus annotations") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    CHECK(std::to_string(variety_dimension(e.V)) == e.expect.at("dim"));
    if (e.V.model() == Model::exp) {
      RotundReport r = check_rotund(e.V, 3);
      CHECK(r.rotund == flag(e, "rotund"));
      continue;
    }
    BroadnessReport b = check_broadness(e.V);
    for (const auto& p : b.projections) {
      auto it = e.expect.find(tuple_key(p.indices));
      REQUIRE(it != e.expect.end());
      CHECK(std::to_string(p.dimension) == it->second);
    }
    CHECK(b.broad == flag(e, "broad"));
    CHECK(b.strong == flag(e, "strong"));
    CHECK(check_freeness(e.V, 5).free == flag(e, "free"));
    if (e.expect.count("singular_clean")) {
      Variety K = e.V.model() == Model::j ? lift_j_to_J(e.V) : e.V;
      CHECK(singular_locus_check(K).pass == flag(e, "singular_clean"));
    }
  }
}

TEST_CASE("elimination agrees with resultants on two-generator instances") {
  int compared = 0;
  for (const auto& e : corpus()) {
    const auto& gens = e.V.generators();
    if (gens.size() != 2) continue;
    auto reg = e.V.registry();
    for (std::size_t v = 0; v < reg->size(); ++v) {
      if (!gens[0].involves(v) || !gens[1].involves(v)) continue;
      CAPTURE(e.name);
      CAPTURE(reg->name(v));
      std::vector<std::size_t> keep;
      for (std::size_t w = 0; w < reg->size(); ++w) {
        if (w != v) keep.push_back(w);
      }
      GroebnerBasis E = eliminate(gens, reg, {v}, {keep});
      MPoly R = resultant(gens[0], gens[1], v);
      REQUIRE_FALSE(R.is_zero());
      // Res lies in the elimination ideal; some generator is monic in v, so
      // the two have the same radical.
      CHECK(normal_form(R.with_order(E.order()), E).is_zero());
      GroebnerBasis Rb = buchberger({R}, reg, E.order());
      for (const MPoly& g : E.gens()) {
        bool inside = false;
        MPoly p = g;
        for (unsigned k = 1; k <= R.total_degree() && !inside; ++k, p = p * g) inside = normal_form(p, Rb).is_zero();
        CHECK(inside);
      }
      ++compared;
    }
  }
  CHECK(compared >= 3);
}

TEST_CASE("engine on broad free clean corpus varieties") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    bool exp = e.V.model() == Model::exp;
    bool eligible = exp ? flag(e, "rotund") : flag(e, "broad") && flag(e, "free") && flag(e, "singular_clean");
    if (!eligible) continue;
    DerivationWitness w = extend_derivation(e.V);
    CHECK(verify_witness(e.V, w).verified);
    Variety K = e.V.model() == Model::j ? lift_j_to_J(e.V) : e.V;
    CoordField field(K);
    ConstraintSystem S = assemble_constraints(field);
    std::size_t per = exp ? 1 : 3;
    CHECK(lambda_rank(field, S) == per * K.n());
    CHECK(int(solution_dimension(field, S)) == variety_dimension(K) - int(per * K.n()));

    DerivationWitness back = parse_witness(serialize_witness(w));
    CHECK(serialize_witness(back) == serialize_witness(w));
    CHECK(verify_witness(e.V, back).verified);

    ASReport a = exp ? check_ax_schanuel_exp(w) : check_ax_schanuel_j(w, 5);
    CHECK(a.verdict != ASVerdict::Violation);
    if (a.reduced) CHECK(a.reduced->verdict != ASVerdict::Violation);
    if (a.nonconstant && (!a.modular || a.modular->independent) && a.linearly_independent.value_or(true)) {
      CHECK(a.verdict == ASVerdict::Holds);
    }
  }
}

TEST_CASE("j lift broadness on the corpus") {
  for (const auto& e : corpus()) {
    if (e.V.model() != Model::j) continue;
    CAPTURE(e.name);
    auto c = j_lift(e.V);
    CHECK(c.source_broad == c.target_broad);
    CHECK(c.source_broad == flag(e, "broad"));
  }
}

TEST_CASE("corpus reductions round-trip") {
  auto find = [](const std::string& name) -> const Variety& {
    for (const auto& e : corpus()) {
      if (e.name == name) return e.V;
    }
    throw Error(Error::Kind::Internal, "missing corpus entry " + name);
  };
  const Variety& phi1 = find("J2_phi1");
  auto m = mobius_modular_reduction(phi1, 1, 2, 1);
  CHECK(check_broadness(m.target).broad);
  // Every projection of W is large: dim Pr(W) >= 3 * |tuple|.
  for (const auto& p : check_broadness(m.target).projections) CHECK(p.dimension >= 3 * int(p.indices.size()));
  CHECK(verify_witness(phi1, lift_point(extend_derivation(m.target), m)).verified);

  const Variety& fib = find("J2_const_block");
  auto f = fiber_constant_coordinate(fib, 1, {Rational(5), Rational(2), Rational(1), Rational(1)});
  CHECK(variety_dimension(f.target) >= variety_dimension(fib) - projection_dimension(fib, {1}));
  CHECK(verify_witness(fib, lift_point(extend_derivation(f.target), f)).verified);

  for (const auto& e : corpus()) {
    if (e.V.model() != Model::j) continue;
    auto c = j_lift(e.V);
    if (!c.target_broad) continue;
    CAPTURE(e.name);
    CHECK(verify_witness(e.V, lift_point(extend_derivation(c.target), c)).verified);
  }
}
