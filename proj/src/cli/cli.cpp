#include "ecj/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "ecj/asverify.hpp"
#include "ecj/error.hpp"
#include "ecj/expr.hpp"
#include "ecj/geometry.hpp"
#include "ecj/io.hpp"
#include "ecj/modular.hpp"
#include "ecj/reductions.hpp"

namespace ecj {

const std::vector<std::string> kSubcommands = {
    "check-broad",   "check-free",    "check-rotund",      "check-singular",    "construct",
    "construct-nonconstant",          "construct-multi",   "verify-witness",    "verify-as-j",
    "verify-as-exp", "reduce-fiber",  "reduce-mobius",     "lift",              "series-verify-ode",
    "series-modpoly", "lift-j-to-J"};

namespace {

std::string compact(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

const char* tf(bool b) { return b ? "true" : "false"; }

std::string tuple_text(const IndexTuple& t) {
  std::string s = "{";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + "}";
}

// Every multi-line artifact goes to the output file when given, otherwise it
// is echoed as prose.
void emit_artifact(const CommandRequest& r, std::ostream& out, const std::string& kind, const std::string& text) {
  if (r.output) {
    std::ofstream f(*r.output, std::ios::binary);
    if (!f) throw Error(Error::Kind::InvalidInput, "cannot write " + *r.output);
    f << text;
    out << kind << "_file=" << *r.output << "\n";
    return;
  }
  out << "# " << kind << ":\n";
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out << "#   " << line << "\n";
}

Variety load_variety(const CommandRequest& r, std::size_t slot = 0) {
  Variety V = parse_variety(read_file(r.inputs.at(slot)));
  if (!r.base) return V;
  BaseField base = parse_base(*r.base);
  base.constants = V.base().constants;
  std::vector<std::string> gens;
  for (const MPoly& g : V.generators()) gens.push_back(g.to_string());
  try {
    return Variety::from_strings(V.model(), V.n(), base, V.assume_prime(), gens);
  } catch (const ParseError& e) {
    throw Error(Error::Kind::InvalidInput, std::string("generators do not live over --base: ") + e.what());
  }
}

void print_witness_summary(std::ostream& out, const DerivationWitness& w) {
  const Variety& F = w.field;
  for (std::size_t k = 0; k < w.derivations(); ++k) {
    out << "# derivation " << k + 1 << ":";
    for (std::size_t c = 0; c < F.ncoords(); ++c) {
      out << " d" << F.registry()->name(c) << "=" << compact(w.delta[k][c].to_string());
    }
    out << " lambda=" << compact(w.lambda[k].to_string()) << "\n";
  }
}

void claim_lines(std::ostream& out, const Variety& V) {
  Variety K = V.model() == Model::j ? lift_j_to_J(V) : V;
  CoordField field(K);
  ConstraintSystem S = assemble_constraints(field);
  out << "lambda_rank=" << lambda_rank(field, S) << " solution_dimension=" << solution_dimension(field, S)
      << " dim=" << field.transcendence_degree() << "\n";
}

int check_broad(const CommandRequest& r, std::ostream& out) {
  Variety V = load_variety(r);
  BroadnessReport b = check_broadness(V);
  const char* key = V.model() == Model::J ? "J_broad" : "j_broad";
  out << "# broadness of a model " << model_name(V.model()) << " variety with n=" << V.n() << "\n";
  out << key << "=" << tf(b.broad) << " strongly=" << tf(b.strong) << "\n";
  for (const auto& p : b.projections) {
    out << "projection=" << tuple_text(p.indices) << " dim=" << p.dimension << " threshold=" << p.threshold
        << " strong_threshold=" << p.strong_threshold << "\n";
  }
  if (b.failing) out << "failing=" << tuple_text(*b.failing) << "\n";
  return b.broad ? kExitHolds : kExitFails;
}

int check_free(const CommandRequest& r, std::ostream& out) {
  Variety V = load_variety(r);
  FreenessReport f = check_freeness(V, r.nmax);
  out << "free=" << tf(f.free) << " nmax=" << f.nmax << "\n";
  for (std::size_t c : f.constant_coordinates) out << "constant_coordinate=" << V.registry()->name(c) << "\n";
  for (const auto& m : f.relations) out << "modular_relation=" << m.level << " i=" << m.i << " k=" << m.k << "\n";
  if (!f.free) out << "# freeness is certified only up to level nmax\n";
  return f.free ? kExitHolds : kExitFails;
}

int check_rotund_cmd(const CommandRequest& r, std::ostream& out) {
  Variety V = load_variety(r);
  RotundReport rr = check_rotund(V, r.bound);
  out << "rotund=" << tf(rr.rotund) << " bound=" << rr.bound << " classes_checked=" << rr.classes_checked << "\n";
  if (rr.witness) {
    std::string m = "[";
    for (std::size_t i = 0; i < rr.witness->size(); ++i) {
      m += i ? ";" : "";
      for (std::size_t j = 0; j < (*rr.witness)[i].size(); ++j) m += (j ? "," : "") + std::to_string((*rr.witness)[i][j]);
    }
    out << "witness=" << m << "] witness_dimension=" << rr.witness_dimension << " witness_rank=" << rr.witness_rank
        << "\n";
  }
  return rr.rotund ? kExitHolds : kExitFails;
}

int check_singular(const CommandRequest& r, std::ostream& out) {
  Variety V = load_variety(r);
  if (V.model() == Model::j) {
    out << "# checked on the model J lift\n";
    V = lift_j_to_J(V);
  }
  SingularReport s = singular_locus_check(V);
  out << "singular_clean=" << tf(s.pass) << " failures=" << s.failures.size() << "\n";
  for (const auto& [c, p] : s.failures) {
    out << "vanishing=" << V.registry()->name(c) << " generator=" << compact(p.to_string()) << "\n";
  }
  return s.pass ? kExitHolds : kExitFails;
}

int construct(const CommandRequest& r, std::ostream& out) {
  Variety V = load_variety(r);
  EngineOptions opts;
  opts.nmax = r.nmax;
  DerivationWitness w = extend_derivation(V, opts);
  VerifyReport v = verify_witness(V, w);
  out << "constructed=true verified=" << tf(v.verified) << " derivations=" << w.derivations() << "\n";
  claim_lines(out, V);
  print_witness_summary(out, w);
  for (const auto& f : v.failures) out << "# failure: " << f << "\n";
  emit_artifact(r, out, "witness", serialize_witness(w));
  return v.verified ? kExitHolds : kExitResource;
}

int construct_nonconstant(const CommandRequest& r, std::ostream& out) {
  Variety V = load_variety(r);
  EngineOptions opts;
  opts.nmax = r.nmax;
  NonconstantResult res = extend_derivation_nonconstant(V, opts);
  VerifyReport v = verify_witness(V, res.witness);
  out << "constructed=true verified=" << tf(v.verified) << " all_nonconstant=" << tf(res.witness.all_nonconstant)
      << " multiplier=" << res.multiplier << " solution_dimension=" << res.solution_dimension << "\n";
  for (const auto& wmsg : res.warnings) out << "# warning: " << wmsg << "\n";
  print_witness_summary(out, res.witness);
  emit_artifact(r, out, "witness", serialize_witness(res.witness));
  return v.verified && res.witness.all_nonconstant ? kExitHolds : kExitResource;
}

int construct_multi(const CommandRequest& r, std::ostream& out) {
  Variety V = load_variety(r);
  EngineOptions opts;
  opts.nmax = r.nmax;
  MultiResult res = extend_derivations_multi(V, opts);
  VerifyReport v = verify_witness(V, res.witness);
  out << "constructed=true verified=" << tf(v.verified) << " derivations=" << res.witness.derivations()
      << " commuting=" << tf(res.commuting) << "\n";
  for (const auto& c : res.residues) {
    out << "commutator=" << c.a + 1 << "," << c.b + 1 << " coordinate=" << c.coordinate
        << " residue=" << compact(c.value.to_string()) << "\n";
  }
  print_witness_summary(out, res.witness);
  emit_artifact(r, out, "witness", serialize_witness(res.witness));
  return v.verified ? kExitHolds : kExitResource;
}

int verify_witness_cmd(const CommandRequest& r, std::ostream& out) {
  Variety V = load_variety(r, 0);
  DerivationWitness w = parse_witness(read_file(r.inputs.at(1)));
  VerifyReport v = verify_witness(V, w);
  out << "verified=" << tf(v.verified) << " all_nonconstant=" << tf(v.all_nonconstant)
      << " failures=" << v.failures.size() << "\n";
  for (const auto& f : v.failures) out << "# failure: " << f << "\n";
  for (const auto& n : v.notes) out << "# note: " << n << "\n";
  return v.verified ? kExitHolds : kExitFails;
}

void as_lines(std::ostream& out, const ASReport& a) {
  out << "verdict=" << verdict_name(a.verdict) << " lhs=" << a.lhs << " rhs=" << a.rhs << " rank=" << a.rank << "\n";
  out << "relations_hold=" << tf(a.relations_hold) << " nonconstant=" << tf(a.nonconstant) << "\n";
  for (const auto& c : a.constant_coordinates) out << "constant_coordinate=" << c << "\n";
  if (a.modular) {
    out << "modular_independent=" << tf(a.modular->independent) << " nmax=" << a.modular->nmax << "\n";
    for (const auto& m : a.modular->relations) out << "modular_relation=" << m.level << " i=" << m.i << " k=" << m.k << "\n";
  }
  if (a.linearly_independent) out << "linearly_independent=" << tf(*a.linearly_independent) << "\n";
  if (!a.linear_relation.empty()) {
    std::string q;
    for (std::size_t i = 0; i < a.linear_relation.size(); ++i) q += (i ? "," : "") + to_string(a.linear_relation[i]);
    out << "linear_relation=" << q << "\n";
  }
  if (a.reduced) {
    std::string d;
    for (std::size_t i = 0; i < a.reduced->dropped.size(); ++i) d += (i ? "," : "") + std::to_string(a.reduced->dropped[i]);
    out << "reduced_dropped=" << d << " reduced_n=" << a.reduced->n << " reduced_lhs=" << a.reduced->lhs
        << " reduced_rhs=" << a.reduced->rhs << " reduced_verdict=" << verdict_name(a.reduced->verdict) << "\n";
  }
  for (const auto& p : a.problems) out << "# " << p << "\n";
}

int as_exit(ASVerdict v) { return v == ASVerdict::Holds ? kExitHolds : kExitFails; }

int verify_as_j(const CommandRequest& r, std::ostream& out) {
  DerivationWitness w = parse_witness(read_file(r.inputs.at(0)));
  ASReport a = check_ax_schanuel_j(w, r.nmax);
  as_lines(out, a);
  return as_exit(a.verdict);
}

int verify_as_exp(const CommandRequest& r, std::ostream& out) {
  DerivationWitness w = parse_witness(read_file(r.inputs.at(0)));
  ASReport a = check_ax_schanuel_exp(w);
  as_lines(out, a);
  return as_exit(a.verdict);
}

void certificate_lines(const CommandRequest& r, std::ostream& out, const ReductionCertificate& c) {
  out << "reduction=" << reduction_kind_name(c.kind) << " source_n=" << c.source.n() << " target_n=" << c.target.n()
      << "\n";
  out << "source_broad=" << tf(c.source_broad) << " target_broad=" << tf(c.target_broad)
      << " target_dim=" << variety_dimension(c.target) << "\n";
  for (const auto& n : c.notes) out << "# " << n << "\n";
  emit_artifact(r, out, "certificate", serialize_certificate(c));
}

std::array<Rational, 4> parse_point(const std::string& text) {
  std::array<Rational, 4> p{};
  std::stringstream ss(text);
  std::string item;
  std::size_t s = 0;
  while (std::getline(ss, item, ',')) {
    if (s == 4) break;
    p[s++] = parse_rational(compact(item));
  }
  if (s != 4 || ss.rdbuf()->in_avail() > 0) throw Error(Error::Kind::InvalidInput, "--point needs 4 rationals a,b,b',b''");
  return p;
}

int reduce_fiber(const CommandRequest& r, std::ostream& out) {
  Variety V = load_variety(r);
  if (!r.point) throw Error(Error::Kind::InvalidInput, "reduce-fiber needs --point");
  auto c = fiber_constant_coordinate(V, r.block, parse_point(*r.point));
  certificate_lines(r, out, c);
  return kExitHolds;
}

int reduce_mobius(const CommandRequest& r, std::ostream& out) {
  Variety V = load_variety(r);
  auto c = mobius_modular_reduction(V, r.block, r.partner, r.level);
  certificate_lines(r, out, c);
  return kExitHolds;
}

int lift(const CommandRequest& r, std::ostream& out) {
  ReductionCertificate c = parse_certificate(read_file(r.inputs.at(0)));
  DerivationWitness w = parse_witness(read_file(r.inputs.at(1)));
  DerivationWitness lifted = lift_point(w, c);
  out << "lifted=true verified=" << tf(lifted.verified) << " n=" << lifted.n << "\n";
  print_witness_summary(out, lifted);
  emit_artifact(r, out, "witness", serialize_witness(lifted));
  return lifted.verified ? kExitHolds : kExitResource;
}

int series_ode(const CommandRequest& r, std::ostream& out) {
  OdeReport o = verify_j_ode(r.order);
  out << "identity_holds=" << tf(o.identity_holds) << " order=" << r.order << " lowest_exponent=" << o.lowest_exponent
      << " checked_through=" << o.checked_through << " coefficients_checked=" << o.coefficients_checked << "\n";
  if (o.offending_exponent) {
    out << "offending_exponent=" << *o.offending_exponent << " coefficient=" << to_string(o.offending_coefficient)
        << "\n";
  }
  return o.identity_holds ? kExitHolds : kExitFails;
}

int series_modpoly(const CommandRequest& r, std::ostream& out) {
  const ModularPolynomial& phi = modular_polynomial_cached(r.level);
  SubstitutionReport s = check_modular_substitution(phi, r.order);
  out << "level=" << phi.level() << " degree_x=" << phi.degree_x() << " degree_y=" << phi.degree_y()
      << " symmetric=" << tf(phi.is_symmetric()) << " terms=" << phi.terms().size() << "\n";
  out << "substitution_vanishes=" << tf(s.vanishes) << " checked_through=" << s.checked_through << "\n";
  if (s.offending_exponent) out << "offending_exponent=" << *s.offending_exponent << "\n";
  std::ostringstream cache;
  write_modular_cache(cache, {phi});
  if (r.output) emit_artifact(r, out, "cache", cache.str());
  return s.vanishes && phi.is_symmetric() ? kExitHolds : kExitFails;
}

int lift_j(const CommandRequest& r, std::ostream& out) {
  Variety V = load_variety(r);
  ReductionCertificate c = j_lift(V);
  out << "j_broad=" << tf(c.source_broad) << " J_broad=" << tf(c.target_broad)
      << " dim=" << variety_dimension(c.target) << "\n";
  emit_artifact(r, out, "variety", serialize_variety(c.target));
  return kExitHolds;
}

struct Schema {
  std::size_t inputs;
  std::function<int(const CommandRequest&, std::ostream&)> fn;
  bool needs_block = false;
  bool needs_level = false;
};

const std::map<std::string, Schema>& schemas() {
  static const std::map<std::string, Schema> s = {
      {"check-broad", {1, check_broad}},
      {"check-free", {1, check_free}},
      {"check-rotund", {1, check_rotund_cmd}},
      {"check-singular", {1, check_singular}},
      {"construct", {1, construct}},
      {"construct-nonconstant", {1, construct_nonconstant}},
      {"construct-multi", {1, construct_multi}},
      {"verify-witness", {2, verify_witness_cmd}},
      {"verify-as-j", {1, verify_as_j}},
      {"verify-as-exp", {1, verify_as_exp}},
      {"reduce-fiber", {1, reduce_fiber, true}},
      {"reduce-mobius", {1, reduce_mobius, true, true}},
      {"lift", {2, lift}},
      {"series-verify-ode", {0, series_ode}},
      {"series-modpoly", {0, series_modpoly, false, true}},
      {"lift-j-to-J", {1, lift_j}},
  };
  return s;
}

int exit_code(Error::Kind k) {
  switch (k) {
    case Error::Kind::Infeasible:
    case Error::Kind::ConstantForced:
    case Error::Kind::SingularLocus:
    case Error::Kind::Pole:
    case Error::Kind::UnitIdeal:
    case Error::Kind::NoConstantCoordinate:
    case Error::Kind::FiberEmpty:
    case Error::Kind::ModularRelationAbsent:
    case Error::Kind::LiftSingular:
      return kExitFails;
    case Error::Kind::ResourceLimit:
    case Error::Kind::Internal:
      return kExitResource;
    default:
      return kExitInput;
  }
}

}  // namespace

int run(const CommandRequest& r, std::ostream& out) {
  auto it = schemas().find(r.subcommand);
  if (it == schemas().end()) {
    out << "# unknown subcommand '" << r.subcommand << "'\n";
    out << "error=InvalidInput\n";
    return kExitInput;
  }
  const Schema& s = it->second;
  auto reject = [&](const std::string& msg) {
    out << "# " << msg << "\n";
    out << "error=InvalidInput\n";
    return kExitInput;
  };
  if (r.inputs.size() != s.inputs) {
    return reject(r.subcommand + " takes " + std::to_string(s.inputs) + " input file(s)");
  }
  if (s.needs_block && r.block == 0) return reject(r.subcommand + " needs --block");
  if (s.needs_level && r.level == 0) return reject(r.subcommand + " needs --level");
  if (r.subcommand == "reduce-mobius" && r.partner == 0) return reject("reduce-mobius needs --partner");
  if (r.bound < 0) return reject("--bound must be non-negative");
  if (r.order < 1) return reject("--order must be positive");
  try {
    return s.fn(r, out);
  } catch (const ParseError& e) {
    out << "# " << e.what() << "\n";
    out << "error=Parse line=" << e.line() << " column=" << e.column() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    out << "# " << e.what() << "\n";
    out << "error=" << kind_name(e.kind()) << "\n";
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    out << "# out of memory\n";
    out << "error=ResourceLimit\n";
    return kExitResource;
  } catch (const std::exception& e) {
    out << "# " << e.what() << "\n";
    out << "error=Internal\n";
    return kExitResource;
  }
}

}  // namespace ecj
