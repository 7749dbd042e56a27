#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "ecj/cli.hpp"

using namespace ecj;

namespace {

const std::string corpus = ECJ_CORPUS_DIR;

struct Result {
  int code;
  std::string out;
};

Result call(CommandRequest r) {
  std::ostringstream out;
  int code = run(r, out);
  return {code, out.str()};
}

CommandRequest req(const std::string& sub, std::vector<std::string> inputs = {}) {
  CommandRequest r;
  r.subcommand = sub;
  r.inputs = std::move(inputs);
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ecj_cli_test_" + name)).string();
}

bool well_formed(const std::string& report) {
  static const std::regex machine("[A-Za-z_][A-Za-z0-9_]*=[^ ]*( [A-Za-z_][A-Za-z0-9_]*=[^ ]*)*");
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) continue;
    if (!std::regex_match(line, machine)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("check-broad on F4") {
  Result r = call(req("check-broad", {corpus + "/J1_full.var"}));
  CHECK(r.code == 0);
  CHECK(r.out.find("J_broad=true strongly=true\n") != std::string::npos);
  CHECK(well_formed(r.out));

  Result n = call(req("check-broad", {corpus + "/J2_not_broad.var"}));
  CHECK(n.code == 1);
  CHECK(n.out.find("failing={1}") != std::string::npos);
}

TEST_CASE("construct then verify-witness") {
  std::string w = temp_path("f4.wit");
  CommandRequest c = req("construct", {corpus + "/J1_full.var"});
  c.output = w;
  Result r = call(c);
  CHECK(r.code == 0);
  CHECK(r.out.find("verified=true") != std::string::npos);
  CHECK(r.out.find("lambda_rank=3 solution_dimension=1 dim=4") != std::string::npos);
  Result v = call(req("verify-witness", {corpus + "/J1_full.var", w}));
  CHECK(v.code == 0);
  CHECK(v.out.find("verified=true") != std::string::npos);
  // Against a different variety the same witness fails.
  Result bad = call(req("verify-witness", {corpus + "/J1_const_z.var", w}));
  CHECK(bad.code == 1);
  CHECK(well_formed(bad.out));
  Result as = call(req("verify-as-j", {w}));
  CHECK(as.code == 0);
  CHECK(as.out.find("verdict=inequality-holds lhs=4 rhs=4") != std::string::npos);
  std::filesystem::remove(w);
}

TEST_CASE("input errors exit 2") {
  std::string bad = temp_path("bad.var");
  std::ofstream(bad) << "variety\nmodel=J\nn=1\nbase=Q(t)\npoly w1 + j1\n";
  Result r = call(req("check-broad", {bad}));
  CHECK(r.code == 2);
  CHECK(r.out.find("error=Parse line=5 column=6") != std::string::npos);
  CHECK(well_formed(r.out));
  CHECK(call(req("check-broad", {temp_path("missing.var")})).code == 2);
  CHECK(call(req("no-such-command")).code == 2);
  CHECK(call(req("check-broad")).code == 2);
  CommandRequest lvl = req("series-modpoly");
  CHECK(call(lvl).code == 2);
  lvl.level = 6;
  CHECK(call(lvl).code == 2);
  CHECK(call(req("check-rotund", {corpus + "/J1_full.var"})).code == 2);
  std::filesystem::remove(bad);
}

TEST_CASE("negative outcomes exit 1") {
  CommandRequest nc = req("construct-nonconstant", {corpus + "/J1_designed.var"});
  Result r = call(nc);
  CHECK(r.code == 1);
  CHECK(r.out.find("error=ConstantForced") != std::string::npos);
  CHECK(call(req("check-free", {corpus + "/J2_phi1.var"})).code == 1);
  CHECK(call(req("check-rotund", {corpus + "/G2_diagonal.var"})).code == 1);
  CommandRequest f = req("reduce-fiber", {corpus + "/J2_const_block.var"});
  f.block = 1;
  f.point = "6,2,1,1";
  CHECK(call(f).code == 1);
  f.point = "5,2";
  CHECK(call(f).code == 2);
}

TEST_CASE("reduce, construct, lift") {
  std::string cert = temp_path("mob.cert"), ww = temp_path("w.wit"), lifted = temp_path("v.wit");
  CommandRequest m = req("reduce-mobius", {corpus + "/J2_phi1.var"});
  m.block = 1;
  m.partner = 2;
  m.level = 1;
  m.output = cert;
  Result r = call(m);
  CHECK(r.code == 0);
  CHECK(r.out.find("target_broad=true") != std::string::npos);
  // The certificate's target as a standalone variety file.
  std::ifstream in(cert);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  std::string target = text.substr(text.find("begin target\n") + 13);
  target = target.substr(0, target.find("end\n"));
  std::string wvar = temp_path("W.var");
  std::ofstream(wvar) << target;
  CommandRequest c = req("construct", {wvar});
  c.output = ww;
  CHECK(call(c).code == 0);
  CommandRequest l = req("lift", {cert, ww});
  l.output = lifted;
  Result lr = call(l);
  CHECK(lr.code == 0);
  CHECK(call(req("verify-witness", {corpus + "/J2_phi1.var", lifted})).code == 0);
  for (const auto& p : {cert, ww, lifted, wvar}) std::filesystem::remove(p);
}

TEST_CASE("series and lift subcommands") {
  CommandRequest ode = req("series-verify-ode");
  ode.order = 20;
  Result o = call(ode);
  CHECK(o.code == 0);
  CHECK(o.out.find("identity_holds=true") != std::string::npos);

  CommandRequest mp = req("series-modpoly");
  mp.level = 2;
  mp.order = 20;
  Result p = call(mp);
  CHECK(p.code == 0);
  CHECK(p.out.find("degree_x=3 degree_y=3 symmetric=true") != std::string::npos);

  Result lj = call(req("lift-j-to-J", {corpus + "/j1_z_eq_j.var"}));
  CHECK(lj.code == 0);
  CHECK(lj.out.find("j_broad=true J_broad=true dim=3") != std::string::npos);
  CHECK(well_formed(lj.out));

  Result te = call(req("verify-as-exp", {corpus + "/G1_te.wit"}));
  CHECK(te.code == 0);
  CHECK(te.out.find("verdict=inequality-holds lhs=2 rhs=2") != std::string::npos);
}

TEST_CASE("every subcommand writes well-formed, repeatable reports") {
  std::vector<CommandRequest> rs = {
      req("check-broad", {corpus + "/J2_phi1.var"}),        req("check-free", {corpus + "/J2_phi1.var"}),
      req("check-rotund", {corpus + "/G2_sum.var"}),        req("check-singular", {corpus + "/J2_diagonal.var"}),
      req("construct", {corpus + "/J2_hyperplane.var"}),    req("construct-multi", {corpus + "/G1_full.var"}),
      req("verify-as-j", {corpus + "/J2_full.wit"}),        req("verify-as-exp", {corpus + "/G1_te.wit"}),
      req("lift-j-to-J", {corpus + "/j2_phi1.var"}),
  };
  CommandRequest nc = req("construct-nonconstant", {corpus + "/J1_full.var"});
  nc.base = "Q";
  rs.push_back(nc);
  CommandRequest fb = req("reduce-fiber", {corpus + "/J2_const_block.var"});
  fb.block = 1;
  fb.point = "5,2,1,1";
  rs.push_back(fb);
  for (const auto& r : rs) {
    CAPTURE(r.subcommand);
    Result a = call(r), b = call(r);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(well_formed(a.out));
    CHECK(a.code <= 1);
  }
}
