#include "ecj/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "ecj/error.hpp"
#include "ecj/expr.hpp"

namespace ecj {

namespace {

struct Line {
  int number;
  std::string text;     // comment stripped, trimmed
  std::size_t column;   // 1-based column where `text` starts
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<Line> split_lines(std::string_view text, int first_line = 1) {
  std::vector<Line> out;
  int number = first_line;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t lead = 0;
    while (lead < raw.size() && std::isspace(static_cast<unsigned char>(raw[lead]))) ++lead;
    std::string t = trim(raw);
    if (!t.empty()) out.push_back({number, t, lead + 1});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
    ++number;
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const std::string& msg, std::size_t offset = 0) {
  throw ParseError(l.number, int(l.column + offset), msg);
}

bool parse_bool(const Line& l, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(l, "expected true or false, got '" + v + "'");
}

std::size_t parse_count(const Line& l, const std::string& v) {
  if (v.empty() || v.size() > 6 || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(c); })) {
    fail(l, "expected a non-negative integer, got '" + v + "'");
  }
  return std::stoul(v);
}

std::vector<std::string> split_names(const Line& l, const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  static const std::regex ident("[A-Za-z][A-Za-z0-9]*");
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!std::regex_match(item, ident)) fail(l, "bad name '" + item + "'");
    out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

// Coordinate-looking names that the registry lacks get a precise message.
void check_identifiers(const Line& l, std::string_view expr, std::size_t offset, const RegistryPtr& reg, Model model,
                       std::size_t n) {
  static const std::regex ident("[A-Za-z][A-Za-z0-9]*");
  static const std::regex coord("(z|j|jp|jpp|x|y)([0-9]+)");
  std::string s(expr);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), ident); it != std::sregex_iterator(); ++it) {
    std::string name = it->str();
    if (reg->find(name)) continue;
    std::smatch m;
    std::size_t col = offset + std::size_t(it->position());
    if (std::regex_match(name, m, coord)) {
      std::size_t idx = std::stoul(m[2]);
      bool in_model = model == Model::exp ? (m[1] == "x" || m[1] == "y")
                                          : (m[1] == "z" || m[1] == "j" ||
                                             (model == Model::J && (m[1] == "jp" || m[1] == "jpp")));
      if (in_model && (idx == 0 || idx > n)) {
        fail(l, "coordinate " + name + " does not fit n=" + std::to_string(n), col);
      }
      if (!in_model) fail(l, "coordinate " + name + " does not exist in model " + model_name(model), col);
    }
    fail(l, "unknown coordinate or parameter '" + name + "'", col);
  }
}

template <class T, class F>
T parse_expr(const Line& l, std::string_view expr, std::size_t offset, F&& parse) {
  try {
    return parse(expr);
  } catch (const ParseError& e) {
    std::string what = e.what();
    auto colon = what.find(": ");
    throw ParseError(l.number, int(l.column + offset + std::size_t(e.column()) - 1),
                     colon == std::string::npos ? what : what.substr(colon + 2));
  }
}

struct Header {
  std::map<std::string, std::pair<std::string, Line>> values;
  std::vector<Line> body;
};

// Splits key=value header lines (before the body) from the rest.
Header read_header(const std::vector<Line>& lines, std::size_t start, const std::vector<std::string>& keys) {
  Header h;
  std::size_t i = start;
  for (; i < lines.size(); ++i) {
    const Line& l = lines[i];
    auto eq = l.text.find('=');
    if (eq == std::string::npos) break;
    std::string key = trim(l.text.substr(0, eq));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) break;
    if (h.values.count(key)) fail(l, "duplicate header '" + key + "'");
    h.values.emplace(key, std::make_pair(trim(l.text.substr(eq + 1)), l));
  }
  h.body.assign(lines.begin() + long(i), lines.end());
  return h;
}

const std::pair<std::string, Line>& require(const Header& h, const std::string& key, const Line& anchor) {
  auto it = h.values.find(key);
  if (it == h.values.end()) fail(anchor, "missing header '" + key + "'");
  return it->second;
}

BaseField read_base(const Header& h, const Line& anchor) {
  const auto& b = require(h, "base", anchor);
  BaseField base;
  try {
    base = parse_base(b.first);
  } catch (const Error& e) {
    fail(b.second, e.what());
  }
  if (auto it = h.values.find("constants"); it != h.values.end()) base.constants = split_names(it->second.second, it->second.first);
  return base;
}

Model read_model(const Header& h, const Line& anchor) {
  const auto& m = require(h, "model", anchor);
  try {
    return parse_model(m.first);
  } catch (const Error&) {
    fail(m.second, "unknown model '" + m.first + "'");
  }
}

std::size_t read_n(const Header& h, const Line& anchor) {
  const auto& v = require(h, "n", anchor);
  std::size_t n = parse_count(v.second, v.first);
  if (n == 0) fail(v.second, "n must be at least 1");
  return n;
}

// Text after a fixed keyword, with its column offset inside the line.
bool keyword(const Line& l, const std::string& kw, std::string& rest, std::size_t& offset) {
  if (l.text.size() <= kw.size() || l.text.compare(0, kw.size(), kw) != 0 ||
      !std::isspace(static_cast<unsigned char>(l.text[kw.size()]))) {
    return false;
  }
  offset = kw.size();
  while (offset < l.text.size() && std::isspace(static_cast<unsigned char>(l.text[offset]))) ++offset;
  rest = l.text.substr(offset);
  return true;
}

MPoly read_poly(const Line& l, const std::string& expr, std::size_t offset, const Variety& V) {
  check_identifiers(l, expr, offset, V.registry(), V.model(), V.n());
  return parse_expr<MPoly>(l, expr, offset, [&](std::string_view e) { return parse_polynomial(e, V.registry(), l.number); });
}

RatFunc read_ratfunc(const Line& l, const std::string& expr, std::size_t offset, const Variety& F) {
  check_identifiers(l, expr, offset, F.registry(), F.model(), F.n());
  return parse_expr<RatFunc>(l, expr, offset, [&](std::string_view e) { return parse_ratfunc(e, F.registry(), l.number); });
}

Variety variety_from_lines(const std::vector<Line>& lines, std::size_t start, std::size_t end) {
  std::vector<Line> sub(lines.begin() + long(start), lines.begin() + long(end));
  if (sub.empty() || sub[0].text != "variety") {
    if (sub.empty()) throw ParseError(1, 1, "empty variety file");
    fail(sub[0], "expected 'variety'");
  }
  Header h = read_header(sub, 1, {"model", "n", "base", "constants", "assume_prime"});
  Model model = read_model(h, sub[0]);
  std::size_t n = read_n(h, sub[0]);
  BaseField base = read_base(h, sub[0]);
  bool prime = true;
  if (auto it = h.values.find("assume_prime"); it != h.values.end()) prime = parse_bool(it->second.second, it->second.first);
  Variety V(model, n, base, prime);
  std::vector<MPoly> gens;
  for (const Line& l : h.body) {
    std::string rest;
    std::size_t off = 0;
    if (!keyword(l, "poly", rest, off)) fail(l, "expected 'poly <expr>'");
    gens.push_back(read_poly(l, rest, off, V));
  }
  V.set_generators(std::move(gens));
  return V;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

Variety parse_variety(std::string_view text) {
  auto lines = split_lines(text);
  return variety_from_lines(lines, 0, lines.size());
}

std::string serialize_variety(const Variety& V) {
  std::ostringstream out;
  out << "variety\n";
  out << "model=" << model_name(V.model()) << "\n";
  out << "n=" << V.n() << "\n";
  out << "base=" << V.base().descriptor() << "\n";
  if (!V.base().constants.empty()) out << "constants=" << join(V.base().constants) << "\n";
  out << "assume_prime=" << bool_text(V.assume_prime()) << "\n";
  for (const MPoly& g : V.generators()) out << "poly " << g.to_string() << "\n";
  return out.str();
}

DerivationWitness parse_witness(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty witness file");
  if (lines[0].text != "witness") fail(lines[0], "expected 'witness'");
  Header h = read_header(lines, 1, {"model", "n", "base", "constants", "derivations"});
  DerivationWitness w;
  w.model = read_model(h, lines[0]);
  w.n = read_n(h, lines[0]);
  BaseField base = read_base(h, lines[0]);
  const auto& m = require(h, "derivations", lines[0]);
  std::size_t nder = parse_count(m.second, m.first);
  Variety F(w.model == Model::j ? Model::J : w.model, w.n, base, true);
  const RatFunc zero = RatFunc::constant(F.registry(), 0);
  w.delta.assign(nder, std::vector<RatFunc>(F.ncoords(), zero));
  w.lambda.assign(nder, zero);
  std::vector<MPoly> rel;
  auto derivation_index = [&](const Line& l, const std::string& tok) {
    std::size_t k = parse_count(l, tok);
    if (k < 1 || k > nder) fail(l, "derivation index " + tok + " outside 1.." + std::to_string(nder));
    return k - 1;
  };
  std::vector<Line> pending;  // delta, lambda and const lines need the field relations first
  for (const Line& l : h.body) {
    std::string rest;
    std::size_t off = 0;
    if (keyword(l, "field_poly", rest, off)) {
      rel.push_back(read_poly(l, rest, off, F));
    } else {
      pending.push_back(l);
    }
  }
  F.set_generators(rel);
  w.field = F;
  for (const Line& l : pending) {
    std::string rest;
    std::size_t off = 0;
    if (keyword(l, "const", rest, off)) {
      w.constants.push_back(read_ratfunc(l, rest, off, F));
    } else if (keyword(l, "delta", rest, off) || keyword(l, "lambda", rest, off)) {
      bool is_delta = l.text.compare(0, 5, "delta") == 0;
      auto eq = rest.find('=');
      if (eq == std::string::npos) fail(l, "expected '='", off + rest.size());
      std::istringstream head(rest.substr(0, eq));
      std::string ktok, coord, extra;
      head >> ktok;
      if (is_delta) head >> coord;
      if (ktok.empty() || (is_delta && coord.empty()) || (head >> extra)) fail(l, "malformed derivation line");
      std::size_t k = derivation_index(l, ktok);
      std::size_t expr_off = off + eq + 1;
      while (expr_off < l.text.size() && std::isspace(static_cast<unsigned char>(l.text[expr_off]))) ++expr_off;
      RatFunc value = read_ratfunc(l, l.text.substr(expr_off), expr_off, F);
      if (is_delta) {
        auto idx = F.registry()->find(coord);
        if (!idx || *idx >= F.ncoords()) fail(l, "unknown coordinate '" + coord + "'", off);
        w.delta[k][*idx] = value;
      } else {
        w.lambda[k] = value;
      }
    } else if (keyword(l, "flag", rest, off)) {
      auto eq = rest.find('=');
      if (eq == std::string::npos) fail(l, "expected 'flag <name>=<bool>'");
      std::string name = trim(rest.substr(0, eq)), v = trim(rest.substr(eq + 1));
      if (name == "verified") {
        w.verified = parse_bool(l, v);
      } else if (name == "all_nonconstant") {
        w.all_nonconstant = parse_bool(l, v);
      } else {
        fail(l, "unknown flag '" + name + "'", off);
      }
    } else {
      fail(l, "unexpected line");
    }
  }
  return w;
}

std::string serialize_witness(const DerivationWitness& w) {
  std::ostringstream out;
  const Variety& F = w.field;
  out << "witness\n";
  out << "model=" << model_name(w.model) << "\n";
  out << "n=" << w.n << "\n";
  out << "base=" << F.base().descriptor() << "\n";
  if (!F.base().constants.empty()) out << "constants=" << join(F.base().constants) << "\n";
  out << "derivations=" << w.derivations() << "\n";
  for (const MPoly& g : F.generators()) out << "field_poly " << g.to_string() << "\n";
  for (const RatFunc& c : w.constants) out << "const " << c.to_string() << "\n";
  for (std::size_t k = 0; k < w.derivations(); ++k) {
    for (std::size_t c = 0; c < F.ncoords(); ++c) {
      out << "delta " << k + 1 << " " << F.registry()->name(c) << " = " << w.delta[k][c].to_string() << "\n";
    }
    out << "lambda " << k + 1 << " = " << w.lambda[k].to_string() << "\n";
  }
  out << "flag verified=" << bool_text(w.verified) << "\n";
  out << "flag all_nonconstant=" << bool_text(w.all_nonconstant) << "\n";
  return out.str();
}

ReductionCertificate parse_certificate(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty certificate file");
  if (lines[0].text != "certificate") fail(lines[0], "expected 'certificate'");
  ReductionCertificate c;
  bool have_kind = false, have_source = false, have_target = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    std::string rest;
    std::size_t off = 0;
    if (keyword(l, "begin", rest, off)) {
      std::size_t j = i + 1;
      while (j < lines.size() && lines[j].text != "end") ++j;
      if (j == lines.size()) fail(l, "section '" + rest + "' is not closed");
      Variety V = variety_from_lines(lines, i + 1, j);
      if (rest == "source") {
        c.source = V;
        have_source = true;
      } else if (rest == "target") {
        c.target = V;
        have_target = true;
      } else if (rest == "auxiliary") {
        c.auxiliary = V;
      } else {
        fail(l, "unknown section '" + rest + "'", off);
      }
      i = j;
      continue;
    }
    if (keyword(l, "note", rest, off)) {
      c.notes.push_back(rest);
      continue;
    }
    auto eq = l.text.find('=');
    if (eq == std::string::npos) fail(l, "unexpected line");
    std::string key = trim(l.text.substr(0, eq)), v = trim(l.text.substr(eq + 1));
    if (key == "kind") {
      try {
        c.kind = parse_reduction_kind(v);
      } catch (const Error& e) {
        fail(l, e.what());
      }
      have_kind = true;
    } else if (key == "block") {
      c.block = parse_count(l, v);
    } else if (key == "partner") {
      c.partner = parse_count(l, v);
    } else if (key == "level") {
      c.level = unsigned(parse_count(l, v));
    } else if (key == "point") {
      std::stringstream ss(v);
      std::string item;
      std::size_t s = 0;
      while (std::getline(ss, item, ',')) {
        if (s == 4) fail(l, "fiber point needs 4 entries");
        try {
          c.point[s++] = parse_rational(trim(item));
        } catch (const Error& e) {
          fail(l, e.what());
        }
      }
      if (s != 4) fail(l, "fiber point needs 4 entries");
    } else if (key == "constants") {
      auto names = split_names(l, v);
      if (names.size() != 4) fail(l, "expected 4 constant names");
      std::copy(names.begin(), names.end(), c.constants.begin());
    } else if (key == "source_broad") {
      c.source_broad = parse_bool(l, v);
    } else if (key == "target_broad") {
      c.target_broad = parse_bool(l, v);
    } else {
      fail(l, "unknown key '" + key + "'");
    }
  }
  if (!have_kind || !have_source || !have_target) {
    throw ParseError(lines.back().number, 1, "certificate needs kind, source and target");
  }
  return c;
}

std::string serialize_certificate(const ReductionCertificate& c) {
  std::ostringstream out;
  out << "certificate\n";
  out << "kind=" << reduction_kind_name(c.kind) << "\n";
  if (c.kind != ReductionKind::JLift) out << "block=" << c.block << "\n";
  if (c.kind == ReductionKind::ConstantFiber) {
    out << "point=" << to_string(c.point[0]) << "," << to_string(c.point[1]) << "," << to_string(c.point[2]) << ","
        << to_string(c.point[3]) << "\n";
  }
  if (c.kind == ReductionKind::MobiusModular) {
    out << "partner=" << c.partner << "\n";
    out << "level=" << c.level << "\n";
    out << "constants=" << join({c.constants.begin(), c.constants.end()}) << "\n";
  }
  out << "source_broad=" << bool_text(c.source_broad) << "\n";
  out << "target_broad=" << bool_text(c.target_broad) << "\n";
  for (const auto& n : c.notes) out << "note " << n << "\n";
  out << "begin source\n" << serialize_variety(c.source) << "end\n";
  out << "begin target\n" << serialize_variety(c.target) << "end\n";
  if (c.auxiliary) out << "begin auxiliary\n" << serialize_variety(*c.auxiliary) << "end\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Kind::InvalidInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ecj
