#include "aperiodic/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aperiodic/errors.hpp"

namespace aperiodic {

using nlohmann::json;

namespace {

Box parse_box(const json& arr, int dim, const std::string& what) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != 2 * dim)
    throw ConfigError(what + ": box must be a flat [lo..., hi...] array of length " +
                      std::to_string(2 * dim));
  Vec lo(static_cast<std::size_t>(dim)), hi(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    lo[static_cast<std::size_t>(i)] = arr[static_cast<std::size_t>(i)].get<double>();
    hi[static_cast<std::size_t>(i)] = arr[static_cast<std::size_t>(dim + i)].get<double>();
  }
  return Box(std::move(lo), std::move(hi));
}

Vec parse_vec(const json& arr, int dim, const std::string& what) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != dim)
    throw ConfigError(what + ": expected an array of length " + std::to_string(dim));
  Vec v(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = arr[static_cast<std::size_t>(i)].get<double>();
  return v;
}

Matrix fibonacci_basis() {
  const double tau = (1.0 + std::sqrt(5.0)) / 2.0;
  Matrix b(2);
  b.at(0, 0) = 1.0;
  b.at(0, 1) = tau;
  b.at(1, 0) = 1.0;
  b.at(1, 1) = 1.0 - tau;
  return b;
}

}  // namespace

std::uint64_t fnv1a_hash(const std::string& data) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

Cps ScenarioConfig::make_cps() const { return Cps::make(d, m, basis, witness_radius); }

Window ScenarioConfig::make_window() const {
  return Window(m, geometric, point_free, include_points, exclude_points);
}

bool ScenarioConfig::expects_fail(const std::string& criterion) const {
  for (const std::string& name : expected_fail)
    if (name == criterion) return true;
  return false;
}

ScenarioConfig parse_scenario_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  ScenarioConfig cfg;

  const json& cps = j.at("cps");
  if (cps.contains("preset")) {
    cfg.cps_preset = cps["preset"].get<std::string>();
    if (cfg.cps_preset == "fibonacci") {
      cfg.d = 1;
      cfg.m = 1;
      cfg.basis = fibonacci_basis();
    } else {
      throw ConfigError("config: unknown cps preset '" + cfg.cps_preset + "'");
    }
  } else {
    cfg.d = cps.at("d").get<int>();
    cfg.m = cps.at("m").get<int>();
    const json& rows = cps.at("basis");
    const int n = cfg.d + cfg.m;
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      throw ConfigError("config: basis must have d+m rows");
    cfg.basis = Matrix(n);
    for (int r = 0; r < n; ++r) {
      const json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw ConfigError("config: basis row " + std::to_string(r) + " must have d+m entries");
      for (int c = 0; c < n; ++c)
        cfg.basis.at(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  cfg.witness_radius = cps.value("witness_radius", 1000);

  if (j.contains("window")) {
    const json& w = j["window"];
    for (const json& b : w.value("geometric", json::array()))
      cfg.geometric.push_back(parse_box(b, cfg.m, "window.geometric"));
    for (const json& b : w.value("point_free", json::array()))
      cfg.point_free.push_back(parse_box(b, cfg.m, "window.point_free"));
    for (const json& p : w.value("include_points", json::array()))
      cfg.include_points.push_back(parse_vec(p, cfg.m, "window.include_points"));
    for (const json& p : w.value("exclude_points", json::array()))
      cfg.exclude_points.push_back(parse_vec(p, cfg.m, "window.exclude_points"));
  }

  if (j.contains("borel")) {
    const json& b = j["borel"];
    cfg.borel_enabled = b.value("enabled", true);
    const std::string rule = b.value("rule", std::string("bernoulli"));
    if (rule == "bernoulli")
      cfg.gamma_rule.kind = GammaRule::Kind::Bernoulli;
    else if (rule == "every_other")
      cfg.gamma_rule.kind = GammaRule::Kind::EveryOther;
    else if (rule == "keep_all")
      cfg.gamma_rule.kind = GammaRule::Kind::KeepAll;
    else
      throw ConfigError("config: unknown borel rule '" + rule + "'");
    cfg.gamma_rule.p = b.value("p", 0.5);
    cfg.gamma_rule.seed = b.value("seed", std::uint64_t{0});
    cfg.borel_a = b.at("a").get<double>();
    cfg.borel_region = parse_box(b.at("region"), cfg.d, "borel.region");
  }

  if (j.contains("params")) {
    const json& p = j["params"];
    if (p.contains("generic_seed")) {
      cfg.generic_params = true;
      cfg.generic_seed = p["generic_seed"].get<std::uint64_t>();
    } else {
      cfg.s = parse_vec(p.at("s"), cfg.d, "params.s");
      cfg.t = parse_vec(p.at("t"), cfg.m, "params.t");
    }
  } else {
    cfg.s = Vec(static_cast<std::size_t>(cfg.d), 0.0);
    cfg.t = Vec(static_cast<std::size_t>(cfg.m), 0.0);
  }

  cfg.radii = j.value("radii", std::vector<double>{100.0, 1000.0, 10000.0});
  for (std::size_t i = 1; i < cfg.radii.size(); ++i)
    if (cfg.radii[i] <= cfg.radii[i - 1])
      throw ConfigError("config: radii must be strictly increasing");

  if (j.contains("autocorr"))
    cfg.autocorr_max_range = j["autocorr"].value("max_range", 10.0);
  if (j.contains("diffraction")) {
    const json& dd = j["diffraction"];
    cfg.k_max = dd.value("k_max", 5.0);
    cfg.diffraction_threshold = dd.value("threshold", 1e-4);
    cfg.peak_budget = dd.value("peak_budget", std::size_t{100000});
    cfg.fb_peak_count = dd.value("fb_peak_count", 5);
    cfg.nondual_count = dd.value("nondual_count", 5);
    cfg.nondual_seed = dd.value("nondual_seed", std::uint64_t{1});
  }
  if (j.contains("tolerances")) {
    const json& tl = j["tolerances"];
    cfg.tol_density = tl.value("density", 1e-2);
    cfg.tol_autocorr = tl.value("autocorr", 5e-3);
    cfg.tol_intensity = tl.value("intensity", 2e-2);
    cfg.tol_nondual = tl.value("nondual", 1e-2);
    cfg.tol_birkhoff = tl.value("birkhoff", 2e-2);
  }
  if (j.contains("torus")) {
    const json& t = j["torus"];
    cfg.torus_draws = t.value("draws", 20);
    cfg.torus_seed = t.value("seed", std::uint64_t{5});
    cfg.torus_radius = t.value("radius", 1000.0);
  }
  cfg.enumeration_budget = j.value("budget", Cps::kDefaultBudget);
  cfg.expected_fail = j.value("expected_fail", std::vector<std::string>{});
  cfg.output_dir = j.value("output_dir", std::string("out"));

  cfg.canonical = j.dump();
  std::ostringstream hash;
  hash << std::hex << fnv1a_hash(cfg.canonical);
  cfg.config_hash = hash.str();
  return cfg;
}

// ---------------------------------------------------------------------------
// TOML subset: [table] / [a.b] headers, key = value lines, strings, booleans,
// numbers, and (nested, possibly multi-line) arrays. Enough for the scenario
// schema; anything fancier should just use JSON.
namespace {

struct TomlCursor {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
  }
  bool eof() const { return i >= s.size(); }
};

json parse_toml_value(TomlCursor& cur);

json parse_toml_array(TomlCursor& cur) {
  json arr = json::array();
  ++cur.i;  // '['
  for (;;) {
    cur.skip_ws();
    if (cur.eof()) throw ConfigError("toml: unterminated array");
    if (cur.s[cur.i] == ']') { ++cur.i; break; }
    arr.push_back(parse_toml_value(cur));
    cur.skip_ws();
    if (!cur.eof() && cur.s[cur.i] == ',') ++cur.i;
  }
  return arr;
}

json parse_toml_value(TomlCursor& cur) {
  cur.skip_ws();
  if (cur.eof()) throw ConfigError("toml: missing value");
  const char c = cur.s[cur.i];
  if (c == '[') return parse_toml_array(cur);
  if (c == '"') {
    std::string out;
    for (++cur.i; cur.i < cur.s.size() && cur.s[cur.i] != '"'; ++cur.i) out += cur.s[cur.i];
    if (cur.eof()) throw ConfigError("toml: unterminated string");
    ++cur.i;
    return out;
  }
  std::string token;
  while (!cur.eof() && std::string("]},\n\r#").find(cur.s[cur.i]) == std::string::npos)
    token += cur.s[cur.i++];
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t')) token.pop_back();
  if (token == "true") return true;
  if (token == "false") return false;
  if (token.empty()) throw ConfigError("toml: empty value");
  if (token.find_first_of(".eE") == std::string::npos &&
      token.find_first_not_of("+-0123456789_") == std::string::npos) {
    std::string digits;
    for (char ch : token)
      if (ch != '_') digits += ch;
    return static_cast<std::int64_t>(std::stoll(digits));
  }
  try {
    return std::stod(token);
  } catch (const std::exception&) {
    throw ConfigError("toml: cannot parse value '" + token + "'");
  }
}

}  // namespace

std::string toml_to_json(const std::string& text) {
  json root = json::object();
  json* table = &root;

  std::istringstream in(text);
  std::string raw;
  std::string pending;
  while (std::getline(in, raw)) {
    // strip comments outside strings
    std::string line;
    bool in_str = false;
    for (char c : raw) {
      if (c == '"') in_str = !in_str;
      if (c == '#' && !in_str) break;
      line += c;
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos && pending.empty()) continue;
    if (!pending.empty()) {
      pending += "\n" + line;
      int depth = 0;
      bool s = false;
      for (char c : pending) {
        if (c == '"') s = !s;
        if (s) continue;
        if (c == '[') ++depth;
        if (c == ']') --depth;
      }
      if (depth > 0) continue;
      line = pending;
      pending.clear();
    } else {
      line = line.substr(first);
    }

    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string::npos) throw ConfigError("toml: bad table header");
      std::string path = line.substr(1, close - 1);
      table = &root;
      std::size_t pos = 0;
      while (pos <= path.size()) {
        const auto dot = path.find('.', pos);
        const std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
        table = &(*table)[key];
        if (dot == std::string::npos) break;
        pos = dot + 1;
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("toml: expected key = value in '" + line + "'");
    std::string key = line.substr(0, eq);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    std::string value = line.substr(eq + 1);

    // keep accumulating when an array spans lines
    int depth = 0;
    bool s = false;
    for (char c : value) {
      if (c == '"') s = !s;
      if (s) continue;
      if (c == '[') ++depth;
      if (c == ']') --depth;
    }
    if (depth > 0) {
      pending = line;
      continue;
    }

    TomlCursor cur{value, 0};
    (*table)[key] = parse_toml_value(cur);
  }
  if (!pending.empty()) throw ConfigError("toml: unterminated multi-line array");
  return root.dump();
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();

  bool is_toml = path.size() >= 5 && path.substr(path.size() - 5) == ".toml";
  if (!is_toml) {
    // sniff: JSON starts with '{'
    const auto first = text.find_first_not_of(" \t\r\n");
    is_toml = first == std::string::npos || text[first] != '{';
  }
  return parse_scenario_json(is_toml ? toml_to_json(text) : text);
}

}  // namespace aperiodic
