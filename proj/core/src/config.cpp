#include "tailwave/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tailwave/errors.hpp"
#include "tailwave/io.hpp"

namespace tailwave {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& key, const std::string& text) {
  if (text.empty()) throw ConfigError("empty value for key '" + key + "'");
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + text.size())
    throw ConfigError("key '" + key + "': cannot parse number from '" + text + "'");
  if (!std::isfinite(v))
    throw ConfigError("key '" + key + "': value must be finite");
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss{text};
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  const double r = std::round(v);
  if (v != r) throw ConfigError("key '" + key + "': expected an integer");
  return static_cast<int>(r);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "p", "k", "extra_coeff", "family", "amplitude", "R",
      "epsilon", "a", "dr", "cfl", "t_max", "output_dir",
      "nonlinear", "probe_r", "keep_every", "conv_probe_t", "conv_probe_r"};
  return keys;
}

}  // namespace

RunConfig parse_config_text(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::size_t lineno = 0;
  std::stringstream ss{std::string(text)};
  std::string line;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (!known_keys().count(key)) throw ConfigError("unknown config key '" + key + "'");
    if (kv.count(key)) throw ConfigError("duplicate config key '" + key + "'");
    kv[key] = value;
  }

  for (const char* required : {"p", "k", "extra_coeff", "family", "amplitude", "R",
                               "epsilon", "a", "dr", "cfl", "t_max", "output_dir"}) {
    if (!kv.count(required))
      throw ConfigError("missing required config key '" + std::string(required) + "'");
  }

  RunConfig cfg;
  cfg.nl.p = parse_double("p", kv["p"]);
  cfg.nl.k = parse_double("k", kv["k"]);
  cfg.nl.extra_coeff = parse_double("extra_coeff", kv["extra_coeff"]);
  cfg.family = kv["family"];
  cfg.amplitude = parse_double("amplitude", kv["amplitude"]);
  cfg.support_radius = parse_double("R", kv["R"]);
  cfg.epsilons = parse_list("epsilon", kv["epsilon"]);
  cfg.a = parse_double("a", kv["a"]);
  cfg.dr = parse_double("dr", kv["dr"]);
  cfg.cfl = parse_double("cfl", kv["cfl"]);
  cfg.t_max = parse_double("t_max", kv["t_max"]);
  cfg.output_dir = kv["output_dir"];

  if (kv.count("nonlinear")) cfg.nonlinear = parse_int("nonlinear", kv["nonlinear"]) != 0;
  if (kv.count("probe_r")) cfg.probe_radii = parse_list("probe_r", kv["probe_r"]);
  if (kv.count("keep_every")) cfg.keep_every = parse_int("keep_every", kv["keep_every"]);
  if (kv.count("conv_probe_t")) cfg.conv_probe_t = parse_double("conv_probe_t", kv["conv_probe_t"]);
  if (kv.count("conv_probe_r")) cfg.conv_probe_r = parse_double("conv_probe_r", kv["conv_probe_r"]);

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::size_t RunConfig::n_cells() const {
  return std::max<std::size_t>(static_cast<std::size_t>(std::llround(r_max() / dr)), 8);
}

std::size_t RunConfig::n_steps() const {
  return static_cast<std::size_t>(std::ceil(t_max / dt() - 1e-9));
}

void RunConfig::validate() const {
  nl.validate();
  if (family != "bump4" && family != "bump4_f" && family != "zero")
    throw ConfigError("family must be one of bump4, bump4_f, zero");
  if (!std::isfinite(amplitude)) throw ConfigError("amplitude must be finite");
  if (!(support_radius > 0.0)) throw ConfigError("R must be positive");
  if (epsilons.empty()) throw ConfigError("epsilon list must be nonempty");
  for (double e : epsilons)
    if (!(e >= 0.0) || !std::isfinite(e)) throw ConfigError("epsilon values must be >= 0");
  const double a_max = nl.p * (nl.p - 1.0) / (nl.p + 1.0);
  if (!(a > 0.0) || !(a < a_max))
    throw ConfigError("a must lie in (0, p(p-1)/(p+1))");
  if (!(dr > 0.0) || dr > support_radius)
    throw ConfigError("dr must satisfy 0 < dr <= R");
  if (!(cfl > 0.0) || cfl > 1.0) throw ConfigError("cfl must lie in (0, 1]");
  if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
  if (output_dir.empty()) throw ConfigError("output_dir must be nonempty");
  if (keep_every < 1) throw ConfigError("keep_every must be >= 1");
  for (double pr : probe_radii)
    if (!(pr >= 0.0) || pr > r_max() - 2.0 * dr)
      throw ConfigError("probe_r values must lie in [0, r_max - 2 dr]");
  if (!(conv_probe_t >= 0.0) || conv_probe_t > t_max)
    throw ConfigError("conv_probe_t must lie in (0, t_max] (0 = auto)");
  if (!(conv_probe_r >= 0.0) || conv_probe_r > r_max() - 2.0 * dr)
    throw ConfigError("conv_probe_r must lie in [0, r_max - 2 dr]");
}

DataProfiles make_data(const RunConfig& cfg) {
  DataProfiles d;
  if (cfg.family == "bump4") {
    d.f = make_profile("zero", 0.0, cfg.support_radius, cfg.dr);
    d.g = make_profile("bump4", cfg.amplitude, cfg.support_radius, cfg.dr);
  } else if (cfg.family == "bump4_f") {
    d.f = make_profile("bump4", cfg.amplitude, cfg.support_radius, cfg.dr);
    d.g = make_profile("zero", 0.0, cfg.support_radius, cfg.dr);
  } else {
    d.f = make_profile("zero", 0.0, cfg.support_radius, cfg.dr);
    d.g = make_profile("zero", 0.0, cfg.support_radius, cfg.dr);
  }
  return d;
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> kv;
  auto num = [&](const char* key, double v) { kv.emplace_back(key, format_g17(v)); };
  num("p", cfg.nl.p);
  num("k", cfg.nl.k);
  num("extra_coeff", cfg.nl.extra_coeff);
  kv.emplace_back("family", cfg.family);
  num("amplitude", cfg.amplitude);
  num("R", cfg.support_radius);
  std::string eps;
  for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
    if (i) eps += ",";
    eps += format_g17(cfg.epsilons[i]);
  }
  kv.emplace_back("epsilon", eps);
  num("a", cfg.a);
  num("dr", cfg.dr);
  num("cfl", cfg.cfl);
  num("t_max", cfg.t_max);
  kv.emplace_back("output_dir", cfg.output_dir);
  kv.emplace_back("nonlinear", cfg.nonlinear ? "1" : "0");
  std::string pr;
  for (std::size_t i = 0; i < cfg.probe_radii.size(); ++i) {
    if (i) pr += ",";
    pr += format_g17(cfg.probe_radii[i]);
  }
  kv.emplace_back("probe_r", pr);
  kv.emplace_back("keep_every", std::to_string(cfg.keep_every));
  num("conv_probe_t", cfg.probe_time());
  num("conv_probe_r", cfg.conv_probe_r);
  return kv;
}

}  // namespace tailwave
