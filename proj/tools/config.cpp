#include "config.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>

namespace cli {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"run", {"out", "seed", "threads"}},
      {"params", {"g", "kappa", "depth"}},
      {"resonance", {"max_j", "tol", "exclude_tol"}},
      {"wilton", {"j"}},
      {"coeffs", {"max_j", "kind"}},
      {"verify",
       {"lemma_max_j", "oracle_max_j", "oracle_tol", "bnf_max_j", "homological_instances", "homological_keys",
        "homological_max_index", "homological_tol", "bracket_tol", "table"}},
      {"bnf", {"max_j"}},
      {"flow",
       {"dt", "t_final", "scheme", "record_every", "sobolev_s", "low_cutoff", "backward", "t_start",
        "fixed_point_tol", "max_iterations", "modes", "init", "amplitude", "ratio", "phase", "dump_modes"}},
      {"ww",
       {"m", "dno_order", "dt", "t_final", "dealias", "filter_strength", "record_every", "sobolev_s",
        "norm_ceiling", "stop_norm", "mode_count", "eps", "init", "ratio", "phase"}},
      {"lifespan", {"epsilons", "sobolev_s", "threshold_factor", "t_max_scale"}},
  };
  return s;
}

}  // namespace

double parse_real(const std::string& s0, const std::string& what) {
  const std::string s = boost::algorithm::trim_copy(s0);
  if (s == "inf" || s == "infinity" || s == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (s.empty() || r.ec != std::errc() || r.ptr != end || std::isnan(v))
    throw ConfigError(what + ": not a number: '" + s0 + "'");
  return v;
}

json real_json(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

RunConfig RunConfig::load(const std::string& path) {
  RunConfig c;
  try {
    boost::property_tree::ini_parser::read_ini(path, c.tree_);
  } catch (const boost::property_tree::ini_parser_error& e) {
    std::ostringstream os;
    os << path;
    if (e.line() > 0) os << ":" << e.line();
    os << ": " << e.message();
    throw ConfigError(os.str());
  }
  c.source_ = path;
  c.validate_keys();
  return c;
}

RunConfig RunConfig::parse(const std::string& text, const std::string& name) {
  RunConfig c;
  std::istringstream is(text);
  try {
    boost::property_tree::ini_parser::read_ini(is, c.tree_);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(name + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  c.source_ = name;
  c.validate_keys();
  return c;
}

void RunConfig::validate_keys() const {
  for (const auto& [section, body] : tree_) {
    if (!body.data().empty() && body.empty())
      throw ConfigError(source_ + ": key '" + section + "' outside a section");
    const auto it = schema().find(section);
    if (it == schema().end()) throw ConfigError(source_ + ": unknown section [" + section + "]");
    for (const auto& [key, v] : body)
      if (!it->second.count(key)) throw ConfigError(source_ + ": unknown key '" + key + "' in [" + section + "]");
  }
}

const std::string* RunConfig::raw(const std::string& section, const std::string& key) const {
  const auto s = tree_.find(section);
  if (s == tree_.not_found()) return nullptr;
  const auto k = s->second.find(key);
  if (k == s->second.not_found()) return nullptr;
  return &k->second.data();
}

bool RunConfig::has(const std::string& section, const std::string& key) const { return raw(section, key) != nullptr; }

double RunConfig::real(const std::string& section, const std::string& key, double def) {
  const auto* r = raw(section, key);
  const double v = r ? parse_real(*r, section + "." + key) : def;
  echo_[section][key] = real_json(v);
  return v;
}

std::int64_t RunConfig::integer(const std::string& section, const std::string& key, std::int64_t def) {
  std::int64_t v = def;
  if (const auto* r = raw(section, key)) {
    const std::string s = boost::algorithm::trim_copy(*r);
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (s.empty() || res.ec != std::errc() || res.ptr != end)
      throw ConfigError(section + "." + key + ": not an integer: '" + *r + "'");
  }
  echo_[section][key] = v;
  return v;
}

std::string RunConfig::text(const std::string& section, const std::string& key, const std::string& def) {
  const auto* r = raw(section, key);
  const std::string v = r ? boost::algorithm::trim_copy(*r) : def;
  echo_[section][key] = v;
  return v;
}

std::vector<double> RunConfig::reals(const std::string& section, const std::string& key,
                                     const std::vector<double>& def) {
  std::vector<double> v = def;
  if (const auto* r = raw(section, key)) {
    v.clear();
    std::istringstream is(*r);
    std::string item;
    while (std::getline(is, item, ',')) v.push_back(parse_real(item, section + "." + key));
  }
  json arr = json::array();
  for (double x : v) arr.push_back(real_json(x));
  echo_[section][key] = arr;
  return v;
}

}  // namespace cli
