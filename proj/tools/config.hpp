#pragma once

// INI run configuration. Values are read lazily with defaults; every value read
// is echoed into the run metadata.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "json.hpp"

namespace cli {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class RunConfig {
 public:
  RunConfig() = default;
  // throws ConfigError; syntax errors carry the file line number
  static RunConfig load(const std::string& path);
  static RunConfig parse(const std::string& text, const std::string& name = "<string>");

  double real(const std::string& section, const std::string& key, double def);
  std::int64_t integer(const std::string& section, const std::string& key, std::int64_t def);
  std::string text(const std::string& section, const std::string& key, const std::string& def);
  std::vector<double> reals(const std::string& section, const std::string& key, const std::vector<double>& def);
  bool has(const std::string& section, const std::string& key) const;

  const json& echo() const { return echo_; }
  const std::string& source() const { return source_; }

 private:
  const std::string* raw(const std::string& section, const std::string& key) const;
  void validate_keys() const;

  boost::property_tree::ptree tree_;
  std::string source_;
  json echo_ = json::object();
};

double parse_real(const std::string& s, const std::string& what);
json real_json(double v);

}  // namespace cli
