// Flat "key = value" run configuration with dotted sections.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "isotrack/scenario.hpp"
#include "isotrack/sim.hpp"

namespace isotrack {

/// Parsed configuration. Reads are tracked so that unknown keys can be
/// reported; missing required keys are collected and reported together.
class ConfigMap {
 public:
  static ConfigMap parse(std::istream& in);
  static ConfigMap parse_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string str(const std::string& key) const;
  std::string str_or(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::int64_t integer_or(const std::string& key, std::int64_t fallback) const;
  bool flag_or(const std::string& key, bool fallback) const;

  /// Throws ConfigError listing every absent key in one message.
  void require(const std::vector<std::string>& keys) const;
  /// Throws ConfigError listing keys that were never read.
  void reject_unknown() const;

 private:
  std::map<std::string, std::string> kv_;
  mutable std::set<std::string> used_;
};

struct RunSetup {
  Scenario scenario;
  SimOptions sim;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
};

/// Builds scenario and simulation options from a parsed configuration.
/// seed_override, when set, replaces the config seed before any seeded
/// choices (e.g. a random initial heading) are drawn.
RunSetup make_run_setup(const ConfigMap& cfg,
                        std::optional<std::uint64_t> seed_override = {});

RunSetup load_run_setup(const std::string& path,
                        std::optional<std::uint64_t> seed_override = {});

}  // namespace isotrack
