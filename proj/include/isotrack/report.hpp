// Structured pass/fail reports for the feasibility checks.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace isotrack {

/// One evaluated constraint. For sense 'upper' the requirement is
/// value < bound (or <= when not strict); for 'lower' it is value > bound.
struct Margin {
  std::string constraint;  // names the inequality this margin instantiates
  double value = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // >= 0 (or > 0 when strict) iff the constraint holds
  bool strict = false;

  bool passes() const { return strict ? slack > 0.0 : slack >= 0.0; }
};

struct FeasibilityReport {
  bool satisfied = true;
  std::vector<Margin> margins;
  std::vector<std::pair<std::string, double>> derived;
  std::vector<std::string> notes;

  void add_upper(std::string name, double value, double bound, bool strict);
  void add_lower(std::string name, double value, double bound, bool strict);
  void set_derived(std::string name, double value);
  const Margin* find(const std::string& name) const;
  double derived_value(const std::string& name) const;

  /// Merge another report's margins/derived/notes, prefixing its keys.
  void absorb(const FeasibilityReport& other, const std::string& prefix = "");
};

/// Plain text: one "key  value  bound  slack  PASS/FAIL" line per margin,
/// then the derived quantities and notes.
std::string to_text(const FeasibilityReport& report);

/// JSON object with margins, derived values and notes.
std::string to_json(const FeasibilityReport& report);

}  // namespace isotrack
