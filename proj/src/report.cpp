#include "isotrack/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

namespace isotrack {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void FeasibilityReport::add_upper(std::string name, double value, double bound,
                                  bool strict) {
  Margin m{std::move(name), value, bound, bound - value, strict};
  satisfied = satisfied && m.passes();
  margins.push_back(std::move(m));
}

void FeasibilityReport::add_lower(std::string name, double value, double bound,
                                  bool strict) {
  Margin m{std::move(name), value, bound, value - bound, strict};
  satisfied = satisfied && m.passes();
  margins.push_back(std::move(m));
}

void FeasibilityReport::set_derived(std::string name, double value) {
  derived.emplace_back(std::move(name), value);
}

const Margin* FeasibilityReport::find(const std::string& name) const {
  for (const Margin& m : margins)
    if (m.constraint == name) return &m;
  return nullptr;
}

double FeasibilityReport::derived_value(const std::string& name) const {
  for (const auto& [k, v] : derived)
    if (k == name) return v;
  return std::numeric_limits<double>::quiet_NaN();
}

void FeasibilityReport::absorb(const FeasibilityReport& other, const std::string& prefix) {
  satisfied = satisfied && other.satisfied;
  const std::string stem =
      !prefix.empty() && prefix.back() == '.' ? prefix.substr(0, prefix.size() - 1) : prefix;
  const auto apply = [&](const std::string& name) {
    return name.rfind(stem, 0) == 0 ? name : prefix + name;
  };
  for (Margin m : other.margins) {
    m.constraint = apply(m.constraint);
    margins.push_back(std::move(m));
  }
  for (const auto& [k, v] : other.derived) derived.emplace_back(apply(k), v);
  for (const std::string& n : other.notes) notes.push_back(prefix.empty() ? n : prefix + n);
}

std::string to_text(const FeasibilityReport& report) {
  std::string out;
  out += report.satisfied ? "feasible: yes\n" : "feasible: no\n";
  for (const Margin& m : report.margins) {
    out += m.constraint;
    out += "  value=" + num(m.value);
    out += "  bound=" + num(m.bound);
    out += "  slack=" + num(m.slack);
    out += m.passes() ? "  PASS" : "  FAIL";
    out += '\n';
  }
  for (const auto& [k, v] : report.derived) out += k + " = " + num(v) + '\n';
  for (const std::string& n : report.notes) out += "note: " + n + '\n';
  return out;
}

std::string to_json(const FeasibilityReport& report) {
  nlohmann::json j;
  j["satisfied"] = report.satisfied;
  j["margins"] = nlohmann::json::array();
  for (const Margin& m : report.margins) {
    nlohmann::json e;
    e["constraint"] = m.constraint;
    e["value"] = std::isfinite(m.value) ? nlohmann::json(m.value) : nlohmann::json(num(m.value));
    e["bound"] = std::isfinite(m.bound) ? nlohmann::json(m.bound) : nlohmann::json(num(m.bound));
    e["slack"] = std::isfinite(m.slack) ? nlohmann::json(m.slack) : nlohmann::json(num(m.slack));
    e["strict"] = m.strict;
    e["pass"] = m.passes();
    j["margins"].push_back(std::move(e));
  }
  j["derived"] = nlohmann::json::object();
  for (const auto& [k, v] : report.derived)
    j["derived"][k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(num(v));
  j["notes"] = report.notes;
  return j.dump(2);
}

}  // namespace isotrack
