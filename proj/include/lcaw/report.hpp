#pragma once

#include <string>
#include <vector>

namespace lcaw {

/** How a condition was established. */
enum class Provenance { exhaustive, sampled, structural };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::exhaustive: return "exhaustive";
    case Provenance::sampled: return "sampled";
    case Provenance::structural: return "structural";
  }
  return "?";
}

/** One checked condition; failures always carry a concrete witness tuple. */
struct ConditionResult {
  std::string name;
  bool passed = false;
  Provenance provenance = Provenance::exhaustive;
  std::vector<std::string> witness;  // element labels, first in enumeration order
  std::string note;
};

struct ConditionReport {
  std::vector<ConditionResult> results;

  bool all_passed() const {
    for (const auto& r : results)
      if (!r.passed) return false;
    return true;
  }

  const ConditionResult* find(const std::string& name) const {
    for (const auto& r : results)
      if (r.name == name) return &r;
    return nullptr;
  }

  bool passed(const std::string& name) const {
    const auto* r = find(name);
    return r && r->passed;
  }

  void add(ConditionResult r) { results.push_back(std::move(r)); }

  void merge(const ConditionReport& o) {
    for (const auto& r : o.results) results.push_back(r);
  }

  std::string summary() const {
    std::string out;
    for (const auto& r : results) {
      out += r.name;
      out += r.passed ? ": pass" : ": FAIL";
      out += " (";
      out += to_string(r.provenance);
      out += ")";
      if (!r.witness.empty()) {
        out += " witness=(";
        for (size_t i = 0; i < r.witness.size(); ++i) {
          if (i) out += ", ";
          out += r.witness[i];
        }
        out += ")";
      }
      if (!r.note.empty()) out += " -- " + r.note;
      out += "\n";
    }
    return out;
  }
};

}  // namespace lcaw
