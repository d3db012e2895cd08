#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cchom/numeric.hpp"

namespace cchom {

using Json = nlohmann::ordered_json;

// One verified claim: the expected value, the computed value, and a
// provenance string naming the table, oracle, or derivation the expected
// value comes from.
struct CheckRecord {
  std::string name;
  std::string expected;
  std::string computed;
  std::string provenance;
  bool ok = true;
};

// Result of one command or suite.  Status is three-valued:
//   pass    — every check passed, nothing was weakened;
//   partial — every performed check passed, but some claim was deliberately
//             weakened (sampled substitute, resource-gated skip, identity
//             not claimed beyond the witnessed depth), each with a note;
//   fail    — at least one check failed.
// Exit-code policy: 0 for pass/partial (no check failed), 1 for fail.
struct Report {
  std::string command;
  std::vector<CheckRecord> checks;
  std::vector<std::string> notes;  // reasons a clean run is only partial
  Json payload = Json::object();   // command-specific fields, insertion order
  bool has_seed = false;
  std::uint64_t seed = 0;

  bool all_ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  std::string status() const {
    if (!all_ok()) return "fail";
    return notes.empty() ? "pass" : "partial";
  }
  int exit_code() const { return all_ok() ? 0 : 1; }

  void check(std::string name, std::string expected, std::string computed,
             std::string provenance) {
    bool ok = expected == computed;
    checks.push_back({std::move(name), std::move(expected), std::move(computed),
                      std::move(provenance), ok});
  }
  // for claims whose pass condition is not string equality (inequalities,
  // residual checks): the caller supplies the verdict
  void check_ok(std::string name, bool ok, std::string expected, std::string computed,
                std::string provenance) {
    checks.push_back({std::move(name), std::move(expected), std::move(computed),
                      std::move(provenance), ok});
  }
  void note_partial(std::string why) { notes.push_back(std::move(why)); }

  void use_seed(std::uint64_t s) {
    has_seed = true;
    seed = s;
  }

  // append another report's checks and notes, prefixing their names
  void merge(const Report& sub) {
    for (const auto& c : sub.checks) {
      CheckRecord r = c;
      r.name = sub.command + ": " + r.name;
      checks.push_back(std::move(r));
    }
    for (const auto& n : sub.notes) notes.push_back(sub.command + ": " + n);
    if (sub.has_seed) use_seed(sub.seed);
  }

  long long failed_count() const {
    long long f = 0;
    for (const auto& c : checks)
      if (!c.ok) ++f;
    return f;
  }

  Json to_json(double timing_ms = -1.0) const {
    Json j;
    j["command"] = command;
    j["status"] = status();
    if (has_seed) j["seed"] = seed;
    for (const auto& [k, v] : payload.items()) j[k] = v;
    if (!notes.empty()) j["partial"] = notes;
    Json cs = Json::array();
    for (const auto& c : checks) {
      Json e;
      e["name"] = c.name;
      e["expected"] = c.expected;
      e["computed"] = c.computed;
      e["provenance"] = c.provenance;
      e["ok"] = c.ok;
      cs.push_back(std::move(e));
    }
    j["checks"] = std::move(cs);
    j["summary"] = {{"checks", (long long)checks.size()}, {"failed", failed_count()}};
    if (timing_ms >= 0) j["timing_ms"] = timing_ms;
    return j;
  }

  // human table mode: a formatting layer over the same record set
  std::string human(double timing_ms = -1.0) const {
    std::string s = command + ": " + status() + "\n";
    for (const auto& [k, v] : payload.items())
      s += "  " + k + " = " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    for (const auto& n : notes) s += "  (partial) " + n + "\n";
    for (const auto& c : checks) {
      s += std::string("  [") + (c.ok ? "ok" : "FAIL") + "] " + c.name;
      if (c.ok && c.expected == c.computed) {
        s += " = " + c.computed;
      } else {
        s += ": expected " + c.expected + ", computed " + c.computed;
      }
      s += "   (" + c.provenance + ")\n";
    }
    s += "  " + std::to_string(checks.size()) + " checks, " +
         std::to_string(failed_count()) + " failed";
    if (has_seed) s += ", seed " + std::to_string(seed);
    if (timing_ms >= 0) s += ", " + std::to_string(timing_ms) + " ms";
    s += "\n";
    return s;
  }
};

}  // namespace cchom
