#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace wreathord {

enum class Status { Pass, Fail, Unknown };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

/// One verified property. `witness` holds whatever data explains the status: the failing
/// coordinate and both values, the scanned bound of an undecided verdict, or a found example.
struct CheckRecord {
  std::string name;
  Status status = Status::Pass;
  std::uint64_t samples = 0;
  nlohmann::ordered_json witness = nlohmann::ordered_json::object();
};

/// Result of a verification suite. Records are kept sorted by name so the output does not
/// depend on the order in which checks ran.
class Report {
 public:
  static constexpr int schema_version = 1;

  Report() = default;
  Report(std::string suite, std::uint64_t seed, long budget) : suite_(std::move(suite)), seed_(seed), budget_(budget) {}

  void add(CheckRecord r) {
    auto it = std::lower_bound(checks_.begin(), checks_.end(), r.name,
                               [](const CheckRecord& c, const std::string& n) { return c.name < n; });
    checks_.insert(it, std::move(r));
  }

  void add(std::string name, bool ok, std::uint64_t samples, nlohmann::ordered_json witness = nlohmann::ordered_json::object()) {
    add(CheckRecord{std::move(name), ok ? Status::Pass : Status::Fail, samples, std::move(witness)});
  }

  const std::string& suite() const { return suite_; }
  std::uint64_t seed() const { return seed_; }
  long budget() const { return budget_; }
  const std::vector<CheckRecord>& checks() const { return checks_; }

  std::size_t count(Status s) const {
    return static_cast<std::size_t>(std::count_if(checks_.begin(), checks_.end(), [s](const auto& c) { return c.status == s; }));
  }
  bool passed() const { return count(Status::Pass) == checks_.size(); }

  const CheckRecord* find(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }

  std::string summary() const {
    if (passed()) return "ok: " + std::to_string(checks_.size()) + " checks";
    return "failed: " + std::to_string(count(Status::Fail)) + " failed, " + std::to_string(count(Status::Unknown)) +
           " unknown, of " + std::to_string(checks_.size()) + " checks";
  }

  nlohmann::ordered_json json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = schema_version;
    j["suite"] = suite_;
    j["seed"] = seed_;
    j["budget"] = budget_;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks_) {
      nlohmann::ordered_json cj;
      cj["name"] = c.name;
      cj["status"] = to_string(c.status);
      cj["samples"] = c.samples;
      cj["witness"] = c.witness;
      arr.push_back(std::move(cj));
    }
    j["checks"] = std::move(arr);
    j["summary"] = summary();
    return j;
  }

  std::string text() const {
    std::string out = "suite " + suite_ + " (seed " + std::to_string(seed_) + ", budget " + std::to_string(budget_) + ")\n";
    for (const auto& c : checks_) {
      std::string status = to_string(c.status);
      std::transform(status.begin(), status.end(), status.begin(), ::toupper);
      out += status + "  " + c.name + "  samples=" + std::to_string(c.samples);
      if (!c.witness.empty()) out += "  " + c.witness.dump();
      out += "\n";
    }
    out += summary() + "\n";
    return out;
  }

 private:
  std::string suite_;
  std::uint64_t seed_ = 0;
  long budget_ = 0;
  std::vector<CheckRecord> checks_;
};

}  // namespace wreathord
