#pragma once

#include <string>
#include <vector>

namespace kgv {

enum class Status { pass, fail, untested };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "untested";
  }
}

// One verification record. `witness` carries the concrete counterexample for
// failures, or the reason a check could not run for untested entries.
struct CheckResult {
  std::string id;
  Status status = Status::untested;
  std::string witness;
};

struct Report {
  std::string suite;
  std::vector<CheckResult> checks;

  void add(std::string id, Status st, std::string witness = "") {
    checks.push_back(CheckResult{std::move(id), st, std::move(witness)});
  }
  void pass(std::string id) { add(std::move(id), Status::pass); }
  void fail(std::string id, std::string witness) {
    add(std::move(id), Status::fail, std::move(witness));
  }
  void untested(std::string id, std::string why) {
    add(std::move(id), Status::untested, std::move(why));
  }

  bool any_fail() const {
    for (const auto& c : checks)
      if (c.status == Status::fail) return true;
    return false;
  }
  bool any_untested() const {
    for (const auto& c : checks)
      if (c.status == Status::untested) return true;
    return false;
  }
  bool all_pass() const { return !checks.empty() && !any_fail() && !any_untested(); }

  // First failure, for terse callers.
  const CheckResult* first_fail() const {
    for (const auto& c : checks)
      if (c.status == Status::fail) return &c;
    return nullptr;
  }

  void merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

}  // namespace kgv
