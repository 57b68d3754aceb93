#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace psh {

enum class Status { pass, fail, skip };

std::string to_string(Status s);

/// One check.  `anchor` names the formula the check exercises.
struct Record {
  std::string id;
  std::string anchor;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json expected;
  nlohmann::json observed;
  double residual = 0;
  bool has_residual = false;
  Status status = Status::pass;
  double wall_ms = 0;
  std::string note;

  nlohmann::json to_json(bool with_time = true) const;
};

/// Outcome of a check body: the fields that depend on what was computed.
struct Outcome {
  nlohmann::json expected;
  nlohmann::json observed;
  bool ok = false;
  double residual = -1;  // < 0: not applicable
  std::string note;
};

/// Exact comparison.
template <class T>
Outcome equal(const T& want, const T& got) {
  return {nlohmann::json(want), nlohmann::json(got), want == got, -1, {}};
}

/// residual <= tol.
Outcome within(double residual, double tol, nlohmann::json expected = nullptr, nlohmann::json observed = nullptr);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& s);

class Report {
 public:
  explicit Report(std::uint64_t seed = 1) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  /// Deterministic per-check generator: seed ^ fnv1a(id).
  std::mt19937_64 rng_for(const std::string& id) const { return std::mt19937_64(seed_ ^ fnv1a(id)); }

  /// Runs `body` and records the outcome.  BudgetExceeded becomes SKIP; any
  /// other exception (including an ambiguous rank decision) becomes FAIL.
  void run(const std::string& id, const std::string& anchor, nlohmann::json params,
           const std::function<Outcome(std::mt19937_64&)>& body);
  void add(Record r) { records_.push_back(std::move(r)); }
  void merge(const Report& other);

  /// Records sorted by id.
  std::vector<Record> sorted() const;
  const std::vector<Record>& records() const { return records_; }
  std::size_t count(Status s) const;
  /// fail if anything failed, else skip if anything skipped, else pass.
  Status status() const;
  /// 0 pass, 2 fail, 3 skip.
  int exit_code() const;

  void write_jsonl(std::ostream& os, bool with_time = true) const;
  void write_summary(std::ostream& os) const;

 private:
  std::uint64_t seed_;
  std::vector<Record> records_;
};

}  // namespace psh
