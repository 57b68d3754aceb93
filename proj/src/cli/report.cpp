#include "psh/report.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <map>
#include <ostream>

#include "psh/ring.hpp"

namespace psh {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::skip: return "SKIP";
  }
  return "?";
}

nlohmann::json Record::to_json(bool with_time) const {
  nlohmann::json j;
  j["id"] = id;
  j["anchor"] = anchor;
  j["params"] = params;
  j["expected"] = expected;
  j["observed"] = observed;
  j["residual"] = has_residual ? nlohmann::json(residual) : nlohmann::json(nullptr);
  j["status"] = to_string(status);
  if (!note.empty()) j["note"] = note;
  if (with_time) j["wall_ms"] = wall_ms;
  return j;
}

Outcome within(double residual, double tol, nlohmann::json expected, nlohmann::json observed) {
  Outcome o;
  o.expected = expected.is_null() ? nlohmann::json{{"max_residual", tol}} : std::move(expected);
  o.observed = observed.is_null() ? nlohmann::json(residual) : std::move(observed);
  o.ok = residual <= tol;
  o.residual = residual;
  return o;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

void Report::run(const std::string& id, const std::string& anchor, nlohmann::json params,
                 const std::function<Outcome(std::mt19937_64&)>& body) {
  Record r;
  r.id = id;
  r.anchor = anchor;
  r.params = std::move(params);
  r.params["seed"] = seed_;
  auto rng = rng_for(id);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = body(rng);
    r.expected = std::move(o.expected);
    r.observed = std::move(o.observed);
    r.status = o.ok ? Status::pass : Status::fail;
    if (o.residual >= 0) {
      r.residual = o.residual;
      r.has_residual = true;
    }
    r.note = std::move(o.note);
  } catch (const BudgetExceeded& e) {
    r.status = Status::skip;
    r.note = e.what();
  } catch (const std::exception& e) {
    r.status = Status::fail;
    r.note = e.what();
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  records_.push_back(std::move(r));
}

void Report::merge(const Report& other) {
  records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

std::vector<Record> Report::sorted() const {
  std::vector<Record> out = records_;
  std::stable_sort(out.begin(), out.end(), [](const Record& a, const Record& b) { return a.id < b.id; });
  return out;
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(), [s](const Record& r) { return r.status == s; }));
}

Status Report::status() const {
  if (count(Status::fail) > 0) return Status::fail;
  if (count(Status::skip) > 0) return Status::skip;
  return Status::pass;
}

int Report::exit_code() const {
  switch (status()) {
    case Status::pass: return 0;
    case Status::fail: return 2;
    case Status::skip: return 3;
  }
  return 2;
}

void Report::write_jsonl(std::ostream& os, bool with_time) const {
  for (const Record& r : sorted()) os << r.to_json(with_time).dump() << '\n';
}

void Report::write_summary(std::ostream& os) const {
  std::map<std::string, std::array<std::size_t, 3>> by_anchor;
  for (const Record& r : records_) ++by_anchor[r.anchor][static_cast<std::size_t>(r.status)];
  os << std::left << std::setw(34) << "anchor" << std::right << std::setw(7) << "pass" << std::setw(7) << "fail"
     << std::setw(7) << "skip" << '\n';
  for (const auto& [a, c] : by_anchor)
    os << std::left << std::setw(34) << a << std::right << std::setw(7) << c[0] << std::setw(7) << c[1]
       << std::setw(7) << c[2] << '\n';
  os << "seed " << seed_ << ": " << records_.size() << " checks, " << count(Status::fail) << " failed, "
     << count(Status::skip) << " skipped -> " << to_string(status()) << '\n';
  for (const Record& r : sorted())
    if (r.status == Status::fail) {
      os << "first failure: " << r.id << " (" << r.anchor << ")";
      if (!r.note.empty()) os << ": " << r.note;
      os << '\n';
      break;
    }
}

}  // namespace psh
