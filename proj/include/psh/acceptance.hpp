#pragma once

#include <functional>
#include <string>
#include <vector>

#include "psh/report.hpp"
#include "psh/ring.hpp"

namespace psh {

struct GridPoint {
  Branch branch;
  int p, f, n, M;
  RingLevel ring() const { return RingLevel::make(branch, p, f, M); }
};

/// (2,2,3), (3,2,2), (2,3,2), (4,2,2) over F_4[[t]], (5,2,1) as (q, n, M).
const std::vector<GridPoint>& dimension_grid();

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<void(Report&)> run;
};

/// The acceptance criteria with their pinned sample counts and tolerances.
std::vector<Criterion> acceptance_criteria();

/// Every criterion into one report.
Report verify_all(std::uint64_t seed);

}  // namespace psh
