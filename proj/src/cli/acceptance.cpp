#include "psh/acceptance.hpp"

#include "psh/harmonics.hpp"
#include "psh/pseries.hpp"
#include "psh/suites.hpp"

namespace psh {

const std::vector<GridPoint>& dimension_grid() {
  static const std::vector<GridPoint> grid = {
      {Branch::padic, 2, 1, 2, 3},   {Branch::padic, 3, 1, 2, 2}, {Branch::padic, 2, 1, 3, 2},
      {Branch::laurent, 2, 2, 2, 2}, {Branch::padic, 5, 1, 2, 1},
  };
  return grid;
}

namespace {

void for_grid(const std::function<void(const Harmonics&)>& f) {
  for (const auto& g : dimension_grid()) f(Harmonics(g.ring(), g.n));
}

// Ordered pairs of characters at level M whose conductors sum to exactly s.
void pairs_with_sum(Report& rep, const Harmonics& h, int s, int samples) {
  for (const auto& a : h.characters())
    for (const auto& b : h.characters())
      if (a.conductor() + b.conductor() == s) suite_principal_series(rep, h, {a, b}, samples);
}

}  // namespace

std::vector<Criterion> acceptance_criteria() {
  std::vector<Criterion> out;
  out.push_back({1, "sphere and dimension grid", 60, [](Report& r) { for_grid([&](const Harmonics& h) { suite_decompose(r, h); }); }});
  out.push_back({2, "irreducibility", 300, [](Report& r) { for_grid([&](const Harmonics& h) { suite_irreducibility(r, h); }); }});
  out.push_back({3, "zonal identities", 0, [](Report& r) { for_grid([&](const Harmonics& h) { suite_zonal(r, h, 200); }); }});
  out.push_back({4, "double cosets", 30, [](Report& r) {
                   suite_double_cosets(r, GL(RingLevel::make(Branch::padic, 2, 1, 2), 2), 2, kDefaultCosetBudget);
                   suite_double_cosets(r, GL(RingLevel::make(Branch::padic, 2, 1, 1), 3), 1, kDefaultCosetBudget);
                 }});
  out.push_back({5, "idempotent sums", 0, [](Report& r) {
                   suite_idempotents(r, Harmonics(RingLevel::make(Branch::padic, 2, 1, 2), 2), 0);
                   for_grid([&](const Harmonics& h) { suite_idempotents(r, h, 1000); });
                 }});
  out.push_back({6, "newform suite", 600, [](Report& r) {
                   for (int p : {2, 3})
                     for (int s = 0; s <= 3; ++s) pairs_with_sum(r, Harmonics(RingLevel::make(Branch::padic, p, 1, s + 1), 2), s, 500);
                   // n = 3, q = 2: conductor 1 does not occur for p = 2, so only the
                   // unramified triple has sum <= 1.
                   const Harmonics h(RingLevel::make(Branch::padic, 2, 1, 2), 3);
                   for (const auto& a : h.characters())
                     for (const auto& b : h.characters())
                       for (const auto& c : h.characters())
                         if (a.conductor() + b.conductor() + c.conductor() <= 1) suite_principal_series(r, h, {a, b, c}, 500);
                 }});
  out.push_back({7, "vector from harmonic roundtrip", 0, [](Report& r) {
                   const Harmonics h(RingLevel::make(Branch::padic, 2, 1, 2), 2);
                   for (const auto& a : h.characters())
                     for (const auto& b : h.characters())
                       if (a.conductor() + b.conductor() <= 2) suite_roundtrip(r, h, {a, b}, true, 200);
                 }});
  out.push_back({8, "archimedean zonals", 60, [](Report& r) { suite_arch(r, ArchBounds{}, 20); }});
  return out;
}

Report verify_all(std::uint64_t seed) {
  Report rep(seed);
  for (const auto& c : acceptance_criteria()) c.run(rep);
  return rep;
}

}  // namespace psh
