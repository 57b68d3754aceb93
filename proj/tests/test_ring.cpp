#include <gtest/gtest.h>

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>

#include "psh/ring.hpp"

using namespace psh;

namespace {

std::vector<int> conductor_multiset(const RingLevel& r) {
  std::vector<int> out;
  for (const auto& c : characters(r)) out.push_back(c.conductor());
  std::sort(out.begin(), out.end());
  return out;
}

// Conductor from the definition: least l with chi(u) = 1 for every unit u = 1 mod p^l.
int brute_conductor(const UnitCharacter& chi) {
  const RingLevel& r = chi.group().ring();
  for (int l = 0; l <= r.level(); ++l) {
    bool ok = true;
    for (std::uint32_t i = 0; i < r.size() && ok; ++i) {
      RingElem u{i};
      if (!r.is_unit(u)) continue;
      if (l > 0 && u.v % r.q_pow(l) != 1 % r.q_pow(l)) continue;
      if (!chi.eval(u).is_one()) ok = false;
    }
    if (ok) return l;
  }
  return -1;
}

std::uint64_t brute_order(const RingLevel& r, RingElem x) {
  std::uint64_t k = 1;
  RingElem y = x;
  while (!(y == r.one())) {
    y = r.mul(y, x);
    ++k;
  }
  return k;
}

std::vector<RingLevel> small_rings() {
  return {RingLevel::make(Branch::padic, 2, 1, 1), RingLevel::make(Branch::padic, 2, 1, 3),
          RingLevel::make(Branch::padic, 2, 1, 4), RingLevel::make(Branch::padic, 3, 1, 2),
          RingLevel::make(Branch::padic, 5, 1, 2), RingLevel::make(Branch::laurent, 2, 1, 3),
          RingLevel::make(Branch::laurent, 2, 2, 2), RingLevel::make(Branch::laurent, 3, 1, 2),
          RingLevel::make(Branch::laurent, 3, 2, 1), RingLevel::make(Branch::laurent, 2, 3, 1)};
}

}  // namespace

TEST(Ring, Sizes) {
  EXPECT_EQ(RingLevel::make(Branch::padic, 2, 1, 3).size(), 8u);
  auto r = RingLevel::make(Branch::laurent, 2, 2, 2);
  EXPECT_EQ(r.size(), 16u);
  EXPECT_EQ(r.q(), 4u);
}

TEST(Ring, RejectsBadParameters) {
  EXPECT_THROW(RingLevel::make(Branch::padic, 3, 2, 1), ParameterError);
  EXPECT_THROW(RingLevel::make(Branch::padic, 4, 1, 1), ParameterError);
  EXPECT_THROW(RingLevel::make(Branch::padic, 2, 1, 0), ParameterError);
  EXPECT_THROW(RingLevel::make(Branch::laurent, 2, 2, 1, {1, 0, 1}), ParameterError);  // x^2+1 = (x+1)^2
  EXPECT_NO_THROW(RingLevel::make(Branch::laurent, 2, 2, 1, {1, 1, 1}));
}

TEST(Ring, AxiomsExhaustive) {
  for (const auto& r : small_rings()) {
    SCOPED_TRACE(r.describe());
    const std::uint32_t n = r.size();
    for (std::uint32_t a = 0; a < n; ++a) {
      EXPECT_EQ(r.add({a}, r.neg({a})), r.zero());
      EXPECT_EQ(r.mul({a}, r.one()), RingElem{a});
      for (std::uint32_t b = 0; b < n; ++b) {
        EXPECT_EQ(r.mul({a}, {b}), r.mul({b}, {a}));
        for (std::uint32_t c = 0; c < n; c += 1 + n / 7) {
          EXPECT_EQ(r.mul(r.mul({a}, {b}), {c}), r.mul({a}, r.mul({b}, {c})));
          EXPECT_EQ(r.mul({a}, r.add({b}, {c})), r.add(r.mul({a}, {b}), r.mul({a}, {c})));
        }
      }
    }
  }
}

TEST(Ring, ValuationAndUnits) {
  for (const auto& r : small_rings()) {
    SCOPED_TRACE(r.describe());
    EXPECT_EQ(r.valuation(r.zero()), r.level());
    std::uint64_t units = 0;
    for (std::uint32_t a = 0; a < r.size(); ++a) {
      RingElem x{a};
      EXPECT_EQ(r.is_unit(x), r.valuation(x) == 0);
      if (r.is_unit(x)) {
        ++units;
        EXPECT_EQ(r.mul(x, r.inv(x)), r.one());
      } else {
        EXPECT_THROW(r.inv(x), std::domain_error);
      }
      for (std::uint32_t b = 0; b < r.size(); ++b) {
        RingElem y{b};
        EXPECT_EQ(r.valuation(r.mul(x, y)), std::min(r.valuation(x) + r.valuation(y), r.level()));
        EXPECT_GE(r.valuation(r.add(x, y)), std::min(r.valuation(x), r.valuation(y)));
      }
    }
    EXPECT_EQ(units, r.unit_count());
  }
}

TEST(Ring, UniformizerShifts) {
  for (const auto& r : small_rings()) {
    if (r.level() < 2) continue;
    SCOPED_TRACE(r.describe());
    RingElem w = r.uniformizer();
    EXPECT_EQ(r.valuation(w), 1);
    for (std::uint32_t a = 0; a < r.size(); ++a) {
      EXPECT_EQ(r.shift_up({a}, 1), r.mul({a}, w));
      RingElem up = r.shift_up({a}, 1);
      EXPECT_EQ(r.shift_up(r.shift_down(up, 1), 1), up);
    }
  }
}

TEST(Ring, ReductionIsHomomorphism) {
  for (const auto& r : small_rings()) {
    for (int l = 1; l <= r.level(); ++l) {
      RingLevel low = r.at_level(l);
      for (std::uint32_t a = 0; a < r.size(); ++a) {
        if (r.is_unit({a})) EXPECT_TRUE(low.is_unit(r.reduce({a}, low)));
        for (std::uint32_t b = 0; b < r.size(); b += 3) {
          EXPECT_EQ(r.reduce(r.mul({a}, {b}), low), low.mul(r.reduce({a}, low), r.reduce({b}, low)));
          EXPECT_EQ(r.reduce(r.add({a}, {b}), low), low.add(r.reduce({a}, low), r.reduce({b}, low)));
        }
      }
    }
  }
}

TEST(Ring, AdditiveGeneratorsSpan) {
  for (const auto& r : small_rings()) {
    std::vector<char> seen(r.size(), 0);
    std::vector<RingElem> frontier{r.zero()};
    seen[0] = 1;
    while (!frontier.empty()) {
      RingElem x = frontier.back();
      frontier.pop_back();
      for (RingElem g : r.additive_generators()) {
        RingElem y = r.add(x, g);
        if (!seen[y.v]) {
          seen[y.v] = 1;
          frontier.push_back(y);
        }
      }
    }
    EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), static_cast<long>(r.size()));
  }
}

TEST(UnitGroup, Z9IsCyclicOfOrderSix) {
  auto r = RingLevel::make(Branch::padic, 3, 1, 2);
  auto b = unit_group_basis(r);
  std::uint64_t prod = 1;
  for (auto d : b.orders) prod *= d;
  EXPECT_EQ(prod, 6u);
  std::uint64_t max_order = 0;
  for (std::uint32_t a = 0; a < r.size(); ++a)
    if (r.is_unit({a})) max_order = std::max(max_order, brute_order(r, {a}));
  EXPECT_EQ(max_order, 6u);
}

TEST(UnitGroup, Z8IsKleinFour) {
  auto r = RingLevel::make(Branch::padic, 2, 1, 3);
  auto b = unit_group_basis(r);
  std::uint64_t prod = 1;
  for (auto d : b.orders) prod *= d;
  EXPECT_EQ(prod, 4u);
  for (std::uint32_t a = 0; a < r.size(); ++a)
    if (r.is_unit({a})) EXPECT_LE(brute_order(r, {a}), 2u);
}

TEST(UnitGroup, DualNumbersOverF2) {
  auto r = RingLevel::make(Branch::laurent, 2, 1, 2);
  auto b = unit_group_basis(r);
  ASSERT_EQ(b.orders.size(), 1u);
  EXPECT_EQ(b.orders[0], 2u);
  EXPECT_EQ(b.generators[0], RingElem{3});  // 1 + t
}

TEST(UnitGroup, ExponentVectorsAreUnique) {
  for (const auto& r : small_rings()) {
    UnitGroup g(r);
    std::map<std::vector<std::uint32_t>, RingElem> seen;
    for (RingElem u : g.units()) {
      const std::uint32_t* e = g.exponents(u);
      std::vector<std::uint32_t> key(e, e + g.rank());
      EXPECT_TRUE(seen.emplace(key, u).second);
      std::vector<std::uint64_t> e64(key.begin(), key.end());
      EXPECT_EQ(g.element(e64), u);
    }
    EXPECT_EQ(g.order(), r.unit_count());
    EXPECT_THROW(g.exponents(r.zero()), std::domain_error);
  }
}

// Characters with c <= l are those of U/(1+p^l), so there are q^{l-1}(q-1) of them.
TEST(Characters, ConductorMultisets) {
  EXPECT_EQ(conductor_multiset(RingLevel::make(Branch::padic, 3, 1, 2)),
            (std::vector<int>{0, 1, 2, 2, 2, 2}));
  EXPECT_EQ(conductor_multiset(RingLevel::make(Branch::padic, 2, 1, 3)),
            (std::vector<int>{0, 2, 3, 3}));
  auto z2 = characters(RingLevel::make(Branch::padic, 2, 1, 1));
  ASSERT_EQ(z2.size(), 1u);
  EXPECT_EQ(z2[0].conductor(), 0);
}

TEST(Characters, CountDistinctAndConductorFromDefinition) {
  for (const auto& r : small_rings()) {
    SCOPED_TRACE(r.describe());
    auto chars = characters(r);
    EXPECT_EQ(chars.size(), r.unit_count());
    int trivial = 0;
    std::vector<std::vector<std::uint64_t>> tables;
    for (const auto& chi : chars) {
      EXPECT_EQ(chi.conductor(), brute_conductor(chi));
      EXPECT_LE(chi.conductor(), r.level());
      if (chi.conductor() == 0) ++trivial;
      std::vector<std::uint64_t> vals;
      for (RingElem u : chi.group().units()) vals.push_back(chi.eval_index(u));
      tables.push_back(vals);
    }
    EXPECT_EQ(trivial, 1);
    std::sort(tables.begin(), tables.end());
    EXPECT_EQ(std::unique(tables.begin(), tables.end()), tables.end());
  }
}

TEST(Characters, Multiplicative) {
  for (const auto& r : small_rings()) {
    for (const auto& chi : characters(r)) {
      for (RingElem u : chi.group().units()) {
        EXPECT_TRUE((chi.eval(u) * chi.eval(r.inv(u))).is_one());
        for (RingElem v : chi.group().units())
          EXPECT_EQ(chi.eval(r.mul(u, v)), chi.eval(u) * chi.eval(v));
      }
      EXPECT_THROW(chi.eval(r.zero()), std::domain_error);
    }
  }
}

TEST(Characters, QuadraticOnZ9AtTwo) {
  auto chars = characters(RingLevel::make(Branch::padic, 3, 1, 2));
  int found = 0;
  for (const auto& chi : chars) {
    bool quadratic = !chi.is_trivial();
    for (RingElem u : chi.group().units()) quadratic = quadratic && (chi.eval(u) * chi.eval(u)).is_one();
    if (!quadratic) continue;
    ++found;
    EXPECT_EQ(chi.eval({2}), RootOfUnity::make(1, 2));
    EXPECT_NEAR(std::abs(chi.value({2}) - std::complex<double>(-1, 0)), 0.0, 1e-15);
  }
  EXPECT_EQ(found, 1);
}

// Sum over characters with c <= l of chi(x) is [U : 1+p^l] on 1+p^l and 0 elsewhere.
TEST(Characters, OrthogonalityOverConductorBall) {
  for (const auto& r : small_rings()) {
    auto chars = characters(r);
    UnitGroup g(r);
    for (int l = 0; l <= r.level(); ++l) {
      double expected_in = static_cast<double>(g.order()) / static_cast<double>(g.filtration_size(l));
      for (RingElem u : g.units()) {
        std::complex<double> s = 0;
        for (const auto& chi : chars)
          if (chi.conductor() <= l) s += chi.value(u);
        bool in = l == 0 || u.v % r.q_pow(l) == 1 % r.q_pow(l);
        EXPECT_NEAR(std::abs(s - (in ? expected_in : 0.0)), 0.0, 1e-9);
      }
    }
  }
}

TEST(Characters, SelectByConductor) {
  auto chars = characters(RingLevel::make(Branch::padic, 3, 1, 2));
  EXPECT_EQ(select_character(chars, 2, 3).conductor(), 2);
  EXPECT_THROW(select_character(chars, 2, 4), ParameterError);
  EXPECT_THROW(select_character(chars, 1, 1), ParameterError);
  EXPECT_TRUE(select_character(chars, 0, 0).is_trivial());
}
