#include <gtest/gtest.h>

#include <map>
#include <set>

#include "psh/harmonics.hpp"

using namespace psh;

namespace {

Harmonics make(Branch b, int p, int f, int M, int n) { return Harmonics(RingLevel::make(b, p, f, M), n); }

// Level-l chi-part by a different construction: indicators of the reduction
// fibres, averaged against chi over all units, then ranked.
std::size_t oracle_chi_level_dim(const Harmonics& h, const UnitCharacter& chi, int l) {
  const Sphere& s = h.sphere();
  std::map<std::size_t, std::vector<std::size_t>> fibres;
  if (l == 0) {
    for (std::size_t x = 0; x < s.size(); ++x) fibres[0].push_back(x);
  } else {
    Sphere lower(h.ring().at_level(l), h.n());
    for (std::size_t x = 0; x < s.size(); ++x) fibres[s.reduce_index(x, lower)].push_back(x);
  }
  CMat cols = CMat::Zero(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(fibres.size()));
  Eigen::Index j = 0;
  for (const auto& [key, fib] : fibres) {
    for (std::size_t u = 0; u < s.units().size(); ++u) {
      const cplx w = std::conj(chi.value(s.units()[u]));
      for (auto x : fib) cols(static_cast<Eigen::Index>(s.scalar_act(u, x)), j) += w;
    }
    ++j;
  }
  return certified_rank(cols, 1.0).rank;
}

// dim End_K(V) = (1/|K|) sum_k |tr tau(k)|^2, summed over all of K.
double oracle_endomorphism_dim(const Harmonics& h, const Subspace& s) {
  const auto& en = h.k_enumerator();
  double total = 0;
  for (std::uint64_t i = 0; i < en.size(); ++i) total += std::norm(h.action_matrix(s, en.at(i)).trace());
  return total / static_cast<double>(en.size());
}

}  // namespace

TEST(HarmonicsFormulas, DimensionsAndIndices) {
  EXPECT_EQ(harmonic_dim_formula(2, 2, 0, 0), 1u);
  EXPECT_EQ(harmonic_dim_formula(2, 2, 0, 1), 2u);
  EXPECT_EQ(harmonic_dim_formula(2, 2, 0, 2), 3u);
  EXPECT_EQ(harmonic_dim_formula(2, 2, 2, 2), 6u);
  EXPECT_EQ(harmonic_dim_formula(3, 2, 0, 1), 3u);
  EXPECT_EQ(harmonic_dim_formula(2, 3, 0, 1), 6u);
  EXPECT_EQ(chi_level_dim_formula(2, 2, 0, 1), 3u);
  EXPECT_EQ(chi_level_dim_formula(2, 2, 2, 2), 6u);
  EXPECT_EQ(chi_level_dim_formula(2, 2, 2, 1), 0u);
  EXPECT_EQ(k1_index(2, 2, 1), 3u);
  EXPECT_EQ(k0_index(3, 2, 1), 4u);
}

TEST(HarmonicsFormulas, ZonalCoefficientFromGram) {
  for (std::uint64_t q : {2, 3, 4, 5, 7})
    for (int n = 2; n <= 4; ++n)
      for (int m = 1; m <= 4; ++m) EXPECT_EQ(zonal_alpha_from_gram(q, n, m), zonal_alpha_formula(q, n, m));
  EXPECT_EQ(zonal_alpha_formula(2, 2, 1), Rational(-1, 2));
  EXPECT_EQ(phi_inner_formula(2, 2, 1, 1), Rational(1, 3));
}

TEST(Harmonics, PhiExamples) {
  auto h = make(Branch::padic, 2, 1, 1, 2);
  const auto& triv = h.characters()[0];
  SphereFn one = h.phi(triv, 0);
  for (Eigen::Index x = 0; x < one.size(); ++x) EXPECT_EQ(one(x), cplx(1));
  SphereFn p1 = h.phi(triv, 1);
  EXPECT_EQ(p1(0), cplx(1));  // (0,1)
  EXPECT_EQ(p1(1), cplx(0));
  EXPECT_EQ(p1(2), cplx(0));
  EXPECT_NEAR(h.inner(p1, p1).real(), 1.0 / 3.0, 1e-15);
}

TEST(Harmonics, PhiGramMatchesFormula) {
  for (auto [b, p, f, M, n] : std::vector<std::tuple<Branch, int, int, int, int>>{
           {Branch::padic, 2, 1, 3, 2}, {Branch::padic, 3, 1, 2, 2}, {Branch::padic, 2, 1, 2, 3},
           {Branch::laurent, 2, 2, 2, 2}}) {
    auto h = make(b, p, f, M, n);
    for (const auto& chi : h.characters())
      for (int l1 = std::max(chi.conductor(), chi.is_trivial() ? 0 : 1); l1 <= M; ++l1)
        for (int l2 = l1; l2 <= M; ++l2) {
          cplx g = h.inner(h.phi(chi, l1), h.phi(chi, l2));
          EXPECT_NEAR(std::abs(g - to_double(phi_inner_formula(h.q(), n, l1, l2))), 0, 1e-12);
        }
  }
}

TEST(Harmonics, ZonalWorkedExample) {
  auto h = make(Branch::padic, 2, 1, 1, 2);
  SphereFn z = h.zonal(h.characters()[0], 1);
  EXPECT_EQ(z(0), cplx(1));
  EXPECT_EQ(z(1), cplx(-0.5));
  EXPECT_EQ(z(2), cplx(-0.5));
  EXPECT_NEAR(std::abs(h.inner(z, h.phi(h.characters()[0], 0))), 0, 1e-15);
  EXPECT_NEAR(h.inner(z, z).real(), 0.5, 1e-15);
}

TEST(Harmonics, ChiLevelDimensionsThreeWays) {
  for (auto [b, p, f, M, n] : std::vector<std::tuple<Branch, int, int, int, int>>{
           {Branch::padic, 2, 1, 2, 2}, {Branch::padic, 3, 1, 2, 2}, {Branch::padic, 2, 1, 2, 3},
           {Branch::laurent, 2, 2, 1, 2}}) {
    auto h = make(b, p, f, M, n);
    for (const auto& chi : h.characters())
      for (int l = 0; l <= M; ++l) {
        const auto expect = chi_level_dim_formula(h.q(), n, chi.conductor(), l);
        EXPECT_EQ(h.chi_level(chi, l).dim(), expect);
        EXPECT_EQ(h.chi_level_exact_dim(chi, l), expect);
        EXPECT_EQ(oracle_chi_level_dim(h, chi, l), expect);
      }
  }
}

TEST(Harmonics, ChiLevelIsEquivariantAndPulledBack) {
  auto h = make(Branch::padic, 3, 1, 2, 2);
  const auto& chi = select_character(h.characters(), 1, 0);
  Subspace s = h.chi_level(chi, 1);
  Sphere lower(h.ring().at_level(1), 2);
  for (Eigen::Index j = 0; j < s.basis.cols(); ++j) {
    for (std::size_t x = 0; x < h.sphere().size(); ++x) {
      for (std::size_t y = 0; y < h.sphere().size(); ++y)
        if (h.sphere().reduce_index(x, lower) == h.sphere().reduce_index(y, lower))
          EXPECT_NEAR(std::abs(s.basis(static_cast<Eigen::Index>(x), j) - s.basis(static_cast<Eigen::Index>(y), j)), 0, 1e-10);
      for (std::size_t u = 0; u < h.sphere().units().size(); ++u)
        EXPECT_NEAR(std::abs(s.basis(h.sphere().scalar_act(u, x), j) -
                             chi.value(h.sphere().units()[u]) * s.basis(static_cast<Eigen::Index>(x), j)),
                    0, 1e-10);
    }
  }
  EXPECT_LT((s.basis.adjoint() * s.basis / static_cast<double>(h.sphere().size()) -
             CMat::Identity(s.basis.cols(), s.basis.cols())).norm(), 1e-10);
}

TEST(Harmonics, HarmonicDimsCompletenessOrthogonality) {
  for (auto [b, p, f, M, n] : std::vector<std::tuple<Branch, int, int, int, int>>{
           {Branch::padic, 2, 1, 2, 2}, {Branch::padic, 3, 1, 2, 2}, {Branch::padic, 2, 1, 2, 3},
           {Branch::laurent, 2, 2, 1, 2}, {Branch::padic, 5, 1, 1, 2}}) {
    auto h = make(b, p, f, M, n);
    std::vector<CMat> spaces;
    std::size_t total = 0;
    for (const auto& chi : h.characters())
      for (int m = chi.conductor(); m <= M; ++m) {
        Subspace s = h.harmonic(chi, m);
        EXPECT_EQ(s.dim(), harmonic_dim_formula(h.q(), n, chi.conductor(), m));
        total += s.dim();
        spaces.push_back(s.basis);
      }
    EXPECT_EQ(total, h.sphere().size());
    for (std::size_t i = 0; i < spaces.size(); ++i)
      for (std::size_t j = i + 1; j < spaces.size(); ++j)
        EXPECT_LT((spaces[i].adjoint() * spaces[j]).cwiseAbs().maxCoeff() / static_cast<double>(h.sphere().size()), kTauNum);
  }
}

TEST(Harmonics, SmallGridDimensions) {
  auto h = make(Branch::padic, 2, 1, 2, 2);
  std::multiset<std::pair<int, std::size_t>> got;
  for (const auto& chi : h.characters())
    for (int m = chi.conductor(); m <= 2; ++m) got.insert({chi.conductor() * 10 + m, h.harmonic(chi, m).dim()});
  std::multiset<std::pair<int, std::size_t>> want{{0, 1}, {1, 2}, {2, 3}, {22, 6}};
  EXPECT_EQ(got, want);
}

TEST(Harmonics, IrreducibleAndCommutantOfLevelSpaces) {
  for (auto [b, p, f, M, n] : std::vector<std::tuple<Branch, int, int, int, int>>{
           {Branch::padic, 2, 1, 2, 2}, {Branch::padic, 3, 1, 2, 2}, {Branch::laurent, 2, 2, 1, 2}}) {
    auto h = make(b, p, f, M, n);
    for (const auto& chi : h.characters())
      for (int m = chi.conductor(); m <= M; ++m) {
        RankCertificate cert;
        EXPECT_EQ(h.commutant_dimension(h.harmonic(chi, m), h.k_generators(), &cert), 1u);
        EXPECT_GE(cert.gap(), kMinPivotGap);
        EXPECT_EQ(h.commutant_dimension(h.chi_level(chi, m), h.k_generators()),
                  static_cast<std::size_t>(m - chi.conductor() + 1));
      }
  }
}

TEST(Harmonics, CommutantAgreesWithCharacterNorm) {
  for (auto [b, p, f, M, n] : std::vector<std::tuple<Branch, int, int, int, int>>{
           {Branch::padic, 2, 1, 2, 2}, {Branch::padic, 2, 1, 1, 3}, {Branch::padic, 3, 1, 1, 2}}) {
    auto h = make(b, p, f, M, n);
    for (const auto& chi : h.characters())
      for (int m = chi.conductor(); m <= M; ++m) {
        EXPECT_NEAR(oracle_endomorphism_dim(h, h.harmonic(chi, m)), 1.0, 1e-9);
        EXPECT_NEAR(oracle_endomorphism_dim(h, h.chi_level(chi, m)), m - chi.conductor() + 1, 1e-9);
      }
  }
}

TEST(Harmonics, MirabolicInvariantLineIsTheZonal) {
  for (auto [b, p, f, M, n] : std::vector<std::tuple<Branch, int, int, int, int>>{
           {Branch::padic, 2, 1, 3, 2}, {Branch::padic, 3, 1, 2, 2}, {Branch::padic, 2, 1, 2, 3},
           {Branch::laurent, 2, 2, 2, 2}}) {
    auto h = make(b, p, f, M, n);
    for (const auto& chi : h.characters())
      for (int m = chi.conductor(); m <= M; ++m) {
        Subspace inv = h.mirabolic_invariants(h.harmonic(chi, m));
        ASSERT_EQ(inv.dim(), 1u);
        SphereFn v = inv.basis.col(0);
        v /= v(static_cast<Eigen::Index>(h.sphere().e_n()));
        EXPECT_LT((v - h.zonal(chi, m)).cwiseAbs().maxCoeff(), 1e-9);
      }
  }
}

TEST(Harmonics, ZonalNormAndOrthogonality) {
  auto h = make(Branch::padic, 2, 1, 3, 2);
  for (const auto& chi : h.characters())
    for (int m = chi.conductor(); m <= 3; ++m) {
      SphereFn z = h.zonal(chi, m);
      EXPECT_NEAR(std::abs(h.inner(z, z) - 1.0 / static_cast<double>(harmonic_dim_formula(2, 2, chi.conductor(), m))), 0, 1e-12);
      for (int j = chi.conductor(); j < m; ++j) EXPECT_NEAR(std::abs(h.inner(z, h.zonal(chi, j))), 0, 1e-12);
    }
}

TEST(Harmonics, AdditionReproducingSymmetry) {
  for (auto [b, p, f, M, n] : std::vector<std::tuple<Branch, int, int, int, int>>{
           {Branch::padic, 2, 1, 2, 2}, {Branch::padic, 3, 1, 2, 2}, {Branch::padic, 2, 1, 2, 3}}) {
    auto h = make(b, p, f, M, n);
    std::mt19937_64 rng(17);
    for (const auto& chi : h.characters())
      for (int m = chi.conductor(); m <= M; ++m) {
        Subspace s = h.harmonic(chi, m);
        SphereFn z = h.zonal(chi, m);
        EXPECT_LT(h.addition_theorem_residual(s, z, 200, rng), 1e-9);
        EXPECT_LT(h.reproducing_kernel_residual(s, z, 50, rng), 1e-9);
        EXPECT_LT(h.zonal_symmetry_residual(z, 200, rng), 1e-12);
      }
  }
}

TEST(Harmonics, AdditionTheoremIsBasisFree) {
  auto h = make(Branch::padic, 3, 1, 2, 2);
  const auto& chi = h.characters()[0];
  Subspace s = h.harmonic(chi, 2);
  // Rotate the basis by a random unitary.
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  CMat r(s.basis.cols(), s.basis.cols());
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j) r(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<CMat> qr(r);
  CMat u = qr.householderQ();
  Subspace t = s;
  t.basis = s.basis * u;
  CMat k1 = s.basis * s.basis.adjoint(), k2 = t.basis * t.basis.adjoint();
  EXPECT_LT((k1 - k2).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Harmonics, IdempotentSumsExhaustive) {
  auto h = make(Branch::padic, 2, 1, 2, 2);
  const auto& en = h.k_enumerator();
  ASSERT_EQ(en.size(), 96u);
  for (std::uint64_t i = 0; i < en.size(); ++i) {
    MatK k = en.at(i);
    for (int m = 0; m <= 2; ++m) {
      EXPECT_NEAR(std::abs(h.idempotent_k1_sum(m, k) - h.idempotent_k1_target(m, k)), 0, 1e-9);
      for (const auto& chi : h.characters())
        if (chi.conductor() <= m)
          EXPECT_NEAR(std::abs(h.idempotent_k0_sum(chi, m, k) - h.idempotent_k0_target(chi, m, k)), 0, 1e-9);
    }
  }
  EXPECT_NEAR(h.idempotent_k0_target(h.characters()[0], 2, h.gl().identity()).real(), 3.0 * 2.0, 0);
}

TEST(Harmonics, IdempotentSumsSampled) {
  auto h = make(Branch::padic, 3, 1, 2, 2);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 300; ++t) {
    MatK k = h.random_k(rng);
    for (int m = 0; m <= 2; ++m) {
      EXPECT_NEAR(std::abs(h.idempotent_k1_sum(m, k) - h.idempotent_k1_target(m, k)), 0, 1e-9);
      for (const auto& chi : h.characters())
        if (chi.conductor() <= m)
          EXPECT_NEAR(std::abs(h.idempotent_k0_sum(chi, m, k) - h.idempotent_k0_target(chi, m, k)), 0, 1e-9);
    }
  }
}

TEST(Harmonics, InnerProductIsKInvariant) {
  auto h = make(Branch::padic, 3, 1, 2, 2);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  SphereFn a(static_cast<Eigen::Index>(h.sphere().size())), b(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a(i) = cplx(g(rng), g(rng));
    b(i) = cplx(g(rng), g(rng));
  }
  for (int t = 0; t < 50; ++t) {
    MatK k = h.random_k(rng);
    EXPECT_NEAR(std::abs(h.inner(h.translate(a, k), h.translate(b, k)) - h.inner(a, b)), 0, 1e-12);
  }
}

TEST(Harmonics, RejectsBadParameters) {
  auto h = make(Branch::padic, 2, 1, 2, 2);
  const auto& eta = select_character(h.characters(), 2, 0);
  EXPECT_THROW(h.phi(eta, 1), ParameterError);
  EXPECT_THROW(h.zonal(eta, 1), ParameterError);
  EXPECT_THROW(h.harmonic(eta, 1), ParameterError);
  EXPECT_EQ(h.chi_level(eta, 1).dim(), 0u);
}
