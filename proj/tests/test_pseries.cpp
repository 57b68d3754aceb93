#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "psh/pseries.hpp"

using namespace psh;

namespace {

Harmonics make(int p, int M, int n) { return Harmonics(RingLevel::make(Branch::padic, p, 1, M), n); }

PSeriesModel model_of(const Harmonics& h, const std::vector<std::pair<int, std::size_t>>& sel) {
  std::vector<UnitCharacter> chis;
  for (auto [c, i] : sel) chis.push_back(select_character(h.characters(), c, i));
  return PSeriesModel(h.gl(), chis, h.k_generators());
}

bool upper_triangular(const GL& gl, const MatK& b) {
  for (int i = 0; i < gl.n(); ++i)
    for (int j = 0; j < i; ++j)
      if (b(i, j).v != 0) return false;
  return true;
}

// Number of classes of g1 ~ g2 iff g1 g2^{-1} is upper triangular, over all of G.
std::size_t oracle_flag_count(const RingLevel& r, int n) {
  GL gl(r, n);
  std::vector<MatK> classes;
  for (const MatK& g : oracle::all_invertible(r, n)) {
    bool found = false;
    for (const MatK& c : classes)
      if (upper_triangular(gl, gl.mul(g, gl.inv(c)))) {
        found = true;
        break;
      }
    if (!found) classes.push_back(g);
  }
  return classes.size();
}

// dim V^H = (1/|H|) sum_h tr pi(h), with the induced character
// tr pi(h) = sum over cosets B r with r h r^{-1} in B of prod chi_j((r h r^{-1})_jj).
std::size_t oracle_invariant_dim(const PSeriesModel& m, const SubgroupSpec& s) {
  const GL& gl = m.gl();
  auto elems = closure(gl, verified_generators(gl, s, false).gens, 200000);
  cplx total = 0;
  for (const MatK& h : elems)
    for (const MatK& r : m.reps()) {
      const MatK b = gl.mul(gl.mul(r, h), gl.inv(r));
      if (!upper_triangular(gl, b)) continue;
      cplx t = 1;
      for (int j = 0; j < gl.n(); ++j) t *= m.chis()[static_cast<std::size_t>(j)].value(b(j, j));
      total += t;
    }
  total /= static_cast<double>(elems.size());
  EXPECT_NEAR(total.imag(), 0, 1e-9);
  EXPECT_NEAR(total.real(), std::round(total.real()), 1e-9);
  return static_cast<std::size_t>(std::llround(total.real()));
}

std::size_t expected_k1_dim(int n, int c, int l) { return l < c ? 0 : binomial(l - c + n - 1, n - 1); }

}  // namespace

TEST(PSeries, FlagCountsMatchBruteForce) {
  struct Case {
    int p, M, n;
    std::size_t want;
  };
  for (Case c : {Case{2, 1, 2, 3}, Case{2, 2, 2, 6}, Case{2, 1, 3, 21}, Case{3, 2, 2, 12}, Case{3, 1, 2, 4}}) {
    const RingLevel r = RingLevel::make(Branch::padic, c.p, 1, c.M);
    Harmonics h(r, c.n);
    EXPECT_EQ(oracle_flag_count(r, c.n), c.want);
    EXPECT_EQ(flag_count_formula(r.q(), c.n, c.M), c.want);
    EXPECT_EQ(flag_cosets(h.gl(), h.k_generators()).size(), c.want);
  }
  Harmonics h = make(2, 2, 3);
  EXPECT_EQ(flag_cosets(h.gl(), h.k_generators()).size(), flag_count_formula(2, 3, 2));
  EXPECT_EQ(flag_count_formula(2, 3, 2), 168u);
}

TEST(PSeries, CanonicalFormFactorsThroughBorel) {
  std::mt19937_64 rng(11);
  for (auto [p, M, n] : {std::tuple{2, 2, 3}, std::tuple{3, 2, 2}, std::tuple{2, 3, 2}}) {
    Harmonics h = make(p, M, n);
    const GL& gl = h.gl();
    for (int t = 0; t < 200; ++t) {
      const MatK g = h.random_k(rng);
      CanonicalCoset c = canonical_coset(gl, g);
      const MatK b = gl.mul(g, gl.inv(c.rep));
      ASSERT_TRUE(upper_triangular(gl, b));
      for (int j = 0; j < n; ++j) EXPECT_EQ(b(j, j), c.pivots[static_cast<std::size_t>(j)]);
      // Left multiplication by a random Borel element keeps the representative.
      MatK u = h.random_k(rng);
      MatK bb = gl.identity();
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) bb(i, j) = u(i, j);
      for (int i = 0; i < n; ++i)
        if (!gl.ring().is_unit(bb(i, i))) bb(i, i) = gl.ring().one();
      CanonicalCoset c2 = canonical_coset(gl, gl.mul(bb, g));
      EXPECT_EQ(c2.rep, c.rep);
      for (int j = 0; j < n; ++j)
        EXPECT_EQ(c2.pivots[static_cast<std::size_t>(j)],
                  gl.ring().mul(bb(j, j), c.pivots[static_cast<std::size_t>(j)]));
    }
  }
}

TEST(PSeries, ModelIsAUnitaryRepresentation) {
  Harmonics h = make(3, 2, 2);
  PSeriesModel m = model_of(h, {{1, 0}, {2, 0}});
  EXPECT_EQ(m.dim(), 12u);
  EXPECT_EQ(m.declared_conductor(), 3);
  std::mt19937_64 rng(4);
  EXPECT_LT(m.unitarity_residual(rng), 1e-12);
  std::normal_distribution<double> nd;
  CVec v(static_cast<Eigen::Index>(m.dim())), w(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = cplx(nd(rng), nd(rng));
    w(i) = cplx(nd(rng), nd(rng));
  }
  for (int t = 0; t < 30; ++t) {
    const MatK a = h.random_k(rng), b = h.random_k(rng), c = h.random_k(rng);
    // pi(ab) = pi(a) pi(b), spot-checked on triples.
    EXPECT_LT((m.apply(h.gl().mul(h.gl().mul(a, b), c), v) - m.apply(a, m.apply(b, m.apply(c, v)))).norm(), 1e-12);
    EXPECT_NEAR(std::abs(m.inner(m.apply(a, v), m.apply(a, w)) - m.inner(v, w)), 0, 1e-12);
  }
  // Scalars act through the central character.
  const UnitCharacter omega = m.central_character();
  for (RingElem u : h.units().units())
    EXPECT_LT((m.apply(h.gl().scalar(u), v) - omega.value(u) * v).norm(), 1e-12);
}

TEST(PSeries, SphericalModelOnProjectiveLine) {
  Harmonics h = make(2, 1, 2);
  PSeriesModel m = model_of(h, {{0, 0}, {0, 0}});
  EXPECT_EQ(m.dim(), 3u);
  ConductorScan s = scan_conductor(m);
  EXPECT_EQ(s.empirical_conductor, 0);
  CVec v = newform(m, s);
  // The K-fixed line is the constant function.
  for (Eigen::Index i = 0; i < v.size(); ++i) EXPECT_NEAR(std::abs(v(i) - v(0)), 0, 1e-12);
  EXPECT_NEAR(m.inner(v, v).real(), 1.0, 1e-12);
}

TEST(PSeries, InvariantDimsMatchTraceOracleAndBinomial) {
  struct Case {
    int p, M, n;
    std::vector<std::pair<int, std::size_t>> sel;
  };
  const std::vector<Case> cases = {
      {2, 2, 2, {{0, 0}, {0, 0}}}, {2, 2, 2, {{2, 0}, {0, 0}}}, {2, 2, 2, {{2, 0}, {2, 0}}},
      {3, 2, 2, {{1, 0}, {0, 0}}}, {3, 2, 2, {{1, 0}, {1, 0}}}, {3, 2, 2, {{2, 0}, {0, 0}}},
      {3, 2, 2, {{0, 0}, {0, 0}}}, {2, 1, 3, {{0, 0}, {0, 0}, {0, 0}}}, {3, 1, 3, {{1, 0}, {0, 0}, {0, 0}}},
  };
  for (const auto& c : cases) {
    Harmonics h = make(c.p, c.M, c.n);
    PSeriesModel m = model_of(h, c.sel);
    const int cp = m.declared_conductor();
    for (int l = 0; l <= c.M; ++l) {
      InvariantSpace inv = m.invariants(SubgroupSpec::k1(l));
      EXPECT_TRUE(inv.agree()) << "l=" << l;
      EXPECT_EQ(inv.dim(), expected_k1_dim(c.n, cp, l)) << "p=" << c.p << " n=" << c.n << " l=" << l;
      EXPECT_EQ(inv.dim(), oracle_invariant_dim(m, SubgroupSpec::k1(l))) << "l=" << l;
    }
  }
}

TEST(PSeries, RankThreeOldformsAtLevelTwo) {
  Harmonics h = make(2, 2, 3);
  PSeriesModel spherical = model_of(h, {{0, 0}, {0, 0}, {0, 0}});
  ConductorScan s = scan_conductor(spherical);
  EXPECT_EQ(s.k1_dims, (std::vector<std::size_t>{1, 3, 6}));
  EXPECT_EQ(s.k1_dims_numeric, s.k1_dims);
  EXPECT_EQ(s.graded, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(oracle_invariant_dim(spherical, SubgroupSpec::k1(2)), 6u);

  PSeriesModel ramified = model_of(h, {{2, 0}, {0, 0}, {0, 0}});
  ConductorScan r = scan_conductor(ramified);
  EXPECT_EQ(r.k1_dims, (std::vector<std::size_t>{0, 0, 1}));
  EXPECT_EQ(r.empirical_conductor, 2);
  EXPECT_EQ(oracle_invariant_dim(ramified, SubgroupSpec::k1(2)), 1u);
}

TEST(PSeries, GradedDimsAndK0Equivariance) {
  for (auto [p, M, n] : {std::tuple{2, 3, 2}, std::tuple{3, 2, 2}, std::tuple{2, 2, 3}}) {
    Harmonics h = make(p, M, n);
    for (int c1 = 0; c1 <= M; ++c1) {
      bool any = false;
      for (const auto& chi : h.characters()) any |= chi.conductor() == c1;
      if (!any) continue;
      std::vector<std::pair<int, std::size_t>> sel(static_cast<std::size_t>(n), {0, 0});
      sel[0] = {c1, 0};
      PSeriesModel m = model_of(h, sel);
      const int cp = m.declared_conductor();
      ConductorScan s = scan_conductor(m);
      EXPECT_EQ(s.k1_dims, s.k1_dims_numeric);
      std::size_t partial = 0;
      for (int l = 0; l <= M; ++l) {
        const auto L = static_cast<std::size_t>(l);
        EXPECT_EQ(s.graded[L], l < cp ? 0u : binomial(l - cp + n - 2, n - 2)) << "l=" << l;
        partial += s.graded[L];
        EXPECT_EQ(partial, s.k1_dims[L]);
        if (l >= m.central_character().conductor()) EXPECT_EQ(s.k0_dims[L], s.k1_dims[L]) << "l=" << l;
      }
    }
  }
}

TEST(PSeries, GradedDimsIgnoreCharacterOrder) {
  Harmonics h = make(3, 2, 2);
  ConductorScan a = scan_conductor(model_of(h, {{1, 0}, {2, 1}}));
  ConductorScan b = scan_conductor(model_of(h, {{2, 1}, {1, 0}}));
  EXPECT_EQ(a.k1_dims, b.k1_dims);
  EXPECT_EQ(a.graded, b.graded);
}

TEST(PSeries, NewformConductorAndEquivariance) {
  struct Case {
    int p, M, n;
    std::vector<std::pair<int, std::size_t>> sel;
    int conductor;
  };
  const std::vector<Case> cases = {
      {3, 2, 2, {{1, 0}, {0, 0}}, 1}, {3, 2, 2, {{1, 0}, {1, 0}}, 2}, {2, 2, 2, {{2, 0}, {0, 0}}, 2},
      {2, 4, 2, {{2, 0}, {2, 0}}, 4}, {2, 2, 3, {{2, 0}, {0, 0}, {0, 0}}, 2},
  };
  for (const auto& c : cases) {
    Harmonics h = make(c.p, c.M, c.n);
    PSeriesModel m = model_of(h, c.sel);
    ConductorScan s = scan_conductor(m);
    EXPECT_EQ(s.empirical_conductor, c.conductor);
    EXPECT_EQ(m.declared_conductor(), c.conductor);
    CVec v = newform(m, s);
    EXPECT_NEAR(m.inner(v, v).real(), 1.0, 1e-12);
    EXPECT_LT(newform_equivariance_residual(m, v), 1e-10);
  }
}

TEST(PSeries, ConductorMismatchIsHardError) {
  Harmonics h = make(3, 2, 2);
  PSeriesModel m = model_of(h, {{1, 0}, {0, 0}});
  ConductorScan s = scan_conductor(m);
  s.empirical_conductor = 2;
  EXPECT_THROW(newform(m, s), std::logic_error);
}

TEST(PSeries, MatrixCoefficientMatchesClosedFormAndZonal) {
  struct Case {
    int p, M, n;
    std::vector<std::pair<int, std::size_t>> sel;
  };
  const std::vector<Case> cases = {
      {2, 2, 2, {{0, 0}, {0, 0}}}, {2, 2, 2, {{2, 0}, {0, 0}}}, {3, 2, 2, {{1, 0}, {0, 0}}},
      {3, 2, 2, {{1, 0}, {1, 0}}}, {3, 3, 2, {{2, 0}, {1, 0}}}, {2, 3, 2, {{2, 0}, {0, 0}}},
  };
  std::mt19937_64 rng(8);
  for (const auto& c : cases) {
    Harmonics h = make(c.p, c.M, c.n);
    PSeriesModel m = model_of(h, c.sel);
    const CVec v = newform(m, scan_conductor(m));
    const int cp = m.declared_conductor();
    const UnitCharacter omega = m.central_character();
    const Sphere& S = h.sphere();
    EXPECT_NEAR(std::abs(matrix_coefficient(m, v, h.gl().identity()) - 1.0), 0, 1e-12);
    bool saw_shell = false;
    for (int t = 0; t < 300; ++t) {
      const MatK k = h.random_k(rng);
      const cplx got = matrix_coefficient(m, v, k);
      EXPECT_NEAR(std::abs(got - matrix_coefficient_formula(h.gl(), cp, omega, k)), 0, 1e-10);
      EXPECT_NEAR(std::abs(got - h.zonal_value(omega, cp, S.act(S.e_n(), h.gl(), k))), 0, 1e-10);
      if (cp > omega.conductor() && !is_member(h.gl(), k, SubgroupSpec::k0(cp - 1)))
        EXPECT_NEAR(std::abs(got), 0, 1e-12);
      if (cp > omega.conductor() && is_member(h.gl(), k, SubgroupSpec::k0(cp - 1)) &&
          !is_member(h.gl(), k, SubgroupSpec::k0(cp)))
        saw_shell = true;
      if (cp == 0) EXPECT_NEAR(std::abs(got - 1.0), 0, 1e-12);
    }
    if (cp > omega.conductor()) EXPECT_TRUE(saw_shell);
  }
}

TEST(PSeries, ShellValueIsMinusOneHalf) {
  // Two quadratic characters mod 3: conductor 2 with trivial central character,
  // so the shell K_0(p) \ K_0(p^2) carries -1/(q^{n-1} - 1) = -1/2.
  Harmonics h = make(3, 2, 2);
  PSeriesModel m = model_of(h, {{1, 0}, {1, 0}});
  const CVec v = newform(m, scan_conductor(m));
  const MatK k = h.gl().from_indices({1, 0, 3, 1});
  EXPECT_NEAR(std::abs(matrix_coefficient(m, v, k) - (-0.5)), 0, 1e-12);
  // q = 2, conductor 1 over an unramified central character: -(q-1)/(q(q^{n-1}-1)) = -1/2.
  Harmonics h2 = make(2, 2, 2);
  const UnitCharacter triv = select_character(h2.characters(), 0, 0);
  EXPECT_NEAR(std::abs(matrix_coefficient_formula(h2.gl(), 1, triv, h2.gl().from_indices({1, 0, 1, 1})) - (-0.5)),
              0, 1e-15);
}

TEST(PSeries, TwistMinimalityOnGrid) {
  for (auto [p, M] : {std::pair{3, 2}, std::pair{5, 1}, std::pair{2, 3}}) {
    Harmonics h = make(p, M, 2);
    const auto& chars = h.characters();
    for (std::size_t a = 0; a < chars.size(); ++a)
      for (std::size_t b = a; b < chars.size(); ++b) {
        if (chars[a].conductor() + chars[b].conductor() > M) continue;
        PSeriesModel m(h.gl(), {chars[a], chars[b]}, h.k_generators());
        const int emp = scan_conductor(m).empirical_conductor;
        EXPECT_EQ(emp, m.declared_conductor());
        const int ramified = (chars[a].conductor() > 0) + (chars[b].conductor() > 0);
        EXPECT_EQ(emp == m.central_character().conductor(), ramified <= 1)
            << chars[a].label() << " " << chars[b].label();
      }
  }
}

TEST(PSeries, VectorFromHarmonicRoundTrip) {
  struct Case {
    int p, M, n;
    std::vector<std::pair<int, std::size_t>> sel;
    bool exhaustive;
  };
  const std::vector<Case> cases = {
      {2, 2, 2, {{2, 0}, {0, 0}}, true},
      {2, 2, 2, {{0, 0}, {0, 0}}, true},
      {3, 2, 2, {{1, 0}, {0, 0}}, true},
      {3, 2, 2, {{1, 0}, {1, 0}}, false},
      {2, 2, 3, {{2, 0}, {0, 0}, {0, 0}}, false},
  };
  std::mt19937_64 rng(21);
  std::normal_distribution<double> nd;
  for (const auto& c : cases) {
    Harmonics h = make(c.p, c.M, c.n);
    PSeriesModel m = model_of(h, c.sel);
    const CVec vnew = newform(m, scan_conductor(m));
    const int cp = m.declared_conductor();
    const UnitCharacter omega = m.central_character();
    Subspace H = h.harmonic(omega, cp);
    const std::size_t d = H.dim();
    ASSERT_EQ(d, harmonic_dim_formula(h.q(), c.n, omega.conductor(), cp));

    // The K-span of the newform is a copy of the newform K-type.
    Span span = k_span(m, vnew);
    EXPECT_EQ(span.dim(), d);

    CVec coef(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < coef.size(); ++i) coef(i) = cplx(nd(rng), nd(rng));
    const SphereFn P = H.basis * coef;
    const CVec v = vector_from_harmonic(m, h, P, d, vnew);
    if (c.exhaustive) {
      const CVec ve = vector_from_harmonic_exhaustive(m, h, P, d, vnew);
      EXPECT_LT((ve - v).norm(), 1e-10 * v.norm());
    }
    EXPECT_GT(v.norm(), 1e-6);
    EXPECT_LT((v - span.basis * (span.basis.adjoint() * v)).norm(), 1e-10 * v.norm());

    const cplx pp = h.inner(P, P);
    const cplx vv = m.inner(v, v);
    const Sphere& S = h.sphere();
    for (int t = 0; t < 50; ++t) {
      const MatK k = h.random_k(rng);
      const cplx lhs = pp * m.inner(m.apply(k, vnew), v);
      const cplx rhs = vv * std::conj(P(static_cast<Eigen::Index>(S.act(S.e_n(), h.gl(), h.gl().inv(k))))) /
                       static_cast<double>(d);
      EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::abs(vv));
    }

    // P = P° gives back the newform itself.
    const CVec back = vector_from_harmonic(m, h, h.zonal(omega, cp), d, vnew);
    EXPECT_LT((back - vnew).norm(), 1e-10 * vnew.norm());
  }
}

TEST(PSeries, MismatchedCentralCharacterGivesZero) {
  Harmonics h = make(2, 2, 2);
  PSeriesModel m = model_of(h, {{2, 0}, {0, 0}});
  const CVec vnew = newform(m, scan_conductor(m));
  const UnitCharacter triv = select_character(h.characters(), 0, 0);
  Subspace H = h.harmonic(triv, 2);
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(H.dim()); ++j) {
    const CVec v = vector_from_harmonic_exhaustive(m, h, H.basis.col(j), H.dim(), vnew);
    EXPECT_LT(v.norm(), 1e-12);
    EXPECT_LT(vector_from_harmonic(m, h, H.basis.col(j), H.dim(), vnew).norm(), 1e-12);
  }
}

TEST(PSeries, RejectsBadParameters) {
  Harmonics h = make(3, 2, 2);
  const auto& chars = h.characters();
  EXPECT_THROW(PSeriesModel(h.gl(), {chars[0]}, h.k_generators()), ParameterError);
  Harmonics other = make(3, 1, 2);
  EXPECT_THROW(PSeriesModel(h.gl(), {other.characters()[0], other.characters()[0]}, h.k_generators()),
               ParameterError);
  PSeriesModel m = model_of(h, {{2, 0}, {0, 0}});
  EXPECT_THROW(m.k0_equivariant(1), ParameterError);
}
