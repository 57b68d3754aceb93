#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "psh/harmonics.hpp"
#include "psh/linalg.hpp"
#include "psh/matgroup.hpp"

namespace psh {

inline constexpr std::uint64_t kDefaultCosetBudget = 1'000'000;

/// g = b * rep with b upper triangular; `pivots` is the diagonal of b.
struct CanonicalCoset {
  MatK rep;
  std::vector<RingElem> pivots;
};

/// Left-B canonical form: rows from the bottom up, each row cleared at the
/// pivot columns of the rows below it (bottom-most first), pivot at the
/// rightmost remaining unit entry, scaled to 1.
CanonicalCoset canonical_coset(const GL& gl, const MatK& g);

/// |GL_n(O/p^M)| / |B(O/p^M)|.
std::uint64_t flag_count_formula(std::uint64_t q, int n, int M);

/// Canonical representatives of B \ G, by closure from the identity coset
/// under right multiplication by `gens`.
std::vector<MatK> flag_cosets(const GL& gl, const std::vector<MatK>& gens,
                              std::uint64_t budget = kDefaultCosetBudget);

/// binom(a, b) with binom(a, b) = 0 for a < 0 or b < 0 or b > a.
std::uint64_t binomial(long long a, long long b);

/// Invariant space computed two ways: exact orbit/phase count and numerical
/// kernel.  `exact` holds unit-norm vectors (Euclidean).
struct InvariantSpace {
  MonomialInvariants exact;
  Span numeric;
  std::size_t dim() const { return exact.dim(); }
  bool agree() const { return exact.dim() == numeric.dim(); }
};

/// Functions f on GL_n(O/p^M) with f(b g) = prod chi_j(b_jj) f(g), stored by
/// their values on canonical coset representatives; K acts by right translation.
class PSeriesModel {
 public:
  /// All characters must live on the unit group of gl.ring().
  PSeriesModel(const GL& gl, std::vector<UnitCharacter> chis, const std::vector<MatK>& k_gens,
               std::uint64_t budget = kDefaultCosetBudget);

  const GL& gl() const { return gl_; }
  int n() const { return gl_.n(); }
  int level() const { return gl_.level(); }
  std::size_t dim() const { return reps_.size(); }
  const std::vector<UnitCharacter>& chis() const { return chis_; }
  const std::vector<MatK>& reps() const { return reps_; }
  std::uint64_t modulus() const { return modulus_; }
  const std::vector<MatK>& k_generators() const { return k_gens_; }

  /// sum_j c(chi_j).
  int declared_conductor() const;
  /// prod_j chi_j.
  UnitCharacter central_character() const;

  /// (pi(k) f)(r) = f(r k) as a monomial map on representatives.
  MonomialMap action(const MatK& k) const;
  CVec apply(const MatK& k, const CVec& v) const;
  /// (1/dim) sum v conj(w).
  cplx inner(const CVec& v, const CVec& w) const;

  /// pi(g) v = v for all g in the subgroup.
  InvariantSpace invariants(const SubgroupSpec& s) const;
  /// pi(k0) v = chi_pi(d) v on K_0(p^l), l >= c(chi_pi).
  InvariantSpace k0_equivariant(int l) const;
  /// max over generators of | ||pi(g) v|| - ||v|| | for a fixed test vector.
  double unitarity_residual(std::mt19937_64& rng) const;

 private:
  std::size_t index_of(const MatK& rep) const;
  std::uint64_t phase_of(const std::vector<RingElem>& pivots) const;
  InvariantSpace solve(const std::vector<MatK>& gens, const std::vector<std::uint64_t>& twist) const;

  GL gl_;
  std::vector<UnitCharacter> chis_;
  std::vector<MatK> reps_;
  std::vector<MatK> k_gens_;
  std::unordered_map<std::uint64_t, std::uint32_t> where_;
  std::uint64_t modulus_ = 1;
};

/// dim V^{K_1(p^l)} for l = 0..M, both routes.
struct ConductorScan {
  std::vector<std::size_t> k1_dims;
  std::vector<std::size_t> k1_dims_numeric;
  std::vector<std::size_t> k0_dims;  // (K_0, psi)-equivariant, l >= c(chi_pi); 0 below
  std::vector<std::size_t> graded;   // successive differences of k1_dims
  int empirical_conductor = -1;      // -1 if no invariants up to M
};
ConductorScan scan_conductor(const PSeriesModel& model);

/// Unit-norm (model inner product) generator of V^{K_1(p^c)} at c = c(pi),
/// taken from the exact route.  Throws std::logic_error unless the empirical
/// conductor equals the declared one and the space is a line.
CVec newform(const PSeriesModel& model, const ConductorScan& scan);

/// max over generators of K_0(p^c) of ||pi(k0) v - chi_pi(d) v||.
double newform_equivariance_residual(const PSeriesModel& model, const CVec& v);

/// The three-case closed form for <pi(k) v°, v°> / <v°, v°>.
cplx matrix_coefficient_formula(const GL& gl, int c_pi, const UnitCharacter& chi_pi, const MatK& k);
/// <pi(k) v, v> / <v, v>.
cplx matrix_coefficient(const PSeriesModel& model, const CVec& v, const MatK& k);

/// v_P = dim (1/|K|) sum_k P(e_n k^{-1}) pi(k) v° over every k.
CVec vector_from_harmonic_exhaustive(const PSeriesModel& model, const Harmonics& h, const SphereFn& P,
                                     std::size_t dim_tau, const CVec& vnew);
/// The same sum grouped by x = e_n k^{-1}: k = s_x^{-1} m with e_n s_x = x and
/// m in K_{n-1,1}, which fixes v°; so v_P = (dim / |S|) sum_x P(x) pi(s_x^{-1}) v°.
CVec vector_from_harmonic(const PSeriesModel& model, const Harmonics& h, const SphereFn& P,
                          std::size_t dim_tau, const CVec& vnew);
/// A matrix with bottom row x (x on the sphere).
MatK sphere_section(const GL& gl, const SpherePoint& x);

/// Orthonormal basis (Euclidean) of the K-span of v, by closure under generators.
Span k_span(const PSeriesModel& model, const CVec& v);

}  // namespace psh
