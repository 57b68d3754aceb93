#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "psh/linalg.hpp"
#include "psh/matgroup.hpp"
#include "psh/sphere.hpp"

namespace psh {

using Rational = boost::multiprecision::cpp_rational;

/// Complex value per sphere index.
using SphereFn = CVec;

/// Orthonormal basis (for the uniform probability measure on the sphere) of a
/// subspace of functions, one column per basis vector.
struct Subspace {
  CMat basis;
  int level = 0;
  std::string kind;
  RankCertificate cert;
  std::size_t dim() const { return static_cast<std::size_t>(basis.cols()); }
};

// Closed forms in q, n and levels.

/// [K : K_0(p^m)], 1 for m = 0.
std::uint64_t k0_index(std::uint64_t q, int n, int m);
/// [K : K_1(p^m)], 1 for m = 0.
std::uint64_t k1_index(std::uint64_t q, int n, int m);
/// dim of the chi-part of the level-l functions: 0, 1 or [K : K_0(p^l)].
std::uint64_t chi_level_dim_formula(std::uint64_t q, int n, int c, int l);
/// dim H_{chi,m} in its four cases.
std::uint64_t harmonic_dim_formula(std::uint64_t q, int n, int c, int m);
/// <phi_{l1}, phi_{l2}> = vol K_0(p^{max(l1,l2)}).
Rational phi_inner_formula(std::uint64_t q, int n, int l1, int l2);
/// The shell coefficient of the zonal function on head valuation m - 1.
Rational zonal_alpha_formula(std::uint64_t q, int n, int m);
/// The same coefficient from orthogonality of (1 - a) phi_m + a phi_{m-1}
/// against phi_{m-1}, using only the phi Gram entries.
Rational zonal_alpha_from_gram(std::uint64_t q, int n, int m);

double to_double(const Rational& r);

/// The sphere at working level M together with K, its generators and the unit
/// characters of O/p^M.
class Harmonics {
 public:
  Harmonics(const RingLevel& ring, int n, std::uint64_t cap = kDefaultSphereCap);

  const RingLevel& ring() const { return gl_.ring(); }
  const GL& gl() const { return gl_; }
  const Sphere& sphere() const { return sphere_; }
  int n() const { return gl_.n(); }
  int level() const { return gl_.level(); }
  std::uint64_t q() const { return gl_.ring().q(); }
  const UnitGroup& units() const { return *units_; }
  const std::vector<UnitCharacter>& characters() const { return chars_; }
  /// Trimmed, verified generators of K and of K_{n-1,1}.
  const std::vector<MatK>& k_generators() const { return k_gens_; }
  const std::vector<MatK>& mirabolic_generators() const { return mir_gens_; }

  /// (1/|S|) sum f conj(g).
  cplx inner(const SphereFn& f, const SphereFn& g) const;
  /// (tau(k) f)(x) = f(x k).
  SphereFn translate(const SphereFn& f, const MatK& k) const;

  /// chi(x_n) where x_1..x_{n-1} all have valuation >= l, else 0; the
  /// constant 1 for l = 0 (trivial chi only).  Throws ParameterError if l < c(chi).
  SphereFn phi(const UnitCharacter& chi, int l) const;
  /// Closed-form zonal spherical function P°_{chi,m}.
  SphereFn zonal(const UnitCharacter& chi, int m) const;
  /// The same at a single point.
  cplx zonal_value(const UnitCharacter& chi, int m, std::size_t x) const;

  /// chi-equivariant functions pulled back from level l, as the joint kernel of
  /// (tau(g) - 1) over generators of K(p^l) and of (f(u x) - chi(u) f(x)).
  Subspace chi_level(const UnitCharacter& chi, int l) const;
  /// Dimension of the same space by the exact orbit-phase count over the
  /// reduction fibres and the scalar action.
  std::size_t chi_level_exact_dim(const UnitCharacter& chi, int l) const;
  /// H_{chi,m}: the level-m chi-part minus the level-(m-1) chi-part.
  Subspace harmonic(const UnitCharacter& chi, int m) const;

  /// Matrix of tau(g) on an invariant subspace in its orthonormal basis.
  CMat action_matrix(const Subspace& s, const MatK& g) const;
  /// dim {T : T tau(g) = tau(g) T for all g}, with the rank certificate.
  std::size_t commutant_dimension(const Subspace& s, const std::vector<MatK>& gens,
                                  RankCertificate* cert = nullptr) const;
  /// Basis of the K_{n-1,1}-invariant vectors in s.
  Subspace mirabolic_invariants(const Subspace& s) const;

  /// max |sum_j Q_j(x) conj Q_j(e_n k) - dim P°(x k^{-1})| over samples.
  double addition_theorem_residual(const Subspace& h, const SphereFn& zonal, int samples,
                                   std::mt19937_64& rng) const;
  /// max |P(e_n k) - dim <tau(k) P, P°>| over basis vectors P and samples k.
  double reproducing_kernel_residual(const Subspace& h, const SphereFn& zonal, int samples,
                                     std::mt19937_64& rng) const;
  /// max |P°(e_n k) - conj P°(e_n k^{-1})| over samples.
  double zonal_symmetry_residual(const SphereFn& zonal, int samples, std::mt19937_64& rng) const;

  /// sum_{l=c}^{m} dim H_{chi,l} P°_{chi,l}(e_n k^{-1}).
  cplx idempotent_k0_sum(const UnitCharacter& chi, int m, const MatK& k) const;
  /// 1 if m = c = 0; conj chi(k_nn) [K : K_0(p^m)] on K_0(p^m) for m > 0; else 0.
  cplx idempotent_k0_target(const UnitCharacter& chi, int m, const MatK& k) const;
  /// sum_{l <= m} sum_{c(chi) <= l} dim H_{chi,l} P°_{chi,l}(e_n k^{-1}).
  cplx idempotent_k1_sum(int m, const MatK& k) const;
  /// [K : K_1(p^m)] on K_1(p^m), else 0.
  double idempotent_k1_target(int m, const MatK& k) const;

  /// x -> x g on sphere indices.
  std::vector<std::uint32_t> permutation(const MatK& g) const { return sphere_.permutation(gl_, g); }
  MatK random_k(std::mt19937_64& rng) const { return kenum_.random(rng); }
  const KEnumerator& k_enumerator() const { return kenum_; }

 private:
  GL gl_;
  Sphere sphere_;
  std::shared_ptr<const UnitGroup> units_;
  std::vector<UnitCharacter> chars_;
  std::vector<MatK> k_gens_;
  std::vector<MatK> mir_gens_;
  KEnumerator kenum_;
};

}  // namespace psh
