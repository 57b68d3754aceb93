#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace psh::arch {

using Rational = boost::multiprecision::cpp_rational;

/// Polynomial with rational coefficients in a fixed number of variables,
/// stored as exponent vector -> nonzero coefficient.
///
/// The complex branch uses 2n formal variables: z_1..z_n in slots 0..n-1 and
/// conj(z_1)..conj(z_n) in slots n..2n-1.
class ExactPoly {
 public:
  using Monomial = std::vector<int>;

  explicit ExactPoly(int nvars = 0) : nvars_(nvars) {}
  static ExactPoly constant(int nvars, const Rational& c);
  static ExactPoly variable(int nvars, int i);
  static ExactPoly monomial(const Monomial& e, const Rational& c);

  int nvars() const { return nvars_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& e) const;

  ExactPoly operator+(const ExactPoly& o) const;
  ExactPoly operator-(const ExactPoly& o) const;
  ExactPoly operator*(const ExactPoly& o) const;
  ExactPoly scaled(const Rational& c) const;
  ExactPoly pow(int e) const;
  ExactPoly derivative(int var) const;
  friend bool operator==(const ExactPoly& a, const ExactPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// True iff every monomial has total degree d.
  bool homogeneous(int d) const;
  /// True iff every monomial has degree d1 in slots [0, n) and d2 in [n, 2n).
  bool bihomogeneous(int n, int d1, int d2) const;

  Rational eval(const std::vector<Rational>& x) const;
  double eval(const std::vector<double>& x) const;
  /// Complex branch: slot j gets z_j and slot n + j gets conj(z_j).
  std::complex<double> eval_complex(const std::vector<std::complex<double>>& z) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_term(const Monomial& e, const Rational& c);

  int nvars_;
  std::map<Monomial, Rational> terms_;
};

std::vector<std::string> real_names(int n);
std::vector<std::string> complex_names(int n);

/// sum_i d^2/dx_i^2.
ExactPoly real_laplacian(const ExactPoly& p);
/// 4 sum_j d^2/(dz_j d conj z_j) on the complex branch with n = nvars / 2.
ExactPoly complex_laplacian(const ExactPoly& p);

/// Coefficient of |x'|^nu x_n^{m - nu} (nu even) in the real zonal harmonic:
/// i^nu m! Gamma((n-1)/2) / (2^nu (nu/2)! (m-nu)! Gamma((nu+n-1)/2)), with the
/// Gamma ratio telescoped to 1 / prod_{j < nu/2} ((n-1)/2 + j).
Rational real_zonal_coefficient(int m, int n, int nu);
/// Coefficient of |z'|^{2 nu} z_n^{m1-nu} conj(z_n)^{m2-nu} in the complex one:
/// (-1)^nu binom(m1, nu) binom(m2, nu) / binom(nu + n - 2, n - 2).
Rational complex_zonal_coefficient(int m1, int m2, int n, int nu);

ExactPoly real_zonal(int m, int n);
ExactPoly complex_zonal(int m1, int m2, int n);

/// Closed forms; m = 0 gives 1.
std::uint64_t harmonic_dim_real(int m, int n);
std::uint64_t harmonic_dim_complex(int m1, int m2, int n);

/// Rank of a rational matrix by exact elimination.
std::size_t rational_rank(std::vector<std::vector<Rational>> a);
/// Basis of the right kernel of a rational matrix (reduced echelon form).
std::vector<std::vector<Rational>> rational_kernel(std::vector<std::vector<Rational>> a, std::size_t cols);

/// Exponent vectors of total degree d in k variables, lexicographic.
std::vector<ExactPoly::Monomial> monomials(int k, int d);

/// dim ker (Delta : degree m -> degree m - 2) on real monomials.
std::uint64_t harmonic_dim_real_kernel(int m, int n);
/// dim ker (Delta : bidegree (m1, m2) -> (m1 - 1, m2 - 1)) on complex monomials.
std::uint64_t harmonic_dim_complex_kernel(int m1, int m2, int n);

using UniPoly = std::vector<Rational>;  // coefficient of t^i at index i

/// Restriction of the real zonal to the sphere as a polynomial in t = x_n,
/// using |x'|^2 = 1 - t^2.
UniPoly real_zonal_profile(int m, int n);
/// Degree-m orthogonal polynomial for the weight (1 - t^2)^{(n-3)/2} on
/// [-1, 1], by Gram-Schmidt on 1, t, ..., t^m with exact moments, scaled to
/// value 1 at t = 1.
UniPoly gegenbauer_gram_schmidt(int m, int n);

/// max |P(x k) - P(x)| over random x on S^{n-1} and k in O(n-1) x 1: a random
/// sign on x_1 followed by Givens rotations in the first n - 1 coordinates.
double real_rotation_residual(const ExactPoly& p, int n, int samples, std::mt19937_64& rng);
/// The same for unitary k = diag(u, 1), u a product of complex Givens rotations.
double complex_rotation_residual(const ExactPoly& p, int n, int samples, std::mt19937_64& rng);

}  // namespace psh::arch
