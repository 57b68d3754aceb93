#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace psh {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Equality and orthogonality tolerance.
inline constexpr double kTauNum = 1e-8;
/// Pivots at or below this fraction of the reference scale count as zero.
inline constexpr double kPivotThreshold = 1e-6;
/// Required ratio between the smallest kept and the largest dropped pivot.
inline constexpr double kMinPivotGap = 1e4;

/// A rank decision whose pivot gap is below kMinPivotGap.
class RankAmbiguous : public std::runtime_error {
 public:
  explicit RankAmbiguous(const std::string& what) : std::runtime_error(what) {}
};

struct RankCertificate {
  std::size_t rank = 0;
  double scale = 0;
  double smallest_kept = 0;    // 0 if rank == 0
  double largest_dropped = 0;  // 0 if nothing was dropped
  /// smallest_kept / largest_dropped, +inf when either side is empty or exact.
  double gap() const;
};

/// Orthonormal columns (Euclidean) together with the rank certificate.
struct Span {
  CMat basis;
  RankCertificate cert;
  std::size_t dim() const { return static_cast<std::size_t>(basis.cols()); }
};

/// Column space of `a` by column-pivoted Householder QR.  `scale` is the
/// reference magnitude for the pivot threshold; by default the largest column
/// norm.  Throws RankAmbiguous if the certificate fails.
Span column_span(const CMat& a, double scale = -1);

/// Right kernel {v : a v = 0}, from the QR of a^*.  `scale` as above (default:
/// the largest row norm of a).
Span kernel(const CMat& a, std::size_t cols, double scale = -1);

/// Orthonormal basis of span(w) minus its projection on span(u); u must have
/// orthonormal columns.
Span complement(const CMat& w, const CMat& u);

/// Rank of `a` with certificate (no basis).
RankCertificate certified_rank(const CMat& a, double scale = -1);

/// A monomial operator (g f)(i) = z^{phase[i]} f(target[i]), z = e^{2 pi i / L}.
struct MonomialMap {
  std::vector<std::uint32_t> target;
  std::vector<std::uint64_t> phase;
};

/// Exact solution space of g f = f for all maps, one vector per orbit whose
/// phases close up.  Each vector is supported on one orbit with entries z^{theta}.
struct MonomialInvariants {
  struct Orbit {
    std::vector<std::uint32_t> support;
    std::vector<std::uint64_t> theta;
  };
  std::uint64_t modulus = 1;
  std::vector<Orbit> orbits;
  std::size_t dim() const { return orbits.size(); }
  /// Dense vectors with unit Euclidean norm, one column per orbit.
  CMat dense(std::size_t size) const;
};

MonomialInvariants monomial_invariants(std::size_t size, const std::vector<MonomialMap>& maps,
                                       std::uint64_t modulus);

/// e^{2 pi i k / L}, exact at quarter turns.
cplx root_of_unity(std::uint64_t k, std::uint64_t modulus);

}  // namespace psh
