#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "psh/ring.hpp"

namespace psh {

inline constexpr int kMaxDim = 4;

/// n x n matrix over O/p^M, row-major.  The dimension and ring live in the
/// owning GL context; MatK itself is a plain value.
struct MatK {
  std::array<RingElem, kMaxDim * kMaxDim> e{};
  RingElem& operator()(int i, int j) { return e[static_cast<std::size_t>(i * kMaxDim + j)]; }
  RingElem operator()(int i, int j) const { return e[static_cast<std::size_t>(i * kMaxDim + j)]; }
  friend bool operator==(const MatK&, const MatK&) = default;
};

/// Row vector over O/p^M.
using RowVec = std::array<RingElem, kMaxDim>;

/// Arithmetic in GL_n(O/p^M).
class GL {
 public:
  GL(RingLevel ring, int n);

  const RingLevel& ring() const { return ring_; }
  int n() const { return n_; }
  int level() const { return ring_.level(); }

  MatK identity() const;
  MatK mul(const MatK& a, const MatK& b) const;
  /// Throws std::domain_error for a singular matrix.
  MatK inv(const MatK& a) const;
  RingElem det(const MatK& a) const;
  bool invertible(const MatK& a) const { return ring_.is_unit(det(a)); }
  MatK pow(MatK a, std::uint64_t e) const;

  /// 1 + a E_ij (i != j) or the diagonal matrix with u in slot i (i == j).
  MatK elementary(int i, int j, RingElem a) const;
  MatK diag_unit(int i, RingElem u) const;
  MatK scalar(RingElem u) const;
  /// Builds a matrix from row-major integer residue indices.
  MatK from_indices(const std::vector<std::uint32_t>& entries) const;

  RowVec row_times(const RowVec& x, const MatK& k) const;
  RowVec basis_vector(int i) const;

  /// Entrywise reduction to `lower` (same n, lower level).
  MatK reduce(const MatK& a, const GL& lower) const;

  /// Injective key of a matrix; throws BudgetExceeded if size^{n^2} overflows.
  std::uint64_t key(const MatK& a) const;
  MatK from_key(std::uint64_t key) const;
  bool key_fits() const { return key_fits_; }

  std::string to_string(const MatK& a) const;

 private:
  RingLevel ring_;
  int n_;
  bool key_fits_ = false;
};

}  // namespace psh
