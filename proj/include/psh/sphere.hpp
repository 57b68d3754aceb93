#pragma once

#include <cstdint>
#include <vector>

#include "psh/matrix.hpp"
#include "psh/ring.hpp"

namespace psh {

inline constexpr std::uint64_t kDefaultSphereCap = 1'000'000;

using SpherePoint = RowVec;

/// The points of S^{n-1} mod p^m (row vectors with a unit coordinate) in
/// lexicographic order of their residue indices, with a dense inverse map.
class Sphere {
 public:
  Sphere(const RingLevel& ring, int n, std::uint64_t cap = kDefaultSphereCap);

  const RingLevel& ring() const { return ring_; }
  int n() const { return n_; }
  int level() const { return ring_.level(); }
  std::size_t size() const { return points_.size(); }

  const SpherePoint& point(std::size_t i) const { return points_[i]; }
  /// Index of a point; throws std::out_of_range if x is not on the sphere.
  std::size_t index_of(const SpherePoint& x) const;
  bool contains(const SpherePoint& x) const;
  /// Index of e_n = (0, ..., 0, 1).
  std::size_t e_n() const { return e_n_; }

  /// x k for k in GL_n at the same level.
  std::size_t act(std::size_t x, const GL& gl, const MatK& k) const;
  /// Permutation x -> x k of all points.
  std::vector<std::uint32_t> permutation(const GL& gl, const MatK& k) const;

  /// Index of u x for the unit u with position `unit_pos` in UnitGroup::units().
  std::uint32_t scalar_act(std::size_t unit_pos, std::size_t x) const {
    return scalar_table_[unit_pos * points_.size() + x];
  }
  const std::vector<RingElem>& units() const { return units_; }

  /// Index at level `lower.level()` of the coordinatewise reduction.
  std::size_t reduce_index(std::size_t x, const Sphere& lower) const;

  /// min valuation of the first n-1 coordinates.
  int head_valuation(std::size_t x) const;

  std::uint64_t code(const SpherePoint& x) const;

 private:
  RingLevel ring_;
  int n_;
  std::vector<SpherePoint> points_;
  std::vector<std::int32_t> code_to_index_;
  std::vector<RingElem> units_;
  std::vector<std::uint32_t> scalar_table_;
  std::size_t e_n_ = 0;
};

/// q^{(m-1)n}(q^n - 1).
std::uint64_t sphere_size_formula(std::uint64_t q, int n, int m);

/// Coordinatewise reduction of a point to a lower level.
SpherePoint reduce_point(const RingLevel& ring, const SpherePoint& x, int n, const RingLevel& lower);

}  // namespace psh
