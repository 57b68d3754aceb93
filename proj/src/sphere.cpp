#include "psh/sphere.hpp"

#include <stdexcept>

namespace psh {

std::uint64_t sphere_size_formula(std::uint64_t q, int n, int m) {
  std::uint64_t qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  std::uint64_t s = qn - 1;
  for (int i = 0; i < m - 1; ++i) s *= qn;
  return s;
}

Sphere::Sphere(const RingLevel& ring, int n, std::uint64_t cap) : ring_(ring), n_(n) {
  if (n < 2 || n > kMaxDim) throw ParameterError("sphere dimension n must be in 2.." + std::to_string(kMaxDim));
  if (ring.level() < 1) throw ParameterError("sphere needs level m >= 1");
  const std::uint64_t expected = sphere_size_formula(ring.q(), n, ring.level());
  if (expected > cap)
    throw BudgetExceeded("sphere has " + std::to_string(expected) + " points, cap is " + std::to_string(cap));
  std::uint64_t codes = 1;
  for (int i = 0; i < n; ++i) codes *= ring.size();
  code_to_index_.assign(codes, -1);
  points_.reserve(expected);
  for (std::uint64_t c = 0; c < codes; ++c) {
    SpherePoint x{};
    std::uint64_t r = c;
    bool unit = false;
    for (int i = n - 1; i >= 0; --i) {
      x[static_cast<std::size_t>(i)] = {static_cast<std::uint32_t>(r % ring.size())};
      r /= ring.size();
      unit = unit || ring.is_unit(x[static_cast<std::size_t>(i)]);
    }
    if (!unit) continue;
    code_to_index_[c] = static_cast<std::int32_t>(points_.size());
    points_.push_back(x);
  }
  SpherePoint en{};
  en[static_cast<std::size_t>(n - 1)] = ring.one();
  e_n_ = index_of(en);

  for (std::uint32_t i = 0; i < ring.size(); ++i)
    if (ring.is_unit({i})) units_.push_back({i});
  scalar_table_.resize(units_.size() * points_.size());
  for (std::size_t u = 0; u < units_.size(); ++u)
    for (std::size_t p = 0; p < points_.size(); ++p) {
      SpherePoint y{};
      for (int i = 0; i < n; ++i)
        y[static_cast<std::size_t>(i)] = ring.mul(units_[u], points_[p][static_cast<std::size_t>(i)]);
      scalar_table_[u * points_.size() + p] = static_cast<std::uint32_t>(index_of(y));
    }
}

std::uint64_t Sphere::code(const SpherePoint& x) const {
  std::uint64_t c = 0;
  for (int i = 0; i < n_; ++i) c = c * ring_.size() + x[static_cast<std::size_t>(i)].v;
  return c;
}

bool Sphere::contains(const SpherePoint& x) const {
  for (int i = n_; i < kMaxDim; ++i)
    if (x[static_cast<std::size_t>(i)].v != 0) return false;
  for (int i = 0; i < n_; ++i)
    if (x[static_cast<std::size_t>(i)].v >= ring_.size()) return false;
  return code_to_index_[code(x)] >= 0;
}

std::size_t Sphere::index_of(const SpherePoint& x) const {
  if (!contains(x)) throw std::out_of_range("point is not on the sphere");
  return static_cast<std::size_t>(code_to_index_[code(x)]);
}

std::size_t Sphere::act(std::size_t x, const GL& gl, const MatK& k) const {
  if (gl.n() != n_ || !(gl.ring() == ring_)) throw std::invalid_argument("act: dimension or level mismatch");
  return static_cast<std::size_t>(code_to_index_[code(gl.row_times(points_[x], k))]);
}

std::vector<std::uint32_t> Sphere::permutation(const GL& gl, const MatK& k) const {
  std::vector<std::uint32_t> out(points_.size());
  for (std::size_t x = 0; x < points_.size(); ++x) out[x] = static_cast<std::uint32_t>(act(x, gl, k));
  return out;
}

std::size_t Sphere::reduce_index(std::size_t x, const Sphere& lower) const {
  return lower.index_of(reduce_point(ring_, points_[x], n_, lower.ring()));
}

int Sphere::head_valuation(std::size_t x) const {
  int v = ring_.level();
  for (int i = 0; i + 1 < n_; ++i) v = std::min(v, ring_.valuation(points_[x][static_cast<std::size_t>(i)]));
  return v;
}

SpherePoint reduce_point(const RingLevel& ring, const SpherePoint& x, int n, const RingLevel& lower) {
  SpherePoint y{};
  for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = ring.reduce(x[static_cast<std::size_t>(i)], lower);
  return y;
}

}  // namespace psh
