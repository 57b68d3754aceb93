#pragma once

// Brute-force reference implementations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "psh/matrix.hpp"
#include "psh/ring.hpp"

namespace oracle {

// Leibniz determinant.
inline psh::RingElem leibniz_det(const psh::RingLevel& r, const psh::MatK& a, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  psh::RingElem total = r.zero();
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inv;
    psh::RingElem t = r.one();
    for (int i = 0; i < n; ++i) t = r.mul(t, a(i, perm[static_cast<std::size_t>(i)]));
    total = inv % 2 ? r.sub(total, t) : r.add(total, t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Every invertible n x n matrix over r, by scanning all size^{n^2} matrices.
inline std::vector<psh::MatK> all_invertible(const psh::RingLevel& r, int n) {
  std::uint64_t total = 1;
  for (int i = 0; i < n * n; ++i) total *= r.size();
  std::vector<psh::MatK> out;
  for (std::uint64_t c = 0; c < total; ++c) {
    psh::MatK a;
    std::uint64_t x = c;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a(i, j) = {static_cast<std::uint32_t>(x % r.size())};
        x /= r.size();
      }
    if (r.is_unit(leibniz_det(r, a, n))) out.push_back(a);
  }
  return out;
}

// Rank of an integer matrix over F_p (rows x cols), by elimination.
inline int rank_mod_p(std::vector<std::vector<long long>> m, long long p) {
  int rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows && m[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
    long long inv = 1;
    long long a = ((m[static_cast<std::size_t>(rank)][c] % p) + p) % p;
    for (long long t = 1; t < p; ++t)
      if (a * t % p == 1) inv = t;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank)) continue;
      long long f = ((m[r][c] % p) + p) % p * inv % p;
      for (std::size_t j = 0; j < cols; ++j)
        m[r][j] = ((m[r][j] - f * m[static_cast<std::size_t>(rank)][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace oracle
