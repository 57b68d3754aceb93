#include "psh/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace psh {

GL::GL(RingLevel ring, int n) : ring_(std::move(ring)), n_(n) {
  if (n < 1 || n > kMaxDim) throw ParameterError("matrix dimension must be in 1.." + std::to_string(kMaxDim));
  double bits = static_cast<double>(n) * n * std::log2(static_cast<double>(ring_.size()));
  key_fits_ = bits < 63.5;
}

MatK GL::identity() const {
  MatK a;
  for (int i = 0; i < n_; ++i) a(i, i) = ring_.one();
  return a;
}

MatK GL::mul(const MatK& a, const MatK& b) const {
  MatK c;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      RingElem s = ring_.zero();
      for (int k = 0; k < n_; ++k) s = ring_.add(s, ring_.mul(a(i, k), b(k, j)));
      c(i, j) = s;
    }
  return c;
}

MatK GL::pow(MatK a, std::uint64_t e) const {
  MatK r = identity();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

// Gaussian elimination over a local ring: some entry of each column below the
// pivot row is a unit exactly when the matrix is invertible.
RingElem GL::det(const MatK& a0) const {
  MatK a = a0;
  RingElem d = ring_.one();
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int r = c; r < n_; ++r)
      if (ring_.is_unit(a(r, c))) {
        piv = r;
        break;
      }
    if (piv < 0) {
      // No unit pivot: det lies in the maximal ideal.  Fall back to cofactor
      // expansion, which is exact over any commutative ring.
      if (n_ == 1) return a0(0, 0);
      std::vector<int> perm(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i) perm[static_cast<std::size_t>(i)] = i;
      RingElem total = ring_.zero();
      // Leibniz formula; n <= 4 so at most 24 terms.
      do {
        int inversions = 0;
        for (int i = 0; i < n_; ++i)
          for (int j = i + 1; j < n_; ++j)
            if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
        RingElem t = ring_.one();
        for (int i = 0; i < n_; ++i) t = ring_.mul(t, a0(i, perm[static_cast<std::size_t>(i)]));
        total = inversions % 2 ? ring_.sub(total, t) : ring_.add(total, t);
      } while (std::next_permutation(perm.begin(), perm.end()));
      return total;
    }
    if (piv != c) {
      for (int j = 0; j < n_; ++j) std::swap(a(piv, j), a(c, j));
      d = ring_.neg(d);
    }
    d = ring_.mul(d, a(c, c));
    RingElem pinv = ring_.inv(a(c, c));
    for (int r = c + 1; r < n_; ++r) {
      RingElem f = ring_.mul(a(r, c), pinv);
      if (f == ring_.zero()) continue;
      for (int j = c; j < n_; ++j) a(r, j) = ring_.sub(a(r, j), ring_.mul(f, a(c, j)));
    }
  }
  return d;
}

MatK GL::inv(const MatK& a0) const {
  MatK a = a0;
  MatK b = identity();
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int r = c; r < n_; ++r)
      if (ring_.is_unit(a(r, c))) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("matrix is not invertible");
    if (piv != c)
      for (int j = 0; j < n_; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(b(piv, j), b(c, j));
      }
    RingElem pinv = ring_.inv(a(c, c));
    for (int j = 0; j < n_; ++j) {
      a(c, j) = ring_.mul(a(c, j), pinv);
      b(c, j) = ring_.mul(b(c, j), pinv);
    }
    for (int r = 0; r < n_; ++r) {
      if (r == c) continue;
      RingElem f = a(r, c);
      if (f == ring_.zero()) continue;
      for (int j = 0; j < n_; ++j) {
        a(r, j) = ring_.sub(a(r, j), ring_.mul(f, a(c, j)));
        b(r, j) = ring_.sub(b(r, j), ring_.mul(f, b(c, j)));
      }
    }
  }
  return b;
}

MatK GL::elementary(int i, int j, RingElem a) const {
  MatK m = identity();
  if (i == j) {
    m(i, i) = a;
  } else {
    m(i, j) = a;
  }
  return m;
}

MatK GL::diag_unit(int i, RingElem u) const {
  if (!ring_.is_unit(u)) throw std::domain_error("diag_unit needs a unit");
  return elementary(i, i, u);
}

MatK GL::scalar(RingElem u) const {
  MatK m;
  for (int i = 0; i < n_; ++i) m(i, i) = u;
  return m;
}

MatK GL::from_indices(const std::vector<std::uint32_t>& entries) const {
  if (entries.size() != static_cast<std::size_t>(n_ * n_)) throw ParameterError("wrong number of matrix entries");
  MatK m;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = ring_.from_index(entries[static_cast<std::size_t>(i * n_ + j)]);
  return m;
}

RowVec GL::row_times(const RowVec& x, const MatK& k) const {
  RowVec y{};
  for (int j = 0; j < n_; ++j) {
    RingElem s = ring_.zero();
    for (int i = 0; i < n_; ++i) s = ring_.add(s, ring_.mul(x[static_cast<std::size_t>(i)], k(i, j)));
    y[static_cast<std::size_t>(j)] = s;
  }
  return y;
}

RowVec GL::basis_vector(int i) const {
  RowVec x{};
  x[static_cast<std::size_t>(i)] = ring_.one();
  return x;
}

MatK GL::reduce(const MatK& a, const GL& lower) const {
  if (lower.n_ != n_) throw std::invalid_argument("reduce: dimension mismatch");
  MatK b;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) b(i, j) = ring_.reduce(a(i, j), lower.ring_);
  return b;
}

std::uint64_t GL::key(const MatK& a) const {
  if (!key_fits_) throw BudgetExceeded("matrix key does not fit in 64 bits");
  std::uint64_t k = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) k = k * ring_.size() + a(i, j).v;
  return k;
}

MatK GL::from_key(std::uint64_t k) const {
  MatK a;
  for (int i = n_ - 1; i >= 0; --i)
    for (int j = n_ - 1; j >= 0; --j) {
      a(i, j) = {static_cast<std::uint32_t>(k % ring_.size())};
      k /= ring_.size();
    }
  return a;
}

std::string GL::to_string(const MatK& a) const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < n_; ++j) os << (j ? "," : "") << ring_.to_string(a(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace psh
