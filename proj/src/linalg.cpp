#include "psh/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "psh/ring.hpp"

namespace psh {

double RankCertificate::gap() const {
  if (rank == 0 || largest_dropped == 0) return std::numeric_limits<double>::infinity();
  return smallest_kept / largest_dropped;
}

namespace {

RankCertificate certify(const Eigen::ColPivHouseholderQR<CMat>& qr, double scale) {
  RankCertificate c;
  c.scale = scale;
  const Eigen::Index steps = std::min(qr.matrixQR().rows(), qr.matrixQR().cols());
  const double thr = kPivotThreshold * scale;
  for (Eigen::Index i = 0; i < steps; ++i) {
    double piv = std::abs(qr.matrixQR()(i, i));
    if (piv > thr) {
      ++c.rank;
      c.smallest_kept = c.rank == 1 ? piv : std::min(c.smallest_kept, piv);
    } else {
      c.largest_dropped = std::max(c.largest_dropped, piv);
    }
  }
  if (c.gap() < kMinPivotGap) {
    std::ostringstream os;
    os << "rank decision ambiguous: smallest kept pivot " << c.smallest_kept
       << ", largest dropped pivot " << c.largest_dropped << ", gap " << c.gap()
       << " < " << kMinPivotGap;
    throw RankAmbiguous(os.str());
  }
  return c;
}

double max_col_norm(const CMat& a) {
  double s = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) s = std::max(s, a.col(j).norm());
  return s;
}

}  // namespace

RankCertificate certified_rank(const CMat& a, double scale) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  if (scale < 0) scale = max_col_norm(a);
  if (scale == 0) return {0, 0, 0, 0};
  Eigen::ColPivHouseholderQR<CMat> qr(a);
  return certify(qr, scale);
}

Span column_span(const CMat& a, double scale) {
  Span out;
  if (a.rows() == 0 || a.cols() == 0) {
    out.basis = CMat(a.rows(), 0);
    return out;
  }
  if (scale < 0) scale = max_col_norm(a);
  if (scale == 0) {
    out.basis = CMat(a.rows(), 0);
    return out;
  }
  Eigen::ColPivHouseholderQR<CMat> qr(a);
  out.cert = certify(qr, scale);
  const auto r = static_cast<Eigen::Index>(out.cert.rank);
  out.basis = qr.householderQ() * CMat::Identity(a.rows(), r);
  return out;
}

Span kernel(const CMat& a, std::size_t cols, double scale) {
  const auto n = static_cast<Eigen::Index>(cols);
  Span out;
  if (a.rows() == 0) {
    out.basis = CMat::Identity(n, n);
    return out;
  }
  CMat at = a.adjoint();
  if (scale < 0) scale = max_col_norm(at);
  if (scale == 0) {
    out.basis = CMat::Identity(n, n);
    return out;
  }
  Eigen::ColPivHouseholderQR<CMat> qr(at);
  RankCertificate c = certify(qr, scale);
  CMat q = qr.householderQ();
  const auto r = static_cast<Eigen::Index>(c.rank);
  out.basis = q.rightCols(n - r);
  out.cert = c;
  return out;
}

Span complement(const CMat& w, const CMat& u) {
  CMat res = w;
  if (u.cols() > 0) {
    // Two passes of projection keep the residual orthogonal to working precision.
    res -= u * (u.adjoint() * res);
    res -= u * (u.adjoint() * res);
  }
  return column_span(res, max_col_norm(w));
}

cplx root_of_unity(std::uint64_t k, std::uint64_t modulus) {
  return RootOfUnity::make(static_cast<std::int64_t>(k % modulus), static_cast<std::int64_t>(modulus))
      .value();
}

CMat MonomialInvariants::dense(std::size_t size) const {
  CMat out = CMat::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(orbits.size()));
  for (std::size_t j = 0; j < orbits.size(); ++j) {
    const auto& o = orbits[j];
    const double w = 1.0 / std::sqrt(static_cast<double>(o.support.size()));
    for (std::size_t t = 0; t < o.support.size(); ++t)
      out(o.support[t], static_cast<Eigen::Index>(j)) = w * root_of_unity(o.theta[t], modulus);
  }
  return out;
}

MonomialInvariants monomial_invariants(std::size_t size, const std::vector<MonomialMap>& maps,
                                       std::uint64_t modulus) {
  // f(i) = z^{ph} f(t) along each edge i -> t; an orbit carries an invariant
  // iff the potentials theta (f = z^theta) are consistent on every edge.
  struct Edge {
    std::uint32_t to;
    std::uint64_t shift;  // theta(to) = theta(from) + shift
  };
  std::vector<std::vector<Edge>> adj(size);
  for (const auto& m : maps) {
    for (std::size_t i = 0; i < size; ++i) {
      const std::uint32_t t = m.target[i];
      const std::uint64_t ph = m.phase.empty() ? 0 : m.phase[i] % modulus;
      adj[i].push_back({t, (modulus - ph) % modulus});
      adj[t].push_back({static_cast<std::uint32_t>(i), ph});
    }
  }
  MonomialInvariants out;
  out.modulus = modulus;
  std::vector<std::int64_t> theta(size, -1);
  std::vector<std::uint32_t> queue;
  for (std::size_t root = 0; root < size; ++root) {
    if (theta[root] >= 0) continue;
    queue.assign(1, static_cast<std::uint32_t>(root));
    theta[root] = 0;
    bool consistent = true;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const std::uint32_t i = queue[h];
      for (const Edge& e : adj[i]) {
        const auto want = static_cast<std::int64_t>((static_cast<std::uint64_t>(theta[i]) + e.shift) % modulus);
        if (theta[e.to] < 0) {
          theta[e.to] = want;
          queue.push_back(e.to);
        } else if (theta[e.to] != want) {
          consistent = false;
        }
      }
    }
    if (!consistent) continue;
    MonomialInvariants::Orbit o;
    std::sort(queue.begin(), queue.end());
    for (auto i : queue) {
      o.support.push_back(i);
      o.theta.push_back(static_cast<std::uint64_t>(theta[i]));
    }
    out.orbits.push_back(std::move(o));
  }
  return out;
}

}  // namespace psh
