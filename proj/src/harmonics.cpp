#include "psh/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace psh {

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

std::uint64_t k0_index(std::uint64_t q, int n, int m) {
  if (m == 0) return 1;
  return upow(q, (m - 1) * (n - 1)) * ((upow(q, n) - 1) / (q - 1));
}

std::uint64_t k1_index(std::uint64_t q, int n, int m) {
  if (m == 0) return 1;
  return upow(q, (m - 1) * n) * (upow(q, n) - 1);
}

std::uint64_t chi_level_dim_formula(std::uint64_t q, int n, int c, int l) {
  if (l < c) return 0;
  if (l == 0) return 1;
  return k0_index(q, n, l);
}

std::uint64_t harmonic_dim_formula(std::uint64_t q, int n, int c, int m) {
  if (m < c) return 0;
  if (m == 0) return 1;
  if (c == 0 && m == 1) return q * ((upow(q, n - 1) - 1) / (q - 1));
  if (c == m) return upow(q, (c - 1) * (n - 1)) * ((upow(q, n) - 1) / (q - 1));
  // m > max(c, 1)
  return upow(q, (m - 2) * (n - 1)) * (upow(q, n) - 1) * (upow(q, n - 1) - 1) / (q - 1);
}

Rational phi_inner_formula(std::uint64_t q, int n, int l1, int l2) {
  const int l = std::max(l1, l2);
  if (l == 0) return Rational(1);
  Rational num(q - 1);
  Rational den = Rational(upow(q, (l - 1) * (n - 1))) * Rational(upow(q, n) - 1);
  return num / den;
}

Rational zonal_alpha_formula(std::uint64_t q, int n, int m) {
  if (m == 1) return -Rational(q - 1) / (Rational(q) * Rational(upow(q, n - 1) - 1));
  return -Rational(1) / Rational(upow(q, n - 1) - 1);
}

Rational zonal_alpha_from_gram(std::uint64_t q, int n, int m) {
  // <(1 - a) phi_m + a phi_{m-1}, phi_{m-1}> = (1 - a) g_{m,m-1} + a g_{m-1,m-1} = 0.
  Rational g_top = phi_inner_formula(q, n, m, m - 1);
  Rational g_low = phi_inner_formula(q, n, m - 1, m - 1);
  return -g_top / (g_low - g_top);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Harmonics::Harmonics(const RingLevel& ring, int n, std::uint64_t cap)
    : gl_(ring, n),
      sphere_(ring, n, cap),
      units_(std::make_shared<const UnitGroup>(ring)),
      chars_(psh::characters(units_)),
      k_gens_(verified_generators(gl_, SubgroupSpec::full(), true).gens),
      mir_gens_(verified_generators(gl_, SubgroupSpec::mirabolic(), true).gens),
      kenum_(gl_) {}

cplx Harmonics::inner(const SphereFn& f, const SphereFn& g) const {
  return g.dot(f) / static_cast<double>(sphere_.size());
}

SphereFn Harmonics::translate(const SphereFn& f, const MatK& k) const {
  auto perm = permutation(k);
  SphereFn out(f.size());
  for (std::size_t x = 0; x < perm.size(); ++x) out(static_cast<Eigen::Index>(x)) = f(perm[x]);
  return out;
}

SphereFn Harmonics::phi(const UnitCharacter& chi, int l) const {
  if (l < chi.conductor()) throw ParameterError("phi: level below the conductor");
  if (l > level()) throw ParameterError("phi: level above the working level");
  SphereFn f = SphereFn::Zero(static_cast<Eigen::Index>(sphere_.size()));
  for (std::size_t x = 0; x < sphere_.size(); ++x) {
    if (l == 0) {
      f(static_cast<Eigen::Index>(x)) = 1.0;
    } else if (sphere_.head_valuation(x) >= l) {
      f(static_cast<Eigen::Index>(x)) = chi.value(sphere_.point(x)[static_cast<std::size_t>(n() - 1)]);
    }
  }
  return f;
}

cplx Harmonics::zonal_value(const UnitCharacter& chi, int m, std::size_t x) const {
  const int c = chi.conductor();
  if (m < c || m > level()) throw ParameterError("zonal: need c(chi) <= m <= M");
  if (m == 0) return 1.0;
  const int head = sphere_.head_valuation(x);
  const RingElem xn = sphere_.point(x)[static_cast<std::size_t>(n() - 1)];
  if (head >= m) return chi.value(xn);
  if (m > c && head == m - 1) return to_double(zonal_alpha_formula(q(), n(), m)) * chi.value_or_trivial(xn);
  return 0.0;
}

SphereFn Harmonics::zonal(const UnitCharacter& chi, int m) const {
  SphereFn f(static_cast<Eigen::Index>(sphere_.size()));
  for (std::size_t x = 0; x < sphere_.size(); ++x) f(static_cast<Eigen::Index>(x)) = zonal_value(chi, m, x);
  return f;
}

Subspace Harmonics::chi_level(const UnitCharacter& chi, int l) const {
  if (l < 0 || l > level()) throw ParameterError("chi_level: need 0 <= l <= M");
  const auto size = static_cast<Eigen::Index>(sphere_.size());
  std::vector<MatK> gens =
      l == 0 ? k_gens_ : verified_generators(gl_, SubgroupSpec::principal(l), true).gens;
  const auto& ugens = units_->basis().generators;
  CMat a = CMat::Zero(size * static_cast<Eigen::Index>(gens.size() + ugens.size()), size);
  Eigen::Index row = 0;
  for (const MatK& g : gens) {
    auto perm = permutation(g);
    for (Eigen::Index x = 0; x < size; ++x, ++row) {
      a(row, perm[static_cast<std::size_t>(x)]) += 1.0;
      a(row, x) -= 1.0;
    }
  }
  for (RingElem u : ugens) {
    const cplx w = std::conj(chi.value(u));
    auto perm = permutation(gl_.scalar(u));
    for (Eigen::Index x = 0; x < size; ++x, ++row) {
      a(row, x) += 1.0;
      a(row, perm[static_cast<std::size_t>(x)]) -= w;
    }
  }
  Span k = kernel(a, sphere_.size(), 1.0);
  Subspace s;
  s.basis = k.basis * std::sqrt(static_cast<double>(sphere_.size()));
  s.level = l;
  s.kind = "chi-level";
  s.cert = k.cert;
  return s;
}

std::size_t Harmonics::chi_level_exact_dim(const UnitCharacter& chi, int l) const {
  const std::size_t size = sphere_.size();
  // Cycle through each reduction fibre, then impose f(x) = conj chi(u) f(u x).
  std::vector<MonomialMap> maps;
  MonomialMap fibres;
  fibres.target.resize(size);
  std::map<std::size_t, std::vector<std::uint32_t>> by_fibre;
  if (l == 0) {
    for (std::size_t x = 0; x < size; ++x) by_fibre[0].push_back(static_cast<std::uint32_t>(x));
  } else {
    Sphere lower(ring().at_level(l), n());
    for (std::size_t x = 0; x < size; ++x)
      by_fibre[sphere_.reduce_index(x, lower)].push_back(static_cast<std::uint32_t>(x));
  }
  for (const auto& [key, fib] : by_fibre)
    for (std::size_t i = 0; i < fib.size(); ++i) fibres.target[fib[i]] = fib[(i + 1) % fib.size()];
  maps.push_back(std::move(fibres));
  const std::uint64_t L = units_->exponent();
  for (RingElem u : units_->basis().generators) {
    MonomialMap m;
    m.target.resize(size);
    m.phase.resize(size);
    const std::uint64_t e = chi.eval_index(u);
    for (std::size_t x = 0; x < size; ++x) {
      m.target[x] = static_cast<std::uint32_t>(sphere_.act(x, gl_, gl_.scalar(u)));
      m.phase[x] = (L - e) % L;
    }
    maps.push_back(std::move(m));
  }
  return monomial_invariants(size, maps, L).dim();
}

Subspace Harmonics::harmonic(const UnitCharacter& chi, int m) const {
  const int c = chi.conductor();
  if (m < c || m > level()) throw ParameterError("harmonic: need c(chi) <= m <= M");
  if (m == 0) {
    Subspace s = chi_level(chi, 0);
    s.kind = "harmonic";
    return s;
  }
  const double root = std::sqrt(static_cast<double>(sphere_.size()));
  Subspace top = chi_level(chi, m);
  CMat low = m - 1 >= c ? CMat(chi_level(chi, m - 1).basis / root)
                        : CMat(static_cast<Eigen::Index>(sphere_.size()), 0);
  Span sp = complement(top.basis / root, low);
  Subspace s;
  s.basis = sp.basis * root;
  s.level = m;
  s.kind = "harmonic";
  s.cert = sp.cert;
  return s;
}

CMat Harmonics::action_matrix(const Subspace& s, const MatK& g) const {
  auto perm = permutation(g);
  CMat moved(s.basis.rows(), s.basis.cols());
  for (std::size_t x = 0; x < perm.size(); ++x) moved.row(static_cast<Eigen::Index>(x)) = s.basis.row(perm[x]);
  return s.basis.adjoint() * moved / static_cast<double>(sphere_.size());
}

std::size_t Harmonics::commutant_dimension(const Subspace& s, const std::vector<MatK>& gens,
                                           RankCertificate* cert) const {
  const auto d = static_cast<Eigen::Index>(s.dim());
  if (d == 0) return 0;
  const Eigen::Index d2 = d * d;
  CMat sys = CMat::Zero(d2 * static_cast<Eigen::Index>(gens.size()), d2);
  Eigen::Index base = 0;
  for (const MatK& g : gens) {
    CMat A = action_matrix(s, g);
    // Row (i, j) of vec(T A - A T); unknown T(a, b) sits in column a + b d.
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) {
        const Eigen::Index row = base + i + j * d;
        for (Eigen::Index k = 0; k < d; ++k) {
          sys(row, i + k * d) += A(k, j);
          sys(row, k + j * d) -= A(i, k);
        }
      }
    base += d2;
  }
  // Unitary actions make 1 the natural magnitude of every system here.
  RankCertificate c = certified_rank(sys, 1.0);
  if (cert) *cert = c;
  return static_cast<std::size_t>(d2) - c.rank;
}

Subspace Harmonics::mirabolic_invariants(const Subspace& s) const {
  const auto d = static_cast<Eigen::Index>(s.dim());
  CMat sys(d * static_cast<Eigen::Index>(mir_gens_.size()), d);
  Eigen::Index row = 0;
  for (const MatK& g : mir_gens_) {
    sys.block(row, 0, d, d) = action_matrix(s, g) - CMat::Identity(d, d);
    row += d;
  }
  Span k = kernel(sys, s.dim(), 1.0);
  Subspace out;
  out.basis = s.basis * k.basis;
  out.level = s.level;
  out.kind = "mirabolic-invariant";
  out.cert = k.cert;
  return out;
}

double Harmonics::addition_theorem_residual(const Subspace& h, const SphereFn& zonal, int samples,
                                            std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, sphere_.size() - 1);
  const double dim = static_cast<double>(h.dim());
  double worst = 0;
  for (int t = 0; t < samples; ++t) {
    // The first sample is x = e_n, k = 1, where the identity reads sum |Q_j(e_n)|^2 = dim.
    const std::size_t x = t == 0 ? sphere_.e_n() : pick(rng);
    const MatK k = t == 0 ? gl_.identity() : random_k(rng);
    const std::size_t y = sphere_.act(sphere_.e_n(), gl_, k);
    const std::size_t z = sphere_.act(x, gl_, gl_.inv(k));
    cplx lhs = h.basis.row(static_cast<Eigen::Index>(x)).dot(h.basis.row(static_cast<Eigen::Index>(y)));
    // Eigen's dot conjugates its first argument.
    lhs = std::conj(lhs);
    worst = std::max(worst, std::abs(lhs - dim * zonal(static_cast<Eigen::Index>(z))));
  }
  return worst;
}

double Harmonics::reproducing_kernel_residual(const Subspace& h, const SphereFn& zonal, int samples,
                                              std::mt19937_64& rng) const {
  const double dim = static_cast<double>(h.dim());
  double worst = 0;
  for (int t = 0; t < samples; ++t) {
    const MatK k = t == 0 ? gl_.identity() : random_k(rng);
    const std::size_t y = sphere_.act(sphere_.e_n(), gl_, k);
    auto perm = permutation(k);
    for (Eigen::Index j = 0; j < h.basis.cols(); ++j) {
      cplx ip = 0;
      for (std::size_t x = 0; x < perm.size(); ++x)
        ip += h.basis(perm[x], j) * std::conj(zonal(static_cast<Eigen::Index>(x)));
      ip /= static_cast<double>(perm.size());
      worst = std::max(worst, std::abs(h.basis(static_cast<Eigen::Index>(y), j) - dim * ip));
    }
  }
  return worst;
}

double Harmonics::zonal_symmetry_residual(const SphereFn& zonal, int samples, std::mt19937_64& rng) const {
  double worst = 0;
  for (int t = 0; t < samples; ++t) {
    const MatK k = random_k(rng);
    const std::size_t a = sphere_.act(sphere_.e_n(), gl_, k);
    const std::size_t b = sphere_.act(sphere_.e_n(), gl_, gl_.inv(k));
    worst = std::max(worst, std::abs(zonal(static_cast<Eigen::Index>(a)) -
                                     std::conj(zonal(static_cast<Eigen::Index>(b)))));
  }
  return worst;
}

cplx Harmonics::idempotent_k0_sum(const UnitCharacter& chi, int m, const MatK& k) const {
  const std::size_t y = sphere_.act(sphere_.e_n(), gl_, gl_.inv(k));
  const int c = chi.conductor();
  cplx total = 0;
  for (int l = c; l <= m; ++l)
    total += static_cast<double>(harmonic_dim_formula(q(), n(), c, l)) * zonal_value(chi, l, y);
  return total;
}

cplx Harmonics::idempotent_k0_target(const UnitCharacter& chi, int m, const MatK& k) const {
  if (m == 0) return chi.is_trivial() ? 1.0 : 0.0;
  if (!is_member(gl_, k, SubgroupSpec::k0(m))) return 0.0;
  return std::conj(chi.value(k(n() - 1, n() - 1))) * static_cast<double>(k0_index(q(), n(), m));
}

cplx Harmonics::idempotent_k1_sum(int m, const MatK& k) const {
  const std::size_t y = sphere_.act(sphere_.e_n(), gl_, gl_.inv(k));
  cplx total = 0;
  for (int l = 0; l <= m; ++l)
    for (const auto& chi : chars_) {
      const int c = chi.conductor();
      if (c > l) continue;
      total += static_cast<double>(harmonic_dim_formula(q(), n(), c, l)) * zonal_value(chi, l, y);
    }
  return total;
}

double Harmonics::idempotent_k1_target(int m, const MatK& k) const {
  if (!is_member(gl_, k, SubgroupSpec::k1(m))) return 0.0;
  return static_cast<double>(k1_index(q(), n(), m));
}

}  // namespace psh
