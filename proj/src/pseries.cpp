#include "psh/pseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace psh {

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

CanonicalCoset canonical_coset(const GL& gl, const MatK& g) {
  const RingLevel& R = gl.ring();
  const int n = gl.n();
  CanonicalCoset out{g, std::vector<RingElem>(static_cast<std::size_t>(n))};
  MatK& r = out.rep;
  std::vector<int> pcol(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int i = n - 1; i >= 0; --i) {
    for (int j = n - 1; j > i; --j) {
      const RingElem c = r(i, pcol[static_cast<std::size_t>(j)]);
      if (c.v == 0) continue;
      for (int col = 0; col < n; ++col) r(i, col) = R.sub(r(i, col), R.mul(c, r(j, col)));
    }
    int pc = -1;
    for (int col = n - 1; col >= 0; --col)
      if (!used[static_cast<std::size_t>(col)] && R.is_unit(r(i, col))) {
        pc = col;
        break;
      }
    if (pc < 0) throw std::domain_error("canonical_coset: matrix is not invertible");
    pcol[static_cast<std::size_t>(i)] = pc;
    used[static_cast<std::size_t>(pc)] = true;
    const RingElem piv = r(i, pc);
    out.pivots[static_cast<std::size_t>(i)] = piv;
    const RingElem inv = R.inv(piv);
    for (int col = 0; col < n; ++col) r(i, col) = R.mul(inv, r(i, col));
  }
  return out;
}

std::uint64_t flag_count_formula(std::uint64_t q, int n, int M) {
  const std::uint64_t units = upow(q, M - 1) * (q - 1);
  const std::uint64_t borel = upow(units, n) * upow(q, M * n * (n - 1) / 2);
  return gl_order(q, n, M) / borel;
}

std::vector<MatK> flag_cosets(const GL& gl, const std::vector<MatK>& gens, std::uint64_t budget) {
  std::unordered_map<std::uint64_t, std::uint32_t> seen;
  std::vector<MatK> reps{canonical_coset(gl, gl.identity()).rep};
  seen.emplace(gl.key(reps[0]), 0);
  for (std::size_t h = 0; h < reps.size(); ++h)
    for (const MatK& g : gens) {
      MatK r = canonical_coset(gl, gl.mul(reps[h], g)).rep;
      if (seen.emplace(gl.key(r), static_cast<std::uint32_t>(reps.size())).second) {
        if (reps.size() >= budget) throw BudgetExceeded("flag_cosets: coset budget exceeded");
        reps.push_back(r);
      }
    }
  return reps;
}

std::uint64_t binomial(long long a, long long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  std::uint64_t r = 1;
  for (long long i = 1; i <= b; ++i) r = r * static_cast<std::uint64_t>(a - b + i) / static_cast<std::uint64_t>(i);
  return r;
}

PSeriesModel::PSeriesModel(const GL& gl, std::vector<UnitCharacter> chis, const std::vector<MatK>& k_gens,
                           std::uint64_t budget)
    : gl_(gl), chis_(std::move(chis)), k_gens_(k_gens) {
  if (static_cast<int>(chis_.size()) != gl_.n())
    throw ParameterError("principal series: need one character per diagonal entry");
  for (const auto& c : chis_)
    if (!(c.group().ring() == gl_.ring()))
      throw ParameterError("principal series: characters must live on the working ring");
  modulus_ = chis_[0].group().exponent();
  reps_ = flag_cosets(gl_, k_gens_, budget);
  for (std::size_t i = 0; i < reps_.size(); ++i) where_.emplace(gl_.key(reps_[i]), static_cast<std::uint32_t>(i));
}

int PSeriesModel::declared_conductor() const {
  int c = 0;
  for (const auto& chi : chis_) c += chi.conductor();
  return c;
}

UnitCharacter PSeriesModel::central_character() const {
  UnitCharacter w = chis_[0];
  for (std::size_t j = 1; j < chis_.size(); ++j) w = w * chis_[j];
  return w;
}

std::size_t PSeriesModel::index_of(const MatK& rep) const {
  auto it = where_.find(gl_.key(rep));
  if (it == where_.end()) throw std::logic_error("principal series: coset outside the enumerated model");
  return it->second;
}

std::uint64_t PSeriesModel::phase_of(const std::vector<RingElem>& pivots) const {
  std::uint64_t ph = 0;
  for (std::size_t j = 0; j < pivots.size(); ++j) ph += chis_[j].eval_index(pivots[j]);
  return ph % modulus_;
}

MonomialMap PSeriesModel::action(const MatK& k) const {
  MonomialMap m;
  m.target.resize(reps_.size());
  m.phase.resize(reps_.size());
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    CanonicalCoset c = canonical_coset(gl_, gl_.mul(reps_[i], k));
    m.target[i] = static_cast<std::uint32_t>(index_of(c.rep));
    m.phase[i] = phase_of(c.pivots);
  }
  return m;
}

CVec PSeriesModel::apply(const MatK& k, const CVec& v) const {
  MonomialMap m = action(k);
  CVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out(i) = root_of_unity(m.phase[static_cast<std::size_t>(i)], modulus_) * v(m.target[static_cast<std::size_t>(i)]);
  return out;
}

cplx PSeriesModel::inner(const CVec& v, const CVec& w) const {
  return w.dot(v) / static_cast<double>(v.size());
}

InvariantSpace PSeriesModel::solve(const std::vector<MatK>& gens, const std::vector<std::uint64_t>& twist) const {
  std::vector<MonomialMap> maps;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    MonomialMap m = action(gens[g]);
    if (!twist.empty())
      for (auto& p : m.phase) p = (p + twist[g]) % modulus_;
    maps.push_back(std::move(m));
  }
  const auto size = static_cast<Eigen::Index>(reps_.size());
  CMat sys = CMat::Zero(size * static_cast<Eigen::Index>(maps.size()), size);
  Eigen::Index row = 0;
  for (const auto& m : maps)
    for (Eigen::Index i = 0; i < size; ++i, ++row) {
      sys(row, m.target[static_cast<std::size_t>(i)]) += root_of_unity(m.phase[static_cast<std::size_t>(i)], modulus_);
      sys(row, i) -= 1.0;
    }
  InvariantSpace out;
  out.exact = monomial_invariants(reps_.size(), maps, modulus_);
  out.numeric = kernel(sys, reps_.size(), 1.0);
  return out;
}

InvariantSpace PSeriesModel::invariants(const SubgroupSpec& s) const {
  return solve(verified_generators(gl_, s, true).gens, {});
}

InvariantSpace PSeriesModel::k0_equivariant(int l) const {
  const UnitCharacter w = central_character();
  if (l < w.conductor() || l > level()) throw ParameterError("k0_equivariant: need c(chi_pi) <= l <= M");
  std::vector<MatK> gens = verified_generators(gl_, SubgroupSpec::k0(l), true).gens;
  std::vector<std::uint64_t> twist;
  const int last = n() - 1;
  for (const MatK& g : gens) {
    const RingElem d = g(last, last);
    // Solve conj(chi_pi(d)) pi(g) v = v.
    const std::uint64_t idx = w.is_trivial() ? 0 : w.eval_index(d) % modulus_;
    twist.push_back((modulus_ - idx) % modulus_);
  }
  return solve(gens, twist);
}

double PSeriesModel::unitarity_residual(std::mt19937_64& rng) const {
  std::normal_distribution<double> nd;
  CVec v(static_cast<Eigen::Index>(reps_.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(nd(rng), nd(rng));
  double worst = 0;
  for (const MatK& g : k_gens_) {
    MonomialMap m = action(g);
    std::vector<bool> hit(reps_.size(), false);
    for (auto t : m.target) {
      if (hit[t]) return std::numeric_limits<double>::infinity();
      hit[t] = true;
    }
    worst = std::max(worst, std::abs(apply(g, v).norm() - v.norm()));
  }
  return worst;
}

ConductorScan scan_conductor(const PSeriesModel& model) {
  ConductorScan s;
  const int c0 = model.central_character().conductor();
  for (int l = 0; l <= model.level(); ++l) {
    InvariantSpace inv = model.invariants(SubgroupSpec::k1(l));
    s.k1_dims.push_back(inv.exact.dim());
    s.k1_dims_numeric.push_back(inv.numeric.dim());
    s.k0_dims.push_back(l >= c0 ? model.k0_equivariant(l).exact.dim() : 0);
    s.graded.push_back(l == 0 ? s.k1_dims[0] : s.k1_dims[static_cast<std::size_t>(l)] -
                                                   s.k1_dims[static_cast<std::size_t>(l - 1)]);
    if (s.empirical_conductor < 0 && inv.exact.dim() > 0) s.empirical_conductor = l;
  }
  return s;
}

CVec newform(const PSeriesModel& model, const ConductorScan& scan) {
  const int c = model.declared_conductor();
  if (scan.empirical_conductor != c) {
    std::ostringstream os;
    os << "newform: declared conductor " << c << " but first K_1 invariants at level "
       << scan.empirical_conductor;
    throw std::logic_error(os.str());
  }
  InvariantSpace inv = model.invariants(SubgroupSpec::k1(c));
  if (inv.exact.dim() != 1 || !inv.agree()) {
    std::ostringstream os;
    os << "newform: K_1 invariants at the conductor have dimension " << inv.exact.dim() << " (exact), "
       << inv.numeric.dim() << " (numeric)";
    throw std::logic_error(os.str());
  }
  CMat v = inv.exact.dense(model.dim());
  return v.col(0) * std::sqrt(static_cast<double>(model.dim()));
}

double newform_equivariance_residual(const PSeriesModel& model, const CVec& v) {
  const UnitCharacter w = model.central_character();
  const int last = model.n() - 1;
  double worst = 0;
  for (const MatK& g : verified_generators(model.gl(), SubgroupSpec::k0(model.declared_conductor()), true).gens) {
    const cplx lambda = w.value_or_trivial(g(last, last));
    worst = std::max(worst, (model.apply(g, v) - lambda * v).norm());
  }
  return worst;
}

cplx matrix_coefficient_formula(const GL& gl, int c_pi, const UnitCharacter& chi_pi, const MatK& k) {
  const RingElem d = k(gl.n() - 1, gl.n() - 1);
  if (is_member(gl, k, SubgroupSpec::k0(c_pi))) return chi_pi.value_or_trivial(d);
  if (c_pi > chi_pi.conductor() && is_member(gl, k, SubgroupSpec::k0(c_pi - 1)))
    return to_double(zonal_alpha_formula(gl.ring().q(), gl.n(), c_pi)) * chi_pi.value_or_trivial(d);
  return 0.0;
}

cplx matrix_coefficient(const PSeriesModel& model, const CVec& v, const MatK& k) {
  return model.inner(model.apply(k, v), v) / model.inner(v, v);
}

CVec vector_from_harmonic_exhaustive(const PSeriesModel& model, const Harmonics& h, const SphereFn& P,
                                     std::size_t dim_tau, const CVec& vnew) {
  const GL& gl = h.gl();
  const Sphere& S = h.sphere();
  const KEnumerator& ke = h.k_enumerator();
  CVec out = CVec::Zero(vnew.size());
  for (std::uint64_t i = 0; i < ke.size(); ++i) {
    const MatK k = ke.at(i);
    const cplx w = P(static_cast<Eigen::Index>(S.act(S.e_n(), gl, gl.inv(k))));
    if (w == cplx(0)) continue;
    out += w * model.apply(k, vnew);
  }
  return out * (static_cast<double>(dim_tau) / static_cast<double>(ke.size()));
}

MatK sphere_section(const GL& gl, const SpherePoint& x) {
  const int n = gl.n();
  int j = -1;
  for (int i = n - 1; i >= 0; --i)
    if (gl.ring().is_unit(x[static_cast<std::size_t>(i)])) {
      j = i;
      break;
    }
  if (j < 0) throw std::domain_error("sphere_section: point has no unit coordinate");
  MatK s{};
  int row = 0;
  for (int i = 0; i < n; ++i)
    if (i != j) s(row++, i) = gl.ring().one();
  for (int i = 0; i < n; ++i) s(n - 1, i) = x[static_cast<std::size_t>(i)];
  return s;
}

CVec vector_from_harmonic(const PSeriesModel& model, const Harmonics& h, const SphereFn& P,
                          std::size_t dim_tau, const CVec& vnew) {
  const GL& gl = h.gl();
  const Sphere& S = h.sphere();
  CVec out = CVec::Zero(vnew.size());
  for (std::size_t x = 0; x < S.size(); ++x) {
    const cplx w = P(static_cast<Eigen::Index>(x));
    if (w == cplx(0)) continue;
    out += w * model.apply(gl.inv(sphere_section(gl, S.point(x))), vnew);
  }
  return out * (static_cast<double>(dim_tau) / static_cast<double>(S.size()));
}

Span k_span(const PSeriesModel& model, const CVec& v) {
  CMat q = v.normalized();
  for (;;) {
    const auto d = q.cols();
    CMat cols(q.rows(), d * static_cast<Eigen::Index>(1 + model.k_generators().size()));
    cols.leftCols(d) = q;
    Eigen::Index at = d;
    for (const MatK& g : model.k_generators()) {
      MonomialMap m = model.action(g);
      for (Eigen::Index j = 0; j < d; ++j, ++at)
        for (Eigen::Index i = 0; i < q.rows(); ++i)
          cols(i, at) = root_of_unity(m.phase[static_cast<std::size_t>(i)], model.modulus()) *
                        q(m.target[static_cast<std::size_t>(i)], j);
    }
    Span s = column_span(cols, 1.0);
    if (static_cast<Eigen::Index>(s.dim()) == d) return s;
    q = s.basis;
  }
}

}  // namespace psh
