#include "psh/matgroup.hpp"

#include <stdexcept>
#include <unordered_set>

namespace psh {

std::string SubgroupSpec::name() const {
  switch (kind) {
    case SubgroupKind::K: return "K";
    case SubgroupKind::Kprin: return "K(p^" + std::to_string(level) + ")";
    case SubgroupKind::K1: return "K1(p^" + std::to_string(level) + ")";
    case SubgroupKind::K0: return "K0(p^" + std::to_string(level) + ")";
    case SubgroupKind::Kmirab: return "Kmirab";
  }
  return "?";
}

namespace {

bool divisible(const RingLevel& r, RingElem x, int l) { return r.valuation(x) >= l; }

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

bool is_member(const GL& gl, const MatK& k, const SubgroupSpec& s) {
  const RingLevel& r = gl.ring();
  const int n = gl.n();
  if (!gl.invertible(k)) return false;
  const int l = s.level;
  switch (s.kind) {
    case SubgroupKind::K: return true;
    case SubgroupKind::Kprin:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          RingElem x = i == j ? r.sub(k(i, j), r.one()) : k(i, j);
          if (!divisible(r, x, l)) return false;
        }
      return true;
    case SubgroupKind::K1:
      if (!divisible(r, r.sub(k(n - 1, n - 1), r.one()), l)) return false;
      [[fallthrough]];
    case SubgroupKind::K0:
      for (int j = 0; j + 1 < n; ++j)
        if (!divisible(r, k(n - 1, j), l)) return false;
      return true;
    case SubgroupKind::Kmirab:
      for (int j = 0; j + 1 < n; ++j)
        if (!(k(n - 1, j) == r.zero())) return false;
      return k(n - 1, n - 1) == r.one();
  }
  return false;
}

std::uint64_t gl_order(std::uint64_t q, int n, int M) {
  std::uint64_t qn = upow(q, n);
  std::uint64_t o = upow(q, (M - 1) * n * n);
  for (int i = 0; i < n; ++i) o *= qn - upow(q, i);
  return o;
}

std::uint64_t subgroup_order(const GL& gl, const SubgroupSpec& s) {
  const std::uint64_t q = gl.ring().q();
  const int n = gl.n();
  const int M = gl.level();
  const std::uint64_t full = gl_order(q, n, M);
  const std::uint64_t qn = upow(q, n);
  const int l = s.level;
  switch (s.kind) {
    case SubgroupKind::K: return full;
    case SubgroupKind::Kprin: return l == 0 ? full : upow(q, (M - l) * n * n);
    case SubgroupKind::K1: return l == 0 ? full : full / (upow(q, (l - 1) * n) * (qn - 1));
    case SubgroupKind::K0: return l == 0 ? full : full / (upow(q, (l - 1) * (n - 1)) * ((qn - 1) / (q - 1)));
    case SubgroupKind::Kmirab: return full / (upow(q, (M - 1) * n) * (qn - 1));
  }
  return 0;
}

std::vector<MatK> subgroup_generators(const GL& gl, const SubgroupSpec& s) {
  const RingLevel& r = gl.ring();
  const int n = gl.n();
  const auto adds = r.additive_generators();
  UnitGroup units(r);
  std::vector<MatK> out;
  auto levi_block = [&](int size) {
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j)
        if (i != j)
          for (RingElem a : adds) out.push_back(gl.elementary(i, j, a));
    for (int i = 0; i < size; ++i)
      for (RingElem g : units.basis().generators) out.push_back(gl.diag_unit(i, g));
  };
  SubgroupSpec spec = s;
  if ((s.kind == SubgroupKind::Kprin || s.kind == SubgroupKind::K0 || s.kind == SubgroupKind::K1) && s.level == 0)
    spec = SubgroupSpec::full();
  if (spec.level > r.level()) throw ParameterError("subgroup level exceeds working level");
  switch (spec.kind) {
    case SubgroupKind::K:
      levi_block(n);
      break;
    case SubgroupKind::Kprin:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j)
            for (RingElem a : adds)
              if (r.valuation(a) >= spec.level) out.push_back(gl.elementary(i, j, a));
      for (int i = 0; i < n; ++i)
        for (RingElem g : units.filtration_generators(spec.level)) out.push_back(gl.diag_unit(i, g));
      break;
    case SubgroupKind::K0:
    case SubgroupKind::K1:
      levi_block(n - 1);
      for (int i = 0; i + 1 < n; ++i)
        for (RingElem a : adds) {
          out.push_back(gl.elementary(i, n - 1, a));
          if (r.valuation(a) >= spec.level) out.push_back(gl.elementary(n - 1, i, a));
        }
      for (RingElem g : units.filtration_generators(spec.kind == SubgroupKind::K0 ? 0 : spec.level))
        out.push_back(gl.diag_unit(n - 1, g));
      break;
    case SubgroupKind::Kmirab:
      levi_block(n - 1);
      for (int i = 0; i + 1 < n; ++i)
        for (RingElem a : adds) out.push_back(gl.elementary(i, n - 1, a));
      break;
  }
  return out;
}

SchreierSims::SchreierSims(const GL& gl, std::vector<MatK> generators) : gl_(gl) {
  const MatK id = gl_.identity();
  for (auto& g : generators)
    if (!(g == id)) gens_.push_back(g);
  build();
}

std::uint64_t SchreierSims::vcode(const RowVec& x) const {
  std::uint64_t c = 0;
  for (int i = 0; i < gl_.n(); ++i) c = c * gl_.ring().size() + x[static_cast<std::size_t>(i)].v;
  return c;
}

void SchreierSims::rebuild_orbit(std::size_t level) {
  Level& L = levels_[level];
  L.where.clear();
  L.orbit.clear();
  L.trans.clear();
  L.trans_inv.clear();
  RowVec b = gl_.basis_vector(static_cast<int>(level));
  L.where.emplace(vcode(b), 0);
  L.orbit.push_back(b);
  L.trans.push_back(gl_.identity());
  L.trans_inv.push_back(gl_.identity());
  for (std::size_t i = 0; i < L.orbit.size(); ++i) {
    for (const MatK& s : L.gens) {
      RowVec y = gl_.row_times(L.orbit[i], s);
      auto [it, fresh] = L.where.emplace(vcode(y), static_cast<std::uint32_t>(L.orbit.size()));
      if (!fresh) continue;
      L.orbit.push_back(y);
      MatK t = gl_.mul(L.trans[i], s);
      L.trans.push_back(t);
      L.trans_inv.push_back(gl_.inv(t));
    }
  }
}

std::pair<MatK, std::size_t> SchreierSims::strip(MatK g, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Level& L = levels_[i];
    auto it = L.where.find(vcode(gl_.row_times(L.orbit[0], g)));
    if (it == L.where.end()) return {g, i};
    g = gl_.mul(g, L.trans_inv[it->second]);
  }
  return {g, levels_.size()};
}

void SchreierSims::build() {
  const std::size_t n = static_cast<std::size_t>(gl_.n());
  levels_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (const MatK& g : gens_) {
      bool fixes = true;
      for (std::size_t j = 0; j < i && fixes; ++j) {
        RowVec b = gl_.basis_vector(static_cast<int>(j));
        fixes = gl_.row_times(b, g) == b;
      }
      if (fixes) levels_[i].gens.push_back(g);
    }
    rebuild_orbit(i);
  }
  const MatK id = gl_.identity();
  long i = static_cast<long>(n) - 1;
  while (i >= 0) {
    Level& L = levels_[static_cast<std::size_t>(i)];
    bool extended = false;
    for (std::size_t p = 0; p < L.orbit.size() && !extended; ++p) {
      for (std::size_t si = 0; si < L.gens.size(); ++si) {
        const MatK& s = L.gens[si];
        auto slot = L.where.at(vcode(gl_.row_times(L.orbit[p], s)));
        MatK h = gl_.mul(gl_.mul(L.trans[p], s), L.trans_inv[slot]);
        auto [res, j] = strip(h, static_cast<std::size_t>(i) + 1);
        if (j == n) {
          if (!(res == id)) throw std::logic_error("sifted element fixes the basis but is not the identity");
          continue;
        }
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
          levels_[l].gens.push_back(res);
          rebuild_orbit(l);
        }
        i = static_cast<long>(j);
        extended = true;
        break;
      }
    }
    if (!extended) --i;
  }
}

std::uint64_t SchreierSims::order() const {
  std::uint64_t o = 1;
  for (const auto& L : levels_) o *= L.orbit.size();
  return o;
}

std::vector<std::size_t> SchreierSims::orbit_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& L : levels_) out.push_back(L.orbit.size());
  return out;
}

bool SchreierSims::contains(const MatK& k) const {
  if (!gl_.invertible(k)) return false;
  return strip(k, 0).second == levels_.size();
}

MatK SchreierSims::random(std::mt19937_64& rng) const {
  MatK g = gl_.identity();
  for (std::size_t i = levels_.size(); i-- > 0;) {
    const Level& L = levels_[i];
    std::uniform_int_distribution<std::size_t> pick(0, L.orbit.size() - 1);
    g = gl_.mul(g, L.trans[pick(rng)]);
  }
  return g;
}

std::vector<MatK> trim_generators(const GL& gl, std::vector<MatK> gens) {
  const std::uint64_t target = SchreierSims(gl, gens).order();
  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<MatK> rest = gens;
    rest.erase(rest.begin() + static_cast<long>(i));
    if (SchreierSims(gl, rest).order() == target) gens = std::move(rest);
  }
  return gens;
}

VerifiedGenerators verified_generators(const GL& gl, const SubgroupSpec& s, bool trim) {
  auto gens = subgroup_generators(gl, s);
  for (const auto& g : gens)
    if (!is_member(gl, g, s)) throw std::logic_error("proposed generator lies outside " + s.name());
  SchreierSims ss(gl, gens);
  const std::uint64_t expected = subgroup_order(gl, s);
  if (ss.order() != expected)
    throw std::logic_error(s.name() + ": generated order " + std::to_string(ss.order()) + " != " +
                           std::to_string(expected));
  if (trim) gens = trim_generators(gl, std::move(gens));
  return {std::move(gens), expected};
}

std::vector<MatK> closure(const GL& gl, const std::vector<MatK>& gens, std::uint64_t budget) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<MatK> out{gl.identity()};
  seen.insert(gl.key(out[0]));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const MatK& g : gens) {
      MatK h = gl.mul(out[i], g);
      if (seen.insert(gl.key(h)).second) {
        if (out.size() >= budget) throw BudgetExceeded("closure exceeded budget of " + std::to_string(budget));
        out.push_back(h);
      }
    }
  }
  return out;
}

KEnumerator::KEnumerator(const GL& gl) : gl_(gl) {
  const int n = gl.n();
  const std::uint64_t q = gl.ring().q();
  const std::uint64_t count = upow(q, n * n);
  for (std::uint64_t c = 0; c < count; ++c) {
    MatK a;
    std::uint64_t r = c;
    for (int i = n - 1; i >= 0; --i)
      for (int j = n - 1; j >= 0; --j) {
        a(i, j) = {static_cast<std::uint32_t>(r % q)};
        r /= q;
      }
    if (gl.invertible(a)) residues_.push_back(a);
  }
  lifts_ = upow(gl.ring().q_pow(gl.level() - 1), n * n);
}

MatK KEnumerator::at(std::uint64_t index) const {
  if (index >= size()) throw std::out_of_range("KEnumerator index");
  MatK a = residues_[index / lifts_];
  std::uint64_t l = index % lifts_;
  const std::uint64_t span = gl_.ring().q_pow(gl_.level() - 1);
  const std::uint32_t q = gl_.ring().q();
  for (int i = 0; i < gl_.n(); ++i)
    for (int j = 0; j < gl_.n(); ++j) {
      a(i, j).v += q * static_cast<std::uint32_t>(l % span);
      l /= span;
    }
  return a;
}

MatK KEnumerator::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint64_t> pick(0, size() - 1);
  return at(pick(rng));
}

MatK double_coset_rep(const GL& gl, int l) {
  const int n = gl.n();
  MatK u = gl.identity();
  if (l < gl.level()) u(n - 1, n - 2) = gl.ring().shift_up(gl.ring().one(), l);
  return u;
}

int double_coset_index(const GL& gl, const MatK& k, int m) {
  int v = m;
  for (int j = 0; j + 1 < gl.n(); ++j) v = std::min(v, gl.ring().valuation(k(gl.n() - 1, j)));
  return v;
}

std::vector<RingElem> chang_beta(const GL& gl, const MatK& k) {
  const RingLevel& r = gl.ring();
  const int n = gl.n();
  const int s = n - 1;
  const std::uint64_t q = r.q();
  const std::uint64_t count = upow(q, s);
  GL sub(r, s);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<RingElem> beta(static_cast<std::size_t>(s));
    std::uint64_t c = code;
    for (int i = s - 1; i >= 0; --i) {
      beta[static_cast<std::size_t>(i)] = {static_cast<std::uint32_t>(c % q)};
      c /= q;
    }
    MatK a;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        a(i, j) = r.sub(k(i, j), r.mul(beta[static_cast<std::size_t>(i)], k(n - 1, j)));
    if (r.is_unit(sub.det(a))) return beta;
  }
  throw std::logic_error("no beta makes det(a - beta c) a unit");
}

namespace {

// alpha in GL_{n-1} (embedded top-left) whose inverse has last row y; y must
// have a unit entry.
MatK alpha_with_last_inverse_row(const GL& gl, const std::vector<RingElem>& y) {
  const RingLevel& r = gl.ring();
  const int s = gl.n() - 1;
  int unit_col = -1;
  for (int j = 0; j < s; ++j)
    if (r.is_unit(y[static_cast<std::size_t>(j)])) {
      unit_col = j;
      break;
    }
  if (unit_col < 0) throw std::logic_error("row has no unit entry");
  MatK beta = gl.identity();  // last diagonal entry stays 1
  int row = 0;
  for (int i = 0; i < s; ++i) {
    if (i == unit_col) continue;
    for (int j = 0; j < s; ++j) beta(row, j) = r.zero();
    beta(row, i) = r.one();
    ++row;
  }
  for (int j = 0; j < s; ++j) beta(s - 1, j) = y[static_cast<std::size_t>(j)];
  return gl.inv(beta);
}

}  // namespace

DoubleCosetWitness double_coset_witness(const GL& gl, const MatK& k, int m) {
  const RingLevel& r = gl.ring();
  const int n = gl.n();
  const int s = n - 1;
  if (m > gl.level()) throw ParameterError("double coset level exceeds working level");
  const int l = double_coset_index(gl, k, m);
  if (l == m) return {gl.mul(k, gl.inv(double_coset_rep(gl, m))), m, gl.identity()};

  GL sub(r, s);
  MatK a, b, c;  // a: s x s, b: column s x 1 stored at (i,0), c: row 1 x s stored at (0,j)
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) a(i, j) = k(i, j);
  for (int i = 0; i < s; ++i) b(i, 0) = k(i, n - 1);
  for (int j = 0; j < s; ++j) c(0, j) = k(n - 1, j);
  const RingElem d = k(n - 1, n - 1);

  MatK left = gl.identity();
  MatK ap = a;
  MatK bp = b;
  if (l == 0) {
    auto beta = chang_beta(gl, k);
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < s; ++j) ap(i, j) = r.sub(a(i, j), r.mul(beta[static_cast<std::size_t>(i)], c(0, j)));
      bp(i, 0) = r.sub(b(i, 0), r.mul(beta[static_cast<std::size_t>(i)], d));
      left(i, n - 1) = beta[static_cast<std::size_t>(i)];
    }
  }
  MatK ap_inv = sub.inv(ap);
  // y = w^{-l} c a'^{-1}
  std::vector<RingElem> y(static_cast<std::size_t>(s));
  for (int j = 0; j < s; ++j) {
    RingElem t = r.zero();
    for (int i = 0; i < s; ++i) t = r.add(t, r.mul(c(0, i), ap_inv(i, j)));
    y[static_cast<std::size_t>(j)] = r.shift_down(t, l);
  }
  MatK alpha = alpha_with_last_inverse_row(gl, y);
  MatK alpha_inv = gl.inv(alpha);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) left(i, j) = alpha(i, j);

  // right = [[alpha^{-1} a', alpha^{-1} b'], [0, d - c a'^{-1} b']]
  MatK right;
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      RingElem t = r.zero();
      for (int h = 0; h < s; ++h) t = r.add(t, r.mul(alpha_inv(i, h), ap(h, j)));
      right(i, j) = t;
    }
    RingElem t = r.zero();
    for (int h = 0; h < s; ++h) t = r.add(t, r.mul(alpha_inv(i, h), bp(h, 0)));
    right(i, n - 1) = t;
  }
  RingElem cab = r.zero();
  for (int j = 0; j < s; ++j) {
    RingElem t = r.zero();
    for (int i = 0; i < s; ++i) t = r.add(t, r.mul(c(0, i), ap_inv(i, j)));
    cab = r.add(cab, r.mul(t, bp(j, 0)));
  }
  right(n - 1, n - 1) = r.sub(d, cab);
  return {left, l, right};
}

std::pair<MatK, MatK> mirabolic_principal_split(const GL& gl, const MatK& k) {
  const RingLevel& r = gl.ring();
  const int n = gl.n();
  const int s = n - 1;
  const RingElem dinv = r.inv(k(n - 1, n - 1));
  MatK mir = gl.identity();
  for (int i = 0; i < s; ++i) {
    RingElem bd = r.mul(k(i, n - 1), dinv);
    mir(i, n - 1) = bd;
    for (int j = 0; j < s; ++j) mir(i, j) = r.sub(k(i, j), r.mul(bd, k(n - 1, j)));
  }
  MatK prin = gl.identity();
  for (int j = 0; j < n; ++j) prin(n - 1, j) = k(n - 1, j);
  return {mir, prin};
}

}  // namespace psh
