#include "psh/ring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace psh {

namespace {

constexpr std::uint32_t kTableLimit = 1024;   // ring sizes with full add/mul tables
constexpr std::uint64_t kMaxRingSize = 1u << 30;

using Poly = std::vector<int>;  // little-endian over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  int lead_inv = 1;
  for (int x = 1; x < p; ++x)
    if ((b.back() * x) % p == 1) lead_inv = x;
  while (a.size() >= b.size()) {
    int coef = (a.back() * lead_inv) % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = ((a[shift + i] - coef * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

// Irreducible iff no monic factor of degree 1..deg/2.
bool irreducible(const Poly& g, int p) {
  int deg = static_cast<int>(g.size()) - 1;
  if (deg < 1) return false;
  for (int d = 1; 2 * d <= deg; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      Poly h(static_cast<std::size_t>(d) + 1);
      long long c = code;
      for (int i = 0; i < d; ++i) {
        h[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
        c /= p;
      }
      h[static_cast<std::size_t>(d)] = 1;
      if (poly_mod(g, h, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(int p, int f) {
  long long count = 1;
  for (int i = 0; i < f; ++i) count *= p;
  for (long long code = 0; code < count; ++code) {
    Poly g(static_cast<std::size_t>(f) + 1);
    long long c = code;
    for (int i = 0; i < f; ++i) {
      g[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
      c /= p;
    }
    g[static_cast<std::size_t>(f)] = 1;
    if (irreducible(g, p)) return g;
  }
  throw ParameterError("no irreducible polynomial found");
}

std::uint64_t lcm64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

struct RingLevel::Tables {
  // F_q arithmetic on residue digits (laurent branch).
  std::vector<std::uint32_t> fq_add, fq_mul, fq_neg;
  // Whole-ring tables when size <= kTableLimit.
  std::vector<std::uint32_t> add, mul;
};

std::string to_string(Branch b) { return b == Branch::padic ? "padic" : "laurent"; }

Branch parse_branch(const std::string& s) {
  if (s == "padic") return Branch::padic;
  if (s == "laurent") return Branch::laurent;
  throw ParameterError("unknown branch '" + s + "'");
}

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

RootOfUnity RootOfUnity::make(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("root of unity needs positive order");
  num %= den;
  if (num < 0) num += den;
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = den;
  return {num / g, den / g};
}

RootOfUnity RootOfUnity::operator*(RootOfUnity o) const {
  std::int64_t den_l = std::lcm(den, o.den);
  return make(num * (den_l / den) + o.num * (den_l / o.den), den_l);
}

RootOfUnity RootOfUnity::conj() const { return make(-num, den); }

std::complex<double> RootOfUnity::value() const {
  if (num == 0) return {1.0, 0.0};
  // Exact at the quarter turns, which keeps real characters real.
  if (2 * num == den) return {-1.0, 0.0};
  if (4 * num == den) return {0.0, 1.0};
  if (4 * num == 3 * den) return {0.0, -1.0};
  double ang = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(ang), std::sin(ang)};
}

RingLevel RingLevel::make(Branch branch, int p, int f, int m, std::vector<int> poly) {
  if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
  if (f < 1) throw ParameterError("extension degree f must be >= 1");
  if (branch == Branch::padic && f != 1)
    throw ParameterError("padic branch requires f = 1 (use the laurent branch for q = p^f)");
  if (m < 1) throw ParameterError("level m must be >= 1");
  if (branch == Branch::padic && !poly.empty())
    throw ParameterError("padic branch takes no residue polynomial");
  return build(branch, p, f, m, std::move(poly));
}

RingLevel RingLevel::build(Branch branch, int p, int f, int m, std::vector<int> poly) {
  RingLevel r;
  r.branch_ = branch;
  r.p_ = p;
  r.f_ = f;
  r.m_ = m;
  std::uint64_t q = 1;
  for (int i = 0; i < f; ++i) q *= static_cast<std::uint64_t>(p);
  std::uint64_t size = 1;
  r.q_pows_.push_back(1);
  for (int i = 0; i < m; ++i) {
    size *= q;
    if (size > kMaxRingSize) throw ParameterError("ring too large");
    r.q_pows_.push_back(static_cast<std::uint32_t>(size));
  }
  r.q_ = static_cast<std::uint32_t>(q);
  r.size_ = static_cast<std::uint32_t>(size);

  auto tables = std::make_shared<Tables>();
  if (branch == Branch::laurent) {
    if (poly.empty()) {
      poly = f == 1 ? Poly{0, 1} : smallest_irreducible(p, f);
    } else {
      for (int& c : poly) c = ((c % p) + p) % p;
      if (static_cast<int>(poly.size()) != f + 1 || poly.back() != 1)
        throw ParameterError("residue polynomial must be monic of degree f (f+1 coefficients)");
      if (!irreducible(poly, p)) throw ParameterError("residue polynomial is reducible over F_p");
    }
    r.poly_ = poly;
    if (q > 2048) throw ParameterError("residue field too large");
    auto digits = [&](std::uint32_t x) {
      Poly d(static_cast<std::size_t>(f));
      for (int i = 0; i < f; ++i) {
        d[static_cast<std::size_t>(i)] = static_cast<int>(x % static_cast<std::uint32_t>(p));
        x /= static_cast<std::uint32_t>(p);
      }
      return d;
    };
    auto encode = [&](const Poly& d) {
      std::uint32_t x = 0;
      for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i)
        x = x * static_cast<std::uint32_t>(p) + static_cast<std::uint32_t>(d[static_cast<std::size_t>(i)]);
      return x;
    };
    tables->fq_add.resize(q * q);
    tables->fq_mul.resize(q * q);
    tables->fq_neg.resize(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      Poly da = digits(a);
      Poly na(da.size());
      for (std::size_t i = 0; i < da.size(); ++i) na[i] = (p - da[i]) % p;
      tables->fq_neg[a] = encode(na);
      for (std::uint32_t b = 0; b < q; ++b) {
        Poly db = digits(b);
        Poly s(da.size());
        for (std::size_t i = 0; i < da.size(); ++i) s[i] = (da[i] + db[i]) % p;
        tables->fq_add[a * q + b] = encode(s);
        Poly prod(2 * da.size(), 0);
        for (std::size_t i = 0; i < da.size(); ++i)
          for (std::size_t j = 0; j < db.size(); ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        Poly red = f == 1 ? Poly{prod[0]} : poly_mod(prod, poly, p);
        red.resize(static_cast<std::size_t>(f), 0);
        tables->fq_mul[a * q + b] = encode(red);
      }
    }
  }
  r.tables_ = tables;
  if (size <= kTableLimit && size > 1) {
    tables->add.resize(size * size);
    tables->mul.resize(size * size);
    for (std::uint32_t a = 0; a < size; ++a)
      for (std::uint32_t b = 0; b < size; ++b) {
        tables->add[a * size + b] = r.add_direct({a}, {b}).v;
        tables->mul[a * size + b] = r.mul_direct({a}, {b}).v;
      }
  }
  return r;
}

RingLevel RingLevel::at_level(int l) const {
  if (l < 0) throw ParameterError("negative level");
  return build(branch_, p_, f_, l, poly_);
}

RingElem RingLevel::from_index(std::uint64_t i) const {
  if (i >= size_) throw std::out_of_range("ring index out of range");
  return {static_cast<std::uint32_t>(i)};
}

RingElem RingLevel::from_int(long long x) const {
  long long mod = branch_ == Branch::padic ? static_cast<long long>(size_) : p_;
  long long r = ((x % mod) + mod) % mod;
  return {static_cast<std::uint32_t>(r % static_cast<long long>(size_))};
}

RingElem RingLevel::add_direct(RingElem a, RingElem b) const {
  if (branch_ == Branch::padic)
    return {static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.v) + b.v) % size_)};
  std::uint32_t out = 0;
  for (int i = m_ - 1; i >= 0; --i) {
    std::uint32_t da = (a.v / q_pows_[static_cast<std::size_t>(i)]) % q_;
    std::uint32_t db = (b.v / q_pows_[static_cast<std::size_t>(i)]) % q_;
    out = out * q_ + tables_->fq_add[da * q_ + db];
  }
  return {out};
}

RingElem RingLevel::mul_direct(RingElem a, RingElem b) const {
  if (branch_ == Branch::padic)
    return {static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.v) * b.v) % size_)};
  std::vector<std::uint32_t> da(static_cast<std::size_t>(m_)), db(static_cast<std::size_t>(m_)),
      dc(static_cast<std::size_t>(m_), 0);
  for (int i = 0; i < m_; ++i) {
    da[static_cast<std::size_t>(i)] = (a.v / q_pows_[static_cast<std::size_t>(i)]) % q_;
    db[static_cast<std::size_t>(i)] = (b.v / q_pows_[static_cast<std::size_t>(i)]) % q_;
  }
  for (int i = 0; i < m_; ++i) {
    if (da[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; i + j < m_; ++j) {
      std::uint32_t t = tables_->fq_mul[da[static_cast<std::size_t>(i)] * q_ + db[static_cast<std::size_t>(j)]];
      auto& c = dc[static_cast<std::size_t>(i + j)];
      c = tables_->fq_add[c * q_ + t];
    }
  }
  std::uint32_t out = 0;
  for (int i = m_ - 1; i >= 0; --i) out = out * q_ + dc[static_cast<std::size_t>(i)];
  return {out};
}

RingElem RingLevel::add(RingElem a, RingElem b) const {
  if (!tables_->add.empty()) return {tables_->add[a.v * size_ + b.v]};
  return add_direct(a, b);
}

RingElem RingLevel::neg(RingElem a) const {
  if (branch_ == Branch::padic) return {a.v == 0 ? 0 : size_ - a.v};
  std::uint32_t out = 0;
  for (int i = m_ - 1; i >= 0; --i)
    out = out * q_ + tables_->fq_neg[(a.v / q_pows_[static_cast<std::size_t>(i)]) % q_];
  return {out};
}

RingElem RingLevel::sub(RingElem a, RingElem b) const { return add(a, neg(b)); }

RingElem RingLevel::mul(RingElem a, RingElem b) const {
  if (!tables_->mul.empty()) return {tables_->mul[a.v * size_ + b.v]};
  return mul_direct(a, b);
}

RingElem RingLevel::pow(RingElem a, std::uint64_t e) const {
  RingElem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t RingLevel::unit_count() const {
  if (m_ == 0) return 1;
  return static_cast<std::uint64_t>(q_pows_[static_cast<std::size_t>(m_ - 1)]) * (q_ - 1);
}

RingElem RingLevel::inv(RingElem a) const {
  if (!is_unit(a)) throw std::domain_error("inverse of a non-unit " + to_string(a));
  return pow(a, unit_count() - 1);
}

int RingLevel::valuation(RingElem a) const {
  int v = 0;
  std::uint32_t x = a.v;
  while (v < m_ && x % q_ == 0) {
    x /= q_;
    ++v;
  }
  return v;
}

RingElem RingLevel::shift_up(RingElem a, int k) const {
  if (k >= m_) return zero();
  return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v) * q_pows_[static_cast<std::size_t>(k)] % size_)};
}

RingElem RingLevel::shift_down(RingElem a, int k) const {
  if (k > m_ || valuation(a) < k)
    throw std::domain_error("shift_down: valuation too small");
  return {a.v / q_pows_[static_cast<std::size_t>(k)]};
}

RingElem RingLevel::reduce(RingElem a, const RingLevel& lower) const {
  if (lower.m_ > m_) throw std::invalid_argument("reduce: target level is higher");
  return {a.v % lower.size_};
}

std::vector<RingElem> RingLevel::additive_generators() const {
  std::vector<RingElem> out;
  for (int j = 0; j < m_; ++j) {
    std::uint32_t b = 1;
    for (int i = 0; i < f_; ++i) {
      out.push_back({b * q_pows_[static_cast<std::size_t>(j)]});
      b *= static_cast<std::uint32_t>(p_);
    }
  }
  return out;
}

std::string RingLevel::to_string(RingElem a) const {
  if (branch_ == Branch::padic) return std::to_string(a.v);
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < m_; ++i) {
    std::uint32_t d = (a.v / q_pows_[static_cast<std::size_t>(i)]) % q_;
    if (d == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || d != 1) os << d;
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

std::string RingLevel::describe() const {
  std::ostringstream os;
  if (branch_ == Branch::padic) {
    os << "Z/" << p_ << "^" << m_;
  } else {
    os << "F_" << q_ << "[t]/(t^" << m_ << ")";
    if (f_ > 1) {
      os << " with F_" << q_ << " = F_" << p_ << "[x]/(";
      for (std::size_t i = poly_.size(); i-- > 0;) {
        if (poly_[i] == 0) continue;
        if (i + 1 != poly_.size()) os << "+";
        if (poly_[i] != 1 || i == 0) os << poly_[i];
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
      }
      os << ")";
    }
  }
  return os.str();
}

namespace {

// Cyclic decomposition of a finite abelian subgroup given by its element list.
UnitGroupBasis cyclic_basis(const RingLevel& ring, const std::vector<RingElem>& elems) {
  UnitGroupBasis basis;
  const std::uint64_t order = elems.size();
  std::vector<char> in_h(ring.size(), 0);
  std::vector<RingElem> h{ring.one()};
  in_h[ring.one().v] = 1;
  auto primes = prime_factors(order);

  // Order of x modulo the current subgroup H, using that it divides |G|/|H|.
  auto order_mod_h = [&](RingElem x) {
    std::uint64_t d = order / h.size();
    for (std::uint64_t pr : primes) {
      while (d % pr == 0 && in_h[ring.pow(x, d / pr).v]) d /= pr;
    }
    return d;
  };

  while (h.size() < order) {
    RingElem best{};
    std::uint64_t best_d = 0;
    for (RingElem x : elems) {
      if (in_h[x.v]) continue;
      std::uint64_t d = order_mod_h(x);
      if (d > best_d) {
        best_d = d;
        best = x;
      }
    }
    // Adjust by an element of H so the lift has the same order as its image;
    // one exists because a cyclic factor of maximal order is a direct summand.
    RingElem gen{};
    bool found = false;
    for (RingElem y : h) {
      RingElem cand = ring.mul(best, y);
      if (ring.pow(cand, best_d) == ring.one()) {
        gen = cand;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("cyclic decomposition failed");
    basis.generators.push_back(gen);
    basis.orders.push_back(best_d);
    std::vector<RingElem> next;
    next.reserve(h.size() * best_d);
    RingElem g = ring.one();
    for (std::uint64_t k = 0; k < best_d; ++k) {
      for (RingElem y : h) next.push_back(ring.mul(y, g));
      g = ring.mul(g, gen);
    }
    for (RingElem y : next) in_h[y.v] = 1;
    h = std::move(next);
  }
  return basis;
}

}  // namespace

UnitGroupBasis unit_group_basis(const RingLevel& ring) {
  if (ring.level() < 1) throw ParameterError("unit group needs level >= 1");
  std::vector<RingElem> units;
  for (std::uint32_t i = 0; i < ring.size(); ++i)
    if (ring.is_unit({i})) units.push_back({i});
  return cyclic_basis(ring, units);
}

UnitGroup::UnitGroup(const RingLevel& ring) : ring_(ring) {
  if (ring.level() < 1) throw ParameterError("unit group needs level >= 1");
  position_.assign(ring.size(), -1);
  for (std::uint32_t i = 0; i < ring.size(); ++i)
    if (ring.is_unit({i})) {
      position_[i] = static_cast<std::int32_t>(units_.size());
      units_.push_back({i});
    }
  basis_ = cyclic_basis(ring, units_);
  for (auto d : basis_.orders) exponent_ = lcm64(exponent_, d);

  const std::size_t r = rank();
  exponent_table_.assign(units_.size() * r, 0);
  std::vector<char> seen(units_.size(), 0);
  std::vector<std::uint64_t> e(r, 0);
  std::size_t total = 0;
  while (true) {
    RingElem u = element(e);
    auto pos = static_cast<std::size_t>(position_[u.v]);
    if (seen[pos]) throw std::logic_error("unit basis is not independent");
    seen[pos] = 1;
    ++total;
    for (std::size_t i = 0; i < r; ++i) exponent_table_[pos * r + i] = static_cast<std::uint32_t>(e[i]);
    std::size_t i = r;
    while (i-- > 0) {
      if (++e[i] < basis_.orders[i]) break;
      e[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  if (total != units_.size()) throw std::logic_error("unit basis does not span");

  filtration_gens_.resize(static_cast<std::size_t>(ring.level()) + 1);
  filtration_gens_[0] = basis_.generators;
  for (int l = 1; l <= ring.level(); ++l) {
    std::vector<RingElem> sub;
    for (RingElem u : units_)
      if (u.v % ring.q_pow(l) == 1 % ring.q_pow(l)) sub.push_back(u);
    filtration_gens_[static_cast<std::size_t>(l)] = cyclic_basis(ring, sub).generators;
  }
}

const std::uint32_t* UnitGroup::exponents(RingElem u) const {
  if (u.v >= position_.size() || position_[u.v] < 0)
    throw std::domain_error("exponents of a non-unit " + ring_.to_string(u));
  return exponent_table_.data() + static_cast<std::size_t>(position_[u.v]) * rank();
}

RingElem UnitGroup::element(const std::vector<std::uint64_t>& exps) const {
  RingElem u = ring_.one();
  for (std::size_t i = 0; i < rank() && i < exps.size(); ++i)
    u = ring_.mul(u, ring_.pow(basis_.generators[i], exps[i] % basis_.orders[i]));
  return u;
}

const std::vector<RingElem>& UnitGroup::filtration_generators(int l) const {
  return filtration_gens_.at(static_cast<std::size_t>(l));
}

std::uint64_t UnitGroup::filtration_size(int l) const {
  if (l == 0) return order();
  return ring_.q_pow(ring_.level()) / ring_.q_pow(l);
}

UnitCharacter::UnitCharacter(std::shared_ptr<const UnitGroup> group, std::vector<std::uint64_t> exps)
    : group_(std::move(group)), exps_(std::move(exps)) {
  const auto& orders = group_->basis().orders;
  if (exps_.size() != orders.size()) throw ParameterError("character exponent vector has wrong length");
  for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] %= orders[i];
  conductor_ = group_->ring().level();
  for (int l = 0; l <= group_->ring().level(); ++l) {
    bool trivial = true;
    for (RingElem g : group_->filtration_generators(l))
      if (eval_index(g) != 0) {
        trivial = false;
        break;
      }
    if (trivial) {
      conductor_ = l;
      break;
    }
  }
}

std::uint64_t UnitCharacter::eval_index(RingElem u) const {
  const std::uint32_t* e = group_->exponents(u);
  const auto& orders = group_->basis().orders;
  const std::uint64_t L = group_->exponent();
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    k = (k + exps_[i] * e[i] % orders[i] * (L / orders[i])) % L;
  return k;
}

RootOfUnity UnitCharacter::eval(RingElem u) const {
  return RootOfUnity::make(static_cast<std::int64_t>(eval_index(u)),
                           static_cast<std::int64_t>(group_->exponent()));
}

std::complex<double> UnitCharacter::value_or_trivial(RingElem x) const {
  if (is_trivial()) return {1.0, 0.0};
  return value(x);
}

UnitCharacter UnitCharacter::operator*(const UnitCharacter& o) const {
  if (group_ != o.group_ && !(group_->ring() == o.group_->ring()))
    throw ParameterError("characters of different unit groups");
  std::vector<std::uint64_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = exps_[i] + o.exps_[i];
  return {group_, e};
}

UnitCharacter UnitCharacter::conj() const {
  const auto& orders = group_->basis().orders;
  std::vector<std::uint64_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = (orders[i] - exps_[i]) % orders[i];
  return {group_, e};
}

std::string UnitCharacter::label() const {
  std::ostringstream os;
  os << "chi[";
  for (std::size_t i = 0; i < exps_.size(); ++i) os << (i ? "," : "") << exps_[i];
  os << "]";
  return os.str();
}

std::vector<UnitCharacter> characters(std::shared_ptr<const UnitGroup> group) {
  const auto& orders = group->basis().orders;
  std::vector<UnitCharacter> out;
  std::vector<std::uint64_t> e(orders.size(), 0);
  while (true) {
    out.emplace_back(group, e);
    std::size_t i = e.size();
    while (i-- > 0) {
      if (++e[i] < orders[i]) break;
      e[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::vector<UnitCharacter> characters(const RingLevel& ring) {
  return characters(std::make_shared<const UnitGroup>(ring));
}

UnitCharacter select_character(const std::vector<UnitCharacter>& chars, int conductor,
                               std::size_t index) {
  std::size_t seen = 0;
  for (const auto& c : chars) {
    if (c.conductor() != conductor) continue;
    if (seen == index) return c;
    ++seen;
  }
  throw ParameterError("no character with conductor " + std::to_string(conductor) + " and index " +
                       std::to_string(index) + " (" + std::to_string(seen) + " available)");
}

}  // namespace psh
