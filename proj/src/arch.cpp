#include "psh/arch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "psh/ring.hpp"

namespace psh::arch {

namespace {

Rational factorial(int k) {
  Rational r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

Rational binom(int a, int b) {
  if (b < 0 || b > a) return 0;
  return factorial(a) / (factorial(b) * factorial(a - b));
}

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

ExactPoly ExactPoly::constant(int nvars, const Rational& c) {
  ExactPoly p(nvars);
  p.add_term(Monomial(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

ExactPoly ExactPoly::variable(int nvars, int i) {
  Monomial e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return monomial(e, 1);
}

ExactPoly ExactPoly::monomial(const Monomial& e, const Rational& c) {
  ExactPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

void ExactPoly::add_term(const Monomial& e, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rational ExactPoly::coefficient(const Monomial& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

ExactPoly ExactPoly::operator+(const ExactPoly& o) const {
  ExactPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

ExactPoly ExactPoly::operator-(const ExactPoly& o) const { return *this + o.scaled(-1); }

ExactPoly ExactPoly::operator*(const ExactPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("ExactPoly: variable count mismatch");
  ExactPoly r(nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Monomial e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

ExactPoly ExactPoly::scaled(const Rational& c) const {
  ExactPoly r(nvars_);
  for (const auto& [e, v] : terms_) r.add_term(e, v * c);
  return r;
}

ExactPoly ExactPoly::pow(int e) const {
  ExactPoly r = constant(nvars_, 1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

ExactPoly ExactPoly::derivative(int var) const {
  ExactPoly r(nvars_);
  const auto v = static_cast<std::size_t>(var);
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Monomial d = e;
    --d[v];
    r.add_term(d, c * e[v]);
  }
  return r;
}

bool ExactPoly::homogeneous(int d) const {
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) != d) return false;
  return true;
}

bool ExactPoly::bihomogeneous(int n, int d1, int d2) const {
  for (const auto& [e, c] : terms_) {
    if (std::accumulate(e.begin(), e.begin() + n, 0) != d1) return false;
    if (std::accumulate(e.begin() + n, e.end(), 0) != d2) return false;
  }
  return true;
}

Rational ExactPoly::eval(const std::vector<Rational>& x) const {
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    total += t;
  }
  return total;
}

double ExactPoly::eval(const std::vector<double>& x) const {
  double total = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.convert_to<double>();
    for (std::size_t i = 0; i < e.size(); ++i) t *= std::pow(x[i], e[i]);
    total += t;
  }
  return total;
}

std::complex<double> ExactPoly::eval_complex(const std::vector<std::complex<double>>& z) const {
  const std::size_t n = z.size();
  std::complex<double> total = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.convert_to<double>();
    for (std::size_t i = 0; i < n; ++i) {
      t *= std::pow(z[i], e[i]);
      t *= std::pow(std::conj(z[i]), e[n + i]);
    }
    total += t;
  }
  return total;
}

std::string ExactPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Descending exponent vectors: x1 terms before x2 terms before x3 terms.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const bool unit_coef = mag == 1;
    bool any = false;
    if (!unit_coef) os << rational_string(mag);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!unit_coef || any) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      any = true;
    }
    if (unit_coef && !any) os << "1";
  }
  return os.str();
}

std::vector<std::string> real_names(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

std::vector<std::string> complex_names(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back("z" + std::to_string(i));
  for (int i = 1; i <= n; ++i) out.push_back("zb" + std::to_string(i));
  return out;
}

ExactPoly real_laplacian(const ExactPoly& p) {
  ExactPoly r(p.nvars());
  for (int i = 0; i < p.nvars(); ++i) r = r + p.derivative(i).derivative(i);
  return r;
}

ExactPoly complex_laplacian(const ExactPoly& p) {
  const int n = p.nvars() / 2;
  ExactPoly r(p.nvars());
  for (int j = 0; j < n; ++j) r = r + p.derivative(j).derivative(n + j);
  return r.scaled(4);
}

Rational real_zonal_coefficient(int m, int n, int nu) {
  if (nu % 2 != 0 || nu < 0 || nu > m) return 0;
  const int h = nu / 2;
  Rational c = factorial(m) / (Rational(1 << nu) * factorial(h) * factorial(m - nu));
  for (int j = 0; j < h; ++j) c /= Rational(n - 1, 2) + j;
  return h % 2 ? Rational(-c) : c;
}

Rational complex_zonal_coefficient(int m1, int m2, int n, int nu) {
  if (nu < 0 || nu > std::min(m1, m2)) return 0;
  Rational c = binom(m1, nu) * binom(m2, nu) / binom(nu + n - 2, n - 2);
  return nu % 2 ? Rational(-c) : c;
}

ExactPoly real_zonal(int m, int n) {
  if (n < 2 || m < 0) throw ParameterError("real_zonal: need n >= 2, m >= 0");
  ExactPoly head(n);
  for (int i = 0; i + 1 < n; ++i) head = head + ExactPoly::variable(n, i).pow(2);
  const ExactPoly xn = ExactPoly::variable(n, n - 1);
  ExactPoly p(n);
  for (int nu = 0; nu <= m; nu += 2)
    p = p + (head.pow(nu / 2) * xn.pow(m - nu)).scaled(real_zonal_coefficient(m, n, nu));
  return p;
}

ExactPoly complex_zonal(int m1, int m2, int n) {
  if (n < 2 || m1 < 0 || m2 < 0) throw ParameterError("complex_zonal: need n >= 2, m1, m2 >= 0");
  const int k = 2 * n;
  ExactPoly head(k);
  for (int j = 0; j + 1 < n; ++j) head = head + ExactPoly::variable(k, j) * ExactPoly::variable(k, n + j);
  const ExactPoly zn = ExactPoly::variable(k, n - 1);
  const ExactPoly zbn = ExactPoly::variable(k, 2 * n - 1);
  ExactPoly p(k);
  for (int nu = 0; nu <= std::min(m1, m2); ++nu)
    p = p + (head.pow(nu) * zn.pow(m1 - nu) * zbn.pow(m2 - nu)).scaled(complex_zonal_coefficient(m1, m2, n, nu));
  return p;
}

std::uint64_t harmonic_dim_real(int m, int n) {
  if (m == 0) return 1;
  Rational d = Rational(2 * m + n - 2, m + n - 2) * binom(m + n - 2, n - 2);
  if (denominator(d) != 1) throw std::logic_error("harmonic_dim_real: non-integral value");
  return numerator(d).convert_to<std::uint64_t>();
}

std::uint64_t harmonic_dim_complex(int m1, int m2, int n) {
  Rational d = Rational(m1 + m2 + n - 1, n - 1) * binom(m1 + n - 2, n - 2) * binom(m2 + n - 2, n - 2);
  if (denominator(d) != 1) throw std::logic_error("harmonic_dim_complex: non-integral value");
  return numerator(d).convert_to<std::uint64_t>();
}

std::vector<std::vector<Rational>> rational_kernel(std::vector<std::vector<Rational>> a, std::size_t cols) {
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    const Rational inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[row][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<Rational>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[static_cast<std::size_t>(pivot_col[r])] = -a[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t rational_rank(std::vector<std::vector<Rational>> a) {
  if (a.empty()) return 0;
  const std::size_t cols = a[0].size();
  return cols - rational_kernel(std::move(a), cols).size();
}

std::vector<ExactPoly::Monomial> monomials(int k, int d) {
  std::vector<ExactPoly::Monomial> out;
  ExactPoly::Monomial e(static_cast<std::size_t>(k), 0);
  // Recursive fill, slot by slot.
  auto rec = [&](auto&& self, int slot, int left) -> void {
    if (slot == k - 1) {
      e[static_cast<std::size_t>(slot)] = left;
      out.push_back(e);
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[static_cast<std::size_t>(slot)] = v;
      self(self, slot + 1, left - v);
    }
  };
  if (k == 0) {
    if (d == 0) out.push_back(e);
    return out;
  }
  rec(rec, 0, d);
  return out;
}

namespace {

// Kernel dimension of a linear map given on a monomial basis.
template <class Map>
std::uint64_t kernel_dim(const std::vector<ExactPoly::Monomial>& domain, Map&& apply) {
  std::map<ExactPoly::Monomial, std::size_t> row_of;
  std::vector<ExactPoly> images;
  for (const auto& e : domain) {
    images.push_back(apply(ExactPoly::monomial(e, 1)));
    for (const auto& [m, c] : images.back().terms()) row_of.emplace(m, row_of.size());
  }
  std::vector<std::vector<Rational>> a(row_of.size(), std::vector<Rational>(domain.size(), 0));
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& [m, c] : images[j].terms()) a[row_of[m]][j] = c;
  if (a.empty()) return domain.size();
  return domain.size() - rational_rank(std::move(a));
}

}  // namespace

std::uint64_t harmonic_dim_real_kernel(int m, int n) {
  return kernel_dim(monomials(n, m), [](const ExactPoly& p) { return real_laplacian(p); });
}

std::uint64_t harmonic_dim_complex_kernel(int m1, int m2, int n) {
  std::vector<ExactPoly::Monomial> domain;
  for (const auto& a : monomials(n, m1))
    for (const auto& b : monomials(n, m2)) {
      ExactPoly::Monomial e = a;
      e.insert(e.end(), b.begin(), b.end());
      domain.push_back(e);
    }
  return kernel_dim(domain, [](const ExactPoly& p) { return complex_laplacian(p); });
}

UniPoly real_zonal_profile(int m, int n) {
  UniPoly out(static_cast<std::size_t>(m + 1), 0);
  for (int nu = 0; nu <= m; nu += 2) {
    const Rational c = real_zonal_coefficient(m, n, nu);
    // (1 - t^2)^{nu/2} t^{m - nu}
    const int h = nu / 2;
    for (int i = 0; i <= h; ++i) {
      const Rational term = binom(h, i) * (i % 2 ? -1 : 1);
      out[static_cast<std::size_t>(2 * i + m - nu)] += c * term;
    }
  }
  return out;
}

UniPoly gegenbauer_gram_schmidt(int m, int n) {
  // Moments of (1 - t^2)^{(n-3)/2}, normalised: mu_0 = 1,
  // mu_{2k+2} / mu_{2k} = (2k + 1) / (2k + n), odd moments vanish.
  std::vector<Rational> mu(static_cast<std::size_t>(2 * m + 1), 0);
  mu[0] = 1;
  for (int k = 0; 2 * k + 2 <= 2 * m; ++k)
    mu[static_cast<std::size_t>(2 * k + 2)] = mu[static_cast<std::size_t>(2 * k)] * Rational(2 * k + 1, 2 * k + n);
  auto inner = [&](const UniPoly& a, const UniPoly& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        if (a[i] != 0 && b[j] != 0) s += a[i] * b[j] * mu[i + j];
    return s;
  };
  std::vector<UniPoly> basis;
  for (int d = 0; d <= m; ++d) {
    UniPoly p(static_cast<std::size_t>(m + 1), 0);
    p[static_cast<std::size_t>(d)] = 1;
    for (const UniPoly& b : basis) {
      const Rational f = inner(p, b) / inner(b, b);
      for (std::size_t i = 0; i < p.size(); ++i) p[i] -= f * b[i];
    }
    basis.push_back(p);
  }
  UniPoly p = basis.back();
  const Rational at_one = std::accumulate(p.begin(), p.end(), Rational(0));
  for (auto& c : p) c /= at_one;
  return p;
}

double real_rotation_residual(const ExactPoly& p, int n, int samples, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> x(static_cast<std::size_t>(n));
    double norm = 0;
    for (auto& v : x) {
      v = nd(rng);
      norm += v * v;
    }
    for (auto& v : x) v /= std::sqrt(norm);
    std::vector<double> y = x;
    if (rng() % 2) y[0] = -y[0];
    for (int i = 0; i + 1 < n - 1; ++i)
      for (int j = i + 1; j < n - 1; ++j) {
        const double th = angle(rng);
        const double a = y[static_cast<std::size_t>(i)], b = y[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = std::cos(th) * a - std::sin(th) * b;
        y[static_cast<std::size_t>(j)] = std::sin(th) * a + std::cos(th) * b;
      }
    worst = std::max(worst, std::abs(p.eval(y) - p.eval(x)));
  }
  return worst;
}

double complex_rotation_residual(const ExactPoly& p, int n, int samples, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
    double norm = 0;
    for (auto& v : z) {
      v = {nd(rng), nd(rng)};
      norm += std::norm(v);
    }
    for (auto& v : z) v /= std::sqrt(norm);
    std::vector<std::complex<double>> w = z;
    for (int i = 0; i < n - 1; ++i) w[static_cast<std::size_t>(i)] *= std::polar(1.0, angle(rng));
    for (int i = 0; i + 1 < n - 1; ++i)
      for (int j = i + 1; j < n - 1; ++j) {
        const double th = angle(rng);
        const std::complex<double> ph = std::polar(1.0, angle(rng));
        const auto a = w[static_cast<std::size_t>(i)], b = w[static_cast<std::size_t>(j)];
        w[static_cast<std::size_t>(i)] = std::cos(th) * a - std::sin(th) * std::conj(ph) * b;
        w[static_cast<std::size_t>(j)] = std::sin(th) * ph * a + std::cos(th) * b;
      }
    worst = std::max(worst, std::abs(p.eval_complex(w) - p.eval_complex(z)));
  }
  return worst;
}

}  // namespace psh::arch
