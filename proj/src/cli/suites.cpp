#include "psh/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "psh/arch.hpp"
#include "psh/pseries.hpp"

namespace psh {

namespace {

using nlohmann::json;

constexpr double kTight = 1e-9;
constexpr double kLoose = 1e-8;

std::string rat(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

json base_params(const Harmonics& h) {
  return {{"branch", to_string(h.ring().branch())}, {"p", h.ring().p()}, {"f", h.ring().f()},
          {"q", h.q()}, {"n", h.n()}, {"M", h.level()}};
}

json chi_params(const Harmonics& h, const UnitCharacter& chi, int m) {
  json j = base_params(h);
  j["chi"] = chi.label();
  j["c"] = chi.conductor();
  j["m"] = m;
  return j;
}

std::string id_of(const Harmonics& h, const std::string& anchor, const std::string& detail) {
  return tag_of(h.ring(), h.n()) + "/" + anchor + "/" + detail;
}

std::string chi_detail(const UnitCharacter& chi, int m) { return character_tag(chi) + "-m" + std::to_string(m); }

std::string chis_detail(const std::vector<UnitCharacter>& chis) {
  std::string s;
  for (const auto& c : chis) s += (s.empty() ? "" : "+") + character_tag(c);
  return s;
}

}  // namespace

std::string tag_of(const RingLevel& ring, int n) {
  std::ostringstream os;
  if (ring.branch() == Branch::padic)
    os << "padic-p" << ring.p();
  else
    os << "laurent-p" << ring.p() << "f" << ring.f();
  os << "-n" << n << "-M" << ring.level();
  return os.str();
}

std::string character_tag(const UnitCharacter& chi) {
  std::ostringstream os;
  os << "c" << chi.conductor() << "[";
  const auto& e = chi.exponents();
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << "]";
  return os.str();
}

std::vector<UnitCharacter> select_characters(const Harmonics& h, const std::vector<CharacterSelector>& sel) {
  std::vector<UnitCharacter> out;
  for (const auto& s : sel) {
    try {
      out.push_back(select_character(h.characters(), s.conductor, s.index));
    } catch (const ParameterError& e) {
      throw ConfigError("characters: no character " + std::to_string(s.conductor) + ":" + std::to_string(s.index) +
                        " (" + e.what() + ")");
    }
  }
  return out;
}

void suite_decompose(Report& rep, const Harmonics& h) {
  const auto q = h.q();
  const int n = h.n(), M = h.level();
  rep.run(id_of(h, "sphere-size", "all"), "sphere-size", base_params(h), [&](std::mt19937_64&) {
    return equal<std::uint64_t>(sphere_size_formula(q, n, M), h.sphere().size());
  });
  for (const auto& chi : h.characters())
    for (int l = 0; l <= M; ++l)
      rep.run(id_of(h, "chi-level-dimension", chi_detail(chi, l)), "chi-level-dimension", chi_params(h, chi, l),
              [&](std::mt19937_64&) {
                const std::uint64_t want = chi_level_dim_formula(q, n, chi.conductor(), l);
                const std::uint64_t numeric = h.chi_level(chi, l).dim();
                const std::uint64_t exact = h.chi_level_exact_dim(chi, l);
                Outcome o;
                o.expected = want;
                o.observed = {{"numeric", numeric}, {"exact", exact}};
                o.ok = numeric == want && exact == want;
                return o;
              });

  std::uint64_t total = 0;
  std::vector<CMat> spaces;
  for (const auto& chi : h.characters())
    for (int m = chi.conductor(); m <= M; ++m)
      rep.run(id_of(h, "harmonic-dimension", chi_detail(chi, m)), "harmonic-dimension", chi_params(h, chi, m),
              [&](std::mt19937_64&) {
                Subspace s = h.harmonic(chi, m);
                total += s.dim();
                spaces.push_back(s.basis);
                return equal<std::uint64_t>(harmonic_dim_formula(q, n, chi.conductor(), m), s.dim());
              });
  rep.run(id_of(h, "harmonic-completeness", "all"), "harmonic-completeness", base_params(h),
          [&](std::mt19937_64&) { return equal<std::uint64_t>(h.sphere().size(), total); });
  rep.run(id_of(h, "harmonic-orthogonality", "all"), "harmonic-orthogonality", base_params(h), [&](std::mt19937_64&) {
    double worst = 0;
    const double size = static_cast<double>(h.sphere().size());
    for (std::size_t i = 0; i < spaces.size(); ++i)
      for (std::size_t j = i + 1; j < spaces.size(); ++j)
        if (spaces[i].cols() > 0 && spaces[j].cols() > 0)
          worst = std::max(worst, (spaces[i].adjoint() * spaces[j]).cwiseAbs().maxCoeff() / size);
    return within(worst, kTight);
  });
}

void suite_irreducibility(Report& rep, const Harmonics& h) {
  for (const auto& chi : h.characters())
    for (int m = chi.conductor(); m <= h.level(); ++m) {
      rep.run(id_of(h, "commutant-harmonic", chi_detail(chi, m)), "commutant-harmonic", chi_params(h, chi, m),
              [&](std::mt19937_64&) {
                RankCertificate cert;
                const std::size_t d = h.commutant_dimension(h.harmonic(chi, m), h.k_generators(), &cert);
                Outcome o = equal<std::size_t>(1, d);
                o.ok = o.ok && cert.gap() >= kMinPivotGap;
                o.note = "pivot gap " + (std::isinf(cert.gap()) ? std::string("inf") : std::to_string(cert.gap()));
                return o;
              });
      rep.run(id_of(h, "commutant-level", chi_detail(chi, m)), "commutant-level", chi_params(h, chi, m),
              [&](std::mt19937_64&) {
                RankCertificate cert;
                const std::size_t d = h.commutant_dimension(h.chi_level(chi, m), h.k_generators(), &cert);
                Outcome o = equal<std::size_t>(static_cast<std::size_t>(m - chi.conductor() + 1), d);
                o.ok = o.ok && cert.gap() >= kMinPivotGap;
                return o;
              });
    }
}

void suite_zonal(Report& rep, const Harmonics& h, int samples) {
  const auto q = h.q();
  const int n = h.n();
  for (int m = 1; m <= h.level(); ++m) {
    json params = base_params(h);
    params["m"] = m;
    rep.run(id_of(h, "zonal-shell-coefficient", "m" + std::to_string(m)), "zonal-shell-coefficient", params,
            [&](std::mt19937_64&) {
              const Rational a = zonal_alpha_formula(q, n, m), b = zonal_alpha_from_gram(q, n, m);
              Outcome o;
              o.expected = rat(a);
              o.observed = rat(b);
              o.ok = a == b;
              return o;
            });
  }
  for (const auto& chi : h.characters())
    for (int m = chi.conductor(); m <= h.level(); ++m) {
      const json params = chi_params(h, chi, m);
      const std::string detail = chi_detail(chi, m);
      const SphereFn z = h.zonal(chi, m);
      const double dim = static_cast<double>(harmonic_dim_formula(q, n, chi.conductor(), m));
      rep.run(id_of(h, "zonal-norm", detail), "zonal-norm", params, [&](std::mt19937_64&) {
        const cplx nn = h.inner(z, z);
        return within(std::abs(nn - 1.0 / dim), kTight, 1.0 / dim, nn.real());
      });
      rep.run(id_of(h, "zonal-shell-values", detail), "zonal-shell-values", params, [&](std::mt19937_64&) {
        // The closed form against the K_{n-1,1}-invariant line of H_{chi,m}.
        Subspace inv = h.mirabolic_invariants(h.harmonic(chi, m));
        if (inv.dim() != 1) return equal<std::size_t>(1, inv.dim());
        SphereFn v = inv.basis.col(0);
        v /= v(static_cast<Eigen::Index>(h.sphere().e_n()));
        return within((v - z).cwiseAbs().maxCoeff(), kTight);
      });
      rep.run(id_of(h, "zonal-symmetry", detail), "zonal-symmetry", params,
              [&](std::mt19937_64& rng) { return within(h.zonal_symmetry_residual(z, samples, rng), kTight); });
      rep.run(id_of(h, "addition-theorem", detail), "addition-theorem", params, [&](std::mt19937_64& rng) {
        return within(h.addition_theorem_residual(h.harmonic(chi, m), z, samples, rng), kLoose);
      });
      rep.run(id_of(h, "reproducing-kernel", detail), "reproducing-kernel", params, [&](std::mt19937_64& rng) {
        return within(h.reproducing_kernel_residual(h.harmonic(chi, m), z, samples, rng), kLoose);
      });
    }
}

void suite_idempotents(Report& rep, const Harmonics& h, int samples) {
  const auto& en = h.k_enumerator();
  const bool exhaustive = samples <= 0;
  const std::uint64_t count = exhaustive ? en.size() : static_cast<std::uint64_t>(samples);
  const std::string mode = exhaustive ? "exhaustive" : "sampled";
  auto each_k = [&](std::mt19937_64& rng, const std::function<double(const MatK&)>& f) {
    double worst = 0;
    for (std::uint64_t i = 0; i < count; ++i) worst = std::max(worst, f(exhaustive ? en.at(i) : h.random_k(rng)));
    return worst;
  };
  for (int m = 0; m <= h.level(); ++m) {
    json params = base_params(h);
    params["m"] = m;
    params["mode"] = mode;
    params["k_count"] = count;
    rep.run(id_of(h, "idempotent-k1", "m" + std::to_string(m)), "idempotent-k1", params, [&](std::mt19937_64& rng) {
      return within(each_k(rng, [&](const MatK& k) { return std::abs(h.idempotent_k1_sum(m, k) - h.idempotent_k1_target(m, k)); }),
                    kTight);
    });
    for (const auto& chi : h.characters()) {
      if (chi.conductor() > m) continue;
      json cp = chi_params(h, chi, m);
      cp["mode"] = mode;
      cp["k_count"] = count;
      rep.run(id_of(h, "idempotent-k0", chi_detail(chi, m)), "idempotent-k0", cp, [&](std::mt19937_64& rng) {
        return within(each_k(rng,
                             [&](const MatK& k) {
                               return std::abs(h.idempotent_k0_sum(chi, m, k) - h.idempotent_k0_target(chi, m, k));
                             }),
                      kTight);
      });
    }
  }
}

void suite_double_cosets(Report& rep, const GL& gl, int m, std::uint64_t budget) {
  const std::string tag = tag_of(gl.ring(), gl.n()) + "/";
  const json params = {{"branch", to_string(gl.ring().branch())}, {"q", gl.ring().q()}, {"n", gl.n()},
                       {"M", gl.level()}, {"m", m}};
  const std::string detail = "m" + std::to_string(m);
  const SubgroupSpec k0 = SubgroupSpec::k0(m);

  rep.run(tag + "double-coset-partition/" + detail, "double-coset-partition", params, [&](std::mt19937_64&) {
    KEnumerator en(gl);
    if (en.size() > budget) throw BudgetExceeded("|K| = " + std::to_string(en.size()) + " exceeds the budget");
    std::vector<MatK> small;
    for (std::uint64_t i = 0; i < en.size(); ++i)
      if (is_member(gl, en.at(i), k0)) small.push_back(en.at(i));
    const std::uint64_t work = static_cast<std::uint64_t>(small.size()) * small.size() * static_cast<std::uint64_t>(m + 1);
    if (work > budget) throw BudgetExceeded("brute-force double cosets need " + std::to_string(work) + " products");

    // Brute force: K_0 u_l K_0 for each l, by multiplying out.
    std::unordered_map<std::uint64_t, int> cls;
    bool disjoint = true;
    for (int l = 0; l <= m; ++l) {
      const MatK u = double_coset_rep(gl, l);
      for (const MatK& a : small) {
        const MatK au = gl.mul(a, u);
        for (const MatK& b : small) {
          auto [it, fresh] = cls.emplace(gl.key(gl.mul(au, b)), l);
          if (!fresh && it->second != l) disjoint = false;
        }
      }
    }
    std::size_t mismatches = 0;
    std::unordered_set<int> seen;
    for (std::uint64_t i = 0; i < en.size(); ++i) {
      const MatK k = en.at(i);
      auto it = cls.find(gl.key(k));
      if (it == cls.end() || it->second != double_coset_index(gl, k, m)) ++mismatches;
      seen.insert(double_coset_index(gl, k, m));
    }
    Outcome o;
    o.expected = {{"classes", m + 1}, {"covered", en.size()}, {"mismatches", 0}};
    o.observed = {{"classes", seen.size()}, {"covered", cls.size()}, {"mismatches", mismatches}};
    o.ok = disjoint && mismatches == 0 && cls.size() == en.size() && seen.size() == static_cast<std::size_t>(m + 1);
    if (!disjoint) o.note = "brute-force double cosets overlap";
    return o;
  });

  rep.run(tag + "double-coset-witness/" + detail, "double-coset-witness", params, [&](std::mt19937_64&) {
    KEnumerator en(gl);
    if (en.size() > budget) throw BudgetExceeded("|K| = " + std::to_string(en.size()) + " exceeds the budget");
    std::uint64_t verified = 0;
    for (std::uint64_t i = 0; i < en.size(); ++i) {
      const MatK k = en.at(i);
      const DoubleCosetWitness w = double_coset_witness(gl, k, m);
      const bool ok = w.index == double_coset_index(gl, k, m) && is_member(gl, w.left, k0) &&
                      is_member(gl, w.right, k0) &&
                      gl.mul(gl.mul(w.left, double_coset_rep(gl, w.index)), w.right) == k;
      verified += ok;
    }
    return equal<std::uint64_t>(en.size(), verified);
  });
}

void suite_principal_series(Report& rep, const Harmonics& h, const std::vector<UnitCharacter>& chis, int samples) {
  const std::string detail = chis_detail(chis);
  json params = base_params(h);
  params["chis"] = json::array();
  for (const auto& c : chis) params["chis"].push_back(c.label());

  PSeriesModel model(h.gl(), chis, h.k_generators());
  const int n = h.n(), M = h.level();
  const int c = model.declared_conductor();
  const UnitCharacter omega = model.central_character();
  params["declared_conductor"] = c;
  ConductorScan scan = scan_conductor(model);

  rep.run(id_of(h, "model-unitarity", detail), "model-unitarity", params,
          [&](std::mt19937_64& rng) { return within(model.unitarity_residual(rng), kTight); });
  rep.run(id_of(h, "conductor", detail), "conductor", params,
          [&](std::mt19937_64&) { return equal<int>(c, scan.empirical_conductor); });
  for (int l = 0; l <= M; ++l) {
    json lp = params;
    lp["l"] = l;
    const std::string ld = detail + "-l" + std::to_string(l);
    const auto li = static_cast<std::size_t>(l);
    rep.run(id_of(h, "k1-invariant-dimension", ld), "k1-invariant-dimension", lp, [&](std::mt19937_64&) {
      const std::uint64_t want = binomial(l - c + n - 1, n - 1);
      Outcome o;
      o.expected = want;
      o.observed = {{"exact", scan.k1_dims[li]}, {"numeric", scan.k1_dims_numeric[li]}};
      o.ok = scan.k1_dims[li] == want && scan.k1_dims_numeric[li] == want;
      return o;
    });
    rep.run(id_of(h, "graded-newvector-dimension", ld), "graded-newvector-dimension", lp, [&](std::mt19937_64&) {
      return equal<std::uint64_t>(binomial(l - c + n - 2, n - 2), scan.graded[li]);
    });
    if (l >= omega.conductor())
      rep.run(id_of(h, "k0-equivariant-dimension", ld), "k0-equivariant-dimension", lp, [&](std::mt19937_64&) {
        // K_0 is the centre times K_1, so the twisted K_0-invariants are the K_1-invariants.
        return equal<std::uint64_t>(binomial(l - c + n - 1, n - 1), scan.k0_dims[li]);
      });
  }

  CVec vnew;
  rep.run(id_of(h, "newform-line", detail), "newform-line", params, [&](std::mt19937_64&) {
    vnew = newform(model, scan);
    return equal<std::size_t>(1, scan.k1_dims[static_cast<std::size_t>(c)]);
  });
  if (vnew.size() == 0) return;
  rep.run(id_of(h, "newform-equivariance", detail), "newform-equivariance", params,
          [&](std::mt19937_64&) { return within(newform_equivariance_residual(model, vnew), kTight); });
  rep.run(id_of(h, "matrix-coefficient", detail), "matrix-coefficient", params, [&](std::mt19937_64& rng) {
    const Sphere& S = h.sphere();
    double worst = std::abs(matrix_coefficient(model, vnew, h.gl().identity()) - 1.0);
    for (int t = 0; t < samples; ++t) {
      const MatK k = h.random_k(rng);
      const cplx got = matrix_coefficient(model, vnew, k);
      worst = std::max(worst, std::abs(got - matrix_coefficient_formula(h.gl(), c, omega, k)));
      worst = std::max(worst, std::abs(got - h.zonal_value(omega, c, S.act(S.e_n(), h.gl(), k))));
    }
    Outcome o = within(worst, kLoose);
    o.note = std::to_string(samples) + " sampled k";
    return o;
  });
  rep.run(id_of(h, "twist-minimality", detail), "twist-minimality", params, [&](std::mt19937_64&) {
    int ramified = 0;
    for (const auto& x : chis) ramified += x.conductor() > 0;
    const bool minimal = scan.empirical_conductor == omega.conductor();
    Outcome o;
    o.expected = {{"at_most_one_ramified", ramified <= 1}};
    o.observed = {{"conductor", scan.empirical_conductor}, {"central_conductor", omega.conductor()}};
    o.ok = minimal == (ramified <= 1);
    return o;
  });
}

void suite_roundtrip(Report& rep, const Harmonics& h, const std::vector<UnitCharacter>& chis, bool exhaustive,
                     int samples) {
  const std::string detail = chis_detail(chis);
  json params = base_params(h);
  params["chis"] = json::array();
  for (const auto& c : chis) params["chis"].push_back(c.label());
  params["mode"] = exhaustive ? "exhaustive" : "grouped";

  PSeriesModel model(h.gl(), chis, h.k_generators());
  const CVec vnew = newform(model, scan_conductor(model));
  const int c = model.declared_conductor();
  const UnitCharacter omega = model.central_character();
  const Subspace H = h.harmonic(omega, c);
  const std::size_t d = H.dim();
  auto build = [&](const SphereFn& P) {
    return exhaustive ? vector_from_harmonic_exhaustive(model, h, P, d, vnew) : vector_from_harmonic(model, h, P, d, vnew);
  };

  if (exhaustive)
    rep.run(id_of(h, "vector-route-agreement", detail), "vector-route-agreement", params, [&](std::mt19937_64& rng) {
      std::normal_distribution<double> nd;
      CVec coef(static_cast<Eigen::Index>(d));
      for (Eigen::Index i = 0; i < coef.size(); ++i) coef(i) = cplx(nd(rng), nd(rng));
      const SphereFn P = H.basis * coef;
      const CVec a = vector_from_harmonic_exhaustive(model, h, P, d, vnew);
      const CVec b = vector_from_harmonic(model, h, P, d, vnew);
      return within((a - b).norm() / std::max(a.norm(), 1e-300), kLoose);
    });
  rep.run(id_of(h, "vector-newform-fixed", detail), "vector-newform-fixed", params, [&](std::mt19937_64&) {
    const CVec back = build(h.zonal(omega, c));
    return within((back - vnew).norm() / vnew.norm(), kLoose);
  });
  rep.run(id_of(h, "vector-isotypic", detail), "vector-isotypic", params, [&](std::mt19937_64&) {
    const Span span = k_span(model, vnew);
    if (span.dim() != d) return equal<std::size_t>(d, span.dim());
    double worst = 0;
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(d); ++j) {
      const CVec v = build(H.basis.col(j));
      worst = std::max(worst, (v - span.basis * (span.basis.adjoint() * v)).norm() / std::max(v.norm(), 1e-300));
    }
    return within(worst, kLoose);
  });
  rep.run(id_of(h, "vector-matrix-coefficient", detail), "vector-matrix-coefficient", params,
          [&](std::mt19937_64& rng) {
            std::normal_distribution<double> nd;
            CVec coef(static_cast<Eigen::Index>(d));
            for (Eigen::Index i = 0; i < coef.size(); ++i) coef(i) = cplx(nd(rng), nd(rng));
            const SphereFn P = H.basis * coef;
            const CVec v = build(P);
            const cplx pp = h.inner(P, P), vv = model.inner(v, v);
            const Sphere& S = h.sphere();
            double worst = 0;
            for (int t = 0; t < samples; ++t) {
              const MatK k = h.random_k(rng);
              const cplx lhs = pp * model.inner(model.apply(k, vnew), v);
              const cplx rhs =
                  vv * std::conj(P(static_cast<Eigen::Index>(S.act(S.e_n(), h.gl(), h.gl().inv(k))))) / static_cast<double>(d);
              worst = std::max(worst, std::abs(lhs - rhs) / std::abs(vv));
            }
            return within(worst, kLoose);
          });

  // A harmonic space whose character differs from the central character.
  const UnitCharacter* other = nullptr;
  for (const auto& x : h.characters())
    if (!(x == omega)) {
      other = &x;
      break;
    }
  if (other == nullptr) return;
  const int m = std::max(other->conductor(), std::min(c, h.level()));
  json mp = params;
  mp["mismatched_chi"] = other->label();
  mp["m"] = m;
  rep.run(id_of(h, "vector-central-mismatch", detail), "vector-central-mismatch", mp, [&](std::mt19937_64&) {
    const Subspace W = h.harmonic(*other, m);
    double worst = 0;
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(W.dim()); ++j)
      worst = std::max(worst, build(W.basis.col(j)).norm());
    return within(worst, kTight);
  });
}

void suite_arch(Report& rep, const ArchBounds& b, int samples) {
  using namespace arch;
  const int rot = std::max(1, std::min(samples, 20));
  auto detail = [](int n, const std::string& m) { return "n" + std::to_string(n) + "-m" + m; };

  rep.run("arch/real-harmonic-dimension/example-m2-n3", "real-harmonic-dimension", json{{"m", 2}, {"n", 3}},
          [&](std::mt19937_64&) { return equal<std::uint64_t>(5, harmonic_dim_real_kernel(2, 3)); });
  rep.run("arch/complex-harmonic-dimension/example-m1,1-n2", "complex-harmonic-dimension",
          json{{"m1", 1}, {"m2", 1}, {"n", 2}},
          [&](std::mt19937_64&) { return equal<std::uint64_t>(3, harmonic_dim_complex_kernel(1, 1, 2)); });

  for (int n = 2; n <= b.real_max_n; ++n)
    for (int m = 0; m <= b.real_max_degree; ++m) {
      const json params = {{"branch", "real"}, {"m", m}, {"n", n}};
      const std::string d = detail(n, std::to_string(m));
      rep.run("arch/real-zonal-laplacian/" + d, "real-zonal-laplacian", params, [&](std::mt19937_64&) {
        const ExactPoly p = real_zonal(m, n);
        const ExactPoly lp = real_laplacian(p);
        Outcome o;
        o.expected = {{"laplacian", "0"}, {"homogeneous", m}};
        o.observed = {{"laplacian", lp.to_string(real_names(n))}, {"homogeneous", p.homogeneous(m) ? m : -1}};
        o.ok = lp.is_zero() && p.homogeneous(m);
        return o;
      });
      rep.run("arch/real-zonal-normalization/" + d, "real-zonal-normalization", params, [&](std::mt19937_64&) {
        std::vector<Rational> en(static_cast<std::size_t>(n), 0);
        en.back() = 1;
        const Rational v = real_zonal(m, n).eval(en);
        Outcome o;
        o.expected = "1";
        o.observed = rat(v);
        o.ok = v == 1;
        return o;
      });
      rep.run("arch/real-harmonic-dimension/" + d, "real-harmonic-dimension", params, [&](std::mt19937_64&) {
        return equal<std::uint64_t>(harmonic_dim_real(m, n), harmonic_dim_real_kernel(m, n));
      });
      rep.run("arch/real-zonal-profile/" + d, "real-zonal-profile", params, [&](std::mt19937_64&) {
        Outcome o;
        o.ok = real_zonal_profile(m, n) == gegenbauer_gram_schmidt(m, n);
        o.expected = "Gram-Schmidt profile";
        o.observed = o.ok ? "equal" : "differs";
        return o;
      });
      rep.run("arch/real-zonal-invariance/" + d, "real-zonal-invariance", params, [&](std::mt19937_64& rng) {
        return within(real_rotation_residual(real_zonal(m, n), n, rot, rng), 1e-10);
      });
    }

  for (int n = 2; n <= b.complex_max_n; ++n)
    for (int m1 = 0; m1 <= b.complex_max_total; ++m1)
      for (int m2 = 0; m1 + m2 <= b.complex_max_total; ++m2) {
        const json params = {{"branch", "complex"}, {"m1", m1}, {"m2", m2}, {"n", n}};
        const std::string d = detail(n, std::to_string(m1) + "," + std::to_string(m2));
        rep.run("arch/complex-zonal-laplacian/" + d, "complex-zonal-laplacian", params, [&](std::mt19937_64&) {
          const ExactPoly p = complex_zonal(m1, m2, n);
          const ExactPoly lp = complex_laplacian(p);
          Outcome o;
          o.expected = {{"laplacian", "0"}, {"bidegree", {m1, m2}}};
          o.observed = {{"laplacian", lp.to_string(complex_names(n))}, {"bihomogeneous", p.bihomogeneous(n, m1, m2)}};
          o.ok = lp.is_zero() && p.bihomogeneous(n, m1, m2);
          return o;
        });
        rep.run("arch/complex-zonal-normalization/" + d, "complex-zonal-normalization", params, [&](std::mt19937_64&) {
          std::vector<Rational> en(static_cast<std::size_t>(2 * n), 0);
          en[static_cast<std::size_t>(n - 1)] = 1;
          en.back() = 1;
          const Rational v = complex_zonal(m1, m2, n).eval(en);
          Outcome o;
          o.expected = "1";
          o.observed = rat(v);
          o.ok = v == 1;
          return o;
        });
        rep.run("arch/complex-harmonic-dimension/" + d, "complex-harmonic-dimension", params, [&](std::mt19937_64&) {
          return equal<std::uint64_t>(harmonic_dim_complex(m1, m2, n), harmonic_dim_complex_kernel(m1, m2, n));
        });
        rep.run("arch/complex-zonal-invariance/" + d, "complex-zonal-invariance", params, [&](std::mt19937_64& rng) {
          return within(complex_rotation_residual(complex_zonal(m1, m2, n), n, rot, rng), 1e-10);
        });
      }
}

}  // namespace psh
