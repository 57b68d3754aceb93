#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "psh/matrix.hpp"
#include "psh/ring.hpp"

namespace psh {

enum class SubgroupKind { K, Kprin, K1, K0, Kmirab };

/// K, K(p^l), K_1(p^l), K_0(p^l) or the mirabolic K_{n-1,1}, as predicates on
/// matrices at the working level.
struct SubgroupSpec {
  SubgroupKind kind = SubgroupKind::K;
  int level = 0;  // ignored for K and Kmirab

  static SubgroupSpec full() { return {SubgroupKind::K, 0}; }
  static SubgroupSpec principal(int l) { return {SubgroupKind::Kprin, l}; }
  static SubgroupSpec k1(int l) { return {SubgroupKind::K1, l}; }
  static SubgroupSpec k0(int l) { return {SubgroupKind::K0, l}; }
  static SubgroupSpec mirabolic() { return {SubgroupKind::Kmirab, 0}; }

  std::string name() const;
};

bool is_member(const GL& gl, const MatK& k, const SubgroupSpec& s);

/// |GL_n(O/p^M)| = q^{(M-1)n^2} prod_{i<n} (q^n - q^i).
std::uint64_t gl_order(std::uint64_t q, int n, int M);
/// Order of the subgroup predicted by the index formulas.
std::uint64_t subgroup_order(const GL& gl, const SubgroupSpec& s);

/// Proposed generating set built from elementary matrices and diagonal units.
std::vector<MatK> subgroup_generators(const GL& gl, const SubgroupSpec& s);

/// Stabiliser chain for a matrix group acting on row vectors, with base
/// e_1, ..., e_n.  Fixing every e_i forces the identity, so sifting is exact.
class SchreierSims {
 public:
  SchreierSims(const GL& gl, std::vector<MatK> generators);

  const GL& gl() const { return gl_; }
  std::uint64_t order() const;
  bool contains(const MatK& k) const;
  /// Uniform random element (product of random transversal elements).
  MatK random(std::mt19937_64& rng) const;
  const std::vector<MatK>& generators() const { return gens_; }
  /// Sizes of the basic orbits.
  std::vector<std::size_t> orbit_sizes() const;

 private:
  struct Level {
    std::vector<MatK> gens;
    std::unordered_map<std::uint64_t, std::uint32_t> where;  // vector code -> orbit slot
    std::vector<RowVec> orbit;
    std::vector<MatK> trans;      // base * trans[i] = orbit[i]
    std::vector<MatK> trans_inv;
  };

  std::uint64_t vcode(const RowVec& x) const;
  void rebuild_orbit(std::size_t level);
  /// Sifts g through levels [from, n); returns the residue and the level it stopped at.
  std::pair<MatK, std::size_t> strip(MatK g, std::size_t from) const;
  void build();

  GL gl_;
  std::vector<MatK> gens_;
  std::vector<Level> levels_;
};

/// Drops generators greedily while the generated order is unchanged.
std::vector<MatK> trim_generators(const GL& gl, std::vector<MatK> gens);

/// Generators verified against the order formula.  Throws std::logic_error if
/// the proposed set fails to generate a group of the predicted order.
struct VerifiedGenerators {
  std::vector<MatK> gens;
  std::uint64_t order = 0;
};
VerifiedGenerators verified_generators(const GL& gl, const SubgroupSpec& s, bool trim);

/// Breadth-first closure of a generating set; throws BudgetExceeded past `budget`.
std::vector<MatK> closure(const GL& gl, const std::vector<MatK>& gens, std::uint64_t budget);

/// Positional enumeration of GL_n(O/p^M) as (residue in GL_n(F_q)) x (lift).
class KEnumerator {
 public:
  explicit KEnumerator(const GL& gl);
  std::uint64_t size() const { return residues_.size() * lifts_; }
  MatK at(std::uint64_t index) const;
  MatK random(std::mt19937_64& rng) const;
  const std::vector<MatK>& residues() const { return residues_; }

 private:
  GL gl_;
  std::vector<MatK> residues_;  // entries in [0, q)
  std::uint64_t lifts_ = 1;     // q^{(M-1) n^2}
};

/// u_l: identity with bottom row (0, ..., 0, w^l, 1); u_m for l >= M is the identity.
MatK double_coset_rep(const GL& gl, int l);

/// min(m, min valuation of the bottom-left 1 x (n-1) block).
int double_coset_index(const GL& gl, const MatK& k, int m);

struct DoubleCosetWitness {
  MatK left;
  int index = 0;
  MatK right;
};

/// k = left * u_index * right with left, right in K_0(p^m).
DoubleCosetWitness double_coset_witness(const GL& gl, const MatK& k, int m);

/// Column beta over residue digits with det(a - beta c) a unit.  `a` is the
/// top-left (n-1) x (n-1) block and `c` the bottom-left row of a matrix in the
/// given context (only those entries are read).  Throws std::logic_error if no
/// such beta exists, which would contradict the invertibility of [[a,*],[c,*]].
std::vector<RingElem> chang_beta(const GL& gl, const MatK& k);

/// [[a, b], [c, d]] in K_1(p^m) as (mirabolic factor) * (principal factor).
std::pair<MatK, MatK> mirabolic_principal_split(const GL& gl, const MatK& k);

}  // namespace psh
