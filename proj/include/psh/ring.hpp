#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace psh {

/// Raised for invalid parameters (bad prime, unsupported branch, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration would exceed its configured cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Branch { padic, laurent };

std::string to_string(Branch b);
Branch parse_branch(const std::string& s);

/// Element of O/p^m, stored as its canonical residue index in [0, q^m).
///
/// padic branch: the integer representative in [0, p^m).
/// laurent branch: sum_i c_i q^i where c_i in [0, q) encodes the t^i
/// coefficient as base-p digits of a polynomial over F_p.
///
/// With this encoding reduction to a lower level is `index mod q^l`,
/// multiplication by the uniformiser is `index * q mod q^m`, and the
/// residue class mod the uniformiser is `index mod q`, on both branches.
struct RingElem {
  std::uint32_t v = 0;
  friend bool operator==(RingElem, RingElem) = default;
  friend auto operator<=>(RingElem, RingElem) = default;
};

/// An exact root of unity e^{2 pi i num/den} with 0 <= num < den, reduced.
struct RootOfUnity {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static RootOfUnity make(std::int64_t num, std::int64_t den);
  RootOfUnity operator*(RootOfUnity o) const;
  RootOfUnity conj() const;
  bool is_one() const { return num == 0; }
  std::complex<double> value() const;
  friend bool operator==(RootOfUnity, RootOfUnity) = default;
};

/// The finite ring O/p^m at a fixed level.  Cheap to copy; arithmetic tables
/// are shared between copies.
class RingLevel {
 public:
  /// `poly` is an optional little-endian coefficient list of a monic
  /// irreducible polynomial of degree f over F_p (laurent branch only).
  static RingLevel make(Branch branch, int p, int f, int m,
                        std::vector<int> poly = {});

  Branch branch() const { return branch_; }
  int p() const { return p_; }
  int f() const { return f_; }
  int level() const { return m_; }
  std::uint32_t q() const { return q_; }
  /// q^m.
  std::uint32_t size() const { return size_; }
  /// q^k for 0 <= k <= m.
  std::uint32_t q_pow(int k) const { return q_pows_.at(static_cast<std::size_t>(k)); }
  /// Monic modulus of F_q over F_p (empty for the padic branch).
  const std::vector<int>& residue_poly() const { return poly_; }

  /// Same parameters at another level (0 <= l; l = 0 is the zero ring).
  RingLevel at_level(int l) const;

  RingElem zero() const { return {0}; }
  RingElem one() const { return {size_ > 1 ? 1u : 0u}; }
  RingElem uniformizer() const { return {m_ >= 2 ? q_ : 0u}; }
  RingElem from_index(std::uint64_t i) const;
  /// Image of an integer under Z -> O/p^m.
  RingElem from_int(long long x) const;

  RingElem add(RingElem a, RingElem b) const;
  RingElem sub(RingElem a, RingElem b) const;
  RingElem neg(RingElem a) const;
  RingElem mul(RingElem a, RingElem b) const;
  RingElem pow(RingElem a, std::uint64_t e) const;
  /// Throws std::domain_error for non-units.
  RingElem inv(RingElem a) const;

  bool is_unit(RingElem a) const { return m_ > 0 && a.v % q_ != 0; }
  /// v(x) in {0..m}; v(0) = m.
  int valuation(RingElem a) const;
  /// a * uniformiser^k.
  RingElem shift_up(RingElem a, int k) const;
  /// The canonical b with uniformiser^k * b = a; requires v(a) >= k.
  RingElem shift_down(RingElem a, int k) const;
  /// Residue digit in [0, q): the class of a modulo the uniformiser.
  std::uint32_t residue(RingElem a) const { return a.v % q_; }
  /// Reduction to `lower` (same parameters, level <= this level).
  RingElem reduce(RingElem a, const RingLevel& lower) const;

  /// A set whose Z-linear span is the whole ring: uniformiser^j * b for b in
  /// an F_p-basis of the residue field.
  std::vector<RingElem> additive_generators() const;

  /// Number of units, q^{m-1}(q-1).
  std::uint64_t unit_count() const;

  std::string to_string(RingElem a) const;
  std::string describe() const;

  friend bool operator==(const RingLevel& a, const RingLevel& b) {
    return a.branch_ == b.branch_ && a.p_ == b.p_ && a.f_ == b.f_ &&
           a.m_ == b.m_ && a.poly_ == b.poly_;
  }

 private:
  struct Tables;

  static RingLevel build(Branch branch, int p, int f, int m, std::vector<int> poly);
  RingElem add_direct(RingElem a, RingElem b) const;
  RingElem mul_direct(RingElem a, RingElem b) const;

  Branch branch_ = Branch::padic;
  int p_ = 2;
  int f_ = 1;
  int m_ = 1;
  std::uint32_t q_ = 2;
  std::uint32_t size_ = 2;
  std::vector<std::uint32_t> q_pows_;
  std::vector<int> poly_;
  std::shared_ptr<const Tables> tables_;
};

bool is_prime(long long p);

/// Generators g_i with orders d_i such that the unit group is the internal
/// direct product of the cyclic groups <g_i>.
struct UnitGroupBasis {
  std::vector<RingElem> generators;
  std::vector<std::uint64_t> orders;
};

/// The unit group (O/p^m)^x with a cyclic decomposition, discrete logarithms
/// against it, and generators of the congruence filtration 1 + p^l.
class UnitGroup {
 public:
  explicit UnitGroup(const RingLevel& ring);

  const RingLevel& ring() const { return ring_; }
  const UnitGroupBasis& basis() const { return basis_; }
  std::size_t rank() const { return basis_.orders.size(); }
  /// lcm of the basis orders; all character values are exponent-th roots.
  std::uint64_t exponent() const { return exponent_; }
  std::uint64_t order() const { return units_.size(); }
  const std::vector<RingElem>& units() const { return units_; }

  /// Exponent vector of a unit against the basis.  Throws for non-units.
  const std::uint32_t* exponents(RingElem u) const;
  /// Unit with the given exponent vector.
  RingElem element(const std::vector<std::uint64_t>& exps) const;
  /// A generating set of the subgroup (1 + p^l) for 1 <= l <= m; l = 0 is
  /// the whole unit group.
  const std::vector<RingElem>& filtration_generators(int l) const;
  /// Size of 1 + p^l (l >= 1), or the whole group for l = 0.
  std::uint64_t filtration_size(int l) const;

 private:
  RingLevel ring_;
  UnitGroupBasis basis_;
  std::uint64_t exponent_ = 1;
  std::vector<RingElem> units_;
  std::vector<std::int32_t> position_;      // ring index -> unit position, -1 for non-units
  std::vector<std::uint32_t> exponent_table_;  // unit position * rank + i
  std::vector<std::vector<RingElem>> filtration_gens_;
};

/// Exhaustive cyclic decomposition of the unit group.
UnitGroupBasis unit_group_basis(const RingLevel& ring);

/// A character of (O/p^m)^x, given by exponents a_i mod d_i against a
/// UnitGroupBasis: chi(g_i) = e^{2 pi i a_i / d_i}.
class UnitCharacter {
 public:
  UnitCharacter(std::shared_ptr<const UnitGroup> group, std::vector<std::uint64_t> exps);

  const UnitGroup& group() const { return *group_; }
  std::shared_ptr<const UnitGroup> group_ptr() const { return group_; }
  const std::vector<std::uint64_t>& exponents() const { return exps_; }
  /// Least l >= 0 with chi trivial on 1 + p^l.
  int conductor() const { return conductor_; }
  bool is_trivial() const { return conductor_ == 0; }

  /// chi(u) as an exact root of unity.  Throws for non-units.
  RootOfUnity eval(RingElem u) const;
  /// chi(u) as k with chi(u) = e^{2 pi i k / group().exponent()}.
  std::uint64_t eval_index(RingElem u) const;
  std::complex<double> value(RingElem u) const { return eval(u).value(); }
  /// The trivial character is extended by 1 to non-units; others throw.
  std::complex<double> value_or_trivial(RingElem x) const;

  UnitCharacter operator*(const UnitCharacter& o) const;
  UnitCharacter conj() const;
  friend bool operator==(const UnitCharacter& a, const UnitCharacter& b) {
    return a.exps_ == b.exps_;
  }

  std::string label() const;

 private:
  std::shared_ptr<const UnitGroup> group_;
  std::vector<std::uint64_t> exps_;
  int conductor_ = 0;
};

/// All q^{m-1}(q-1) characters, in mixed-radix order of their exponent
/// vectors (the trivial character first).
std::vector<UnitCharacter> characters(const RingLevel& ring);
std::vector<UnitCharacter> characters(std::shared_ptr<const UnitGroup> group);

/// Selects the `index`-th character (in canonical order) among those of the
/// given conductor.  Throws ParameterError if out of range.
UnitCharacter select_character(const std::vector<UnitCharacter>& chars,
                               int conductor, std::size_t index);

}  // namespace psh
