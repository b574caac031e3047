#pragma once

// Finite-rank torsion-free groups presented as eventually periodic inductive
// limits Z^r -> Z^r -> ... of nonsingular integer matrices.
//
// Stage s carries a copy of Z^r; the map from stage s to stage s + 1 is
// prefix[s] while s < |prefix| and period[(s - |prefix|) mod |period|]
// afterwards. An empty period means every later map is the identity. With
// M_s the product of the first s maps, the limit is the subgroup
// union_s M_s^{-1} Z^r of Q^r ("stage-0 rational coordinates").

#include "abelk/exactla.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace abelk {

struct Tower {
  int rank = 1;
  std::vector<IntMatrix> prefix;
  std::vector<IntMatrix> period;

  std::size_t prefix_length() const { return prefix.size(); }
  std::size_t period_length() const { return period.size(); }

  /// Map from stage s to stage s + 1.
  IntMatrix connecting(std::size_t stage) const;
  /// M_s: product of the maps from stage 0 to stage s.
  IntMatrix cumulative(std::size_t stage) const;
  /// period[b-1] * ... * period[0]; the identity for an empty period.
  IntMatrix period_product() const;

  friend bool operator==(const Tower& a, const Tower& b);
};

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> defects);
  const std::vector<std::string>& defects() const { return defects_; }

 private:
  std::vector<std::string> defects_;
};

class ZeroElement : public std::domain_error {
 public:
  ZeroElement() : std::domain_error("height of the zero element") {}
};

/// Size mismatches and singular matrices, one message per defect.
std::vector<std::string> validate_tower(const Tower& t);
/// Throws ValidationError when validate_tower reports anything.
void require_valid(const Tower& t);

Tower free_tower(int rank);
/// Rank-1 tower with the given prefix and period multipliers.
Tower rank1_tower(const std::vector<Integer>& prefix, const std::vector<Integer>& period);

/// Block-diagonal sum; the period of the sum has the lcm of the periods.
Tower direct_sum(const std::vector<Tower>& parts);

/// Finest simultaneous block-diagonal splitting of all connecting matrices,
/// blocks ordered by their first coordinate.
std::vector<Tower> block_decomposition(const Tower& t);

/// Same limit, canonical presentation: identity maps dropped, the period
/// reduced to its primitive cycle and the prefix tail folded into it.
Tower normalized(const Tower& t);

/// True when every connecting matrix is unimodular (the limit is Z^r).
bool is_free(const Tower& t);

/// Distinct primes dividing some connecting determinant.
std::vector<Prime> determinant_primes(const Tower& t);

struct GroupElement {
  std::size_t stage = 0;
  IntVector coords;
};

RatVector rational_form(const Tower& t, const GroupElement& e);

/// Throws std::out_of_range when s < e.stage.
GroupElement push_to_stage(const Tower& t, const GroupElement& e, std::size_t s);

bool elements_equal(const Tower& t, const GroupElement& a, const GroupElement& b);

/// Stages that suffice to decide whether a vector with denominator D lies
/// in the limit: |prefix| + |period| * r * max_p v_p(D).
std::size_t membership_depth(const Tower& t, const Integer& denominator);

/// The element at the earliest stage representing v, or nullopt.
std::optional<GroupElement> membership(const Tower& t, const RatVector& v);

bool is_divisible(const Tower& t, const GroupElement& e, const Integer& m);

/// Decides m-divisibility of stage-0 integer vectors for a fixed tower and
/// modulus: c/m lies in the limit iff M_S c = 0 mod m at the stable stage S.
class DivisibilityTest {
 public:
  DivisibilityTest(const Tower& t, const Integer& m);
  bool operator()(const IntVector& stage0_coords) const;
  /// Same, for small moduli and coordinates.
  bool divides(std::span<const long> stage0_coords) const;

 private:
  Integer modulus_;
  IntMatrix stable_;
  std::vector<long> small_;  // stable_ as longs when the modulus fits
};

class Exponent {
 public:
  Exponent(long value = 0) : value_(value) {}  // NOLINT: implicit from counts
  static Exponent infinite() {
    Exponent e;
    e.infinite_ = true;
    return e;
  }
  bool is_infinite() const { return infinite_; }
  long value() const { return value_; }
  std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  bool infinite_ = false;
  long value_ = 0;
};

/// p-height of a nonzero element. Throws ZeroElement.
Exponent height(const Tower& t, const GroupElement& e, Prime p);

/// Formal product of prime powers with exponents in N u {inf}. Only nonzero
/// exponents are stored.
class Supernatural {
 public:
  Supernatural() = default;
  Supernatural(std::initializer_list<std::pair<const Prime, Exponent>> entries);

  Exponent at(Prime p) const;
  void set(Prime p, Exponent e);
  const std::map<Prime, Exponent>& entries() const { return entries_; }
  std::set<Prime> infinite_support() const;
  /// "[2^inf, 3^1]"; "[]" for the trivial product.
  std::string str() const;

  friend bool operator==(const Supernatural&, const Supernatural&) = default;

 private:
  std::map<Prime, Exponent> entries_;
};

/// Height sequence of a nonzero element. Support: primes dividing a
/// connecting determinant plus primes dividing the element's content.
Supernatural characteristic(const Tower& t, const GroupElement& e);

/// Equal up to finitely many finite entries.
bool types_equivalent(const Supernatural& a, const Supernatural& b);

struct TypeClass {
  Supernatural representative;

  /// Primes of infinite height: the complete invariant of the class.
  std::set<Prime> key() const { return representative.infinite_support(); }
  std::string str() const;

  friend bool operator==(const TypeClass& a, const TypeClass& b) {
    return types_equivalent(a.representative, b.representative);
  }
};

/// Rank-1 tower whose stage-0 generator has the given characteristic.
Tower tower_from_supernatural(const Supernatural& s);

/// Type of a rank-1 tower (characteristic of the stage-0 generator).
TypeClass rank1_type(const Tower& t);

bool rank1_isomorphic(const Tower& a, const Tower& b);

/// Type of the top exterior power, computed from connecting determinants.
TypeClass top_wedge_type(const Tower& t);

/// dim_{F_p} of G / pG.
int p_rank(const Tower& t, Prime p);

std::string to_string(const Tower& t);

}  // namespace abelk
