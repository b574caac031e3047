#pragma once

// Finitely generated abelian groups in invariant-factor form, torsion
// descriptors and the cardinals used to compare them.

#include "abelk/exactla.hpp"

#include <string>
#include <variant>
#include <vector>

namespace abelk {

/// Z^free_rank + Z/d1 + ... + Z/dk with 2 <= d1 | d2 | ... | dk.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  /// Throws std::invalid_argument unless the factors form a divisibility
  /// chain of integers >= 2.
  FgAbGroup(int free_rank, std::vector<Integer> invariant_factors);

  static FgAbGroup trivial() { return {}; }
  static FgAbGroup cyclic(const Integer& order);

  int free_rank() const { return free_rank_; }
  const std::vector<Integer>& invariant_factors() const { return factors_; }
  bool is_finite() const { return free_rank_ == 0; }
  /// |G| for finite G.
  Integer order() const;
  std::string str() const;

  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

 private:
  int free_rank_ = 0;
  std::vector<Integer> factors_;
};

/// Z^cols / (row space of R).
FgAbGroup from_relations(const IntMatrix& relations);

/// Direct sum of cyclic groups Z/n_i (n_i >= 1), canonicalised.
FgAbGroup from_cyclic_orders(const std::vector<Integer>& orders);

bool fg_isomorphic(const FgAbGroup& a, const FgAbGroup& b);

/// Fin(n) with n >= 1, or the countable infinite cardinal.
class Cardinal {
 public:
  static Cardinal fin(const Integer& n);
  static Cardinal omega() { return Cardinal(); }

  bool is_omega() const { return omega_; }
  /// Only meaningful when !is_omega().
  const Integer& value() const { return n_; }
  std::string str() const { return omega_ ? "omega" : n_.str(); }

  friend bool operator==(const Cardinal&, const Cardinal&) = default;
  friend Cardinal operator+(const Cardinal& a, const Cardinal& b);
  friend Cardinal operator*(const Cardinal& a, const Cardinal& b);

 private:
  Cardinal() = default;
  bool omega_ = true;
  Integer n_ = 0;
};

struct FiniteTorsion {
  FgAbGroup group;
  friend bool operator==(const FiniteTorsion&, const FiniteTorsion&) = default;
};

/// A countably infinite torsion group. Only its cardinality enters any
/// invariant; listed_orders records the cyclic orders named in the input
/// file so that it can be written back.
struct CountableTorsion {
  std::vector<Integer> listed_orders;
  friend bool operator==(const CountableTorsion&, const CountableTorsion&) = default;
};

using TorsionDesc = std::variant<FiniteTorsion, CountableTorsion>;

TorsionDesc trivial_torsion();
Cardinal torsion_cardinal(const TorsionDesc& t);
std::string to_string(const TorsionDesc& t);

}  // namespace abelk
