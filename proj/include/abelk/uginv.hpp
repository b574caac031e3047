#pragma once

// Unitary-group invariant (torsion cardinal alpha, alpha-fold sum of the
// torsion-free quotient) and three-valued isomorphism comparison of the
// resulting groups and of K1-groups.

#include "abelk/wedge.hpp"

#include <string>
#include <variant>
#include <vector>

namespace abelk {

struct Isomorphic {
  std::string evidence;
};
struct NotIsomorphic {
  std::string invariant;
};
struct Unknown {
  std::string reason;
};

using ComparisonResult = std::variant<Isomorphic, NotIsomorphic, Unknown>;

/// "Isomorphic", "NotIsomorphic" or "Unknown".
std::string verdict_name(const ComparisonResult& r);
/// Evidence, separating invariant or reason.
std::string explanation(const ComparisonResult& r);

/// Asserts that `copies` copies of src and of dst are isomorphic via `map`,
/// written in stage-0 rational coordinates of the n-fold sums.
struct Witness {
  long copies = 1;
  RatMatrix map;
  FreePart src;
  FreePart dst;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularWitness : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct WitnessReport {
  bool valid = false;
  std::size_t src_stage = 0;  // deepest source stage checked
  std::size_t dst_stage = 0;  // deepest target stage checked for the inverse
  std::string detail;
};

/// Checks that map and its inverse carry the deepest checked stage lattice
/// into the other group. Stage lattices increase, so this covers every
/// earlier stage. Throws DimensionMismatch or SingularWitness.
WitnessReport check_witness_report(const Witness& w);
bool check_witness(const Witness& w);

struct UnitaryInvariant {
  Cardinal alpha;
  FreePart amplified;
};

FreePart amplify(const FreePart& f, const Cardinal& alpha);
UnitaryInvariant unitary_invariant(const AbGroupDesc& d);

/// Isomorphism of torsion-free parts. Witnesses that fail check_witness are
/// ignored.
ComparisonResult compare_free(const FreePart& a, const FreePart& b, const std::vector<Witness>& witnesses = {});
ComparisonResult compare_unitary(const AbGroupDesc& a, const AbGroupDesc& b,
                                 const std::vector<Witness>& witnesses = {});
ComparisonResult compare_k1(const AbGroupDesc& a, const AbGroupDesc& b, const std::vector<Witness>& witnesses = {});

}  // namespace abelk
