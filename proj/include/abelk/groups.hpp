#pragma once

// Descriptions of countable abelian groups: a torsion descriptor plus a
// symbolic torsion-free part. K-groups are described with the same
// torsion-free vocabulary.

#include "abelk/fgab.hpp"
#include "abelk/tower.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace abelk {

struct FreeOfRank {
  long rank = 0;
};

struct Rank1 {
  Tower tower;
};

struct CdTerm {
  Supernatural type;
  Cardinal multiplicity;
};

/// Direct sum of rank-1 groups; each term contributes `multiplicity` copies
/// of a rank-1 group whose generator has characteristic `type`.
struct CompletelyDecomposable {
  std::vector<CdTerm> terms;
};

/// `copies` copies of the tower's limit (omega marks a countable sum).
struct TowerForm {
  Tower tower;
  Cardinal copies = Cardinal::fin(1);
};

struct FreePart;

struct DirectSum {
  std::vector<FreePart> summands;
};

struct FreePart {
  std::variant<FreeOfRank, Rank1, CompletelyDecomposable, TowerForm, DirectSum> value;
};

using KGroupDesc = FreePart;

struct AbGroupDesc {
  TorsionDesc torsion = trivial_torsion();
  FreePart free_part = FreePart{FreeOfRank{0}};
};

inline FreePart free_of_rank(long r) { return FreePart{FreeOfRank{r}}; }
inline FreePart tower_form(Tower t) { return FreePart{TowerForm{std::move(t)}}; }
FreePart direct_sum_of(std::vector<FreePart> parts);

/// Throws std::invalid_argument on empty sums, empty CD multisets or invalid
/// towers.
void require_valid(const FreePart& f);

/// Torsion-free rank; nullopt when some multiplicity is omega.
std::optional<long> finite_rank(const FreePart& f);

/// One block-diagonal tower presenting the whole part. Throws
/// std::domain_error for omega multiplicities and for the trivial group.
Tower to_tower(const FreePart& f);

std::string describe(const FreePart& f);
std::string describe(const AbGroupDesc& g);

}  // namespace abelk
