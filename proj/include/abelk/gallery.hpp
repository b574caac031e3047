#pragma once

// Named examples with machine-checkable claims about their unitary groups
// and K-groups.

#include "abelk/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace abelk {

enum class ClaimKind {
  UnitaryIso,
  UnitaryNonIso,
  K1Iso,
  K1NonIso,
  K0Iso,
  K1Rank,
  K0Rank,
  GroupNonIso,
  Wedge2TypeEqual,
  LemDescBlocks,
  LemDetEquiv,
  WitnessValid,
};

enum class Provenance { Checked, LiteratureTrusted };

enum class Outcome { Pass, Fail, Skipped, Unknown };

std::string to_string(ClaimKind k);
std::string to_string(Outcome o);

struct Claim {
  ClaimKind kind;
  std::vector<std::size_t> groups;  // indices into GalleryEntry::groups
  long expected_rank = 0;           // K1Rank, K0Rank
  std::string expected_invariant;   // NonIso claims: substring of the separating invariant
  Provenance provenance = Provenance::Checked;
  std::string citation;             // LiteratureTrusted claims
};

struct GalleryEntry {
  std::string name;
  std::vector<NamedGroup> groups;
  std::vector<Witness> witnesses;
  std::vector<Claim> claims;
};

class MissingConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The rank-2 pair with isomorphic squares and its witness.
struct GalleryConfig {
  Tower gamma1;
  Tower gamma2;
  Witness witness;
};

/// Reads groups named gamma1, gamma2 and one witness. Throws
/// MissingConfiguration when the file is absent or incomplete.
GalleryConfig load_gallery_config(const std::string& path);

struct Gallery {
  std::vector<GalleryEntry> entries;
  std::vector<std::string> notices;
};

/// Entries that need the configured pair are left out, with a notice, when
/// config is empty.
Gallery builtin_gallery(const std::optional<GalleryConfig>& config);

struct ClaimResult {
  std::string label;
  Outcome outcome;
  std::string evidence;
};

std::vector<ClaimResult> verify_entry(const GalleryEntry& e);

/// Entries are verified concurrently; results are ordered by entry name.
std::vector<ClaimResult> verify_gallery(const Gallery& g);

Report gallery_report(const Gallery& g, const std::vector<ClaimResult>& results);

}  // namespace abelk
