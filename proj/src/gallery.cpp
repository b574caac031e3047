#include "abelk/gallery.hpp"

#include <algorithm>
#include <filesystem>
#include <future>

namespace abelk {

std::string to_string(ClaimKind k) {
  switch (k) {
    case ClaimKind::UnitaryIso: return "UnitaryIso";
    case ClaimKind::UnitaryNonIso: return "UnitaryNonIso";
    case ClaimKind::K1Iso: return "K1Iso";
    case ClaimKind::K1NonIso: return "K1NonIso";
    case ClaimKind::K0Iso: return "K0Iso";
    case ClaimKind::K1Rank: return "K1Rank";
    case ClaimKind::K0Rank: return "K0Rank";
    case ClaimKind::GroupNonIso: return "GroupNonIso";
    case ClaimKind::Wedge2TypeEqual: return "Wedge2TypeEqual";
    case ClaimKind::LemDescBlocks: return "LemDescBlocks";
    case ClaimKind::LemDetEquiv: return "LemDetEquiv";
    case ClaimKind::WitnessValid: return "WitnessValid";
  }
  return "?";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "PASS";
    case Outcome::Fail: return "FAIL";
    case Outcome::Skipped: return "SKIPPED";
    case Outcome::Unknown: return "UNKNOWN";
  }
  return "?";
}

GalleryConfig load_gallery_config(const std::string& path) {
  if (!std::filesystem::exists(path)) throw MissingConfiguration("gallery configuration not found: " + path);
  const Document d = parse_document(read_file(path));
  auto tower_of = [&](const std::string& name) {
    for (const auto& g : d.groups)
      if (g.name == name) {
        const Tower t = to_tower(g.desc.free_part);
        if (t.rank != 2) throw MissingConfiguration(name + " in " + path + " must have rank 2");
        return t;
      }
    throw MissingConfiguration("group '" + name + "' missing from " + path);
  };
  if (d.witnesses.size() != 1) throw MissingConfiguration(path + " must contain exactly one witness");
  return {tower_of("gamma1"), tower_of("gamma2"), d.witnesses.front()};
}

namespace {

NamedGroup group(std::string name, TorsionDesc torsion, FreePart free) {
  return {std::move(name), AbGroupDesc{std::move(torsion), std::move(free)}};
}

TorsionDesc z2() { return FiniteTorsion{FgAbGroup::cyclic(2)}; }

Claim claim(ClaimKind k, std::vector<std::size_t> groups) { return Claim{k, std::move(groups)}; }

Claim trusted(ClaimKind k, std::vector<std::size_t> groups, std::string citation) {
  Claim c{k, std::move(groups)};
  c.provenance = Provenance::LiteratureTrusted;
  c.citation = std::move(citation);
  return c;
}

const char* const class_group_citation =
    "gamma1 = R[1/pi] and gamma2 = I[1/pi] for R = Z[sqrt(-5)] and the non-principal ideal I; "
    "the ideal classes differ in Cl(R) = Z/2, which survives inverting pi";
const char* const cancellation_citation =
    "Z^2 + G1 = Z^2 + G2 would force G1 = G2 since finitely generated free summands cancel";

Outcome verdict_outcome(const ComparisonResult& r, bool want_iso) {
  if (std::holds_alternative<Unknown>(r)) return Outcome::Unknown;
  return std::holds_alternative<Isomorphic>(r) == want_iso ? Outcome::Pass : Outcome::Fail;
}

ClaimResult run_claim(const GalleryEntry& e, const Claim& c) {
  auto g = [&](std::size_t i) -> const AbGroupDesc& { return e.groups.at(c.groups.at(i)).desc; };
  std::string label = e.name + ": " + to_string(c.kind);
  for (std::size_t i : c.groups) label += " " + e.groups.at(i).name;

  switch (c.kind) {
    case ClaimKind::K1Rank:
    case ClaimKind::K0Rank: {
      const KGroupDesc k = c.kind == ClaimKind::K1Rank ? k1(g(0)) : k0(g(0));
      const auto* free = std::get_if<FreeOfRank>(&k.value);
      const bool ok = free && free->rank == c.expected_rank;
      return {label, ok ? Outcome::Pass : Outcome::Fail,
              describe(k) + (ok ? " = " : " != ") + describe(free_of_rank(c.expected_rank))};
    }
    case ClaimKind::UnitaryIso:
    case ClaimKind::UnitaryNonIso:
    case ClaimKind::K1Iso:
    case ClaimKind::K1NonIso:
    case ClaimKind::K0Iso: {
      ComparisonResult r;
      if (c.kind == ClaimKind::UnitaryIso || c.kind == ClaimKind::UnitaryNonIso)
        r = compare_unitary(g(0), g(1), e.witnesses);
      else if (c.kind == ClaimKind::K0Iso)
        r = compare_free(k0(g(0)), k0(g(1)), e.witnesses);
      else
        r = compare_k1(g(0), g(1), e.witnesses);
      const bool want_iso = c.kind == ClaimKind::UnitaryIso || c.kind == ClaimKind::K1Iso || c.kind == ClaimKind::K0Iso;
      Outcome o = verdict_outcome(r, want_iso);
      if (o == Outcome::Pass && !c.expected_invariant.empty() &&
          explanation(r).find(c.expected_invariant) == std::string::npos)
        o = Outcome::Fail;
      return {label, o, verdict_name(r) + ": " + explanation(r)};
    }
    case ClaimKind::GroupNonIso: {
      const ComparisonResult r = compare_free(g(0).free_part, g(1).free_part);
      if (std::holds_alternative<NotIsomorphic>(r)) return {label, Outcome::Pass, explanation(r)};
      if (std::holds_alternative<Isomorphic>(r)) return {label, Outcome::Fail, explanation(r)};
      if (c.provenance == Provenance::LiteratureTrusted)
        return {label, Outcome::Skipped, "literature: " + c.citation + "; computed invariants do not separate"};
      return {label, Outcome::Unknown, explanation(r)};
    }
    case ClaimKind::Wedge2TypeEqual: {
      const TypeClass a = wedge2_type_rank2(to_tower(g(0).free_part));
      const TypeClass b = wedge2_type_rank2(to_tower(g(1).free_part));
      return {label, a == b ? Outcome::Pass : Outcome::Fail, a.str() + " vs " + b.str()};
    }
    case ClaimKind::LemDescBlocks: {
      std::size_t n = 0;
      for (std::size_t i = 0; i < c.groups.size(); ++i) {
        const Tower t = to_tower(g(i).free_part);
        std::vector<IntMatrix> ms = t.prefix;
        ms.insert(ms.end(), t.period.begin(), t.period.end());
        for (const auto& a : ms) {
          ++n;
          if (!desc_block_law(a))
            return {label, Outcome::Fail, "third compound of id2 + " + to_string(a) + " is not diag(A, det A, det A)"};
        }
      }
      return {label, Outcome::Pass, std::to_string(n) + " connecting matrices split as diag(A, det A, det A)"};
    }
    case ClaimKind::LemDetEquiv: {
      for (std::size_t i = 0; i < c.groups.size(); ++i) {
        const Tower t = to_tower(g(i).free_part);
        for (long m = 2; m <= 60; ++m) {
          const bool lhs = lemma_det_oracle(t, m);
          const bool rhs = wedge_divisible(t, m);
          if (lhs != rhs)
            return {label, Outcome::Fail,
                    e.groups.at(c.groups[i]).name + ", m = " + std::to_string(m) + ": element criterion " +
                        (lhs ? "true" : "false") + ", wedge divisibility " + (rhs ? "true" : "false")};
        }
      }
      return {label, Outcome::Pass, "element criterion matches wedge divisibility for m = 2..60"};
    }
    case ClaimKind::WitnessValid: {
      if (e.witnesses.empty()) return {label, Outcome::Fail, "no witness"};
      for (const auto& w : e.witnesses) {
        try {
          const WitnessReport r = check_witness_report(w);
          if (!r.valid) return {label, Outcome::Fail, r.detail};
        } catch (const std::exception& ex) {
          return {label, Outcome::Fail, ex.what()};
        }
      }
      return {label, Outcome::Pass, check_witness_report(e.witnesses.front()).detail};
    }
  }
  return {label, Outcome::Fail, "unhandled claim"};
}

}  // namespace

Gallery builtin_gallery(const std::optional<GalleryConfig>& config) {
  Gallery out;
  for (int m = 1; m <= 6; ++m) {
    GalleryEntry e{"zm-" + std::to_string(m), {group("Z^" + std::to_string(m), trivial_torsion(), free_of_rank(m))}};
    Claim k1c = claim(ClaimKind::K1Rank, {0});
    k1c.expected_rank = 1L << (m - 1);
    Claim k0c = claim(ClaimKind::K0Rank, {0});
    k0c.expected_rank = 1L << (m - 1);
    e.claims = {k1c, k0c};
    out.entries.push_back(std::move(e));
  }
  {
    GalleryEntry e{"ejemplo",
                   {group("Z+tors", CountableTorsion{{2}}, free_of_rank(1)),
                    group("Z^2+tors", CountableTorsion{{2}}, free_of_rank(2))}};
    Claim nonk1 = claim(ClaimKind::K1NonIso, {0, 1});
    nonk1.expected_invariant = "free rank 1 vs 2";
    e.claims = {claim(ClaimKind::UnitaryIso, {0, 1}), nonk1};
    out.entries.push_back(std::move(e));
  }
  {
    GalleryEntry e{"torsion",
                   {group("T2", CountableTorsion{{2}}, free_of_rank(0)),
                    group("T35", CountableTorsion{{3, 5}}, free_of_rank(0))}};
    e.claims = {claim(ClaimKind::UnitaryIso, {0, 1})};
    out.entries.push_back(std::move(e));
  }

  if (!config) {
    out.notices.push_back("no gallery configuration: entries counter, noinso and phi skipped");
  } else {
    const FreePart g1 = tower_form(config->gamma1);
    const FreePart g2 = tower_form(config->gamma2);
    const FreePart d1 = direct_sum_of({free_of_rank(2), g1});
    const FreePart d2 = direct_sum_of({free_of_rank(2), g2});
    {
      GalleryEntry e{"counter",
                     {group("gamma1", trivial_torsion(), g1), group("gamma2", trivial_torsion(), g2),
                      group("delta1", trivial_torsion(), d1), group("delta2", trivial_torsion(), d2)},
                     {config->witness}};
      e.claims = {claim(ClaimKind::WitnessValid, {}),
                  claim(ClaimKind::Wedge2TypeEqual, {0, 1}),
                  claim(ClaimKind::LemDescBlocks, {0, 1}),
                  claim(ClaimKind::LemDetEquiv, {0, 1}),
                  claim(ClaimKind::K1Iso, {2, 3}),
                  claim(ClaimKind::K0Iso, {2, 3}),
                  trusted(ClaimKind::GroupNonIso, {0, 1}, class_group_citation),
                  trusted(ClaimKind::GroupNonIso, {2, 3}, cancellation_citation)};
      out.entries.push_back(std::move(e));
    }
    {
      GalleryEntry e{"noinso",
                     {group("gamma1+Z2", z2(), g1), group("gamma2+Z2", z2(), g2)},
                     {config->witness}};
      e.claims = {claim(ClaimKind::UnitaryIso, {0, 1}),
                  trusted(ClaimKind::GroupNonIso, {0, 1}, class_group_citation)};
      out.entries.push_back(std::move(e));
    }
    {
      GalleryEntry e{"phi",
                     {group("delta1+Z2", z2(), d1), group("delta2+Z2", z2(), d2)},
                     {config->witness}};
      e.claims = {claim(ClaimKind::UnitaryIso, {0, 1}), claim(ClaimKind::K1Iso, {0, 1}),
                  trusted(ClaimKind::GroupNonIso, {0, 1}, cancellation_citation)};
      out.entries.push_back(std::move(e));
    }
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const GalleryEntry& a, const GalleryEntry& b) { return a.name < b.name; });
  return out;
}

std::vector<ClaimResult> verify_entry(const GalleryEntry& e) {
  std::vector<ClaimResult> out;
  for (const auto& c : e.claims) {
    try {
      out.push_back(run_claim(e, c));
    } catch (const std::exception& ex) {
      out.push_back({e.name + ": " + to_string(c.kind), Outcome::Fail, std::string("error: ") + ex.what()});
    }
  }
  return out;
}

std::vector<ClaimResult> verify_gallery(const Gallery& g) {
  std::vector<const GalleryEntry*> entries;
  for (const auto& e : g.entries) entries.push_back(&e);
  std::sort(entries.begin(), entries.end(), [](auto* a, auto* b) { return a->name < b->name; });
  std::vector<std::future<std::vector<ClaimResult>>> jobs;
  for (const auto* e : entries) jobs.push_back(std::async(std::launch::async, verify_entry, std::cref(*e)));
  std::vector<ClaimResult> out;
  for (auto& j : jobs) {
    auto part = j.get();
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Report gallery_report(const Gallery& g, const std::vector<ClaimResult>& results) {
  Report r;
  r.command = "verify-gallery";
  for (const auto& c : results) r.verdicts.push_back({c.label, to_string(c.outcome), c.evidence});
  r.notices = g.notices;
  return r;
}

}  // namespace abelk
