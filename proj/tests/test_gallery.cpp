#include "abelk/gallery.hpp"
#include "doctest.h"

using namespace abelk;

namespace {

const std::string config_path = std::string(ABELK_DATA_DIR) + "/fuchs_loonstra.grp";

const Claim* find_claim(const GalleryEntry& e, ClaimKind k) {
  for (const auto& c : e.claims)
    if (c.kind == k) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("configuration loading") {
  const GalleryConfig cfg = load_gallery_config(config_path);
  CHECK(cfg.gamma1.rank == 2);
  CHECK(cfg.gamma2.rank == 2);
  CHECK(cfg.witness.copies == 2);
  CHECK_THROWS_AS(load_gallery_config("/nonexistent/gallery.grp"), MissingConfiguration);
}

TEST_CASE("gallery with configuration") {
  const Gallery g = builtin_gallery(load_gallery_config(config_path));
  CHECK(g.notices.empty());
  const auto results = verify_gallery(g);
  REQUIRE_FALSE(results.empty());
  for (const auto& r : results) {
    INFO(r.label << " -> " << r.evidence);
    CHECK((r.outcome == Outcome::Pass || r.outcome == Outcome::Skipped));
  }
  // Exactly the literature-trusted claims are skipped.
  std::size_t trusted = 0;
  for (const auto& e : g.entries)
    for (const auto& c : e.claims) trusted += c.provenance == Provenance::LiteratureTrusted;
  std::size_t skipped = 0;
  for (const auto& r : results) skipped += r.outcome == Outcome::Skipped;
  CHECK(skipped == trusted);
  CHECK(trusted > 0);
}

TEST_CASE("gallery without configuration") {
  const Gallery g = builtin_gallery(std::nullopt);
  REQUIRE(g.notices.size() == 1);
  CHECK(g.notices[0].find("counter") != std::string::npos);
  for (const auto& e : g.entries) CHECK(e.name != "counter");
  for (const auto& r : verify_gallery(g)) CHECK(r.outcome == Outcome::Pass);
  const Report rep = gallery_report(g, verify_gallery(g));
  CHECK(rep.notices == g.notices);
}

TEST_CASE("a broken witness fails its claims") {
  GalleryConfig cfg = load_gallery_config(config_path);
  cfg.witness.map(0, 0) += 1;
  const Gallery g = builtin_gallery(cfg);
  bool saw_fail = false;
  for (const auto& e : g.entries) {
    if (!find_claim(e, ClaimKind::WitnessValid)) continue;
    for (const auto& r : verify_entry(e))
      if (r.label.find("WitnessValid") != std::string::npos) {
        CHECK(r.outcome == Outcome::Fail);
        saw_fail = true;
      }
  }
  CHECK(saw_fail);
}

TEST_CASE("verification output is deterministic") {
  const Gallery g = builtin_gallery(load_gallery_config(config_path));
  const auto a = verify_gallery(g);
  const auto b = verify_gallery(g);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    CHECK(a[i].evidence == b[i].evidence);
  }
  CHECK(to_text(gallery_report(g, a)) == to_text(gallery_report(g, b)));
}
