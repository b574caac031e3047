#include "abelk/io.hpp"
#include "abelk/uginv.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace abelk;

namespace {

FreePart F(const std::string& s) { return parse_free_spec(s); }

AbGroupDesc group(TorsionDesc t, FreePart f) { return AbGroupDesc{std::move(t), std::move(f)}; }

bool iso(const ComparisonResult& r) { return std::holds_alternative<Isomorphic>(r); }
bool non_iso(const ComparisonResult& r) { return std::holds_alternative<NotIsomorphic>(r); }
bool unknown(const ComparisonResult& r) { return std::holds_alternative<Unknown>(r); }

Tower copies_of(const FreePart& f, long n) {
  const Tower t = to_tower(f);
  return direct_sum(std::vector<Tower>(static_cast<std::size_t>(n), t));
}

// Checks W on generators of the first `stages` source stages and W^{-1} on
// target generators, by unrolling both towers to `depth`.
bool unrolled_witness(const Witness& w, std::size_t stages, std::size_t depth) {
  const Tower src = copies_of(w.src, w.copies);
  const Tower dst = copies_of(w.dst, w.copies);
  const RatMatrix inv = oracle::adjugate_inverse(w.map);
  for (std::size_t s = 0; s <= stages; ++s) {
    const RatMatrix gs = oracle::adjugate_inverse(to_rational(oracle::unrolled_product(src, s)));
    const RatMatrix gd = oracle::adjugate_inverse(to_rational(oracle::unrolled_product(dst, s)));
    for (Eigen::Index j = 0; j < gs.cols(); ++j) {
      if (!oracle::unrolled_member(dst, w.map * gs.col(j), depth)) return false;
      if (!oracle::unrolled_member(src, inv * gd.col(j), depth)) return false;
    }
  }
  return true;
}

Witness fl_witness() {
  return parse_document(read_file(std::string(ABELK_DATA_DIR) + "/fuchs_loonstra.grp")).witnesses.at(0);
}

}  // namespace

TEST_CASE("amplification") {
  CHECK(describe(amplify(free_of_rank(3), Cardinal::fin(1))) == "Z^3");
  CHECK(describe(amplify(free_of_rank(3), Cardinal::fin(4))) == "Z^12");
  CHECK(describe(amplify(free_of_rank(2), Cardinal::omega())) == "CD{type(Z) xomega}");
  CHECK(describe(amplify(F("{rank1: [2^inf, 3^1]}"), Cardinal::fin(3))) == "CD{type(2^inf) x3}");
  CHECK(describe(amplify(F("{cd: [[2^inf] x2, [] x1]}"), Cardinal::fin(2))) ==
        "CD{type(2^inf) x4, type(Z) x2}");
  const auto t = amplify(F("{tower: 2, prefix: [], period: [[[1,1],[0,2]]]}"), Cardinal::fin(3));
  CHECK(finite_rank(t) == 6);
  CHECK(!finite_rank(amplify(F("{rank1: [5^inf]}"), Cardinal::omega())));
}

TEST_CASE("unitary invariant") {
  const auto u = unitary_invariant(group(trivial_torsion(), free_of_rank(2)));
  CHECK(u.alpha == Cardinal::fin(1));
  CHECK(describe(u.amplified) == "Z^2");
  const auto v = unitary_invariant(group(FiniteTorsion{from_cyclic_orders({2, 3})}, free_of_rank(1)));
  CHECK(v.alpha == Cardinal::fin(6));
  CHECK(describe(v.amplified) == "Z^6");
  CHECK(unitary_invariant(group(CountableTorsion{{2}}, free_of_rank(1))).alpha == Cardinal::omega());
}

TEST_CASE("unitary comparisons") {
  CHECK(iso(compare_unitary(group(FiniteTorsion{from_cyclic_orders({2})}, free_of_rank(2)),
                            group(FiniteTorsion{from_cyclic_orders({2})}, free_of_rank(2)))));
  CHECK(iso(compare_unitary(group(FiniteTorsion{from_cyclic_orders({4})}, free_of_rank(1)),
                            group(FiniteTorsion{from_cyclic_orders({2, 2})}, free_of_rank(1)))));
  // The torsion cardinal is itself an invariant.
  CHECK(non_iso(compare_unitary(group(FiniteTorsion{from_cyclic_orders({2})}, free_of_rank(2)),
                                group(trivial_torsion(), free_of_rank(4)))));
  CHECK(iso(compare_unitary(group(CountableTorsion{{2}}, free_of_rank(1)),
                            group(CountableTorsion{{3, 5}}, free_of_rank(2)))));
  const auto r = compare_unitary(group(trivial_torsion(), free_of_rank(1)),
                                 group(FiniteTorsion{from_cyclic_orders({3})}, free_of_rank(1)));
  REQUIRE(non_iso(r));
  CHECK(explanation(r).find("torsion cardinal 1 vs 3") != std::string::npos);
  CHECK(iso(compare_unitary(group(FiniteTorsion{from_cyclic_orders({2})}, F("{rank1: [2^inf]}")),
                            group(FiniteTorsion{from_cyclic_orders({2})}, F("{cd: [[2^inf, 3^1] x1]}")))));
  CHECK(iso(compare_unitary(group(FiniteTorsion{from_cyclic_orders({3})}, F("{rank1: [2^inf]}")),
                            group(FiniteTorsion{from_cyclic_orders({3})}, F("{cd: [[2^inf] x1]}")))));
}

TEST_CASE("free part comparisons") {
  CHECK(iso(compare_free(free_of_rank(2), F("{cd: [[] x2]}"))));
  CHECK(non_iso(compare_free(free_of_rank(2), free_of_rank(3))));
  CHECK(non_iso(compare_free(F("{rank1: [2^inf]}"), F("{rank1: [3^inf]}"))));
  CHECK(iso(compare_free(F("{rank1: [2^inf, 3^4]}"), F("{rank1: [2^inf]}"))));
  CHECK(iso(compare_free(F("{sum: [{rank1: [2^inf]}, {free: 1}]}"), F("{cd: [[] x1, [2^inf] x1]}"))));
  CHECK(non_iso(compare_free(F("{cd: [[2^inf] x2, [] x1]}"), F("{cd: [[2^inf] x1, [] x2]}"))));
  CHECK(iso(compare_free(F("{cd: [[2^inf] xomega]}"), F("{cd: [[2^inf] xomega, [2^inf] x3]}"))));

  // Towers that are sums of rank-1 blocks are compared as such.
  CHECK(iso(compare_free(F("{tower: 2, prefix: [], period: [[[2,0],[0,3]]]}"),
                         F("{cd: [[3^inf] x1, [2^inf] x1]}"))));

  // p-rank separates an indecomposable tower from a completely decomposable one.
  const auto r = compare_free(F("{tower: 2, prefix: [], period: [[[1,1],[0,2]]]}"), F("{cd: [[2^inf] x2]}"));
  REQUIRE(non_iso(r));
  CHECK(explanation(r).find("at p = 2") != std::string::npos);

  // Same rank, type and p-ranks: undecided without a witness.
  CHECK(unknown(compare_free(F("{tower: 2, prefix: [], period: [[[0,1],[2,0]]]}"), F("{cd: [[2^inf] x2]}"))));
}

TEST_CASE("comparisons are symmetric and decide completely decomposable inputs") {
  std::mt19937_64 rng(oracle::seed + 40);
  const std::vector<std::string> types = {"[]", "[2^inf]", "[3^inf]", "[2^inf, 3^inf]", "[2^1, 5^inf]"};
  std::uniform_int_distribution<std::size_t> pick(0, types.size() - 1);
  std::uniform_int_distribution<int> mult(1, 3), len(1, 3);
  auto random_cd = [&] {
    std::string s = "{cd: [";
    for (int i = len(rng); i > 0; --i) s += types[pick(rng)] + " x" + std::to_string(mult(rng)) + (i > 1 ? ", " : "");
    return F(s + "]}");
  };
  for (int trial = 0; trial < 80; ++trial) {
    const FreePart a = random_cd();
    const FreePart b = trial % 4 == 0 ? a : random_cd();
    const auto ab = compare_free(a, b);
    const auto ba = compare_free(b, a);
    CHECK_FALSE(unknown(ab));
    CHECK(verdict_name(ab) == verdict_name(ba));
    if (trial % 4 == 0) CHECK(iso(ab));
  }
}

TEST_CASE("rank-1 comparisons agree with rank-1 isomorphism") {
  std::mt19937_64 rng(oracle::seed + 41);
  for (int trial = 0; trial < 60; ++trial) {
    const Tower a = oracle::random_tower(rng, 1, 2, 2, 6);
    const Tower b = oracle::random_tower(rng, 1, 2, 2, 6);
    CHECK(iso(compare_free(FreePart{Rank1{a}}, FreePart{Rank1{b}})) == rank1_isomorphic(a, b));
  }
}

TEST_CASE("witness checking") {
  Witness id{1, to_rational(identity_matrix(2)), F("{tower: 2, prefix: [], period: [[[1,1],[0,2]]]}"),
             F("{tower: 2, prefix: [], period: [[[1,1],[0,2]]]}")};
  CHECK(check_witness(id));

  Witness dbl{1, to_rational(int_matrix(1, 1, {2})), free_of_rank(1), free_of_rank(1)};
  CHECK_FALSE(check_witness(dbl));
  Witness half{1, to_rational(int_matrix(1, 1, {2})), F("{rank1: [2^inf]}"), F("{rank1: [2^inf]}")};
  CHECK(check_witness(half));

  Witness mismatch{1, to_rational(identity_matrix(3)), free_of_rank(2), free_of_rank(2)};
  CHECK_THROWS_AS(check_witness(mismatch), DimensionMismatch);
  Witness singular{1, to_rational(int_matrix(2, 2, {1, 2, 2, 4})), free_of_rank(2), free_of_rank(2)};
  CHECK_THROWS_AS(check_witness(singular), SingularWitness);

  // 2^10 sends Z[1/2] into Z on the first ten stages only.
  Witness deep{1, to_rational(int_matrix(1, 1, {1024})), F("{rank1: [2^inf]}"), free_of_rank(1)};
  const auto rep = check_witness_report(deep);
  CHECK_FALSE(rep.valid);
  CHECK(rep.src_stage >= 11);
  CHECK(unrolled_witness(deep, 10, 10));
  CHECK_FALSE(unrolled_witness(deep, 11, 11));

  const Witness fl = fl_witness();
  CHECK(fl.copies == 2);
  CHECK(check_witness(fl));
  CHECK(unrolled_witness(fl, 6, 12));

  Witness broken = fl;
  broken.map(0, 0) += 1;
  CHECK(check_witness(broken) == unrolled_witness(broken, 6, 12));
}

TEST_CASE("witnesses decide otherwise undecided comparisons") {
  const Witness fl = fl_witness();
  const FreePart g1 = FreePart{TowerForm{to_tower(fl.src), Cardinal::fin(2)}};
  const FreePart g2 = FreePart{TowerForm{to_tower(fl.dst), Cardinal::fin(2)}};
  CHECK(unknown(compare_free(g1, g2)));
  CHECK(iso(compare_free(g1, g2, {fl})));
  CHECK(iso(compare_free(g2, g1, {fl})));
  CHECK(unknown(compare_free(fl.src, fl.dst, {fl})));
  // With finite torsion of order 2 the unitary invariant doubles the free part.
  CHECK(iso(compare_unitary(group(FiniteTorsion{from_cyclic_orders({2})}, fl.src),
                            group(FiniteTorsion{from_cyclic_orders({2})}, fl.dst), {fl})));
}

TEST_CASE("K1 comparison") {
  const auto r = compare_k1(group(trivial_torsion(), free_of_rank(2)), group(trivial_torsion(), free_of_rank(3)));
  REQUIRE(non_iso(r));
  CHECK(explanation(r).find("free rank 2 vs 4") != std::string::npos);
  CHECK(unknown(compare_k1(group(trivial_torsion(), F("{cd: [[] xomega]}")),
                           group(trivial_torsion(), F("{cd: [[] xomega]}")))));
}
