#include "abelk/wedge.hpp"

#include <numeric>
#include <stdexcept>

namespace abelk {

namespace {

Integer two_pow(long e) { return ipow(Integer(2), static_cast<unsigned>(e)); }

void require_rank2(const Tower& t) {
  if (t.rank != 2) throw std::invalid_argument("expected a rank-2 tower, got rank " + std::to_string(t.rank));
}

// Sum of wedge powers of parity `parity`, starting at `first`.
KGroupDesc wedge_sum(const Tower& t, int first, std::vector<FreePart> parts) {
  for (int k = first; k <= t.rank; k += 2) parts.push_back(tower_form(wedge_power_tower(t, k)));
  if (parts.size() == 1) return parts.front();
  return direct_sum_of(std::move(parts));
}

}  // namespace

Tower wedge_power_tower(const Tower& t, int k) {
  if (k < 0 || k > t.rank)
    throw std::out_of_range("wedge power " + std::to_string(k) + " of a rank " + std::to_string(t.rank) + " tower");
  Tower w;
  w.rank = static_cast<int>(binomial(t.rank, k).convert_to<long>());
  for (const auto& a : t.prefix) w.prefix.push_back(compound_matrix(a, k));
  for (const auto& a : t.period) w.period.push_back(compound_matrix(a, k));
  return w;
}

KGroupDesc k1(const AbGroupDesc& g) {
  const FreePart& f = g.free_part;
  const auto r = finite_rank(f);
  if (!r) throw std::domain_error("K1 of a group of infinite rank is not representable");
  if (*r <= 2) return f;
  const Tower t = to_tower(f);
  if (is_free(t)) return free_of_rank(two_pow(*r - 1).convert_to<long>());
  return wedge_sum(t, 3, {f});
}

KGroupDesc k0(const AbGroupDesc& g) {
  const FreePart& f = g.free_part;
  const auto r = finite_rank(f);
  if (!r) throw std::domain_error("K0 of a group of infinite rank is not representable");
  if (*r == 0) return free_of_rank(1);
  const Tower t = to_tower(f);
  if (is_free(t)) return free_of_rank(two_pow(*r - 1).convert_to<long>());
  return wedge_sum(t, 2, {free_of_rank(1)});
}

TypeClass wedge2_type_rank2(const Tower& t) {
  require_rank2(t);
  return rank1_type(wedge_power_tower(t, 2));
}

bool lemma_det_oracle(const Tower& t, const Integer& m) {
  require_rank2(t);
  if (m < 2) throw std::invalid_argument("modulus must be >= 2");
  const DivisibilityTest divisible(t, m);
  const long n = m.convert_to<long>();
  for (long k1 = 0; k1 < n; ++k1) {
    const bool k1_unit = std::gcd(k1, n) == 1;
    for (long k2 = 0; k2 < n; ++k2) {
      if (!k1_unit && std::gcd(k2, n) != 1) continue;
      const long c[2] = {k1, k2};
      if (divisible.divides(c)) return true;
    }
  }
  return false;
}

bool wedge_divisible(const Tower& t, const Integer& m) {
  require_rank2(t);
  const long one[1] = {1};
  return DivisibilityTest(wedge_power_tower(t, 2), m).divides(one);
}

bool desc_block_law(const IntMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) throw std::invalid_argument("expected a 2x2 matrix");
  const Integer d = determinant(a);
  IntMatrix dm(1, 1);
  dm(0, 0) = d;
  return compound_matrix(block_diagonal({identity_matrix(2), a}), 3) == block_diagonal({a, dm, dm});
}

}  // namespace abelk
