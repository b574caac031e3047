#pragma once

// Exterior powers of towers and the K-theory of group C*-algebras of
// countable abelian groups: K1 = odd wedges, K0 = even wedges of the
// torsion-free quotient.

#include "abelk/groups.hpp"

namespace abelk {

/// Tower of the k-th exterior power: every connecting matrix is replaced by
/// its k-th compound. Throws std::out_of_range unless 0 <= k <= rank.
Tower wedge_power_tower(const Tower& t, int k);

KGroupDesc k1(const AbGroupDesc& g);
KGroupDesc k0(const AbGroupDesc& g);

/// Type of the rank-1 group t ^ t. Throws std::invalid_argument unless
/// t.rank == 2.
TypeClass wedge2_type_rank2(const Tower& t);

/// Whether some k1 x1 + k2 x2 with k1 or k2 prime to m is m-divisible, for
/// the stage-0 basis x1, x2.
bool lemma_det_oracle(const Tower& t, const Integer& m);

/// Whether x1 ^ x2 is m-divisible in the exterior square.
bool wedge_divisible(const Tower& t, const Integer& m);

/// Third compound of id_2 (+) a in lexicographic subset order equals
/// diag(a, det a, det a).
bool desc_block_law(const IntMatrix& a);

}  // namespace abelk
