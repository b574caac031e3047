#include "abelk/uginv.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace abelk {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Multiplicity in N u {omega}; zero means absent.
struct Mult {
  bool omega = false;
  Integer n = 0;

  static Mult of(const Cardinal& c) { return c.is_omega() ? Mult{true, 0} : Mult{false, c.value()}; }
  bool zero() const { return !omega && n == 0; }
  std::string str() const { return omega ? "omega" : n.str(); }
  friend bool operator==(const Mult& a, const Mult& b) { return a.omega == b.omega && (a.omega || a.n == b.n); }
  friend Mult operator+(const Mult& a, const Mult& b) {
    if (a.omega || b.omega) return {true, 0};
    return {false, a.n + b.n};
  }
  friend Mult operator*(const Mult& a, const Mult& b) {
    if (a.zero() || b.zero()) return {};
    if (a.omega || b.omega) return {true, 0};
    return {false, a.n * b.n};
  }
  // a >= b, with omega absorbing every finite count.
  friend bool covers(const Mult& a, const Mult& b) { return a.omega || (!b.omega && a.n >= b.n); }
  // a - b for covers(a, b); omega minus anything finite stays omega.
  friend Mult minus(const Mult& a, const Mult& b) {
    if (a.omega) return b.omega ? Mult{} : a;
    return {false, a.n - b.n};
  }
};

using TypeKey = std::set<Prime>;

std::string key_str(const TypeKey& k) {
  if (k.empty()) return "type(0)";
  std::string out = "type(";
  bool first = true;
  for (Prime p : k) {
    out += (first ? "" : ",") + std::to_string(p) + "^inf";
    first = false;
  }
  return out + ")";
}

// Sum of rank-1 summands grouped by type plus indecomposable-looking tower
// blocks of rank >= 2, each with a multiplicity.
struct Canonical {
  std::map<TypeKey, Mult> cd;
  std::vector<std::pair<Tower, Mult>> towers;

  void add_cd(const TypeKey& k, const Mult& m) {
    if (m.zero()) return;
    cd[k] = cd[k] + m;
  }
  void add_tower(const Tower& t, const Mult& m) {
    if (m.zero()) return;
    for (auto& [u, n] : towers)
      if (u == t) {
        n = n + m;
        return;
      }
    towers.emplace_back(t, m);
  }
  void prune() {
    std::erase_if(cd, [](const auto& kv) { return kv.second.zero(); });
    std::erase_if(towers, [](const auto& tm) { return tm.second.zero(); });
  }
  bool empty() const { return cd.empty() && towers.empty(); }

  Mult rank() const {
    Mult r;
    for (const auto& [k, m] : cd) r = r + m;
    for (const auto& [t, m] : towers) r = r + Mult{false, t.rank} * m;
    return r;
  }

  Mult* find_tower(const Tower& t) {
    for (auto& [u, n] : towers)
      if (u == t) return &n;
    return nullptr;
  }

  std::string str() const {
    std::vector<std::string> parts;
    for (const auto& [k, m] : cd) parts.push_back(key_str(k) + " x" + m.str());
    for (const auto& [t, m] : towers) parts.push_back(to_string(t) + " x" + m.str());
    if (parts.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
    return out;
  }
};

void canonicalize(const FreePart& f, const Mult& scale, Canonical& c) {
  std::visit(overloaded{
                 [&](const FreeOfRank& x) { c.add_cd({}, Mult{false, x.rank} * scale); },
                 [&](const Rank1& x) { c.add_cd(rank1_type(x.tower).key(), scale); },
                 [&](const CompletelyDecomposable& x) {
                   for (const auto& term : x.terms)
                     c.add_cd(term.type.infinite_support(), Mult::of(term.multiplicity) * scale);
                 },
                 [&](const TowerForm& x) {
                   const Mult m = Mult::of(x.copies) * scale;
                   for (const auto& block : block_decomposition(x.tower)) {
                     const Tower nb = normalized(block);
                     if (is_free(nb))
                       c.add_cd({}, Mult{false, nb.rank} * m);
                     else if (nb.rank == 1)
                       c.add_cd(rank1_type(nb).key(), m);
                     else
                       c.add_tower(nb, m);
                   }
                 },
                 [&](const DirectSum& x) {
                   for (const auto& s : x.summands) canonicalize(s, scale, c);
                 },
             },
             f.value);
  c.prune();
}

Canonical canonical(const FreePart& f, const Mult& scale = Mult{false, 1}) {
  Canonical c;
  canonicalize(f, scale, c);
  return c;
}

// Removes summands present on both sides.
void cancel_common(Canonical& a, Canonical& b) {
  for (auto& [k, m] : a.cd) {
    auto it = b.cd.find(k);
    if (it == b.cd.end()) continue;
    Mult& n = it->second;
    if (covers(m, n)) {
      m = minus(m, n);
      n = {};
    } else {
      n = minus(n, m);
      m = {};
    }
  }
  for (auto& [t, m] : a.towers) {
    Mult* n = b.find_tower(t);
    if (!n) continue;
    if (covers(m, *n)) {
      m = minus(m, *n);
      *n = {};
    } else {
      *n = minus(*n, m);
      m = {};
    }
  }
  a.prune();
  b.prune();
}

bool contains(const Canonical& big, const Canonical& part) {
  for (const auto& [k, m] : part.cd) {
    auto it = big.cd.find(k);
    if (it == big.cd.end() || !covers(it->second, m)) return false;
  }
  for (const auto& [t, m] : part.towers) {
    bool found = false;
    for (const auto& [u, n] : big.towers)
      if (u == t && covers(n, m)) found = true;
    if (!found) return false;
  }
  return true;
}

// Every summand of `part` occurs omega times in `big`.
bool contains_omega(const Canonical& big, const Canonical& part) {
  for (const auto& [k, m] : part.cd) {
    auto it = big.cd.find(k);
    if (it == big.cd.end() || !it->second.omega) return false;
  }
  for (const auto& [t, m] : part.towers) {
    bool found = false;
    for (const auto& [u, n] : big.towers)
      if (u == t && n.omega) found = true;
    if (!found) return false;
  }
  return true;
}

void subtract(Canonical& big, const Canonical& part, bool drop_omega) {
  for (const auto& [k, m] : part.cd) {
    Mult& n = big.cd[k];
    n = drop_omega ? Mult{} : minus(n, m);
  }
  for (const auto& [t, m] : part.towers) {
    Mult* n = big.find_tower(t);
    *n = drop_omega ? Mult{} : minus(*n, m);
  }
  big.prune();
}

struct CheckedWitness {
  Canonical src;  // copies-fold
  Canonical dst;
  std::string label;
};

std::vector<CheckedWitness> usable_witnesses(const std::vector<Witness>& ws) {
  std::vector<CheckedWitness> out;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    try {
      if (!check_witness(ws[i])) continue;
    } catch (const std::exception&) {
      continue;
    }
    const Mult n{false, ws[i].copies};
    out.push_back({canonical(ws[i].src, n), canonical(ws[i].dst, n), "witness #" + std::to_string(i + 1)});
  }
  return out;
}

// Tries the witness with `a` holding the source side.
bool apply_witness(Canonical& a, Canonical& b, const CheckedWitness& w) {
  if (w.src.empty() || w.dst.empty()) return false;
  if (contains_omega(a, w.src) && contains_omega(b, w.dst)) {
    subtract(a, w.src, true);
    subtract(b, w.dst, true);
    return true;
  }
  if (contains(a, w.src) && contains(b, w.dst)) {
    subtract(a, w.src, false);
    subtract(b, w.dst, false);
    return true;
  }
  return false;
}

std::optional<ComparisonResult> separate(const FreePart& a, const FreePart& b) {
  const Tower ta = to_tower(a);
  const Tower tb = to_tower(b);
  const TypeClass wa = top_wedge_type(ta);
  const TypeClass wb = top_wedge_type(tb);
  if (!(wa == wb)) return NotIsomorphic{"top wedge type " + wa.str() + " vs " + wb.str()};
  std::set<Prime> primes;
  for (Prime p : determinant_primes(ta)) primes.insert(p);
  for (Prime p : determinant_primes(tb)) primes.insert(p);
  for (Prime p : primes) {
    const int ra = p_rank(ta, p);
    const int rb = p_rank(tb, p);
    if (ra != rb)
      return NotIsomorphic{"p-rank of G/pG at p = " + std::to_string(p) + ": " + std::to_string(ra) + " vs " +
                           std::to_string(rb)};
  }
  return std::nullopt;
}

Integer preperiod_determinant(const Tower& dst) {
  return abs(determinant(dst.cumulative(dst.prefix_length() + dst.period_length())));
}

// Deepest source stage to check: a + b (r (E + 1) + 2) where E bounds the
// p-adic size of the map and of the target's preperiodic part.
std::size_t witness_depth(const Tower& src, const Tower& dst, const RatMatrix& map) {
  const std::size_t a = src.prefix_length();
  const std::size_t b = src.period_length();
  if (b == 0) return a;
  const Integer den = common_denominator(map);
  IntMatrix scaled(map.rows(), map.cols());
  for (Eigen::Index i = 0; i < map.rows(); ++i)
    for (Eigen::Index j = 0; j < map.cols(); ++j) scaled(i, j) = numerator_of(map(i, j) * Rational(den));
  const Integer det = abs(determinant(scaled));
  const Integer dst_det = preperiod_determinant(dst);
  long e = 0;
  for (Prime p : determinant_primes(src))
    e = std::max<long>(e, valuation(den, p) + valuation(det, p) + valuation(dst_det, p));
  return a + b * (static_cast<std::size_t>(src.rank) * static_cast<std::size_t>(e + 1) + 2);
}

// First stage-`stage` generator of `src` whose image is not in `dst`.
std::optional<Eigen::Index> first_escape(const Tower& src, const Tower& dst, const RatMatrix& map,
                                         std::size_t stage) {
  const RatMatrix gens = map * rational_inverse(to_rational(src.cumulative(stage)));
  for (Eigen::Index j = 0; j < gens.cols(); ++j)
    if (!membership(dst, gens.col(j))) return j;
  return std::nullopt;
}

Tower copies_of(const FreePart& f, long n) {
  if (n < 1) throw DimensionMismatch("witness copies must be >= 1");
  return direct_sum(std::vector<Tower>(static_cast<std::size_t>(n), to_tower(f)));
}

}  // namespace

std::string verdict_name(const ComparisonResult& r) {
  return std::visit(overloaded{
                        [](const Isomorphic&) { return std::string("Isomorphic"); },
                        [](const NotIsomorphic&) { return std::string("NotIsomorphic"); },
                        [](const Unknown&) { return std::string("Unknown"); },
                    },
                    r);
}

std::string explanation(const ComparisonResult& r) {
  return std::visit(overloaded{
                        [](const Isomorphic& x) { return x.evidence; },
                        [](const NotIsomorphic& x) { return x.invariant; },
                        [](const Unknown& x) { return x.reason; },
                    },
                    r);
}

WitnessReport check_witness_report(const Witness& w) {
  const Tower src = copies_of(w.src, w.copies);
  const Tower dst = copies_of(w.dst, w.copies);
  if (src.rank != dst.rank || w.map.rows() != src.rank || w.map.cols() != src.rank) {
    std::ostringstream msg;
    msg << "witness map is " << w.map.rows() << "x" << w.map.cols() << " but source and target have rank "
        << src.rank << " and " << dst.rank;
    throw DimensionMismatch(msg.str());
  }
  if (determinant(w.map) == 0) throw SingularWitness("witness map is singular");
  const RatMatrix inverse = rational_inverse(w.map);

  WitnessReport report;
  report.src_stage = std::max(witness_depth(src, dst, w.map), src.prefix_length() + 2 * src.period_length());
  report.dst_stage = std::max(witness_depth(dst, src, inverse), dst.prefix_length() + 2 * dst.period_length());
  if (auto j = first_escape(src, dst, w.map, report.src_stage)) {
    report.detail = "image of source generator " + std::to_string(*j) + " at stage " +
                    std::to_string(report.src_stage) + " is not in the target";
    return report;
  }
  if (auto j = first_escape(dst, src, inverse, report.dst_stage)) {
    report.detail = "inverse image of target generator " + std::to_string(*j) + " at stage " +
                    std::to_string(report.dst_stage) + " is not in the source";
    return report;
  }
  report.valid = true;
  report.detail = "map and inverse preserve the stage lattices through source stage " +
                  std::to_string(report.src_stage) + " and target stage " + std::to_string(report.dst_stage);
  return report;
}

bool check_witness(const Witness& w) { return check_witness_report(w).valid; }

FreePart amplify(const FreePart& f, const Cardinal& alpha) {
  if (alpha == Cardinal::fin(1)) return f;
  return std::visit(
      overloaded{
          [&](const FreeOfRank& x) -> FreePart {
            if (x.rank == 0) return f;
            if (alpha.is_omega())
              return FreePart{CompletelyDecomposable{{CdTerm{Supernatural{}, Cardinal::omega()}}}};
            return free_of_rank(x.rank * alpha.value().convert_to<long>());
          },
          [&](const Rank1& x) -> FreePart {
            const Supernatural type = characteristic(x.tower, GroupElement{0, IntVector::Ones(1)});
            return FreePart{CompletelyDecomposable{{CdTerm{type, alpha}}}};
          },
          [&](const CompletelyDecomposable& x) -> FreePart {
            CompletelyDecomposable out = x;
            for (auto& term : out.terms) term.multiplicity = term.multiplicity * alpha;
            return FreePart{out};
          },
          [&](const TowerForm& x) -> FreePart { return FreePart{TowerForm{x.tower, x.copies * alpha}}; },
          [&](const DirectSum& x) -> FreePart {
            DirectSum out;
            for (const auto& s : x.summands) out.summands.push_back(amplify(s, alpha));
            return FreePart{out};
          },
      },
      f.value);
}

UnitaryInvariant unitary_invariant(const AbGroupDesc& d) {
  const Cardinal alpha = torsion_cardinal(d.torsion);
  return {alpha, amplify(d.free_part, alpha)};
}

ComparisonResult compare_free(const FreePart& a, const FreePart& b, const std::vector<Witness>& witnesses) {
  Canonical ca = canonical(a);
  Canonical cb = canonical(b);
  const Mult ra = ca.rank();
  const Mult rb = cb.rank();
  if (!(ra == rb)) return NotIsomorphic{"free rank " + ra.str() + " vs " + rb.str()};

  if (ca.towers.empty() && cb.towers.empty()) {
    std::set<TypeKey> keys;
    for (const auto& [k, m] : ca.cd) keys.insert(k);
    for (const auto& [k, m] : cb.cd) keys.insert(k);
    for (const auto& k : keys) {
      const Mult ma = ca.cd.contains(k) ? ca.cd.at(k) : Mult{};
      const Mult mb = cb.cd.contains(k) ? cb.cd.at(k) : Mult{};
      if (!(ma == mb)) return NotIsomorphic{key_str(k) + " multiplicity " + ma.str() + " vs " + mb.str()};
    }
    return Isomorphic{"completely decomposable with equal type multiplicities: " + ca.str()};
  }

  const std::string before = ca.str() + " vs " + cb.str();
  cancel_common(ca, cb);
  std::vector<std::string> used;
  const auto ws = usable_witnesses(witnesses);
  for (bool progress = true; progress && !(ca.empty() && cb.empty());) {
    progress = false;
    for (const auto& w : ws) {
      if (apply_witness(ca, cb, w) || apply_witness(cb, ca, w)) {
        used.push_back(w.label);
        cancel_common(ca, cb);
        progress = true;
      }
    }
  }
  if (ca.empty() && cb.empty()) {
    std::string evidence = "identical summands cancel";
    if (!used.empty()) {
      evidence += "; validated ";
      for (std::size_t i = 0; i < used.size(); ++i) evidence += (i ? ", " : "") + used[i];
    }
    return Isomorphic{evidence + " (" + before + ")"};
  }

  if (!ra.omega) {
    if (auto sep = separate(a, b)) return *sep;
  }
  return Unknown{"no decision procedure for residual summands " + ca.str() + " vs " + cb.str() +
                 (ra.omega ? "" : "; top wedge type and p-ranks agree")};
}

ComparisonResult compare_unitary(const AbGroupDesc& a, const AbGroupDesc& b, const std::vector<Witness>& witnesses) {
  const auto ua = unitary_invariant(a);
  const auto ub = unitary_invariant(b);
  if (!(ua.alpha == ub.alpha))
    return NotIsomorphic{"torsion cardinal " + ua.alpha.str() + " vs " + ub.alpha.str()};
  auto r = compare_free(ua.amplified, ub.amplified, witnesses);
  const std::string prefix = "alpha = " + ua.alpha.str() + "; ";
  std::visit([&](auto& x) {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Isomorphic>) x.evidence = prefix + x.evidence;
    else if constexpr (std::is_same_v<std::decay_t<decltype(x)>, NotIsomorphic>) x.invariant = prefix + x.invariant;
    else x.reason = prefix + x.reason;
  }, r);
  return r;
}

ComparisonResult compare_k1(const AbGroupDesc& a, const AbGroupDesc& b, const std::vector<Witness>& witnesses) {
  KGroupDesc ka, kb;
  try {
    ka = k1(a);
    kb = k1(b);
  } catch (const std::domain_error& e) {
    return Unknown{e.what()};
  }
  return compare_free(ka, kb, witnesses);
}

}  // namespace abelk
