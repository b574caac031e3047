#include "abelk/tower.hpp"

#include <algorithm>
#include <numeric>

namespace abelk {

namespace {

bool same_matrix(const IntMatrix& a, const IntMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool same_list(const std::vector<IntMatrix>& a, const std::vector<IntMatrix>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), same_matrix);
}

bool is_identity(const IntMatrix& m) {
  return m.rows() == m.cols() && m == IntMatrix::Identity(m.rows(), m.cols());
}

std::string join_matrices(const std::vector<IntMatrix>& ms) {
  std::string out = "[";
  for (std::size_t i = 0; i < ms.size(); ++i) out += (i ? ", " : "") + to_string(ms[i]);
  return out + "]";
}

// Largest p-adic exponent of D over the given primes, with the leftover
// cofactor (1 when every prime of D is listed).
std::pair<int, Integer> exponent_over(const Integer& D, const std::vector<Prime>& primes) {
  Integer rest = abs(D);
  int emax = 0;
  for (Prime p : primes) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    emax = std::max(emax, e);
  }
  return {emax, rest};
}

std::size_t depth_for_exponent(const Tower& t, int emax) {
  return t.prefix_length() + t.period_length() * static_cast<std::size_t>(t.rank) *
                                 static_cast<std::size_t>(emax);
}

IntVector reduce(const IntVector& v, const Integer& m) {
  IntVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Integer x = v(i) % m;
    if (x < 0) x += m;
    out(i) = x;
  }
  return out;
}

bool is_zero(const IntVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

// Whether T^k x -> 0 p-adically, i.e. x lies in the span of the generalized
// eigenspaces of T with eigenvalues of positive p-valuation. Holds iff the
// minimal polynomial of x under T reduces to t^d modulo p.
bool infinitely_divisible(const IntMatrix& T, const RatVector& x, Prime p) {
  const RatMatrix Tq = to_rational(T);
  std::vector<RatVector> krylov{x};
  for (;;) {
    RatVector next = Tq * krylov.back();
    RatMatrix K(x.size(), static_cast<Eigen::Index>(krylov.size()));
    for (std::size_t j = 0; j < krylov.size(); ++j) K.col(static_cast<Eigen::Index>(j)) = krylov[j];
    if (auto c = solve(K, next)) {
      for (Eigen::Index i = 0; i < c->size(); ++i)
        if ((*c)(i) != 0 && valuation((*c)(i), p) < 1) return false;
      return true;
    }
    krylov.push_back(std::move(next));
  }
}

}  // namespace

bool operator==(const Tower& a, const Tower& b) {
  return a.rank == b.rank && same_list(a.prefix, b.prefix) && same_list(a.period, b.period);
}

IntMatrix Tower::connecting(std::size_t stage) const {
  if (stage < prefix.size()) return prefix[stage];
  if (period.empty()) return IntMatrix::Identity(rank, rank);
  return period[(stage - prefix.size()) % period.size()];
}

IntMatrix Tower::cumulative(std::size_t stage) const {
  IntMatrix m = IntMatrix::Identity(rank, rank);
  for (std::size_t s = 0; s < stage; ++s) m = connecting(s) * m;
  return m;
}

IntMatrix Tower::period_product() const {
  IntMatrix m = IntMatrix::Identity(rank, rank);
  for (const auto& q : period) m = q * m;
  return m;
}

ValidationError::ValidationError(std::vector<std::string> defects)
    : std::invalid_argument([&] {
        std::string msg = "invalid tower:";
        for (const auto& d : defects) msg += " " + d + ";";
        return msg;
      }()),
      defects_(std::move(defects)) {}

std::vector<std::string> validate_tower(const Tower& t) {
  std::vector<std::string> defects;
  if (t.rank < 1) defects.push_back("rank " + std::to_string(t.rank) + " is < 1");
  auto check = [&](const std::vector<IntMatrix>& ms, const char* where) {
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const auto& m = ms[i];
      const std::string label = std::string(where) + "[" + std::to_string(i) + "]";
      if (m.rows() != t.rank || m.cols() != t.rank) {
        defects.push_back("size mismatch: " + label + " is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected " + std::to_string(t.rank) +
                          "x" + std::to_string(t.rank));
      } else if (determinant(m) == 0) {
        defects.push_back("singular: " + label + " has determinant 0");
      }
    }
  };
  check(t.prefix, "prefix");
  check(t.period, "period");
  return defects;
}

void require_valid(const Tower& t) {
  auto defects = validate_tower(t);
  if (!defects.empty()) throw ValidationError(std::move(defects));
}

Tower free_tower(int rank) { return Tower{rank, {}, {}}; }

Tower rank1_tower(const std::vector<Integer>& prefix, const std::vector<Integer>& period) {
  Tower t{1, {}, {}};
  for (const auto& a : prefix) t.prefix.push_back(IntMatrix::Constant(1, 1, a));
  for (const auto& a : period) t.period.push_back(IntMatrix::Constant(1, 1, a));
  return t;
}

Tower direct_sum(const std::vector<Tower>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum of no towers");
  std::size_t a = 0, b = 0;
  int rank = 0;
  for (const auto& t : parts) {
    a = std::max(a, t.prefix_length());
    if (t.period_length()) b = b ? std::lcm(b, t.period_length()) : t.period_length();
    rank += t.rank;
  }
  auto stage = [&](std::size_t s) {
    std::vector<IntMatrix> blocks;
    for (const auto& t : parts) blocks.push_back(t.connecting(s));
    return block_diagonal(blocks);
  };
  Tower out{rank, {}, {}};
  for (std::size_t s = 0; s < a; ++s) out.prefix.push_back(stage(s));
  for (std::size_t j = 0; j < b; ++j) out.period.push_back(stage(a + j));
  return out;
}

std::vector<Tower> block_decomposition(const Tower& t) {
  std::vector<int> parent(static_cast<std::size_t>(t.rank));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto link = [&](const IntMatrix& m) {
    for (int i = 0; i < t.rank; ++i)
      for (int j = 0; j < t.rank; ++j)
        if (i != j && m(i, j) != 0) parent[find(i)] = find(j);
  };
  for (const auto& m : t.prefix) link(m);
  for (const auto& m : t.period) link(m);

  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < t.rank; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> blocks;
  for (auto& [root, idx] : groups) blocks.push_back(std::move(idx));
  std::sort(blocks.begin(), blocks.end());

  std::vector<Tower> out;
  for (const auto& idx : blocks) {
    Tower sub{static_cast<int>(idx.size()), {}, {}};
    for (const auto& m : t.prefix) sub.prefix.push_back(m(idx, idx));
    for (const auto& m : t.period) sub.period.push_back(m(idx, idx));
    out.push_back(std::move(sub));
  }
  return out;
}

Tower normalized(const Tower& t) {
  Tower out{t.rank, {}, {}};
  for (const auto& m : t.prefix)
    if (!is_identity(m)) out.prefix.push_back(m);
  for (const auto& m : t.period)
    if (!is_identity(m)) out.period.push_back(m);

  const std::size_t b = out.period.size();
  for (std::size_t d = 1; d < b; ++d) {
    if (b % d) continue;
    bool repeats = true;
    for (std::size_t j = d; j < b && repeats; ++j) repeats = same_matrix(out.period[j], out.period[j - d]);
    if (repeats) {
      out.period.resize(d);
      break;
    }
  }
  while (!out.prefix.empty() && !out.period.empty() &&
         same_matrix(out.prefix.back(), out.period.back())) {
    out.prefix.pop_back();
    std::rotate(out.period.rbegin(), out.period.rbegin() + 1, out.period.rend());
  }
  return out;
}

bool is_free(const Tower& t) {
  auto unimodular = [](const IntMatrix& m) { return is_unimodular(m); };
  // The prefix only rescales stage 0; the limit is finitely generated iff the
  // stage lattices stop growing.
  return std::all_of(t.period.begin(), t.period.end(), unimodular);
}

std::vector<Prime> determinant_primes(const Tower& t) {
  std::vector<Prime> primes;
  auto add = [&](const IntMatrix& m) {
    for (Prime p : prime_factors(determinant(m))) primes.push_back(p);
  };
  for (const auto& m : t.prefix) add(m);
  for (const auto& m : t.period) add(m);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

RatVector rational_form(const Tower& t, const GroupElement& e) {
  if (e.coords.size() != t.rank) throw std::invalid_argument("element has the wrong length");
  if (e.stage == 0) return to_rational(e.coords);
  auto x = solve(to_rational(t.cumulative(e.stage)), to_rational(e.coords));
  return *x;
}

GroupElement push_to_stage(const Tower& t, const GroupElement& e, std::size_t s) {
  if (s < e.stage)
    throw std::out_of_range("cannot push from stage " + std::to_string(e.stage) + " back to stage " +
                            std::to_string(s));
  IntVector c = e.coords;
  for (std::size_t k = e.stage; k < s; ++k) c = t.connecting(k) * c;
  return {s, std::move(c)};
}

bool elements_equal(const Tower& t, const GroupElement& a, const GroupElement& b) {
  const std::size_t s = std::max(a.stage, b.stage);
  return push_to_stage(t, a, s).coords == push_to_stage(t, b, s).coords;
}

std::size_t membership_depth(const Tower& t, const Integer& denominator) {
  return depth_for_exponent(t, exponent_over(denominator, prime_factors(denominator)).first);
}

std::optional<GroupElement> membership(const Tower& t, const RatVector& v) {
  if (v.size() != t.rank) throw std::invalid_argument("vector has the wrong length");
  const Integer D = common_denominator(v);
  IntVector y(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) y(i) = numerator_of(v(i)) * (D / denominator_of(v(i)));
  if (D == 1) return GroupElement{0, y};

  // Denominators of members only involve primes of connecting determinants.
  const auto [emax, rest] = exponent_over(D, determinant_primes(t));
  if (rest != 1) return std::nullopt;

  const std::size_t depth = depth_for_exponent(t, emax);
  IntVector cur = reduce(y, D);
  for (std::size_t s = 0; s <= depth; ++s) {
    if (is_zero(cur)) {
      IntVector exact = t.cumulative(s) * y;
      for (Eigen::Index i = 0; i < exact.size(); ++i) exact(i) /= D;
      return GroupElement{s, std::move(exact)};
    }
    cur = reduce(t.connecting(s) * cur, D);
  }
  return std::nullopt;
}

bool is_divisible(const Tower& t, const GroupElement& e, const Integer& m) {
  if (m < 1) throw std::invalid_argument("divisor must be >= 1");
  RatVector v = rational_form(t, e);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) /= Rational(m);
  return membership(t, v).has_value();
}

DivisibilityTest::DivisibilityTest(const Tower& t, const Integer& m) : modulus_(m) {
  if (m < 1) throw std::invalid_argument("divisor must be >= 1");
  stable_ = mod(t.cumulative(membership_depth(t, m)), m);
  if (m < Integer(1) << 31) {
    for (Eigen::Index i = 0; i < stable_.rows(); ++i)
      for (Eigen::Index j = 0; j < stable_.cols(); ++j) small_.push_back(stable_(i, j).convert_to<long>());
  }
}

bool DivisibilityTest::operator()(const IntVector& c) const {
  return is_zero(reduce(stable_ * c, modulus_));
}

bool DivisibilityTest::divides(std::span<const long> c) const {
  if (small_.empty()) {
    IntVector v(static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Eigen::Index>(i)) = c[i];
    return (*this)(v);
  }
  const long m = modulus_.convert_to<long>();
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    long acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc = (acc + small_[i * n + j] * (c[j] % m)) % m;
    acc = (acc + m) % m;
    if (acc != 0) return false;
  }
  return true;
}

Exponent height(const Tower& t, const GroupElement& e, Prime p) {
  const RatVector v = rational_form(t, e);
  if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; })) throw ZeroElement();

  const RatVector x = to_rational(t.cumulative(t.prefix_length())) * v;
  if (t.period.empty()) {
    // The limit is M_a^{-1} Z^r, so the height is the p-content of x.
    long h = -1;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (x(i) != 0) {
        const long k = valuation(x(i), p);
        h = h < 0 ? k : std::min(h, k);
      }
    return Exponent(h);
  }
  if (infinitely_divisible(t.period_product(), x, p)) return Exponent::infinite();

  long k = 0;
  RatVector w = v;
  for (;;) {
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) /= Rational(p);
    if (!membership(t, w)) return Exponent(k);
    ++k;
  }
}

Supernatural::Supernatural(std::initializer_list<std::pair<const Prime, Exponent>> entries) {
  for (const auto& [p, e] : entries) set(p, e);
}

Exponent Supernatural::at(Prime p) const {
  auto it = entries_.find(p);
  return it == entries_.end() ? Exponent(0) : it->second;
}

void Supernatural::set(Prime p, Exponent e) {
  if (!e.is_infinite() && e.value() == 0)
    entries_.erase(p);
  else
    entries_[p] = e;
}

std::set<Prime> Supernatural::infinite_support() const {
  std::set<Prime> out;
  for (const auto& [p, e] : entries_)
    if (e.is_infinite()) out.insert(p);
  return out;
}

std::string Supernatural::str() const {
  std::string out = "[";
  bool first = true;
  for (const auto& [p, e] : entries_) {
    out += (first ? "" : ", ") + std::to_string(p) + "^" + e.str();
    first = false;
  }
  return out + "]";
}

Supernatural characteristic(const Tower& t, const GroupElement& e) {
  const RatVector v = rational_form(t, e);
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, numerator_of(v(i)));
  if (g == 0) throw ZeroElement();

  auto primes = determinant_primes(t);
  for (Prime p : prime_factors(g)) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  Supernatural s;
  for (Prime p : primes) s.set(p, height(t, e, p));
  return s;
}

bool types_equivalent(const Supernatural& a, const Supernatural& b) {
  return a.infinite_support() == b.infinite_support();
}

std::string TypeClass::str() const {
  const auto k = key();
  if (k.empty()) return "type(Z)";
  std::string out = "type(";
  bool first = true;
  for (Prime p : k) {
    out += (first ? "" : ",") + std::to_string(p) + "^inf";
    first = false;
  }
  return out + ")";
}

Tower tower_from_supernatural(const Supernatural& s) {
  Integer finite = 1, infinite = 1;
  for (const auto& [p, e] : s.entries()) {
    if (e.is_infinite())
      infinite *= p;
    else
      finite *= ipow(Integer(p), static_cast<unsigned>(e.value()));
  }
  return rank1_tower(finite > 1 ? std::vector<Integer>{finite} : std::vector<Integer>{},
                     infinite > 1 ? std::vector<Integer>{infinite} : std::vector<Integer>{});
}

TypeClass rank1_type(const Tower& t) {
  if (t.rank != 1) throw std::invalid_argument("rank1_type needs a rank-1 tower");
  return TypeClass{characteristic(t, GroupElement{0, IntVector::Ones(1)})};
}

bool rank1_isomorphic(const Tower& a, const Tower& b) { return rank1_type(a) == rank1_type(b); }

TypeClass top_wedge_type(const Tower& t) {
  std::vector<Integer> prefix, period;
  for (const auto& m : t.prefix) prefix.push_back(determinant(m));
  for (const auto& m : t.period) period.push_back(determinant(m));
  return rank1_type(rank1_tower(prefix, period));
}

int p_rank(const Tower& t, Prime p) {
  if (t.period.empty()) return t.rank;
  const IntMatrix T = mod(t.period_product(), Integer(p));
  IntMatrix power = IntMatrix::Identity(t.rank, t.rank);
  for (int i = 0; i < t.rank; ++i) power = mod(T * power, Integer(p));
  return rank_mod(power, p);
}

std::string to_string(const Tower& t) {
  return "tower(rank " + std::to_string(t.rank) + "; prefix " + join_matrices(t.prefix) + "; period " +
         join_matrices(t.period) + ")";
}

}  // namespace abelk
