#include "abelk/fgab.hpp"

#include <stdexcept>

namespace abelk {

FgAbGroup::FgAbGroup(int free_rank, std::vector<Integer> invariant_factors)
    : free_rank_(free_rank), factors_(std::move(invariant_factors)) {
  if (free_rank_ < 0) throw std::invalid_argument("negative free rank");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2)
      throw std::invalid_argument("invariant factor " + factors_[i].str() + " is < 2");
    if (i && factors_[i] % factors_[i - 1] != 0)
      throw std::invalid_argument("invariant factors do not form a divisibility chain");
  }
}

FgAbGroup FgAbGroup::cyclic(const Integer& order) {
  if (order < 1) throw std::invalid_argument("cyclic group order must be >= 1");
  if (order == 1) return {};
  return FgAbGroup(0, {order});
}

Integer FgAbGroup::order() const {
  if (free_rank_ != 0) throw std::domain_error("order of an infinite group");
  Integer n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

std::string FgAbGroup::str() const {
  std::string out;
  if (free_rank_ > 0) out = free_rank_ == 1 ? "Z" : "Z^" + std::to_string(free_rank_);
  for (const auto& d : factors_) out += (out.empty() ? "" : " + ") + ("Z/" + d.str());
  return out.empty() ? "0" : out;
}

FgAbGroup from_relations(const IntMatrix& relations) {
  const auto snf = smith_normal_form(relations);
  int nonzero = 0;
  std::vector<Integer> factors;
  for (const auto& d : snf.diagonal()) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) factors.push_back(d);
  }
  return FgAbGroup(static_cast<int>(relations.cols()) - nonzero, std::move(factors));
}

FgAbGroup from_cyclic_orders(const std::vector<Integer>& orders) {
  const auto n = static_cast<Eigen::Index>(orders.size());
  IntMatrix r = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (orders[static_cast<std::size_t>(i)] < 1)
      throw std::invalid_argument("cyclic order must be >= 1");
    r(i, i) = orders[static_cast<std::size_t>(i)];
  }
  return from_relations(r);
}

bool fg_isomorphic(const FgAbGroup& a, const FgAbGroup& b) {
  return a.free_rank() == b.free_rank() && a.invariant_factors() == b.invariant_factors();
}

Cardinal Cardinal::fin(const Integer& n) {
  if (n < 1) throw std::invalid_argument("finite cardinal must be >= 1");
  Cardinal c;
  c.omega_ = false;
  c.n_ = n;
  return c;
}

Cardinal operator+(const Cardinal& a, const Cardinal& b) {
  if (a.is_omega() || b.is_omega()) return Cardinal::omega();
  return Cardinal::fin(a.value() + b.value());
}

Cardinal operator*(const Cardinal& a, const Cardinal& b) {
  if (a.is_omega() || b.is_omega()) return Cardinal::omega();
  return Cardinal::fin(a.value() * b.value());
}

TorsionDesc trivial_torsion() { return FiniteTorsion{FgAbGroup::trivial()}; }

Cardinal torsion_cardinal(const TorsionDesc& t) {
  if (const auto* f = std::get_if<FiniteTorsion>(&t)) return Cardinal::fin(f->group.order());
  return Cardinal::omega();
}

std::string to_string(const TorsionDesc& t) {
  if (const auto* f = std::get_if<FiniteTorsion>(&t)) return f->group.str();
  const auto& c = std::get<CountableTorsion>(t);
  std::string out = "countable torsion";
  if (!c.listed_orders.empty()) {
    out += " (";
    for (std::size_t i = 0; i < c.listed_orders.size(); ++i)
      out += (i ? ", Z/" : "Z/") + c.listed_orders[i].str();
    out += " ...)";
  }
  return out;
}

}  // namespace abelk
