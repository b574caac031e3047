#include "abelk/groups.hpp"

#include <stdexcept>

namespace abelk {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void collect_towers(const FreePart& f, std::vector<Tower>& out) {
  std::visit(
      overloaded{
          [&](const FreeOfRank& x) {
            if (x.rank > 0) out.push_back(free_tower(static_cast<int>(x.rank)));
          },
          [&](const Rank1& x) { out.push_back(x.tower); },
          [&](const CompletelyDecomposable& x) {
            for (const auto& term : x.terms) {
              if (term.multiplicity.is_omega())
                throw std::domain_error("cannot present an omega-fold sum as a tower");
              const Tower t = tower_from_supernatural(term.type);
              for (Integer i = 0; i < term.multiplicity.value(); ++i) out.push_back(t);
            }
          },
          [&](const TowerForm& x) {
            if (x.copies.is_omega()) throw std::domain_error("cannot present an omega-fold sum as a tower");
            for (Integer i = 0; i < x.copies.value(); ++i) out.push_back(x.tower);
          },
          [&](const DirectSum& x) {
            for (const auto& s : x.summands) collect_towers(s, out);
          },
      },
      f.value);
}

}  // namespace

FreePart direct_sum_of(std::vector<FreePart> parts) {
  if (parts.empty()) throw std::invalid_argument("empty direct sum");
  return FreePart{DirectSum{std::move(parts)}};
}

void require_valid(const FreePart& f) {
  std::visit(overloaded{
                 [](const FreeOfRank& x) {
                   if (x.rank < 0) throw std::invalid_argument("negative free rank");
                 },
                 [](const Rank1& x) {
                   if (x.tower.rank != 1) throw std::invalid_argument("rank1 part has rank != 1");
                   require_valid(x.tower);
                 },
                 [](const CompletelyDecomposable& x) {
                   if (x.terms.empty()) throw std::invalid_argument("empty completely decomposable group");
                 },
                 [](const TowerForm& x) { require_valid(x.tower); },
                 [](const DirectSum& x) {
                   if (x.summands.empty()) throw std::invalid_argument("empty direct sum");
                   for (const auto& s : x.summands) require_valid(s);
                 },
             },
             f.value);
}

std::optional<long> finite_rank(const FreePart& f) {
  return std::visit(
      overloaded{
          [](const FreeOfRank& x) -> std::optional<long> { return x.rank; },
          [](const Rank1&) -> std::optional<long> { return 1; },
          [](const CompletelyDecomposable& x) -> std::optional<long> {
            long r = 0;
            for (const auto& t : x.terms) {
              if (t.multiplicity.is_omega()) return std::nullopt;
              r += t.multiplicity.value().convert_to<long>();
            }
            return r;
          },
          [](const TowerForm& x) -> std::optional<long> {
            if (x.copies.is_omega()) return std::nullopt;
            return x.tower.rank * x.copies.value().convert_to<long>();
          },
          [](const DirectSum& x) -> std::optional<long> {
            long r = 0;
            for (const auto& s : x.summands) {
              auto k = finite_rank(s);
              if (!k) return std::nullopt;
              r += *k;
            }
            return r;
          },
      },
      f.value);
}

Tower to_tower(const FreePart& f) {
  std::vector<Tower> parts;
  collect_towers(f, parts);
  if (parts.empty()) throw std::domain_error("the trivial group has no tower presentation");
  return parts.size() == 1 ? parts.front() : direct_sum(parts);
}

std::string describe(const FreePart& f) {
  return std::visit(
      overloaded{
          [](const FreeOfRank& x) {
            if (x.rank <= 1) return std::string(x.rank == 0 ? "0" : "Z");
            return "Z^" + std::to_string(x.rank);
          },
          [](const Rank1& x) { return "rank-1 " + rank1_type(x.tower).str(); },
          [](const CompletelyDecomposable& x) {
            std::string out = "CD{";
            for (std::size_t i = 0; i < x.terms.size(); ++i)
              out += (i ? ", " : "") + TypeClass{x.terms[i].type}.str() + " x" + x.terms[i].multiplicity.str();
            return out + "}";
          },
          [](const TowerForm& x) {
            std::string out = to_string(x.tower);
            if (!(x.copies == Cardinal::fin(1))) out = x.copies.str() + " copies of " + out;
            return out;
          },
          [](const DirectSum& x) {
            std::string out = "sum(";
            for (std::size_t i = 0; i < x.summands.size(); ++i) out += (i ? " + " : "") + describe(x.summands[i]);
            return out + ")";
          },
      },
      f.value);
}

std::string describe(const AbGroupDesc& g) {
  return "torsion " + to_string(g.torsion) + "; free part " + describe(g.free_part);
}

}  // namespace abelk
