#pragma once

// Test helpers plus a naive oracle: rate functions, bisimulation conditions
// and the mass-action field written straight from their definitions by
// scanning the reaction list, sharing nothing with the library's indexes.

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "crnb/core.hpp"
#include "crnb/io.hpp"

namespace test {

using crnb::Crn;
using crnb::Multiset;
using crnb::Partition;
using crnb::Rational;
using crnb::SpeciesId;

inline Crn parse(const std::string& text) { return crnb::parse_crn(text).crn; }

inline SpeciesId id(const Crn& crn, const std::string& name) {
  auto s = crn.find(name);
  if (!s) throw std::runtime_error("no species " + name);
  return *s;
}

inline Multiset ms(const Crn& crn, std::initializer_list<std::string> names) {
  Multiset m;
  for (const auto& n : names) m.add(id(crn, n));
  return m;
}

inline Partition blocks(const Crn& crn, std::vector<std::vector<std::string>> names) {
  return crnb::partition_from_names(crn, names);
}

// ---- naive oracle --------------------------------------------------------

inline Multiset plus(const Multiset& a, SpeciesId x) {
  Multiset out = a;
  out.add(x);
  return out;
}

inline Rational naive_crr(const Crn& crn, SpeciesId x, const Multiset& rho) {
  Rational sum = 0;
  for (const auto& r : crn.reactions())
    if (r.reactants == plus(rho, x)) sum += r.rate;
  return sum * (rho.count(x) + 1);
}

inline Rational naive_pr(const Crn& crn, SpeciesId x, const Multiset& rho, SpeciesId y) {
  Rational sum = 0;
  for (const auto& r : crn.reactions())
    if (r.reactants == plus(rho, x)) sum += r.rate * r.products.count(y);
  return sum * (rho.count(x) + 1);
}

inline Rational naive_pr_block(const Crn& crn, SpeciesId x, const Multiset& rho,
                               const std::vector<SpeciesId>& block) {
  Rational sum = 0;
  for (SpeciesId y : block) sum += naive_pr(crn, x, rho, y);
  return sum;
}

inline Rational naive_fr(const Crn& crn, SpeciesId x, const Multiset& rho) {
  Rational sum = 0;
  for (const auto& r : crn.reactions())
    if (r.reactants == rho)
      sum += r.rate * (static_cast<long>(r.products.count(x)) - static_cast<long>(r.reactants.count(x)));
  return sum;
}

inline SpeciesId naive_rep(const Partition& p, SpeciesId x) {
  SpeciesId best = x;
  for (SpeciesId y = 0; y < p.species_count(); ++y)
    if (p.block_of(y) == p.block_of(x) && y < best) best = y;
  return best;
}

inline Multiset naive_lift(const Partition& p, const Multiset& m) {
  Multiset out;
  for (const auto& [s, k] : m.entries()) out.add(naive_rep(p, s), k);
  return out;
}

/// Condition of forward bisimulation, quantifying over every multiset of
/// size at most one (not just the partner sets).
inline bool naive_is_fb(const Crn& crn, const Partition& p) {
  std::vector<Multiset> partners{Multiset{}};
  for (SpeciesId s = 0; s < crn.species_count(); ++s) partners.push_back(Multiset::of(s));
  for (const auto& block : p.blocks()) {
    for (SpeciesId x : block)
      for (SpeciesId y : block) {
        if (x >= y) continue;
        for (const auto& rho : partners) {
          if (naive_crr(crn, x, rho) != naive_crr(crn, y, rho)) return false;
          for (const auto& h : p.blocks())
            if (naive_pr_block(crn, x, rho, h) != naive_pr_block(crn, y, rho, h)) return false;
        }
      }
  }
  return true;
}

inline bool naive_is_bb(const Crn& crn, const Partition& p) {
  // Classes of reactant multisets with equal lifts.
  std::map<Multiset, std::set<Multiset>> classes;
  for (const auto& r : crn.reactions()) classes[naive_lift(p, r.reactants)].insert(r.reactants);
  for (const auto& block : p.blocks())
    for (SpeciesId x : block)
      for (SpeciesId y : block) {
        if (x >= y) continue;
        for (const auto& [image, members] : classes) {
          Rational fx = 0, fy = 0;
          for (const auto& rho : members) {
            fx += naive_fr(crn, x, rho);
            fy += naive_fr(crn, y, rho);
          }
          if (fx != fy) return false;
        }
      }
  return true;
}

/// All set partitions of n elements refining `initial`, by recursive
/// assignment (independent of the library's enumerator).
inline void for_each_partition(std::size_t n, const std::function<void(const Partition&)>& visit) {
  std::vector<std::uint32_t> labels(n, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t used) {
    if (i == n) {
      visit(Partition::from_labels(labels));
      return;
    }
    for (std::uint32_t l = 0; l <= used; ++l) {
      labels[i] = l;
      rec(i + 1, l == used ? used + 1 : used);
    }
  };
  if (n == 0) {
    visit(Partition::from_labels(labels));
    return;
  }
  rec(0, 0);
}

/// Coarsest partition satisfying `is` among refinements of `initial`:
/// the one with fewest blocks (unique by closure under union).
inline Partition naive_coarsest(const Crn& crn, const Partition& initial,
                                const std::function<bool(const Crn&, const Partition&)>& is) {
  Partition best = Partition::discrete(crn.species_count());
  for_each_partition(crn.species_count(), [&](const Partition& p) {
    if (p.refines(initial) && p.size() < best.size() && is(crn, p)) best = p;
  });
  return best;
}

/// Mass-action derivative evaluated numerically, straight from the formula.
inline std::vector<double> naive_field(const Crn& crn, const std::vector<double>& v) {
  std::vector<double> out(crn.species_count(), 0.0);
  for (const auto& r : crn.reactions()) {
    double propensity = crnb::to_double(r.rate);
    for (const auto& [s, k] : r.reactants.entries()) propensity *= std::pow(v[s], k);
    for (SpeciesId x = 0; x < crn.species_count(); ++x)
      out[x] += (static_cast<double>(r.products.count(x)) - r.reactants.count(x)) * propensity;
  }
  return out;
}

inline const char* kRunningExample =
    "A -> E , 6\n"
    "B -> D , 6\n"
    "A + B -> C , 2\n"
    "C + D -> 2C + D , 5\n"
    "E + D -> 2E + D , 5\n";

}  // namespace test
