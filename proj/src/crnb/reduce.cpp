#include "crnb/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "crnb/error.hpp"

namespace crnb {
namespace {

using ReactionKey = std::pair<Multiset, Multiset>;

struct CountingLess {
  std::uint64_t* steps;
  bool operator()(const ReactionKey& a, const ReactionKey& b) const {
    *steps += a.first.entries().size() + a.second.entries().size() + 1;
    return a < b;
  }
};

void require_bisimulation(const Crn& crn, const Partition& partition, BisimMode mode) {
  if (auto bad = find_bisimulation_violation(crn, partition, mode)) {
    throw Error(ErrorKind::NotBisimulation,
                std::string("partition is not a ") + std::string(to_string(mode)) +
                    " bisimulation: " + crn.name(bad->first) + " and " + crn.name(bad->second) +
                    " are not equivalent");
  }
}

/// Renames representative species to block indices and fuses reactions.
ReducedCrn assemble(const Crn& crn, const Partition& partition, BisimMode mode,
                    std::map<ReactionKey, Rational, CountingLess>& fused, std::uint64_t steps) {
  std::vector<std::string> names;
  names.reserve(partition.size());
  for (const auto& block : partition.blocks()) names.push_back(crn.name(block.front()));

  auto rename = [&](const Multiset& m) {
    Multiset out;
    for (const auto& [s, k] : m.entries()) out.add(partition.block_of(s), k);
    return out;
  };
  std::vector<Reaction> reactions;
  reactions.reserve(fused.size());
  for (auto& [key, rate] : fused) {
    steps += key.first.entries().size() + key.second.entries().size();
    reactions.push_back({rename(key.first), rate, rename(key.second)});
  }
  // Representatives are ordered like their blocks, so the renaming keeps the
  // (reactants, products) order of the fusion map.
  return ReducedCrn{Crn(std::move(names), std::move(reactions)), partition, mode,
                    ChoiceFunction(partition), steps};
}

}  // namespace

ReducedCrn forward_reduce(const Crn& crn, const Partition& partition) {
  const auto mu = choice_function(crn, partition);
  require_bisimulation(crn, partition, BisimMode::Forward);

  std::uint64_t steps = 0;
  std::map<ReactionKey, Rational, CountingLess> fused(CountingLess{&steps});
  for (const auto& r : crn.reactions()) {
    steps += r.reactants.entries().size();
    bool representative = true;
    for (const auto& [s, k] : r.reactants.entries()) representative = representative && mu.is_representative(s);
    if (!representative) continue;
    steps += r.products.entries().size();
    fused[{r.reactants, mu.lift(r.products)}] += r.rate;
  }
  return assemble(crn, partition, BisimMode::Forward, fused, steps);
}

ReducedCrn backward_reduce(const Crn& crn, const Partition& partition) {
  const auto mu = choice_function(crn, partition);
  require_bisimulation(crn, partition, BisimMode::Backward);

  std::uint64_t steps = 0;
  std::map<ReactionKey, Rational, CountingLess> fused(CountingLess{&steps});
  for (const auto& r : crn.reactions()) {
    // Representatives keep their product multiplicity, every other
    // species gets its reactant multiplicity back.
    Multiset products;
    for (const auto& [s, k] : r.products.entries())
      if (mu.is_representative(s)) products.add(s, k);
    for (const auto& [s, k] : r.reactants.entries())
      if (!mu.is_representative(s)) products.add(s, k);
    steps += r.reactants.entries().size() + r.products.entries().size();
    fused[{mu.lift(r.reactants), mu.lift(products)}] += r.rate;
  }
  return assemble(crn, partition, BisimMode::Backward, fused, steps);
}

ReducedCrn reduce(const Crn& crn, const Partition& partition, BisimMode mode) {
  return mode == BisimMode::Forward ? forward_reduce(crn, partition)
                                    : backward_reduce(crn, partition);
}

double reduction_step_bound(std::size_t reactions, std::size_t species, double constant) {
  const double r = static_cast<double>(std::max<std::size_t>(reactions, 2));
  const double s = static_cast<double>(std::max<std::size_t>(species, 2));
  return constant * r * s * (std::log2(r) + std::log2(s));
}

InitialCondition reduce_initial_condition(const ReducedCrn& reduced, const InitialCondition& v0) {
  const auto& p = reduced.partition;
  if (v0.values.size() != p.species_count())
    throw Error(ErrorKind::Argument, "initial condition does not match the original species");
  InitialCondition out;
  out.values.assign(p.size(), Rational(0));
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (reduced.mode == BisimMode::Forward) {
      for (SpeciesId s : p.block(b)) out.values[b] += v0.values[s];
    } else {
      out.values[b] = v0.values[p.block(b).front()];
    }
  }
  return out;
}

}  // namespace crnb
