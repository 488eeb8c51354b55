#include "crnb/bisim.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "crnb/error.hpp"

namespace crnb {

std::string_view to_string(BisimMode mode) {
  return mode == BisimMode::Forward ? "forward" : "backward";
}

// ---------------------------------------------------------------------------
// Pairwise splitters

ForwardSplitter::ForwardSplitter(const Crn& crn, const Partition& partition, RefineStats* stats)
    : crn_(crn), partition_(partition), stats_(stats) {}

bool ForwardSplitter::equivalent(SpeciesId x, SpeciesId y) const {
  if (stats_) ++stats_->predicate_calls;
  if (x == y) return true;

  std::set<Multiset> candidates{Multiset{}};
  for (const auto& rho : crn_.partners(x)) candidates.insert(rho);
  for (const auto& rho : crn_.partners(y)) candidates.insert(rho);

  for (const auto& rho : candidates) {
    if (stats_) stats_->rate_evaluations += 2;
    if (reaction_rate(crn_, x, rho) != reaction_rate(crn_, y, rho)) return false;

    // Blocks not hit by any product of X + rho or Y + rho give 0 on both sides.
    std::set<std::uint32_t> blocks;
    for (SpeciesId s : {x, y})
      for (auto i : crn_.reactions_with_reactants(Multiset::of(s) + rho))
        for (const auto& [product, m] : crn_.reaction(i).products.entries())
          blocks.insert(partition_.block_of(product));
    for (auto b : blocks) {
      if (stats_) stats_->rate_evaluations += 2;
      const auto block = partition_.block(b);
      if (block_production_rate(crn_, x, rho, block) != block_production_rate(crn_, y, rho, block))
        return false;
    }
  }
  return true;
}

BackwardSplitter::BackwardSplitter(const Crn& crn, const Partition& partition, RefineStats* stats)
    : crn_(crn), classes_(reactant_classes(crn, partition)), stats_(stats) {
  for (std::uint32_t c = 0; c < classes_.size(); ++c)
    for (const auto& m : classes_[c].members) class_of_.emplace(m, c);
}

bool BackwardSplitter::equivalent(SpeciesId x, SpeciesId y) const {
  if (stats_) ++stats_->predicate_calls;
  if (x == y) return true;

  // Only classes containing a reaction that involves X or Y can have a
  // nonzero cumulative flux for either species.
  std::set<std::uint32_t> touched;
  for (SpeciesId s : {x, y})
    for (auto i : crn_.reactions_involving(s))
      touched.insert(class_of_.at(crn_.reaction(i).reactants));
  for (auto c : touched) {
    if (stats_) stats_->rate_evaluations += 2;
    const auto& members = classes_[c].members;
    if (cumulative_flux_rate(crn_, x, members) != cumulative_flux_rate(crn_, y, members))
      return false;
  }
  return true;
}

bool forward_equivalent(const Crn& crn, const Partition& partition, SpeciesId x, SpeciesId y) {
  return ForwardSplitter(crn, partition).equivalent(x, y);
}

bool backward_equivalent(const Crn& crn, const Partition& partition, SpeciesId x, SpeciesId y) {
  return BackwardSplitter(crn, partition).equivalent(x, y);
}

// ---------------------------------------------------------------------------
// Signatures: ~F and ~B are equalities of finitely many exact values per
// species, so each species gets a canonical string of those values and a
// block splits by string equality.

namespace {

constexpr std::uint32_t kNoPartner = ~std::uint32_t{0};

void require_elementary(const Crn& crn) {
  for (const auto& r : crn.reactions()) {
    const auto n = r.reactants.size();
    if (n < 1 || n > 2)
      throw Error(ErrorKind::Precondition,
                  "bisimulation requires elementary reactions: " + format_reaction(crn, r));
  }
}

std::vector<bool> splittable(const Partition& partition) {
  std::vector<bool> out(partition.species_count(), false);
  for (const auto& block : partition.blocks())
    if (block.size() > 1)
      for (SpeciesId s : block) out[s] = true;
  return out;
}

struct ForwardEntry {
  Rational reaction_rate = 0;
  std::map<std::uint32_t, Rational> production;  // block -> rate
};

std::vector<std::string> forward_signatures(const Crn& crn, const Partition& partition) {
  const auto active = splittable(partition);
  std::vector<std::map<std::uint32_t, ForwardEntry>> acc(crn.species_count());

  auto contribute = [&](SpeciesId x, std::uint32_t partner, unsigned factor, const Reaction& r) {
    if (!active[x]) return;
    auto& entry = acc[x][partner];
    const Rational scaled = r.rate * factor;
    entry.reaction_rate += scaled;
    for (const auto& [product, m] : r.products.entries())
      entry.production[partition.block_of(product)] += scaled * m;
  };

  for (const auto& r : crn.reactions()) {
    const auto entries = r.reactants.entries();
    if (r.reactants.size() == 1) {
      contribute(entries[0].first, kNoPartner, 1, r);
    } else if (entries.size() == 1) {
      contribute(entries[0].first, entries[0].first, 2, r);
    } else {
      contribute(entries[0].first, entries[1].first, 1, r);
      contribute(entries[1].first, entries[0].first, 1, r);
    }
  }

  std::vector<std::string> out(crn.species_count());
  for (SpeciesId x = 0; x < crn.species_count(); ++x) {
    if (!active[x]) continue;
    std::string& sig = out[x];
    for (const auto& [partner, entry] : acc[x]) {
      sig += partner == kNoPartner ? std::string("p-") : "p" + std::to_string(partner);
      sig += ':';
      sig += entry.reaction_rate.get_str();
      sig += '[';
      for (const auto& [block, value] : entry.production) {
        if (value == 0) continue;
        sig += std::to_string(block);
        sig += '=';
        sig += value.get_str();
        sig += ';';
      }
      sig += ']';
    }
  }
  return out;
}

std::vector<std::string> backward_signatures(const Crn& crn, const Partition& partition) {
  const auto active = splittable(partition);
  const ChoiceFunction mu(partition);
  std::map<Multiset, std::uint32_t> class_of_image;
  std::vector<std::map<std::uint32_t, Rational>> acc(crn.species_count());

  for (const auto& r : crn.reactions()) {
    auto [it, inserted] = class_of_image.try_emplace(
        mu.lift(r.reactants), static_cast<std::uint32_t>(class_of_image.size()));
    const std::uint32_t cls = it->second;
    for (const auto& [x, m] : r.reactants.entries())
      if (active[x]) acc[x][cls] += r.rate * (static_cast<long>(r.products.count(x)) - static_cast<long>(m));
    for (const auto& [x, m] : r.products.entries())
      if (active[x] && r.reactants.count(x) == 0) acc[x][cls] += r.rate * m;
  }

  std::vector<std::string> out(crn.species_count());
  for (SpeciesId x = 0; x < crn.species_count(); ++x) {
    if (!active[x]) continue;
    std::string& sig = out[x];
    for (const auto& [cls, value] : acc[x]) {
      if (value == 0) continue;
      sig += std::to_string(cls);
      sig += '=';
      sig += value.get_str();
      sig += ';';
    }
  }
  return out;
}

Partition split_by_signature(const Crn& crn, const Partition& current, BisimMode mode) {
  const auto signatures = mode == BisimMode::Forward ? forward_signatures(crn, current)
                                                     : backward_signatures(crn, current);
  std::vector<std::uint32_t> labels(current.species_count());
  std::uint32_t next = 0;
  for (const auto& block : current.blocks()) {
    if (block.size() == 1) {
      labels[block.front()] = next++;
      continue;
    }
    std::map<std::string_view, std::uint32_t> label_of;
    for (SpeciesId s : block) {
      auto [it, inserted] = label_of.try_emplace(signatures[s], next);
      if (inserted) ++next;
      labels[s] = it->second;
    }
  }
  return Partition::from_labels(labels);
}

template <class Splitter>
Partition split_pairwise(const Partition& current, const Splitter& splitter) {
  std::vector<std::uint32_t> labels(current.species_count());
  std::uint32_t next = 0;
  for (const auto& block : current.blocks()) {
    const auto reps = quotient_representatives(
        block.size(), [&](std::uint32_t i, std::uint32_t j) {
          return splitter.equivalent(block[i], block[j]);
        });
    std::map<std::uint32_t, std::uint32_t> label_of;
    for (std::size_t i = 0; i < block.size(); ++i) {
      auto [it, inserted] = label_of.try_emplace(reps[i], next);
      if (inserted) ++next;
      labels[block[i]] = it->second;
    }
  }
  return Partition::from_labels(labels);
}

}  // namespace

RefinementTrace refine(const Crn& crn, const Partition& initial, BisimMode mode,
                       RefineStrategy strategy) {
  require_elementary(crn);
  if (initial.species_count() != crn.species_count())
    throw Error(ErrorKind::Partition, "incomplete partition: covers " +
                                          std::to_string(initial.species_count()) + " of " +
                                          std::to_string(crn.species_count()) + " species");

  RefinementTrace trace;
  trace.iterations.push_back(initial);
  Partition current = initial;
  while (true) {
    ++trace.rounds;
    Partition next;
    if (strategy == RefineStrategy::Signature) {
      next = split_by_signature(crn, current, mode);
    } else if (mode == BisimMode::Forward) {
      next = split_pairwise(current, ForwardSplitter(crn, current, &trace.stats));
    } else {
      next = split_pairwise(current, BackwardSplitter(crn, current, &trace.stats));
    }
    if (next == current) break;
    trace.iterations.push_back(next);
    current = std::move(next);
  }
  trace.final = std::move(current);
  return trace;
}

std::optional<std::pair<SpeciesId, SpeciesId>> find_bisimulation_violation(
    const Crn& crn, const Partition& partition, BisimMode mode) {
  choice_function(crn, partition);  // coverage check
  require_elementary(crn);
  const auto signatures = mode == BisimMode::Forward ? forward_signatures(crn, partition)
                                                     : backward_signatures(crn, partition);
  for (const auto& block : partition.blocks())
    for (std::size_t i = 1; i < block.size(); ++i)
      if (signatures[block[i]] != signatures[block.front()]) return std::pair{block.front(), block[i]};
  return std::nullopt;
}

bool is_bisimulation(const Crn& crn, const Partition& partition, BisimMode mode) {
  return !find_bisimulation_violation(crn, partition, mode).has_value();
}

}  // namespace crnb
