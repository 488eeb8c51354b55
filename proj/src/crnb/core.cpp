#include "crnb/core.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "crnb/error.hpp"

namespace crnb {

Multiset::Multiset(std::initializer_list<Entry> entries) {
  for (const auto& [species, multiplicity] : entries) add(species, multiplicity);
}

Multiset Multiset::of(SpeciesId species, unsigned multiplicity) {
  Multiset out;
  out.add(species, multiplicity);
  return out;
}

void Multiset::add(SpeciesId species, unsigned multiplicity) {
  if (multiplicity == 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), species,
                             [](const Entry& e, SpeciesId s) { return e.first < s; });
  if (it != entries_.end() && it->first == species) {
    it->second += multiplicity;
  } else {
    entries_.insert(it, {species, multiplicity});
  }
}

unsigned Multiset::count(SpeciesId species) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), species,
                             [](const Entry& e, SpeciesId s) { return e.first < s; });
  return (it != entries_.end() && it->first == species) ? it->second : 0;
}

unsigned Multiset::size() const {
  unsigned total = 0;
  for (const auto& e : entries_) total += e.second;
  return total;
}

Multiset Multiset::operator+(const Multiset& other) const {
  Multiset out = *this;
  for (const auto& [species, multiplicity] : other.entries_) out.add(species, multiplicity);
  return out;
}

bool is_valid_species_name(std::string_view name) {
  if (name.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(name.front()))) return false;
  int depth = 0;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    switch (c) {
      case '+':
      case '#':
      case '=':
      case ';':
        return false;
      case '(':
        ++depth;
        break;
      case ')':
        if (--depth < 0) return false;
        break;
      case ',':
        if (depth == 0) return false;
        break;
      default:
        break;
    }
  }
  return depth == 0;
}

Crn::Crn(std::vector<std::string> names, std::vector<Reaction> reactions) {
  for (const auto& n : names)
    if (!is_valid_species_name(n))
      throw Error(ErrorKind::Argument, "invalid species name '" + n + "'");

  std::vector<SpeciesId> order(names.size());
  std::iota(order.begin(), order.end(), SpeciesId{0});
  std::sort(order.begin(), order.end(),
            [&](SpeciesId a, SpeciesId b) { return names[a] < names[b]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (names[order[i - 1]] == names[order[i]])
      throw Error(ErrorKind::Argument, "duplicate species '" + names[order[i]] + "'");

  std::vector<SpeciesId> new_id(names.size());
  names_.reserve(names.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_id[order[i]] = static_cast<SpeciesId>(i);
    names_.push_back(std::move(names[order[i]]));
  }

  auto remap = [&](const Multiset& m) {
    Multiset out;
    for (const auto& [species, multiplicity] : m.entries()) {
      if (species >= new_id.size())
        throw Error(ErrorKind::Argument, "reaction references undeclared species #" +
                                             std::to_string(species));
      out.add(new_id[species], multiplicity);
    }
    return out;
  };
  reactions_.reserve(reactions.size());
  for (auto& r : reactions)
    reactions_.push_back({remap(r.reactants), std::move(r.rate), remap(r.products)});
  build_indexes();
}

void Crn::build_indexes() {
  by_reactants_.clear();
  involving_.assign(names_.size(), {});
  partners_.assign(names_.size(), {});
  for (std::uint32_t i = 0; i < reactions_.size(); ++i) {
    const auto& r = reactions_[i];
    by_reactants_[r.reactants].push_back(i);
    Multiset touched = r.reactants + r.products;
    for (const auto& [species, multiplicity] : touched.entries()) involving_[species].push_back(i);
  }
  for (const auto& [reactants, indices] : by_reactants_) {
    const auto entries = reactants.entries();
    if (reactants.size() == 1) {
      partners_[entries[0].first].push_back(Multiset{});
    } else if (reactants.size() == 2) {
      if (entries.size() == 1) {
        partners_[entries[0].first].push_back(Multiset::of(entries[0].first));
      } else {
        partners_[entries[0].first].push_back(Multiset::of(entries[1].first));
        partners_[entries[1].first].push_back(Multiset::of(entries[0].first));
      }
    }
  }
  for (auto& p : partners_) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
  }
}

std::optional<SpeciesId> Crn::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<SpeciesId>(it - names_.begin());
}

std::span<const std::uint32_t> Crn::reactions_with_reactants(const Multiset& reactants) const {
  auto it = by_reactants_.find(reactants);
  if (it == by_reactants_.end()) return {};
  return it->second;
}

Crn Crn::sorted() const {
  std::vector<Reaction> reactions = reactions_;
  std::stable_sort(reactions.begin(), reactions.end(), [](const Reaction& a, const Reaction& b) {
    if (a.reactants == b.reactants) return a.products < b.products;
    return a.reactants < b.reactants;
  });
  return Crn(names_, std::move(reactions));
}

bool operator==(const Crn& a, const Crn& b) {
  if (a.names_ != b.names_ || a.reactions_.size() != b.reactions_.size()) return false;
  for (std::size_t i = 0; i < a.reactions_.size(); ++i) {
    const auto& x = a.reactions_[i];
    const auto& y = b.reactions_[i];
    if (x.reactants != y.reactants || x.products != y.products || x.rate != y.rate) return false;
  }
  return true;
}

Partition::Partition(std::size_t species_count, std::vector<std::vector<SpeciesId>> blocks) {
  constexpr std::uint32_t unassigned = ~std::uint32_t{0};
  std::vector<std::uint32_t> label(species_count, unassigned);
  for (std::uint32_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw Error(ErrorKind::Partition, "empty block in partition");
    for (SpeciesId s : blocks[b]) {
      if (s >= species_count)
        throw Error(ErrorKind::Partition, "unknown species #" + std::to_string(s));
      if (label[s] != unassigned)
        throw Error(ErrorKind::Partition,
                    "species #" + std::to_string(s) + " appears in more than one block");
      label[s] = b;
    }
  }
  for (std::size_t s = 0; s < species_count; ++s)
    if (label[s] == unassigned)
      throw Error(ErrorKind::Partition,
                  "incomplete partition: species #" + std::to_string(s) + " not covered");
  *this = from_labels(label);
}

Partition Partition::from_labels(std::span<const std::uint32_t> labels) {
  Partition p;
  p.block_of_.assign(labels.size(), 0);
  std::map<std::uint32_t, std::uint32_t> block_for_label;
  // Species are visited in id order, so blocks come out ordered by least member.
  for (SpeciesId s = 0; s < labels.size(); ++s) {
    auto [it, inserted] =
        block_for_label.try_emplace(labels[s], static_cast<std::uint32_t>(p.blocks_.size()));
    if (inserted) p.blocks_.emplace_back();
    p.blocks_[it->second].push_back(s);
    p.block_of_[s] = it->second;
  }
  return p;
}

Partition Partition::trivial(std::size_t species_count) {
  std::vector<std::uint32_t> labels(species_count, 0);
  return from_labels(labels);
}

Partition Partition::discrete(std::size_t species_count) {
  std::vector<std::uint32_t> labels(species_count);
  std::iota(labels.begin(), labels.end(), std::uint32_t{0});
  return from_labels(labels);
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.species_count() != species_count()) return false;
  for (const auto& block : blocks_) {
    const auto target = coarser.block_of(block.front());
    for (SpeciesId s : block)
      if (coarser.block_of(s) != target) return false;
  }
  return true;
}

ChoiceFunction::ChoiceFunction(const Partition& partition)
    : representative_(partition.species_count()) {
  for (const auto& block : partition.blocks())
    for (SpeciesId s : block) representative_[s] = block.front();
}

SpeciesId ChoiceFunction::operator()(SpeciesId species) const {
  if (species >= representative_.size())
    throw Error(ErrorKind::Argument,
                "species #" + std::to_string(species) + " outside the choice function's domain");
  return representative_[species];
}

Multiset ChoiceFunction::lift(const Multiset& multiset) const {
  Multiset out;
  for (const auto& [species, multiplicity] : multiset.entries())
    out.add((*this)(species), multiplicity);
  return out;
}

ChoiceFunction choice_function(const Crn& crn, const Partition& partition) {
  if (partition.species_count() != crn.species_count())
    throw Error(ErrorKind::Partition,
                "incomplete partition: covers " + std::to_string(partition.species_count()) +
                    " of " + std::to_string(crn.species_count()) + " species");
  return ChoiceFunction(partition);
}

std::vector<Violation> validate(const Crn& crn) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < crn.reaction_count(); ++i) {
    const auto& r = crn.reaction(i);
    const std::string where =
        "reaction " + std::to_string(i + 1) + " (" + format_reaction(crn, r) + "): ";
    if (r.rate <= 0) out.push_back({i, where + "rate must be positive"});
    const unsigned molecules = r.reactants.size();
    if (molecules == 0) out.push_back({i, where + "reaction has no reactants"});
    if (molecules > 2) out.push_back({i, where + "reactants exceed multiplicity 2"});
  }
  return out;
}

std::string format_multiset(const Crn& crn, const Multiset& multiset) {
  if (multiset.empty()) return "0";
  std::string out;
  for (const auto& [species, multiplicity] : multiset.entries()) {
    if (!out.empty()) out += " + ";
    if (multiplicity != 1) out += std::to_string(multiplicity);
    out += crn.name(species);
  }
  return out;
}

std::string format_reaction(const Crn& crn, const Reaction& reaction) {
  return format_multiset(crn, reaction.reactants) + " -> " +
         format_multiset(crn, reaction.products) + " , " + format_rational(reaction.rate);
}

}  // namespace crnb
