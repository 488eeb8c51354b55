#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crnb/rational.hpp"

namespace crnb {

/// Dense species index. Within a Crn, ids follow the lexicographic order
/// of species names, which is the total order used to pick block
/// representatives.
using SpeciesId = std::uint32_t;

/// Finite multiset of species, stored as (species, multiplicity) pairs
/// sorted by species with no zero multiplicities.
class Multiset {
 public:
  using Entry = std::pair<SpeciesId, unsigned>;

  Multiset() = default;
  Multiset(std::initializer_list<Entry> entries);

  static Multiset of(SpeciesId species, unsigned multiplicity = 1);

  void add(SpeciesId species, unsigned multiplicity = 1);

  unsigned count(SpeciesId species) const;
  /// Total multiplicity.
  unsigned size() const;
  bool empty() const { return entries_.empty(); }
  std::span<const Entry> entries() const { return entries_; }

  Multiset operator+(const Multiset& other) const;

  friend bool operator==(const Multiset&, const Multiset&) = default;
  friend bool operator<(const Multiset& a, const Multiset& b) {
    return a.entries_ < b.entries_;
  }

 private:
  std::vector<Entry> entries_;
};

struct Reaction {
  Multiset reactants;
  Rational rate;
  Multiset products;
};

/// Accepted species names: nonempty, no whitespace, no '+', '#', '=', ';',
/// balanced parentheses, no comma outside parentheses, and not starting
/// with a digit (a leading integer is a stoichiometric coefficient).
bool is_valid_species_name(std::string_view name);

class Crn {
 public:
  Crn() = default;

  /// `names` may be given in any order; species ids in `reactions` index
  /// into `names`. The constructed network renumbers species so that ids
  /// follow the lexicographic order of names. Throws Error(Argument) on
  /// duplicate or malformed names and dangling species ids.
  Crn(std::vector<std::string> names, std::vector<Reaction> reactions);

  std::size_t species_count() const { return names_.size(); }
  std::size_t reaction_count() const { return reactions_.size(); }

  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(SpeciesId species) const { return names_.at(species); }
  std::optional<SpeciesId> find(std::string_view name) const;

  const std::vector<Reaction>& reactions() const { return reactions_; }
  const Reaction& reaction(std::size_t index) const { return reactions_.at(index); }

  /// Indices of reactions whose reactant multiset equals `reactants`.
  std::span<const std::uint32_t> reactions_with_reactants(const Multiset& reactants) const;

  /// Indices of reactions in which `species` occurs as reactant or product.
  std::span<const std::uint32_t> reactions_involving(SpeciesId species) const {
    return involving_.at(species);
  }

  /// Partner multisets rho (total multiplicity <= 1) such that
  /// `species` + rho is the reactant multiset of some reaction.
  std::span<const Multiset> partners(SpeciesId species) const {
    return partners_.at(species);
  }

  /// Copy with reactions sorted by (reactants, products).
  Crn sorted() const;

  friend bool operator==(const Crn& a, const Crn& b);

 private:
  void build_indexes();

  std::vector<std::string> names_;
  std::vector<Reaction> reactions_;
  std::map<Multiset, std::vector<std::uint32_t>> by_reactants_;
  std::vector<std::vector<std::uint32_t>> involving_;
  std::vector<std::vector<Multiset>> partners_;
};

struct InitialCondition {
  std::vector<Rational> values;  // one per species, >= 0
};

/// Partition of the species 0..n-1. Blocks are sorted internally and
/// ordered by their least species, so the first member of each block is
/// its representative.
class Partition {
 public:
  Partition() = default;

  /// Throws Error(Partition) if blocks are empty, overlap, reference an
  /// unknown species, or leave a species uncovered ("incomplete partition").
  Partition(std::size_t species_count, std::vector<std::vector<SpeciesId>> blocks);

  /// Groups species with equal labels.
  static Partition from_labels(std::span<const std::uint32_t> labels);
  static Partition trivial(std::size_t species_count);
  static Partition discrete(std::size_t species_count);

  std::size_t species_count() const { return block_of_.size(); }
  std::size_t size() const { return blocks_.size(); }

  const std::vector<std::vector<SpeciesId>>& blocks() const { return blocks_; }
  std::span<const SpeciesId> block(std::size_t index) const { return blocks_.at(index); }
  std::uint32_t block_of(SpeciesId species) const { return block_of_.at(species); }
  bool same_block(SpeciesId a, SpeciesId b) const { return block_of(a) == block_of(b); }

  /// True iff every block of *this is contained in a block of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::vector<std::vector<SpeciesId>> blocks_;
  std::vector<std::uint32_t> block_of_;
};

/// Maps every species to the least species of its block.
class ChoiceFunction {
 public:
  ChoiceFunction() = default;
  explicit ChoiceFunction(const Partition& partition);

  std::size_t domain_size() const { return representative_.size(); }

  /// Throws Error(Argument) for species outside the domain.
  SpeciesId operator()(SpeciesId species) const;
  bool is_representative(SpeciesId species) const { return (*this)(species) == species; }

  /// Element-wise application; multiplicities of equal images accumulate.
  Multiset lift(const Multiset& multiset) const;

 private:
  std::vector<SpeciesId> representative_;
};

/// Checks that `partition` covers exactly the CRN's species before
/// building its choice function ("incomplete partition" otherwise).
ChoiceFunction choice_function(const Crn& crn, const Partition& partition);

inline Multiset lift_multiset(const ChoiceFunction& mu, const Multiset& multiset) {
  return mu.lift(multiset);
}

struct Violation {
  std::optional<std::size_t> reaction;  // index into Crn::reactions()
  std::string message;
};

/// Structural restrictions: positive rates and one or two reactant
/// molecules per reaction. An empty result means the CRN is valid.
std::vector<Violation> validate(const Crn& crn);

/// "A + 2C", or "0" for the empty multiset.
std::string format_multiset(const Crn& crn, const Multiset& multiset);
/// "A + B -> C , 2"
std::string format_reaction(const Crn& crn, const Reaction& reaction);

}  // namespace crnb
