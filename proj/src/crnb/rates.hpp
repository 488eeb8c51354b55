#pragma once

#include <span>
#include <vector>

#include "crnb/core.hpp"

namespace crnb {

// Structural rate functions over a CRN. `partner` is the multiset rho that
// X reacts with (empty or a single species for elementary reactions).

/// (rho(X)+1) * sum of rates of reactions with reactants X + rho.
Rational reaction_rate(const Crn& crn, SpeciesId x, const Multiset& partner);

/// (rho(X)+1) * sum over reactions X + rho -> pi of rate * pi(Y).
Rational production_rate(const Crn& crn, SpeciesId x, const Multiset& partner, SpeciesId y);

/// Sum of production_rate over the species of `block`.
Rational block_production_rate(const Crn& crn, SpeciesId x, const Multiset& partner,
                               std::span<const SpeciesId> block);

/// Net flux sum over reactions rho -> pi of (pi(X) - rho(X)) * rate.
/// May be negative.
Rational flux_rate(const Crn& crn, SpeciesId x, const Multiset& reactants);

/// Sum of flux_rate over a set of reactant multisets.
Rational cumulative_flux_rate(const Crn& crn, SpeciesId x, std::span<const Multiset> reactant_set);

/// Reactant multisets that share the same image under a choice function.
struct ReactantClass {
  std::vector<Multiset> members;  // sorted
  Multiset canonical;             // common image of all members
};

/// Groups the distinct reactant multisets of the CRN by their image under
/// the partition's choice function. Classes are ordered by canonical image.
std::vector<ReactantClass> reactant_classes(const Crn& crn, const Partition& partition);

}  // namespace crnb
