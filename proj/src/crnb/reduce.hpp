#pragma once

#include <cstdint>

#include "crnb/bisim.hpp"
#include "crnb/core.hpp"

namespace crnb {

/// Quotient CRN over the block representatives. Species id b of `crn`
/// is the representative of block b of `partition`.
struct ReducedCrn {
  Crn crn;
  Partition partition;
  BisimMode mode = BisimMode::Forward;
  ChoiceFunction species_map;
  /// Instrumented element operations spent building the quotient
  /// (multiset entry visits plus entry comparisons during fusion).
  std::uint64_t steps = 0;
};

/// Discards reactions with non-representative reactants, maps products to
/// representatives, fuses duplicates. Throws Error(NotBisimulation) if
/// `partition` is not a forward bisimulation.
ReducedCrn forward_reduce(const Crn& crn, const Partition& partition);

/// Overwrites non-representative product multiplicities with the reactant
/// ones, maps both sides to representatives, fuses duplicates. Throws
/// Error(NotBisimulation) if `partition` is not a backward bisimulation.
ReducedCrn backward_reduce(const Crn& crn, const Partition& partition);

ReducedCrn reduce(const Crn& crn, const Partition& partition, BisimMode mode);

/// Constant c of the step bound c * |R| * |S| * (log2|R| + log2|S|).
inline constexpr double kReductionStepConstant = 64.0;

/// The step bound above, with |R| and |S| clamped to at least 2 so the
/// logarithms stay positive on degenerate inputs.
double reduction_step_bound(std::size_t reactions, std::size_t species,
                            double constant = kReductionStepConstant);

/// Initial condition of the reduced network: block sums (forward) or
/// representative values (backward).
InitialCondition reduce_initial_condition(const ReducedCrn& reduced, const InitialCondition& v0);

}  // namespace crnb
