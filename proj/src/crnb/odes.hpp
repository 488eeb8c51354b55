#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crnb/core.hpp"
#include "crnb/polynomial.hpp"

namespace crnb {

/// One polynomial right-hand side per variable.
struct VectorField {
  std::vector<std::string> variables;
  std::vector<Polynomial> components;

  /// One "dX/dt = ..." line per variable, newline-terminated.
  std::string to_string() const;
};

/// Mass-action vector field; variable i is species i.
VectorField vector_field(const Crn& crn);

/// rate * prod V_Y^rho(Y) for a reaction's reactants.
Polynomial reaction_propensity(const Reaction& reaction);

struct AccretionDepletion {
  Polynomial accretion;  // pi(X) * propensity
  Polynomial depletion;  // rho(X) * propensity
};

AccretionDepletion accretion_depletion(const Reaction& reaction, SpeciesId x);

struct LumpingViolation {
  std::size_t block;   // block index in the partition
  std::string detail;  // human-readable counterexample
};

/// Substitutes V_X := V_mu(X) and compares derivatives within each block.
std::optional<LumpingViolation> find_exact_lumping_violation(const Crn& crn, const Partition& partition);
bool check_exact_lumpable(const Crn& crn, const Partition& partition);

/// Each block-summed derivative must be invariant, as a polynomial identity,
/// under every shear V_i -> V_i + t, V_j -> V_j - t for consecutive members
/// i, j of a block.
std::optional<LumpingViolation> find_ordinary_lumping_violation(const Crn& crn,
                                                                const Partition& partition);
bool check_ordinary_lumpable(const Crn& crn, const Partition& partition);

/// Block names "C+E" (members joined by '+'); singletons keep their name.
std::vector<std::string> block_names(const Crn& crn, const Partition& partition);

/// Block-sum polynomials over one variable per block. Throws
/// Error(Precondition) if the partition is not ordinarily lumpable.
VectorField lumped_field_forward(const Crn& crn, const Partition& partition);

/// Representative derivatives with every V_X replaced by V_mu(X), over one
/// variable per block named after its representative. Throws
/// Error(Precondition) if the partition is not exactly lumpable.
VectorField lumped_field_backward(const Crn& crn, const Partition& partition);

}  // namespace crnb
