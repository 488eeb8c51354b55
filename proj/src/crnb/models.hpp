#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "crnb/bisim.hpp"
#include "crnb/core.hpp"
#include "crnb/io.hpp"

namespace crnb {

/// A -6-> E, B -6-> D, A + B -2-> C, C + D -5-> 2C + D, E + D -5-> 2E + D
Crn running_example();

/// F -a1-> G, G -a2-> F
Crn two_state(const Rational& a1, const Rational& a2);

/// Multisite phosphorylation: a substrate with `sites` symmetric sites,
/// each unmodified (U), phosphorylated (P), U bound to kinase E, or P
/// bound to phosphatase F, plus free E and F. All rates are site-uniform.
struct MultisiteSpec {
  unsigned sites = 2;
  // E binding, E unbinding, E catalysis, F binding, F unbinding, F catalysis.
  std::array<Rational, 6> rates{Rational(1), Rational(2), Rational(3),
                                Rational(4), Rational(5), Rational(6)};
  // Initial concentrations of the all-U substrate, free E and free F.
  Rational substrate0 = 10;
  Rational kinase0 = 2;
  Rational phosphatase0 = 3;
};

/// 4^n + 2 species and 6 n 4^(n-1) reactions. Throws Error(Argument) for
/// 0 sites or above kMaxMultisiteSites.
Model multisite(const MultisiteSpec& spec);

inline constexpr unsigned kMaxMultisiteSites = 9;

inline constexpr std::size_t kBruteForceMaxSpecies = 8;

/// All set partitions of `species_count` elements, as restricted-growth
/// label vectors.
std::vector<std::vector<std::uint32_t>> enumerate_set_partitions(std::size_t species_count);

/// Coarsest `mode` bisimulation refining `initial`, by exhaustive
/// enumeration of every refinement and joining the bisimulations found.
/// Throws Error(Argument) past kBruteForceMaxSpecies species.
Partition brute_force_coarsest(const Crn& crn, const Partition& initial, BisimMode mode);

struct RandomCrnSpec {
  std::uint64_t seed = 0;
  std::size_t species = 4;
  std::size_t reactions = 6;
  std::vector<Rational> rate_pool{Rational(1), Rational(2), Rational(3)};
  std::size_t max_products = 3;
  /// Add the image of every reaction under a random species involution,
  /// which makes nontrivial bisimulations likely.
  bool symmetric = false;
};

/// Valid elementary CRN, reproducible from the seed. Species are named
/// "s0", "s1", ...
Crn random_crn(const RandomCrnSpec& spec);

}  // namespace crnb
