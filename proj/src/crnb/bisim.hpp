#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "crnb/core.hpp"
#include "crnb/rates.hpp"

namespace crnb {

enum class BisimMode { Forward, Backward };

std::string_view to_string(BisimMode mode);

struct RefineStats {
  std::uint64_t predicate_calls = 0;  // pairwise splitter evaluations
  std::uint64_t rate_evaluations = 0; // rate-function calls made by those evaluations
};

/// X ~F Y under a partition: equal reaction rates and equal block
/// production rates for every partner in D(X) u D(Y) u {0} and every block.
class ForwardSplitter {
 public:
  ForwardSplitter(const Crn& crn, const Partition& partition, RefineStats* stats = nullptr);
  bool equivalent(SpeciesId x, SpeciesId y) const;

 private:
  const Crn& crn_;
  const Partition& partition_;
  RefineStats* stats_;
};

/// X ~B Y under a partition: equal cumulative flux rates on every reactant
/// class. The classes are computed once at construction.
class BackwardSplitter {
 public:
  BackwardSplitter(const Crn& crn, const Partition& partition, RefineStats* stats = nullptr);
  bool equivalent(SpeciesId x, SpeciesId y) const;

  const std::vector<ReactantClass>& classes() const { return classes_; }

 private:
  const Crn& crn_;
  std::vector<ReactantClass> classes_;
  std::map<Multiset, std::uint32_t> class_of_;
  RefineStats* stats_;
};

bool forward_equivalent(const Crn& crn, const Partition& partition, SpeciesId x, SpeciesId y);
bool backward_equivalent(const Crn& crn, const Partition& partition, SpeciesId x, SpeciesId y);

/// Representative-pointer sweep: item i joins the class of the first
/// earlier unassigned item it is equivalent to. Returns the representative
/// (least index) of every item. At most n(n-1)/2 predicate calls.
template <class Equivalent>
std::vector<std::uint32_t> quotient_representatives(std::size_t n, Equivalent&& equivalent) {
  constexpr std::uint32_t none = ~std::uint32_t{0};
  std::vector<std::uint32_t> rep(n, none);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (rep[i] != none) continue;
    rep[i] = i;
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (rep[j] == none && equivalent(j, i)) rep[j] = i;
  }
  return rep;
}

template <class Equivalent>
Partition quotient(std::size_t n, Equivalent&& equivalent) {
  return Partition::from_labels(quotient_representatives(n, std::forward<Equivalent>(equivalent)));
}

enum class RefineStrategy {
  /// Groups each block by an exact per-species rate signature.
  Signature,
  /// Runs the pairwise splitter predicate with the quotient sweep inside
  /// every block. Quadratic in block size; instrumented.
  PairwiseSweep,
};

struct RefinementTrace {
  std::vector<Partition> iterations;  // initial partition first, strictly finer afterwards
  Partition final;
  std::size_t rounds = 0;  // executions of the split step, including the final no-op
  RefineStats stats;
};

/// Coarsest `mode` bisimulation refining `initial`. Requires an elementary
/// CRN (1 or 2 reactant molecules per reaction).
RefinementTrace refine(const Crn& crn, const Partition& initial, BisimMode mode,
                       RefineStrategy strategy = RefineStrategy::Signature);

/// First within-block pair (block representative, member) that is not
/// splitter-equivalent, if any.
std::optional<std::pair<SpeciesId, SpeciesId>> find_bisimulation_violation(
    const Crn& crn, const Partition& partition, BisimMode mode);

bool is_bisimulation(const Crn& crn, const Partition& partition, BisimMode mode);

}  // namespace crnb
