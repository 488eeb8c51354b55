#include "crnb/rates.hpp"

#include <algorithm>
#include <map>

namespace crnb {

Rational reaction_rate(const Crn& crn, SpeciesId x, const Multiset& partner) {
  Rational sum = 0;
  for (auto i : crn.reactions_with_reactants(Multiset::of(x) + partner)) sum += crn.reaction(i).rate;
  return sum * (partner.count(x) + 1);
}

Rational production_rate(const Crn& crn, SpeciesId x, const Multiset& partner, SpeciesId y) {
  Rational sum = 0;
  for (auto i : crn.reactions_with_reactants(Multiset::of(x) + partner)) {
    const auto& r = crn.reaction(i);
    sum += r.rate * r.products.count(y);
  }
  return sum * (partner.count(x) + 1);
}

Rational block_production_rate(const Crn& crn, SpeciesId x, const Multiset& partner,
                               std::span<const SpeciesId> block) {
  Rational sum = 0;
  for (SpeciesId y : block) sum += production_rate(crn, x, partner, y);
  return sum;
}

Rational flux_rate(const Crn& crn, SpeciesId x, const Multiset& reactants) {
  Rational sum = 0;
  for (auto i : crn.reactions_with_reactants(reactants)) {
    const auto& r = crn.reaction(i);
    const long net = static_cast<long>(r.products.count(x)) - static_cast<long>(r.reactants.count(x));
    sum += r.rate * net;
  }
  return sum;
}

Rational cumulative_flux_rate(const Crn& crn, SpeciesId x,
                              std::span<const Multiset> reactant_set) {
  Rational sum = 0;
  for (const auto& m : reactant_set) sum += flux_rate(crn, x, m);
  return sum;
}

std::vector<ReactantClass> reactant_classes(const Crn& crn, const Partition& partition) {
  const auto mu = choice_function(crn, partition);
  std::map<Multiset, std::vector<Multiset>> by_image;
  std::vector<Multiset> seen;
  for (const auto& r : crn.reactions()) seen.push_back(r.reactants);
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  for (auto& m : seen) {
    auto image = mu.lift(m);
    by_image[std::move(image)].push_back(std::move(m));
  }
  std::vector<ReactantClass> out;
  out.reserve(by_image.size());
  for (auto& [image, members] : by_image) out.push_back({std::move(members), image});
  return out;
}

}  // namespace crnb
