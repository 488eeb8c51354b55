#include "crnb/models.hpp"

#include <random>
#include <string>

#include "crnb/error.hpp"

namespace crnb {

Crn running_example() {
  // A B C D E
  std::vector<std::string> names{"A", "B", "C", "D", "E"};
  enum : SpeciesId { A, B, C, D, E };
  std::vector<Reaction> reactions{
      {Multiset{{A, 1}}, Rational(6), Multiset{{E, 1}}},
      {Multiset{{B, 1}}, Rational(6), Multiset{{D, 1}}},
      {Multiset{{A, 1}, {B, 1}}, Rational(2), Multiset{{C, 1}}},
      {Multiset{{C, 1}, {D, 1}}, Rational(5), Multiset{{C, 2}, {D, 1}}},
      {Multiset{{E, 1}, {D, 1}}, Rational(5), Multiset{{E, 2}, {D, 1}}},
  };
  return Crn(std::move(names), std::move(reactions));
}

Crn two_state(const Rational& a1, const Rational& a2) {
  std::vector<Reaction> reactions{
      {Multiset::of(0), a1, Multiset::of(1)},
      {Multiset::of(1), a2, Multiset::of(0)},
  };
  return Crn({"F", "G"}, std::move(reactions));
}

namespace {

enum SiteState : unsigned { kU = 0, kP = 1, kUE = 2, kPF = 3 };

std::string substrate_name(const std::vector<unsigned>& state) {
  static const char* labels[] = {"U", "P", "U!E", "P!F"};
  std::string out = "S(";
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (i) out += ',';
    out += "p" + std::to_string(i + 1) + "~" + labels[state[i]];
  }
  return out + ")";
}

}  // namespace

Model multisite(const MultisiteSpec& spec) {
  const unsigned n = spec.sites;
  if (n == 0 || n > kMaxMultisiteSites)
    throw Error(ErrorKind::Argument,
                "multisite needs 1.." + std::to_string(kMaxMultisiteSites) + " sites (n=" +
                    std::to_string(n) + " would need " +
                    (n > 0 && n < 32 ? std::to_string((1ull << (2 * n)) + 2) : std::string("too many")) +
                    " species)");
  for (const auto& k : spec.rates)
    if (k <= 0) throw Error(ErrorKind::Argument, "multisite rates must be positive");

  const std::size_t configs = std::size_t{1} << (2 * n);
  // Species 0..configs-1: substrate configurations (base-4 digits, site 1
  // least significant); then E and F.
  const SpeciesId kinase = static_cast<SpeciesId>(configs);
  const SpeciesId phosphatase = kinase + 1;

  std::vector<std::string> names;
  names.reserve(configs + 2);
  std::vector<unsigned> state(n);
  for (std::size_t c = 0; c < configs; ++c) {
    for (unsigned i = 0; i < n; ++i) state[i] = (c >> (2 * i)) & 3u;
    names.push_back(substrate_name(state));
  }
  names.push_back("E");
  names.push_back("F");

  auto with_site = [](std::size_t c, unsigned site, unsigned value) {
    const std::size_t mask = std::size_t{3} << (2 * site);
    return static_cast<SpeciesId>((c & ~mask) | (std::size_t{value} << (2 * site)));
  };

  const auto& k = spec.rates;
  std::vector<Reaction> reactions;
  reactions.reserve(6 * n * (configs / 4));
  for (unsigned site = 0; site < n; ++site) {
    for (std::size_t c = 0; c < configs; ++c) {
      if (((c >> (2 * site)) & 3u) != kU) continue;  // one pass per configuration of the other sites
      const SpeciesId u = with_site(c, site, kU);
      const SpeciesId p = with_site(c, site, kP);
      const SpeciesId ue = with_site(c, site, kUE);
      const SpeciesId pf = with_site(c, site, kPF);
      reactions.push_back({Multiset{{u, 1}, {kinase, 1}}, k[0], Multiset::of(ue)});
      reactions.push_back({Multiset::of(ue), k[1], Multiset{{u, 1}, {kinase, 1}}});
      reactions.push_back({Multiset::of(ue), k[2], Multiset{{p, 1}, {kinase, 1}}});
      reactions.push_back({Multiset{{p, 1}, {phosphatase, 1}}, k[3], Multiset::of(pf)});
      reactions.push_back({Multiset::of(pf), k[4], Multiset{{p, 1}, {phosphatase, 1}}});
      reactions.push_back({Multiset::of(pf), k[5], Multiset{{u, 1}, {phosphatase, 1}}});
    }
  }

  Model model;
  const std::string all_unmodified = names[0];
  model.crn = Crn(std::move(names), std::move(reactions));
  InitialCondition v0{std::vector<Rational>(model.crn.species_count(), Rational(0))};
  v0.values[*model.crn.find(all_unmodified)] = spec.substrate0;
  v0.values[*model.crn.find("E")] = spec.kinase0;
  v0.values[*model.crn.find("F")] = spec.phosphatase0;
  model.init = std::move(v0);
  return model;
}

std::vector<std::vector<std::uint32_t>> enumerate_set_partitions(std::size_t species_count) {
  std::vector<std::vector<std::uint32_t>> out;
  if (species_count == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<std::uint32_t> labels(species_count, 0);
  std::vector<std::uint32_t> max_before(species_count, 0);  // max label among labels[0..i-1]
  while (true) {
    out.push_back(labels);
    // Advance the restricted-growth string.
    std::size_t i = species_count - 1;
    while (i > 0 && labels[i] > max_before[i]) --i;
    if (i == 0) break;
    ++labels[i];
    for (std::size_t j = i + 1; j < species_count; ++j) {
      labels[j] = 0;
      max_before[j] = std::max(max_before[j - 1], labels[j - 1]);
    }
  }
  return out;
}

Partition brute_force_coarsest(const Crn& crn, const Partition& initial, BisimMode mode) {
  const std::size_t n = crn.species_count();
  if (n > kBruteForceMaxSpecies)
    throw Error(ErrorKind::Argument, "brute-force oracle limited to " +
                                         std::to_string(kBruteForceMaxSpecies) + " species");
  if (initial.species_count() != n) throw Error(ErrorKind::Partition, "incomplete partition");

  // Union-find joining every bisimulation that refines `initial`.
  std::vector<std::uint32_t> parent(n);
  for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& labels : enumerate_set_partitions(n)) {
    const auto candidate = Partition::from_labels(labels);
    if (!candidate.refines(initial) || !is_bisimulation(crn, candidate, mode)) continue;
    for (const auto& block : candidate.blocks())
      for (SpeciesId s : block) parent[find(s)] = find(block.front());
  }
  std::vector<std::uint32_t> labels(n);
  for (std::uint32_t i = 0; i < n; ++i) labels[i] = find(i);
  auto join = Partition::from_labels(labels);
  if (!is_bisimulation(crn, join, mode))
    throw Error(ErrorKind::Precondition, "join of bisimulations is not a bisimulation");
  return join;
}

Crn random_crn(const RandomCrnSpec& spec) {
  if (spec.species == 0) throw Error(ErrorKind::Argument, "random CRN needs at least one species");
  if (spec.rate_pool.empty()) throw Error(ErrorKind::Argument, "empty rate pool");
  std::mt19937_64 rng(spec.seed);
  auto pick = [&](std::size_t bound) {
    return static_cast<std::size_t>(rng() % bound);
  };

  std::vector<std::string> names;
  for (std::size_t i = 0; i < spec.species; ++i) names.push_back("s" + std::to_string(i));

  std::vector<Reaction> reactions;
  for (std::size_t r = 0; r < spec.reactions; ++r) {
    Reaction reaction;
    const std::size_t reactant_count = 1 + pick(2);
    for (std::size_t i = 0; i < reactant_count; ++i)
      reaction.reactants.add(static_cast<SpeciesId>(pick(spec.species)));
    const std::size_t product_count = pick(spec.max_products + 1);
    for (std::size_t i = 0; i < product_count; ++i)
      reaction.products.add(static_cast<SpeciesId>(pick(spec.species)));
    reaction.rate = spec.rate_pool[pick(spec.rate_pool.size())];
    reactions.push_back(std::move(reaction));
  }

  if (spec.symmetric) {
    // Random involution: pair up a shuffled prefix of the species.
    std::vector<SpeciesId> order(spec.species);
    for (SpeciesId i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[pick(i)]);
    std::vector<SpeciesId> image(spec.species);
    for (SpeciesId i = 0; i < image.size(); ++i) image[i] = i;
    for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
      image[order[i]] = order[i + 1];
      image[order[i + 1]] = order[i];
    }
    auto apply = [&](const Multiset& m) {
      Multiset out;
      for (const auto& [s, k] : m.entries()) out.add(image[s], k);
      return out;
    };
    const std::size_t original = reactions.size();
    for (std::size_t r = 0; r < original; ++r)
      reactions.push_back({apply(reactions[r].reactants), reactions[r].rate, apply(reactions[r].products)});
  }
  return Crn(std::move(names), std::move(reactions));
}

}  // namespace crnb
