#include "crnb/odes.hpp"

#include "crnb/error.hpp"

namespace crnb {
namespace {

std::string format_block(const Crn& crn, std::span<const SpeciesId> block) {
  std::string out = "{";
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) out += ", ";
    out += crn.name(block[i]);
  }
  return out + "}";
}

std::vector<Polynomial> block_sums(const Crn& crn, const Partition& partition,
                                   const VectorField& field) {
  std::vector<Polynomial> sums(partition.size());
  for (SpeciesId s = 0; s < crn.species_count(); ++s)
    sums[partition.block_of(s)] += field.components[s];
  return sums;
}

}  // namespace

std::string VectorField::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < components.size(); ++i) {
    out += "d" + format_variable(variables[i]) + "/dt = " + components[i].to_string(variables) + "\n";
  }
  return out;
}

Polynomial reaction_propensity(const Reaction& reaction) {
  Monomial m;
  for (const auto& [s, k] : reaction.reactants.entries()) m = m * Monomial::variable(s, k);
  return Polynomial::term(reaction.rate, m);
}

VectorField vector_field(const Crn& crn) {
  VectorField field{crn.names(), std::vector<Polynomial>(crn.species_count())};
  for (const auto& r : crn.reactions()) {
    const Polynomial propensity = reaction_propensity(r);
    const Multiset involved = r.reactants + r.products;
    for (const auto& [s, k] : involved.entries()) {
      const long net = static_cast<long>(r.products.count(s)) - static_cast<long>(r.reactants.count(s));
      if (net != 0) field.components[s] += propensity * Rational(net);
    }
  }
  return field;
}

AccretionDepletion accretion_depletion(const Reaction& reaction, SpeciesId x) {
  const Polynomial propensity = reaction_propensity(reaction);
  return {propensity * Rational(reaction.products.count(x)),
          propensity * Rational(reaction.reactants.count(x))};
}

std::optional<LumpingViolation> find_exact_lumping_violation(const Crn& crn,
                                                             const Partition& partition) {
  const auto mu = choice_function(crn, partition);
  const auto field = vector_field(crn);
  std::vector<Polynomial> collapse(crn.species_count());
  for (SpeciesId s = 0; s < crn.species_count(); ++s) collapse[s] = Polynomial::variable(mu(s));

  for (std::size_t b = 0; b < partition.size(); ++b) {
    const auto block = partition.block(b);
    if (block.size() < 2) continue;
    const Polynomial reference = field.components[block.front()].substitute(collapse);
    for (std::size_t i = 1; i < block.size(); ++i) {
      if (field.components[block[i]].substitute(collapse) != reference) {
        return LumpingViolation{
            b, "block " + format_block(crn, block) + ": d" + format_variable(crn.name(block.front())) +
                   "/dt and d" + format_variable(crn.name(block[i])) +
                   "/dt differ on states constant on the partition"};
      }
    }
  }
  return std::nullopt;
}

bool check_exact_lumpable(const Crn& crn, const Partition& partition) {
  return !find_exact_lumping_violation(crn, partition).has_value();
}

std::optional<LumpingViolation> find_ordinary_lumping_violation(const Crn& crn,
                                                                const Partition& partition) {
  choice_function(crn, partition);
  const auto n = static_cast<std::uint32_t>(crn.species_count());
  const auto sums = block_sums(crn, partition, vector_field(crn));
  const Polynomial t = Polynomial::variable(n);  // shear parameter

  std::vector<Polynomial> shear(n);
  for (std::uint32_t s = 0; s < n; ++s) shear[s] = Polynomial::variable(s);

  for (const auto& block : partition.blocks()) {
    for (std::size_t k = 1; k < block.size(); ++k) {
      const SpeciesId i = block[k - 1];
      const SpeciesId j = block[k];
      shear[i] = Polynomial::variable(i) + t;
      shear[j] = Polynomial::variable(j) - t;
      for (std::size_t h = 0; h < sums.size(); ++h) {
        if (sums[h].substitute(shear) != sums[h]) {
          return LumpingViolation{
              h, "sum of derivatives over block " + format_block(crn, partition.block(h)) +
                     " is not a function of block sums (shear along " + crn.name(i) + "/" +
                     crn.name(j) + ")"};
        }
      }
      shear[i] = Polynomial::variable(i);
      shear[j] = Polynomial::variable(j);
    }
  }
  return std::nullopt;
}

bool check_ordinary_lumpable(const Crn& crn, const Partition& partition) {
  return !find_ordinary_lumping_violation(crn, partition).has_value();
}

std::vector<std::string> block_names(const Crn& crn, const Partition& partition) {
  std::vector<std::string> names;
  names.reserve(partition.size());
  for (const auto& block : partition.blocks()) {
    std::string name;
    for (SpeciesId s : block) {
      if (!name.empty()) name += '+';
      name += crn.name(s);
    }
    names.push_back(std::move(name));
  }
  return names;
}

VectorField lumped_field_forward(const Crn& crn, const Partition& partition) {
  if (auto bad = find_ordinary_lumping_violation(crn, partition))
    throw Error(ErrorKind::Precondition, "partition is not ordinarily lumpable: " + bad->detail);
  const auto sums = block_sums(crn, partition, vector_field(crn));

  // On shear-invariant polynomials the section V_rep(H) = W_H, other
  // members 0, inverts the block-sum map.
  std::vector<Polynomial> section(crn.species_count());
  for (std::uint32_t b = 0; b < partition.size(); ++b)
    section[partition.block(b).front()] = Polynomial::variable(b);

  VectorField out{block_names(crn, partition), {}};
  for (const auto& s : sums) out.components.push_back(s.substitute(section));
  return out;
}

VectorField lumped_field_backward(const Crn& crn, const Partition& partition) {
  if (auto bad = find_exact_lumping_violation(crn, partition))
    throw Error(ErrorKind::Precondition, "partition is not exactly lumpable: " + bad->detail);
  const auto field = vector_field(crn);
  std::vector<Polynomial> collapse(crn.species_count());
  for (SpeciesId s = 0; s < crn.species_count(); ++s)
    collapse[s] = Polynomial::variable(partition.block_of(s));

  VectorField out;
  for (const auto& block : partition.blocks()) {
    out.variables.push_back(crn.name(block.front()));
    out.components.push_back(field.components[block.front()].substitute(collapse));
  }
  return out;
}

}  // namespace crnb
