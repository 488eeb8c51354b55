#include "doctest.h"

#include "crnb/bisim.hpp"
#include "crnb/error.hpp"
#include "crnb/models.hpp"
#include "crnb/odes.hpp"
#include "crnb/reduce.hpp"
#include "support.hpp"

using namespace crnb;
using test::blocks;

namespace {

std::vector<std::string> lines(const Crn& crn) {
  std::vector<std::string> out;
  for (const auto& r : crn.reactions()) out.push_back(format_reaction(crn, r));
  return out;
}

// Forward commuting diagram: block sums of the original field, rewritten in
// block variables, equal the reduced field. Checked by evaluating both at
// random rational points of the section (representative = block sum).
void check_forward_diagram(const Crn& crn, const Partition& p, const ReducedCrn& red) {
  const auto field = vector_field(crn);
  const auto reduced_field = vector_field(red.crn);
  std::vector<Polynomial> section(crn.species_count(), Polynomial(0));
  for (std::size_t b = 0; b < p.size(); ++b) section[p.block(b).front()] = Polynomial::variable(static_cast<std::uint32_t>(b));
  for (std::size_t b = 0; b < p.size(); ++b) {
    Polynomial sum;
    for (SpeciesId x : p.block(b)) sum += field.components[x];
    CHECK(sum.substitute(section) == reduced_field.components[b]);
  }
}

void check_backward_diagram(const Crn& crn, const Partition& p, const ReducedCrn& red) {
  const auto field = vector_field(crn);
  const auto reduced_field = vector_field(red.crn);
  std::vector<Polynomial> collapse(crn.species_count());
  for (SpeciesId x = 0; x < crn.species_count(); ++x) collapse[x] = Polynomial::variable(p.block_of(x));
  for (std::size_t b = 0; b < p.size(); ++b)
    CHECK(field.components[p.block(b).front()].substitute(collapse) == reduced_field.components[b]);
}

}  // namespace

TEST_SUITE("reduce") {
  TEST_CASE("forward reduction of the running example") {
    const auto crn = running_example();
    const auto red = forward_reduce(crn, blocks(crn, {{"A"}, {"B"}, {"C", "E"}, {"D"}}));
    CHECK(red.crn.names() == std::vector<std::string>{"A", "B", "C", "D"});
    CHECK(lines(red.crn) == std::vector<std::string>{"A -> C , 6", "A + B -> C , 2", "B -> D , 6",
                                                      "C + D -> 2C + D , 5"});
    CHECK(red.mode == BisimMode::Forward);
    CHECK(red.species_map(4) == 2);
    CHECK(validate(red.crn).empty());
  }

  TEST_CASE("backward reduction of the running example") {
    const auto crn = running_example();
    const auto red = backward_reduce(crn, blocks(crn, {{"A", "B"}, {"C"}, {"D"}, {"E"}}));
    CHECK(red.crn.names() == std::vector<std::string>{"A", "C", "D", "E"});
    CHECK(lines(red.crn) == std::vector<std::string>{"A -> A + D , 6", "A -> E , 6", "2A -> A + C , 2",
                                                      "C + D -> 2C + D , 5", "D + E -> D + 2E , 5"});
    CHECK(validate(red.crn).empty());
  }

  TEST_CASE("discrete partition: unchanged up to fusion") {
    const auto crn = running_example();
    for (auto mode : {BisimMode::Forward, BisimMode::Backward})
      CHECK(reduce(crn, Partition::discrete(5), mode).crn == crn.sorted());
    const auto dup = test::parse("A -> B , 3\nA -> B , 4\n");
    for (auto mode : {BisimMode::Forward, BisimMode::Backward}) {
      const auto red = reduce(dup, Partition::discrete(2), mode);
      CHECK(lines(red.crn) == std::vector<std::string>{"A -> B , 7"});
    }
  }

  TEST_CASE("backward: reactions over representatives only keep their products") {
    // A -> C keeps its form; B -> C gets B back on the product side.
    const auto crn = test::parse("A -> C , 1\nB -> C , 1\nC -> A + B , 2\n");
    const auto p = blocks(crn, {{"A", "B"}, {"C"}});
    REQUIRE(is_bisimulation(crn, p, BisimMode::Backward));
    const auto red = backward_reduce(crn, p);
    CHECK(lines(red.crn) == std::vector<std::string>{"A -> A + C , 1", "A -> C , 1", "C -> A , 2"});
  }

  TEST_CASE("backward product rewrite with a non-representative species on both sides") {
    // B + C -> 3B : pi~(B) = rho(B) = 1, regardless of pi(B).
    const auto crn = test::parse("A + C -> 3A , 1\nB + C -> 3B , 1\n");
    const auto p = blocks(crn, {{"A", "B"}, {"C"}});
    REQUIRE(is_bisimulation(crn, p, BisimMode::Backward));
    CHECK(lines(backward_reduce(crn, p).crn) == std::vector<std::string>{"A + C -> A , 1", "A + C -> 3A , 1"});
  }

  TEST_CASE("reduced species count equals block count; reactions with equal sides kept") {
    const auto crn = test::parse("A -> B , 1\nB -> A , 1\n");
    const auto red = forward_reduce(crn, Partition::trivial(2));
    CHECK(red.crn.species_count() == 1);
    CHECK(lines(red.crn) == std::vector<std::string>{"A -> A , 1"});
  }

  TEST_CASE("non-bisimulation partitions are refused") {
    const auto crn = running_example();
    try {
      forward_reduce(crn, Partition::trivial(5));
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotBisimulation);
      CHECK(std::string(e.what()).find("partition is not a forward bisimulation") != std::string::npos);
    }
    try {
      backward_reduce(crn, blocks(crn, {{"A"}, {"B"}, {"C", "E"}, {"D"}}));
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("partition is not a backward bisimulation") != std::string::npos);
    }
  }

  TEST_CASE("step counter stays within the bound") {
    CHECK(forward_reduce(Crn({"A"}, {}), Partition::trivial(1)).steps == 0);
    const auto crn = running_example();
    const auto red = forward_reduce(crn, blocks(crn, {{"A"}, {"B"}, {"C", "E"}, {"D"}}));
    CHECK(red.steps > 0);
    CHECK(static_cast<double>(red.steps) <= reduction_step_bound(5, 5));
    for (unsigned n = 1; n <= 3; ++n) {
      MultisiteSpec spec;
      spec.sites = n;
      const auto m = multisite(spec);
      for (auto mode : {BisimMode::Forward, BisimMode::Backward}) {
        const auto p = refine(m.crn, Partition::trivial(m.crn.species_count()), mode).final;
        const auto r = reduce(m.crn, p, mode);
        CHECK(static_cast<double>(r.steps) <= reduction_step_bound(m.crn.reaction_count(), m.crn.species_count()));
      }
    }
  }

  TEST_CASE("commuting diagrams, validity and idempotence on random CRNs") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
      RandomCrnSpec spec;
      spec.seed = seed;
      spec.species = 2 + seed % 5;
      spec.reactions = 2 + seed % 6;
      spec.symmetric = true;
      const auto crn = random_crn(spec);
      CAPTURE(seed);
      for (auto mode : {BisimMode::Forward, BisimMode::Backward}) {
        const auto p = refine(crn, Partition::trivial(crn.species_count()), mode).final;
        const auto red = reduce(crn, p, mode);
        CHECK(red.crn.species_count() == p.size());
        CHECK(validate(red.crn).empty());
        if (mode == BisimMode::Forward) check_forward_diagram(crn, p, red);
        else check_backward_diagram(crn, p, red);
        const auto again = reduce(red.crn, Partition::discrete(red.crn.species_count()), mode);
        CHECK(again.crn == red.crn);
      }
    }
  }

  TEST_CASE("initial conditions project onto the quotient") {
    const auto crn = running_example();
    InitialCondition v0{{Rational(1), Rational(1), Rational(2), Rational(3), Rational(4)}};
    const auto fwd = forward_reduce(crn, blocks(crn, {{"A"}, {"B"}, {"C", "E"}, {"D"}}));
    CHECK(reduce_initial_condition(fwd, v0).values ==
          std::vector<Rational>{Rational(1), Rational(1), Rational(6), Rational(3)});
    const auto bwd = backward_reduce(crn, blocks(crn, {{"A", "B"}, {"C"}, {"D"}, {"E"}}));
    CHECK(reduce_initial_condition(bwd, v0).values ==
          std::vector<Rational>{Rational(1), Rational(2), Rational(3), Rational(4)});
  }
}
