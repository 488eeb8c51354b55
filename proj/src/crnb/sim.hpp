#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crnb/core.hpp"
#include "crnb/odes.hpp"

namespace crnb {

struct OdeOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  std::size_t output_points = 201;  // uniform grid on [0, t_end], endpoints included
  std::size_t max_steps = 10'000'000;
};

inline constexpr double kDefaultHorizon = 50.0;

struct Trajectory {
  std::vector<std::string> variables;
  std::vector<double> times;
  std::vector<std::vector<double>> states;  // states[k][i]: variable i at times[k]

  /// Header "time,<names...>", then one row per time point.
  std::string to_csv() const;
};

/// Vector field lowered to double-precision monomial lists.
class CompiledField {
 public:
  explicit CompiledField(const VectorField& field);

  std::size_t dimension() const { return components_.size(); }
  void operator()(std::span<const double> state, std::span<double> derivative) const;

 private:
  struct Term {
    double coefficient;
    std::vector<std::uint32_t> factors;  // variables, repeated by exponent
  };
  std::vector<std::vector<Term>> components_;
};

/// Adaptive Dormand-Prince 5(4) integration on the output grid of `options`.
/// Throws Error(Integration) on step-size underflow, non-finite states or
/// step budget exhaustion.
Trajectory integrate(const VectorField& field, std::span<const double> v0, double t_end,
                     const OdeOptions& options = {});

std::vector<double> to_doubles(const InitialCondition& v0);

/// |value - reference| when |reference| < 1, relative difference otherwise.
double comparison_error(double reference, double value);

struct ForwardReport {
  double max_error = 0.0;  // over time points and blocks
  bool passed = false;
  std::size_t reduced_species = 0;
  std::size_t reduced_reactions = 0;
};

/// Integrates the original network and its forward reduction (started
/// from block sums) and compares block sums along the trajectory.
ForwardReport verify_forward(const Crn& crn, const Partition& partition, const InitialCondition& v0,
                             double t_end, double tol, const OdeOptions& options = {});

struct BackwardReport {
  double max_spread = 0.0;     // within-block spread of the original trajectory
  double max_deviation = 0.0;  // original species vs reduced representative
  bool passed = false;
  std::size_t reduced_species = 0;
  std::size_t reduced_reactions = 0;
};

/// Requires `v0` constant on the partition; throws Error(Precondition)
/// "initial condition violates block equality" otherwise.
BackwardReport verify_backward(const Crn& crn, const Partition& partition,
                               const InitialCondition& v0, double t_end, double tol,
                               const OdeOptions& options = {});

}  // namespace crnb
