#include "crnb/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "crnb/error.hpp"
#include "crnb/reduce.hpp"

namespace crnb {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string Trajectory::to_csv() const {
  std::string out = "time";
  for (const auto& v : variables) out += "," + csv_field(v);
  out += '\n';
  for (std::size_t k = 0; k < times.size(); ++k) {
    out += format_double(times[k]);
    for (double x : states[k]) out += "," + format_double(x);
    out += '\n';
  }
  return out;
}

CompiledField::CompiledField(const VectorField& field) {
  components_.resize(field.components.size());
  for (std::size_t i = 0; i < field.components.size(); ++i) {
    for (const auto& [monomial, coefficient] : field.components[i].terms()) {
      Term t{coefficient.get_d(), {}};
      for (const auto& [v, e] : monomial.factors())
        for (std::uint32_t k = 0; k < e; ++k) t.factors.push_back(v);
      components_[i].push_back(std::move(t));
    }
  }
}

void CompiledField::operator()(std::span<const double> state, std::span<double> derivative) const {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    double sum = 0.0;
    for (const auto& t : components_[i]) {
      double term = t.coefficient;
      for (auto v : t.factors) term *= state[v];
      sum += term;
    }
    derivative[i] = sum;
  }
}

Trajectory integrate(const VectorField& field, std::span<const double> v0, double t_end,
                     const OdeOptions& options) {
  if (!(t_end > 0.0)) throw Error(ErrorKind::Argument, "t_end must be positive");
  if (v0.size() != field.components.size())
    throw Error(ErrorKind::Argument, "initial state has wrong dimension");
  if (options.output_points < 2) throw Error(ErrorKind::Argument, "need at least 2 output points");

  const CompiledField f(field);
  const std::size_t n = f.dimension();
  Trajectory traj;
  traj.variables = field.variables;

  std::vector<double> y(v0.begin(), v0.end()), y_new(n), err(n), tmp(n);
  std::array<std::vector<double>, 7> k;
  for (auto& ki : k) ki.assign(n, 0.0);

  auto norm = [&](std::span<const double> v, std::span<const double> scale_ref) {
    if (n == 0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = options.atol + options.rtol * std::abs(scale_ref[i]);
      s += (v[i] / sc) * (v[i] / sc);
    }
    return std::sqrt(s / static_cast<double>(n));
  };

  double t = 0.0;
  f(y, k[0]);
  // Starting step after Hairer, Norsett & Wanner.
  double h;
  {
    const double d0 = norm(y, y), d1 = norm(k[0], y);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, t_end);
  }

  traj.times.push_back(0.0);
  traj.states.push_back(y);
  std::size_t steps = 0;

  for (std::size_t out = 1; out < options.output_points; ++out) {
    const double t_out =
        out + 1 == options.output_points
            ? t_end
            : t_end * static_cast<double>(out) / static_cast<double>(options.output_points - 1);
    while (t < t_out) {
      if (++steps > options.max_steps)
        throw Error(ErrorKind::Integration, "integration failed at t=" + format_double(t) +
                                                ": step budget exhausted");
      const bool last = t + h >= t_out;
      const double step = last ? t_out - t : h;
      if (step < 1e-14 * std::max(1.0, std::abs(t)))
        throw Error(ErrorKind::Integration,
                    "integration failed at t=" + format_double(t) + ": step size underflow");

      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + step * a21 * k[0][i];
      f(tmp, k[1]);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + step * (a31 * k[0][i] + a32 * k[1][i]);
      f(tmp, k[2]);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + step * (a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]);
      f(tmp, k[3]);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + step * (a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i]);
      f(tmp, k[4]);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + step * (a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] +
                                a65 * k[4][i]);
      f(tmp, k[5]);
      for (std::size_t i = 0; i < n; ++i)
        y_new[i] = y[i] + step * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] +
                                  b6 * k[5][i]);
      f(y_new, k[6]);
      for (std::size_t i = 0; i < n; ++i) {
        err[i] = step * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] +
                         e6 * k[5][i] + e7 * k[6][i]);
        tmp[i] = std::max(std::abs(y[i]), std::abs(y_new[i]));
      }
      const double error = norm(err, tmp);
      if (!std::isfinite(error))
        throw Error(ErrorKind::Integration,
                    "integration failed at t=" + format_double(t) + ": non-finite state");

      const double factor =
          error == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(error, -0.2), 0.2, 5.0);
      if (error <= 1.0) {
        t = last ? t_out : t + step;
        y.swap(y_new);
        k[0].swap(k[6]);  // first-same-as-last
        // A step clipped to the output grid says little about the next one.
        h = (last && step < h) ? (factor >= 1.0 ? h : h * factor) : step * factor;
      } else {
        h = step * std::min(1.0, factor);
      }
    }
    traj.times.push_back(t_out);
    traj.states.push_back(y);
  }
  return traj;
}

std::vector<double> to_doubles(const InitialCondition& v0) {
  std::vector<double> out;
  out.reserve(v0.values.size());
  for (const auto& v : v0.values) out.push_back(v.get_d());
  return out;
}

double comparison_error(double reference, double value) {
  const double diff = std::abs(value - reference);
  return std::abs(reference) < 1.0 ? diff : diff / std::abs(reference);
}

ForwardReport verify_forward(const Crn& crn, const Partition& partition, const InitialCondition& v0,
                             double t_end, double tol, const OdeOptions& options) {
  if (v0.values.size() != crn.species_count())
    throw Error(ErrorKind::Argument, "initial condition does not cover every species");
  const auto reduced = forward_reduce(crn, partition);
  const auto w0 = reduce_initial_condition(reduced, v0);

  const auto original = integrate(vector_field(crn), to_doubles(v0), t_end, options);
  const auto lumped = integrate(vector_field(reduced.crn), to_doubles(w0), t_end, options);

  ForwardReport report;
  report.reduced_species = reduced.crn.species_count();
  report.reduced_reactions = reduced.crn.reaction_count();
  for (std::size_t k = 0; k < original.times.size(); ++k) {
    for (std::size_t b = 0; b < partition.size(); ++b) {
      double sum = 0.0;
      for (SpeciesId s : partition.block(b)) sum += original.states[k][s];
      report.max_error = std::max(report.max_error, comparison_error(sum, lumped.states[k][b]));
    }
  }
  report.passed = report.max_error <= tol;
  return report;
}

BackwardReport verify_backward(const Crn& crn, const Partition& partition,
                               const InitialCondition& v0, double t_end, double tol,
                               const OdeOptions& options) {
  if (v0.values.size() != crn.species_count())
    throw Error(ErrorKind::Argument, "initial condition does not cover every species");
  for (const auto& block : partition.blocks())
    for (SpeciesId s : block)
      if (v0.values[s] != v0.values[block.front()])
        throw Error(ErrorKind::Precondition,
                    "initial condition violates block equality: " + crn.name(block.front()) +
                        " and " + crn.name(s) + " differ");

  const auto reduced = backward_reduce(crn, partition);
  const auto w0 = reduce_initial_condition(reduced, v0);
  const auto original = integrate(vector_field(crn), to_doubles(v0), t_end, options);
  const auto lumped = integrate(vector_field(reduced.crn), to_doubles(w0), t_end, options);

  BackwardReport report;
  report.reduced_species = reduced.crn.species_count();
  report.reduced_reactions = reduced.crn.reaction_count();
  for (std::size_t k = 0; k < original.times.size(); ++k) {
    for (std::size_t b = 0; b < partition.size(); ++b) {
      const auto block = partition.block(b);
      const double rep = original.states[k][block.front()];
      for (SpeciesId s : block) {
        report.max_spread = std::max(report.max_spread, comparison_error(rep, original.states[k][s]));
        report.max_deviation =
            std::max(report.max_deviation, comparison_error(lumped.states[k][b], original.states[k][s]));
      }
    }
  }
  report.passed = report.max_spread <= tol && report.max_deviation <= tol;
  return report;
}

}  // namespace crnb
