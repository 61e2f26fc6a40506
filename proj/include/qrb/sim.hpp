#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qrb/bounds.hpp"
#include "qrb/config.hpp"
#include "qrb/mixers.hpp"
#include "qrb/problems.hpp"

namespace qrb {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// States

struct StateVector {
  FeasibleSet feasible;
  std::vector<Complex> amplitudes;

  std::uint64_t dim() const { return amplitudes.size(); }

  double norm_sq() const {
    double total = 0.0;
    for (const auto& a : amplitudes) total += std::norm(a);
    return total;
  }
};

namespace detail {

inline void check_norm(const StateVector& s) {
  if (std::abs(s.norm_sq() - 1.0) > kAbsTol)
    throw std::runtime_error("state norm drifted");
}

}  // namespace detail

inline StateVector init_uniform(const FeasibleSet& feasible,
                                const Limits& limits = default_limits()) {
  const std::uint64_t count = feasible.size();
  if (count == 0) throw std::invalid_argument("empty feasible set");
  if (count > limits.max_feasible ||
      (feasible.kind == FeasibleKind::FullSpace &&
       feasible.n > limits.simulator_qubits))
    throw LimitError("statevector size limit exceeded");
  StateVector s;
  s.feasible = feasible;
  s.amplitudes.assign(count,
                      Complex{1.0 / std::sqrt(static_cast<double>(count)), 0.0});
  return s;
}

inline Complex uniform_overlap(const StateVector& s) {
  Complex total{0.0, 0.0};
  for (const auto& a : s.amplitudes) total += a;
  return total / std::sqrt(static_cast<double>(s.dim()));
}

// ---------------------------------------------------------------------------
// Gates. Angles are taken raw here; schedules reduce them mod 2*pi on
// ingest, which is harmless because integer costs and both mixers make the
// unitaries 2*pi periodic.

// exp(-i gamma H_1) with H_1 = C_max - H_C: each amplitude picks up
// exp(-i gamma (C_max - C(z))).
inline void apply_phase_separator(StateVector& s, const CostSpectrum& spectrum,
                                  double gamma) {
  if (!(s.feasible == spectrum.feasible))
    throw std::invalid_argument("state and spectrum feasible sets differ");
  const double c_max = static_cast<double>(spectrum.stats.c_max);
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    const double phase = -gamma * (c_max - static_cast<double>(spectrum.values[i]));
    s.amplitudes[i] *= Complex{std::cos(phase), std::sin(phase)};
  }
  detail::check_norm(s);
}

// exp(-i beta (I - |psi_0><psi_0|)) = e^{-i beta} I + (1 - e^{-i beta}) P_0:
// one inner product and one rank-1 update.
inline void apply_grover_mixer(StateVector& s, double beta) {
  const Complex phase{std::cos(beta), -std::sin(beta)};
  const Complex overlap = uniform_overlap(s);
  const Complex feed =
      (Complex{1.0, 0.0} - phase) * overlap /
      std::sqrt(static_cast<double>(s.dim()));
  for (auto& a : s.amplitudes) a = phase * a + feed;
  detail::check_norm(s);
}

// exp(-i beta (1 - X_j)/2) per qubit: a global e^{-i beta/2} times a
// rotation cos(beta/2) I + i sin(beta/2) X_j.
inline void apply_tf_mixer(StateVector& s, double beta) {
  if (s.feasible.kind != FeasibleKind::FullSpace)
    throw std::invalid_argument(
        "the transverse-field mixer does not preserve constrained sets");
  const int n = s.feasible.n;
  const double half = beta / 2.0;
  const Complex global{std::cos(half), -std::sin(half)};
  const double c = std::cos(half);
  const Complex is{0.0, std::sin(half)};
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
      if (i & bit) continue;
      const Complex lo = s.amplitudes[i];
      const Complex hi = s.amplitudes[i | bit];
      s.amplitudes[i] = global * (c * lo + is * hi);
      s.amplitudes[i | bit] = global * (c * hi + is * lo);
    }
  }
  detail::check_norm(s);
}

// ---------------------------------------------------------------------------
// Schedules

struct AngleSchedule {
  std::vector<double> gammas;
  std::vector<double> betas;

  static double reduce(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
  }

  static AngleSchedule make(std::vector<double> gammas,
                            std::vector<double> betas) {
    if (gammas.size() != betas.size())
      throw std::invalid_argument("gamma and beta counts differ");
    for (auto& g : gammas) g = reduce(g);
    for (auto& b : betas) b = reduce(b);
    AngleSchedule s;
    s.gammas = std::move(gammas);
    s.betas = std::move(betas);
    return s;
  }

  int rounds() const { return static_cast<int>(gammas.size()); }

  double angle_sum() const {
    double total = 0.0;
    for (double g : gammas) total += std::abs(g);
    for (double b : betas) total += std::abs(b);
    return total;
  }
};

// All angles pi: the fixed schedule under which the protocol is Grover's
// algorithm up to a global phase per round.
inline AngleSchedule grover_fixed_schedule(int p) {
  if (p < 1) throw std::invalid_argument("p must be at least 1");
  return AngleSchedule::make(std::vector<double>(p, std::numbers::pi),
                             std::vector<double>(p, std::numbers::pi));
}

// ---------------------------------------------------------------------------
// Runs

struct SimResult {
  double lambda = 0.0;
  double h0_expectation = 0.0;
  double overlap_sq = 0.0;
  std::vector<double> x_expectations;  // full-space runs only
  std::optional<double> success_probability;
  int p = 0;
};

inline double x_expectation(const StateVector& s, int qubit) {
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  double total = 0.0;
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    if (i & bit) continue;
    total += 2.0 * (std::conj(s.amplitudes[i]) * s.amplitudes[i | bit]).real();
  }
  return total;
}

inline SimResult extract_observables(const StateVector& s,
                                     const CostSpectrum& spectrum,
                                     const MixerSpec& mixer, int p) {
  SimResult result;
  result.p = p;

  double energy = 0.0, success = 0.0;
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    const double w = std::norm(s.amplitudes[i]);
    energy += w * static_cast<double>(spectrum.values[i]);
    if (spectrum.values[i] == spectrum.stats.c_max) success += w;
  }
  const double c_max = static_cast<double>(spectrum.stats.c_max);
  result.lambda = c_max == 0.0 ? 1.0 : energy / c_max;
  result.success_probability = success;
  result.overlap_sq = std::norm(uniform_overlap(s));

  if (s.feasible.kind == FeasibleKind::FullSpace) {
    result.x_expectations.reserve(s.feasible.n);
    for (int q = 0; q < s.feasible.n; ++q)
      result.x_expectations.push_back(x_expectation(s, q));
  }

  if (std::holds_alternative<GroverMixer>(mixer)) {
    result.h0_expectation = 1.0 - result.overlap_sq;
  } else {
    const int n = std::get<TransverseFieldMixer>(mixer).n;
    double sum_x = 0.0;
    for (double x : result.x_expectations) sum_x += x;
    result.h0_expectation = n / 2.0 - sum_x / 2.0;
  }
  return result;
}

inline void check_run_compatibility(const CostSpectrum& spectrum,
                                    const MixerSpec& mixer) {
  if (const auto* grover = std::get_if<GroverMixer>(&mixer)) {
    if (!(grover->feasible == spectrum.feasible))
      throw std::invalid_argument("mixer and spectrum feasible sets differ");
  } else {
    const auto& tf = std::get<TransverseFieldMixer>(mixer);
    if (spectrum.feasible.kind != FeasibleKind::FullSpace)
      throw std::invalid_argument(
          "the transverse-field mixer does not preserve constrained sets");
    if (tf.n != spectrum.feasible.n)
      throw std::invalid_argument("qubit count mismatch");
  }
}

// Alternates the phase separator and the mixer for p rounds from the
// uniform state, returning the final state alongside its observables.
inline std::pair<StateVector, SimResult> run_qaoa_state(
    const CostSpectrum& spectrum, const MixerSpec& mixer,
    const AngleSchedule& schedule,
    const Limits& limits = default_limits()) {
  check_run_compatibility(spectrum, mixer);
  StateVector s = init_uniform(spectrum.feasible, limits);
  const bool grover = std::holds_alternative<GroverMixer>(mixer);
  for (int round = 0; round < schedule.rounds(); ++round) {
    apply_phase_separator(s, spectrum, schedule.gammas[round]);
    if (grover)
      apply_grover_mixer(s, schedule.betas[round]);
    else
      apply_tf_mixer(s, schedule.betas[round]);
  }
  SimResult result =
      extract_observables(s, spectrum, mixer, schedule.rounds());
  return {std::move(s), std::move(result)};
}

inline SimResult run_qaoa(const CostSpectrum& spectrum, const MixerSpec& mixer,
                          const AngleSchedule& schedule,
                          const Limits& limits = default_limits()) {
  return run_qaoa_state(spectrum, mixer, schedule, limits).second;
}

// Bound ingredients measured on a finished run. Rounding residue is clipped
// back into the valid ranges.
inline BoundInputs inputs_from_run(const CostStats& stats,
                                   const SimResult& run, BoundMode mode) {
  BoundInputs b;
  b.mode = mode;
  b.lambda = std::clamp(run.lambda, 0.0, 1.0);
  b.c_max = static_cast<double>(stats.c_max);
  b.c_avg = stats.c_avg_d();
  b.sigma_c = stats.sigma();
  if (mode == BoundMode::APosteriori) {
    b.h0_expectation = std::max(0.0, run.h0_expectation);
    b.overlap_sq = std::clamp(run.overlap_sq, 0.0, 1.0);
    double sum_x = 0.0;
    for (double x : run.x_expectations) sum_x += x;
    if (!run.x_expectations.empty()) b.sum_x_expectations = sum_x;
  }
  b.n = static_cast<int>(run.x_expectations.size());
  return b;
}

// ---------------------------------------------------------------------------
// Angle optimization: best-effort search over [0, 2*pi)^{2p}. The returned
// ratio is a lower bound on the true optimum for that p.

struct OptimizeStrategy {
  enum class Kind { Grid, MultistartCoordinateDescent };
  Kind kind = Kind::MultistartCoordinateDescent;
  int grid_points = 32;  // per axis (Grid) or per line search (descent)
  int restarts = 8;
  int max_sweeps = 24;
  std::vector<AngleSchedule> warm_starts;
};

namespace detail {

inline double objective(const CostSpectrum& spectrum, const MixerSpec& mixer,
                        const std::vector<double>& angles, int p,
                        const Limits& limits) {
  AngleSchedule schedule;
  schedule.gammas.assign(angles.begin(), angles.begin() + p);
  schedule.betas.assign(angles.begin() + p, angles.end());
  return run_qaoa(spectrum, mixer, schedule, limits).lambda;
}

}  // namespace detail

inline std::pair<AngleSchedule, SimResult> optimize_angles(
    const CostSpectrum& spectrum, const MixerSpec& mixer, int p,
    const OptimizeStrategy& strategy, std::uint64_t seed,
    const Limits& limits = default_limits()) {
  check_run_compatibility(spectrum, mixer);
  if (p < 0 || p > limits.optimizer_rounds)
    throw LimitError("optimizer round limit exceeded");
  if (spectrum.feasible.kind == FeasibleKind::FullSpace &&
      spectrum.feasible.n > limits.optimizer_qubits)
    throw LimitError("optimizer qubit limit exceeded");

  if (p == 0) {
    AngleSchedule empty;
    return {empty, run_qaoa(spectrum, mixer, empty, limits)};
  }

  std::vector<double> best(2 * p, 0.0);
  double best_value = detail::objective(spectrum, mixer, best, p, limits);

  const auto consider = [&](const std::vector<double>& angles) {
    const double value = detail::objective(spectrum, mixer, angles, p, limits);
    if (value > best_value + 1e-15) {
      best_value = value;
      best = angles;
    }
  };

  for (const auto& warm : strategy.warm_starts) {
    if (warm.rounds() > p) continue;
    std::vector<double> angles(2 * p, 0.0);
    for (int i = 0; i < warm.rounds(); ++i) {
      angles[i] = warm.gammas[i];
      angles[p + i] = warm.betas[i];
    }
    consider(angles);
  }

  if (strategy.kind == OptimizeStrategy::Kind::Grid) {
    const int axes = 2 * p;
    double total = 1.0;
    for (int a = 0; a < axes; ++a) total *= strategy.grid_points;
    if (total > 2e6)
      throw LimitError("grid strategy is limited to small p");
    std::vector<int> index(axes, 0);
    std::vector<double> angles(axes, 0.0);
    const double step = kTwoPi / strategy.grid_points;
    while (true) {
      for (int a = 0; a < axes; ++a) angles[a] = index[a] * step;
      consider(angles);
      int axis = 0;
      while (axis < axes && ++index[axis] == strategy.grid_points) {
        index[axis] = 0;
        ++axis;
      }
      if (axis == axes) break;
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    const double step = kTwoPi / strategy.grid_points;
    for (int restart = 0; restart < strategy.restarts; ++restart) {
      std::vector<double> angles(2 * p);
      if (restart == 0) {
        angles = best;
      } else {
        for (auto& a : angles) a = u(rng);
      }
      double value = detail::objective(spectrum, mixer, angles, p, limits);
      for (int sweep = 0; sweep < strategy.max_sweeps; ++sweep) {
        bool improved = false;
        for (int axis = 0; axis < 2 * p; ++axis) {
          const double original = angles[axis];
          double axis_best = value;
          double axis_angle = original;
          for (int g = 0; g < strategy.grid_points; ++g) {
            angles[axis] = g * step;
            const double trial =
                detail::objective(spectrum, mixer, angles, p, limits);
            if (trial > axis_best + 1e-15) {
              axis_best = trial;
              axis_angle = angles[axis];
            }
          }
          // Refine around the winning grid point.
          double lo = axis_angle - step, hi = axis_angle + step;
          for (int halving = 0; halving < 20; ++halving) {
            const double mid_lo = lo + (hi - lo) / 3.0;
            const double mid_hi = hi - (hi - lo) / 3.0;
            angles[axis] = AngleSchedule::reduce(mid_lo);
            const double value_lo =
                detail::objective(spectrum, mixer, angles, p, limits);
            angles[axis] = AngleSchedule::reduce(mid_hi);
            const double value_hi =
                detail::objective(spectrum, mixer, angles, p, limits);
            if (value_lo > value_hi)
              hi = mid_hi;
            else
              lo = mid_lo;
            if (std::max(value_lo, value_hi) > axis_best) {
              axis_best = std::max(value_lo, value_hi);
              axis_angle =
                  AngleSchedule::reduce(value_lo > value_hi ? mid_lo : mid_hi);
            }
          }
          angles[axis] = axis_angle;
          if (axis_best > value + 1e-13) {
            value = axis_best;
            improved = true;
          }
        }
        if (!improved) break;
      }
      consider(angles);
    }
  }

  AngleSchedule schedule = AngleSchedule::make(
      std::vector<double>(best.begin(), best.begin() + p),
      std::vector<double>(best.begin() + p, best.end()));
  return {schedule, run_qaoa(spectrum, mixer, schedule, limits)};
}

// ---------------------------------------------------------------------------
// The per-qubit <X_j> cap behind the transverse-field search bounds:
// any state with success probability lambda > 1/2 on a distance-3 marked
// set satisfies <X_j> <= 2 sqrt(lambda (1 - lambda)) for every j.

struct XjCheckReport {
  double lambda = 0.0;
  double threshold = 0.0;
  std::vector<double> x_expectations;
  std::vector<double> margins;  // threshold - <X_j>
  bool ok = false;
};

inline XjCheckReport xj_bound_check(const StateVector& s,
                                    const SearchSet& marked) {
  validate_search_set(marked);
  if (marked.tag != SearchTag::Dist3)
    throw std::invalid_argument("check applies to distance-3 sets");
  if (s.feasible.kind != FeasibleKind::FullSpace || s.feasible.n != marked.n)
    throw std::invalid_argument("state must live on the full n-bit space");

  XjCheckReport report;
  for (std::uint64_t z : marked.marked)
    report.lambda += std::norm(s.amplitudes[z]);
  if (report.lambda <= 0.5)
    throw std::domain_error("check applies when lambda exceeds 1/2");
  report.threshold = 2.0 * std::sqrt(report.lambda * (1.0 - report.lambda));
  report.ok = true;
  for (int q = 0; q < s.feasible.n; ++q) {
    const double x = x_expectation(s, q);
    report.x_expectations.push_back(x);
    report.margins.push_back(report.threshold - x);
    if (x > report.threshold + kAbsTol) report.ok = false;
  }
  return report;
}

}  // namespace qrb
