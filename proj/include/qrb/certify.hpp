#pragma once

// End-to-end certification: every closed form in the library is replayed
// against an independent numeric route on a seeded corpus, and every
// a-posteriori bound is checked against exact simulations. One CheckResult
// per suite; a failure carries a minimal reproducer record.

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qrb/bounds.hpp"
#include "qrb/dense.hpp"
#include "qrb/mixers.hpp"
#include "qrb/problems.hpp"
#include "qrb/sim.hpp"

namespace qrb {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct CertifyConfig {
  std::uint64_t seed = 20240915;
  int grover_norm_instances = 50;
  int maxcut_stat_graphs = 30;
  int coefficient_instances = 50;
  int soundness_runs = 100;
  int triviality_instances = 10;
  int rescaling_pairs = 20;
  // Fault-injection fixture: scales the first closed-form sigma so the
  // harness can prove it catches a corrupted value.
  double sigma_corruption = 0.0;
};

namespace corpus {

inline CostSpectrum random_integer_spectrum(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> value(0, 15);
  std::vector<std::int64_t> values(std::uint64_t{1} << n);
  for (auto& v : values) v = value(rng);
  return make_cost_spectrum(FeasibleSet::full(n), std::move(values));
}

inline Graph random_graph(int n, std::mt19937_64& rng, double edge_prob = 0.4) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Graph g;
  g.n_vertices = n;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (u(rng) < edge_prob) g.edges.push_back({a, b, 1});
  return g;
}

// 3-regular graph by the pairing model, resampled until simple.
inline Graph random_cubic_graph(int n, std::mt19937_64& rng) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("cubic graphs need even n >= 4");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(3 * static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      for (int copy = 0; copy < 3; ++copy) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    Graph g;
    g.n_vertices = n;
    std::set<std::pair<int, int>> seen;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      const int u = stubs[i], v = stubs[i + 1];
      if (u == v || !seen.insert(std::minmax(u, v)).second) {
        ok = false;
        break;
      }
      g.edges.push_back({u, v, 1});
    }
    if (ok) return g;
  }
  throw std::runtime_error("failed to sample a cubic graph");
}

inline KLocalCost random_integer_klocal(int n, int k, int n_terms,
                                        std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> mask(
      1, (std::uint64_t{1} << n) - 1);
  std::uniform_int_distribution<int> weight(1, 4);
  std::uniform_int_distribution<int> sign(0, 1);
  KLocalCost h;
  h.n = n;
  for (int t = 0; t < n_terms; ++t) {
    std::uint64_t support = mask(rng);
    while (std::popcount(support) > k) support = mask(rng);
    const double w = weight(rng);
    const double s = sign(rng) ? 1.0 : -1.0;
    h.constant += w / 2.0;
    h.terms.push_back({s * w / 2.0, support});
  }
  return h;
}

inline AngleSchedule random_schedule(int p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  std::vector<double> gammas(p), betas(p);
  for (auto& g : gammas) g = u(rng);
  for (auto& b : betas) b = u(rng);
  return AngleSchedule::make(std::move(gammas), std::move(betas));
}

}  // namespace corpus

namespace detail {

inline void fail(CheckResult& check, const std::string& record) {
  check.pass = false;
  if (!check.detail.empty()) check.detail += "; ";
  check.detail += record;
}

inline std::string fmt(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

}  // namespace detail

// Closed-form Grover commutator norm against the dense eigensolve.
inline CheckResult check_grover_norm_closed_form(const CertifyConfig& config) {
  CheckResult check{"grover-commutator-closed-form", true, ""};
  std::mt19937_64 rng(config.seed);
  double worst = 0.0;
  for (int i = 0; i < config.grover_norm_instances; ++i) {
    const int n = 2 + static_cast<int>(rng() % 7);  // up to 8 qubits
    const auto spectrum = corpus::random_integer_spectrum(n, rng);
    double closed = grover_commutator_norm(spectrum);
    if (i == 0) closed *= 1.0 + config.sigma_corruption;
    const double dense = spectral_norm(grover_commutator_dense(spectrum));
    worst = std::max(worst, std::abs(closed - dense));
    if (std::abs(closed - dense) > 1e-9) {
      std::ostringstream record;
      record << "instance " << i << " (n=" << n << "): closed "
             << detail::fmt(closed) << " vs dense " << detail::fmt(dense)
             << ", values[0..7]=";
      for (int v = 0; v < 8 && v < static_cast<int>(spectrum.values.size());
           ++v)
        record << spectrum.values[v] << (v == 7 ? "" : ",");
      detail::fail(check, record.str());
    }
  }
  if (check.pass)
    check.detail = std::to_string(config.grover_norm_instances) +
                   " spectra, max |closed - dense| = " + detail::fmt(worst);
  return check;
}

// Enumerated Max-Cut statistics are |E|/2 and |E|/4 as exact rationals.
inline CheckResult check_maxcut_stats_exact(const CertifyConfig& config) {
  CheckResult check{"maxcut-statistics-exact", true, ""};
  std::mt19937_64 rng(config.seed + 1);
  for (int i = 0; i < config.maxcut_stat_graphs; ++i) {
    const int n = 3 + static_cast<int>(rng() % 10);  // up to 12 vertices
    const auto g = corpus::random_graph(n, rng);
    const auto problem = maxcut_cost(g);
    const std::int64_t e = static_cast<std::int64_t>(g.edges.size());
    if (problem.spectrum->stats.c_avg != Rational(e, 2) ||
        problem.spectrum->stats.variance != Rational(e, 4)) {
      detail::fail(check, "graph " + std::to_string(i) + " (n=" +
                              std::to_string(n) + ", |E|=" +
                              std::to_string(e) + ") broke the closed form");
    }
  }
  if (check.pass)
    check.detail = std::to_string(config.maxcut_stat_graphs) +
                   " graphs, averages and variances exact";
  return check;
}

// Coefficient sigma against brute force on unconstrained k-local costs.
inline CheckResult check_coefficient_stats(const CertifyConfig& config) {
  CheckResult check{"coefficient-statistics", true, ""};
  std::mt19937_64 rng(config.seed + 2);
  double worst = 0.0;
  for (int i = 0; i < config.coefficient_instances; ++i) {
    const int n = 3 + static_cast<int>(rng() % 8);  // up to 10
    const int k = 2 + static_cast<int>(rng() % 3);  // up to 4
    const auto h = corpus::random_integer_klocal(
        n, std::min(k, n), 3 + static_cast<int>(rng() % 8), rng);
    const auto spectrum = enumerate_spectrum(h);
    const auto coeff = cost_stats_from_coefficients(h);
    const double gap = std::abs(coeff.sigma - spectrum.stats.sigma());
    worst = std::max(worst, gap);
    if (gap > 1e-9 || coeff.c_avg != to_double(spectrum.stats.c_avg)) {
      detail::fail(check, "instance " + std::to_string(i) + " (n=" +
                              std::to_string(n) + ", k=" + std::to_string(k) +
                              "): sigma gap " + detail::fmt(gap));
    }
  }
  if (check.pass)
    check.detail = std::to_string(config.coefficient_instances) +
                   " instances, max sigma gap = " + detail::fmt(worst);
  return check;
}

// Star and layer radii, and the halved commutator norms, against dense
// eigensolves.
inline CheckResult check_hypercube_spectra(const CertifyConfig& config) {
  CheckResult check{"hypercube-spectra", true, ""};
  for (int n = 1; n <= 10; ++n) {
    const double star = spectral_radius(star_adjacency(n));
    if (std::abs(star - std::sqrt(static_cast<double>(n))) > 1e-8)
      detail::fail(check, "star K(1," + std::to_string(n) + ")");
    for (int k = 1; k < n; ++k) {
      const double layer = spectral_radius(hypercube_layer_adjacency(n, k));
      if (std::abs(layer - std::sqrt(2.0 * k * (n - k) + n)) > 1e-8)
        detail::fail(check, "layer n=" + std::to_string(n) +
                                " k=" + std::to_string(k));
    }
  }
  std::mt19937_64 rng(config.seed + 3);
  for (int n = 4; n <= 8; ++n) {
    for (std::uint64_t m_target : {1, 2, 3, 4}) {
      const auto set = gen_dist3_set(n, m_target, rng());
      const double dense =
          spectral_norm(tf_commutator_dense(search_cost(set)));
      if (std::abs(dense - tf_search_dist3_norm(n)) > 1e-8)
        detail::fail(check, "dist3 n=" + std::to_string(n) +
                                " m=" + std::to_string(set.m()));
    }
    for (int k = 1; k < n; ++k) {
      const auto layer_set = gen_hamming_k_set(n, k);
      const double dense =
          spectral_norm(tf_commutator_dense(search_cost(layer_set)));
      if (std::abs(dense - tf_hamming_k_norm(n, k)) > 1e-8)
        detail::fail(check, "hamming n=" + std::to_string(n) +
                                " k=" + std::to_string(k));
    }
  }
  if (check.pass)
    check.detail =
        "radii to n=10 and commutator norms to n=8 match dense eigensolves";
  return check;
}

// Fixed-angle Grover against the closed-form rotation, plus the two search
// bounds at the achieved success probability.
inline CheckResult check_grover_certification(const CertifyConfig&) {
  CheckResult check{"grover-fixed-schedule", true, ""};
  const auto set = make_search_set(10, {517});
  const auto spectrum = search_cost(set);
  const MixerSpec mixer = GroverMixer{spectrum.feasible};
  const auto result = run_qaoa(spectrum, mixer, grover_fixed_schedule(25));
  const double success = result.success_probability.value();
  const double target =
      std::pow(std::sin(51.0 * std::asin(1.0 / 32.0)), 2.0);
  if (success < 0.999)
    detail::fail(check, "success " + detail::fmt(success) + " below 0.999");
  if (std::abs(success - target) > 1e-6)
    detail::fail(check, "success " + detail::fmt(success) +
                            " vs closed form " + detail::fmt(target));

  const double lambda = std::clamp(success, 0.0, 1.0);
  const double corollary = grover_search_bound(lambda, 1024, 1).p_lower;
  const double overlap_form = search_overlap_bound(lambda, 1024, 1).p_lower;
  const double overlap_at_one = search_overlap_bound(1.0, 1024, 1).p_lower;
  if (std::abs(corollary - 5.084) > 0.005)
    detail::fail(check, "search bound " + detail::fmt(corollary) +
                            " drifted from 5.084");
  if (std::abs(overlap_form - 5.080) > 0.005)
    detail::fail(check, "overlap bound " + detail::fmt(overlap_form) +
                            " drifted from 5.080");
  if (std::abs(overlap_at_one - 5.09049) > 1e-3)
    detail::fail(check, "overlap bound at lambda=1 " +
                            detail::fmt(overlap_at_one) +
                            " drifted from 5.0905");
  for (double bound : {corollary, overlap_form, overlap_at_one})
    if (bound > 25.0)
      detail::fail(check, "bound " + detail::fmt(bound) + " exceeds p=25");
  if (check.pass)
    check.detail = "success " + detail::fmt(success) + ", bounds " +
                   detail::fmt(corollary) + " / " + detail::fmt(overlap_form) +
                   " / " + detail::fmt(overlap_at_one) + " <= 25";
  return check;
}

// ---------------------------------------------------------------------------
// Soundness sweep: every applicable a-posteriori bound stays at or below
// the simulated round count.

namespace detail {

struct SweepInstance {
  std::string label;
  CostSpectrum spectrum;
  std::optional<KLocalCost> cost;    // Max-Cut instances
  std::optional<SearchSet> search;   // search instances
};

inline void check_bound(CheckResult& check, const std::string& label,
                        const char* formula, double bound, int p) {
  if (bound > p + 1e-9) {
    fail(check, label + " " + formula + " = " + fmt(bound) + " > p=" +
                    std::to_string(p));
  }
}

}  // namespace detail

inline CheckResult check_bound_soundness(const CertifyConfig& config) {
  CheckResult check{"bound-soundness-sweep", true, ""};
  std::mt19937_64 rng(config.seed + 4);

  std::vector<detail::SweepInstance> instances;
  const int instance_count = std::max(1, config.soundness_runs / 4);
  for (int i = 0; i < instance_count; ++i) {
    if (i % 2 == 0) {
      const int n = 4 + static_cast<int>(rng() % 7);  // up to 10
      auto g = corpus::random_graph(n, rng);
      if (g.edges.empty()) g.edges.push_back({0, 1, 1});
      auto problem = maxcut_cost(g);
      instances.push_back({"maxcut-n" + std::to_string(n) + "-i" +
                               std::to_string(i),
                           std::move(*problem.spectrum),
                           std::move(problem.cost), std::nullopt});
    } else {
      const int variant = i % 3;
      if (variant == 1) {
        const int n = 4 + static_cast<int>(rng() % 9);  // up to 12
        auto set = gen_dist3_set(n, 1 + rng() % 4, rng());
        auto spectrum = search_cost(set);
        instances.push_back({"search-dist3-n" + std::to_string(n) + "-i" +
                                 std::to_string(i),
                             std::move(spectrum), std::nullopt,
                             std::move(set)});
      } else {
        const int n = 4 + static_cast<int>(rng() % 5);  // up to 8
        const int k = 1 + static_cast<int>(rng() % (n - 1));
        auto set = gen_hamming_k_set(n, k);
        auto spectrum = search_cost(set);
        instances.push_back({"search-hamming-n" + std::to_string(n) + "-k" +
                                 std::to_string(k) + "-i" + std::to_string(i),
                             std::move(spectrum), std::nullopt,
                             std::move(set)});
      }
    }
  }

  int runs = 0;
  for (const auto& instance : instances) {
    const auto& stats = instance.spectrum.stats;
    const int n = instance.spectrum.feasible.n;

    // Commutator norms per mixer, computed once per instance.
    const double grover_norm = grover_commutator_norm(instance.spectrum);
    double tf_norm = 0.0;
    if (instance.search && instance.search->tag == SearchTag::Dist3) {
      tf_norm = tf_search_dist3_norm(n);
    } else if (instance.search &&
               instance.search->tag == SearchTag::HammingK &&
               instance.search->hamming_k > 0 &&
               instance.search->hamming_k < n) {
      tf_norm = tf_hamming_k_norm(n, instance.search->hamming_k);
    } else if (instance.cost) {
      tf_norm = spectral_norm(tf_commutator(*instance.cost));
    } else {
      tf_norm = spectral_norm(tf_commutator_dense(instance.spectrum));
    }

    double sum_alpha_sq = 0.0;
    if (instance.cost)
      for (const auto& t : instance.cost->terms)
        sum_alpha_sq += t.alpha * t.alpha;

    for (int grover = 0; grover < 2 && runs < config.soundness_runs;
         ++grover) {
      const MixerSpec mixer =
          grover ? MixerSpec{GroverMixer{instance.spectrum.feasible}}
                 : MixerSpec{TransverseFieldMixer{n}};
      for (int repeat = 0; repeat < 2 && runs < config.soundness_runs;
           ++repeat) {
        const int p = 1 + static_cast<int>(rng() % 5);
        const auto schedule = corpus::random_schedule(p, rng);
        const auto result = run_qaoa(instance.spectrum, mixer, schedule);
        ++runs;

        auto inputs =
            inputs_from_run(stats, result, BoundMode::APosteriori);
        inputs.comm_norm = grover ? grover_norm : tf_norm;
        inputs.n = n;

        detail::check_bound(check, instance.label, "qaoa-objective",
                            qaoa_round_bound(inputs).p_lower, p);
        detail::check_bound(
            check, instance.label, "overlap-change",
            overlap_bound(*inputs.overlap_sq, 1.0, stats.sigma()).p_lower, p);
        if (grover) {
          auto grover_inputs = inputs;
          grover_inputs.sigma_c = stats.sigma();
          detail::check_bound(check, instance.label, "grover-objective",
                              grover_objective_bound(grover_inputs).p_lower,
                              p);
          if (instance.cost && sum_alpha_sq > 0.0) {
            grover_inputs.sum_alpha_sq = sum_alpha_sq;
            detail::check_bound(check, instance.label, "grover-klocal",
                                grover_klocal_bound(grover_inputs).p_lower,
                                p);
          }
        } else {
          detail::check_bound(check, instance.label, "tf-objective",
                              tf_objective_bound(inputs).p_lower, p);
        }

        if (instance.search) {
          const std::uint64_t big_n = std::uint64_t{1} << n;
          const std::uint64_t m = instance.search->m();
          const double lambda = inputs.lambda;
          detail::check_bound(check, instance.label, "search-overlap",
                              search_overlap_bound(lambda, big_n, m).p_lower,
                              p);
          if (grover) {
            detail::check_bound(check, instance.label, "grover-search",
                                grover_search_bound(lambda, big_n, m).p_lower,
                                p);
          } else if (lambda > 0.5) {
            if (instance.search->tag == SearchTag::Dist3) {
              detail::check_bound(
                  check, instance.label, "tf-search-dist3",
                  tf_search_dist3_bound(lambda, n, m).p_lower, p);
            } else if (instance.search->tag == SearchTag::HammingK &&
                       instance.search->hamming_k > 0 &&
                       instance.search->hamming_k < n) {
              detail::check_bound(
                  check, instance.label, "tf-search-hamming",
                  tf_search_hamming_bound(lambda, n,
                                          instance.search->hamming_k, m)
                      .p_lower,
                  p);
            }
          }
        }
      }
    }
  }
  if (check.pass)
    check.detail = std::to_string(runs) + " runs, zero violations";
  return check;
}

// Trivial a-priori transverse-field bounds on cubic Max-Cut, plus the
// witness chain with equality at k=2.
inline CheckResult check_triviality_and_witness(const CertifyConfig& config) {
  CheckResult check{"tf-triviality-witness", true, ""};
  std::mt19937_64 rng(config.seed + 5);
  const int sizes[] = {6, 6, 8, 8, 8, 10, 10, 10, 12, 12};
  for (int i = 0; i < config.triviality_instances; ++i) {
    const int n = sizes[i % 10];
    const auto g = corpus::random_cubic_graph(n, rng);
    const auto problem = maxcut_cost(g);
    const auto comm = tf_commutator(problem.cost);
    const double numeric_norm = spectral_norm(comm);

    BoundInputs inputs;
    inputs.lambda = 1.0;
    inputs.c_max = static_cast<double>(problem.spectrum->stats.c_max);
    inputs.c_avg = problem.spectrum->stats.c_avg_d();
    inputs.comm_norm = numeric_norm;
    inputs.n = n;
    const auto report = tf_objective_bound(inputs);
    if (!(report.p_lower < 1.0) || !report.trivial)
      detail::fail(check, "instance " + std::to_string(i) + " (n=" +
                              std::to_string(n) + "): bound " +
                              detail::fmt(report.p_lower) + " not trivial");

    const auto best = max_abs_eigenstring(problem.cost);
    const auto witness = s_star_witness(problem.cost, best.bitstring, 2);
    if (numeric_norm < witness.value - 1e-9)
      detail::fail(check, "instance " + std::to_string(i) +
                              ": norm below witness");
    if (std::abs(witness.value - best.norm) > 1e-9)
      detail::fail(check, "instance " + std::to_string(i) +
                              ": witness " + detail::fmt(witness.value) +
                              " != traceless norm " + detail::fmt(best.norm));
    // The iterative norm agrees with the dense route where both run.
    if (n <= default_limits().dense_qubits) {
      const double power = spectral_norm_power(comm);
      if (std::abs(power - numeric_norm) >
          1e-8 * std::max(1.0, numeric_norm))
        detail::fail(check, "instance " + std::to_string(i) +
                                ": power iteration drifted");
    }
  }
  if (check.pass)
    check.detail = std::to_string(config.triviality_instances) +
                   " cubic instances: bounds trivial, witness chain holds";
  return check;
}

// Rescaled costs with inverse angles give the same states; the endpoint
// evaluation of the rescaled bound matches a fine ratio scan.
inline CheckResult check_rescaling_invariance(const CertifyConfig& config) {
  CheckResult check{"rescaling-invariance", true, ""};
  std::mt19937_64 rng(config.seed + 6);
  for (int i = 0; i < config.rescaling_pairs; ++i) {
    const int n = 3 + static_cast<int>(rng() % 6);  // up to 8
    auto g = corpus::random_graph(n, rng);
    if (g.edges.empty()) g.edges.push_back({0, 1, 1});
    const auto problem = maxcut_cost(g);
    const auto& spectrum = *problem.spectrum;
    const int p = 1 + static_cast<int>(rng() % 3);
    const auto schedule = corpus::random_schedule(p, rng);
    const bool grover = (i % 2 == 0);
    const MixerSpec mixer =
        grover ? MixerSpec{GroverMixer{spectrum.feasible}}
               : MixerSpec{TransverseFieldMixer{n}};
    const auto [base_state, base] =
        run_qaoa_state(spectrum, mixer, schedule);
    for (std::int64_t alpha : {2, 3, 5}) {
      std::vector<std::int64_t> scaled_values = spectrum.values;
      for (auto& v : scaled_values) v *= alpha;
      const auto scaled =
          make_cost_spectrum(spectrum.feasible, scaled_values);
      std::vector<double> gammas = schedule.gammas;
      for (auto& gamma : gammas) gamma /= static_cast<double>(alpha);
      const auto [scaled_state, ignored] = run_qaoa_state(
          scaled, mixer, AngleSchedule::make(gammas, schedule.betas));
      Complex overlap{0.0, 0.0};
      for (std::uint64_t z = 0; z < base_state.dim(); ++z)
        overlap +=
            std::conj(base_state.amplitudes[z]) * scaled_state.amplitudes[z];
      if (std::abs(overlap) < 1.0 - 1e-10)
        detail::fail(check, "pair " + std::to_string(i) + " alpha=" +
                                std::to_string(alpha) + ": fidelity " +
                                detail::fmt(std::abs(overlap)));
    }

    // Endpoint maximum of the rescaled bound against a 10^4-point scan.
    const double h0 = base.h0_expectation;
    const double h1_delta = base.lambda * inputs_from_run(spectrum.stats,
                                                          base,
                                                          BoundMode::APriori)
                                              .c_max -
                            spectrum.stats.c_avg_d();
    const double comm = grover
                            ? grover_commutator_norm(spectrum)
                            : spectral_norm(tf_commutator(problem.cost));
    const auto report = rescaled_bound(h0, h1_delta, comm);
    double scanned = -1e300;
    const int points = 10000;
    for (int t = 0; t <= points; ++t) {
      const double w = static_cast<double>(t) / points;
      scanned = std::max(scanned,
                         (w * h0 + (1.0 - w) * h1_delta) / (kTwoPi * comm));
    }
    const double resolution =
        std::abs(h0 - h1_delta) / (kTwoPi * comm * points);
    if (std::abs(report.raw - scanned) > resolution + 1e-12)
      detail::fail(check, "pair " + std::to_string(i) +
                              ": endpoint value " + detail::fmt(report.raw) +
                              " vs scan " + detail::fmt(scanned));
  }
  if (check.pass)
    check.detail = std::to_string(config.rescaling_pairs) +
                   " pairs x {2,3,5}: fidelity >= 1 - 1e-10, endpoint "
                   "matches the scan";
  return check;
}

// Bipartite Max-Cut consequence: worst-cased bound is (2l-1) sqrt(|E|)/4pi.
inline CheckResult check_bipartite_consequence(const CertifyConfig&) {
  CheckResult check{"bipartite-maxcut-consequence", true, ""};
  const struct {
    std::uint64_t edges;
    double expected;
  } cases[] = {{100, 0.79577}, {10000, 7.9577}};
  for (const auto& c : cases) {
    const double e = static_cast<double>(c.edges);
    const auto report = maxcut_grover_bound(1.0, e, c.edges, 1.0);
    const double closed =
        (2.0 * 1.0 - 1.0) * std::sqrt(e) / (2.0 * kTwoPi);
    if (std::abs(report.p_lower - closed) > 1e-12 ||
        std::abs(report.p_lower - c.expected) > 1e-4)
      detail::fail(check, "|E|=" + std::to_string(c.edges) + ": " +
                              detail::fmt(report.p_lower));
  }
  if (check.pass) check.detail = "|E| in {100, 10000} reproduce the closed form";
  return check;
}

inline std::vector<CheckResult> run_certification(const CertifyConfig& config) {
  return {check_grover_norm_closed_form(config),
          check_maxcut_stats_exact(config),
          check_coefficient_stats(config),
          check_hypercube_spectra(config),
          check_grover_certification(config),
          check_bound_soundness(config),
          check_triviality_and_witness(config),
          check_rescaling_invariance(config),
          check_bipartite_consequence(config)};
}

inline std::string summarize(const std::vector<CheckResult>& checks) {
  std::ostringstream out;
  for (const auto& check : checks) {
    out << (check.pass ? "[PASS] " : "[FAIL] ") << check.name;
    if (!check.detail.empty()) out << ": " << check.detail;
    out << '\n';
  }
  return out.str();
}

}  // namespace qrb
