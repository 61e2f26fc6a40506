#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "qrb/problems.hpp"

namespace qrb {

// State-dependent ingredients are either measured on an actual final state
// (a-posteriori) or replaced by their worst case (a-priori): <H_0>_p -> 0,
// |<psi_0|psi_p>|^2 -> 1, sum <X_j> -> n. Worst-casing can only loosen a
// bound, never break it.
enum class BoundMode { APriori, APosteriori };

inline std::string to_string(BoundMode mode) {
  return mode == BoundMode::APriori ? "apriori" : "aposteriori";
}

struct BoundReport {
  std::string formula;
  double p_lower = 0.0;  // max(raw, 0)
  double raw = 0.0;
  std::map<std::string, double> numerator;
  double denominator = 0.0;
  BoundMode mode = BoundMode::APriori;
  std::map<std::string, std::string> provenance;
  bool trivial = false;  // a bound below one round
  std::string note;
};

struct BoundInputs {
  double lambda = 1.0;
  double c_max = 0.0;
  double c_avg = 0.0;
  double sigma_c = 0.0;
  double comm_norm = 0.0;
  BoundMode mode = BoundMode::APriori;
  // State-dependent terms, required in a-posteriori mode.
  std::optional<double> h0_expectation;
  std::optional<double> overlap_sq;
  std::optional<double> sum_x_expectations;
  // Structure fields.
  std::optional<double> sum_alpha_sq;
  std::uint64_t big_n = 0;
  std::uint64_t m = 0;
  int n = 0;
  int k = 0;
};

namespace detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kFourPi = 4.0 * std::numbers::pi;

inline void check_lambda(double lambda) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("lambda must sit in [0, 1]");
}

inline double require(const std::optional<double>& field, const char* name) {
  if (!field)
    throw std::invalid_argument(std::string("missing ingredient for "
                                            "a-posteriori mode: ") +
                                name);
  return *field;
}

inline BoundReport finish(BoundReport report) {
  report.p_lower = std::max(report.raw, 0.0);
  report.trivial = report.p_lower < 1.0;
  return report;
}

}  // namespace detail

// t_f >= (<H_0>_tf + <H_1>_0 - <H_1>_tf) / ||[H_1, H_0]||, clamped at zero.
inline double annealing_time_bound(double h0_tf, double h1_0, double h1_tf,
                                   double comm_norm) {
  if (comm_norm <= 0.0) throw std::invalid_argument("zero commutator norm");
  return std::max(0.0, (h0_tf + h1_0 - h1_tf) / comm_norm);
}

// p >= (<H_0>_p + lambda C_max - C_avg) / (4 pi ||[H_C, H_0]||).
inline BoundReport qaoa_round_bound(const BoundInputs& b) {
  detail::check_lambda(b.lambda);
  if (b.comm_norm <= 0.0) throw std::invalid_argument("zero commutator norm");
  BoundReport report;
  report.formula = "qaoa-objective";
  report.mode = b.mode;
  const double h0 = b.mode == BoundMode::APriori
                        ? 0.0
                        : detail::require(b.h0_expectation, "h0_expectation");
  report.provenance["h0_expectation"] =
      b.mode == BoundMode::APriori ? "worst-case(0)" : "measured";
  report.numerator = {{"h0_expectation", h0},
                      {"lambda_c_max", b.lambda * b.c_max},
                      {"c_avg", -b.c_avg}};
  report.denominator = detail::kFourPi * b.comm_norm;
  report.raw = (h0 + b.lambda * b.c_max - b.c_avg) / report.denominator;
  return detail::finish(std::move(report));
}

// max(h0_term, h1_delta) / (2 pi ||[H_1, H_0]||). The rescaled expression is
// a weighted mean of its two endpoint values, so the maximum over scale
// ratios sits at an endpoint.
inline BoundReport rescaled_bound(double h0_term, double h1_delta,
                                  double comm_norm) {
  if (comm_norm <= 0.0) throw std::invalid_argument("zero commutator norm");
  BoundReport report;
  report.formula = "rescaled-endpoint";
  report.mode = BoundMode::APosteriori;
  const bool mixer_side = h0_term >= h1_delta;
  report.note = mixer_side ? "mixer-endpoint" : "phase-endpoint";
  report.numerator = {{"h0_term", h0_term}, {"h1_delta", h1_delta}};
  report.denominator = detail::kTwoPi * comm_norm;
  report.raw = std::max(h0_term, h1_delta) / report.denominator;
  return detail::finish(std::move(report));
}

// p >= (1 - |<psi_0|psi_p>|^2 + lambda C_max - C_avg) / (4 pi sigma_C).
inline BoundReport grover_objective_bound(const BoundInputs& b) {
  detail::check_lambda(b.lambda);
  if (b.sigma_c <= 0.0)
    throw std::invalid_argument(
        "zero sigma_C: constant costs reach any ratio for free");
  BoundReport report;
  report.formula = "grover-objective";
  report.mode = b.mode;
  const double overlap = b.mode == BoundMode::APriori
                             ? 1.0
                             : detail::require(b.overlap_sq, "overlap_sq");
  if (overlap < 0.0 || overlap > 1.0)
    throw std::invalid_argument("overlap_sq must sit in [0, 1]");
  report.provenance["overlap_sq"] =
      b.mode == BoundMode::APriori ? "worst-case(1)" : "measured";
  report.numerator = {{"one_minus_overlap", 1.0 - overlap},
                      {"lambda_c_max", b.lambda * b.c_max},
                      {"c_avg", -b.c_avg}};
  report.denominator = detail::kFourPi * b.sigma_c;
  report.raw =
      (1.0 - overlap + b.lambda * b.c_max - b.c_avg) / report.denominator;
  return detail::finish(std::move(report));
}

// Same bound with sigma_C = sqrt(sum alpha^2) from the k-local coefficients.
inline BoundReport grover_klocal_bound(const BoundInputs& b) {
  if (!b.sum_alpha_sq || *b.sum_alpha_sq <= 0.0)
    throw std::invalid_argument("sum of squared coefficients unavailable");
  BoundInputs with_sigma = b;
  with_sigma.sigma_c = std::sqrt(*b.sum_alpha_sq);
  BoundReport report = grover_objective_bound(with_sigma);
  report.formula = "grover-klocal";
  report.provenance["sigma_c"] = "closed-form:coefficients";
  return report;
}

// p >= (1 - |<psi_0|psi_p>|^2 + lambda C_max - |E|/2) / (2 pi sqrt(|E|)).
inline BoundReport maxcut_grover_bound(double lambda, double c_max,
                                       std::uint64_t e_count,
                                       double overlap_sq,
                                       BoundMode mode = BoundMode::APriori) {
  detail::check_lambda(lambda);
  if (e_count < 1) throw std::invalid_argument("edgeless graph");
  BoundReport report;
  report.formula = "maxcut-grover";
  report.mode = mode;
  const double edges = static_cast<double>(e_count);
  report.numerator = {{"one_minus_overlap", 1.0 - overlap_sq},
                      {"lambda_c_max", lambda * c_max},
                      {"c_avg", -edges / 2.0}};
  report.denominator = detail::kTwoPi * std::sqrt(edges);
  report.raw = (1.0 - overlap_sq + lambda * c_max - edges / 2.0) /
               report.denominator;
  return detail::finish(std::move(report));
}

// p >= (n/2 - (1/2) sum <X_j> + lambda C_max - C_avg)
//      / (4 pi ||[H_C, H_TF]||).
inline BoundReport tf_objective_bound(const BoundInputs& b) {
  detail::check_lambda(b.lambda);
  if (b.comm_norm <= 0.0)
    throw std::invalid_argument("missing commutator norm");
  BoundReport report;
  report.formula = "tf-objective";
  report.mode = b.mode;
  const double sum_x =
      b.mode == BoundMode::APriori
          ? static_cast<double>(b.n)
          : detail::require(b.sum_x_expectations, "sum_x_expectations");
  report.provenance["sum_x_expectations"] =
      b.mode == BoundMode::APriori ? "worst-case(n)" : "measured";
  const double mixer_term = b.n / 2.0 - sum_x / 2.0;
  report.numerator = {{"mixer_term", mixer_term},
                      {"lambda_c_max", b.lambda * b.c_max},
                      {"c_avg", -b.c_avg}};
  report.denominator = detail::kFourPi * b.comm_norm;
  report.raw =
      (mixer_term + b.lambda * b.c_max - b.c_avg) / report.denominator;
  return detail::finish(std::move(report));
}

// p >= (lambda / 2 pi) sqrt((N - m)/m) - sqrt(lambda (1 - lambda)) / 2 pi,
// the objective bound with the search overlap folded in analytically.
inline BoundReport grover_search_bound(double lambda, std::uint64_t big_n,
                                       std::uint64_t m) {
  detail::check_lambda(lambda);
  if (m < 1) throw std::invalid_argument("empty marked set");
  if (m > big_n) throw std::invalid_argument("more marked states than states");
  BoundReport report;
  report.formula = "grover-search";
  report.mode = BoundMode::APosteriori;
  const double ratio = static_cast<double>(big_n - m) / static_cast<double>(m);
  const double leading = lambda * std::sqrt(ratio) / detail::kTwoPi;
  const double slack = std::sqrt(lambda * (1.0 - lambda)) / detail::kTwoPi;
  report.numerator = {{"leading", leading}, {"slack", -slack}};
  report.denominator = 1.0;
  report.raw = leading - slack;
  return detail::finish(std::move(report));
}

namespace detail {

inline BoundReport tf_search_bound(const char* formula, double lambda,
                                   int n, std::uint64_t m,
                                   double comm_norm) {
  check_lambda(lambda);
  if (lambda <= 0.5)
    throw std::domain_error(
        "transverse-field search bounds require lambda > 1/2");
  if (n < 1) throw std::invalid_argument("qubit count out of range");
  BoundReport report;
  report.formula = formula;
  report.mode = BoundMode::APosteriori;
  const double mixer_term =
      n * (1.0 - 2.0 * std::sqrt(lambda * (1.0 - lambda)));
  // 2m/N as ldexp keeps n past 63 finite.
  const double objective_term =
      2.0 * lambda - 2.0 * std::ldexp(static_cast<double>(m), -n);
  report.numerator = {{"mixer_term", mixer_term},
                      {"objective_term", objective_term}};
  report.denominator = kFourPi * comm_norm;
  report.raw = (mixer_term + objective_term) / report.denominator;
  return finish(std::move(report));
}

}  // namespace detail

// p >= (n(1 - 2 sqrt(lambda(1-lambda))) + 2 lambda - 2m/N) / (4 pi sqrt(n)).
inline BoundReport tf_search_dist3_bound(double lambda, int n,
                                         std::uint64_t m) {
  auto report = detail::tf_search_bound("tf-search-dist3", lambda, n, m,
                                        std::sqrt(static_cast<double>(n)));
  report.provenance["comm_norm"] = "closed-form:dist3-star";
  return report;
}

// Same numerator over 4 pi sqrt(2k(n-k) + n); m must be the full layer.
inline BoundReport tf_search_hamming_bound(double lambda, int n, int k,
                                           std::uint64_t m) {
  if (k <= 0 || k >= n) throw std::invalid_argument("k out of range");
  BigInt layer = 1;
  for (int i = 1; i <= std::min(k, n - k); ++i)
    layer = layer * (n - std::min(k, n - k) + i) / i;
  if (BigInt(m) != layer)
    throw std::invalid_argument("m does not match the weight-k layer");
  auto report = detail::tf_search_bound(
      "tf-search-hamming", lambda, n, m,
      std::sqrt(2.0 * static_cast<double>(k) * (n - k) + n));
  report.provenance["comm_norm"] = "closed-form:hamming-layer";
  return report;
}

// p >= |<P_0>_p - <P_0>_0| / (2 pi ||[P_0, H_1]||) for a projector that
// commutes with the mixer.
inline BoundReport overlap_bound(double p0_final, double p0_initial,
                                 double comm_norm) {
  if (comm_norm <= 0.0) throw std::invalid_argument("zero commutator norm");
  if (p0_final < 0.0 || p0_final > 1.0 || p0_initial < 0.0 ||
      p0_initial > 1.0)
    throw std::invalid_argument("projector expectations must sit in [0, 1]");
  BoundReport report;
  report.formula = "overlap-change";
  report.mode = BoundMode::APosteriori;
  report.numerator = {{"overlap_change", std::abs(p0_final - p0_initial)}};
  report.denominator = detail::kTwoPi * comm_norm;
  report.raw = std::abs(p0_final - p0_initial) / report.denominator;
  return detail::finish(std::move(report));
}

// p >= (lambda(N - 2m) + m - 2 sqrt(lambda(1-lambda) m (N-m)))
//      / (2 pi sqrt(m(N-m))), the overlap bound with the uniform-state
// projector and the search overlap decomposition folded in.
inline BoundReport search_overlap_bound(double lambda, std::uint64_t big_n,
                                        std::uint64_t m) {
  detail::check_lambda(lambda);
  if (m < 1) throw std::invalid_argument("empty marked set");
  if (m > big_n) throw std::invalid_argument("more marked states than states");
  BoundReport report;
  report.formula = "search-overlap";
  report.mode = BoundMode::APosteriori;
  if (m == big_n) {
    report.numerator = {{"overlap_change", 0.0}};
    report.denominator = 1.0;
    report.raw = 0.0;
    return detail::finish(std::move(report));
  }
  const double nn = static_cast<double>(big_n);
  const double mm = static_cast<double>(m);
  const double cross = std::sqrt(lambda * (1.0 - lambda) * mm * (nn - mm));
  const double numerator = lambda * (nn - 2.0 * mm) + mm - 2.0 * cross;
  report.numerator = {{"overlap_change_scaled", numerator}};
  report.denominator = detail::kTwoPi * std::sqrt(mm * (nn - mm));
  report.raw = numerator / report.denominator;
  return detail::finish(std::move(report));
}

// The maximal |<psi_0|psi_p>|^2 compatible with success probability lambda
// on a search instance: (1/N)(sqrt(lambda m) + sqrt((1-lambda)(N-m)))^2.
inline double search_overlap_budget(double lambda, std::uint64_t big_n,
                                    std::uint64_t m) {
  detail::check_lambda(lambda);
  const double nn = static_cast<double>(big_n);
  const double mm = static_cast<double>(m);
  const double root = std::sqrt(lambda * mm) +
                      std::sqrt((1.0 - lambda) * (nn - mm));
  return root * root / nn;
}

}  // namespace qrb
