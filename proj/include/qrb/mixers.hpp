#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "qrb/config.hpp"
#include "qrb/dense.hpp"
#include "qrb/pauli.hpp"
#include "qrb/problems.hpp"

namespace qrb {

// ---------------------------------------------------------------------------
// Mixing Hamiltonians. Both have zero ground-state energy and period 2*pi:
// the Grover mixer I - |psi_0><psi_0| has spectrum {0, 1}, the transverse
// field n/2 - (1/2) sum X_j has spectrum {0, ..., n}.

struct GroverMixer {
  FeasibleSet feasible;
};

struct TransverseFieldMixer {
  int n = 0;
};

using MixerSpec = std::variant<GroverMixer, TransverseFieldMixer>;

inline int mixer_qubits(const MixerSpec& mixer) {
  if (const auto* g = std::get_if<GroverMixer>(&mixer)) return g->feasible.n;
  return std::get<TransverseFieldMixer>(mixer).n;
}

inline PauliSum transverse_field_hamiltonian(int n) {
  PauliSum sum(n);
  sum.add(0, 0, {n / 2.0, 0.0});
  for (int j = 0; j < n; ++j)
    sum.add(std::uint64_t{1} << j, 0, {-0.5, 0.0});
  return sum;
}

// ---------------------------------------------------------------------------
// Grover-mixer commutator norm. [H_C, H_Grover] is (up to sign) the rank-2
// skew form (C(j) - C(i))/N, whose norm has the closed form
// sqrt(beta N - alpha^2)/N with alpha = sum C(i), beta = sum C(i)^2 -- which
// is exactly sigma_C.
inline double grover_commutator_norm(const CostSpectrum& spectrum) {
  if (spectrum.values.empty())
    throw std::invalid_argument("spectrum statistics unavailable");
  const BigInt n = spectrum.values.size();
  const BigInt radicand = spectrum.value_sq_sum * n -
                          spectrum.value_sum * spectrum.value_sum;
  return std::sqrt(to_double(Rational(radicand, n * n)));
}

// Dense [H_C, I - |psi_0><psi_0|] over the feasible index space, for
// cross-checks: entry (i, j) is (C(j) - C(i))/N.
inline DenseOperator grover_commutator_dense(const CostSpectrum& spectrum) {
  const Eigen::Index dim = static_cast<Eigen::Index>(spectrum.values.size());
  const double inv_n = 1.0 / static_cast<double>(dim);
  DenseOperator m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      m(i, j) = Complex{
          (static_cast<double>(spectrum.values[j]) -
           static_cast<double>(spectrum.values[i])) * inv_n,
          0.0};
  return m;
}

// ---------------------------------------------------------------------------
// Transverse-field commutator. With H_C = c I - sum_nu alpha_nu Z_{S_nu},
//
//   [H_C, H_TF] = i sum_nu alpha_nu sum_{l in S_nu} Y_l (x) Z_{S_nu \ l},
//
// at most k*m strings. The overall sign is this module's convention; no
// norm or witness magnitude depends on it.
inline PauliSum tf_commutator(const KLocalCost& h) {
  validate_klocal(h);
  PauliSum out(h.n);
  for (const auto& t : h.terms) {
    std::uint64_t rest = t.support;
    while (rest) {
      const std::uint64_t bit = rest & -rest;
      rest ^= bit;
      out.add(bit, t.support, Complex{0.0, t.alpha});
    }
  }
  return out;
}

inline DenseOperator tf_commutator_dense(const CostSpectrum& spectrum) {
  if (spectrum.feasible.kind != FeasibleKind::FullSpace)
    throw std::invalid_argument(
        "transverse-field commutators require the full space");
  const int n = spectrum.feasible.n;
  const DenseOperator tf = to_dense(transverse_field_hamiltonian(n));
  const Eigen::Index dim = static_cast<Eigen::Index>(spectrum.values.size());
  DenseOperator hc = DenseOperator::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    hc(i, i) = Complex{static_cast<double>(spectrum.values[i]), 0.0};
  return hc * tf - tf * hc;
}

// ---------------------------------------------------------------------------
// Closed-form transverse-field search norms. The commutator of a search
// indicator with H_TF is (1/2 times) a signed subgraph of the hypercube:
// disjoint stars K_{1,n} for a distance-3 marked set, the three adjacent
// weight layers for a full Hamming-weight-k set.

inline double tf_search_dist3_norm(int n) {
  if (n < 1) throw std::invalid_argument("qubit count out of range");
  return std::sqrt(static_cast<double>(n)) / 2.0;
}

inline double tf_hamming_k_norm(int n, int k) {
  if (k <= 0 || k >= n) throw std::invalid_argument("k out of range");
  return std::sqrt(2.0 * k * (n - k) + n) / 2.0;
}

// ---------------------------------------------------------------------------
// Graph spectra used by the closed forms above, exposed for cross-checks.

inline Eigen::MatrixXd star_adjacency(int n) {
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int leaf = 1; leaf <= n; ++leaf) {
    adj(0, leaf) = 1.0;
    adj(leaf, 0) = 1.0;
  }
  return adj;
}

// Adjacency of the hypercube subgraph induced by the vertices of Hamming
// weights k-1, k, k+1.
inline Eigen::MatrixXd hypercube_layer_adjacency(int n, int k) {
  if (k <= 0 || k >= n) throw std::invalid_argument("k out of range");
  std::vector<std::uint64_t> vertices;
  for (int w = k - 1; w <= k + 1; ++w) {
    const auto layer = FeasibleSet::hamming_weight(n, w);
    vertices.insert(vertices.end(), layer.strings.begin(),
                    layer.strings.end());
  }
  std::sort(vertices.begin(), vertices.end());
  const Eigen::Index dim = static_cast<Eigen::Index>(vertices.size());
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      if (std::popcount(vertices[i] ^ vertices[j]) == 1) {
        adj(i, j) = 1.0;
        adj(j, i) = 1.0;
      }
    }
  }
  return adj;
}

inline double spectral_radius(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      symmetric, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolve failed");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Witness product state for strictly k-local costs. From a maximizing
// eigenstring s of the traceless part, the per-qubit tilt by
// theta = -(1/2) arctan(sqrt(1/(k-1))) turns <s|Z_j|s> into
// <s*|Y_j|s*> = sqrt(1/k) <s|Z_j|s>, which makes the commutator expectation
// |<s*|[H_C, H_TF]|s*>| = ||H_C'|| sqrt(k) ((k-1)/k)^{(k-1)/2}.

// ||H_C'|| of the traceless part and a bitstring attaining it, found by
// enumeration; ties break toward the smallest bitstring.
struct EigenstringResult {
  std::uint64_t bitstring = 0;
  double norm = 0.0;
};

inline EigenstringResult max_abs_eigenstring(
    const KLocalCost& h, const Limits& limits = default_limits()) {
  validate_klocal(h);
  if (h.n > limits.enumeration_qubits)
    throw LimitError("enumeration limit exceeded");
  EigenstringResult best;
  best.norm = -1.0;
  const std::uint64_t count = std::uint64_t{1} << h.n;
  for (std::uint64_t z = 0; z < count; ++z) {
    const double value = std::abs(h.evaluate(z) - h.constant);
    if (value > best.norm + 1e-15) {
      best.norm = value;
      best.bitstring = z;
    }
  }
  return best;
}

struct WitnessResult {
  std::vector<Complex> amplitudes;  // the product state |s*> over 2^n
  double value = 0.0;               // |<s*| [H_C, H_TF] |s*>|
};

inline WitnessResult s_star_witness(const KLocalCost& h, std::uint64_t s,
                                    int k,
                                    const Limits& limits = default_limits()) {
  validate_klocal(h);
  if (k < 2)
    throw std::invalid_argument("witness tilt is undefined for k < 2");
  if (!h.strictly_k_local(k))
    throw std::invalid_argument("witness requires a strictly k-local cost");
  if (h.n > limits.simulator_qubits)
    throw LimitError("statevector size limit exceeded");

  const double theta = -0.5 * std::atan(std::sqrt(1.0 / (k - 1)));
  const Complex zero_amp[2] = {Complex{std::cos(theta), 0.0},
                               Complex{0.0, -std::sin(theta)}};
  const Complex one_amp[2] = {Complex{0.0, -std::sin(theta)},
                              Complex{std::cos(theta), 0.0}};

  const std::uint64_t dim = std::uint64_t{1} << h.n;
  WitnessResult out;
  out.amplitudes.assign(dim, Complex{1.0, 0.0});
  for (std::uint64_t z = 0; z < dim; ++z) {
    Complex amp{1.0, 0.0};
    for (int q = 0; q < h.n; ++q) {
      const int bit = (z >> q) & 1;
      amp *= ((s >> q) & 1) ? one_amp[bit] : zero_amp[bit];
    }
    out.amplitudes[z] = amp;
  }
  out.value = std::abs(expectation_value(tf_commutator(h), out.amplitudes));
  return out;
}

// The analytic value the witness expectation must reproduce.
inline double witness_factor(int k) {
  if (k < 1) throw std::invalid_argument("k out of range");
  if (k == 1) return 1.0;
  return std::sqrt(static_cast<double>(k)) *
         std::pow(static_cast<double>(k - 1) / k, (k - 1) / 2.0);
}

// ---------------------------------------------------------------------------
// Norm dispatch: route to a closed form when the structure admits one, else
// fall back to the numeric paths. Every result carries its provenance.

struct CommutatorNorm {
  double value = 0.0;
  std::string provenance;
};

inline CommutatorNorm commutator_norm(const CostSpectrum& spectrum,
                                      const MixerSpec& mixer,
                                      const Limits& limits = default_limits()) {
  if (std::holds_alternative<GroverMixer>(mixer)) {
    return {grover_commutator_norm(spectrum), "closed-form:grover-sigma"};
  }
  if (spectrum.feasible.kind != FeasibleKind::FullSpace)
    throw std::invalid_argument(
        "transverse-field commutators require the full space");
  if (spectrum.feasible.n > limits.dense_qubits)
    throw LimitError("no norm route for this size");
  return {spectral_norm(tf_commutator_dense(spectrum)), "numeric:dense"};
}

inline CommutatorNorm commutator_norm(const KLocalCost& h,
                                      const MixerSpec& mixer,
                                      const Limits& limits = default_limits()) {
  if (const auto* grover = std::get_if<GroverMixer>(&mixer)) {
    if (grover->feasible.kind == FeasibleKind::FullSpace)
      return {cost_stats_from_coefficients(h).sigma,
              "closed-form:grover-sigma-coefficients"};
    return {grover_commutator_norm(
                enumerate_spectrum(h, grover->feasible, limits)),
            "closed-form:grover-sigma-enumerated"};
  }
  const auto comm = tf_commutator(h);
  if (h.n <= limits.dense_qubits)
    return {spectral_norm(to_dense(comm, limits.dense_qubits)),
            "numeric:dense"};
  return {spectral_norm_power(comm, PowerIterationOptions{},
                              limits.enumeration_qubits),
          "numeric:power-iteration"};
}

inline CommutatorNorm commutator_norm(const SearchSet& set,
                                      const MixerSpec& mixer,
                                      const Limits& limits = default_limits()) {
  validate_search_set(set);
  if (std::holds_alternative<GroverMixer>(mixer)) {
    return {search_sigma(std::uint64_t{1} << set.n, set.m()),
            "closed-form:grover-sigma-search"};
  }
  if (set.tag == SearchTag::Dist3)
    return {tf_search_dist3_norm(set.n), "closed-form:dist3-star"};
  if (set.tag == SearchTag::HammingK && set.hamming_k > 0 &&
      set.hamming_k < set.n)
    return {tf_hamming_k_norm(set.n, set.hamming_k),
            "closed-form:hamming-layer"};
  if (set.n <= limits.dense_qubits)
    return {spectral_norm(tf_commutator_dense(search_cost(set, limits))),
            "numeric:dense"};
  throw LimitError("no norm route for this search set");
}

}  // namespace qrb
