#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "qrb/config.hpp"
#include "qrb/pauli.hpp"

namespace qrb {

// Dense complex matrix over either the full 2^n space or an explicit
// feasible index space.
using DenseOperator = Eigen::MatrixXcd;

inline bool is_hermitian_dense(const DenseOperator& m, double tol = kAbsTol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_anti_hermitian_dense(const DenseOperator& m,
                                    double tol = kAbsTol) {
  return (m + m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// 2^n x 2^n matrix of the sum of Kronecker products. B(x,z)|j> flips the
// x-bits of |j> and picks up i^{|x&z|} (-1)^{|z&j|}.
inline DenseOperator to_dense(const PauliSum& sum,
                              int dense_limit = default_limits().dense_qubits) {
  if (sum.n > dense_limit)
    throw LimitError("dense size limit exceeded");
  const std::uint64_t dim = std::uint64_t{1} << sum.n;
  DenseOperator m = DenseOperator::Zero(static_cast<Eigen::Index>(dim),
                                        static_cast<Eigen::Index>(dim));
  for (const auto& [key, c] : sum.terms) {
    const auto [x, z] = key;
    const Complex base = c * detail::quarter_turn(std::popcount(x & z));
    for (std::uint64_t j = 0; j < dim; ++j) {
      const double sign = detail::parity(z & j) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(j ^ x), static_cast<Eigen::Index>(j)) +=
          base * sign;
    }
  }
  return m;
}

// Largest singular value of a normal (Hermitian or anti-Hermitian) matrix,
// via an exact eigensolve. Rejects non-normal input.
inline double spectral_norm(const DenseOperator& m, double tol = kAbsTol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix not square");
  if (m.rows() == 0) return 0.0;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  DenseOperator herm;
  if (is_hermitian_dense(m, tol * scale)) {
    herm = m;
  } else if (is_anti_hermitian_dense(m, tol * scale)) {
    herm = Complex{0.0, 1.0} * m;
  } else {
    throw std::invalid_argument(
        "spectral_norm requires a Hermitian or anti-Hermitian operator");
  }
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(herm,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolve failed");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

// out += sum applied to in, both of dimension 2^n.
inline void apply_pauli_sum(const PauliSum& sum, std::span<const Complex> in,
                            std::span<Complex> out, bool conjugate = false) {
  const std::uint64_t dim = std::uint64_t{1} << sum.n;
  if (in.size() != dim || out.size() != dim)
    throw std::invalid_argument("dimension mismatch");
  for (const auto& [key, c] : sum.terms) {
    const auto [x, z] = key;
    const Complex base = (conjugate ? std::conj(c) : c) *
                         detail::quarter_turn(std::popcount(x & z));
    for (std::uint64_t j = 0; j < dim; ++j) {
      const double sign = detail::parity(z & j) ? -1.0 : 1.0;
      out[j ^ x] += base * sign * in[j];
    }
  }
}

// <psi| sum |psi> without any Hermiticity requirement.
inline Complex expectation_value(const PauliSum& sum,
                                 std::span<const Complex> amplitudes) {
  const std::uint64_t dim = std::uint64_t{1} << sum.n;
  if (amplitudes.size() != dim)
    throw std::invalid_argument("dimension mismatch");
  Complex total{0.0, 0.0};
  for (const auto& [key, c] : sum.terms) {
    const auto [x, z] = key;
    const Complex base = c * detail::quarter_turn(std::popcount(x & z));
    Complex acc{0.0, 0.0};
    for (std::uint64_t j = 0; j < dim; ++j) {
      const double sign = detail::parity(z & j) ? -1.0 : 1.0;
      acc += std::conj(amplitudes[j ^ x]) * sign * amplitudes[j];
    }
    total += base * acc;
  }
  return total;
}

// <psi| sum |psi> for a Hermitian sum; the imaginary residue must sit below
// the absolute tolerance.
inline double expectation(const PauliSum& sum,
                          std::span<const Complex> amplitudes) {
  if (!sum.is_hermitian())
    throw std::invalid_argument("expectation requires a Hermitian operator");
  const Complex value = expectation_value(sum, amplitudes);
  const double scale = std::max(1.0, std::abs(value));
  if (std::abs(value.imag()) > kAbsTol * scale)
    throw std::runtime_error("expectation has a non-real residue");
  return value.real();
}

// Spectral norm by power iteration on a^dagger a with a seeded random unit
// start. Stops when the Rayleigh quotient settles within tol; throws if the
// iteration cap is reached first.
inline double spectral_norm_power(
    const PauliSum& sum,
    const PowerIterationOptions& options = PowerIterationOptions{},
    int qubit_limit = default_limits().enumeration_qubits) {
  if (sum.n > qubit_limit)
    throw LimitError("iterative norm size limit exceeded");
  if (sum.terms.empty()) return 0.0;
  const std::uint64_t dim = std::uint64_t{1} << sum.n;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> v(dim);
  double norm2 = 0.0;
  for (auto& a : v) {
    a = Complex{gauss(rng), gauss(rng)};
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : v) a *= inv;

  std::vector<Complex> w(dim), u(dim);
  double rayleigh = 0.0;
  double prev_delta = 0.0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    std::fill(w.begin(), w.end(), Complex{0.0, 0.0});
    apply_pauli_sum(sum, v, w);
    std::fill(u.begin(), u.end(), Complex{0.0, 0.0});
    apply_pauli_sum(sum, w, u, /*conjugate=*/true);

    Complex rq{0.0, 0.0};
    double unorm2 = 0.0;
    for (std::uint64_t j = 0; j < dim; ++j) {
      rq += std::conj(v[j]) * u[j];
      unorm2 += std::norm(u[j]);
    }
    const double next = rq.real();
    if (unorm2 == 0.0) return 0.0;  // v in the kernel of a^dagger a
    const double inv_u = 1.0 / std::sqrt(unorm2);
    for (std::uint64_t j = 0; j < dim; ++j) v[j] = u[j] * inv_u;

    const double delta = next - rayleigh;
    if (iter > 0 && std::abs(delta) <= options.tol * std::max(1.0, next)) {
      // The Rayleigh quotients converge geometrically, so the remaining
      // error is about delta * r / (1 - r). Extrapolate it away; when the
      // decay ratio is still too close to 1 the result is not yet certified
      // and the loop keeps going.
      double limit = next;
      if (std::abs(prev_delta) > std::abs(delta) && delta * prev_delta > 0.0) {
        const double r = delta / prev_delta;
        const double tail = delta * r / (1.0 - r);
        if (std::abs(tail) > options.tol * 100.0 * std::max(1.0, next)) {
          prev_delta = delta;
          rayleigh = next;
          continue;
        }
        limit = next + tail;
      }
      return std::sqrt(std::max(0.0, limit));
    }
    prev_delta = delta;
    rayleigh = next;
  }
  throw std::runtime_error("power iteration did not converge");
}

// Spectral norm of a Pauli sum: exact dense eigensolve up to the dense
// limit, power iteration past it.
inline double spectral_norm(const PauliSum& sum,
                            const Limits& limits = default_limits()) {
  if (sum.n <= limits.dense_qubits)
    return spectral_norm(to_dense(sum, limits.dense_qubits));
  if (!sum.is_hermitian() && !sum.is_anti_hermitian())
    throw std::invalid_argument(
        "spectral_norm requires a Hermitian or anti-Hermitian operator");
  return spectral_norm_power(sum, PowerIterationOptions{},
                             limits.enumeration_qubits);
}

}  // namespace qrb
