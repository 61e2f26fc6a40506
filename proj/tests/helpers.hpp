#pragma once

// Test-only oracles, kept independent of the library paths they check.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qrb/pauli.hpp"

namespace qrb::testing {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Dense form built the slow way, as an explicit chain of Kronecker products
// of single-qubit matrices. Independent of qrb::to_dense.
inline Matrix kron_oracle(const PauliSum& sum) {
  Matrix id2 = Matrix::Identity(2, 2);
  Matrix px(2, 2), py(2, 2), pz(2, 2);
  px << 0, 1, 1, 0;
  py << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  pz << 1, 0, 0, -1;

  const Eigen::Index dim = Eigen::Index{1} << sum.n;
  Matrix total = Matrix::Zero(dim, dim);
  for (const auto& [key, coeff] : sum.terms) {
    const auto [x, z] = key;
    Matrix acc = Matrix::Identity(1, 1);
    // Qubit 0 is the least significant index bit, so it goes rightmost in
    // the Kronecker chain.
    for (int q = sum.n - 1; q >= 0; --q) {
      const bool bx = (x >> q) & 1, bz = (z >> q) & 1;
      const Matrix& factor = bx ? (bz ? py : px) : (bz ? pz : id2);
      Matrix next(acc.rows() * 2, acc.cols() * 2);
      for (Eigen::Index r = 0; r < acc.rows(); ++r)
        for (Eigen::Index c = 0; c < acc.cols(); ++c)
          next.block(2 * r, 2 * c, 2, 2) = acc(r, c) * factor;
      acc = std::move(next);
    }
    total += coeff * acc;
  }
  return total;
}

inline PauliSum random_pauli_sum(int n, int n_terms, std::mt19937_64& rng,
                                 bool hermitian) {
  std::uniform_int_distribution<std::uint64_t> mask(
      0, (std::uint64_t{1} << n) - 1);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  PauliSum sum(n);
  for (int t = 0; t < n_terms; ++t) {
    const Complex c = hermitian ? Complex{coeff(rng), 0.0}
                                : Complex{coeff(rng), coeff(rng)};
    sum.add(mask(rng), mask(rng), c);
  }
  return sum;
}

inline PauliSum transverse_field_oracle(int n) {
  PauliSum sum(n);
  sum.add(0, 0, Complex{n / 2.0, 0.0});
  for (int j = 0; j < n; ++j)
    sum.add(std::uint64_t{1} << j, 0, Complex{-0.5, 0.0});
  return sum;
}

}  // namespace qrb::testing
