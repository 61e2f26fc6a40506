#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "qrb/config.hpp"

namespace qrb {

using Complex = std::complex<double>;

namespace detail {

inline int parity(std::uint64_t mask) { return std::popcount(mask) & 1; }

// i^k for k mod 4.
inline Complex quarter_turn(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace detail

// A weighted Pauli string on n qubits in symplectic (x_mask, z_mask) form.
// Bit j of x_mask marks an X factor on qubit j, bit j of z_mask a Z factor;
// a qubit with both bits set carries a Y, its phase folded into the basis:
//
//   B(x, z) = i^{popcount(x & z)} X^x Z^z
//
// Each B(x, z) is a Hermitian tensor product of I, X, Y, Z factors, so a sum
// is Hermitian exactly when all coefficients are real. The stored operator
// is coeff * B(x_mask, z_mask).
struct PauliString {
  int n = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  Complex coeff{1.0, 0.0};

  static PauliString identity(int n, Complex c = {1.0, 0.0}) {
    return {n, 0, 0, c};
  }
  static PauliString x(int n, int qubit, Complex c = {1.0, 0.0}) {
    check_qubit(n, qubit);
    return {n, std::uint64_t{1} << qubit, 0, c};
  }
  static PauliString y(int n, int qubit, Complex c = {1.0, 0.0}) {
    check_qubit(n, qubit);
    return {n, std::uint64_t{1} << qubit, std::uint64_t{1} << qubit, c};
  }
  static PauliString z(int n, int qubit, Complex c = {1.0, 0.0}) {
    check_qubit(n, qubit);
    return {n, 0, std::uint64_t{1} << qubit, c};
  }
  // Product of Z factors over a support mask.
  static PauliString z_product(int n, std::uint64_t support,
                               Complex c = {1.0, 0.0}) {
    check_mask(n, support);
    return {n, 0, support, c};
  }

  bool is_identity_string() const { return x_mask == 0 && z_mask == 0; }

  static void check_qubit(int n, int qubit) {
    if (qubit < 0 || qubit >= n)
      throw std::invalid_argument("qubit index out of range");
  }
  static void check_mask(int n, std::uint64_t mask) {
    if (n < 0 || n > 64) throw std::invalid_argument("qubit count out of range");
    if (n < 64 && (mask >> n) != 0)
      throw std::invalid_argument("mask does not fit in n bits");
  }
};

// Phase of B(x1,z1) * B(x2,z2) relative to B(x1^x2, z1^z2), as a power of i.
inline int pauli_product_phase_exponent(std::uint64_t x1, std::uint64_t z1,
                                        std::uint64_t x2, std::uint64_t z2) {
  const int k1 = std::popcount(x1 & z1);
  const int k2 = std::popcount(x2 & z2);
  const int k3 = std::popcount((x1 ^ x2) & (z1 ^ z2));
  const int swap = std::popcount(z1 & x2);
  return k1 + k2 - k3 + 2 * swap;
}

inline PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n != b.n) throw std::invalid_argument("qubit count mismatch");
  PauliString out;
  out.n = a.n;
  out.x_mask = a.x_mask ^ b.x_mask;
  out.z_mask = a.z_mask ^ b.z_mask;
  out.coeff = a.coeff * b.coeff *
              detail::quarter_turn(pauli_product_phase_exponent(
                  a.x_mask, a.z_mask, b.x_mask, b.z_mask));
  return out;
}

inline PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

// Two Pauli strings either commute or anticommute; they anticommute exactly
// when their symplectic product is odd.
inline bool strings_commute(const PauliString& a, const PauliString& b) {
  return ((std::popcount(a.x_mask & b.z_mask) +
           std::popcount(a.z_mask & b.x_mask)) &
          1) == 0;
}

// A Pauli operator in simplified canonical form: a map from (x_mask, z_mask)
// to a complex coefficient, with no zero coefficients stored. The map order
// makes iteration and serialization deterministic.
struct PauliSum {
  using Key = std::pair<std::uint64_t, std::uint64_t>;

  int n = 0;
  std::map<Key, Complex> terms;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n(n_qubits) {
    PauliString::check_mask(n_qubits, 0);
  }

  static PauliSum zero(int n) { return PauliSum(n); }
  static PauliSum identity(int n, Complex c = {1.0, 0.0}) {
    PauliSum s(n);
    s.add(0, 0, c);
    return s;
  }

  std::size_t size() const { return terms.size(); }
  bool empty() const { return terms.empty(); }

  void add(std::uint64_t x, std::uint64_t z, Complex c) {
    PauliString::check_mask(n, x | z);
    auto it = terms.find({x, z});
    if (it == terms.end()) {
      if (c != Complex{0.0, 0.0}) terms.emplace(Key{x, z}, c);
      return;
    }
    it->second += c;
    if (it->second == Complex{0.0, 0.0}) terms.erase(it);
  }

  void add(const PauliString& p) {
    if (p.n != n) throw std::invalid_argument("qubit count mismatch");
    add(p.x_mask, p.z_mask, p.coeff);
  }

  PauliSum& operator+=(const PauliSum& other) {
    if (other.n != n) throw std::invalid_argument("qubit count mismatch");
    for (const auto& [key, c] : other.terms) add(key.first, key.second, c);
    return *this;
  }

  PauliSum& operator-=(const PauliSum& other) {
    if (other.n != n) throw std::invalid_argument("qubit count mismatch");
    for (const auto& [key, c] : other.terms) add(key.first, key.second, -c);
    return *this;
  }

  PauliSum& operator*=(Complex scale) {
    if (scale == Complex{0.0, 0.0}) {
      terms.clear();
      return *this;
    }
    for (auto& [key, c] : terms) c *= scale;
    return *this;
  }

  Complex coefficient(std::uint64_t x, std::uint64_t z) const {
    auto it = terms.find({x, z});
    return it == terms.end() ? Complex{0.0, 0.0} : it->second;
  }

  Complex identity_coefficient() const { return coefficient(0, 0); }

  // The sum with all identity terms removed (traceless when the identity
  // coefficient carried the whole trace).
  PauliSum without_identity() const {
    PauliSum out(*this);
    out.terms.erase({0, 0});
    return out;
  }

  void prune(double eps) {
    for (auto it = terms.begin(); it != terms.end();) {
      if (std::abs(it->second) < eps)
        it = terms.erase(it);
      else
        ++it;
    }
  }

  // Hermitian iff every canonical coefficient is real.
  bool is_hermitian(double tol = kAbsTol) const {
    for (const auto& [key, c] : terms)
      if (std::abs(c.imag()) > tol) return false;
    return true;
  }

  // Anti-Hermitian iff every canonical coefficient is purely imaginary.
  bool is_anti_hermitian(double tol = kAbsTol) const {
    for (const auto& [key, c] : terms)
      if (std::abs(c.real()) > tol) return false;
    return true;
  }

  // Sum of |coefficient|; upper bounds the spectral norm.
  double coefficient_one_norm() const {
    double total = 0.0;
    for (const auto& [key, c] : terms) total += std::abs(c);
    return total;
  }
};

inline PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
inline PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
inline PauliSum operator*(Complex c, PauliSum a) { return a *= c; }
inline PauliSum operator*(PauliSum a, Complex c) { return a *= c; }

inline PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  if (a.n != b.n) throw std::invalid_argument("qubit count mismatch");
  PauliSum out(a.n);
  for (const auto& [ka, ca] : a.terms) {
    for (const auto& [kb, cb] : b.terms) {
      const std::uint64_t x = ka.first ^ kb.first;
      const std::uint64_t z = ka.second ^ kb.second;
      const Complex phase = detail::quarter_turn(pauli_product_phase_exponent(
          ka.first, ka.second, kb.first, kb.second));
      out.add(x, z, ca * cb * phase);
    }
  }
  return out;
}

inline PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  return multiply(a, b);
}

// ab - ba in canonical form. Commuting pairs of strings contribute nothing
// and are skipped, so identity terms cancel exactly rather than within
// floating-point tolerance; anticommuting pairs contribute 2ab.
inline PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  if (a.n != b.n) throw std::invalid_argument("qubit count mismatch");
  PauliSum out(a.n);
  for (const auto& [ka, ca] : a.terms) {
    for (const auto& [kb, cb] : b.terms) {
      const int sym = std::popcount(ka.first & kb.second) +
                      std::popcount(ka.second & kb.first);
      if ((sym & 1) == 0) continue;
      const std::uint64_t x = ka.first ^ kb.first;
      const std::uint64_t z = ka.second ^ kb.second;
      const Complex phase = detail::quarter_turn(pauli_product_phase_exponent(
          ka.first, ka.second, kb.first, kb.second));
      out.add(x, z, 2.0 * ca * cb * phase);
    }
  }
  return out;
}

// Renders e.g. "(0.5+0i) Z0 Z2" per term, for diagnostics.
inline std::string to_string(const PauliSum& sum) {
  if (sum.terms.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : sum.terms) {
    if (!out.empty()) out += " + ";
    out += "(" + std::to_string(c.real()) + (c.imag() < 0 ? "" : "+") +
           std::to_string(c.imag()) + "i)";
    const auto [x, z] = key;
    if (x == 0 && z == 0) out += " I";
    for (int q = 0; q < sum.n; ++q) {
      const bool bx = (x >> q) & 1, bz = (z >> q) & 1;
      if (bx && bz)
        out += " Y" + std::to_string(q);
      else if (bx)
        out += " X" + std::to_string(q);
      else if (bz)
        out += " Z" + std::to_string(q);
    }
  }
  return out;
}

}  // namespace qrb
