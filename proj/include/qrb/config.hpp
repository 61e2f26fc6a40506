#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qrb {

// Size or round-count limit violations; kept distinct so callers can map
// them to their own exit codes.
struct LimitError : std::invalid_argument {
  explicit LimitError(const std::string& what) : std::invalid_argument(what) {}
};

// Floating-point tolerance policy, stated once and reused everywhere:
// absolute tolerance for unit-scale checks, relative tolerance for norms.
inline constexpr double kAbsTol = 1e-10;
inline constexpr double kRelTol = 1e-8;

// Size limits for the numeric routes. Dense matrices stop at 2^14; full
// enumeration of spectra and statevectors stops at 2^20.
struct Limits {
  int dense_qubits = 14;
  int enumeration_qubits = 20;
  std::uint64_t max_feasible = std::uint64_t{1} << 20;
  int simulator_qubits = 20;
  int optimizer_qubits = 14;
  int optimizer_rounds = 6;
};

inline const Limits& default_limits() {
  static const Limits limits{};
  return limits;
}

// Power iteration on a^dagger a, used for spectral norms past the dense
// limit. Deterministic under the fixed seed.
struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iterations = 10000;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
};

}  // namespace qrb
