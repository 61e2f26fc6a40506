#pragma once

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "qrb/config.hpp"
#include "qrb/pauli.hpp"

namespace qrb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) {
  return static_cast<double>(r);
}

// ---------------------------------------------------------------------------
// Graphs

struct Edge {
  int u = 0;
  int v = 0;
  std::int64_t weight = 1;
};

// Undirected graph with integer edge weights. Integer weights keep every
// objective value an integer, which the periodicity of the phase separator
// relies on.
struct Graph {
  int n_vertices = 0;
  std::vector<Edge> edges;

  std::int64_t total_weight() const {
    std::int64_t w = 0;
    for (const auto& e : edges) w += e.weight;
    return w;
  }
};

inline void validate_graph(const Graph& g) {
  if (g.n_vertices < 0) throw std::invalid_argument("negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.u >= g.n_vertices || e.v < 0 || e.v >= g.n_vertices)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop");
    const auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second)
      throw std::invalid_argument("duplicate edge");
  }
}

inline std::int64_t cut_value(const Graph& g, std::uint64_t assignment) {
  std::int64_t cut = 0;
  for (const auto& e : g.edges) {
    const int bu = (assignment >> e.u) & 1;
    const int bv = (assignment >> e.v) & 1;
    if (bu != bv) cut += e.weight;
  }
  return cut;
}

// ---------------------------------------------------------------------------
// Feasible sets

enum class FeasibleKind { FullSpace, HammingWeight, Explicit };

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) /
             static_cast<std::uint64_t>(i);
  }
  return result;
}

// The index space every spectrum and state vector is defined over: the full
// n-bit cube, one Hamming-weight layer, or an explicit sorted list.
struct FeasibleSet {
  FeasibleKind kind = FeasibleKind::FullSpace;
  int n = 0;
  int weight = -1;
  std::vector<std::uint64_t> strings;  // materialized unless FullSpace

  static FeasibleSet full(int n) {
    if (n < 0 || n > 63) throw std::invalid_argument("qubit count out of range");
    FeasibleSet f;
    f.kind = FeasibleKind::FullSpace;
    f.n = n;
    return f;
  }

  static FeasibleSet hamming_weight(int n, int q,
                                    const Limits& limits = default_limits()) {
    if (n < 0 || n > 63) throw std::invalid_argument("qubit count out of range");
    if (q < 0 || q > n) throw std::invalid_argument("weight out of range");
    if (binomial(n, q) > limits.max_feasible)
      throw LimitError("feasible set enumeration limit exceeded");
    FeasibleSet f;
    f.kind = FeasibleKind::HammingWeight;
    f.n = n;
    f.weight = q;
    f.strings.reserve(binomial(n, q));
    // Lowest weight-q string, then successive lexicographic neighbors.
    if (q == 0) {
      f.strings.push_back(0);
    } else {
      std::uint64_t s = (std::uint64_t{1} << q) - 1;
      const std::uint64_t limit = std::uint64_t{1} << n;
      while (s < limit) {
        f.strings.push_back(s);
        const std::uint64_t c = s & -s;
        const std::uint64_t r = s + c;
        if (r >= limit) break;
        s = (((r ^ s) >> 2) / c) | r;
      }
    }
    return f;
  }

  static FeasibleSet explicit_set(int n, std::vector<std::uint64_t> strings) {
    if (n < 0 || n > 63) throw std::invalid_argument("qubit count out of range");
    std::sort(strings.begin(), strings.end());
    if (std::adjacent_find(strings.begin(), strings.end()) != strings.end())
      throw std::invalid_argument("duplicate feasible string");
    for (std::uint64_t s : strings)
      if (n < 64 && (s >> n) != 0)
        throw std::invalid_argument("feasible string does not fit in n bits");
    FeasibleSet f;
    f.kind = FeasibleKind::Explicit;
    f.n = n;
    f.strings = std::move(strings);
    return f;
  }

  std::uint64_t size() const {
    return kind == FeasibleKind::FullSpace ? (std::uint64_t{1} << n)
                                           : strings.size();
  }

  std::uint64_t bitstring(std::uint64_t index) const {
    return kind == FeasibleKind::FullSpace ? index : strings.at(index);
  }

  std::optional<std::uint64_t> index_of(std::uint64_t z) const {
    if (kind == FeasibleKind::FullSpace)
      return z < size() ? std::optional<std::uint64_t>{z} : std::nullopt;
    const auto it = std::lower_bound(strings.begin(), strings.end(), z);
    if (it == strings.end() || *it != z) return std::nullopt;
    return static_cast<std::uint64_t>(it - strings.begin());
  }

  bool operator==(const FeasibleSet& other) const {
    return kind == other.kind && n == other.n && weight == other.weight &&
           strings == other.strings;
  }
};

// ---------------------------------------------------------------------------
// k-local integer cost functions

struct CostTerm {
  double alpha = 0.0;
  std::uint64_t support = 0;  // nonempty mask of the Z factors
};

// Diagonal cost operator H_C = constant * I - sum_nu alpha_nu Z_{support_nu}.
// For unconstrained integer-valued problems the constant is the average
// objective value.
struct KLocalCost {
  int n = 0;
  double constant = 0.0;
  std::vector<CostTerm> terms;

  double evaluate(std::uint64_t z) const {
    double value = constant;
    for (const auto& t : terms)
      value -= t.alpha * (detail::parity(t.support & z) ? -1.0 : 1.0);
    return value;
  }

  int locality() const {
    int k = 0;
    for (const auto& t : terms) k = std::max(k, std::popcount(t.support));
    return k;
  }

  int max_occurrence() const {
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    int l = 0;
    for (const auto& t : terms)
      for (int q = 0; q < n; ++q)
        if ((t.support >> q) & 1) l = std::max(l, ++count[q]);
    return l;
  }

  bool strictly_k_local(int k) const {
    for (const auto& t : terms)
      if (std::popcount(t.support) != k) return false;
    return !terms.empty();
  }
};

inline void validate_klocal(const KLocalCost& h) {
  if (h.n < 0 || h.n > 63) throw std::invalid_argument("qubit count out of range");
  for (const auto& t : h.terms) {
    if (t.support == 0) throw std::invalid_argument("empty term support");
    if (h.n < 64 && (t.support >> h.n) != 0)
      throw std::invalid_argument("term support does not fit in n bits");
  }
}

inline PauliSum to_pauli_sum(const KLocalCost& h) {
  validate_klocal(h);
  PauliSum sum(h.n);
  if (h.constant != 0.0) sum.add(0, 0, {h.constant, 0.0});
  for (const auto& t : h.terms) sum.add(0, t.support, {-t.alpha, 0.0});
  return sum;
}

// ---------------------------------------------------------------------------
// Cost spectra and statistics

// Objective statistics over the feasible set, exact in rational arithmetic:
// c_avg = (sum C)/N and variance = (N sum C^2 - (sum C)^2)/N^2.
struct CostStats {
  std::int64_t c_max = 0;
  Rational c_avg{0};
  Rational variance{0};

  double c_avg_d() const { return to_double(c_avg); }
  double sigma() const { return std::sqrt(to_double(variance)); }
};

struct CostSpectrum {
  FeasibleSet feasible;
  std::vector<std::int64_t> values;
  CostStats stats;
  BigInt value_sum{0};
  BigInt value_sq_sum{0};
};

inline CostSpectrum make_cost_spectrum(FeasibleSet feasible,
                                       std::vector<std::int64_t> values) {
  if (values.empty()) throw std::invalid_argument("empty feasible set");
  if (values.size() != feasible.size())
    throw std::invalid_argument("value count does not match feasible set");
  CostSpectrum spec;
  spec.feasible = std::move(feasible);
  spec.values = std::move(values);
  BigInt sum = 0, sq = 0;
  std::int64_t cmax = spec.values.front();
  for (std::int64_t v : spec.values) {
    if (v < 0) throw std::invalid_argument("negative objective value");
    sum += v;
    sq += BigInt(v) * v;
    cmax = std::max(cmax, v);
  }
  const BigInt n = spec.values.size();
  spec.value_sum = sum;
  spec.value_sq_sum = sq;
  spec.stats.c_max = cmax;
  spec.stats.c_avg = Rational(sum, n);
  spec.stats.variance = Rational(n * sq - sum * sum, n * n);
  return spec;
}

inline const CostStats& cost_stats_bruteforce(const CostSpectrum& spectrum) {
  if (spectrum.values.empty()) throw std::invalid_argument("empty spectrum");
  return spectrum.stats;
}

// Closed-form statistics from the Hamiltonian coefficients, valid for
// unconstrained problems only: the constant is the average and the standard
// deviation is sqrt(sum alpha^2).
struct CoefficientStats {
  double c_avg = 0.0;
  double sigma = 0.0;
};

inline CoefficientStats cost_stats_from_coefficients(const KLocalCost& h) {
  validate_klocal(h);
  // Duplicate supports merge into a single canonical Pauli term first.
  std::map<std::uint64_t, double> merged;
  for (const auto& t : h.terms) merged[t.support] += t.alpha;
  double sq = 0.0;
  for (const auto& [support, alpha] : merged) sq += alpha * alpha;
  return {h.constant, std::sqrt(sq)};
}

// constant + sum |alpha| over canonical terms; an upper bound on C_max for
// problems too large to enumerate.
inline double c_max_upper_bound(const KLocalCost& h) {
  validate_klocal(h);
  std::map<std::uint64_t, double> merged;
  for (const auto& t : h.terms) merged[t.support] += t.alpha;
  double total = 0.0;
  for (const auto& [support, alpha] : merged) total += std::abs(alpha);
  return h.constant + total;
}

inline CoefficientStats cost_stats_from_coefficients(
    const KLocalCost& h, const FeasibleSet& feasible) {
  if (feasible.kind != FeasibleKind::FullSpace)
    throw std::invalid_argument(
        "coefficient statistics require an unconstrained problem");
  return cost_stats_from_coefficients(h);
}

// Evaluates the cost on every feasible string. Values must land on
// non-negative integers; anything else fails validation.
inline CostSpectrum enumerate_spectrum(const KLocalCost& h,
                                       const FeasibleSet& feasible,
                                       const Limits& limits = default_limits()) {
  validate_klocal(h);
  if (feasible.n != h.n) throw std::invalid_argument("qubit count mismatch");
  if (feasible.size() > limits.max_feasible ||
      (feasible.kind == FeasibleKind::FullSpace &&
       h.n > limits.enumeration_qubits))
    throw LimitError("enumeration limit exceeded");
  const std::uint64_t count = feasible.size();
  std::vector<std::int64_t> values(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double v = h.evaluate(feasible.bitstring(i));
    const double rounded = std::round(v);
    if (std::abs(v - rounded) > 1e-9 || rounded < 0.0)
      throw std::invalid_argument(
          "cost function is not non-negative-integer valued");
    values[i] = static_cast<std::int64_t>(rounded);
  }
  return make_cost_spectrum(feasible, std::move(values));
}

inline CostSpectrum enumerate_spectrum(const KLocalCost& h,
                                       const Limits& limits = default_limits()) {
  return enumerate_spectrum(h, FeasibleSet::full(h.n), limits);
}

// ---------------------------------------------------------------------------
// Max-Cut

struct MaxCutProblem {
  KLocalCost cost;
  std::optional<CostSpectrum> spectrum;  // present when n fits the limits
};

// C(z) = sum_e w_e/2 (1 - Z_u Z_v): constant sum w_e/2 and one term of
// weight w_e/2 per edge. The spectrum is enumerated by direct cut counting,
// exactly in integers.
inline MaxCutProblem maxcut_cost(const Graph& g,
                                 const Limits& limits = default_limits()) {
  validate_graph(g);
  MaxCutProblem out;
  out.cost.n = g.n_vertices;
  out.cost.constant = static_cast<double>(g.total_weight()) / 2.0;
  out.cost.terms.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    out.cost.terms.push_back(
        {static_cast<double>(e.weight) / 2.0,
         (std::uint64_t{1} << e.u) | (std::uint64_t{1} << e.v)});
  }
  if (g.n_vertices <= limits.enumeration_qubits) {
    const std::uint64_t count = std::uint64_t{1} << g.n_vertices;
    std::vector<std::int64_t> values(count);
    for (std::uint64_t z = 0; z < count; ++z) values[z] = cut_value(g, z);
    out.spectrum =
        make_cost_spectrum(FeasibleSet::full(g.n_vertices), std::move(values));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search sets

enum class SearchTag { Generic, Dist3, HammingK };

struct SearchSet {
  int n = 0;
  std::vector<std::uint64_t> marked;  // sorted, duplicate-free
  SearchTag tag = SearchTag::Generic;
  int hamming_k = -1;
  // Generator bookkeeping: how many strings were asked for when the
  // generator could not reach the target.
  std::uint64_t requested = 0;
  bool shortfall = false;

  std::uint64_t m() const { return marked.size(); }
};

inline bool pairwise_distance_at_least_3(
    const std::vector<std::uint64_t>& strings) {
  for (std::size_t i = 0; i < strings.size(); ++i)
    for (std::size_t j = i + 1; j < strings.size(); ++j)
      if (std::popcount(strings[i] ^ strings[j]) < 3) return false;
  return true;
}

inline void validate_search_set(const SearchSet& s) {
  if (s.n < 0 || s.n > 63) throw std::invalid_argument("qubit count out of range");
  if (!std::is_sorted(s.marked.begin(), s.marked.end()) ||
      std::adjacent_find(s.marked.begin(), s.marked.end()) != s.marked.end())
    throw std::invalid_argument("marked list must be sorted and duplicate-free");
  for (std::uint64_t z : s.marked)
    if (s.n < 64 && (z >> s.n) != 0)
      throw std::invalid_argument("marked string does not fit in n bits");
  if (s.tag == SearchTag::Dist3 && !pairwise_distance_at_least_3(s.marked))
    throw std::invalid_argument("marked set is not pairwise distance-3");
  if (s.tag == SearchTag::HammingK) {
    if (s.hamming_k < 0 || s.hamming_k > s.n)
      throw std::invalid_argument("hamming weight out of range");
    if (s.marked.size() != binomial(s.n, s.hamming_k))
      throw std::invalid_argument("hamming-k set is incomplete");
    for (std::uint64_t z : s.marked)
      if (std::popcount(z) != s.hamming_k)
        throw std::invalid_argument("marked string has the wrong weight");
  }
}

inline SearchSet make_search_set(int n, std::vector<std::uint64_t> marked,
                                 SearchTag tag = SearchTag::Generic,
                                 int hamming_k = -1) {
  std::sort(marked.begin(), marked.end());
  SearchSet s;
  s.n = n;
  s.marked = std::move(marked);
  s.tag = tag;
  s.hamming_k = hamming_k;
  validate_search_set(s);
  return s;
}

// Complete Hamming-weight-k layer; m = C(n, k).
inline SearchSet gen_hamming_k_set(int n, int k) {
  auto layer = FeasibleSet::hamming_weight(n, k);
  return make_search_set(n, std::move(layer.strings), SearchTag::HammingK, k);
}

// Greedy randomized distance-3 set: scan a seeded shuffle of the cube and
// keep strings far enough from everything kept so far. May return fewer
// than requested; that is reported, not an error.
inline SearchSet gen_dist3_set(int n, std::uint64_t m_target,
                               std::uint64_t seed,
                               const Limits& limits = default_limits()) {
  if (m_target < 1) throw std::invalid_argument("m_target must be at least 1");
  if (n < 1 || n > limits.enumeration_qubits)
    throw LimitError("enumeration limit exceeded");
  std::vector<std::uint64_t> candidates(std::uint64_t{1} << n);
  std::iota(candidates.begin(), candidates.end(), std::uint64_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(candidates.begin(), candidates.end(), rng);

  std::vector<std::uint64_t> kept;
  for (std::uint64_t z : candidates) {
    if (kept.size() >= m_target) break;
    bool ok = true;
    for (std::uint64_t w : kept) {
      if (std::popcount(z ^ w) < 3) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(z);
  }
  auto set = make_search_set(n, std::move(kept), SearchTag::Dist3);
  set.requested = m_target;
  set.shortfall = set.marked.size() < m_target;
  return set;
}

// Indicator spectrum of the marked set over the full cube.
inline CostSpectrum search_cost(const SearchSet& s,
                                const Limits& limits = default_limits()) {
  validate_search_set(s);
  if (s.marked.empty())
    throw std::invalid_argument("empty marked set is not a search problem");
  if (s.n > limits.enumeration_qubits)
    throw LimitError("enumeration limit exceeded");
  std::vector<std::int64_t> values(std::uint64_t{1} << s.n, 0);
  for (std::uint64_t z : s.marked) values[z] = 1;
  return make_cost_spectrum(FeasibleSet::full(s.n), std::move(values));
}

// sigma_C = sqrt(m(N-m))/N for an indicator cost, without enumeration.
inline double search_sigma(std::uint64_t big_n, std::uint64_t m) {
  if (m > big_n) throw std::invalid_argument("more marked states than states");
  const double nn = static_cast<double>(big_n);
  return std::sqrt(static_cast<double>(m) * static_cast<double>(big_n - m)) /
         nn;
}

}  // namespace qrb
