#include <catch2/catch_amalgamated.hpp>
#include <bit>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "qrb/mixers.hpp"

using qrb::Complex;
using qrb::CostSpectrum;
using qrb::FeasibleSet;
using qrb::Graph;
using qrb::KLocalCost;
using qrb::PauliSum;
using Catch::Approx;

namespace {

KLocalCost random_strictly_k_local(int n, int k, int n_terms,
                                   std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> mask(
      1, (std::uint64_t{1} << n) - 1);
  std::uniform_int_distribution<int> weight(1, 3);
  std::uniform_int_distribution<int> sign(0, 1);
  KLocalCost h;
  h.n = n;
  for (int t = 0; t < n_terms; ++t) {
    std::uint64_t support = mask(rng);
    while (std::popcount(support) != k) support = mask(rng);
    const double w = weight(rng);
    const double s = sign(rng) ? 1.0 : -1.0;
    h.constant += w / 2.0;
    h.terms.push_back({s * w / 2.0, support});
  }
  return h;
}

CostSpectrum random_integer_spectrum(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> value(0, 12);
  std::vector<std::int64_t> values(std::uint64_t{1} << n);
  for (auto& v : values) v = value(rng);
  return qrb::make_cost_spectrum(FeasibleSet::full(n), std::move(values));
}

}  // namespace

TEST_CASE("grover commutator norm equals sigma_C", "[mixers]") {
  SECTION("constant cost commutes") {
    auto spec = qrb::make_cost_spectrum(FeasibleSet::full(3),
                                        std::vector<std::int64_t>(8, 7));
    CHECK(qrb::grover_commutator_norm(spec) == 0.0);
  }
  SECTION("P3 Max-Cut") {
    Graph p3{3, {{0, 1, 1}, {1, 2, 1}}};
    const auto problem = qrb::maxcut_cost(p3);
    const double norm = qrb::grover_commutator_norm(*problem.spectrum);
    CHECK(norm == Approx(std::sqrt(0.5)).margin(1e-12));
    CHECK(norm == Approx(0.70711).margin(5e-6));
    const double dense =
        qrb::spectral_norm(qrb::grover_commutator_dense(*problem.spectrum));
    CHECK(norm == Approx(dense).margin(1e-9));
  }
  SECTION("search with n=2, m=1 against the dense 4x4 commutator") {
    const auto spec = qrb::search_cost(qrb::make_search_set(2, {2}));
    const double dense =
        qrb::spectral_norm(qrb::grover_commutator_dense(spec));
    CHECK(qrb::grover_commutator_norm(spec) ==
          Approx(dense).margin(1e-12));
    CHECK(dense == Approx(std::sqrt(3.0) / 4.0).margin(1e-12));
  }
  SECTION("random integer spectra agree with the dense eigensolve") {
    std::mt19937_64 rng(611);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 7);  // up to 8
      const auto spec = random_integer_spectrum(n, rng);
      const double closed = qrb::grover_commutator_norm(spec);
      const double dense =
          qrb::spectral_norm(qrb::grover_commutator_dense(spec));
      CHECK(closed == Approx(dense).margin(1e-9));
    }
  }
  SECTION("constrained feasible sets work the same way") {
    auto layer = FeasibleSet::hamming_weight(4, 2);
    std::vector<std::int64_t> values = {3, 1, 4, 1, 5, 2};
    const auto spec = qrb::make_cost_spectrum(layer, std::move(values));
    const double closed = qrb::grover_commutator_norm(spec);
    const double dense =
        qrb::spectral_norm(qrb::grover_commutator_dense(spec));
    CHECK(closed == Approx(dense).margin(1e-12));
  }
}

TEST_CASE("transverse-field commutator structure", "[mixers]") {
  SECTION("single Z term") {
    KLocalCost h{1, 1.0, {{1.0, 0b1}}};
    const auto comm = qrb::tf_commutator(h);
    REQUIRE(comm.size() == 1);
    CHECK(std::abs(comm.coefficient(1, 1)) == Approx(1.0).margin(1e-15));
    CHECK(qrb::spectral_norm(qrb::to_dense(comm)) == Approx(1.0).margin(1e-12));
  }
  SECTION("P3 Max-Cut yields four strings, verified dense") {
    Graph p3{3, {{0, 1, 1}, {1, 2, 1}}};
    const auto problem = qrb::maxcut_cost(p3);
    const auto comm = qrb::tf_commutator(problem.cost);
    CHECK(comm.size() == 4);

    const auto generic = qrb::commutator(
        qrb::to_pauli_sum(problem.cost),
        qrb::transverse_field_hamiltonian(3));
    const Eigen::MatrixXcd diff =
        qrb::to_dense(comm) - qrb::to_dense(generic);
    CHECK(diff.cwiseAbs().maxCoeff() <= 1e-12);

    const Eigen::MatrixXcd dense_diff =
        qrb::to_dense(comm) - qrb::tf_commutator_dense(*problem.spectrum);
    CHECK(dense_diff.cwiseAbs().maxCoeff() <= 1e-12);
  }
  SECTION("term count never exceeds k*m") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 6);
      const int k = 2 + static_cast<int>(rng() % 3);
      const auto h = random_strictly_k_local(n, std::min(k, n), 5, rng);
      const auto comm = qrb::tf_commutator(h);
      CHECK(comm.size() <=
            static_cast<std::size_t>(h.locality()) * h.terms.size());
    }
  }
}

TEST_CASE("closed-form search norms match dense eigensolves", "[mixers]") {
  SECTION("one marked state on the n=4 hypercube") {
    const auto set = qrb::make_search_set(4, {5}, qrb::SearchTag::Dist3);
    CHECK(qrb::tf_search_dist3_norm(4) == Approx(1.0).margin(1e-15));
    const auto spec = qrb::search_cost(set);
    CHECK(qrb::spectral_norm(qrb::tf_commutator_dense(spec)) ==
          Approx(1.0).margin(1e-8));
  }
  SECTION("fixed values") {
    CHECK(qrb::tf_search_dist3_norm(9) == Approx(1.5).margin(1e-15));
    CHECK(qrb::tf_search_dist3_norm(1) == Approx(0.5).margin(1e-15));
    CHECK(qrb::tf_hamming_k_norm(4, 2) ==
          Approx(std::sqrt(12.0) / 2.0).margin(1e-15));
    CHECK(qrb::tf_hamming_k_norm(2, 1) == Approx(1.0).margin(1e-15));
  }
  SECTION("hamming norm is symmetric in k and n-k") {
    for (int n = 3; n <= 10; ++n)
      for (int k = 1; k < n; ++k)
        CHECK(qrb::tf_hamming_k_norm(n, k) ==
              Approx(qrb::tf_hamming_k_norm(n, n - k)).margin(1e-15));
  }
  SECTION("k out of range") {
    CHECK_THROWS_AS(qrb::tf_hamming_k_norm(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(qrb::tf_hamming_k_norm(4, 4), std::invalid_argument);
  }
  SECTION("dist-3 norms are independent of m and match dense") {
    std::mt19937_64 rng(33);
    for (int n = 4; n <= 8; ++n) {
      for (std::uint64_t target : {1, 2, 4}) {
        const auto set = qrb::gen_dist3_set(n, target, rng());
        const auto spec = qrb::search_cost(set);
        const double dense =
            qrb::spectral_norm(qrb::tf_commutator_dense(spec));
        CHECK(dense == Approx(qrb::tf_search_dist3_norm(n)).margin(1e-8));
      }
    }
  }
  SECTION("hamming layer norms match dense for n <= 8") {
    for (int n = 2; n <= 8; ++n) {
      for (int k = 1; k < n; ++k) {
        const auto spec = qrb::search_cost(qrb::gen_hamming_k_set(n, k));
        const double dense =
            qrb::spectral_norm(qrb::tf_commutator_dense(spec));
        CHECK(dense == Approx(qrb::tf_hamming_k_norm(n, k)).margin(1e-8));
      }
    }
  }
}

TEST_CASE("graph spectra", "[mixers]") {
  SECTION("star radius is sqrt(n)") {
    for (int n = 1; n <= 10; ++n)
      CHECK(qrb::spectral_radius(qrb::star_adjacency(n)) ==
            Approx(std::sqrt(static_cast<double>(n))).margin(1e-8));
  }
  SECTION("layer radius is sqrt(2k(n-k)+n)") {
    for (int n = 2; n <= 10; ++n)
      for (int k = 1; k < n; ++k)
        CHECK(qrb::spectral_radius(qrb::hypercube_layer_adjacency(n, k)) ==
              Approx(std::sqrt(2.0 * k * (n - k) + n)).margin(1e-8));
  }
}

TEST_CASE("witness product state", "[mixers]") {
  SECTION("k=2 Max-Cut witness equals the traceless norm") {
    Graph p3{3, {{0, 1, 1}, {1, 2, 1}}};
    const auto problem = qrb::maxcut_cost(p3);
    const auto best = qrb::max_abs_eigenstring(problem.cost);
    CHECK(best.norm == Approx(1.0).margin(1e-12));
    CHECK(best.bitstring == 0);

    const auto witness =
        qrb::s_star_witness(problem.cost, best.bitstring, 2);
    CHECK(qrb::witness_factor(2) == Approx(1.0).margin(1e-15));
    CHECK(witness.value == Approx(best.norm).margin(1e-9));

    const double dense_norm =
        qrb::spectral_norm(qrb::to_dense(qrb::tf_commutator(problem.cost)));
    CHECK(dense_norm >= witness.value - 1e-9);
  }
  SECTION("per-qubit Y expectation is <s|Z|s>/sqrt(2) at k=2") {
    Graph p3{3, {{0, 1, 1}, {1, 2, 1}}};
    const auto problem = qrb::maxcut_cost(p3);
    for (std::uint64_t s : {0ull, 5ull, 7ull}) {
      const auto witness = qrb::s_star_witness(problem.cost, s, 2);
      for (int j = 0; j < 3; ++j) {
        PauliSum yj(3);
        yj.add(std::uint64_t{1} << j, std::uint64_t{1} << j, {1.0, 0.0});
        const double expected =
            (((s >> j) & 1) ? -1.0 : 1.0) / std::sqrt(2.0);
        CHECK(qrb::expectation(yj, witness.amplitudes) ==
              Approx(expected).margin(1e-12));
      }
    }
  }
  SECTION("k=3 single-term ratio is sqrt(3) * 2/3") {
    KLocalCost h{3, 1.0, {{1.0, 0b111}}};
    const auto best = qrb::max_abs_eigenstring(h);
    const auto witness = qrb::s_star_witness(h, best.bitstring, 3);
    CHECK(witness.value / best.norm ==
          Approx(std::sqrt(3.0) * 2.0 / 3.0).margin(1e-9));
    CHECK(witness.value / best.norm == Approx(1.1547).margin(5e-5));
    const double dense_norm =
        qrb::spectral_norm(qrb::to_dense(qrb::tf_commutator(h)));
    CHECK(dense_norm >= witness.value - 1e-9);
  }
  SECTION("witness chain holds on random strictly k-local instances") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 15; ++trial) {
      const int k = 2 + static_cast<int>(rng() % 3);
      const int n = k + 1 + static_cast<int>(rng() % (7 - k));
      const auto h = random_strictly_k_local(n, k, 2 + rng() % 5, rng);
      const auto best = qrb::max_abs_eigenstring(h);
      const auto witness = qrb::s_star_witness(h, best.bitstring, k);
      CHECK(witness.value ==
            Approx(best.norm * qrb::witness_factor(k)).margin(1e-9));
      const double dense_norm =
          qrb::spectral_norm(qrb::to_dense(qrb::tf_commutator(h)));
      CHECK(dense_norm >= witness.value - 1e-9);
      CHECK(witness.value >= best.norm - 1e-9);
    }
  }
  SECTION("rejects k=1 and loosely local input") {
    KLocalCost h{2, 1.0, {{1.0, 0b1}}};
    CHECK_THROWS_AS(qrb::s_star_witness(h, 0, 1), std::invalid_argument);
    KLocalCost mixed{3, 1.5, {{0.5, 0b11}, {1.0, 0b111}}};
    CHECK_THROWS_AS(qrb::s_star_witness(mixed, 0, 2), std::invalid_argument);
  }
}

TEST_CASE("norm dispatch routes and provenance", "[mixers]") {
  Graph p3{3, {{0, 1, 1}, {1, 2, 1}}};
  const auto problem = qrb::maxcut_cost(p3);
  const qrb::MixerSpec grover = qrb::GroverMixer{FeasibleSet::full(3)};
  const qrb::MixerSpec tf = qrb::TransverseFieldMixer{3};

  SECTION("grover routes to the sigma closed form") {
    const auto result = qrb::commutator_norm(*problem.spectrum, grover);
    CHECK(result.value == Approx(std::sqrt(0.5)).margin(1e-12));
    CHECK(result.provenance == "closed-form:grover-sigma");
    const auto coeff = qrb::commutator_norm(problem.cost, grover);
    CHECK(coeff.value == Approx(result.value).margin(1e-12));
    CHECK(coeff.provenance == "closed-form:grover-sigma-coefficients");
  }
  SECTION("dist-3 search routes to the star closed form") {
    const auto set = qrb::make_search_set(5, {0}, qrb::SearchTag::Dist3);
    const auto result = qrb::commutator_norm(set, tf);
    CHECK(result.value == Approx(std::sqrt(5.0) / 2.0).margin(1e-12));
    CHECK(result.provenance == "closed-form:dist3-star");
  }
  SECTION("generic transverse field goes numeric and dominates the witness") {
    const auto result = qrb::commutator_norm(problem.cost, tf);
    CHECK(result.provenance == "numeric:dense");
    const auto best = qrb::max_abs_eigenstring(problem.cost);
    const auto witness = qrb::s_star_witness(problem.cost, best.bitstring, 2);
    CHECK(result.value >= witness.value - 1e-9);
  }
  SECTION("numeric route matches the closed form for structured sets") {
    const auto set = qrb::gen_hamming_k_set(5, 2);
    const auto closed = qrb::commutator_norm(set, tf);
    auto untagged = qrb::make_search_set(5, set.marked);
    const auto numeric = qrb::commutator_norm(untagged, tf);
    CHECK(numeric.provenance == "numeric:dense");
    CHECK(numeric.value == Approx(closed.value).margin(1e-8));
  }
}
