#include <catch2/catch_amalgamated.hpp>
#include <bit>
#include <cmath>
#include <random>

#include "qrb/problems.hpp"

using qrb::FeasibleSet;
using qrb::Graph;
using qrb::KLocalCost;
using qrb::Rational;
using qrb::SearchSet;
using Catch::Approx;

namespace {

// Random unconstrained cost with non-negative integer values: each term
// rewards one parity of its support with an integer weight.
KLocalCost random_integer_klocal(int n, int k, int n_terms,
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

Graph random_graph(int n, double edge_prob, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Graph g;
  g.n_vertices = n;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (u(rng) < edge_prob) g.edges.push_back({a, b, 1});
  return g;
}

}  // namespace

TEST_CASE("max-cut construction", "[problems]") {
  SECTION("path P3") {
    Graph p3{3, {{0, 1, 1}, {1, 2, 1}}};
    const auto problem = qrb::maxcut_cost(p3);
    CHECK(problem.cost.constant == 1.0);
    REQUIRE(problem.cost.terms.size() == 2);
    CHECK(problem.cost.terms[0].alpha == 0.5);
    CHECK(problem.cost.terms[0].support == 0b011);
    CHECK(problem.cost.terms[1].support == 0b110);

    REQUIRE(problem.spectrum.has_value());
    const std::vector<std::int64_t> expected = {0, 1, 2, 1, 1, 2, 1, 0};
    CHECK(problem.spectrum->values == expected);
    const auto& stats = problem.spectrum->stats;
    CHECK(stats.c_max == 2);
    CHECK(stats.c_avg == Rational(1));
    CHECK(stats.variance == Rational(1, 2));
    CHECK(stats.sigma() == Approx(std::sqrt(0.5)).margin(1e-15));
  }
  SECTION("triangle K3") {
    Graph k3{3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}};
    const auto problem = qrb::maxcut_cost(k3);
    const auto& stats = problem.spectrum->stats;
    CHECK(stats.c_max == 2);
    CHECK(stats.c_avg == Rational(3, 2));
    CHECK(stats.variance == Rational(3, 4));
    CHECK(stats.sigma() == Approx(std::sqrt(3.0) / 2.0).margin(1e-15));
  }
  SECTION("empty graph") {
    Graph empty{3, {}};
    const auto problem = qrb::maxcut_cost(empty);
    CHECK(problem.cost.constant == 0.0);
    CHECK(problem.cost.terms.empty());
    for (auto v : problem.spectrum->values) CHECK(v == 0);
  }
  SECTION("graph validation") {
    CHECK_THROWS_AS(qrb::validate_graph(Graph{2, {{0, 0, 1}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(qrb::validate_graph(Graph{2, {{0, 1, 1}, {1, 0, 1}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(qrb::validate_graph(Graph{2, {{0, 3, 1}}}),
                    std::invalid_argument);
  }
  SECTION("unweighted statistics are |E|/2 and |E|/4 exactly") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 10);  // up to 12
      const auto g = random_graph(n, 0.4, rng);
      const auto problem = qrb::maxcut_cost(g);
      REQUIRE(problem.spectrum.has_value());
      const std::int64_t e = static_cast<std::int64_t>(g.edges.size());
      CHECK(problem.spectrum->stats.c_avg == Rational(e, 2));
      CHECK(problem.spectrum->stats.variance == Rational(e, 4));
    }
  }
  SECTION("weighted statistics follow the coefficient closed form") {
    Graph g{4, {{0, 1, 3}, {1, 2, 2}, {2, 3, 1}, {0, 3, 5}}};
    const auto problem = qrb::maxcut_cost(g);
    // sum w / 2 and sum w^2 / 4
    CHECK(problem.spectrum->stats.c_avg == Rational(11, 2));
    CHECK(problem.spectrum->stats.variance == Rational(9 + 4 + 1 + 25, 4));
    const auto coeff = qrb::cost_stats_from_coefficients(problem.cost);
    CHECK(coeff.sigma ==
          Approx(problem.spectrum->stats.sigma()).margin(1e-12));
  }
}

TEST_CASE("brute-force statistics", "[problems]") {
  SECTION("constant cost has zero variance") {
    auto spec = qrb::make_cost_spectrum(FeasibleSet::full(4),
                                        std::vector<std::int64_t>(16, 5));
    CHECK(spec.stats.c_max == 5);
    CHECK(spec.stats.c_avg == Rational(5));
    CHECK(spec.stats.variance == Rational(0));
  }
  SECTION("search indicator with m=1, N=4") {
    const auto set = qrb::make_search_set(2, {3});
    const auto spec = qrb::search_cost(set);
    CHECK(spec.stats.c_max == 1);
    CHECK(spec.stats.c_avg == Rational(1, 4));
    CHECK(spec.stats.variance == Rational(3, 16));
    CHECK(spec.stats.sigma() == Approx(std::sqrt(3.0) / 4.0).margin(1e-15));
    CHECK(spec.stats.sigma() == Approx(0.43301).margin(5e-6));
  }
  SECTION("empty spectra are rejected") {
    CHECK_THROWS_AS(
        qrb::make_cost_spectrum(FeasibleSet::explicit_set(2, {}), {}),
        std::invalid_argument);
  }
}

TEST_CASE("coefficient statistics", "[problems]") {
  SECTION("single term") {
    KLocalCost h{1, 3.0, {{3.0, 0b1}}};
    const auto stats = qrb::cost_stats_from_coefficients(h);
    CHECK(stats.c_avg == 3.0);
    CHECK(stats.sigma == 3.0);
  }
  SECTION("P3 equals the brute-force route") {
    Graph p3{3, {{0, 1, 1}, {1, 2, 1}}};
    const auto problem = qrb::maxcut_cost(p3);
    const auto coeff = qrb::cost_stats_from_coefficients(problem.cost);
    CHECK(coeff.c_avg == 1.0);
    CHECK(coeff.sigma == Approx(std::sqrt(0.5)).margin(1e-15));
  }
  SECTION("12 unit edges give sigma sqrt(3)") {
    // 3-regular graph on 8 vertices: cube graph.
    Graph cube{8, {}};
    const auto add = [&](int a, int b) { cube.edges.push_back({a, b, 1}); };
    add(0, 1); add(1, 2); add(2, 3); add(3, 0);
    add(4, 5); add(5, 6); add(6, 7); add(7, 4);
    add(0, 4); add(1, 5); add(2, 6); add(3, 7);
    const auto problem = qrb::maxcut_cost(cube);
    const auto coeff = qrb::cost_stats_from_coefficients(problem.cost);
    CHECK(coeff.sigma == Approx(std::sqrt(3.0)).margin(1e-12));
    CHECK(problem.spectrum->stats.sigma() ==
          Approx(std::sqrt(3.0)).margin(1e-12));
  }
  SECTION("duplicate supports merge before squaring") {
    KLocalCost h{2, 2.0, {{1.0, 0b11}, {0.5, 0b11}}};
    const auto stats = qrb::cost_stats_from_coefficients(h);
    CHECK(stats.sigma == Approx(1.5).margin(1e-15));
  }
  SECTION("constrained sets are rejected") {
    KLocalCost h{3, 1.0, {{0.5, 0b11}}};
    CHECK_THROWS_AS(
        qrb::cost_stats_from_coefficients(h, FeasibleSet::hamming_weight(3, 1)),
        std::invalid_argument);
  }
  SECTION("coefficient and brute-force routes agree on random instances") {
    std::mt19937_64 rng(9091);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 8);  // up to 10
      const int k = 2 + static_cast<int>(rng() % 3);
      const auto h = random_integer_klocal(n, k, 3 + rng() % 8, rng);
      const auto spec = qrb::enumerate_spectrum(h);
      const auto coeff = qrb::cost_stats_from_coefficients(h);
      CHECK(coeff.c_avg == qrb::to_double(spec.stats.c_avg));
      CHECK(coeff.sigma == Approx(spec.stats.sigma()).margin(1e-9));
      CHECK(qrb::c_max_upper_bound(h) >=
            static_cast<double>(spec.stats.c_max) - 1e-12);
    }
  }
}

TEST_CASE("search costs", "[problems]") {
  SECTION("all marked means zero variance") {
    const auto set = qrb::make_search_set(2, {0, 1, 2, 3});
    const auto spec = qrb::search_cost(set);
    CHECK(spec.stats.variance == Rational(0));
  }
  SECTION("n=10 single marked state") {
    const auto set = qrb::make_search_set(10, {123});
    const auto spec = qrb::search_cost(set);
    CHECK(spec.stats.c_avg == Rational(1, 1024));
    CHECK(spec.stats.sigma() ==
          Approx(std::sqrt(1023.0) / 1024.0).margin(1e-15));
    CHECK(qrb::search_sigma(1024, 1) ==
          Approx(spec.stats.sigma()).margin(1e-15));
  }
  SECTION("hamming-2 layer of n=4") {
    const auto set = qrb::gen_hamming_k_set(4, 2);
    CHECK(set.m() == 6);
    const auto spec = qrb::search_cost(set);
    CHECK(spec.stats.c_avg == Rational(6, 16));
    CHECK(spec.stats.sigma() == Approx(std::sqrt(60.0) / 16.0).margin(1e-15));
  }
  SECTION("empty marked set is rejected") {
    SearchSet s;
    s.n = 3;
    CHECK_THROWS_AS(qrb::search_cost(s), std::invalid_argument);
  }
  SECTION("closed-form sigma is exact against enumeration") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 11);  // up to 12
      const std::uint64_t big_n = std::uint64_t{1} << n;
      const std::uint64_t m = 1 + rng() % big_n;
      std::vector<std::uint64_t> marked(big_n);
      std::iota(marked.begin(), marked.end(), std::uint64_t{0});
      std::shuffle(marked.begin(), marked.end(), rng);
      marked.resize(m);
      const auto spec = qrb::search_cost(qrb::make_search_set(n, marked));
      const Rational expected(qrb::BigInt(m) * (big_n - m),
                              qrb::BigInt(big_n) * big_n);
      CHECK(spec.stats.variance == expected);
    }
  }
}

TEST_CASE("search set generators", "[problems]") {
  SECTION("hamming layers") {
    const auto k0 = qrb::gen_hamming_k_set(4, 0);
    CHECK(k0.m() == 1);
    CHECK(k0.marked == std::vector<std::uint64_t>{0});
    CHECK(qrb::gen_hamming_k_set(4, 2).m() == 6);
    CHECK(qrb::gen_hamming_k_set(16, 8).m() == 12870);
  }
  SECTION("single target is always placeable") {
    const auto set = qrb::gen_dist3_set(4, 1, 42);
    CHECK(set.m() == 1);
    CHECK_FALSE(set.shortfall);
  }
  SECTION("the Hamming(7,4) code is a valid distance-3 set") {
    // Codewords from the standard generator matrix.
    std::vector<std::uint64_t> codewords;
    const std::uint64_t rows[4] = {0b1110000, 0b1001100, 0b0101010, 0b1101001};
    for (int msg = 0; msg < 16; ++msg) {
      std::uint64_t word = 0;
      for (int b = 0; b < 4; ++b)
        if ((msg >> b) & 1) word ^= rows[b];
      codewords.push_back(word);
    }
    CHECK(qrb::pairwise_distance_at_least_3(codewords));
    const auto set = qrb::make_search_set(7, codewords, qrb::SearchTag::Dist3);
    CHECK(set.m() == 16);
  }
  SECTION("unreachable targets report a shortfall") {
    const auto set = qrb::gen_dist3_set(4, 100, 7);
    CHECK(set.shortfall);
    CHECK(set.m() < 100);
    CHECK(set.m() >= 1);
    CHECK(qrb::pairwise_distance_at_least_3(set.marked));
  }
  SECTION("generator is deterministic under its seed") {
    const auto a = qrb::gen_dist3_set(8, 6, 1234);
    const auto b = qrb::gen_dist3_set(8, 6, 1234);
    CHECK(a.marked == b.marked);
    const auto c = qrb::gen_dist3_set(8, 6, 1235);
    CHECK((c.marked != a.marked || c.m() != a.m() || true));
    CHECK(qrb::pairwise_distance_at_least_3(a.marked));
  }
  SECTION("dist3 outputs always pass the validator") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 4 + static_cast<int>(rng() % 7);
      const auto set = qrb::gen_dist3_set(n, 1 + rng() % 10, rng());
      CHECK(qrb::pairwise_distance_at_least_3(set.marked));
    }
  }
}

TEST_CASE("feasible sets", "[problems]") {
  SECTION("full space") {
    const auto f = FeasibleSet::full(3);
    CHECK(f.size() == 8);
    CHECK(f.bitstring(5) == 5);
    CHECK(f.index_of(7).value() == 7);
  }
  SECTION("weight layer of n=3") {
    const auto f = FeasibleSet::hamming_weight(3, 1);
    REQUIRE(f.size() == 3);
    CHECK(f.strings == std::vector<std::uint64_t>{1, 2, 4});
    CHECK(f.index_of(2).value() == 1);
    CHECK_FALSE(f.index_of(3).has_value());
  }
  SECTION("explicit lists are sorted and duplicate-free") {
    const auto f = FeasibleSet::explicit_set(3, {6, 1, 3});
    CHECK(f.strings == std::vector<std::uint64_t>{1, 3, 6});
    CHECK_THROWS_AS(FeasibleSet::explicit_set(3, {1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(FeasibleSet::explicit_set(2, {7}), std::invalid_argument);
  }
  SECTION("binomial sizes") {
    CHECK(qrb::binomial(16, 8) == 12870);
    CHECK(FeasibleSet::hamming_weight(16, 8).size() == 12870);
  }
}

TEST_CASE("cost evaluation and validation", "[problems]") {
  SECTION("non-integer costs fail enumeration") {
    KLocalCost h{2, 0.3, {{0.3, 0b1}}};
    CHECK_THROWS_AS(qrb::enumerate_spectrum(h), std::invalid_argument);
  }
  SECTION("negative costs fail enumeration") {
    KLocalCost h{2, 0.0, {{1.0, 0b1}}};
    CHECK_THROWS_AS(qrb::enumerate_spectrum(h), std::invalid_argument);
  }
  SECTION("enumeration limit") {
    KLocalCost h{30, 1.0, {{0.5, 0b11}}};
    CHECK_THROWS_AS(qrb::enumerate_spectrum(h), std::invalid_argument);
  }
  SECTION("locality and occurrence counts") {
    KLocalCost h{4, 2.0, {{0.5, 0b0111}, {0.5, 0b1001}, {0.5, 0b0001}}};
    CHECK(h.locality() == 3);
    CHECK(h.max_occurrence() == 3);  // qubit 0 sits in all three terms
    CHECK_FALSE(h.strictly_k_local(3));
  }
}
