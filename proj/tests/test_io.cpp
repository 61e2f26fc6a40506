#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "qrb/io.hpp"

using qrb::Complex;
using qrb::Json;
using qrb::ParseError;
using Catch::Approx;

TEST_CASE("bitstring round trips", "[io]") {
  CHECK(qrb::format_bitstring(0b0101, 4) == "0101");
  CHECK(qrb::parse_bitstring("0101", 4) == 0b0101);
  CHECK(qrb::parse_bitstring("1000", 4) == 8);
  CHECK_THROWS_AS(qrb::parse_bitstring("012", 3), ParseError);
  CHECK_THROWS_AS(qrb::parse_bitstring("01", 3), ParseError);
}

TEST_CASE("pauli sum json schema", "[io]") {
  qrb::PauliSum sum(3);
  sum.add(0b001, 0b011, Complex{0.5, -0.25});
  sum.add(0, 0, Complex{1.5, 0.0});
  const Json j = qrb::pauli_sum_to_json(sum);
  CHECK(j.at("n") == 3);
  REQUIRE(j.at("terms").size() == 2);
  CHECK(j.at("terms")[0].contains("x_mask"));
  CHECK(j.at("terms")[0].contains("z_mask"));
  CHECK(j.at("terms")[0].contains("re"));
  CHECK(j.at("terms")[0].contains("im"));

  const auto back = qrb::pauli_sum_from_json(j);
  CHECK(back.n == 3);
  CHECK(back.coefficient(0b001, 0b011) == Complex{0.5, -0.25});
  CHECK(back.coefficient(0, 0) == Complex{1.5, 0.0});
}

TEST_CASE("graph text parsing", "[io]") {
  SECTION("plain file with weights") {
    std::istringstream in("3 2\n0 1\n1 2 4\n");
    const auto g = qrb::parse_graph(in);
    CHECK(g.n_vertices == 3);
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[1].weight == 4);
    std::istringstream again(qrb::format_graph(g));
    const auto back = qrb::parse_graph(again);
    CHECK(back.edges[1].weight == 4);
  }
  SECTION("comments and blank lines are fine") {
    std::istringstream in("# a triangle\n3 3\n\n0 1\n1 2\n0 2  # last\n");
    CHECK(qrb::parse_graph(in).edges.size() == 3);
  }
  SECTION("diagnostics name the line") {
    std::istringstream in("3 2\n0 1\nx y\n");
    try {
      qrb::parse_graph(in);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SECTION("edge count mismatch is caught") {
    std::istringstream in("3 3\n0 1\n");
    CHECK_THROWS_AS(qrb::parse_graph(in), ParseError);
  }
  SECTION("self-loops are invalid") {
    std::istringstream in("2 1\n1 1\n");
    CHECK_THROWS_AS(qrb::parse_graph(in), ParseError);
  }
}

TEST_CASE("k-local cost json schema", "[io]") {
  const Json j = {{"n", 3},
                  {"constant", 1.0},
                  {"terms", Json::array({{{"alpha", 0.5}, {"qubits", {0, 1}}},
                                         {{"alpha", 0.5}, {"qubits", {1, 2}}}})}};
  const auto h = qrb::klocal_from_json(j);
  CHECK(h.n == 3);
  CHECK(h.terms[0].support == 0b011);
  CHECK(h.terms[1].support == 0b110);
  const Json back = qrb::klocal_to_json(h);
  CHECK(back.at("terms")[0].at("qubits") == Json::array({0, 1}));
  CHECK(qrb::klocal_from_json(back).evaluate(0b010) == Approx(2.0));

  CHECK_THROWS_AS(qrb::klocal_from_json(Json{{"n", 2}}), ParseError);
  const Json bad = {{"n", 2},
                    {"constant", 0.0},
                    {"terms", Json::array({{{"alpha", 1.0}, {"qubits", {5}}}})}};
  CHECK_THROWS_AS(qrb::klocal_from_json(bad), ParseError);
}

TEST_CASE("search set json forms", "[io]") {
  SECTION("explicit marked strings") {
    const Json j = {{"n", 4}, {"marked", {"0101", "1000"}}};
    const auto set = qrb::search_set_from_json(j);
    CHECK(set.marked == std::vector<std::uint64_t>{0b0101, 0b1000});
    CHECK(qrb::search_set_to_json(set).at("marked")[0] == "0101");
  }
  SECTION("hamming generator") {
    const Json j = {{"n", 4}, {"generator", "hamming-k"}, {"k", 2}};
    const auto set = qrb::search_set_from_json(j);
    CHECK(set.m() == 6);
    CHECK(set.tag == qrb::SearchTag::HammingK);
  }
  SECTION("dist3 generator is deterministic") {
    const Json j = {{"n", 6}, {"generator", "dist3"}, {"m", 3}, {"seed", 11}};
    const auto a = qrb::search_set_from_json(j);
    const auto b = qrb::search_set_from_json(j);
    CHECK(a.marked == b.marked);
    CHECK(a.tag == qrb::SearchTag::Dist3);
  }
  SECTION("tagged explicit lists are validated") {
    const Json close = {{"n", 4}, {"marked", {"0000", "0001"}}, {"tag", "dist3"}};
    CHECK_THROWS_AS(qrb::search_set_from_json(close), ParseError);
  }
}

TEST_CASE("mixer and feasible json forms", "[io]") {
  SECTION("transverse field") {
    const auto mixer = qrb::mixer_from_json(Json{{"kind", "tf"}, {"n", 5}});
    CHECK(std::get<qrb::TransverseFieldMixer>(mixer).n == 5);
  }
  SECTION("grover over a weight layer") {
    const Json j = {{"kind", "grover"},
                    {"feasible", {{"kind", "hamming-weight"}, {"n", 4}, {"q", 2}}}};
    const auto mixer = qrb::mixer_from_json(j);
    CHECK(std::get<qrb::GroverMixer>(mixer).feasible.size() == 6);
    const Json back = qrb::mixer_to_json(mixer);
    CHECK(back.at("feasible").at("q") == 2);
  }
  SECTION("explicit feasible strings round trip") {
    const auto f = qrb::FeasibleSet::explicit_set(3, {1, 6});
    const auto back = qrb::feasible_from_json(qrb::feasible_to_json(f));
    CHECK(back == f);
  }
  SECTION("unknown kinds are rejected") {
    CHECK_THROWS_AS(qrb::mixer_from_json(Json{{"kind", "xy"}}), ParseError);
  }
}

TEST_CASE("bound reports and run records", "[io]") {
  SECTION("bound report schema") {
    const auto report = qrb::grover_search_bound(1.0, 1024, 1);
    const Json j = qrb::bound_report_to_json(report);
    CHECK(j.at("formula") == "grover-search");
    CHECK(j.at("p_lower").get<double>() == Approx(report.p_lower));
    CHECK(j.at("mode") == "aposteriori");
    CHECK(j.contains("numerator"));
    CHECK(j.contains("provenance"));
    CHECK(j.at("trivial") == false);
  }
  SECTION("run records carry the schema version") {
    const auto spec = qrb::search_cost(qrb::make_search_set(2, {1}));
    const qrb::MixerSpec mixer = qrb::GroverMixer{spec.feasible};
    const auto schedule = qrb::grover_fixed_schedule(1);
    const auto result = qrb::run_qaoa(spec, mixer, schedule);
    const Json record = qrb::run_record("search-n2", mixer, schedule, result);
    CHECK(record.at("schema") == 1);
    CHECK(record.at("result").at("success_probability").get<double>() ==
          Approx(1.0).margin(1e-12));
    const auto parsed = qrb::schedule_from_json(record.at("schedule"));
    CHECK(parsed.rounds() == 1);
  }
  SECTION("identical inputs serialize to identical bytes") {
    const auto report = qrb::tf_search_dist3_bound(0.9, 12, 2);
    CHECK(qrb::bound_report_to_json(report).dump() ==
          qrb::bound_report_to_json(report).dump());
  }
}
