#pragma once

#include <json.hpp>
#include <istream>
#include <sstream>
#include <string>

#include "qrb/bounds.hpp"
#include "qrb/mixers.hpp"
#include "qrb/pauli.hpp"
#include "qrb/problems.hpp"
#include "qrb/sim.hpp"

namespace qrb {

using Json = nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Bitstrings render as standard binary: the leftmost character is the most
// significant bit, so qubit j is character n-1-j.

inline std::string format_bitstring(std::uint64_t z, int n) {
  std::string out(static_cast<std::size_t>(n), '0');
  for (int j = 0; j < n; ++j)
    if ((z >> j) & 1) out[static_cast<std::size_t>(n - 1 - j)] = '1';
  return out;
}

inline std::uint64_t parse_bitstring(const std::string& text, int n) {
  if (static_cast<int>(text.size()) != n)
    throw ParseError("bitstring '" + text + "' is not " + std::to_string(n) +
                     " characters long");
  std::uint64_t z = 0;
  for (int i = 0; i < n; ++i) {
    const char c = text[static_cast<std::size_t>(i)];
    if (c != '0' && c != '1')
      throw ParseError("bitstring '" + text + "' has a non-binary character");
    if (c == '1') z |= std::uint64_t{1} << (n - 1 - i);
  }
  return z;
}

// ---------------------------------------------------------------------------
// Pauli sums: {"n": int, "terms": [{"x_mask":, "z_mask":, "re":, "im":}]}

inline Json pauli_sum_to_json(const PauliSum& sum) {
  Json terms = Json::array();
  for (const auto& [key, c] : sum.terms) {
    terms.push_back({{"x_mask", key.first},
                     {"z_mask", key.second},
                     {"re", c.real()},
                     {"im", c.imag()}});
  }
  return Json{{"n", sum.n}, {"terms", std::move(terms)}};
}

inline PauliSum pauli_sum_from_json(const Json& j) {
  try {
    PauliSum sum(j.at("n").get<int>());
    for (const auto& term : j.at("terms")) {
      sum.add(term.at("x_mask").get<std::uint64_t>(),
              term.at("z_mask").get<std::uint64_t>(),
              Complex{term.at("re").get<double>(),
                      term.at("im").get<double>()});
    }
    return sum;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad Pauli sum: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Graph text: first line "n m", then m lines "u v [w]" with 0-indexed
// endpoints. Diagnostics carry the offending line number.

inline Graph parse_graph(std::istream& in) {
  Graph g;
  std::string line;
  int line_number = 0;
  std::size_t expected = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    if (!header_seen) {
      long long n = 0, m = 0;
      if (!(fields >> n >> m)) {
        std::string token;
        if (!(std::istringstream(line) >> token)) continue;  // blank line
        throw ParseError("line " + std::to_string(line_number) +
                         ": expected header 'n m'");
      }
      if (n < 0 || m < 0)
        throw ParseError("line " + std::to_string(line_number) +
                         ": negative header field");
      g.n_vertices = static_cast<int>(n);
      expected = static_cast<std::size_t>(m);
      header_seen = true;
      continue;
    }
    long long u = 0, v = 0, w = 1;
    if (!(fields >> u >> v)) {
      std::string token;
      if (!(std::istringstream(line) >> token)) continue;
      throw ParseError("line " + std::to_string(line_number) +
                       ": expected an edge 'u v [w]'");
    }
    fields >> w;
    g.edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
  }
  if (!header_seen) throw ParseError("line 1: missing header 'n m'");
  if (g.edges.size() != expected)
    throw ParseError("header promised " + std::to_string(expected) +
                     " edges but the file holds " +
                     std::to_string(g.edges.size()));
  try {
    validate_graph(g);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid graph: ") + e.what());
  }
  return g;
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.n_vertices << ' ' << g.edges.size() << '\n';
  for (const auto& e : g.edges) {
    out << e.u << ' ' << e.v;
    if (e.weight != 1) out << ' ' << e.weight;
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// k-local costs: {"n":, "constant":, "terms":[{"alpha":, "qubits":[...]}]}

inline Json klocal_to_json(const KLocalCost& h) {
  Json terms = Json::array();
  for (const auto& t : h.terms) {
    Json qubits = Json::array();
    for (int q = 0; q < h.n; ++q)
      if ((t.support >> q) & 1) qubits.push_back(q);
    terms.push_back({{"alpha", t.alpha}, {"qubits", std::move(qubits)}});
  }
  return Json{{"n", h.n}, {"constant", h.constant}, {"terms", std::move(terms)}};
}

inline KLocalCost klocal_from_json(const Json& j) {
  try {
    KLocalCost h;
    h.n = j.at("n").get<int>();
    h.constant = j.at("constant").get<double>();
    for (const auto& term : j.at("terms")) {
      std::uint64_t support = 0;
      for (const auto& q : term.at("qubits")) {
        const int qubit = q.get<int>();
        if (qubit < 0 || qubit >= h.n)
          throw ParseError("term qubit " + std::to_string(qubit) +
                           " out of range");
        support |= std::uint64_t{1} << qubit;
      }
      h.terms.push_back({term.at("alpha").get<double>(), support});
    }
    validate_klocal(h);
    return h;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad k-local cost: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad k-local cost: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Feasible sets

inline Json feasible_to_json(const FeasibleSet& f) {
  switch (f.kind) {
    case FeasibleKind::FullSpace:
      return Json{{"kind", "full"}, {"n", f.n}};
    case FeasibleKind::HammingWeight:
      return Json{{"kind", "hamming-weight"}, {"n", f.n}, {"q", f.weight}};
    default: {
      Json strings = Json::array();
      for (std::uint64_t z : f.strings)
        strings.push_back(format_bitstring(z, f.n));
      return Json{{"kind", "explicit"}, {"n", f.n},
                  {"strings", std::move(strings)}};
    }
  }
}

inline FeasibleSet feasible_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const int n = j.at("n").get<int>();
    if (kind == "full") return FeasibleSet::full(n);
    if (kind == "hamming-weight")
      return FeasibleSet::hamming_weight(n, j.at("q").get<int>());
    if (kind == "explicit") {
      std::vector<std::uint64_t> strings;
      for (const auto& s : j.at("strings"))
        strings.push_back(parse_bitstring(s.get<std::string>(), n));
      return FeasibleSet::explicit_set(n, std::move(strings));
    }
    throw ParseError("unknown feasible-set kind '" + kind + "'");
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad feasible set: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad feasible set: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Search sets: an explicit marked list, or a generator form.

inline Json search_set_to_json(const SearchSet& s) {
  Json marked = Json::array();
  for (std::uint64_t z : s.marked) marked.push_back(format_bitstring(z, s.n));
  Json j{{"n", s.n}, {"marked", std::move(marked)}};
  if (s.tag == SearchTag::Dist3) j["tag"] = "dist3";
  if (s.tag == SearchTag::HammingK) {
    j["tag"] = "hamming-k";
    j["k"] = s.hamming_k;
  }
  return j;
}

inline SearchSet search_set_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    if (j.contains("generator")) {
      const std::string generator = j.at("generator").get<std::string>();
      if (generator == "hamming-k")
        return gen_hamming_k_set(n, j.at("k").get<int>());
      if (generator == "dist3")
        return gen_dist3_set(n, j.at("m").get<std::uint64_t>(),
                             j.at("seed").get<std::uint64_t>());
      throw ParseError("unknown search generator '" + generator + "'");
    }
    std::vector<std::uint64_t> marked;
    for (const auto& s : j.at("marked"))
      marked.push_back(parse_bitstring(s.get<std::string>(), n));
    SearchTag tag = SearchTag::Generic;
    int k = -1;
    if (j.contains("tag")) {
      const std::string tag_name = j.at("tag").get<std::string>();
      if (tag_name == "dist3") {
        tag = SearchTag::Dist3;
      } else if (tag_name == "hamming-k") {
        tag = SearchTag::HammingK;
        k = j.at("k").get<int>();
      } else if (tag_name != "generic") {
        throw ParseError("unknown search tag '" + tag_name + "'");
      }
    }
    return make_search_set(n, std::move(marked), tag, k);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad search set: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad search set: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Mixers: {"kind":"grover","feasible":{...}} or {"kind":"tf","n":int}

inline Json mixer_to_json(const MixerSpec& mixer) {
  if (const auto* g = std::get_if<GroverMixer>(&mixer))
    return Json{{"kind", "grover"}, {"feasible", feasible_to_json(g->feasible)}};
  return Json{{"kind", "tf"}, {"n", std::get<TransverseFieldMixer>(mixer).n}};
}

inline MixerSpec mixer_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "grover")
      return GroverMixer{feasible_from_json(j.at("feasible"))};
    if (kind == "tf") return TransverseFieldMixer{j.at("n").get<int>()};
    throw ParseError("unknown mixer kind '" + kind + "'");
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad mixer: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports and run records

inline Json bound_report_to_json(const BoundReport& report) {
  Json numerator = Json::object();
  for (const auto& [name, value] : report.numerator) numerator[name] = value;
  Json provenance = Json::object();
  for (const auto& [name, value] : report.provenance) provenance[name] = value;
  Json j{{"formula", report.formula},
         {"p_lower", report.p_lower},
         {"raw", report.raw},
         {"numerator", std::move(numerator)},
         {"denominator", report.denominator},
         {"mode", to_string(report.mode)},
         {"provenance", std::move(provenance)},
         {"trivial", report.trivial}};
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

inline Json schedule_to_json(const AngleSchedule& schedule) {
  return Json{{"gammas", schedule.gammas}, {"betas", schedule.betas}};
}

inline AngleSchedule schedule_from_json(const Json& j) {
  try {
    return AngleSchedule::make(j.at("gammas").get<std::vector<double>>(),
                               j.at("betas").get<std::vector<double>>());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad schedule: ") + e.what());
  }
}

inline Json sim_result_to_json(const SimResult& result) {
  Json j{{"lambda", result.lambda},
         {"h0_expectation", result.h0_expectation},
         {"overlap_sq", result.overlap_sq},
         {"p", result.p}};
  if (!result.x_expectations.empty())
    j["x_expectations"] = result.x_expectations;
  if (result.success_probability)
    j["success_probability"] = *result.success_probability;
  return j;
}

// One JSON-lines record per (instance, mixer, schedule) run.
inline Json run_record(const std::string& instance, const MixerSpec& mixer,
                       const AngleSchedule& schedule, const SimResult& result) {
  return Json{{"schema", 1},
              {"instance", instance},
              {"mixer", mixer_to_json(mixer)},
              {"schedule", schedule_to_json(schedule)},
              {"result", sim_result_to_json(result)}};
}

}  // namespace qrb
