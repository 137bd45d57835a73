#pragma once

// Replay of the bundled fixture suite.  Each case names input files relative
// to the suite directory and the values they must reproduce.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "clusterlab/clusterlab.hpp"
#include "clusterlab/json_io.hpp"

namespace clusterlab {

struct FixtureOutcome {
  std::string name;
  std::string provenance;
  bool ok = true;
  std::string detail;
};

namespace detail {

inline std::vector<std::size_t> one_based_list(const json& j) {
  std::vector<std::size_t> out;
  for (const auto& v : j) {
    long k = v.get<long>();
    if (k < 1) throw InvalidInput("indices are 1-based");
    out.push_back(static_cast<std::size_t>(k - 1));
  }
  return out;
}

inline std::vector<Integer> to_integers(const std::vector<std::size_t>& v) {
  return std::vector<Integer>(v.begin(), v.end());
}

inline LouiseCertificate require_certificate(const ExchangeMatrix& b) {
  auto res = louise_certificate(b);
  if (res.kind != SearchVerdict::Kind::Yes) throw PreconditionViolated("no Louise certificate within budget");
  return *res.certificate;
}

inline void check_hodge_table(const json& c, const std::string& dir, std::ostringstream& why, bool& ok) {
  auto b = exchange_from_json(load_json_file(dir + "/" + c.at("matrix").get<std::string>()));
  auto t = table_from_json(load_json_file(dir + "/" + c.at("table").get<std::string>()));
  auto dims = to_integers(standard_dim_vector(b));
  if (dims != t.top_row()) {
    ok = false;
    why << "standard dimensions differ from the top row; ";
  }
  if (!curious_palindrome(t)) {
    ok = false;
    why << "table is not curiously palindromic; ";
  }
  bool rfr = c.value("really_full_rank", true);
  if (is_really_full_rank(b.mat()) != rfr) {
    ok = false;
    why << "really-full-rank flag mismatch; ";
  }
  if (rfr && poincare_closed(b).coeffs != dims) {
    ok = false;
    why << "closed-form series differs; ";
  }
  if (quiver(b).edges.empty() && isotypic_table(b.frozen_part()).table != t) {
    ok = false;
    why << "isotypic table differs; ";
  }
}

inline void check_counts(const ExchangeMatrix& b, const std::vector<PointCountSample>& expected, unsigned threads,
                         std::ostringstream& why, bool& ok) {
  auto cert = require_certificate(b);
  for (const auto& s : expected) {
    Integer got = count_louise(b, cert, field_of_order(s.q), CountOptions{threads});
    if (got != s.count) {
      ok = false;
      why << "q=" << s.q << ": counted " << got << ", expected " << s.count << "; ";
    }
  }
}

}  // namespace detail

inline FixtureOutcome verify_fixture_case(const json& c, const std::string& dir, unsigned threads = 1) {
  FixtureOutcome out{c.at("name").get<std::string>(), c.value("provenance", ""), true, ""};
  std::ostringstream why;
  const std::string kind = c.at("kind").get<std::string>();
  auto matrix = [&] { return exchange_from_json(load_json_file(dir + "/" + c.at("matrix").get<std::string>())); };
  if (kind == "hodge_table") {
    detail::check_hodge_table(c, dir, why, out.ok);
  } else if (kind == "point_count") {
    auto samples = samples_from_json(load_json_file(dir + "/" + c.at("samples").get<std::string>()));
    detail::check_counts(matrix(), samples, threads, why, out.ok);
  } else if (kind == "grothendieck") {
    auto b = matrix();
    auto t = table_from_json(load_json_file(dir + "/" + c.at("table").get<std::string>()));
    auto cert = detail::require_certificate(b);
    std::vector<PointCountSample> samples;
    for (const auto& q : c.at("q")) {
      u64 qq = q.get<u64>();
      samples.push_back(make_sample(b, qq, count_louise(b, cert, field_of_order(qq), CountOptions{threads})));
    }
    auto rep = grothendieck_consistency(t, samples);
    if (!rep.ok) {
      out.ok = false;
      why << rep.diff;
    }
  } else if (kind == "eigenvalues") {
    long d = c.at("d").get<long>();
    for (const auto& pj : c.at("p")) {
      long p = pj.get<long>();
      std::vector<long> values;
      for (const auto& ev : frobenius_rank1(d, p)) {
        if (ev.degree != 2 || ev.p_power != 1) continue;
        values.push_back(ev.character ? character_power_sum({*ev.character}, p).get_si() : 1);
      }
      std::sort(values.begin(), values.end());
      auto want = c.at("h2_weight1_values").at(std::to_string(p)).get<std::vector<long>>();
      if (values != want) {
        out.ok = false;
        why << "p=" << p << ": weight-one eigenvalue signs differ; ";
      }
    }
  } else if (kind == "mutation") {
    auto fr = freeze_out(matrix(), detail::one_based_list(c.at("freeze_out")));
    auto mutated = mutate_path(fr.matrix, detail::one_based_list(c.at("at")));
    std::vector<std::pair<long, long>> edges, want;
    for (const auto& e : quiver(mutated).edges)
      edges.emplace_back(static_cast<long>(fr.labels[e.from] + 1), static_cast<long>(fr.labels[e.to] + 1));
    for (const auto& e : c.at("expected_edges")) want.emplace_back(e.at(0).get<long>(), e.at(1).get<long>());
    std::sort(edges.begin(), edges.end());
    std::sort(want.begin(), want.end());
    if (edges != want) {
      out.ok = false;
      why << "mutated quiver edges differ; ";
    }
  } else if (kind == "separating") {
    auto seps = separating_edges(quiver(matrix()));
    for (const auto& e : c.at("contains")) {
      EdgePair p{e.at(0).get<std::size_t>() - 1, e.at(1).get<std::size_t>() - 1};
      if (std::find(seps.begin(), seps.end(), p) == seps.end()) {
        out.ok = false;
        why << "edge " << p.first + 1 << "->" << p.second + 1 << " is not separating; ";
      }
    }
  } else if (kind == "poincare") {
    auto b = matrix();
    std::vector<Integer> want;
    for (const auto& v : c.at("coefficients")) want.push_back(integer_from_json(v));
    if (poincare_closed(b).coeffs != want || detail::to_integers(standard_dim_vector(b)) != want) {
      out.ok = false;
      why << "series differs; ";
    }
  } else if (kind == "acyclic") {
    auto v = is_mutation_acyclic(matrix());
    std::string got = v.kind == SearchVerdict::Kind::Yes ? "yes" : v.kind == SearchVerdict::Kind::No ? "no" : "unknown";
    if (got != c.at("expected").get<std::string>()) {
      out.ok = false;
      why << "verdict " << got << "; ";
    }
  } else {
    throw InvalidInput("unknown fixture kind " + kind);
  }
  out.detail = why.str();
  return out;
}

inline std::vector<FixtureOutcome> verify_fixture_suite(const std::string& dir, unsigned threads = 1) {
  json suite = load_json_file(dir + "/suite.json");
  std::vector<FixtureOutcome> out;
  for (const auto& c : suite.at("cases")) out.push_back(verify_fixture_case(c, dir, threads));
  return out;
}

}  // namespace clusterlab
