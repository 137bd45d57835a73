#pragma once

// JSON encodings of matrices, certificates, tables and samples.
// Indices exposed to users are 1-based.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterlab/cluster_core.hpp"
#include "clusterlab/errors.hpp"
#include "clusterlab/point_count.hpp"
#include "clusterlab/quasi_polynomial.hpp"
#include "clusterlab/quiver_struct.hpp"
#include "clusterlab/standard_cohomology.hpp"

namespace clusterlab {

using json = nlohmann::json;

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

inline json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw InvalidInput("expected an integer, got " + j.dump());
}

inline json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline IntMatrix matrix_from_json(const json& rows, std::size_t cols_if_empty = 0) {
  if (!rows.is_array()) throw InvalidInput("matrix rows must be an array");
  std::size_t cols = rows.empty() ? cols_if_empty : rows[0].size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) throw InvalidInput("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = integer_from_json(rows[i][j]);
  }
  return m;
}

inline json exchange_to_json(const ExchangeMatrix& b) {
  return {{"n", b.n()}, {"m", b.m()}, {"rows", matrix_to_json(b.mat())}};
}

inline ExchangeMatrix exchange_from_json(const json& j) {
  try {
    std::size_t n = j.at("n").get<std::size_t>();
    std::size_t m = j.at("m").get<std::size_t>();
    return ExchangeMatrix(n, m, matrix_from_json(j.at("rows"), n));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad exchange matrix JSON: ") + e.what());
  }
}

inline json certificate_to_json(const LouiseCertificate& c) {
  json j;
  json path = json::array();
  for (auto k : c.path) path.push_back(k + 1);
  j["path"] = path;
  if (c.input) j["matrix"] = exchange_to_json(*c.input);
  if (c.is_leaf()) {
    j["leaf"] = true;
  } else {
    j["edge"] = {c.edge->first + 1, c.edge->second + 1};
    json kids = json::array();
    for (const auto& ch : c.children) kids.push_back(certificate_to_json(ch));
    j["children"] = kids;
  }
  return j;
}

inline LouiseCertificate certificate_from_json(const json& j) {
  try {
    LouiseCertificate c;
    for (const auto& k : j.at("path")) {
      long v = k.get<long>();
      if (v < 1) throw InvalidInput("mutation indices are 1-based");
      c.path.push_back(static_cast<std::size_t>(v - 1));
    }
    if (j.contains("matrix")) c.input = exchange_from_json(j.at("matrix"));
    if (j.contains("edge")) {
      const auto& e = j.at("edge");
      long a = e.at(0).get<long>(), b = e.at(1).get<long>();
      if (a < 1 || b < 1) throw InvalidInput("edge indices are 1-based");
      c.edge = EdgePair{static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)};
      for (const auto& ch : j.at("children")) c.children.push_back(certificate_from_json(ch));
    } else if (!j.value("leaf", false)) {
      throw InvalidInput("certificate node needs either \"leaf\": true or an edge");
    }
    return c;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad certificate JSON: ") + e.what());
  }
}

inline json table_to_json(const HodgeTable& t) {
  json entries = json::array();
  for (const auto& [kp, h] : t.entries) entries.push_back({kp.first, kp.second, integer_to_json(h)});
  return {{"n", t.n}, {"m", t.m}, {"entries", entries}};
}

inline HodgeTable table_from_json(const json& j) {
  try {
    HodgeTable t{j.at("n").get<std::size_t>(), j.at("m").get<std::size_t>(), {}};
    for (const auto& e : j.at("entries")) {
      Integer h = integer_from_json(e.at(2));
      if (h < 0) throw InvalidInput("Hodge numbers must be nonnegative");
      t.add(e.at(0).get<long>(), e.at(1).get<long>(), h);
    }
    return t;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad Hodge table JSON: ") + e.what());
  }
}

inline json sample_to_json(const PointCountSample& s) {
  return {{"q", s.q}, {"count", integer_to_json(s.count)}, {"suspect", s.suspect}};
}

inline std::vector<PointCountSample> samples_from_json(const json& j) {
  try {
    const json& arr = j.is_object() ? j.at("samples") : j;
    std::vector<PointCountSample> out;
    for (const auto& s : arr) {
      Integer c = integer_from_json(s.at("count"));
      if (c < 0) throw InvalidInput("counts must be nonnegative");
      out.push_back({s.at("q").get<u64>(), c, s.value("suspect", false)});
    }
    return out;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad samples JSON: ") + e.what());
  }
}

inline json quasi_polynomial_to_json(const QuasiPolynomial& qp) {
  json classes = json::array();
  for (const auto& [r, poly] : qp.classes) {
    json c = json::array();
    for (const auto& v : poly) c.push_back(integer_to_json(v));
    classes.push_back({{"residue", r}, {"coefficients", c}, {"polynomial", QuasiPolynomial::poly_string(poly)}});
  }
  return {{"modulus", qp.modulus}, {"classes", classes}};
}

}  // namespace clusterlab
