#pragma once

// Command-line front end.  run_cli returns the process exit code:
// 0 success, 1 a check failed, 2 bad input.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clusterlab/clusterlab.hpp"
#include "clusterlab/fixtures.hpp"
#include "clusterlab/json_io.hpp"

#ifndef CLUSTERLAB_FIXTURE_DIR
#define CLUSTERLAB_FIXTURE_DIR "fixtures"
#endif

namespace clusterlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// JSON with scalar-only arrays kept on one line.
inline std::string pretty_json(const json& j, int indent = 0) {
  auto scalar_array = [](const json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  std::string pad(static_cast<std::size_t>(indent), ' ');
  std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object()) {
    if (j.empty()) return "{}";
    std::string s = "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      s += (first ? "" : ",\n") + inner + json(it.key()).dump() + ": " + pretty_json(it.value(), indent + 2);
      first = false;
    }
    return s + "\n" + pad + "}";
  }
  if (j.is_array() && !scalar_array(j)) {
    std::string s = "[\n";
    for (std::size_t i = 0; i < j.size(); ++i)
      s += (i ? ",\n" : "") + inner + pretty_json(j[i], indent + 2);
    return s + "\n" + pad + "]";
  }
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + j[i].dump();
    return s + "]";
  }
  return j.dump();
}

inline std::string verdict_name(SearchVerdict::Kind k) {
  switch (k) {
    case SearchVerdict::Kind::Yes: return "yes";
    case SearchVerdict::Kind::No: return "no";
    default: return "unknown";
  }
}

inline json path_to_json(const MutationPath& p) {
  json out = json::array();
  for (auto k : p) out.push_back(k + 1);
  return out;
}

inline json group_to_json(const AbelianGroup& g) {
  json t = json::array();
  for (const auto& v : g.torsion) t.push_back(integer_to_json(v));
  return {{"free_rank", g.free_rank}, {"torsion", t}, {"text", g.to_string()}};
}

inline unsigned threads_from_env(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("CLUSTERLAB_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw InvalidInput("CLUSTERLAB_THREADS must be a positive integer");
  }
  return 1;
}

inline LouiseCertificate load_certificate(const std::string& path) {
  json j = load_json_file(path);
  if (j.is_object() && j.contains("certificate")) return certificate_from_json(j.at("certificate"));
  return certificate_from_json(j);
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact invariants of cluster varieties"};
  app.require_subcommand(1);
  unsigned threads_flag = 0;
  app.add_option("--threads", threads_flag, "worker threads (default: CLUSTERLAB_THREADS or 1)");

  std::string matrix_path, cert_path, table_path, samples_path;
  std::string fixture_dir = CLUSTERLAB_FIXTURE_DIR;
  std::vector<long> at;
  std::vector<u64> qs;
  std::size_t budget = kDefaultBudget;
  std::size_t cap = kDefaultDimensionCap;
  std::uint64_t seed = 1;
  u64 max_modulus = 12;
  std::size_t max_degree = 8;
  bool include_suspect = false;
  bool with_basis = false;

  auto* mutate = app.add_subcommand("mutate", "mutate an exchange matrix along a path");
  mutate->add_option("--matrix", matrix_path)->required();
  mutate->add_option("--at", at, "1-based mutable indices, applied left to right")->required()->delimiter(',');

  auto* quiv = app.add_subcommand("quiver", "list quiver edges");
  quiv->add_option("--matrix", matrix_path)->required();

  auto* seps = app.add_subcommand("separating-edges", "list separating edges");
  seps->add_option("--matrix", matrix_path)->required();

  auto* acyc = app.add_subcommand("acyclic", "search the mutation class for an acyclic quiver");
  acyc->add_option("--matrix", matrix_path)->required();
  acyc->add_option("--budget", budget);

  auto* louise = app.add_subcommand("louise", "search for a Louise certificate");
  louise->add_option("--matrix", matrix_path)->required();
  louise->add_option("--budget", budget);

  auto* vcert = app.add_subcommand("verify-certificate", "replay a Louise certificate");
  vcert->add_option("--matrix", matrix_path)->required();
  vcert->add_option("--certificate", cert_path)->required();

  auto* cover = app.add_subcommand("cover", "character groups and the covering matrix");
  cover->add_option("--matrix", matrix_path)->required();
  cover->add_option("--seed", seed);

  auto* gsv = app.add_subcommand("gsv", "complete to a full-rank GSV matrix");
  gsv->add_option("--matrix", matrix_path)->required();
  gsv->add_option("--seed", seed);

  auto* stdc = app.add_subcommand("standard-cohomology", "dimensions of the standard part");
  stdc->add_option("--matrix", matrix_path)->required();
  stdc->add_option("--certificate", cert_path);
  stdc->add_option("--cap", cap, "largest n+m accepted");
  stdc->add_flag("--basis", with_basis, "include a basis of each degree");

  auto* poinc = app.add_subcommand("poincare", "closed-form Poincare polynomial of the standard part");
  poinc->add_option("--matrix", matrix_path)->required();

  auto* iso = app.add_subcommand("isolated-hodge", "mixed Hodge table of an isolated cluster variety");
  iso->add_option("--matrix", matrix_path)->required();

  auto* count = app.add_subcommand("count-points", "point counts over finite fields");
  count->add_option("--matrix", matrix_path)->required();
  count->add_option("--q", qs, "field orders")->required()->delimiter(',');
  count->add_option("--certificate", cert_path);
  count->add_option("--budget", budget);

  auto* fit = app.add_subcommand("fit", "fit a residue-class quasi-polynomial");
  fit->add_option("--samples", samples_path)->required();
  fit->add_option("--max-modulus", max_modulus);
  fit->add_option("--max-degree", max_degree);
  fit->add_flag("--include-suspect", include_suspect);

  auto* groth = app.add_subcommand("check-grothendieck", "compare signed Hodge sums with point counts");
  groth->add_option("--table", table_path)->required();
  groth->add_option("--samples", samples_path)->required();

  auto* ctable = app.add_subcommand("check-table", "check a Hodge table against computable invariants");
  ctable->add_option("--matrix", matrix_path)->required();
  ctable->add_option("--table", table_path)->required();

  auto* vfix = app.add_subcommand("verify-fixtures", "replay the bundled fixture suite");
  vfix->add_option("--dir", fixture_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    const unsigned threads = threads_from_env(threads_flag);
    auto load_matrix = [&] { return exchange_from_json(load_json_file(matrix_path)); };

    if (*mutate) {
      auto b = load_matrix();
      MutationPath path;
      for (long k : at) {
        if (k < 1 || static_cast<std::size_t>(k) > b.n())
          throw OutOfRange("mutation index " + std::to_string(k) + " is not mutable");
        path.push_back(static_cast<std::size_t>(k - 1));
      }
      out << pretty_json(exchange_to_json(mutate_path(b, path))) << "\n";
      return kExitOk;
    }
    if (*quiv) {
      json edges = json::array();
      for (const auto& e : quiver(load_matrix()).edges)
        edges.push_back({e.from + 1, e.to + 1, integer_to_json(e.weight)});
      out << pretty_json({{"edges", edges}}) << "\n";
      return kExitOk;
    }
    if (*seps) {
      json edges = json::array();
      for (const auto& [i, j] : separating_edges(quiver(load_matrix()))) edges.push_back({i + 1, j + 1});
      out << pretty_json({{"separating_edges", edges}}) << "\n";
      return kExitOk;
    }
    if (*acyc) {
      auto v = is_mutation_acyclic(load_matrix(), budget);
      json j = {{"verdict", verdict_name(v.kind)}};
      if (v.kind == SearchVerdict::Kind::Yes) j["witness"] = path_to_json(v.witness);
      out << pretty_json(j) << "\n";
      return kExitOk;
    }
    if (*louise) {
      auto b = load_matrix();
      auto res = louise_certificate(b, budget);
      json j = {{"verdict", verdict_name(res.kind)}};
      if (res.certificate) {
        auto cert = *res.certificate;
        cert.input = b;
        j["certificate"] = certificate_to_json(cert);
      }
      out << j.dump() << "\n";
      return kExitOk;
    }
    if (*vcert) {
      bool ok = verify_certificate(load_matrix(), load_certificate(cert_path));
      out << (ok ? "certificate verified" : "certificate rejected") << "\n";
      return ok ? kExitOk : kExitCheckFailed;
    }
    if (*cover) {
      auto b = load_matrix();
      auto c = build_cover(b, cover_degree(b), seed);
      json j = {{"aut_characters", group_to_json(aut_characters(b))},
                {"locally_constant_characters", group_to_json(locally_constant_characters(b))},
                {"degree", integer_to_json(cover_degree(b))},
                {"cover_matrix", matrix_to_json(c.r)}};
      out << pretty_json(j) << "\n";
      return kExitOk;
    }
    if (*gsv) {
      auto g = complete_gsv(load_matrix(), seed);
      out << pretty_json({{"bhat", matrix_to_json(g.bhat)}, {"determinant", integer_to_json(determinant(g.bhat))}})
          << "\n";
      return kExitOk;
    }
    if (*stdc) {
      auto b = load_matrix();
      std::string status = "unverified hypothesis";
      if (!cert_path.empty()) {
        if (!verify_certificate(b, load_certificate(cert_path))) {
          err << "certificate does not verify against the matrix\n";
          return kExitCheckFailed;
        }
        status = "Louise certificate verified";
      }
      auto degrees = standard_dims(b, with_basis, cap);
      std::vector<std::size_t> dims;
      json basis = json::array();
      for (const auto& d : degrees) {
        dims.push_back(d.dimension);
        if (!with_basis) continue;
        json deg = json::array();
        for (const auto& f : d.basis) {
          json form = json::array();
          for (const auto& [s, coef] : f.coeffs) {
            json idx = json::array();
            for (auto i : s) idx.push_back(i + 1);
            form.push_back({{"dlog", idx}, {"coefficient", coef.get_str()}});
          }
          deg.push_back(form);
        }
        basis.push_back(deg);
      }
      auto table = standard_table(b, dims);
      out << "status: " << status << "\n" << table.render();
      json j = {{"status", status}, {"dimensions", dims}, {"table", table_to_json(table)}};
      if (with_basis) j["basis"] = basis;
      out << pretty_json(j) << "\n";
      return kExitOk;
    }
    if (*poinc) {
      auto b = load_matrix();
      auto s = poincare_closed(b);
      json c = json::array();
      for (const auto& v : s.coeffs) c.push_back(integer_to_json(v));
      out << "P(t) = " << poincare_factored(b) << " = " << s.to_string() << "\n"
          << pretty_json({{"coefficients", c}}) << "\n";
      return kExitOk;
    }
    if (*iso) {
      auto b = load_matrix();
      if (!quiver(b).edges.empty()) throw PreconditionViolated("the quiver has edges; the variety is not isolated");
      auto res = isotypic_table(b.frozen_part());
      json comps = json::array();
      for (const auto& c : res.components) {
        json g = json::array(), dims = json::array();
        for (const auto& v : c.g) g.push_back(integer_to_json(v));
        for (const auto& v : c.dims) dims.push_back(integer_to_json(v));
        comps.push_back(
            {{"g", g}, {"j_size", c.j_size}, {"multiplicity", integer_to_json(c.multiplicity)}, {"dims", dims}});
      }
      out << res.table.render() << pretty_json({{"table", table_to_json(res.table)}, {"isotypic", comps}}) << "\n";
      return kExitOk;
    }
    if (*count) {
      auto b = load_matrix();
      LouiseCertificate cert;
      if (!cert_path.empty()) {
        cert = load_certificate(cert_path);
      } else {
        auto res = louise_certificate(b, budget);
        if (res.kind != SearchVerdict::Kind::Yes) {
          err << "no Louise certificate (" << verdict_name(res.kind) << "); counts are not available\n";
          return kExitCheckFailed;
        }
        cert = *res.certificate;
      }
      json samples = json::array();
      for (u64 q : qs) {
        Integer c = count_louise(b, cert, field_of_order(q), CountOptions{threads});
        samples.push_back(sample_to_json(make_sample(b, q, c)));
      }
      out << pretty_json({{"samples", samples}}) << "\n";
      return kExitOk;
    }
    if (*fit) {
      auto samples = samples_from_json(load_json_file(samples_path));
      try {
        auto qp = fit_quasi_polynomial(samples, max_modulus, max_degree, include_suspect);
        out << pretty_json(quasi_polynomial_to_json(qp)) << "\n";
        return kExitOk;
      } catch (const NoFit& e) {
        err << e.what() << "\n";
        return kExitCheckFailed;
      }
    }
    if (*groth) {
      auto t = table_from_json(load_json_file(table_path));
      auto rep = grothendieck_consistency(t, samples_from_json(load_json_file(samples_path)));
      out << (rep.ok ? "consistent" : "inconsistent") << "\n" << rep.diff;
      return rep.ok ? kExitOk : kExitCheckFailed;
    }
    if (*ctable) {
      auto b = load_matrix();
      auto t = table_from_json(load_json_file(table_path));
      bool ok = true;
      if (t.n != b.n() || t.m != b.m()) {
        out << "shape: table is for n=" << t.n << ", m=" << t.m << "\n";
        ok = false;
      }
      std::vector<Integer> dims;
      for (auto d : standard_dim_vector(b)) dims.push_back(d);
      bool top = dims == t.top_row();
      bool pal = curious_palindrome(t);
      out << "top row vs standard dimensions: " << (top ? "match" : "MISMATCH") << "\n";
      out << "curious palindrome: " << (pal ? "yes" : "NO") << "\n";
      ok = ok && top && pal;
      if (quiver(b).edges.empty()) {
        bool full = isotypic_table(b.frozen_part()).table == t;
        out << "isolated table: " << (full ? "match" : "MISMATCH") << "\n";
        ok = ok && full;
      }
      out << t.render();
      return ok ? kExitOk : kExitCheckFailed;
    }
    if (*vfix) {
      bool all = true;
      for (const auto& r : verify_fixture_suite(fixture_dir, threads)) {
        out << (r.ok ? "ok   " : "FAIL ") << r.name << " [" << r.provenance << "]";
        if (!r.ok) out << " " << r.detail;
        out << "\n";
        all = all && r.ok;
      }
      return all ? kExitOk : kExitCheckFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace clusterlab
