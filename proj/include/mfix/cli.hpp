//  Copyright 2026 The mfix Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.


#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfix/mfix.hpp"

namespace mfix::cli {

using nlohmann::json;

struct RunConfig {
  std::string mode;
  std::string problem;
  std::string out = ".";
  std::uint64_t seed = 1;
  std::size_t eps_level = 30;
  std::size_t max_iter = 10'000;
  bool override_certificate = false;
  std::optional<std::size_t> horizon;
};

enum ExitCode : int {
  ok = 0,
  input_error = 1,
  certificate_refused = 2,
  divergence = 3,
  not_converged = 4,
};

inline constexpr int kSchemaVersion = 1;

/// Parses `text`, mapping syntax errors to line and column.
inline json parse_problem_text(const std::string& text, const std::string& origin = "<problem>") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::parse_error,
                origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

inline json load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse_error, "cannot open problem file " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  json j = parse_problem_text(text, path);
  if (!j.is_object()) throw Error(ErrorKind::parse_error, path + ": top level must be an object");
  if (!j.contains("schema_version")) throw Error(ErrorKind::parse_error, path + ": missing schema_version");
  if (j["schema_version"] != kSchemaVersion)
    throw Error(ErrorKind::parse_error, path + ": unsupported schema_version " + j["schema_version"].dump());
  return j;
}

namespace detail {

template <class T>
T field(const json& j, const std::string& key) {
  if (!j.contains(key)) throw Error(ErrorKind::parse_error, "missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::parse_error, "field '" + key + "' has the wrong type");
  }
}

template <class T>
T field_or(const json& j, const std::string& key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

inline Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto c = n == 0 ? 0 : static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd a(n, c);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != c) throw Error(ErrorKind::parse_error, "ragged matrix");
    for (Eigen::Index k = 0; k < c; ++k) a(i, k) = rows[i][k];
  }
  return a;
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + p.string());
  out << text;
}

inline void write_json(const std::filesystem::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

inline int exit_for(Termination t) {
  switch (t) {
    case Termination::converged: return ok;
    case Termination::certificate_refused: return certificate_refused;
    case Termination::divergence_detected: return divergence;
    default: return not_converged;
  }
}

using Vec = std::vector<double>;
using VecSpace = DistanceSpace<VectorMonoid, Vec>;

struct PointMap {
  std::function<Vec(const Vec&)> f;
  std::optional<Eigen::MatrixXd> lipschitz;  // |A| for affine maps
  std::pair<double, double> box{-10.0, 10.0};
};

inline PointMap parse_map(const json& j, std::size_t dim) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "affine") {
    Eigen::MatrixXd a = to_matrix(field<std::vector<std::vector<double>>>(j, "A"));
    const auto bv = field<Vec>(j, "b");
    if (static_cast<std::size_t>(a.rows()) != dim || static_cast<std::size_t>(a.cols()) != dim || bv.size() != dim)
      throw Error(ErrorKind::parse_error, "affine map dimensions do not match dim");
    Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(bv.data(), static_cast<Eigen::Index>(dim));
    PointMap pm;
    pm.f = [a, b](const Vec& x) {
      Eigen::VectorXd y = a * Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())) + b;
      return Vec(y.data(), y.data() + y.size());
    };
    pm.lipschitz = a.cwiseAbs();
    return pm;
  }
  if (kind == "builtin") {
    if (dim != 1) throw Error(ErrorKind::parse_error, "builtin maps are one-dimensional");
    const auto name = field<std::string>(j, "name");
    PointMap pm;
    if (name == "sqrt_shift") {
      pm.f = [](const Vec& x) { return Vec{std::sqrt(x[0] + 2.0)}; };
      pm.box = {0.0, 2.0};
    } else if (name == "square") {
      pm.f = [](const Vec& x) { return Vec{x[0] * x[0]}; };
      pm.box = {0.0, 0.45};
    } else if (name == "cos") {
      pm.f = [](const Vec& x) { return Vec{std::cos(x[0])}; };
      pm.box = {0.0, 1.0};
    } else if (name == "shift") {
      pm.f = [](const Vec& x) { return Vec{x[0] + 1.0}; };
    } else if (name == "negate") {
      pm.f = [](const Vec& x) { return Vec{-x[0]}; };
    } else {
      throw Error(ErrorKind::unknown_instance, "builtin map '" + name + "'");
    }
    return pm;
  }
  throw Error(ErrorKind::unknown_instance, "map kind '" + kind + "'");
}

inline ContractionOperator<VectorMonoid> parse_lambda(const json& j, std::size_t dim,
                                                      const std::optional<Eigen::MatrixXd>& auto_matrix) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "scalar") {
    const double q = field<double>(j, "q");
    if (!(q >= 0.0)) throw Error(ErrorKind::parse_error, "lambda q must be non-negative");
    if (dim == 1) {
      auto op = matrix_contraction(Eigen::MatrixXd::Constant(1, 1, q));
      op.kind = lambda_kind::Scalar{q};
      return op;
    }
    return matrix_contraction(q * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
  }
  if (kind == "matrix") {
    Eigen::MatrixXd l = to_matrix(field<std::vector<std::vector<double>>>(j, "L"));
    if (static_cast<std::size_t>(l.rows()) != dim || static_cast<std::size_t>(l.cols()) != dim)
      throw Error(ErrorKind::parse_error, "lambda matrix dimensions do not match");
    return matrix_contraction(l);
  }
  if (kind == "auto") {
    if (!auto_matrix) throw Error(ErrorKind::parse_error, "lambda 'auto' needs an affine map");
    return matrix_contraction(*auto_matrix);
  }
  throw Error(ErrorKind::unknown_instance, "lambda kind '" + kind + "'");
}

inline Vec parse_point(const json& j, const std::string& key, std::size_t dim) {
  if (!j.contains(key)) throw Error(ErrorKind::parse_error, "missing field '" + key + "'");
  Vec x = j.at(key).is_number() ? Vec{field<double>(j, key)} : field<Vec>(j, key);
  if (x.size() != dim) throw Error(ErrorKind::parse_error, "'" + key + "' has the wrong dimension");
  return x;
}

inline bool coordinate_le(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i] + 1e-12) return false;
  return true;
}

inline std::string solution_csv(const Vec& x) {
  std::string s = "index,value\n";
  for (std::size_t i = 0; i < x.size(); ++i) s += std::to_string(i) + "," + fmt(x[i]) + "\n";
  return s;
}

struct Outcome {
  int code = ok;
  json summary;
};

template <class Trace, class Space>
Outcome finish_solve(const Trace& trace, const Space& space, const std::filesystem::path& out) {
  write_json(out / "trace.json", trace_to_json(trace, space));
  if (trace.converged()) write_text(out / "solution.csv", solution_csv(trace.fixpoint()));
  Outcome o;
  o.code = exit_for(trace.termination);
  o.summary = {{"termination", to_string(trace.termination)},
               {"certificate", to_string(trace.certificate.status)},
               {"overridden", trace.certificate.overridden},
               {"iterations", trace.iterations()},
               {"uniqueness", trace.uniqueness}};
  return o;
}

inline Outcome run_solve(const RunConfig& cfg, const json& pb, bool monotone, const std::filesystem::path& out) {
  const auto dim = field_or<std::size_t>(pb, "dim", 1);
  if (dim == 0) throw Error(ErrorKind::parse_error, "dim must be positive");
  auto pm = parse_map(field<json>(pb, "map"), dim);
  Horizon h;
  if (cfg.horizon) h.terms = *cfg.horizon;
  FixpointProblem<VecSpace> fp{coordinate_space(dim, h), pm.f,
                               parse_lambda(field<json>(pb, "lambda"), dim, pm.lipschitz),
                               parse_point(pb, "x0", dim)};
  fp.stop = {cfg.eps_level, cfg.max_iter};
  fp.options.override_certificate = cfg.override_certificate;
  fp.options.seed = cfg.seed;
  fp.sampler = [box = pm.box, dim](Rng& rng) {
    std::uniform_real_distribution<double> u(box.first, box.second);
    Vec x(dim);
    for (auto& v : x) v = u(rng);
    return x;
  };
  if (monotone) return finish_solve(monotone_picard_solve(fp, std::function<bool(const Vec&, const Vec&)>(coordinate_le)), fp.space, out);
  const auto variant = field_or<std::string>(pb, "variant", "general");
  if (variant == "general") return finish_solve(picard_solve(fp), fp.space, out);
  if (variant == "orbital") return finish_solve(picard_solve_orbital(fp), fp.space, out);
  throw Error(ErrorKind::parse_error, "variant must be 'general' or 'orbital'");
}

inline Outcome run_multiple(const RunConfig& cfg, const json& pb, const std::filesystem::path& out) {
  const auto sigma = field<std::vector<std::vector<std::size_t>>>(pb, "sigma");
  const std::size_t m = sigma.size();
  const json& fj = field<json>(pb, "f");
  if (field<std::string>(fj, "kind") != "linear") throw Error(ErrorKind::unknown_instance, "f kind must be 'linear'");
  const auto coeffs = field<Vec>(fj, "coeffs");
  const double c0 = field_or<double>(fj, "const", 0.0);
  if (coeffs.size() != m) throw Error(ErrorKind::parse_error, "f needs one coefficient per argument");
  std::vector<bool> in_p(m, false);
  for (auto i : field<std::vector<std::size_t>>(pb, "P")) {
    if (i >= m) throw Error(ErrorKind::index_out_of_range, "P index " + std::to_string(i) + " >= m");
    in_p[i] = true;
  }
  Horizon h;
  if (cfg.horizon) h.terms = *cfg.horizon;

  ContractionOperator<VectorMonoid> lambda = [&] {
    const json& lj = field<json>(pb, "lambda");
    if (field<std::string>(lj, "kind") != "auto") return parse_lambda(lj, m, std::nullopt);
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        if (sigma[i].size() == m && sigma[i][k] < m)
          l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(sigma[i][k])) += std::abs(coeffs[k]);
    return matrix_contraction(l);
  }();

  MultipleProblem<Reals, double> mp{abs_metric_space(h),
                                    [coeffs, c0](const Vec& x) {
                                      double s = c0;
                                      for (std::size_t k = 0; k < x.size(); ++k) s += coeffs[k] * x[k];
                                      return s;
                                    },
                                    sigma,
                                    in_p,
                                    [](const double& a, const double& b) { return a <= b + 1e-12; },
                                    lambda,
                                    parse_point(pb, "x0", m)};
  mp.stop = {cfg.eps_level, cfg.max_iter};
  mp.options.override_certificate = cfg.override_certificate;
  mp.options.seed = cfg.seed;
  auto trace = multiple_fixpoint_solve(mp);
  return finish_solve(trace, vector_product(mp.space, m), out);
}

inline std::function<double(double, double)> parse_kernel(const json& j, const Quadrature& quad,
                                                          std::optional<Eigen::MatrixXd>& table) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "constant") {
    const double c = field<double>(j, "c");
    return [c](double, double) { return c; };
  }
  if (kind == "product") {
    const double a = field_or<double>(j, "scale", 1.0);
    return [a](double t, double s) { return a * t * s; };
  }
  if (kind == "tabulated") {
    table = to_matrix(field<std::vector<std::vector<double>>>(j, "matrix"));
    if (static_cast<std::size_t>(table->rows()) != quad.size() || static_cast<std::size_t>(table->cols()) != quad.size())
      throw Error(ErrorKind::grid_mismatch, "tabulated kernel does not match the quadrature");
    auto nodes = quad.nodes;
    auto values = *table;
    return [nodes, values](double t, double s) {
      auto idx = [&](double v) {
        for (std::size_t i = 0; i < nodes.size(); ++i)
          if (nodes[i] == v) return static_cast<Eigen::Index>(i);
        throw Error(ErrorKind::index_out_of_range, "tabulated kernel evaluated off the grid");
      };
      return values(idx(t), idx(s));
    };
  }
  throw Error(ErrorKind::unknown_instance, "kernel kind '" + kind + "'");
}

inline std::function<double(double)> parse_expr(const std::string& name) {
  if (name == "zero") return [](double) { return 0.0; };
  if (name == "one") return [](double) { return 1.0; };
  if (name == "t") return [](double t) { return t; };
  if (name == "t2") return [](double t) { return t * t; };
  if (name == "sin") return [](double t) { return std::sin(t); };
  if (name == "exp") return [](double t) { return std::exp(t); };
  throw Error(ErrorKind::unknown_instance, "f expression '" + name + "'");
}

inline Outcome run_fredholm(const RunConfig& cfg, const json& pb, const std::filesystem::path& out) {
  const json& qj = field<json>(pb, "quadrature");
  const auto qkind = field<std::string>(qj, "kind");
  Quadrature quad;
  if (qkind == "midpoint") {
    const auto dom = field_or<Vec>(pb, "domain", Vec{0.0, 1.0});
    if (dom.size() != 2) throw Error(ErrorKind::parse_error, "domain must be [a, b]");
    quad = Quadrature::midpoint(dom[0], dom[1], field<std::size_t>(qj, "nodes"));
  } else if (qkind == "table") {
    std::optional<double> total;
    if (pb.contains("domain")) {
      const auto dom = field<Vec>(pb, "domain");
      if (dom.size() != 2) throw Error(ErrorKind::parse_error, "domain must be [a, b]");
      total = dom[1] - dom[0];
    }
    quad = Quadrature::from_table(field<Vec>(qj, "nodes"), field<Vec>(qj, "weights"), total);
  } else {
    throw Error(ErrorKind::unknown_instance, "quadrature kind '" + qkind + "'");
  }

  std::optional<Eigen::MatrixXd> table;
  auto kernel = parse_kernel(field<json>(pb, "kernel"), quad, table);

  const json& fj = field<json>(pb, "f");
  NodeValues f;
  if (fj.contains("expr")) {
    auto e = parse_expr(field<std::string>(fj, "expr"));
    for (double t : quad.nodes) f.push_back({e(t)});
  } else if (fj.contains("table")) {
    for (const auto& v : fj.at("table")) {
      if (v.is_number()) f.push_back({v.get<double>()});
      else if (v.is_array()) f.push_back(v.get<Vec>());
      else throw Error(ErrorKind::parse_error, "f table entries must be numbers or arrays");
    }
    if (f.size() != quad.size()) throw Error(ErrorKind::grid_mismatch, "f table does not match the quadrature");
  } else {
    throw Error(ErrorKind::parse_error, "f needs 'expr' or 'table'");
  }

  const auto nl = field_or<std::string>(pb, "nonlinearity", "linear");
  std::function<double(double)> phi;
  if (nl == "linear") phi = [](double x) { return x; };
  else if (nl == "sin") phi = [](double x) { return std::sin(x); };
  else if (nl == "tanh") phi = [](double x) { return std::tanh(x); };
  else throw Error(ErrorKind::unknown_instance, "nonlinearity '" + nl + "'");

  FredholmProblem fp;
  fp.quad = quad;
  fp.f = f;
  fp.g = [kernel, phi](double t, double s, const Vec& x) {
    Vec y(x.size());
    const double k = kernel(t, s);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = k * phi(x[i]);
    return y;
  };
  fp.bound = make_kernel_bound([kernel](double t, double s) { return std::abs(kernel(t, s)); }, quad);
  fp.tol_level = cfg.eps_level;
  fp.max_iter = cfg.max_iter;
  fp.override_certificate = cfg.override_certificate;
  if (cfg.horizon) fp.certificate_horizon.terms = *cfg.horizon;

  auto res = fredholm_solve(fp);
  json tj = trace_to_json(res.trace, res.space);
  tj["fredholm_certificate"] = res.certificate.to_json();
  write_json(out / "trace.json", tj);
  if (res.trace.converged()) {
    std::string csv = "t";
    const std::size_t d = res.values().front().size();
    for (std::size_t k = 0; k < d; ++k) csv += ",x" + std::to_string(k);
    csv += "\n";
    for (std::size_t i = 0; i < res.nodes.size(); ++i) {
      csv += fmt(res.nodes[i]);
      for (double v : res.values()[i]) csv += "," + fmt(v);
      csv += "\n";
    }
    write_text(out / "solution.csv", csv);
  }
  Outcome o;
  o.code = exit_for(res.trace.termination);
  o.summary = {{"termination", to_string(res.trace.termination)},
               {"certificate", to_string(res.certificate.overall.status)},
               {"certificate_routes_agree", res.certificate.agree},
               {"overridden", res.trace.certificate.overridden},
               {"iterations", res.trace.iterations()}};
  o.summary["spectral_radius"] = res.certificate.spectral.spectral_radius
                                     ? json(*res.certificate.spectral.spectral_radius)
                                     : json();
  return o;
}

template <OrderedMonoid M>
Report monoid_reports(const NullFamily<M>& fam, std::uint64_t seed, std::size_t samples) {
  Report r = monoid_axiom_suite(fam.monoid(), seed, samples);
  r.append(null_family_axiom_suite(fam, null_sequence_samples(fam, seed + 1, samples), fam.horizon(), seed + 2));
  return r;
}

template <OrderedMonoid M, class P>
Report space_report(const DistanceSpace<M, P>& space, std::function<P(Rng&)> draw, std::uint64_t seed,
                    std::size_t samples) {
  Rng rng(seed);
  std::vector<P> pts;
  for (std::size_t i = 0; i < samples; ++i) pts.push_back(draw(rng));
  return verify_space_axioms(space, pts, seed);
}

inline Outcome run_verify(const RunConfig& cfg, const json& pb, const std::filesystem::path& out) {
  const std::vector<std::string> all{"reals", "vector", "grid", "entourage", "abs", "mixed", "squared",
                                     "pointwise_mixed", "product_sigma", "product_sup"};
  const auto names = field_or<std::vector<std::string>>(pb, "instances", all);
  const auto samples = field_or<std::size_t>(pb, "samples", 1000);
  const auto dim = field_or<std::size_t>(pb, "dim", 3);
  const auto grid_nodes = field_or<std::size_t>(pb, "grid_nodes", 8);
  const std::uint64_t seed = cfg.seed;

  Horizon h = sample_horizon();
  if (cfg.horizon) h.levels = *cfg.horizon;
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  auto real_point = [coord](Rng& rng) mutable { return coord(rng); };
  auto vec_point = [coord, dim](Rng& rng) mutable {
    Vec x(dim);
    for (auto& v : x) v = coord(rng);
    return x;
  };
  auto grid = make_grid([&] {
    Vec nodes;
    for (std::size_t i = 0; i < grid_nodes; ++i) nodes.push_back((static_cast<double>(i) + 0.5) / static_cast<double>(grid_nodes));
    return nodes;
  }());

  json reports = json::array();
  bool all_pass = true;
  auto push = [&](const Report& r) {
    all_pass = all_pass && r.all_passed();
    reports.push_back(r.to_json());
  };
  for (const auto& name : names) {
    if (name == "reals") {
      push(monoid_reports(reals_family(Reals{}, h), seed, samples));
    } else if (name == "vector") {
      push(monoid_reports(vector_family(dim, h), seed, samples));
    } else if (name == "grid") {
      push(monoid_reports(grid_family(GridFunctionMonoid(grid), h), seed, samples));
    } else if (name == "entourage") {
      const EntourageBase base = pb.contains("entourage_base") ? load_entourage_base(pb.at("entourage_base"))
                                                               : partition_chain_base(5);
      Report r = monoid_reports(entourage_family(base, h), seed, samples);
      r.append(verify_entourage_metric(base));
      push(r);
    } else if (name == "abs") {
      push(space_report<Reals, double>(abs_metric_space(h), real_point, seed, samples));
    } else if (name == "mixed") {
      push(space_report<Reals, double>(mixed_distance_space(h), real_point, seed, samples));
    } else if (name == "squared") {
      push(space_report<Reals, double>(squared_distance_space(h), real_point, seed, samples));
    } else if (name == "pointwise_mixed") {
      push(space_report<GridFunctionMonoid, Vec>(
          pointwise_mixed_space(grid, h),
          [coord, n = grid->size()](Rng& rng) mutable {
            Vec x(n);
            for (auto& v : x) v = coord(rng);
            return x;
          },
          seed, samples));
    } else if (name == "product_sigma" || name == "product_sup") {
      auto mode = name == "product_sigma" ? ProductMode::sigma : ProductMode::sup;
      push(space_report<Reals, Vec>(product_space(abs_metric_space(h), dim, mode), vec_point, seed, samples));
    } else {
      throw Error(ErrorKind::unknown_instance, "instance '" + name + "'");
    }
  }
  write_json(out / "report.json", {{"seed", seed}, {"status", all_pass ? "pass" : "fail"}, {"reports", reports}});
  Outcome o;
  o.code = all_pass ? ok : not_converged;
  o.summary = {{"verification", all_pass ? "pass" : "fail"}, {"reports", reports.size()}};
  return o;
}

inline Outcome run_fw_probe(const RunConfig& cfg, const json& pb, const std::filesystem::path& out) {
  const auto name = field_or<std::string>(pb, "space", "squared");
  RealLine space = name == "squared" ? squared_distance_space()
                   : name == "abs"   ? abs_metric_space()
                   : name == "mixed" ? mixed_distance_space()
                                     : throw Error(ErrorKind::unknown_instance, "space '" + name + "'");
  const auto paths = field_or<std::string>(pb, "paths", "uniform");
  const auto budget = field_or<std::size_t>(pb, "budget", 10'000);
  const auto level = field_or<std::size_t>(pb, "level", 6);
  const auto endpoint_level = field_or<std::size_t>(pb, "endpoint_level", 1);
  const auto max_points = field_or<std::size_t>(pb, "max_points", 200);

  PathGenerator<double> gen;
  if (paths == "uniform") {
    // 0, 1/n, ..., 1 for n = 1, 2, ...
    gen = [n = std::size_t{0}]() mutable -> std::optional<std::vector<double>> {
      ++n;
      std::vector<double> p;
      for (std::size_t i = 0; i <= n; ++i) p.push_back(static_cast<double>(i) / static_cast<double>(n));
      return p;
    };
  } else if (paths == "random") {
    gen = [rng = Rng(cfg.seed), max_points]() mutable -> std::optional<std::vector<double>> {
      std::uniform_int_distribution<std::size_t> len(2, std::max<std::size_t>(2, max_points));
      std::uniform_real_distribution<double> u(-2.0, 2.0);
      std::vector<double> p(len(rng));
      for (auto& v : p) v = u(rng);
      std::sort(p.begin(), p.end());
      return p;
    };
  } else {
    throw Error(ErrorKind::unknown_instance, "path family '" + paths + "'");
  }

  auto w = strong_fw_probe(space, gen, budget, level, endpoint_level);
  json report{{"space", space.name}, {"paths", paths}, {"budget", budget}, {"level", level},
              {"endpoint_level", endpoint_level}, {"witness_found", w.has_value()}};
  if (w) report["witness"] = {{"points", w->path.size()}, {"chain_sum", w->chain_sum}, {"endpoint", w->endpoint},
                              {"path_start", w->path.front()}, {"path_end", w->path.back()}};
  write_json(out / "report.json", report);
  Outcome o;
  o.summary = {{"witness_found", w.has_value()}};
  return o;
}

}  // namespace detail

/// Runs one mode. Always writes summary.json into the output directory.
inline int run(const RunConfig& cfg, std::ostream& log) {
  namespace fs = std::filesystem;
  const fs::path out(cfg.out.empty() ? "." : cfg.out);
  json summary{{"mode", cfg.mode}, {"seed", cfg.seed}, {"eps_level", cfg.eps_level}, {"max_iter", cfg.max_iter}};
  int code = ExitCode::ok;
  try {
    fs::create_directories(out);
    static const std::vector<std::string> modes{"solve", "solve-monotone", "solve-multiple", "fredholm",
                                                "verify-axioms", "fw-probe"};
    if (std::find(modes.begin(), modes.end(), cfg.mode) == modes.end())
      throw Error(ErrorKind::invalid_mode, "unknown mode '" + cfg.mode + "'");
    json pb = json::object();
    if (!cfg.problem.empty()) pb = load_problem(cfg.problem);
    else if (cfg.mode != "verify-axioms" && cfg.mode != "fw-probe")
      throw Error(ErrorKind::parse_error, "mode '" + cfg.mode + "' needs --problem");

    detail::Outcome o;
    if (cfg.mode == "solve") o = detail::run_solve(cfg, pb, false, out);
    else if (cfg.mode == "solve-monotone") o = detail::run_solve(cfg, pb, true, out);
    else if (cfg.mode == "solve-multiple") o = detail::run_multiple(cfg, pb, out);
    else if (cfg.mode == "fredholm") o = detail::run_fredholm(cfg, pb, out);
    else if (cfg.mode == "verify-axioms") o = detail::run_verify(cfg, pb, out);
    else o = detail::run_fw_probe(cfg, pb, out);
    code = o.code;
    summary.update(o.summary);
  } catch (const Error& e) {
    code = ExitCode::input_error;
    summary["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    log << e.what() << "\n";
  } catch (const std::exception& e) {
    code = ExitCode::input_error;
    summary["error"] = {{"kind", "InvalidArgument"}, {"message", e.what()}};
    log << e.what() << "\n";
  }
  summary["exit_code"] = code;
  try {
    detail::write_json(out / "summary.json", summary);
  } catch (const std::exception& e) {
    log << "cannot write summary: " << e.what() << "\n";
  }
  return code;
}

}  // namespace mfix::cli
