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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mfix/contraction.hpp"
#include "mfix/distance_space.hpp"
#include "mfix/instances/power.hpp"
#include "mfix/ordered_monoid.hpp"

namespace mfix {

struct StopRule {
  std::size_t eps_level = 30;
  std::size_t max_iter = 10'000;
};

struct SolveOptions {
  bool override_certificate = false;
  std::size_t divergence_window = 50;
  std::size_t contraction_samples = 200;
  std::uint64_t seed = 1;
};

enum class Variant { general, orbital, monotone, multiple };

inline std::string to_string(Variant v) {
  switch (v) {
    case Variant::general: return "general";
    case Variant::orbital: return "orbital";
    case Variant::monotone: return "monotone";
    case Variant::multiple: return "multiple";
  }
  return "unknown";
}

enum class Termination {
  converged,
  max_iter_exhausted,
  certificate_refused,
  divergence_detected,
  orbit_contraction_violated,
  not_monotone_start,
  order_violated,
};

inline std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iter_exhausted: return "max_iter_exhausted";
    case Termination::certificate_refused: return "certificate_refused";
    case Termination::divergence_detected: return "divergence_detected";
    case Termination::orbit_contraction_violated: return "orbit_contraction_violated";
    case Termination::not_monotone_start: return "not_monotone_start";
    case Termination::order_violated: return "order_violated";
  }
  return "unknown";
}

template <class Space>
struct FixpointProblem {
  using point_type = typename Space::point_type;
  using monoid_type = typename Space::monoid_type;

  Space space;
  std::function<point_type(const point_type&)> map;
  ContractionOperator<monoid_type> lambda;
  point_type x0;
  StopRule stop{};
  SolveOptions options{};
  // Draws points for sampled checks of d(f x, f y) <= lambda(d(x, y)).
  std::function<point_type(Rng&)> sampler{};
  // Skips the precheck when set.
  std::optional<Certificate> certificate{};
};

struct ContractionCheck {
  std::size_t sampled = 0;
  std::size_t violations = 0;
  std::string witness;
};

template <class P, class V>
struct IterationTrace {
  Variant variant = Variant::general;
  std::vector<P> iterates;
  // step_dists[n] = d(x_n, x_{n+1}); the last entry is the residual of the
  // final iterate.
  std::vector<V> step_dists;
  Certificate certificate;
  Termination termination = Termination::max_iter_exhausted;
  std::optional<std::size_t> failure_step;
  std::optional<V> residual;
  ContractionCheck contraction_check;
  // Steps n >= 1 with step_dists[n] not below lambda(step_dists[n-1]).
  std::vector<std::size_t> orbit_violations;
  std::string uniqueness = "not claimed";
  std::vector<std::string> notes;

  bool converged() const { return termination == Termination::converged; }
  std::size_t iterations() const { return iterates.empty() ? 0 : iterates.size() - 1; }

  const P& fixpoint() const {
    if (!converged())
      throw Error(ErrorKind::not_converged, "iteration ended with " + to_string(termination));
    return iterates.back();
  }
};

template <class Space>
using TraceFor = IterationTrace<typename Space::point_type, typename Space::value_type>;

namespace detail {

template <class Space>
using Order = std::function<bool(const typename Space::point_type&, const typename Space::point_type&)>;

template <class Space>
void sample_contraction(const FixpointProblem<Space>& pb, const Order<Space>* order,
                        ContractionCheck& out) {
  if (!pb.sampler) return;
  const auto& m = pb.space.monoid();
  Rng rng(pb.options.seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t i = 0; i < pb.options.contraction_samples; ++i) {
    auto x = pb.sampler(rng);
    auto y = pb.sampler(rng);
    if (order && !(*order)(x, y) && !(*order)(y, x)) continue;
    ++out.sampled;
    const auto lhs = pb.space(pb.map(x), pb.map(y));
    const auto rhs = pb.lambda(pb.space(x, y));
    if (!le(m, lhs, rhs)) {
      if (out.violations++ == 0)
        out.witness = "x = " + encode_point(x).dump() + ", y = " + encode_point(y).dump();
    }
  }
}

template <class Space>
TraceFor<Space> run(const FixpointProblem<Space>& pb, Variant variant, const Order<Space>* order) {
  using P = typename Space::point_type;
  const auto& space = pb.space;
  const auto& m = space.monoid();
  TraceFor<Space> trace;
  trace.variant = variant;
  if (!space.complete) trace.notes.push_back("space is not declared complete");

  P x = pb.x0;
  P next = pb.map(x);
  auto d = space(x, next);

  if (pb.certificate) {
    trace.certificate = *pb.certificate;
  } else {
    trace.certificate = precheck_lambda(pb.lambda, d, space.family, space.family.horizon(),
                                        pb.options.seed, pb.options.contraction_samples);
  }
  if (!trace.certificate.certified()) {
    if (!pb.options.override_certificate) {
      trace.iterates.push_back(x);
      trace.termination = Termination::certificate_refused;
      return trace;
    }
    trace.certificate.overridden = true;
    trace.notes.push_back("proceeding on a " + to_string(trace.certificate.status) +
                          " certificate by caller override");
  }

  sample_contraction(pb, order, trace.contraction_check);

  const std::size_t level = pb.stop.eps_level;
  std::size_t rising = 0;
  for (std::size_t n = 0;; ++n) {
    trace.iterates.push_back(x);
    trace.step_dists.push_back(d);

    if (order && !(*order)(x, next)) {
      trace.termination = n == 0 ? Termination::not_monotone_start : Termination::order_violated;
      trace.failure_step = n;
      return trace;
    }
    if (n > 0) {
      const auto& prev = trace.step_dists[n - 1];
      if (!le(m, d, pb.lambda(prev))) {
        trace.orbit_violations.push_back(n);
        if (variant == Variant::orbital) {
          trace.termination = Termination::orbit_contraction_violated;
          trace.failure_step = n;
          return trace;
        }
      }
      if (space.below(d, level) && space.below(prev, level)) break;
      const auto c = m.compare(d, prev);
      rising = (c == std::partial_ordering::greater || c == std::partial_ordering::equivalent) ? rising + 1 : 0;
      if (rising >= pb.options.divergence_window) {
        trace.termination = Termination::divergence_detected;
        trace.failure_step = n;
        return trace;
      }
    } else if (space.below(d, level)) {
      break;
    }
    if (n >= pb.stop.max_iter) {
      trace.termination = Termination::max_iter_exhausted;
      trace.residual = d;
      return trace;
    }
    x = std::move(next);
    next = pb.map(x);
    d = space(x, next);
  }

  trace.termination = Termination::converged;
  trace.residual = d;
  return trace;
}

}  // namespace detail

/// Picard iteration under a global contraction bound.
template <class Space>
TraceFor<Space> picard_solve(const FixpointProblem<Space>& pb) {
  auto trace = detail::run(pb, Variant::general, nullptr);
  if (trace.converged() && trace.certificate.certified() && !trace.certificate.overridden)
    trace.uniqueness = "unique";
  return trace;
}

/// Picard iteration with the contraction bound enforced along the orbit
/// only. The limit is a fixed point provided the caller's orbital continuity
/// assertion holds for the map.
template <class Space>
TraceFor<Space> picard_solve_orbital(const FixpointProblem<Space>& pb) {
  auto trace = detail::run(pb, Variant::orbital, nullptr);
  trace.notes.push_back("orbital continuity of the map asserted by caller");
  trace.uniqueness = "not claimed";
  return trace;
}

/// Picard iteration on an ordered space, started below its image.
template <class Space>
TraceFor<Space> monotone_picard_solve(const FixpointProblem<Space>& pb,
                                      const detail::Order<Space>& order) {
  auto trace = detail::run(pb, Variant::monotone, &order);
  if (trace.converged())
    trace.uniqueness = pb.space.upper_riesz ? "unique" : "within comparable points";
  return trace;
}

/// (x_1, ..., x_m) -> (y_1, ..., y_m), y_i = f(x_{sigma_i(0)}, ..., x_{sigma_i(m-1)}).
/// Indices are 0-based.
template <class P>
std::function<std::vector<P>(const std::vector<P>&)> sigma_lift(
    std::function<P(const std::vector<P>&)> f, std::vector<std::vector<std::size_t>> sigma) {
  const std::size_t m = sigma.size();
  if (m == 0) throw Error(ErrorKind::invalid_argument, "sigma must have at least one map");
  for (std::size_t i = 0; i < m; ++i) {
    if (sigma[i].size() != m)
      throw Error(ErrorKind::index_out_of_range, "sigma_" + std::to_string(i) + " is not defined on all indices");
    for (auto v : sigma[i])
      if (v >= m)
        throw Error(ErrorKind::index_out_of_range,
                    "sigma_" + std::to_string(i) + " maps to " + std::to_string(v) + " >= m = " + std::to_string(m));
  }
  return [f = std::move(f), sigma = std::move(sigma), m](const std::vector<P>& x) {
    if (x.size() != m) throw Error(ErrorKind::invalid_argument, "tuple size differs from m");
    std::vector<P> y;
    y.reserve(m);
    std::vector<P> args(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < m; ++k) args[k] = x[sigma[i][k]];
      y.push_back(f(args));
    }
    return y;
  };
}

/// x <=_P y: x_i <= y_i for i in P and y_i <= x_i otherwise.
template <class P>
std::function<bool(const std::vector<P>&, const std::vector<P>&)> p_order(
    std::function<bool(const P&, const P&)> order, std::vector<bool> in_p) {
  return [order = std::move(order), in_p = std::move(in_p)](const std::vector<P>& x, const std::vector<P>& y) {
    if (x.size() != in_p.size() || y.size() != in_p.size()) return false;
    for (std::size_t i = 0; i < in_p.size(); ++i)
      if (!(in_p[i] ? order(x[i], y[i]) : order(y[i], x[i]))) return false;
    return true;
  };
}

template <OrderedMonoid M, class P>
struct MultipleProblem {
  DistanceSpace<M, P> space;
  std::function<P(const std::vector<P>&)> f;
  std::vector<std::vector<std::size_t>> sigma;
  std::vector<bool> in_p;
  std::function<bool(const P&, const P&)> order;
  ContractionOperator<Power<M>> lambda;
  std::vector<P> x0;
  StopRule stop{};
  SolveOptions options{};
  std::function<std::vector<P>(Rng&)> sampler{};
  std::optional<Certificate> certificate{};
};

/// sigma-multiple fixed point: monotone iteration of the lifted map on X^m
/// under the P-order and the M^m-valued distance.
template <OrderedMonoid M, class P>
IterationTrace<std::vector<P>, element_t<Power<M>>> multiple_fixpoint_solve(const MultipleProblem<M, P>& pb) {
  const std::size_t m = pb.sigma.size();
  if (pb.in_p.size() != m) throw Error(ErrorKind::invalid_argument, "P membership must have one flag per index");
  using Space = DistanceSpace<Power<M>, std::vector<P>>;
  FixpointProblem<Space> lifted{vector_product(pb.space, m),
                                sigma_lift<P>(pb.f, pb.sigma),
                                pb.lambda,
                                pb.x0,
                                pb.stop,
                                pb.options,
                                pb.sampler,
                                pb.certificate};
  auto trace = monotone_picard_solve(lifted, p_order<P>(pb.order, pb.in_p));
  trace.variant = Variant::multiple;
  return trace;
}

template <class Trace>
struct MultiStartResult {
  std::vector<Trace> traces;
  bool all_converged = true;
  bool agree = true;
  std::optional<std::pair<std::size_t, std::size_t>> disagreeing;
};

/// Runs `solve` from each start concurrently and compares the limits
/// pairwise at the given level.
template <class Space, class Solve>
auto multi_start(const FixpointProblem<Space>& pb, const std::vector<typename Space::point_type>& starts,
                 Solve solve, std::size_t level) {
  using Trace = TraceFor<Space>;
  std::vector<std::future<Trace>> jobs;
  for (const auto& s : starts) {
    auto copy = pb;
    copy.x0 = s;
    jobs.push_back(std::async(std::launch::async, [copy = std::move(copy), solve] { return solve(copy); }));
  }
  MultiStartResult<Trace> out;
  for (auto& j : jobs) out.traces.push_back(j.get());
  for (const auto& t : out.traces) out.all_converged = out.all_converged && t.converged();
  if (!out.all_converged) {
    out.agree = false;
    return out;
  }
  for (std::size_t i = 0; i < out.traces.size(); ++i)
    for (std::size_t j = i + 1; j < out.traces.size(); ++j)
      if (!pb.space.below(pb.space(out.traces[i].fixpoint(), out.traces[j].fixpoint()), level)) {
        out.agree = false;
        if (!out.disagreeing) out.disagreeing = std::pair{i, j};
      }
  return out;
}

/// Structured record of a run: certificate, per-step distances and
/// residuals, termination, checks and the final iterate.
template <class Space>
nlohmann::json trace_to_json(const TraceFor<Space>& t, const Space& space) {
  const auto& m = space.monoid();
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t n = 0; n < t.iterates.size(); ++n) {
    nlohmann::json s{{"n", n}};
    s["step_dist"] = n == 0 ? nlohmann::json() : m.encode(t.step_dists[n - 1]);
    s["residual"] = n < t.step_dists.size() ? m.encode(t.step_dists[n]) : nlohmann::json();
    s["x"] = detail::encode_point(t.iterates[n]);
    steps.push_back(std::move(s));
  }
  nlohmann::json term{{"reason", to_string(t.termination)}};
  term["failure_step"] = t.failure_step ? nlohmann::json(*t.failure_step) : nlohmann::json();
  term["residual"] = t.residual ? m.encode(*t.residual) : nlohmann::json();
  term["fixpoint"] = t.converged() ? detail::encode_point(t.iterates.back()) : nlohmann::json();
  return {{"variant", to_string(t.variant)},
          {"space", space.name},
          {"monoid", m.name()},
          {"certificate", t.certificate.to_json()},
          {"steps", std::move(steps)},
          {"termination", std::move(term)},
          {"contraction_check",
           {{"sampled", t.contraction_check.sampled},
            {"violations", t.contraction_check.violations},
            {"witness", t.contraction_check.witness}}},
          {"orbit_violations", t.orbit_violations},
          {"uniqueness", t.uniqueness},
          {"notes", t.notes}};
}

}  // namespace mfix
