// Copyright 2026 The psgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "psgate/probability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "bfgs.hpp"
#include "psgate/error.hpp"
#include "psgate/gatemap.hpp"

namespace psgate {

namespace {

struct Component {
  BranchResult meta;
  ZeroCaseParams zero;
};

struct StartResult {
  double s1 = std::numeric_limits<double>::infinity();
  Eigen::VectorXd x;
  bool converged = false;
};

Complex complex_at(const Eigen::VectorXd &x, int k) {
  return {x(2 * k), x(2 * k + 1)};
}

Matrix4 build_submatrix(
    const CanonicalWeights &w, const Component &c, const Eigen::VectorXd &x,
    double tol) {
  switch (c.meta.kind) {
    case SolutionKind::NonZero:
      return nonzero_point(w, *c.meta.branch, complex_at(x, 0), complex_at(x, 1))
          .submatrix;
    case SolutionKind::ZeroCase: {
      ZeroCaseParams p = c.zero;
      p.u30 = complex_at(x, 0);
      p.u32 = complex_at(x, 1);
      return solve_zero(w, p, tol).submatrix;
    }
    case SolutionKind::Shortcut:
      return solve_zero(w, c.zero, tol).submatrix;
  }
  return Matrix4::Zero();
}

double log_s1(
    const CanonicalWeights &w, const Component &c, const Eigen::VectorXd &x,
    double tol) {
  try {
    const Matrix4 u = build_submatrix(w, c, x, tol);
    if (!is_finite(u)) return std::numeric_limits<double>::infinity();
    const double s1 = largest_singular_value(u);
    return s1 > 0 ? std::log(s1) : std::numeric_limits<double>::infinity();
  } catch (const Error &) {
    return std::numeric_limits<double>::infinity();
  }
}

/// Checked reconstruction of the point reached by a start.
SolutionPoint rebuild(
    const CanonicalWeights &w, const Component &c, const Eigen::VectorXd &x,
    double tol) {
  switch (c.meta.kind) {
    case SolutionKind::NonZero:
      return solve_nonzero(
          w, *c.meta.branch, complex_at(x, 0), complex_at(x, 1), tol);
    case SolutionKind::ZeroCase: {
      ZeroCaseParams p = c.zero;
      p.u30 = complex_at(x, 0);
      p.u32 = complex_at(x, 1);
      return solve_zero(w, p, tol);
    }
    case SolutionKind::Shortcut:
      return solve_zero(w, c.zero, tol);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown solution kind");
}

std::vector<Component> enumerate_components(
    const CanonicalWeights &w, double tol) {
  std::vector<Component> out;
  const auto ws = w.as_array();
  const bool zero_case = std::any_of(
      ws.begin(), ws.end(), [tol](Complex x) { return std::abs(x) <= tol; });
  if (!zero_case) {
    for (const SignBranch &b : valid_branches(w, tol)) {
      Component c;
      c.meta.label = b.label();
      c.meta.kind = SolutionKind::NonZero;
      c.meta.branch = b;
      out.push_back(c);
    }
    return out;
  }
  if (has_shortcut(w, tol)) {
    Component c;
    c.meta.label = "shortcut";
    c.meta.kind = SolutionKind::Shortcut;
    c.zero.prefer_shortcut = true;
    out.push_back(c);
  }
  for (int idx = 1; idx <= 4; ++idx) {
    if (std::abs(ws[idx - 1]) > tol) continue;
    const WeightReduction red = reduce_to_w1_zero(w, tol, idx);
    const int roots = zero_case_root_count(red.reduced, tol);
    for (int r = 0; r < roots; ++r) {
      Component c;
      c.meta.label = "zero:w" + std::to_string(idx) + ":root" + std::to_string(r);
      c.meta.kind = SolutionKind::ZeroCase;
      c.meta.zero_index = idx;
      c.meta.root = r;
      c.zero.zero_index = idx;
      c.zero.root = r;
      c.zero.prefer_shortcut = false;
      out.push_back(c);
    }
  }
  return out;
}

Eigen::VectorXd random_start(
    std::uint64_t seed, std::size_t component, int start, double radius) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed & 0xffffffffu),
      static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(component), static_cast<std::uint32_t>(start)};
  std::mt19937_64 rng(seq);
  const double log_r = std::log(std::max(radius, 1.0 + 1e-12));
  std::uniform_real_distribution<double> log_mag(-log_r, log_r);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  Eigen::VectorXd x(4);
  for (int k = 0; k < 2; ++k) {
    const Complex z = std::polar(std::exp(log_mag(rng)), phase(rng));
    x(2 * k) = z.real();
    x(2 * k + 1) = z.imag();
  }
  return x;
}

}  // namespace

double success_probability(const ComplexMatrix &u) {
  const double s1 = largest_singular_value(u);
  if (s1 <= 1.0) return 1.0;
  return std::pow(s1, -4.0);
}

OptimizationReport optimize(
    const CanonicalWeights &w, const OptimizationConfig &cfg) {
  if (cfg.restarts < 1 || cfg.max_iterations < 1) {
    throw Error(
        ErrorCode::InvalidArgument, "restarts and max_iterations must be >= 1");
  }
  const auto verdict = check_weights(w, cfg.tol);
  if (!verdict.achievable) {
    throw Error(ErrorCode::NotAchievable, verdict.describe());
  }
  std::vector<Component> comps = enumerate_components(w, cfg.tol);
  if (comps.empty()) {
    throw Error(ErrorCode::NotAchievable, "no solution family for weights");
  }

  struct Job {
    std::size_t component;
    int start;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const int n = comps[c].meta.kind == SolutionKind::Shortcut ? 1 : cfg.restarts;
    for (int k = 0; k < n; ++k) jobs.push_back({c, k});
  }
  std::vector<StartResult> results(jobs.size());

  auto run_job = [&](std::size_t j) {
    const Component &comp = comps[jobs[j].component];
    StartResult &out = results[j];
    if (comp.meta.kind == SolutionKind::Shortcut) {
      out.x = Eigen::VectorXd::Zero(4);
      out.s1 = std::exp(log_s1(w, comp, out.x, cfg.tol));
      out.converged = std::isfinite(out.s1);
      return;
    }
    const Eigen::VectorXd x0 =
        random_start(cfg.seed, jobs[j].component, jobs[j].start, cfg.start_radius);
    auto objective = [&](const Eigen::VectorXd &x) {
      return log_s1(w, comp, x, cfg.tol);
    };
    const auto r = detail::minimize_bfgs(
        objective, x0, cfg.max_iterations, cfg.objective_tolerance);
    out.x = r.x;
    out.s1 = std::exp(r.value);
    out.converged = r.converged && std::isfinite(r.value);
  };

  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        for (std::size_t j = next++; j < jobs.size(); j = next++) run_job(j);
      });
    }
    for (auto &th : pool) th.join();
  }

  OptimizationReport report;
  report.weights = w;
  report.starts_total = static_cast<int>(jobs.size());
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    BranchResult &meta = comps[jobs[j].component].meta;
    const StartResult &r = results[j];
    ++meta.starts;
    if (r.converged) {
      ++meta.converged;
      ++report.starts_converged;
    }
    if (r.s1 < meta.best_s1) meta.best_s1 = r.s1;
    if (cfg.record_history) report.objective_history.push_back(r.s1);
  }
  for (Component &c : comps) {
    c.meta.best_p = std::isfinite(c.meta.best_s1)
                        ? (c.meta.best_s1 <= 1.0 ? 1.0
                                                 : std::pow(c.meta.best_s1, -4.0))
                        : 0.0;
    report.per_branch_best.push_back(c.meta);
  }
  report.converged = report.starts_converged > 0;

  // Best first; ties resolved by schedule order.
  std::vector<std::size_t> order(jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return results[a].s1 < results[b].s1;
  });
  for (std::size_t j : order) {
    if (!std::isfinite(results[j].s1)) break;
    try {
      report.best_point =
          rebuild(w, comps[jobs[j].component], results[j].x, cfg.tol);
    } catch (const Error &) {
      continue;
    }
    report.best_p = success_probability(report.best_point.submatrix);
    return report;
  }
  throw Error(ErrorCode::NoConvergence, "no start reached a valid solution");
}

GateOptimization optimize_gate(
    const ComplexMatrix &w, const OptimizationConfig &cfg) {
  require_shape(w, 4, 4, "optimize_gate");
  GateOptimization g;
  g.target = canonical_target(w, cfg.tol);
  g.report = optimize(g.target.weights, cfg);
  g.unscaled = transport_to_gate(g.report.best_point.submatrix, g.target.kak);
  g.f_residual = max_abs_diff(f_entrywise(g.unscaled), w);
  g.submatrix = g.unscaled / std::max(1.0, largest_singular_value(g.unscaled));
  return g;
}

NetworkCheck check_network(const ComplexMatrix &u, const ComplexMatrix &target) {
  require_shape(target, 4, 4, "network target");
  NetworkCheck out;
  out.block = transfer_matrix(u);
  const Matrix4 t = target;
  const Complex num = (t.adjoint() * out.block.block).trace();
  const double den = t.squaredNorm();
  out.scale = num / den;
  out.residual = max_abs_diff(out.block.block, out.scale * t);
  out.p = std::norm(out.scale);
  return out;
}

double probability_of_network(
    const ComplexMatrix &u, const ComplexMatrix &target, double tol) {
  require_unitary(target, kInputUnitaryTol, "network target");
  const NetworkCheck c = check_network(u, target);
  if (c.residual > tol) {
    throw Error(
        ErrorCode::NotProportional,
        "post-selected block differs from a multiple of the target by " +
            std::to_string(c.residual));
  }
  return c.p;
}

}  // namespace psgate
