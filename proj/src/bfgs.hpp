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

#pragma once

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace psgate::detail {

struct BfgsResult {
  Eigen::VectorXd x;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

/// Central-difference gradient with a step relative to |x_i|.
template <typename Objective>
Eigen::VectorXd numeric_gradient(
    Objective &f, const Eigen::VectorXd &x, double rel_step) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::max(1.0, std::abs(x(i)));
    probe(i) = x(i) + h;
    const double up = f(probe);
    probe(i) = x(i) - h;
    const double down = f(probe);
    probe(i) = x(i);
    g(i) = (up - down) / (2.0 * h);
  }
  return g;
}

/**
 * Quasi-Newton minimisation with an inverse-Hessian BFGS update and an
 * Armijo backtracking line search. Stops when the objective changes by less
 * than ftol (relative), the gradient vanishes, or max_iter is reached.
 */
template <typename Objective>
BfgsResult minimize_bfgs(
    Objective &&f, Eigen::VectorXd x, int max_iter, double ftol,
    double rel_step = 1e-6) {
  BfgsResult r;
  const Eigen::Index n = x.size();
  double fx = f(x);
  r.x = x;
  r.value = fx;
  if (!std::isfinite(fx)) return r;

  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd g = numeric_gradient(f, x, rel_step);
  bool scaled = false;
  for (int it = 0; it < max_iter; ++it) {
    r.iterations = it + 1;
    if (!g.allFinite()) break;
    if (g.lpNorm<Eigen::Infinity>() < 1e-12) {
      r.converged = true;
      break;
    }
    Eigen::VectorXd d = -h_inv * g;
    double slope = g.dot(d);
    if (!(slope < 0)) {
      h_inv.setIdentity();
      d = -g;
      slope = -g.squaredNorm();
    }
    double step = 1.0;
    double f_new = fx;
    Eigen::VectorXd x_new = x;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = x + step * d;
      f_new = f(x_new);
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // Stalled at numerical precision: treat a tiny gradient as converged.
      r.converged = g.lpNorm<Eigen::Infinity>() < 1e-6;
      break;
    }
    const Eigen::VectorXd g_new = numeric_gradient(f, x_new, rel_step);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-14) {
      if (!scaled) {
        h_inv *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      h_inv = (id - rho * s * y.transpose()) * h_inv *
                  (id - rho * y * s.transpose()) +
              rho * s * s.transpose();
    }
    const double change = std::abs(fx - f_new);
    x = x_new;
    fx = f_new;
    g = g_new;
    if (change <= ftol * (1.0 + std::abs(fx))) {
      r.converged = true;
      break;
    }
  }
  r.x = x;
  r.value = fx;
  return r;
}

}  // namespace psgate::detail
