/*
 * Copyright 2026 The Gridsafe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gridsafe/qp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace gridsafe {

namespace {

constexpr double kInfObjective = std::numeric_limits<double>::infinity();

// min 0.5 z' diag(h) z + g' z  subject to A z <= b, with diag(h) > 0.
struct TinyQp {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd h;
  Eigen::VectorXd g;
};

struct TinyQpResult {
  bool feasible = false;
  Eigen::VectorXd z;
  Eigen::VectorXd lambda;
  double objective = kInfObjective;
};

double feasibility_slack(const TinyQp& qp, int row, const Eigen::VectorXd& z) {
  return 1e-9 * (1.0 + std::abs(qp.b[row]) +
                 qp.A.row(row).cwiseAbs().sum() * z.cwiseAbs().maxCoeff());
}

// Exact solve by enumerating candidate active sets. The minimizer of a
// strictly convex QP coincides with the equality-constrained minimizer for
// its active set, so checking every stationary point of every subset of at
// most n constraints against primal feasibility finds it.
TinyQpResult solve_tiny_qp(const TinyQp& qp) {
  const int n = static_cast<int>(qp.h.size());
  const int m = static_cast<int>(qp.b.size());
  TinyQpResult best;

  std::vector<int> subset;
  const auto try_subset = [&](const std::vector<int>& active) {
    const int k = static_cast<int>(active.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + k, n + k);
    Eigen::VectorXd rhs(n + k);
    kkt.topLeftCorner(n, n) = qp.h.asDiagonal();
    rhs.head(n) = -qp.g;
    for (int i = 0; i < k; ++i) {
      kkt.block(n + i, 0, 1, n) = qp.A.row(active[i]);
      kkt.block(0, n + i, n, 1) = qp.A.row(active[i]).transpose();
      rhs[n + i] = qp.b[active[i]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) return;
    const Eigen::VectorXd sol = lu.solve(rhs);
    const Eigen::VectorXd z = sol.head(n);
    for (int i = 0; i < m; ++i) {
      if (qp.A.row(i).dot(z) - qp.b[i] > feasibility_slack(qp, i, z)) return;
    }
    const double objective = 0.5 * z.dot(qp.h.asDiagonal() * z) + qp.g.dot(z);
    if (objective < best.objective) {
      best.feasible = true;
      best.z = z;
      best.objective = objective;
      best.lambda = Eigen::VectorXd::Zero(m);
      for (int i = 0; i < k; ++i) best.lambda[active[i]] = sol[n + i];
    }
  };

  // All subsets of rows with size 0..n, in lexicographic order.
  const std::function<void(int, int)> recurse = [&](int start, int depth) {
    try_subset(subset);
    if (depth == n) return;
    for (int i = start; i < m; ++i) {
      subset.push_back(i);
      recurse(i + 1, depth + 1);
      subset.pop_back();
    }
  };
  recurse(0, 0);
  return best;
}

void check_invariants(const QpProblem& p) {
  if (!(p.weights.w_v > 0.0 && p.weights.w_omega > 0.0 &&
        p.weights.w_delta > 0.0)) {
    throw std::invalid_argument("qp weights must be positive");
  }
  if (!(p.u_lb.x() <= p.u_ub.x() && p.u_lb.y() <= p.u_ub.y())) {
    throw std::invalid_argument("qp bounds need u_lb <= u_ub");
  }
}

// Rows shared by both phases: CBF rows then the four box rows, as A z <= b
// over z = (v, omega, ...extras).
void append_control_rows(const QpProblem& p, int n, Eigen::MatrixXd& a,
                         Eigen::VectorXd& b) {
  const int n_cbf = static_cast<int>(p.cbf_rows.size());
  a = Eigen::MatrixXd::Zero(n_cbf + 4, n);
  b.resize(n_cbf + 4);
  for (int i = 0; i < n_cbf; ++i) {
    a(i, 0) = -p.cbf_rows[i].a_v;
    a(i, 1) = -p.cbf_rows[i].b_omega;
    b[i] = -p.cbf_rows[i].rhs;
  }
  a(n_cbf + 0, 0) = 1.0;
  b[n_cbf + 0] = p.u_ub.x();
  a(n_cbf + 1, 0) = -1.0;
  b[n_cbf + 1] = -p.u_lb.x();
  a(n_cbf + 2, 1) = 1.0;
  b[n_cbf + 2] = p.u_ub.y();
  a(n_cbf + 3, 1) = -1.0;
  b[n_cbf + 3] = -p.u_lb.y();
}

// Largest achievable worst-case CBF margin over the box, found by
// enumerating vertices of the epigraph LP in (v, omega, t).
double best_worst_margin(const QpProblem& p) {
  std::vector<Eigen::Vector3d> rows;  // row' (v, omega, t) <= rhs
  std::vector<double> rhs;
  for (const CbfRow& r : p.cbf_rows) {
    rows.push_back({-r.a_v, -r.b_omega, 1.0});
    rhs.push_back(-r.rhs);
  }
  rows.push_back({1.0, 0.0, 0.0});
  rhs.push_back(p.u_ub.x());
  rows.push_back({-1.0, 0.0, 0.0});
  rhs.push_back(-p.u_lb.x());
  rows.push_back({0.0, 1.0, 0.0});
  rhs.push_back(p.u_ub.y());
  rows.push_back({0.0, -1.0, 0.0});
  rhs.push_back(-p.u_lb.y());

  const int m = static_cast<int>(rows.size());
  double best_t = -kInfObjective;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        Eigen::Matrix3d mat;
        mat.row(0) = rows[i];
        mat.row(1) = rows[j];
        mat.row(2) = rows[k];
        Eigen::FullPivLU<Eigen::Matrix3d> lu(mat);
        if (!lu.isInvertible()) continue;
        const Eigen::Vector3d vertex =
            lu.solve(Eigen::Vector3d(rhs[i], rhs[j], rhs[k]));
        bool ok = true;
        for (int r = 0; r < m; ++r) {
          const double slack =
              1e-9 * (1.0 + std::abs(rhs[r]) +
                      rows[r].cwiseAbs().sum() * vertex.cwiseAbs().maxCoeff());
          if (rows[r].dot(vertex) - rhs[r] > slack) {
            ok = false;
            break;
          }
        }
        if (ok && vertex.z() > best_t) best_t = vertex.z();
      }
    }
  }
  return best_t;
}

}  // namespace

std::string to_string(QpStatus status) {
  switch (status) {
    case QpStatus::kOptimal:
      return "optimal";
    case QpStatus::kCbfInfeasibleFallback:
      return "cbf_infeasible_fallback";
  }
  return "unknown";
}

QpSolution solve_qp(const QpProblem& p) {
  check_invariants(p);
  const int n_cbf = static_cast<int>(p.cbf_rows.size());

  const auto certify = [](const TinyQp& qp, const TinyQpResult& r,
                          QpSolution& sol) {
    const Eigen::VectorXd stat =
        qp.h.asDiagonal() * r.z + qp.g + qp.A.transpose() * r.lambda;
    sol.stationarity_residual = stat.cwiseAbs().maxCoeff();
    sol.complementarity_residual =
        (r.lambda.array() * (qp.A * r.z - qp.b).array()).abs().maxCoeff();
  };

  // Phase 1: hold delta at zero and try to satisfy everything outright.
  {
    TinyQp qp;
    append_control_rows(p, 2, qp.A, qp.b);
    qp.A.conservativeResize(n_cbf + 5, Eigen::NoChange);
    qp.b.conservativeResize(n_cbf + 5);
    qp.A.row(n_cbf + 4) << 0.0, p.clf.c_omega;
    qp.b[n_cbf + 4] = p.clf.rhs;
    qp.h = Eigen::Vector2d(2.0 * p.weights.w_v, 2.0 * p.weights.w_omega);
    qp.g = Eigen::Vector2d(-2.0 * p.weights.w_v * p.v_d, 0.0);
    const TinyQpResult r = solve_tiny_qp(qp);
    if (r.feasible) {
      QpSolution sol;
      sol.u = {r.z[0], r.z[1]};
      sol.delta = 0.0;
      sol.status = QpStatus::kOptimal;
      sol.relaxation_engaged = false;
      certify(qp, r, sol);
      return sol;
    }
  }

  // Phase 2: the CLF row conflicts with safety, free delta to relax it.
  {
    TinyQp qp;
    append_control_rows(p, 3, qp.A, qp.b);
    qp.A.conservativeResize(n_cbf + 6, Eigen::NoChange);
    qp.b.conservativeResize(n_cbf + 6);
    qp.A.row(n_cbf + 4) << 0.0, p.clf.c_omega, -1.0;
    qp.b[n_cbf + 4] = p.clf.rhs;
    qp.A.row(n_cbf + 5) << 0.0, 0.0, -1.0;
    qp.b[n_cbf + 5] = 0.0;
    qp.h = Eigen::Vector3d(2.0 * p.weights.w_v, 2.0 * p.weights.w_omega,
                           2.0 * p.weights.w_delta);
    qp.g = Eigen::Vector3d(-2.0 * p.weights.w_v * p.v_d, 0.0, 0.0);
    const TinyQpResult r = solve_tiny_qp(qp);
    if (r.feasible) {
      QpSolution sol;
      sol.u = {r.z[0], r.z[1]};
      sol.delta = std::max(0.0, r.z[2]);
      sol.status = QpStatus::kOptimal;
      sol.relaxation_engaged = true;
      certify(qp, r, sol);
      return sol;
    }
  }

  // The CBF rows exclude the whole box. Retreat to the bound-feasible
  // control with the best worst-case margin, cheapest such control first.
  const double t_star = best_worst_margin(p);
  TinyQp qp;
  append_control_rows(p, 2, qp.A, qp.b);
  const double slack = 1e-9 * (1.0 + std::abs(t_star));
  for (int i = 0; i < n_cbf; ++i) qp.b[i] += -t_star + slack;
  qp.h = Eigen::Vector2d(2.0 * p.weights.w_v, 2.0 * p.weights.w_omega);
  qp.g = Eigen::Vector2d(-2.0 * p.weights.w_v * p.v_d, 0.0);
  const TinyQpResult r = solve_tiny_qp(qp);

  QpSolution sol;
  sol.status = QpStatus::kCbfInfeasibleFallback;
  if (r.feasible) {
    sol.u = {r.z[0], r.z[1]};
  } else {
    // Only reachable through severe degeneracy; stop in place.
    sol.u = {std::clamp(0.0, p.u_lb.x(), p.u_ub.x()),
             std::clamp(0.0, p.u_lb.y(), p.u_ub.y())};
  }
  sol.delta = std::max(0.0, p.clf.c_omega * sol.u.omega - p.clf.rhs);
  sol.relaxation_engaged = sol.delta > 0.0;
  return sol;
}

}  // namespace gridsafe
