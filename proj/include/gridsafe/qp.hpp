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

#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "gridsafe/robot.hpp"

namespace gridsafe {

// Hard safety constraint a_v * v + b_omega * omega >= rhs.
struct CbfRow {
  double a_v = 0.0;
  double b_omega = 0.0;
  double rhs = 0.0;
};

// Soft tracking constraint c_omega * omega - delta <= rhs.
struct ClfRow {
  double c_omega = 0.0;
  double rhs = 0.0;
};

struct QpWeights {
  double w_v = 1.0;
  double w_omega = 0.5;
  double w_delta = 100.0;
};

// min w_v (v - v_d)^2 + w_omega omega^2 + w_delta delta^2
// s.t. every CBF row, the CLF row, u_lb <= (v, omega) <= u_ub, delta >= 0.
// delta is a last resort: it stays at zero unless the CLF row cannot be met
// inside the safe set at all.
struct QpProblem {
  QpWeights weights;
  double v_d = 0.0;
  std::vector<CbfRow> cbf_rows;
  ClfRow clf;
  Eigen::Vector2d u_lb{0.0, -1.5};
  Eigen::Vector2d u_ub{3.0, 1.5};
};

enum class QpStatus {
  kOptimal,
  kCbfInfeasibleFallback,
};

std::string to_string(QpStatus status);

struct QpSolution {
  ControlInput u;
  double delta = 0.0;
  QpStatus status = QpStatus::kOptimal;
  // True when the CLF row had to be relaxed (delta left zero otherwise).
  bool relaxation_engaged = false;
  // Optimality certificate for the solved phase; both ~0 when optimal.
  double stationarity_residual = 0.0;
  double complementarity_residual = 0.0;
};

// Exact small dense solve by enumerating active sets of the KKT system.
// When the CBF rows conflict with the box bounds, falls back to the
// bound-feasible control maximizing the worst CBF margin and flags it.
// Throws std::invalid_argument when the problem violates its invariants.
QpSolution solve_qp(const QpProblem& p);

}  // namespace gridsafe

