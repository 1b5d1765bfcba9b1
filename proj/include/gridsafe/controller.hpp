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

#include "gridsafe/qp.hpp"
#include "gridsafe/robot.hpp"
#include "gridsafe/shaped_field.hpp"

namespace gridsafe {

// Barrier value parameters: h = field value + l_s + l_a cos(eta), where eta
// is the angle from the robot heading to the field gradient. Keeping
// 0 < l_a <= -l_s guarantees h >= 0 only where the field value is positive.
struct CbfParams {
  double l_s = -0.5;
  double l_a = 0.3;
  double k_alpha = 1.0;
};

// Heading objective V = 0.5 * wrap(theta - target)^2 enforced as
// V_dot <= -k_gamma * V, relaxable by the QP's delta.
struct ClfParams {
  double target_heading = 0.0;
  double k_gamma = 2.0;
};

// Throws std::invalid_argument when 0 < l_a <= -l_s or k_alpha > 0 fails.
void validate(const CbfParams& params);
void validate(const ClfParams& params);

double h_value(const RobotState& state, const ShapedField& field,
               const CbfParams& params);

struct HdotCoefficients {
  double a_v = 0.0;
  double b_omega = 0.0;
};

// Coefficients of d/dt h = a_v * v + b_omega * omega for the unicycle.
// A degenerate field gradient yields (0, 0): h is then locally flat in the
// controls and the row imposes a constant-sign condition on rhs only.
HdotCoefficients hdot_coefficients(const RobotState& state,
                                   const ShapedField& field,
                                   const CbfParams& params);

struct ClfTerms {
  double lyapunov = 0.0;
  double c_omega = 0.0;
};

// V and the coefficient of omega in V_dot = c_omega * omega.
ClfTerms clf_row(const RobotState& state, const ClfParams& params);

struct QpSettings {
  QpWeights weights;
  double v_d = 2.0;
  Eigen::Vector2d u_lb{0.0, -1.5};
  Eigen::Vector2d u_ub{3.0, 1.5};
};

enum class ControlStatus {
  kOptimal,
  kCbfInfeasibleFallback,
  kOutOfExtent,
};

std::string to_string(ControlStatus status);

struct ControlStepResult {
  ControlInput u;
  double h = 0.0;
  double hdot_plus_alpha_h = 0.0;
  double delta = 0.0;
  ControlStatus status = ControlStatus::kOptimal;
};

// The QP solved at one state: a single CBF row with rhs = -k_alpha * h, the
// CLF row toward the target heading, and the configured bounds and weights.
// Throws OutOfExtentError when the state leaves the field extent.
QpProblem assemble_qp(const RobotState& state, const ShapedField& field,
                      const CbfParams& cbf, const ClfParams& clf,
                      const QpSettings& settings);

// One controller tick: assemble the CBF row at the current state, the CLF
// row toward the target heading, solve the QP, and report diagnostics.
// Out-of-extent states command (0, 0) instead of throwing.
ControlStepResult control_step(const RobotState& state,
                               const ShapedField& field, const CbfParams& cbf,
                               const ClfParams& clf,
                               const QpSettings& settings);

// One CBF row per body-frame point, each evaluated at the point's world
// position with the rigid-body velocity map folded into the coefficients.
// Throws OutOfExtentError when any point leaves the field extent.
std::vector<CbfRow> multi_point_rows(
    const RobotState& state, const ShapedField& field, const CbfParams& params,
    const std::vector<Eigen::Vector2d>& body_points);

}  // namespace gridsafe

