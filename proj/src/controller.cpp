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

#include "gridsafe/controller.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Geometry>

#include "gridsafe/angles.hpp"

namespace gridsafe {

void validate(const CbfParams& params) {
  if (!(params.l_a > 0.0) || !(params.l_a <= -params.l_s)) {
    throw std::invalid_argument("cbf params require 0 < l_a <= -l_s");
  }
  if (!(params.k_alpha > 0.0)) {
    throw std::invalid_argument("cbf params require k_alpha > 0");
  }
}

void validate(const ClfParams& params) {
  if (!(params.k_gamma > 0.0)) {
    throw std::invalid_argument("clf params require k_gamma > 0");
  }
}

double h_value(const RobotState& state, const ShapedField& field,
               const CbfParams& params) {
  validate(params);
  const FieldSample s = eval(field, state.position);
  const GradientAngle ga = gradient_angle_and_jacobian(field, state.position);
  const double cos_eta =
      ga.degenerate ? 1.0 : std::cos(wrap_angle(ga.theta_g - state.heading));
  return s.value + params.l_s + params.l_a * cos_eta;
}

HdotCoefficients hdot_coefficients(const RobotState& state,
                                   const ShapedField& field,
                                   const CbfParams& params) {
  validate(params);
  const GradientAngle ga = gradient_angle_and_jacobian(field, state.position);
  if (ga.degenerate) return {0.0, 0.0};
  const double eta = wrap_angle(ga.theta_g - state.heading);
  const Eigen::Vector2d e = state.heading_vector();
  const double sin_eta = std::sin(eta);
  HdotCoefficients c;
  c.a_v = ga.gradient_norm * std::cos(eta) -
          params.l_a * sin_eta * ga.grad_theta_g.dot(e);
  c.b_omega = params.l_a * sin_eta;
  return c;
}

ClfTerms clf_row(const RobotState& state, const ClfParams& params) {
  validate(params);
  const double e_theta = wrap_angle(state.heading - params.target_heading);
  return {0.5 * e_theta * e_theta, e_theta};
}

std::string to_string(ControlStatus status) {
  switch (status) {
    case ControlStatus::kOptimal:
      return "optimal";
    case ControlStatus::kCbfInfeasibleFallback:
      return "cbf_infeasible_fallback";
    case ControlStatus::kOutOfExtent:
      return "out_of_extent";
  }
  return "unknown";
}

QpProblem assemble_qp(const RobotState& state, const ShapedField& field,
                      const CbfParams& cbf, const ClfParams& clf,
                      const QpSettings& settings) {
  const double h = h_value(state, field, cbf);
  const HdotCoefficients c = hdot_coefficients(state, field, cbf);
  const ClfTerms clf_terms = clf_row(state, clf);

  QpProblem problem;
  problem.weights = settings.weights;
  problem.v_d = settings.v_d;
  problem.u_lb = settings.u_lb;
  problem.u_ub = settings.u_ub;
  problem.cbf_rows = {{c.a_v, c.b_omega, -cbf.k_alpha * h}};
  problem.clf = {clf_terms.c_omega, -clf.k_gamma * clf_terms.lyapunov};
  return problem;
}

ControlStepResult control_step(const RobotState& state,
                               const ShapedField& field, const CbfParams& cbf,
                               const ClfParams& clf,
                               const QpSettings& settings) {
  ControlStepResult result;
  if (!in_domain(field, state.position)) {
    result.u = {0.0, 0.0};
    result.status = ControlStatus::kOutOfExtent;
    return result;
  }

  const QpProblem problem = assemble_qp(state, field, cbf, clf, settings);
  const QpSolution sol = solve_qp(problem);
  const CbfRow& row = problem.cbf_rows.front();

  result.u = sol.u;
  result.h = -row.rhs / cbf.k_alpha;
  result.hdot_plus_alpha_h = row.a_v * sol.u.v + row.b_omega * sol.u.omega -
                             row.rhs;
  result.delta = sol.delta;
  result.status = sol.status == QpStatus::kOptimal
                      ? ControlStatus::kOptimal
                      : ControlStatus::kCbfInfeasibleFallback;
  return result;
}

std::vector<CbfRow> multi_point_rows(
    const RobotState& state, const ShapedField& field, const CbfParams& params,
    const std::vector<Eigen::Vector2d>& body_points) {
  validate(params);
  const Eigen::Vector2d e = state.heading_vector();
  const Eigen::Rotation2Dd rot(state.heading);
  std::vector<CbfRow> rows;
  rows.reserve(body_points.size());
  for (const Eigen::Vector2d& r : body_points) {
    const Eigen::Vector2d q = rot * r;
    const Eigen::Vector2d point = state.position + q;
    // The point moves at v * e + omega * Jq, with Jq the quarter-turn of q.
    const Eigen::Vector2d jq(-q.y(), q.x());

    const FieldSample s = eval(field, point);
    const GradientAngle ga = gradient_angle_and_jacobian(field, point);
    const double cos_eta =
        ga.degenerate ? 1.0 : std::cos(wrap_angle(ga.theta_g - state.heading));
    const double h = s.value + params.l_s + params.l_a * cos_eta;

    CbfRow row;
    row.rhs = -params.k_alpha * h;
    if (!ga.degenerate) {
      const double sigma =
          params.l_a * std::sin(wrap_angle(ga.theta_g - state.heading));
      row.a_v = s.gradient.dot(e) - sigma * ga.grad_theta_g.dot(e);
      row.b_omega = s.gradient.dot(jq) +
                    sigma * (1.0 - ga.grad_theta_g.dot(jq));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gridsafe
