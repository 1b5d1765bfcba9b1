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

#include <stdexcept>

#include <Eigen/Core>

#include "gridsafe/grid_frame.hpp"
#include "gridsafe/robot.hpp"
#include "gridsafe/sdf.hpp"

namespace gridsafe {

struct OutOfExtentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Saturating distance rescale a * tanh(b * phi). a caps the output in meters,
// b sets how fast the cap is reached.
struct ShapingParams {
  double a = 2.0;
  double b = 0.5;
};

// Exactly odd in phi, so shaping a negated field negates the result bit for bit.
double shape_value(double phi, const ShapingParams& params);

Eigen::ArrayXXd shape_nodes(const SdfField& sdf, const ShapingParams& params);

// Bicubic interpolant over shaped node values. Evaluations reproduce the
// nodes exactly and carry analytic first and second derivatives.
struct ShapedField {
  GridFrame frame;
  Eigen::ArrayXXd node_values;
  ShapingParams params;

  static ShapedField build(const SdfField& sdf, const ShapingParams& params);
};

struct FieldSample {
  double value = 0.0;
  Eigen::Vector2d gradient = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hessian = Eigen::Matrix2d::Zero();
};

// Direction of steepest ascent and how it turns in space. When the gradient
// norm falls under the degeneracy threshold the direction is meaningless;
// callers get theta_g = 0, grad_theta_g = 0 and the flag set.
struct GradientAngle {
  double theta_g = 0.0;
  Eigen::Vector2d grad_theta_g = Eigen::Vector2d::Zero();
  double gradient_norm = 0.0;
  bool degenerate = false;
};

// Interpolation needs a full 4x4 node neighborhood, so the valid domain is
// the grid extent shrunk by one cell on every side.
bool in_domain(const ShapedField& field, const Eigen::Vector2d& p);

// Throws OutOfExtentError outside the valid domain.
FieldSample eval(const ShapedField& field, const Eigen::Vector2d& p);

GradientAngle gradient_angle_and_jacobian(const ShapedField& field,
                                          const Eigen::Vector2d& p);

double degenerate_gradient_threshold(const ShapingParams& params);

// Overwrites nodes strictly behind the robot (negative component along its
// heading) with the saturated value +a, removing their influence.
void mask_rear_half_plane(ShapedField& field, const RobotState& state);

}  // namespace gridsafe

