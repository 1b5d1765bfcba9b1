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

#include "gridsafe/shaped_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gridsafe/angles.hpp"

namespace gridsafe {

namespace {

void check_params(const ShapingParams& params) {
  if (!(params.a > 0.0) || !(params.b > 0.0)) {
    throw std::invalid_argument("shaping params a and b must be positive");
  }
}

// Catmull-Rom basis over nodes at offsets {-1, 0, 1, 2}, t in [0, 1], plus
// first and second derivatives with respect to t.
void weights(double t, Eigen::Vector4d& w, Eigen::Vector4d& dw,
             Eigen::Vector4d& ddw) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  w << -0.5 * t3 + t2 - 0.5 * t,          //
      1.5 * t3 - 2.5 * t2 + 1.0,          //
      -1.5 * t3 + 2.0 * t2 + 0.5 * t,     //
      0.5 * t3 - 0.5 * t2;
  dw << -1.5 * t2 + 2.0 * t - 0.5,        //
      4.5 * t2 - 5.0 * t,                 //
      -4.5 * t2 + 4.0 * t + 0.5,          //
      1.5 * t2 - t;
  ddw << -3.0 * t + 2.0,                  //
      9.0 * t - 5.0,                      //
      -9.0 * t + 4.0,                     //
      3.0 * t - 1.0;
}

// Pulls coordinates sitting within rounding noise of a node line onto it, so
// cell centers evaluate to node values exactly.
double snap(double u) {
  const double r = std::round(u);
  return std::abs(u - r) < 1e-9 ? r : u;
}

}  // namespace

double shape_value(double phi, const ShapingParams& params) {
  // copysign keeps the map exactly odd; tanh itself need not be.
  return std::copysign(params.a * std::tanh(params.b * std::abs(phi)), phi);
}

Eigen::ArrayXXd shape_nodes(const SdfField& sdf, const ShapingParams& params) {
  check_params(params);
  Eigen::ArrayXXd nodes(sdf.values.rows(), sdf.values.cols());
  for (Eigen::Index i = 0; i < sdf.values.size(); ++i) {
    nodes(i) = shape_value(sdf.values(i), params);
  }
  return nodes;
}

ShapedField ShapedField::build(const SdfField& sdf,
                               const ShapingParams& params) {
  return {sdf.frame, shape_nodes(sdf, params), params};
}

bool in_domain(const ShapedField& field, const Eigen::Vector2d& p) {
  if (field.frame.width < 4 || field.frame.height < 4) return false;
  const Eigen::Vector2d u = field.frame.world_to_grid(p);
  return u.x() >= 1.0 && u.x() <= field.frame.width - 2.0 && u.y() >= 1.0 &&
         u.y() <= field.frame.height - 2.0;
}

FieldSample eval(const ShapedField& field, const Eigen::Vector2d& p) {
  if (!in_domain(field, p)) {
    throw OutOfExtentError("field evaluation outside the interpolable extent");
  }
  const Eigen::Vector2d u = field.frame.world_to_grid(p);
  const double ux = snap(u.x());
  const double uy = snap(u.y());
  const int ix0 = std::clamp(static_cast<int>(std::floor(ux)), 1,
                             field.frame.width - 3);
  const int iy0 = std::clamp(static_cast<int>(std::floor(uy)), 1,
                             field.frame.height - 3);
  const double tx = ux - ix0;
  const double ty = uy - iy0;

  Eigen::Vector4d wx, dwx, ddwx, wy, dwy, ddwy;
  weights(tx, wx, dwx, ddwx);
  weights(ty, wy, dwy, ddwy);

  Eigen::Matrix4d patch;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      patch(m, n) = field.node_values(ix0 - 1 + m, iy0 - 1 + n);
    }
  }

  const double inv_res = 1.0 / field.frame.resolution;
  FieldSample s;
  s.value = wx.dot(patch * wy);
  s.gradient.x() = dwx.dot(patch * wy) * inv_res;
  s.gradient.y() = wx.dot(patch * dwy) * inv_res;
  s.hessian(0, 0) = ddwx.dot(patch * wy) * inv_res * inv_res;
  s.hessian(1, 1) = wx.dot(patch * ddwy) * inv_res * inv_res;
  s.hessian(0, 1) = dwx.dot(patch * dwy) * inv_res * inv_res;
  s.hessian(1, 0) = s.hessian(0, 1);
  return s;
}

double degenerate_gradient_threshold(const ShapingParams& params) {
  return 1e-6 * params.a * params.b;
}

GradientAngle gradient_angle_and_jacobian(const ShapedField& field,
                                          const Eigen::Vector2d& p) {
  const FieldSample s = eval(field, p);
  GradientAngle out;
  out.gradient_norm = s.gradient.norm();
  if (out.gradient_norm < degenerate_gradient_threshold(field.params)) {
    out.degenerate = true;
    return out;
  }
  out.theta_g = std::atan2(s.gradient.y(), s.gradient.x());
  const Eigen::Vector2d grad_gx = s.hessian.col(0);
  const Eigen::Vector2d grad_gy = s.hessian.col(1);
  out.grad_theta_g = (s.gradient.x() * grad_gy - s.gradient.y() * grad_gx) /
                     (out.gradient_norm * out.gradient_norm);
  return out;
}

void mask_rear_half_plane(ShapedField& field, const RobotState& state) {
  const Eigen::Vector2d e = state.heading_vector();
  for (int iy = 0; iy < field.frame.height; ++iy) {
    for (int ix = 0; ix < field.frame.width; ++ix) {
      const Eigen::Vector2d r = field.frame.cell_center(ix, iy) - state.position;
      if (r.dot(e) < 0.0) field.node_values(ix, iy) = field.params.a;
    }
  }
}

}  // namespace gridsafe
