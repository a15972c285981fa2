// Copyright 2026 The qgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGAME_SIM_BLOCH_HPP_
#define QGAME_SIM_BLOCH_HPP_

#include <array>
#include <complex>

namespace qgame::sim {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const;
  Vec3 operator-() const { return {-x, -y, -z}; }
};

// Throws std::domain_error unless |v| = 1 within 1e-9.
void require_unit(const Vec3& v);

// Spin state as a point of the closed unit ball: r = 1 on the sphere for
// pure states, r < 1 inside for mixed ones.
class BlochPoint {
 public:
  // Throws std::domain_error unless r in [0,1], theta in [0,pi],
  // phi in [0, 2pi).
  BlochPoint(double r, double theta, double phi);

  static BlochPoint from_direction(const Vec3& unit);

  double r() const { return r_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }
  bool is_pure() const { return r_ == 1.0; }

  // Cartesian point r * (sin t cos f, sin t sin f, cos t).
  Vec3 position() const;

 private:
  double r_;
  double theta_;
  double phi_;
};

class DensityMatrix {
 public:
  using Entries = std::array<std::array<std::complex<double>, 2>, 2>;

  explicit DensityMatrix(const Entries& entries) : entries_(entries) {}

  const std::complex<double>& operator()(int row, int col) const {
    return entries_[row][col];
  }
  const Entries& entries() const { return entries_; }

  std::complex<double> trace() const;
  bool is_hermitian(double tol = 1e-12) const;
  // Ascending, assuming Hermitian.
  std::array<double, 2> eigenvalues() const;
  // Hermitian, unit trace and positive semidefinite within tol.
  bool is_valid_state(double tol = 1e-12) const;

 private:
  Entries entries_;
};

//   1/2 [ 1 + r cos t          r sin t e^{-i f} ]
//       [ r sin t e^{i f}      1 - r cos t      ]
DensityMatrix bloch_to_density(const BlochPoint& point);

// Angle between the pure state direction and a measurement axis, in [0, pi].
// Throws std::domain_error if the state is not on the sphere or u is not a
// unit vector.
double angle_between(const BlochPoint& v, const Vec3& u);

}  // namespace qgame::sim

#endif  // QGAME_SIM_BLOCH_HPP_
