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

#include "qgame/sim/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgame::sim {

namespace {

constexpr double kUnitTolerance = 1e-9;

}  // namespace

double Vec3::norm() const { return std::sqrt(dot(*this)); }

void require_unit(const Vec3& v) {
  if (!(std::abs(v.norm() - 1.0) <= kUnitTolerance)) {
    throw std::domain_error("measurement direction must be a unit vector");
  }
}

BlochPoint::BlochPoint(double r, double theta, double phi)
    : r_(r), theta_(theta), phi_(phi) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw std::domain_error("Bloch radius must lie in [0, 1]");
  }
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw std::domain_error("polar angle must lie in [0, pi]");
  }
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
    throw std::domain_error("azimuth must lie in [0, 2pi)");
  }
}

BlochPoint BlochPoint::from_direction(const Vec3& unit) {
  require_unit(unit);
  const double theta = std::acos(std::clamp(unit.z / unit.norm(), -1.0, 1.0));
  double phi = std::atan2(unit.y, unit.x);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  return BlochPoint(1.0, theta, phi);
}

Vec3 BlochPoint::position() const {
  const double s = std::sin(theta_);
  return {r_ * s * std::cos(phi_), r_ * s * std::sin(phi_),
          r_ * std::cos(theta_)};
}

std::complex<double> DensityMatrix::trace() const {
  return entries_[0][0] + entries_[1][1];
}

bool DensityMatrix::is_hermitian(double tol) const {
  return std::abs(entries_[0][0].imag()) <= tol &&
         std::abs(entries_[1][1].imag()) <= tol &&
         std::abs(entries_[0][1] - std::conj(entries_[1][0])) <= tol;
}

std::array<double, 2> DensityMatrix::eigenvalues() const {
  const double a = entries_[0][0].real();
  const double d = entries_[1][1].real();
  const double off = std::abs(entries_[0][1]);
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), off);
  return {mean - radius, mean + radius};
}

bool DensityMatrix::is_valid_state(double tol) const {
  if (!is_hermitian(tol)) return false;
  if (std::abs(trace() - 1.0) > tol) return false;
  return eigenvalues()[0] >= -tol;
}

DensityMatrix bloch_to_density(const BlochPoint& point) {
  const double r = point.r();
  const double c = r * std::cos(point.theta());
  const double s = r * std::sin(point.theta());
  const std::complex<double> upper = std::polar(s, -point.phi());
  DensityMatrix::Entries m{};
  m[0][0] = 0.5 * (1.0 + c);
  m[0][1] = 0.5 * upper;
  m[1][0] = 0.5 * std::conj(upper);
  m[1][1] = 0.5 * (1.0 - c);
  return DensityMatrix(m);
}

double angle_between(const BlochPoint& v, const Vec3& u) {
  if (!v.is_pure()) {
    throw std::domain_error("angle_between needs a surface (pure) state");
  }
  require_unit(u);
  return std::acos(std::clamp(v.position().dot(u), -1.0, 1.0));
}

}  // namespace qgame::sim
