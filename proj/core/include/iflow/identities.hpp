#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>

namespace iflow {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Vec3 operator*(double s, Vec3 a) {
    return {s * a.x, s * a.y, s * a.z};
  }
};

double norm(Vec3 a);

/// m[r][c] = d(component r) / d(axis c).
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};
};

/// A smooth 3D vector field with its exact Jacobian supplied analytically.
struct AnalyticField3 {
  std::function<Vec3(Vec3)> value;
  std::function<Mat3(Vec3)> jacobian;
};

/// Pointwise residual of one of the three vector-calculus identities
/// relating Jacobian transposes, advection, curls, and grad of a dot
/// product:
///   1: (Tv)^T z = (z.grad)v + z x (curl v)
///   2: Tz(v)    = (v.grad)z
///   3: (v.grad)z + (z.grad)v + z x (curl v) = grad(v.z) - v x (curl z)
/// Returns |LHS - RHS| at p, all derivatives taken from the exact
/// Jacobians. The identities are exact; residuals are floating-point noise.
double identity_residual(int item, const AnalyticField3& v, const AnalyticField3& z,
                         Vec3 p);

/// Check the field's Jacobian against central finite differences of its
/// value at the probe points. Gate for hand-supplied analytic pairs.
bool check_field_consistency(const AnalyticField3& f, std::span<const Vec3> probes,
                             double tol = 1e-6);

/// Random smooth field: linear part plus three trigonometric modes, with
/// the matching exact Jacobian.
AnalyticField3 random_analytic_field(std::mt19937_64& rng);

Vec3 random_point(std::mt19937_64& rng, double half_width = 2.0);

struct IdentityTrialReport {
  std::array<double, 3> max_residual{0.0, 0.0, 0.0};
  long trials = 0;

  bool all_within(double bound) const {
    return max_residual[0] <= bound && max_residual[1] <= bound &&
           max_residual[2] <= bound;
  }
};

inline constexpr std::uint64_t kIdentityTrialSeed = 0x1f1057a7e5eedULL;

/// Draw `trials` random field pairs and probe points; track the worst
/// residual per identity.
IdentityTrialReport run_identity_trials(long trials,
                                        std::uint64_t seed = kIdentityTrialSeed);

}  // namespace iflow
