#include "iflow/identities.hpp"

#include <cmath>

#include "iflow/errors.hpp"

namespace iflow {

double norm(Vec3 a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }

namespace {

Vec3 apply(const Mat3& j, Vec3 w) {
  return {j.m[0][0] * w.x + j.m[0][1] * w.y + j.m[0][2] * w.z,
          j.m[1][0] * w.x + j.m[1][1] * w.y + j.m[1][2] * w.z,
          j.m[2][0] * w.x + j.m[2][1] * w.y + j.m[2][2] * w.z};
}

Vec3 apply_transpose(const Mat3& j, Vec3 w) {
  return {j.m[0][0] * w.x + j.m[1][0] * w.y + j.m[2][0] * w.z,
          j.m[0][1] * w.x + j.m[1][1] * w.y + j.m[2][1] * w.z,
          j.m[0][2] * w.x + j.m[1][2] * w.y + j.m[2][2] * w.z};
}

/// (w.grad)f assembled axis by axis from the Jacobian columns.
Vec3 directional_derivative(const Mat3& j, Vec3 w) {
  return {w.x * j.m[0][0] + w.y * j.m[0][1] + w.z * j.m[0][2],
          w.x * j.m[1][0] + w.y * j.m[1][1] + w.z * j.m[1][2],
          w.x * j.m[2][0] + w.y * j.m[2][1] + w.z * j.m[2][2]};
}

Vec3 curl_from_jacobian(const Mat3& j) {
  return {j.m[2][1] - j.m[1][2], j.m[0][2] - j.m[2][0], j.m[1][0] - j.m[0][1]};
}

Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// grad(v.z) by the product rule on the exact Jacobians.
Vec3 grad_dot(const Mat3& jv, Vec3 v, const Mat3& jz, Vec3 z) {
  return apply_transpose(jv, z) + apply_transpose(jz, v);
}

}  // namespace

double identity_residual(int item, const AnalyticField3& v, const AnalyticField3& z,
                         Vec3 p) {
  const Vec3 vv = v.value(p);
  const Vec3 zv = z.value(p);
  const Mat3 jv = v.jacobian(p);
  const Mat3 jz = z.jacobian(p);

  switch (item) {
    case 1: {
      const Vec3 lhs = apply_transpose(jv, zv);
      const Vec3 rhs = apply(jv, zv) + cross(zv, curl_from_jacobian(jv));
      return norm(lhs - rhs);
    }
    case 2: {
      const Vec3 lhs = apply(jz, vv);
      const Vec3 rhs = directional_derivative(jz, vv);
      return norm(lhs - rhs);
    }
    case 3: {
      const Vec3 lhs = directional_derivative(jz, vv) + apply(jv, zv) +
                       cross(zv, curl_from_jacobian(jv));
      const Vec3 rhs =
          grad_dot(jv, vv, jz, zv) - cross(vv, curl_from_jacobian(jz));
      return norm(lhs - rhs);
    }
    default:
      throw Error("identity_residual: item must be 1, 2, or 3");
  }
}

bool check_field_consistency(const AnalyticField3& f, std::span<const Vec3> probes,
                             double tol) {
  const double h = 1e-6;
  for (const Vec3& p : probes) {
    const Mat3 j = f.jacobian(p);
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 dp{};
      (axis == 0 ? dp.x : axis == 1 ? dp.y : dp.z) = h;
      const Vec3 fd = (1.0 / (2.0 * h)) * (f.value(p + dp) - f.value(p - dp));
      const double err = std::max({std::abs(fd.x - j.m[0][axis]),
                                   std::abs(fd.y - j.m[1][axis]),
                                   std::abs(fd.z - j.m[2][axis])});
      if (err > tol) return false;
    }
  }
  return true;
}

AnalyticField3 random_analytic_field(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> freq(-2.0, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.14159265358979323846);

  std::array<std::array<double, 3>, 3> linear{};
  std::array<double, 3> constant{};
  std::array<Vec3, 3> wave{};
  std::array<std::array<double, 3>, 3> amp{};
  std::array<std::array<double, 3>, 3> shift{};
  for (int r = 0; r < 3; ++r) {
    constant[r] = unit(rng);
    for (int c = 0; c < 3; ++c) linear[r][c] = unit(rng);
  }
  for (int m = 0; m < 3; ++m) {
    wave[m] = {freq(rng), freq(rng), freq(rng)};
    for (int r = 0; r < 3; ++r) {
      amp[r][m] = unit(rng);
      shift[r][m] = phase(rng);
    }
  }

  auto value = [=](Vec3 p) {
    Vec3 out{constant[0], constant[1], constant[2]};
    const std::array<double*, 3> comp{&out.x, &out.y, &out.z};
    const std::array<double, 3> coords{p.x, p.y, p.z};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) *comp[r] += linear[r][c] * coords[c];
      for (int m = 0; m < 3; ++m) {
        const double arg = wave[m].x * p.x + wave[m].y * p.y + wave[m].z * p.z + shift[r][m];
        *comp[r] += amp[r][m] * std::sin(arg);
      }
    }
    return out;
  };
  auto jac = [=](Vec3 p) {
    Mat3 j;
    const std::array<double, 3> waves_x{wave[0].x, wave[1].x, wave[2].x};
    const std::array<double, 3> waves_y{wave[0].y, wave[1].y, wave[2].y};
    const std::array<double, 3> waves_z{wave[0].z, wave[1].z, wave[2].z};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) j.m[r][c] = linear[r][c];
      for (int m = 0; m < 3; ++m) {
        const double arg = wave[m].x * p.x + wave[m].y * p.y + wave[m].z * p.z + shift[r][m];
        const double d = amp[r][m] * std::cos(arg);
        j.m[r][0] += d * waves_x[m];
        j.m[r][1] += d * waves_y[m];
        j.m[r][2] += d * waves_z[m];
      }
    }
    return j;
  };
  return {value, jac};
}

Vec3 random_point(std::mt19937_64& rng, double half_width) {
  std::uniform_real_distribution<double> coord(-half_width, half_width);
  return {coord(rng), coord(rng), coord(rng)};
}

IdentityTrialReport run_identity_trials(long trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  IdentityTrialReport report;
  report.trials = trials;
  for (long t = 0; t < trials; ++t) {
    const AnalyticField3 v = random_analytic_field(rng);
    const AnalyticField3 z = random_analytic_field(rng);
    const Vec3 p = random_point(rng);
    for (int item = 1; item <= 3; ++item) {
      const double r = identity_residual(item, v, z, p);
      report.max_residual[item - 1] = std::max(report.max_residual[item - 1], r);
    }
  }
  return report;
}

}  // namespace iflow
