#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "iflow/errors.hpp"

namespace iflow {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

/// 2x2 Jacobian sample: rows are components, columns are axes.
struct Mat2 {
  double dudx = 0.0;
  double dudy = 0.0;
  double dvdx = 0.0;
  double dvdy = 0.0;
};

/// Reduce a signed index to [0, n) on the periodic axis.
int wrap_index(long long i, int n);

/// Geometry of the periodic square grid. Node (i, j) sits at
/// (i*dx, j*dx); the far border is identified with the origin.
class GridSpec {
 public:
  GridSpec() : GridSpec(kDefaultResolution) {}
  explicit GridSpec(int n, double length = kDefaultLength);

  int n() const { return n_; }
  double length() const { return length_; }
  double dx() const { return length_ / n_; }

  Vec2 node(int i, int j) const { return {i * dx(), j * dx()}; }
  long long node_count() const { return static_cast<long long>(n_) * n_; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

  static constexpr int kDefaultResolution = 30;
  static constexpr double kDefaultLength = 4.0 * std::numbers::pi;

 private:
  int n_;
  double length_;
};

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const GridSpec& spec, double fill = 0.0)
      : spec_(spec), values_(static_cast<size_t>(spec.node_count()), fill) {}

  const GridSpec& spec() const { return spec_; }
  int n() const { return spec_.n(); }

  double at(int i, int j) const { return values_[index(i, j)]; }
  double& at(int i, int j) { return values_[index(i, j)]; }
  double at_wrapped(long long i, long long j) const {
    return at(wrap_index(i, n()), wrap_index(j, n()));
  }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  size_t index(int i, int j) const { return static_cast<size_t>(i) * n() + j; }

  GridSpec spec_;
  std::vector<double> values_;
};

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(const GridSpec& spec, Vec2 fill = {})
      : spec_(spec),
        u_(static_cast<size_t>(spec.node_count()), fill.x),
        v_(static_cast<size_t>(spec.node_count()), fill.y) {}

  const GridSpec& spec() const { return spec_; }
  int n() const { return spec_.n(); }

  double u(int i, int j) const { return u_[index(i, j)]; }
  double v(int i, int j) const { return v_[index(i, j)]; }
  double& u(int i, int j) { return u_[index(i, j)]; }
  double& v(int i, int j) { return v_[index(i, j)]; }
  Vec2 at(int i, int j) const { return {u(i, j), v(i, j)}; }

  const std::vector<double>& u_values() const { return u_; }
  const std::vector<double>& v_values() const { return v_; }
  std::vector<double>& u_values() { return u_; }
  std::vector<double>& v_values() { return v_; }

  friend bool operator==(const VectorField&, const VectorField&) = default;

 private:
  size_t index(int i, int j) const { return static_cast<size_t>(i) * n() + j; }

  GridSpec spec_;
  std::vector<double> u_;
  std::vector<double> v_;
};

/// Per-node 2x2 Jacobian samples of a vector field.
class TensorField {
 public:
  TensorField() = default;
  explicit TensorField(const GridSpec& spec)
      : spec_(spec),
        dudx_(static_cast<size_t>(spec.node_count())),
        dudy_(static_cast<size_t>(spec.node_count())),
        dvdx_(static_cast<size_t>(spec.node_count())),
        dvdy_(static_cast<size_t>(spec.node_count())) {}

  const GridSpec& spec() const { return spec_; }
  int n() const { return spec_.n(); }

  Mat2 at(int i, int j) const {
    const size_t k = index(i, j);
    return {dudx_[k], dudy_[k], dvdx_[k], dvdy_[k]};
  }
  void set(int i, int j, const Mat2& m) {
    const size_t k = index(i, j);
    dudx_[k] = m.dudx;
    dudy_[k] = m.dudy;
    dvdx_[k] = m.dvdx;
    dvdy_[k] = m.dvdy;
  }

  const std::vector<double>& dudx() const { return dudx_; }
  const std::vector<double>& dudy() const { return dudy_; }
  const std::vector<double>& dvdx() const { return dvdx_; }
  const std::vector<double>& dvdy() const { return dvdy_; }

 private:
  size_t index(int i, int j) const { return static_cast<size_t>(i) * n() + j; }

  GridSpec spec_;
  std::vector<double> dudx_, dudy_, dvdx_, dvdy_;
};

namespace detail {
[[noreturn]] void throw_nonfinite_sample(int i, int j, double x, double y);
}

/// Sample f(x, y) at every node. Throws on a non-finite sample.
template <class F>
ScalarField sample_analytic(F&& f, const GridSpec& spec) {
  ScalarField out(spec);
  const double dx = spec.dx();
  for (int i = 0; i < spec.n(); ++i) {
    for (int j = 0; j < spec.n(); ++j) {
      const double value = f(i * dx, j * dx);
      if (!std::isfinite(value)) detail::throw_nonfinite_sample(i, j, i * dx, j * dx);
      out.at(i, j) = value;
    }
  }
  return out;
}

/// Vector variant: samples (fu, fv) componentwise.
template <class Fu, class Fv>
VectorField sample_analytic(Fu&& fu, Fv&& fv, const GridSpec& spec) {
  VectorField out(spec);
  const double dx = spec.dx();
  for (int i = 0; i < spec.n(); ++i) {
    for (int j = 0; j < spec.n(); ++j) {
      const double uv = fu(i * dx, j * dx);
      const double vv = fv(i * dx, j * dx);
      if (!std::isfinite(uv) || !std::isfinite(vv)) {
        detail::throw_nonfinite_sample(i, j, i * dx, j * dx);
      }
      out.u(i, j) = uv;
      out.v(i, j) = vv;
    }
  }
  return out;
}

/// Wrap a point into the fundamental domain [0, L)^2.
Vec2 wrap_point(Vec2 p, double length);

/// Periodic bilinear interpolation at an arbitrary point.
double bilinear_interp(const ScalarField& f, Vec2 p);
Vec2 bilinear_interp(const VectorField& f, Vec2 p);
Mat2 bilinear_interp(const TensorField& f, Vec2 p);

}  // namespace iflow
