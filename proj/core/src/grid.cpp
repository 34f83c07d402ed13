#include "iflow/grid.hpp"

#include <cmath>
#include <string>

namespace iflow {

int wrap_index(long long i, int n) {
  const long long m = i % n;
  return static_cast<int>(m < 0 ? m + n : m);
}

GridSpec::GridSpec(int n, double length) : n_(n), length_(length) {
  if (n < 6) throw Error("GridSpec: n must be at least 6, got " + std::to_string(n));
  if (n % 2 != 0) throw Error("GridSpec: n must be even, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error("GridSpec: length must be positive and finite");
  }
}

namespace detail {
[[noreturn]] void throw_nonfinite_sample(int i, int j, double x, double y) {
  throw Error("sample_analytic: non-finite value at node (" + std::to_string(i) +
              ", " + std::to_string(j) + ") = (" + std::to_string(x) + ", " +
              std::to_string(y) + ")");
}
}  // namespace detail

Vec2 wrap_point(Vec2 p, double length) {
  Vec2 q{std::fmod(p.x, length), std::fmod(p.y, length)};
  if (q.x < 0.0) q.x += length;
  if (q.y < 0.0) q.y += length;
  // fmod can land exactly on length after the negative fix-up.
  if (q.x >= length) q.x = 0.0;
  if (q.y >= length) q.y = 0.0;
  return q;
}

namespace {

struct CellWeights {
  int i0, j0, i1, j1;
  double w00, w01, w10, w11;
};

CellWeights locate(const GridSpec& spec, Vec2 p) {
  const int n = spec.n();
  const double dx = spec.dx();
  const Vec2 q = wrap_point(p, spec.length());
  double fi = q.x / dx;
  double fj = q.y / dx;
  if (fi >= n) fi = 0.0;
  if (fj >= n) fj = 0.0;
  int i0 = static_cast<int>(fi);
  int j0 = static_cast<int>(fj);
  if (i0 >= n) i0 = n - 1;
  if (j0 >= n) j0 = n - 1;
  const double tx = fi - i0;
  const double ty = fj - j0;
  const int i1 = (i0 + 1 == n) ? 0 : i0 + 1;
  const int j1 = (j0 + 1 == n) ? 0 : j0 + 1;
  return {i0,          j0,          i1,      j1,
          (1.0 - tx) * (1.0 - ty), (1.0 - tx) * ty, tx * (1.0 - ty), tx * ty};
}

}  // namespace

double bilinear_interp(const ScalarField& f, Vec2 p) {
  const CellWeights c = locate(f.spec(), p);
  return c.w00 * f.at(c.i0, c.j0) + c.w01 * f.at(c.i0, c.j1) +
         c.w10 * f.at(c.i1, c.j0) + c.w11 * f.at(c.i1, c.j1);
}

Vec2 bilinear_interp(const VectorField& f, Vec2 p) {
  const CellWeights c = locate(f.spec(), p);
  return {c.w00 * f.u(c.i0, c.j0) + c.w01 * f.u(c.i0, c.j1) +
              c.w10 * f.u(c.i1, c.j0) + c.w11 * f.u(c.i1, c.j1),
          c.w00 * f.v(c.i0, c.j0) + c.w01 * f.v(c.i0, c.j1) +
              c.w10 * f.v(c.i1, c.j0) + c.w11 * f.v(c.i1, c.j1)};
}

Mat2 bilinear_interp(const TensorField& f, Vec2 p) {
  const CellWeights c = locate(f.spec(), p);
  const Mat2 a = f.at(c.i0, c.j0);
  const Mat2 b = f.at(c.i0, c.j1);
  const Mat2 d = f.at(c.i1, c.j0);
  const Mat2 e = f.at(c.i1, c.j1);
  auto mix = [&](double m00, double m01, double m10, double m11) {
    return c.w00 * m00 + c.w01 * m01 + c.w10 * m10 + c.w11 * m11;
  };
  return {mix(a.dudx, b.dudx, d.dudx, e.dudx), mix(a.dudy, b.dudy, d.dudy, e.dudy),
          mix(a.dvdx, b.dvdx, d.dvdx, e.dvdx), mix(a.dvdy, b.dvdy, d.dvdy, e.dvdy)};
}

}  // namespace iflow
