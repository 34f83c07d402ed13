#include "iflow/operators.hpp"

namespace iflow {

namespace {

void require_same_spec(const GridSpec& a, const GridSpec& b, const char* op) {
  if (!(a == b)) throw Error(std::string(op) + ": operands live on different grids");
}

inline int up1(int i, int n) { return i + 1 == n ? 0 : i + 1; }
inline int dn1(int i, int n) { return i == 0 ? n - 1 : i - 1; }
inline int up2(int i, int n) { return i + 2 >= n ? i + 2 - n : i + 2; }
inline int dn2(int i, int n) { return i < 2 ? i - 2 + n : i - 2; }

}  // namespace

ScalarField divergence(const VectorField& x) {
  const int n = x.n();
  const double inv2dx = 1.0 / (2.0 * x.spec().dx());
  ScalarField out(x.spec());
  for (int i = 0; i < n; ++i) {
    const int ip = up1(i, n), im = dn1(i, n);
    for (int j = 0; j < n; ++j) {
      const int jp = up1(j, n), jm = dn1(j, n);
      out.at(i, j) = (x.u(ip, j) - x.u(im, j) + x.v(i, jp) - x.v(i, jm)) * inv2dx;
    }
  }
  return out;
}

VectorField gradient(const ScalarField& phi) {
  const int n = phi.n();
  const double inv2dx = 1.0 / (2.0 * phi.spec().dx());
  VectorField out(phi.spec());
  for (int i = 0; i < n; ++i) {
    const int ip = up1(i, n), im = dn1(i, n);
    for (int j = 0; j < n; ++j) {
      const int jp = up1(j, n), jm = dn1(j, n);
      out.u(i, j) = (phi.at(ip, j) - phi.at(im, j)) * inv2dx;
      out.v(i, j) = (phi.at(i, jp) - phi.at(i, jm)) * inv2dx;
    }
  }
  return out;
}

ScalarField laplacian(const ScalarField& phi) {
  const int n = phi.n();
  const double dx = phi.spec().dx();
  const double inv4dx2 = 1.0 / (4.0 * dx * dx);
  ScalarField out(phi.spec());
  for (int i = 0; i < n; ++i) {
    const int ip = up2(i, n), im = dn2(i, n);
    for (int j = 0; j < n; ++j) {
      const int jp = up2(j, n), jm = dn2(j, n);
      out.at(i, j) = (phi.at(ip, j) + phi.at(im, j) + phi.at(i, jp) +
                      phi.at(i, jm) - 4.0 * phi.at(i, j)) *
                     inv4dx2;
    }
  }
  return out;
}

TensorField jacobian(const VectorField& x) {
  const int n = x.n();
  const double inv2dx = 1.0 / (2.0 * x.spec().dx());
  TensorField out(x.spec());
  for (int i = 0; i < n; ++i) {
    const int ip = up1(i, n), im = dn1(i, n);
    for (int j = 0; j < n; ++j) {
      const int jp = up1(j, n), jm = dn1(j, n);
      out.set(i, j, {(x.u(ip, j) - x.u(im, j)) * inv2dx,
                     (x.u(i, jp) - x.u(i, jm)) * inv2dx,
                     (x.v(ip, j) - x.v(im, j)) * inv2dx,
                     (x.v(i, jp) - x.v(i, jm)) * inv2dx});
    }
  }
  return out;
}

ScalarField curl2d(const VectorField& x) {
  const int n = x.n();
  const double inv2dx = 1.0 / (2.0 * x.spec().dx());
  ScalarField out(x.spec());
  for (int i = 0; i < n; ++i) {
    const int ip = up1(i, n), im = dn1(i, n);
    for (int j = 0; j < n; ++j) {
      const int jp = up1(j, n), jm = dn1(j, n);
      out.at(i, j) = (x.v(ip, j) - x.v(im, j) - (x.u(i, jp) - x.u(i, jm))) * inv2dx;
    }
  }
  return out;
}

ScalarField advect(const VectorField& w, const ScalarField& s) {
  require_same_spec(w.spec(), s.spec(), "advect");
  const int n = s.n();
  const double inv2dx = 1.0 / (2.0 * s.spec().dx());
  ScalarField out(s.spec());
  for (int i = 0; i < n; ++i) {
    const int ip = up1(i, n), im = dn1(i, n);
    for (int j = 0; j < n; ++j) {
      const int jp = up1(j, n), jm = dn1(j, n);
      const double sx = (s.at(ip, j) - s.at(im, j)) * inv2dx;
      const double sy = (s.at(i, jp) - s.at(i, jm)) * inv2dx;
      out.at(i, j) = w.u(i, j) * sx + w.v(i, j) * sy;
    }
  }
  return out;
}

VectorField advect(const VectorField& w, const VectorField& x) {
  require_same_spec(w.spec(), x.spec(), "advect");
  const int n = x.n();
  const double inv2dx = 1.0 / (2.0 * x.spec().dx());
  VectorField out(x.spec());
  for (int i = 0; i < n; ++i) {
    const int ip = up1(i, n), im = dn1(i, n);
    for (int j = 0; j < n; ++j) {
      const int jp = up1(j, n), jm = dn1(j, n);
      const double ux = (x.u(ip, j) - x.u(im, j)) * inv2dx;
      const double uy = (x.u(i, jp) - x.u(i, jm)) * inv2dx;
      const double vx = (x.v(ip, j) - x.v(im, j)) * inv2dx;
      const double vy = (x.v(i, jp) - x.v(i, jm)) * inv2dx;
      out.u(i, j) = w.u(i, j) * ux + w.v(i, j) * uy;
      out.v(i, j) = w.u(i, j) * vx + w.v(i, j) * vy;
    }
  }
  return out;
}

}  // namespace iflow
