#include "iflow/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "iflow/operators.hpp"

namespace iflow {

ParityClass parity_class(int i, int j) {
  const bool i_odd = (i % 2) != 0;
  const bool j_odd = (j % 2) != 0;
  if (!i_odd && !j_odd) return ParityClass::EvenEven;
  if (!i_odd && j_odd) return ParityClass::EvenOdd;
  if (i_odd && !j_odd) return ParityClass::OddEven;
  return ParityClass::OddOdd;
}

std::array<double, 4> parity_class_means(const ScalarField& f) {
  const int n = f.n();
  std::array<double, 4> sums{0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      sums[static_cast<int>(parity_class(i, j))] += f.at(i, j);
    }
  }
  const double class_size = static_cast<double>(n / 2) * (n / 2);
  for (double& s : sums) s /= class_size;
  return sums;
}

ScalarField subtract_parity_means(ScalarField f) {
  const auto means = parity_class_means(f);
  const int n = f.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      f.at(i, j) -= means[static_cast<int>(parity_class(i, j))];
    }
  }
  return f;
}

namespace {

long effective_max_iterations(const PoissonConfig& cfg, int n) {
  if (cfg.max_iterations > 0) return cfg.max_iterations;
  return 20L * n * n;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

/// y = -laplacian(x), flattened. Symmetric positive semidefinite.
void apply_neg_laplacian(const GridSpec& spec, const std::vector<double>& x,
                         std::vector<double>& y) {
  const int n = spec.n();
  const double dx = spec.dx();
  const double inv4dx2 = 1.0 / (4.0 * dx * dx);
  for (int i = 0; i < n; ++i) {
    const int ip = i + 2 >= n ? i + 2 - n : i + 2;
    const int im = i < 2 ? i - 2 + n : i - 2;
    for (int j = 0; j < n; ++j) {
      const int jp = j + 2 >= n ? j + 2 - n : j + 2;
      const int jm = j < 2 ? j - 2 + n : j - 2;
      const size_t k = static_cast<size_t>(i) * n + j;
      y[k] = -(x[static_cast<size_t>(ip) * n + j] + x[static_cast<size_t>(im) * n + j] +
               x[static_cast<size_t>(i) * n + jp] + x[static_cast<size_t>(i) * n + jm] -
               4.0 * x[k]) *
             inv4dx2;
    }
  }
}

PoissonSolution solve_iterative(const GridSpec& spec, const ScalarField& rhs_tilde,
                                const PoissonConfig& cfg) {
  const int n = spec.n();
  const long max_iter = effective_max_iterations(cfg, n);
  const size_t size = static_cast<size_t>(spec.node_count());

  // Conjugate gradients on -laplacian, with the right-hand side negated to
  // match. The rhs has zero mean per parity class, so it is orthogonal to
  // the nullspace.
  std::vector<double> b(size);
  for (size_t k = 0; k < size; ++k) b[k] = -rhs_tilde.values()[k];

  std::vector<double> phi(size, 0.0);
  std::vector<double> r = b;
  std::vector<double> p = r;
  std::vector<double> ap(size);

  auto true_residual_norm = [&]() {
    apply_neg_laplacian(spec, phi, ap);
    double m = 0.0;
    for (size_t k = 0; k < size; ++k) {
      const double rk = b[k] - ap[k];
      m = std::max(m, std::abs(rk));
    }
    return m;
  };

  long iterations = 0;
  double residual = max_abs(r);
  if (residual <= cfg.tolerance) {
    ScalarField out(spec);
    out.values().assign(size, 0.0);
    return {std::move(out), residual, 0};
  }

  double rs_old = dot(r, r);
  bool converged = false;
  while (iterations < max_iter) {
    apply_neg_laplacian(spec, p, ap);
    const double p_ap = dot(p, ap);
    if (!(p_ap > 0.0)) break;  // direction fell into the nullspace
    const double alpha = rs_old / p_ap;
    for (size_t k = 0; k < size; ++k) phi[k] += alpha * p[k];
    for (size_t k = 0; k < size; ++k) r[k] -= alpha * ap[k];
    ++iterations;

    residual = max_abs(r);
    if (residual <= cfg.tolerance) {
      // Guard against recurrence drift before accepting.
      residual = true_residual_norm();
      if (residual <= cfg.tolerance) {
        converged = true;
        break;
      }
      // Restart from the true residual.
      apply_neg_laplacian(spec, phi, ap);
      for (size_t k = 0; k < size; ++k) r[k] = b[k] - ap[k];
      p = r;
      rs_old = dot(r, r);
      continue;
    }

    const double rs_new = dot(r, r);
    const double beta = rs_new / rs_old;
    for (size_t k = 0; k < size; ++k) p[k] = r[k] + beta * p[k];
    rs_old = rs_new;
  }

  if (!converged) {
    residual = true_residual_norm();
    if (residual > cfg.tolerance) throw NonConvergenceError(residual, iterations);
  }

  ScalarField out(spec);
  out.values() = std::move(phi);
  out = subtract_parity_means(std::move(out));
  return {std::move(out), residual, iterations};
}

// Dense row-column DFT. Grids are small; O(n^3) is plenty.
using Cplx = std::complex<double>;

void dft_lines(std::vector<Cplx>& data, int n, bool along_rows, bool inverse) {
  std::vector<Cplx> twiddle(static_cast<size_t>(n));
  const double sign = inverse ? 2.0 * std::numbers::pi / n : -2.0 * std::numbers::pi / n;
  for (int k = 0; k < n; ++k) twiddle[k] = std::polar(1.0, sign * k);

  std::vector<Cplx> line(static_cast<size_t>(n));
  std::vector<Cplx> transformed(static_cast<size_t>(n));
  for (int outer = 0; outer < n; ++outer) {
    for (int k = 0; k < n; ++k) {
      line[k] = along_rows ? data[static_cast<size_t>(outer) * n + k]
                           : data[static_cast<size_t>(k) * n + outer];
    }
    for (int k = 0; k < n; ++k) {
      Cplx acc{0.0, 0.0};
      long long kk = 0;
      for (int m = 0; m < n; ++m) {
        acc += line[m] * twiddle[static_cast<size_t>(kk)];
        kk += k;
        if (kk >= n) kk -= n;
      }
      transformed[k] = acc;
    }
    for (int k = 0; k < n; ++k) {
      if (along_rows) {
        data[static_cast<size_t>(outer) * n + k] = transformed[k];
      } else {
        data[static_cast<size_t>(k) * n + outer] = transformed[k];
      }
    }
  }
}

PoissonSolution solve_spectral(const GridSpec& spec, const ScalarField& rhs_tilde) {
  const int n = spec.n();
  const double dx = spec.dx();
  const size_t size = static_cast<size_t>(spec.node_count());

  std::vector<Cplx> spectrum(size);
  for (size_t k = 0; k < size; ++k) spectrum[k] = rhs_tilde.values()[k];
  dft_lines(spectrum, n, /*along_rows=*/true, /*inverse=*/false);
  dft_lines(spectrum, n, /*along_rows=*/false, /*inverse=*/false);

  // Exact symbol of the +/-2 stencil: lambda = -(sin^2 t1 + sin^2 t2)/dx^2
  // with t = 2 pi k / n. It vanishes exactly for k in {0, n/2} per axis,
  // the four modes spanning the parity-class constants.
  const int half = n / 2;
  for (int k1 = 0; k1 < n; ++k1) {
    const double s1 = std::sin(2.0 * std::numbers::pi * k1 / n);
    for (int k2 = 0; k2 < n; ++k2) {
      const size_t k = static_cast<size_t>(k1) * n + k2;
      const bool null_mode = (k1 == 0 || k1 == half) && (k2 == 0 || k2 == half);
      if (null_mode) {
        spectrum[k] = Cplx{0.0, 0.0};
        continue;
      }
      const double s2 = std::sin(2.0 * std::numbers::pi * k2 / n);
      const double lambda = -(s1 * s1 + s2 * s2) / (dx * dx);
      spectrum[k] /= lambda;
    }
  }

  dft_lines(spectrum, n, /*along_rows=*/true, /*inverse=*/true);
  dft_lines(spectrum, n, /*along_rows=*/false, /*inverse=*/true);

  ScalarField phi(spec);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (size_t k = 0; k < size; ++k) phi.values()[k] = spectrum[k].real() * scale;
  phi = subtract_parity_means(std::move(phi));

  const ScalarField lap = laplacian(phi);
  double residual = 0.0;
  for (size_t k = 0; k < size; ++k) {
    residual = std::max(residual, std::abs(lap.values()[k] - rhs_tilde.values()[k]));
  }
  return {std::move(phi), residual, 0};
}

}  // namespace

PoissonSolution poisson_solve(const ScalarField& rhs, const PoissonConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) throw Error("poisson_solve: tolerance must be positive");
  if (cfg.max_iterations < 0) throw Error("poisson_solve: max_iterations must be >= 0");
  const ScalarField rhs_tilde = subtract_parity_means(rhs);
  if (cfg.method == PoissonMethod::Spectral) {
    return solve_spectral(rhs.spec(), rhs_tilde);
  }
  return solve_iterative(rhs.spec(), rhs_tilde, cfg);
}

ProjectionResult helmholtz_project(const VectorField& x, const PoissonConfig& cfg) {
  PoissonSolution sol = poisson_solve(divergence(x), cfg);
  const VectorField grad_phi = gradient(sol.phi);
  VectorField projected(x.spec());
  const size_t size = static_cast<size_t>(x.spec().node_count());
  for (size_t k = 0; k < size; ++k) {
    projected.u_values()[k] = x.u_values()[k] - grad_phi.u_values()[k];
    projected.v_values()[k] = x.v_values()[k] - grad_phi.v_values()[k];
  }
  return {std::move(projected), std::move(sol.phi), sol.residual, sol.iterations};
}

}  // namespace iflow
