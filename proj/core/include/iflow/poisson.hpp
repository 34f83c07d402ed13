#pragma once

#include <array>

#include "iflow/grid.hpp"

namespace iflow {

enum class PoissonMethod { Iterative, Spectral };

struct PoissonConfig {
  /// Max-norm bound on the residual of the discrete Poisson equation.
  double tolerance = 1e-10;
  /// Iteration budget for the Krylov solver; 0 means 20 * n^2.
  long max_iterations = 0;
  PoissonMethod method = PoissonMethod::Iterative;

  friend bool operator==(const PoissonConfig&, const PoissonConfig&) = default;
};

// The +/-2 Laplacian stencil couples only nodes of equal index parity per
// axis, so the even periodic grid splits into four independent subgrids.
// Its nullspace is one constant per such class.
enum class ParityClass { EvenEven, EvenOdd, OddEven, OddOdd };

ParityClass parity_class(int i, int j);

/// Mean of a scalar field over each parity class, indexed EE, EO, OE, OO.
std::array<double, 4> parity_class_means(const ScalarField& f);

/// Subtract each class's mean; the result has zero mean per class.
ScalarField subtract_parity_means(ScalarField f);

struct PoissonSolution {
  ScalarField phi;
  /// Achieved max-norm of laplacian(phi) - rhs_tilde.
  double residual = 0.0;
  long iterations = 0;
};

/// Solve laplacian(phi) = rhs_tilde, where rhs_tilde is rhs with its
/// per-parity-class mean removed. phi is normalized to zero mean on each
/// class. Throws NonConvergenceError when the budget runs out.
PoissonSolution poisson_solve(const ScalarField& rhs, const PoissonConfig& cfg = {});

struct ProjectionResult {
  VectorField projected;
  ScalarField potential;
  double residual = 0.0;
  long iterations = 0;
};

/// Discrete Helmholtz projection: X0 = X - gradient(phi) with
/// laplacian(phi) = divergence(X). X0 has vanishing discrete divergence
/// up to the solver tolerance.
ProjectionResult helmholtz_project(const VectorField& x, const PoissonConfig& cfg = {});

}  // namespace iflow
