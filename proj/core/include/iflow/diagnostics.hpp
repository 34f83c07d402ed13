#pragma once

#include <optional>
#include <vector>

#include "iflow/dynamics.hpp"
#include "iflow/grid.hpp"

namespace iflow {

struct DiagnosticsRecord {
  long step = 0;
  double t = 0.0;
  double kinetic_energy = 0.0;
  double divergence_max = 0.0;
  double divergence_l2 = 0.0;
  /// Running value of the cost functional (rectangle rule in time).
  double cost_accumulator = 0.0;
  std::optional<double> area_error_max;
  double max_speed = 0.0;
};

/// L2 inner product as a Riemann sum: sum of pointwise dots times dx^2.
double inner_product(const VectorField& a, const VectorField& b);

/// 0.5 * <v, v>.
double kinetic_energy(const VectorField& v);

struct DivergenceNorms {
  double max = 0.0;
  double l2 = 0.0;
};

/// Max-norm and dx-weighted L2 norm of the discrete divergence.
DivergenceNorms divergence_norms(const VectorField& v);

double max_speed(const VectorField& v);

/// One rectangle of the cost integral: dt * (kinetic energy + potential
/// term), the latter a uniform-weight tracer quadrature with weights
/// L^2 / #tracers. Requires at least one tracer.
double cost_step(const VectorField& v, const std::vector<Vec2>& tracers,
                 const ObstaclePotential& pot, double dt);

/// Max relative shoelace-area change over the quads of an m x m tracer
/// lattice. Quad vertices are unwrapped by minimal periodic image relative
/// to their first corner; quads spanning more than a quarter period after
/// unwrapping are skipped. Throws DegenerateQuadError when a before-area is
/// below 1e-12.
double area_preservation_error(const std::vector<Vec2>& before,
                               const std::vector<Vec2>& after, int lattice_m,
                               double domain_length);

}  // namespace iflow
