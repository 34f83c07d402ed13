#include "iflow/diagnostics.hpp"

#include <array>
#include <cmath>

#include "iflow/operators.hpp"

namespace iflow {

double inner_product(const VectorField& a, const VectorField& b) {
  if (!(a.spec() == b.spec())) throw Error("inner_product: grids differ");
  double sum = 0.0;
  const size_t size = a.u_values().size();
  for (size_t k = 0; k < size; ++k) {
    sum += a.u_values()[k] * b.u_values()[k] + a.v_values()[k] * b.v_values()[k];
  }
  const double dx = a.spec().dx();
  return sum * dx * dx;
}

double kinetic_energy(const VectorField& v) { return 0.5 * inner_product(v, v); }

DivergenceNorms divergence_norms(const VectorField& v) {
  const ScalarField div = divergence(v);
  double max = 0.0;
  double sumsq = 0.0;
  for (double d : div.values()) {
    max = std::max(max, std::abs(d));
    sumsq += d * d;
  }
  const double dx = v.spec().dx();
  return {max, std::sqrt(sumsq * dx * dx)};
}

double max_speed(const VectorField& v) {
  double m = 0.0;
  const size_t size = v.u_values().size();
  for (size_t k = 0; k < size; ++k) {
    m = std::max(m, std::hypot(v.u_values()[k], v.v_values()[k]));
  }
  return m;
}

double cost_step(const VectorField& v, const std::vector<Vec2>& tracers,
                 const ObstaclePotential& pot, double dt) {
  if (tracers.empty()) throw Error("cost_step: needs at least one tracer");
  const double length = v.spec().length();
  const double weight = length * length / static_cast<double>(tracers.size());
  double potential_term = 0.0;
  for (const Vec2& p : tracers) potential_term += potential_eval(pot, p);
  return dt * (kinetic_energy(v) + potential_term * weight);
}

namespace {

/// Unwrap quad vertices by minimal periodic image relative to the first.
/// Returns false when the quad spans more than a quarter period.
bool unwrap_quad(std::array<Vec2, 4>& q, double length) {
  auto minimal = [length](double d) {
    if (d > 0.5 * length) return d - length;
    if (d < -0.5 * length) return d + length;
    return d;
  };
  const Vec2 base = q[0];
  for (int k = 1; k < 4; ++k) {
    const Vec2 off{minimal(q[k].x - base.x), minimal(q[k].y - base.y)};
    if (std::abs(off.x) > 0.25 * length || std::abs(off.y) > 0.25 * length) return false;
    q[k] = base + off;
  }
  return true;
}

double shoelace_area(const std::array<Vec2, 4>& q) {
  double twice = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Vec2& a = q[k];
    const Vec2& b = q[(k + 1) % 4];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * std::abs(twice);
}

}  // namespace

double area_preservation_error(const std::vector<Vec2>& before,
                               const std::vector<Vec2>& after, int lattice_m,
                               double domain_length) {
  if (lattice_m < 2) throw Error("area_preservation_error: lattice_m must be >= 2");
  const size_t expected = static_cast<size_t>(lattice_m) * lattice_m;
  if (before.size() != expected || after.size() != expected) {
    throw Error("area_preservation_error: lattices must both be m x m");
  }
  auto idx = [lattice_m](int a, int b) {
    return static_cast<size_t>(a) * lattice_m + b;
  };

  double worst = 0.0;
  for (int a = 0; a + 1 < lattice_m; ++a) {
    for (int b = 0; b + 1 < lattice_m; ++b) {
      std::array<Vec2, 4> q_before{before[idx(a, b)], before[idx(a + 1, b)],
                                   before[idx(a + 1, b + 1)], before[idx(a, b + 1)]};
      std::array<Vec2, 4> q_after{after[idx(a, b)], after[idx(a + 1, b)],
                                  after[idx(a + 1, b + 1)], after[idx(a, b + 1)]};
      if (!unwrap_quad(q_before, domain_length) || !unwrap_quad(q_after, domain_length)) {
        continue;
      }
      const double area_before = shoelace_area(q_before);
      if (area_before < 1e-12) {
        throw DegenerateQuadError("area_preservation_error: quad (" +
                                  std::to_string(a) + ", " + std::to_string(b) +
                                  ") has area below 1e-12");
      }
      const double area_after = shoelace_area(q_after);
      worst = std::max(worst, std::abs(area_after - area_before) / area_before);
    }
  }
  return worst;
}

}  // namespace iflow
