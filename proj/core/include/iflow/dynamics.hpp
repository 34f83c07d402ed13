#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "iflow/grid.hpp"
#include "iflow/poisson.hpp"

namespace iflow {

/// Inverse-quadratic barrier around a circular obstacle:
/// V(p) = strength / ((p - center)^2 - radius^2), with the denominator's
/// magnitude floored at `regularization` so the circle itself stays finite.
/// strength == 0 disables the force entirely.
struct ObstaclePotential {
  Vec2 center{7.0, 7.0};
  double radius = 0.5;
  double strength = 1.0;
  double regularization = 1e-6;

  bool enabled() const { return strength != 0.0; }
};

double potential_eval(const ObstaclePotential& pot, Vec2 p);

/// Analytic gradient of V, with the same denominator floor. Exactly zero at
/// the center.
Vec2 potential_grad(const ObstaclePotential& pot, Vec2 p);

/// Node samples of V and grad V.
std::pair<ScalarField, VectorField> potential_field(const ObstaclePotential& pot,
                                                    const GridSpec& spec);

/// The barrier force the grid dynamics sees: the discrete gradient of the
/// node-sampled potential. Sampling the analytic gradient instead injects
/// near-singular values at nodes adjacent to the obstacle circle and the
/// explicit scheme blows up; the centered stencil of the sampled potential
/// stays bounded there.
VectorField potential_forcing(const ObstaclePotential& pot, const GridSpec& spec);

enum class TimeScheme { ForwardEuler, RungeKutta4 };
enum class ProjectionMode { PerStep, AtEnd };

struct StepConfig {
  double dt = 1.5e-3;
  ProjectionMode projection_mode = ProjectionMode::PerStep;
  TimeScheme time_scheme = TimeScheme::ForwardEuler;
  PoissonConfig poisson{};
  /// Max speed past which the step reports DivergedStateError.
  double blowup_speed = 1e6;
};

struct SimState {
  double t = 0.0;
  VectorField velocity;
  /// Current tracer positions (the flow map applied to reference nodes).
  std::vector<Vec2> tracers;
  /// Costate per tracer; same length as tracers when present.
  std::vector<Vec2> costates;
  std::optional<VectorField> impulse;
  std::optional<ScalarField> gauge_k;
  std::optional<ScalarField> pressure_estimate;
};

/// Explicit right-hand side of the velocity equation without pressure:
/// -(v.grad)v, plus grad V when supplied. The overload without the potential
/// term is the plain ideal-flow path; step functions route through it when
/// the potential strength is zero so both paths are bit-identical.
VectorField velocity_rhs(const VectorField& v);
VectorField velocity_rhs(const VectorField& v, const VectorField& grad_v_field);

/// Advance the velocity-form state one step: explicit update of
/// dv/dt = -(v.grad)v + grad V, then (in per-step mode) Helmholtz projection
/// with pressure_estimate = phi/dt. Tracers and costates, when present, are
/// advanced with the pre-step velocity.
SimState step_velocity(const SimState& s, const StepConfig& cfg,
                       const ObstaclePotential& pot);

/// Advance the impulse-form state one step:
/// dz/dt = -(z.grad)v - z x (curl v) + grad V - (v.grad)z, then recover
/// v as the Helmholtz projection of z (gauge_k picks up the projection
/// potential). Requires s.impulse.
SimState step_impulse(const SimState& s, const StepConfig& cfg,
                      const ObstaclePotential& pot);

/// Move tracers through the (frozen) velocity field, sampling it by
/// bilinear interpolation; positions wrap periodically.
std::vector<Vec2> advect_tracers(const std::vector<Vec2>& tracers, const VectorField& v,
                                 double dt, TimeScheme scheme = TimeScheme::ForwardEuler);

/// One explicit Euler step of the costate equation along each tracer:
/// dpi/dt = -(Tv at tracer)^T pi + grad V(tracer), with the analytic
/// potential gradient.
std::vector<Vec2> step_costate(const std::vector<Vec2>& costates,
                               const std::vector<Vec2>& tracers,
                               const TensorField& velocity_jacobian,
                               const ObstaclePotential& pot, double dt);

/// Same step with an explicit force field sampled at the tracer positions.
/// The composite steppers pass the grid forcing here so that costates and
/// impulse feel one discretization of grad V; otherwise the two quantities
/// drift apart near the obstacle circle instead of staying consistent.
std::vector<Vec2> step_costate(const std::vector<Vec2>& costates,
                               const std::vector<Vec2>& tracers,
                               const TensorField& velocity_jacobian,
                               const VectorField* force_field, double dt);

/// At t = 0 the flow map is the identity, so costates start as the impulse
/// field sampled at the tracer positions.
std::vector<Vec2> init_costates_from_impulse(const std::vector<Vec2>& tracers,
                                             const VectorField& z);

/// Build an impulse-form state: velocity is the projection of z.
SimState make_impulse_state(VectorField z, const PoissonConfig& cfg = {});

}  // namespace iflow
