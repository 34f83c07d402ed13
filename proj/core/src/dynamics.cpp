#include "iflow/dynamics.hpp"

#include <cmath>

#include "iflow/operators.hpp"

namespace iflow {

namespace {

double floored_denominator(const ObstaclePotential& pot, Vec2 p) {
  const Vec2 d = p - pot.center;
  const double q = dot(d, d) - pot.radius * pot.radius;
  if (q >= 0.0) return std::max(q, pot.regularization);
  return std::min(q, -pot.regularization);
}

}  // namespace

double potential_eval(const ObstaclePotential& pot, Vec2 p) {
  return pot.strength / floored_denominator(pot, p);
}

Vec2 potential_grad(const ObstaclePotential& pot, Vec2 p) {
  const Vec2 d = p - pot.center;
  const double den = floored_denominator(pot, p);
  const double factor = -pot.strength / (den * den);
  return {factor * 2.0 * d.x, factor * 2.0 * d.y};
}

std::pair<ScalarField, VectorField> potential_field(const ObstaclePotential& pot,
                                                    const GridSpec& spec) {
  ScalarField value(spec);
  VectorField grad(spec);
  const double dx = spec.dx();
  for (int i = 0; i < spec.n(); ++i) {
    for (int j = 0; j < spec.n(); ++j) {
      const Vec2 p{i * dx, j * dx};
      value.at(i, j) = potential_eval(pot, p);
      const Vec2 g = potential_grad(pot, p);
      grad.u(i, j) = g.x;
      grad.v(i, j) = g.y;
    }
  }
  return {std::move(value), std::move(grad)};
}

VectorField potential_forcing(const ObstaclePotential& pot, const GridSpec& spec) {
  ScalarField value(spec);
  const double dx = spec.dx();
  for (int i = 0; i < spec.n(); ++i) {
    for (int j = 0; j < spec.n(); ++j) {
      value.at(i, j) = potential_eval(pot, {i * dx, j * dx});
    }
  }
  return gradient(value);
}

VectorField velocity_rhs(const VectorField& v) {
  VectorField rhs = advect(v, v);
  for (double& x : rhs.u_values()) x = -x;
  for (double& x : rhs.v_values()) x = -x;
  return rhs;
}

VectorField velocity_rhs(const VectorField& v, const VectorField& grad_v_field) {
  const VectorField adv = advect(v, v);
  VectorField rhs(v.spec());
  const size_t size = rhs.u_values().size();
  for (size_t k = 0; k < size; ++k) {
    rhs.u_values()[k] = -adv.u_values()[k] + grad_v_field.u_values()[k];
    rhs.v_values()[k] = -adv.v_values()[k] + grad_v_field.v_values()[k];
  }
  return rhs;
}

namespace {

double max_node_speed(const VectorField& v) {
  double m = 0.0;
  const size_t size = v.u_values().size();
  for (size_t k = 0; k < size; ++k) {
    const double s =
        std::sqrt(v.u_values()[k] * v.u_values()[k] + v.v_values()[k] * v.v_values()[k]);
    m = std::max(m, s);
  }
  return m;
}

VectorField axpy(const VectorField& a, double s, const VectorField& b) {
  VectorField out(a.spec());
  const size_t size = out.u_values().size();
  for (size_t k = 0; k < size; ++k) {
    out.u_values()[k] = a.u_values()[k] + s * b.u_values()[k];
    out.v_values()[k] = a.v_values()[k] + s * b.v_values()[k];
  }
  return out;
}

VectorField rk4_combine(const VectorField& v, double dt, const VectorField& k1,
                        const VectorField& k2, const VectorField& k3,
                        const VectorField& k4) {
  VectorField out(v.spec());
  const double w = dt / 6.0;
  const size_t size = out.u_values().size();
  for (size_t k = 0; k < size; ++k) {
    out.u_values()[k] = v.u_values()[k] + w * (k1.u_values()[k] + 2.0 * k2.u_values()[k] +
                                               2.0 * k3.u_values()[k] + k4.u_values()[k]);
    out.v_values()[k] = v.v_values()[k] + w * (k1.v_values()[k] + 2.0 * k2.v_values()[k] +
                                               2.0 * k3.v_values()[k] + k4.v_values()[k]);
  }
  return out;
}

void guard_blowup(const VectorField& v, const StepConfig& cfg, double t) {
  const double speed = max_node_speed(v);
  if (!(speed <= cfg.blowup_speed) || !std::isfinite(speed)) {
    throw DivergedStateError(speed, cfg.blowup_speed, t);
  }
}

/// Advance tracers and costates from the pre-step state. Costates feel the
/// same grid forcing as the momentum update.
void advance_passives(const SimState& s, SimState& out, const StepConfig& cfg,
                      const VectorField* forcing) {
  if (!s.tracers.empty()) {
    out.tracers = advect_tracers(s.tracers, s.velocity, cfg.dt, cfg.time_scheme);
    if (!s.costates.empty()) {
      out.costates =
          step_costate(s.costates, s.tracers, jacobian(s.velocity), forcing, cfg.dt);
    }
  }
}

}  // namespace

SimState step_velocity(const SimState& s, const StepConfig& cfg,
                       const ObstaclePotential& pot) {
  SimState out;
  out.t = s.t + cfg.dt;
  out.tracers = s.tracers;
  out.costates = s.costates;
  out.gauge_k = s.gauge_k;

  const bool with_potential = pot.enabled();
  VectorField forcing;
  if (with_potential) forcing = potential_forcing(pot, s.velocity.spec());

  auto rhs = [&](const VectorField& v) {
    return with_potential ? velocity_rhs(v, forcing) : velocity_rhs(v);
  };

  VectorField advanced(s.velocity.spec());
  if (cfg.time_scheme == TimeScheme::ForwardEuler) {
    advanced = axpy(s.velocity, cfg.dt, rhs(s.velocity));
  } else {
    const VectorField k1 = rhs(s.velocity);
    const VectorField k2 = rhs(axpy(s.velocity, 0.5 * cfg.dt, k1));
    const VectorField k3 = rhs(axpy(s.velocity, 0.5 * cfg.dt, k2));
    const VectorField k4 = rhs(axpy(s.velocity, cfg.dt, k3));
    advanced = rk4_combine(s.velocity, cfg.dt, k1, k2, k3, k4);
  }

  if (cfg.projection_mode == ProjectionMode::PerStep) {
    ProjectionResult proj = helmholtz_project(advanced, cfg.poisson);
    out.velocity = std::move(proj.projected);
    ScalarField pressure = std::move(proj.potential);
    for (double& x : pressure.values()) x /= cfg.dt;
    out.pressure_estimate = std::move(pressure);
  } else {
    out.velocity = std::move(advanced);
  }

  guard_blowup(out.velocity, cfg, out.t);
  advance_passives(s, out, cfg, with_potential ? &forcing : nullptr);

  // dk/dt = p - v.v/2, integrated with the pre-step velocity when a
  // pressure estimate exists.
  if (out.gauge_k && out.pressure_estimate) {
    ScalarField& k = *out.gauge_k;
    const ScalarField& p = *out.pressure_estimate;
    for (int i = 0; i < k.n(); ++i) {
      for (int j = 0; j < k.n(); ++j) {
        const Vec2 vel = s.velocity.at(i, j);
        k.at(i, j) += cfg.dt * (p.at(i, j) - 0.5 * dot(vel, vel));
      }
    }
  }
  return out;
}

namespace {

/// dz/dt = -(z.grad)v - z x (curl v) + grad V - (v.grad)z.
/// In 2D the curl is the scalar w and z x w = (z2 w, -z1 w).
VectorField impulse_rhs(const VectorField& z, const VectorField& v,
                        const VectorField* grad_v_field) {
  const VectorField stretch = advect(z, v);
  const VectorField transport = advect(v, z);
  const ScalarField omega = curl2d(v);
  VectorField rhs(z.spec());
  const int n = z.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = omega.at(i, j);
      double ru = -stretch.u(i, j) - z.v(i, j) * w - transport.u(i, j);
      double rv = -stretch.v(i, j) + z.u(i, j) * w - transport.v(i, j);
      if (grad_v_field != nullptr) {
        ru += grad_v_field->u(i, j);
        rv += grad_v_field->v(i, j);
      }
      rhs.u(i, j) = ru;
      rhs.v(i, j) = rv;
    }
  }
  return rhs;
}

}  // namespace

SimState step_impulse(const SimState& s, const StepConfig& cfg,
                      const ObstaclePotential& pot) {
  if (!s.impulse) throw Error("step_impulse: state carries no impulse field");

  SimState out;
  out.t = s.t + cfg.dt;
  out.tracers = s.tracers;
  out.costates = s.costates;

  const bool with_potential = pot.enabled();
  VectorField forcing;
  if (with_potential) forcing = potential_forcing(pot, s.velocity.spec());
  const VectorField* grad_v = with_potential ? &forcing : nullptr;

  const VectorField& z = *s.impulse;
  VectorField advanced(z.spec());
  if (cfg.time_scheme == TimeScheme::ForwardEuler) {
    advanced = axpy(z, cfg.dt, impulse_rhs(z, s.velocity, grad_v));
  } else {
    // Each stage recovers its own velocity from the intermediate impulse.
    auto stage_velocity = [&](const VectorField& zs) {
      return helmholtz_project(zs, cfg.poisson).projected;
    };
    const VectorField k1 = impulse_rhs(z, s.velocity, grad_v);
    const VectorField z2 = axpy(z, 0.5 * cfg.dt, k1);
    const VectorField k2 = impulse_rhs(z2, stage_velocity(z2), grad_v);
    const VectorField z3 = axpy(z, 0.5 * cfg.dt, k2);
    const VectorField k3 = impulse_rhs(z3, stage_velocity(z3), grad_v);
    const VectorField z4 = axpy(z, cfg.dt, k3);
    const VectorField k4 = impulse_rhs(z4, stage_velocity(z4), grad_v);
    advanced = rk4_combine(z, cfg.dt, k1, k2, k3, k4);
  }

  ProjectionResult proj = helmholtz_project(advanced, cfg.poisson);
  out.velocity = std::move(proj.projected);
  out.impulse = std::move(advanced);
  // z = v + grad k, so the projection potential is the gauge scalar.
  out.gauge_k = std::move(proj.potential);

  guard_blowup(*out.impulse, cfg, out.t);
  guard_blowup(out.velocity, cfg, out.t);
  advance_passives(s, out, cfg, grad_v);
  return out;
}

std::vector<Vec2> advect_tracers(const std::vector<Vec2>& tracers, const VectorField& v,
                                 double dt, TimeScheme scheme) {
  const double length = v.spec().length();
  std::vector<Vec2> out;
  out.reserve(tracers.size());
  for (const Vec2& p : tracers) {
    Vec2 next;
    if (scheme == TimeScheme::ForwardEuler) {
      next = p + dt * bilinear_interp(v, p);
    } else {
      const Vec2 k1 = bilinear_interp(v, p);
      const Vec2 k2 = bilinear_interp(v, p + (0.5 * dt) * k1);
      const Vec2 k3 = bilinear_interp(v, p + (0.5 * dt) * k2);
      const Vec2 k4 = bilinear_interp(v, p + dt * k3);
      next = p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    out.push_back(wrap_point(next, length));
  }
  return out;
}

namespace {

template <class ForceAt>
std::vector<Vec2> costate_step_impl(const std::vector<Vec2>& costates,
                                    const std::vector<Vec2>& tracers,
                                    const TensorField& velocity_jacobian, double dt,
                                    ForceAt&& force_at) {
  if (costates.size() != tracers.size()) {
    throw Error("step_costate: costates and tracers must align");
  }
  std::vector<Vec2> out;
  out.reserve(costates.size());
  for (size_t k = 0; k < costates.size(); ++k) {
    const Mat2 jac = bilinear_interp(velocity_jacobian, tracers[k]);
    const Vec2 pi = costates[k];
    // (Tv)^T pi: row m is sum_k dv_k/dx_m * pi_k.
    Vec2 rate{-(jac.dudx * pi.x + jac.dvdx * pi.y),
              -(jac.dudy * pi.x + jac.dvdy * pi.y)};
    rate = rate + force_at(tracers[k]);
    out.push_back(pi + dt * rate);
  }
  return out;
}

}  // namespace

std::vector<Vec2> step_costate(const std::vector<Vec2>& costates,
                               const std::vector<Vec2>& tracers,
                               const TensorField& velocity_jacobian,
                               const ObstaclePotential& pot, double dt) {
  if (pot.enabled()) {
    return costate_step_impl(costates, tracers, velocity_jacobian, dt,
                             [&pot](Vec2 p) { return potential_grad(pot, p); });
  }
  return costate_step_impl(costates, tracers, velocity_jacobian, dt,
                           [](Vec2) { return Vec2{}; });
}

std::vector<Vec2> step_costate(const std::vector<Vec2>& costates,
                               const std::vector<Vec2>& tracers,
                               const TensorField& velocity_jacobian,
                               const VectorField* force_field, double dt) {
  if (force_field != nullptr) {
    return costate_step_impl(costates, tracers, velocity_jacobian, dt,
                             [force_field](Vec2 p) {
                               return bilinear_interp(*force_field, p);
                             });
  }
  return costate_step_impl(costates, tracers, velocity_jacobian, dt,
                           [](Vec2) { return Vec2{}; });
}

std::vector<Vec2> init_costates_from_impulse(const std::vector<Vec2>& tracers,
                                             const VectorField& z) {
  std::vector<Vec2> out;
  out.reserve(tracers.size());
  for (const Vec2& p : tracers) out.push_back(bilinear_interp(z, p));
  return out;
}

SimState make_impulse_state(VectorField z, const PoissonConfig& cfg) {
  SimState s;
  ProjectionResult proj = helmholtz_project(z, cfg);
  s.velocity = std::move(proj.projected);
  s.gauge_k = std::move(proj.potential);
  s.impulse = std::move(z);
  return s;
}

}  // namespace iflow
