#pragma once

#include "iflow/grid.hpp"

namespace iflow {

// Centered finite-difference operators on the periodic grid. First
// derivatives use +/-1 neighbours over 2*dx; the scalar Laplacian is the
// composite +/-2 stencil over 4*dx^2, which equals divergence(gradient(.))
// node for node.

/// (u(i+1,j) - u(i-1,j) + v(i,j+1) - v(i,j-1)) / (2 dx)
ScalarField divergence(const VectorField& x);

/// ((phi(i+1,j) - phi(i-1,j)) / (2 dx), (phi(i,j+1) - phi(i,j-1)) / (2 dx))
VectorField gradient(const ScalarField& phi);

/// (phi(i+2,j) + phi(i-2,j) + phi(i,j+2) + phi(i,j-2) - 4 phi(i,j)) / (4 dx^2)
ScalarField laplacian(const ScalarField& phi);

/// Centered +/-1 partials of both components.
TensorField jacobian(const VectorField& x);

/// Scalar curl dv/dx - du/dy.
ScalarField curl2d(const VectorField& x);

/// Advection (w . grad) applied to a scalar or, componentwise, a vector field.
ScalarField advect(const VectorField& w, const ScalarField& s);
VectorField advect(const VectorField& w, const VectorField& x);

}  // namespace iflow
