#include <doctest.h>

#include <cmath>
#include <random>

#include "iflow/operators.hpp"
#include "test_support.hpp"

using namespace iflow;
using namespace iflow::testing;

namespace {

/// Centered differencing of a pure trigonometric mode scales the exact
/// derivative by sin(dx)/dx; this factor makes the stencil oracles sharp.
double sinc_factor(const GridSpec& spec) {
  return std::sin(spec.dx()) / spec.dx();
}

}  // namespace

TEST_CASE("divergence of a constant field vanishes exactly") {
  const GridSpec spec(30);
  const ScalarField d = divergence(VectorField(spec, {1.0, 2.0}));
  for (double v : d.values()) CHECK(v == 0.0);
}

TEST_CASE("divergence of the shear vortex matches the scaled symbolic oracle") {
  const GridSpec spec(30);
  const VectorField ic = shear_vortex(spec);
  const ScalarField d = divergence(ic);
  const double factor = sinc_factor(spec);
  const double dx = spec.dx();
  double worst_vs_pde = 0.0;
  for (int i = 0; i < spec.n(); ++i) {
    for (int j = 0; j < spec.n(); ++j) {
      const double oracle = std::cos(i * dx - j * dx);
      CHECK(d.at(i, j) == doctest::Approx(oracle * factor).epsilon(1e-12));
      worst_vs_pde = std::max(worst_vs_pde, std::abs(d.at(i, j) - oracle));
    }
  }
  // Against the un-scaled derivative the error is O(dx^2).
  CHECK(worst_vs_pde < 0.03);
}

TEST_CASE("divergence closed form for u = sin x") {
  const GridSpec spec(30);
  const VectorField f = sample_analytic([](double x, double) { return std::sin(x); },
                                        [](double, double) { return 0.0; }, spec);
  const ScalarField d = divergence(f);
  const double factor = sinc_factor(spec);
  for (int i = 0; i < spec.n(); ++i) {
    for (int j = 0; j < spec.n(); ++j) {
      CHECK(d.at(i, j) == doctest::Approx(std::cos(i * spec.dx()) * factor).epsilon(1e-12));
    }
  }
}

TEST_CASE("gradient stencil") {
  const GridSpec spec(30);

  SUBCASE("constant scalar gives the zero vector field") {
    const VectorField g = gradient(ScalarField(spec, 4.2));
    for (double v : g.u_values()) CHECK(v == 0.0);
    for (double v : g.v_values()) CHECK(v == 0.0);
  }

  SUBCASE("sin x gives scaled cosine in x and exact zero in y") {
    const ScalarField phi =
        sample_analytic([](double x, double) { return std::sin(x); }, spec);
    const VectorField g = gradient(phi);
    const double factor = sinc_factor(spec);
    for (int i = 0; i < spec.n(); ++i) {
      for (int j = 0; j < spec.n(); ++j) {
        CHECK(g.u(i, j) == doctest::Approx(std::cos(i * spec.dx()) * factor).epsilon(1e-12));
        CHECK(g.v(i, j) == 0.0);
      }
    }
  }

  SUBCASE("linear data away from the seam differentiates exactly") {
    const ScalarField phi = sample_analytic([](double x, double) { return x; }, spec);
    const VectorField g = gradient(phi);
    for (int i = 1; i < spec.n() - 1; ++i) {
      for (int j = 0; j < spec.n(); ++j) {
        CHECK(g.u(i, j) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(g.v(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("laplacian equals divergence of gradient to machine precision") {
  const GridSpec spec(30);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const ScalarField phi = random_scalar_field(spec, rng);
    const ScalarField lap = laplacian(phi);
    const ScalarField composed = divergence(gradient(phi));
    const double scale = std::max(max_abs(lap), 1.0);
    CHECK(max_abs_diff(lap, composed) <= 1e-13 * scale);
  }
}

TEST_CASE("laplacian closed forms") {
  const GridSpec spec(30);

  SUBCASE("constant scalar") {
    const ScalarField l = laplacian(ScalarField(spec, -3.0));
    for (double v : l.values()) CHECK(v == 0.0);
  }

  SUBCASE("sin x eigenmode") {
    const ScalarField phi =
        sample_analytic([](double x, double) { return std::sin(x); }, spec);
    const ScalarField l = laplacian(phi);
    const double factor = sinc_factor(spec);
    for (int i = 0; i < spec.n(); ++i) {
      for (int j = 0; j < spec.n(); ++j) {
        CHECK(l.at(i, j) ==
              doctest::Approx(-factor * factor * std::sin(i * spec.dx())).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("jacobian entries") {
  const GridSpec spec(30);

  SUBCASE("constant field has a zero jacobian") {
    const TensorField t = jacobian(VectorField(spec, {5.0, -2.0}));
    for (int i = 0; i < spec.n(); ++i) {
      for (int j = 0; j < spec.n(); ++j) {
        const Mat2 m = t.at(i, j);
        CHECK(m.dudx == 0.0);
        CHECK(m.dudy == 0.0);
        CHECK(m.dvdx == 0.0);
        CHECK(m.dvdy == 0.0);
      }
    }
  }

  SUBCASE("linear field away from the seam") {
    const VectorField f = sample_analytic([](double x, double) { return x; },
                                          [](double, double y) { return -y; }, spec);
    const TensorField t = jacobian(f);
    for (int i = 1; i < spec.n() - 1; ++i) {
      for (int j = 1; j < spec.n() - 1; ++j) {
        const Mat2 m = t.at(i, j);
        CHECK(m.dudx == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(m.dudy == 0.0);
        CHECK(m.dvdx == 0.0);
        CHECK(m.dvdy == doctest::Approx(-1.0).epsilon(1e-13));
      }
    }
  }

  SUBCASE("u = sin x populates only dudx") {
    const VectorField f = sample_analytic([](double x, double) { return std::sin(x); },
                                          [](double, double) { return 0.0; }, spec);
    const TensorField t = jacobian(f);
    const double factor = sinc_factor(spec);
    for (int i = 0; i < spec.n(); ++i) {
      for (int j = 0; j < spec.n(); ++j) {
        const Mat2 m = t.at(i, j);
        CHECK(m.dudx == doctest::Approx(std::cos(i * spec.dx()) * factor).epsilon(1e-12));
        CHECK(m.dudy == 0.0);
        CHECK(m.dvdx == 0.0);
        CHECK(m.dvdy == 0.0);
      }
    }
  }
}

TEST_CASE("curl2d") {
  const GridSpec spec(30);

  SUBCASE("constant field") {
    const ScalarField w = curl2d(VectorField(spec, {1.0, 1.0}));
    for (double v : w.values()) CHECK(v == 0.0);
  }

  SUBCASE("gradients are curl-free to machine precision") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const ScalarField phi = random_scalar_field(spec, rng);
      const ScalarField w = curl2d(gradient(phi));
      CHECK(max_abs(w) <= 1e-13 * std::max(1.0, max_abs(phi) / spec.dx() / spec.dx()));
    }
  }

  SUBCASE("rigid rotation has curl 2 away from the seam") {
    const VectorField f = sample_analytic([](double, double y) { return -y; },
                                          [](double x, double) { return x; }, spec);
    const ScalarField w = curl2d(f);
    for (int i = 1; i < spec.n() - 1; ++i) {
      for (int j = 1; j < spec.n() - 1; ++j) {
        CHECK(w.at(i, j) == doctest::Approx(2.0).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("advection") {
  const GridSpec spec(30);
  std::mt19937_64 rng(17);

  SUBCASE("constant transported quantity") {
    const VectorField w = random_vector_field(spec, rng);
    const ScalarField a = advect(w, ScalarField(spec, 2.5));
    for (double v : a.values()) CHECK(v == 0.0);
  }

  SUBCASE("zero wind") {
    const ScalarField s = random_scalar_field(spec, rng);
    const ScalarField a = advect(VectorField(spec), s);
    for (double v : a.values()) CHECK(v == 0.0);
  }

  SUBCASE("unit wind against sin x") {
    const ScalarField s = sample_analytic([](double x, double) { return std::sin(x); }, spec);
    const ScalarField a = advect(VectorField(spec, {1.0, 0.0}), s);
    const double factor = sinc_factor(spec);
    for (int i = 0; i < spec.n(); ++i) {
      for (int j = 0; j < spec.n(); ++j) {
        CHECK(a.at(i, j) == doctest::Approx(std::cos(i * spec.dx()) * factor).epsilon(1e-12));
      }
    }
  }

  SUBCASE("grid mismatch is rejected") {
    const GridSpec other(60);
    CHECK_THROWS_AS(advect(VectorField(spec), ScalarField(other)), Error);
  }
}

TEST_CASE("all operators are linear") {
  const GridSpec spec(30);
  std::mt19937_64 rng(23);
  const double a = 1.7, b = -0.4;

  const ScalarField phi1 = random_scalar_field(spec, rng);
  const ScalarField phi2 = random_scalar_field(spec, rng);
  ScalarField phi_lin(spec);
  for (size_t k = 0; k < phi_lin.values().size(); ++k) {
    phi_lin.values()[k] = a * phi1.values()[k] + b * phi2.values()[k];
  }

  const VectorField x1 = random_vector_field(spec, rng);
  const VectorField x2 = random_vector_field(spec, rng);
  VectorField x_lin(spec);
  for (size_t k = 0; k < x_lin.u_values().size(); ++k) {
    x_lin.u_values()[k] = a * x1.u_values()[k] + b * x2.u_values()[k];
    x_lin.v_values()[k] = a * x1.v_values()[k] + b * x2.v_values()[k];
  }

  auto combine_scalar = [&](const ScalarField& f1, const ScalarField& f2) {
    ScalarField out(spec);
    for (size_t k = 0; k < out.values().size(); ++k) {
      out.values()[k] = a * f1.values()[k] + b * f2.values()[k];
    }
    return out;
  };
  auto combine_vector = [&](const VectorField& f1, const VectorField& f2) {
    VectorField out(spec);
    for (size_t k = 0; k < out.u_values().size(); ++k) {
      out.u_values()[k] = a * f1.u_values()[k] + b * f2.u_values()[k];
      out.v_values()[k] = a * f1.v_values()[k] + b * f2.v_values()[k];
    }
    return out;
  };

  const double tol = 1e-12;
  CHECK(max_abs_diff(laplacian(phi_lin), combine_scalar(laplacian(phi1), laplacian(phi2))) <
        tol * std::max(1.0, max_abs(laplacian(phi_lin))));
  CHECK(max_abs_diff(gradient(phi_lin), combine_vector(gradient(phi1), gradient(phi2))) <
        tol * std::max(1.0, max_abs(gradient(phi_lin))));
  CHECK(max_abs_diff(divergence(x_lin), combine_scalar(divergence(x1), divergence(x2))) <
        tol * std::max(1.0, max_abs(divergence(x_lin))));
  CHECK(max_abs_diff(curl2d(x_lin), combine_scalar(curl2d(x1), curl2d(x2))) <
        tol * std::max(1.0, max_abs(curl2d(x_lin))));
}

TEST_CASE("stream-function fields are discretely divergence-free") {
  const GridSpec spec(30);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const ScalarField psi = random_scalar_field(spec, rng);
    const VectorField x = stream_function_field(psi);
    const double scale = std::max(1.0, max_abs(x) / spec.dx());
    CHECK(max_abs(divergence(x)) <= 1e-13 * scale);
  }
}

TEST_CASE("second-order convergence from n = 30 to n = 60") {
  auto stencil_errors = [](int n) {
    const GridSpec spec(n);
    const double dx = spec.dx();
    const VectorField ic = shear_vortex(spec);
    const ScalarField phi =
        sample_analytic([](double x, double y) { return -std::sin(y) * std::cos(x); }, spec);

    double div_err = 0.0, grad_err = 0.0, lap_err = 0.0, curl_err = 0.0;
    const ScalarField d = divergence(ic);
    const VectorField g = gradient(phi);
    const ScalarField l = laplacian(phi);
    const ScalarField w = curl2d(ic);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double x = i * dx, y = j * dx;
        div_err = std::max(div_err, std::abs(d.at(i, j) - std::cos(x - y)));
        grad_err = std::max(grad_err, std::abs(g.u(i, j) - std::sin(y) * std::sin(x)));
        grad_err = std::max(grad_err, std::abs(g.v(i, j) + std::cos(y) * std::cos(x)));
        lap_err = std::max(lap_err, std::abs(l.at(i, j) - 2.0 * std::sin(y) * std::cos(x)));
        curl_err = std::max(curl_err, std::abs(w.at(i, j) - std::cos(x + y)));
      }
    }
    return std::array<double, 4>{div_err, grad_err, lap_err, curl_err};
  };

  const auto coarse = stencil_errors(30);
  const auto fine = stencil_errors(60);
  for (int k = 0; k < 4; ++k) {
    const double ratio = coarse[k] / fine[k];
    CHECK(ratio >= 3.2);
    CHECK(ratio <= 4.8);
  }
}
