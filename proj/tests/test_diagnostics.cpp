#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "iflow/diagnostics.hpp"
#include "iflow/poisson.hpp"
#include "test_support.hpp"

using namespace iflow;
using namespace iflow::testing;

TEST_CASE("inner_product") {
  const GridSpec spec(30);

  SUBCASE("unit constant field squares to the domain area") {
    const VectorField ones(spec, {1.0, 0.0});
    CHECK(inner_product(ones, ones) ==
          doctest::Approx(16.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-12));
  }

  SUBCASE("nodewise-orthogonal fields give exactly zero") {
    std::mt19937_64 rng(83);
    VectorField a(spec), b(spec);
    for (double& v : a.u_values()) v = 2.0;
    for (double& v : b.v_values()) v = -3.0;
    CHECK(inner_product(a, b) == 0.0);
  }

  SUBCASE("symmetric in its arguments, exactly") {
    std::mt19937_64 rng(89);
    const VectorField a = random_vector_field(spec, rng);
    const VectorField b = random_vector_field(spec, rng);
    CHECK(inner_product(a, b) == inner_product(b, a));
  }

  SUBCASE("bilinear") {
    std::mt19937_64 rng(97);
    const VectorField a = random_vector_field(spec, rng);
    const VectorField b = random_vector_field(spec, rng);
    const VectorField c = random_vector_field(spec, rng);
    const double alpha = 1.3, beta = -0.7;
    VectorField combo(spec);
    for (size_t k = 0; k < combo.u_values().size(); ++k) {
      combo.u_values()[k] = alpha * a.u_values()[k] + beta * b.u_values()[k];
      combo.v_values()[k] = alpha * a.v_values()[k] + beta * b.v_values()[k];
    }
    const double lhs = inner_product(combo, c);
    const double rhs = alpha * inner_product(a, c) + beta * inner_product(b, c);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }

  SUBCASE("grid mismatch is rejected") {
    CHECK_THROWS_AS(inner_product(VectorField(spec), VectorField(GridSpec(60))), Error);
  }
}

TEST_CASE("kinetic_energy") {
  const GridSpec spec(30);
  CHECK(kinetic_energy(VectorField(spec)) == 0.0);
  CHECK(kinetic_energy(VectorField(spec, {1.0, 0.0})) ==
        doctest::Approx(8.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-12));

  SUBCASE("matches a brute-force sum on the shear vortex") {
    const VectorField v = shear_vortex(spec);
    double sum = 0.0;
    for (int i = 0; i < spec.n(); ++i) {
      for (int j = 0; j < spec.n(); ++j) {
        sum += v.u(i, j) * v.u(i, j) + v.v(i, j) * v.v(i, j);
      }
    }
    const double expected = 0.5 * sum * spec.dx() * spec.dx();
    CHECK(kinetic_energy(v) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("divergence_norms") {
  const GridSpec spec(30);

  SUBCASE("constant field") {
    const DivergenceNorms norms = divergence_norms(VectorField(spec, {4.0, 2.0}));
    CHECK(norms.max == 0.0);
    CHECK(norms.l2 == 0.0);
  }

  SUBCASE("projected field is discretely divergence-free") {
    std::mt19937_64 rng(101);
    const VectorField x = random_vector_field(spec, rng);
    const DivergenceNorms norms = divergence_norms(helmholtz_project(x).projected);
    CHECK(norms.max <= 1e-8);
  }

  SUBCASE("shear vortex matches the scaled symbolic oracle") {
    const VectorField v = shear_vortex(spec);
    const DivergenceNorms norms = divergence_norms(v);
    const double factor = std::sin(spec.dx()) / spec.dx();
    double oracle_max = 0.0;
    for (int i = 0; i < spec.n(); ++i) {
      for (int j = 0; j < spec.n(); ++j) {
        oracle_max = std::max(oracle_max,
                              std::abs(std::cos((i - j) * spec.dx())) * factor);
      }
    }
    CHECK(norms.max == doctest::Approx(oracle_max).epsilon(1e-12));
    CHECK(norms.l2 > 0.0);
  }
}

TEST_CASE("cost_step") {
  const GridSpec spec(30);
  const ObstaclePotential off{{7.0, 7.0}, 0.5, 0.0, 1e-6};
  const ObstaclePotential on{{7.0, 7.0}, 0.5, 1.0, 1e-6};
  std::vector<Vec2> one_tracer{{1.0, 1.0}};

  SUBCASE("no motion and no potential costs nothing") {
    CHECK(cost_step(VectorField(spec), one_tracer, off, 1e-3) == 0.0);
  }

  SUBCASE("uniform motion costs kinetic energy times dt") {
    const double expected = 1e-3 * 8.0 * std::numbers::pi * std::numbers::pi;
    CHECK(cost_step(VectorField(spec, {1.0, 0.0}), one_tracer, off, 1e-3) ==
          doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("node tracers reduce the quadrature to a grid sum") {
    std::vector<Vec2> tracers;
    for (int i = 0; i < spec.n(); ++i) {
      for (int j = 0; j < spec.n(); ++j) tracers.push_back(spec.node(i, j));
    }
    double grid_sum = 0.0;
    for (const Vec2& p : tracers) grid_sum += potential_eval(on, p);
    const double expected = 1e-3 * grid_sum * spec.dx() * spec.dx();
    CHECK(cost_step(VectorField(spec), tracers, on, 1e-3) ==
          doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("additive over disjoint time intervals") {
    std::mt19937_64 rng(103);
    const VectorField v = random_vector_field(spec, rng);
    const double whole = cost_step(v, one_tracer, on, 3e-3);
    const double parts = cost_step(v, one_tracer, on, 1e-3) +
                         cost_step(v, one_tracer, on, 2e-3);
    CHECK(whole == doctest::Approx(parts).epsilon(1e-14));
  }

  SUBCASE("requires tracers") {
    CHECK_THROWS_AS(cost_step(VectorField(spec), {}, on, 1e-3), Error);
  }
}

TEST_CASE("area_preservation_error") {
  const double L = 4.0 * std::numbers::pi;
  auto make_lattice = [L](int m, double scale, Vec2 offset) {
    std::vector<Vec2> out;
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        out.push_back({offset.x + scale * a * L / (4.0 * m),
                       offset.y + scale * b * L / (4.0 * m)});
      }
    }
    return out;
  };

  SUBCASE("identical lattices have zero error") {
    const auto before = make_lattice(6, 1.0, {1.0, 1.0});
    CHECK(area_preservation_error(before, before, 6, L) == 0.0);
  }

  SUBCASE("rigid translation has zero error, including across the seam") {
    const auto before = make_lattice(6, 1.0, {1.0, 1.0});
    std::vector<Vec2> after;
    for (const Vec2& p : before) after.push_back(wrap_point(p + Vec2{L - 0.5, 0.3}, L));
    CHECK(area_preservation_error(before, after, 6, L) <= 1e-12);
  }

  SUBCASE("uniform dilation by s changes areas by s^2 - 1") {
    const auto before = make_lattice(5, 1.0, {2.0, 2.0});
    const double s = 1.1;
    std::vector<Vec2> after;
    for (const Vec2& p : before) after.push_back({2.0 + s * (p.x - 2.0), 2.0 + s * (p.y - 2.0)});
    CHECK(area_preservation_error(before, after, 5, L) ==
          doctest::Approx(s * s - 1.0).epsilon(1e-9));
  }

  SUBCASE("degenerate quads are an error") {
    std::vector<Vec2> collapsed(9, Vec2{1.0, 1.0});
    const auto before = make_lattice(3, 1.0, {1.0, 1.0});
    CHECK_THROWS_AS(area_preservation_error(collapsed, before, 3, L), DegenerateQuadError);
  }

  SUBCASE("quads wider than a quarter period are skipped") {
    // 2 x 2 lattice spanning half the domain: its only quad is excluded,
    // so even a wild "after" state reports zero error.
    std::vector<Vec2> before{{0.0, 0.0}, {0.0, L / 2}, {L / 2, 0.0}, {L / 2, L / 2}};
    std::vector<Vec2> after{{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {2.0, 2.0}};
    CHECK(area_preservation_error(before, after, 2, L) == 0.0);
  }

  SUBCASE("mismatched lattice sizes are rejected") {
    const auto before = make_lattice(3, 1.0, {1.0, 1.0});
    CHECK_THROWS_AS(area_preservation_error(before, before, 4, L), Error);
  }
}

TEST_CASE("max_speed") {
  const GridSpec spec(30);
  VectorField v(spec, {3.0, 4.0});
  CHECK(max_speed(v) == doctest::Approx(5.0).epsilon(1e-15));
}
