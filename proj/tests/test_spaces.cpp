// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "biot/quadrature_rules.hpp"
#include "support.hpp"

using namespace biot;
using biot::test::free_space;
using biot::test::square;

namespace
{

/// Corners of cell c and the barycentric points of its degree-4 rule.
std::vector<Vector3> sample_points()
{
  return {Vector3(1, 0, 0), Vector3(0, 1, 0), Vector3(0, 0, 1), Vector3(0.2, 0.3, 0.5), Vector3(0.6, 0.1, 0.3),
          Vector3(1.0 / 3, 1.0 / 3, 1.0 / 3)};
}

double l2_error(const FESpace &space, const Vector &coeffs, const VectorField &f)
{
  const Mesh &m = space.mesh();
  const auto pts = TriangleRule4<double>::points();
  const auto wts = TriangleRule4<double>::weights();
  double e = 0.0;
  for (Index c = 0; c < m.num_cells(); ++c)
  {
    const Triangle t = triangle(m, c);
    for (int k = 0; k < TriangleRule4<double>::size; ++k)
      e += wts[k] * t.area * (eval_vector(space, coeffs, c, pts[k]) - f(t.point(pts[k]))).squaredNorm();
  }
  return std::sqrt(e);
}

}  // namespace

TEST_CASE("dof counts")
{
  const auto m = square(2);
  CHECK(dof_count(*m, Family::RT0) == 16);
  CHECK(dof_count(*m, Family::BDM1) == 32);
  CHECK(dof_count(*m, Family::P0) == 8);
  CHECK(dof_count(*m, Family::Lagrange1) == 9);
  CHECK(free_space(m, Family::BDM1).dof_count() == 32);
}

TEST_CASE("Lagrange1 nodal basis and curl")
{
  const auto m = square(2);
  const FESpace space = free_space(m, Family::Lagrange1);
  for (Index c = 0; c < m->num_cells(); ++c)
  {
    const Triangle t = triangle(*m, c);
    for (int k = 0; k < 3; ++k)
    {
      const LocalBasis b = eval_basis(space, c, Vector3::Unit(k));
      REQUIRE(b.count == 3);
      for (int j = 0; j < 3; ++j)
      {
        CHECK(b.value(0, j) == doctest::Approx(k == j ? 1.0 : 0.0));
        const Vector2 rot(-t.grad_bary[j][1], t.grad_bary[j][0]);
        CHECK((b.curl.col(j) - rot).norm() < 1e-13);
      }
    }
  }
}

TEST_CASE("Lagrange1 interpolation of x + y")
{
  const auto m = square(1);
  const Vector c = interpolate(free_space(m, Family::Lagrange1), ScalarField([](const Vector2 &x) { return x[0] + x[1]; }));
  for (Index v = 0; v < m->num_vertices(); ++v)
    CHECK(c[v] == doctest::Approx(m->vertex(v)[0] + m->vertex(v)[1]));
  std::vector<double> sorted(c.data(), c.data() + c.size());
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<double>{0.0, 1.0, 1.0, 2.0});
}

TEST_CASE("RT0 edge moment duality")
{
  const auto m = square(2);
  const FESpace space = free_space(m, Family::RT0);
  const auto gp = EdgeRule3<double>::points();
  const auto gw = EdgeRule3<double>::weights();
  for (Index j = 0; j < space.dof_count(); ++j)
  {
    const Vector coeff = Vector::Unit(space.dof_count(), j);
    for (Index c = 0; c < m->num_cells(); ++c)
      for (int i = 0; i < 3; ++i)
      {
        const Index e = m->cell_edge(c, i);
        double flux = 0.0;
        for (int k = 0; k < 3; ++k)
        {
          Vector3 bary = Vector3::Zero();
          bary[(i + 1) % 3] = 1.0 - gp[k];
          bary[(i + 2) % 3] = gp[k];
          flux += gw[k] * m->edge_length(e) * eval_vector(space, coeff, c, bary).dot(m->edge_normal(e));
        }
        CHECK(flux == doctest::Approx(e == j ? 1.0 : 0.0).epsilon(1e-12));
      }
  }
}

TEST_CASE("RT0 divergence is plus or minus one over the area")
{
  const auto m = square(2);
  const FESpace space = free_space(m, Family::RT0);
  for (Index c = 0; c < m->num_cells(); ++c)
  {
    const LocalBasis b = eval_basis(space, c, Vector3(0.2, 0.3, 0.5));
    for (int j = 0; j < b.count; ++j)
      CHECK(std::abs(b.div(0, j)) == doctest::Approx(1.0 / m->cell_area(c)));
  }
}

TEST_CASE("P0 basis is one inside its cell")
{
  const auto m = square(2);
  const FESpace space = free_space(m, Family::P0);
  for (Index c = 0; c < m->num_cells(); ++c)
  {
    const LocalBasis b = eval_basis(space, c, Vector3(0.1, 0.7, 0.2));
    double sum = 0.0;
    for (int j = 0; j < b.count; ++j)
      sum += b.value(0, j);
    CHECK(sum == doctest::Approx(1.0));
  }
}

TEST_CASE("reproduction of constants and linears")
{
  const auto m = square(3);
  const VectorField constant = [](const Vector2 &) { return Vector2(0.3, -1.7); };
  const VectorField linear = [](const Vector2 &x) { return Vector2(1 + 2 * x[0] - x[1], 0.5 * x[0] + 3 * x[1]); };
  const FESpace rt = free_space(m, Family::RT0);
  const FESpace bdm = free_space(m, Family::BDM1);
  const Vector crt = interpolate(rt, constant);
  const Vector cbdm = interpolate(bdm, linear);
  for (Index c = 0; c < m->num_cells(); ++c)
    for (const Vector3 &b : sample_points())
    {
      const Vector2 x = triangle(*m, c).point(b);
      CHECK((eval_vector(rt, crt, c, b) - constant(x)).norm() < 1e-13);
      CHECK((eval_vector(bdm, cbdm, c, b) - linear(x)).norm() < 1e-13);
    }
}

TEST_CASE("BDM1 divergence is cellwise constant")
{
  const auto m = square(3);
  const FESpace bdm = free_space(m, Family::BDM1);
  std::mt19937_64 rng(3);
  const Vector c = biot::test::random_vector(bdm.dof_count(), rng);
  for (Index k = 0; k < m->num_cells(); ++k)
  {
    const double d0 = eval_div(bdm, c, k, Vector3(1, 0, 0));
    for (const Vector3 &b : sample_points())
      CHECK(eval_div(bdm, c, k, b) == doctest::Approx(d0).epsilon(1e-12));
  }
}

TEST_CASE("normal continuity across interior edges")
{
  const auto m = square(3);
  std::mt19937_64 rng(11);
  for (Family f : {Family::RT0, Family::BDM1})
  {
    const FESpace space = free_space(m, f);
    const Vector c = biot::test::random_vector(space.dof_count(), rng);
    for (Index e = 0; e < m->num_edges(); ++e)
    {
      if (m->is_boundary_edge(e))
        continue;
      const Vector2 xa = m->vertex(m->edge(e).a), xb = m->vertex(m->edge(e).b);
      const Vector2 x = 0.3 * xa + 0.7 * xb;
      double traces[2];
      for (int s = 0; s < 2; ++s)
      {
        const Index cell = m->edge_cells(e)[s];
        traces[s] = eval_vector(space, c, cell, triangle(*m, cell).barycentric(x)).dot(m->edge_normal(e));
      }
      CHECK(traces[0] == doctest::Approx(traces[1]).epsilon(1e-12));
    }
  }
}

TEST_CASE("interpolation orders")
{
  const VectorField f = [](const Vector2 &x) {
    return Vector2(std::sin(M_PI * x[0]) * std::cos(x[1]), std::exp(x[0] * x[1]));
  };
  for (Family fam : {Family::RT0, Family::BDM1})
  {
    std::vector<double> err;
    for (int n : {4, 8, 16})
    {
      const FESpace s = free_space(square(n), fam);
      err.push_back(l2_error(s, interpolate(s, f), f));
    }
    const double rate = std::log2(err[1] / err[2]);
    if (fam == Family::RT0)
      CHECK(rate == doctest::Approx(1.0).epsilon(0.1));
    else
      CHECK(rate == doctest::Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("essential masks follow the boundary assignment")
{
  const auto m = square(2);
  const BoundaryConfig bc = sweep_boundary(*m);
  const auto sp = build_mixed_spaces(m, 2, bc);
  for (Index v = 0; v < m->num_vertices(); ++v)
  {
    const Vector2 x = m->vertex(v);
    const bool on_rot = x[0] == 0.0 || x[1] == 0.0;
    CHECK(static_cast<bool>(sp->rotation.essential()[static_cast<std::size_t>(v)]) == on_rot);
  }
  for (Index e = 0; e < m->num_edges(); ++e)
  {
    const bool rot = m->is_boundary_edge(e) && bc.is_rotation_edge(*m, e);
    const bool flux = m->is_boundary_edge(e) && bc.is_flux_edge(*m, e);
    CHECK(static_cast<bool>(sp->displacement.essential()[static_cast<std::size_t>(e)]) == rot);
    CHECK(static_cast<bool>(sp->flux.essential()[static_cast<std::size_t>(2 * e)]) == flux);
    CHECK(static_cast<bool>(sp->flux.essential()[static_cast<std::size_t>(2 * e + 1)]) == flux);
  }
  CHECK(sp->pressure.num_essential() == 0);
  const auto off = sp->offsets();
  CHECK(off[4] == 9 + 16 + 32 + 8);
}

TEST_CASE("field state stacking")
{
  const auto m = square(2);
  const auto sp = build_mixed_spaces(m, 1, sweep_boundary(*m));
  std::mt19937_64 rng(5);
  const FieldState s = biot::test::random_state(sp, rng);
  const FieldState t = FieldState::from_stacked(sp, s.stacked());
  CHECK(t.stacked() == s.stacked());
  FieldState bad = s;
  bad.p.resize(3);
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
  CHECK_THROWS_AS(eval_basis(sp->pressure, 99, Vector3(1, 0, 0)), std::out_of_range);
}
