// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

using namespace biot;

namespace
{

double total_area(const Mesh &m)
{
  double a = 0.0;
  for (Index c = 0; c < m.num_cells(); ++c)
    a += m.cell_area(c);
  return a;
}

}  // namespace

TEST_CASE("unit square counts")
{
  const Mesh m1 = unit_square_mesh(1);
  CHECK(m1.num_vertices() == 4);
  CHECK(m1.num_cells() == 2);
  CHECK(m1.num_edges() == 5);
  CHECK(m1.num_vertices() - m1.num_edges() + m1.num_cells() == 1);

  const Mesh m2 = unit_square_mesh(2);
  CHECK(m2.num_vertices() == 9);
  CHECK(m2.num_cells() == 8);
  CHECK(m2.num_edges() == 16);
}

TEST_CASE("areas sum to one")
{
  CHECK(total_area(unit_square_mesh(4)) == doctest::Approx(1.0).epsilon(1e-15));
  for (int n : {1, 3, 7})
    CHECK(std::abs(total_area(unit_square_mesh(n)) - 1.0) <= 1e-14);
}

TEST_CASE("mesh sizes")
{
  CHECK(mesh_stats(unit_square_mesh(1)).h_max == doctest::Approx(std::sqrt(2.0)));
  CHECK(mesh_stats(unit_square_mesh(4)).h_max == doctest::Approx(std::sqrt(2.0) / 4));
}

TEST_CASE("uniform refinement")
{
  const Mesh coarse = unit_square_mesh(1);
  const Mesh fine = refine_uniform(coarse);
  CHECK(fine.num_cells() == 8);
  CHECK(mesh_stats(fine).h_max == doctest::Approx(0.5 * mesh_stats(coarse).h_max));
  CHECK(mesh_stats(fine).shape_regularity == doctest::Approx(mesh_stats(coarse).shape_regularity).epsilon(1e-14));
  CHECK(std::abs(total_area(refine_uniform(fine)) - 1.0) <= 1e-14);

  std::set<std::string> tags;
  for (Index e = 0; e < fine.num_edges(); ++e)
    if (fine.is_boundary_edge(e))
    {
      tags.insert(fine.boundary_tag(e));
      const Vector2 mid = 0.5 * (fine.vertex(fine.edge(e).a) + fine.vertex(fine.edge(e).b));
      if (mid[0] == 0.0)
        CHECK(fine.boundary_tag(e) == "left");
      if (mid[1] == 1.0)
        CHECK(fine.boundary_tag(e) == "top");
    }
  CHECK(tags == std::set<std::string>{"bottom", "left", "right", "top"});
}

TEST_CASE("orientation consistency")
{
  for (const Mesh &m : {unit_square_mesh(3), refine_uniform(unit_square_mesh(2))})
  {
    std::vector<int> sign_sum(static_cast<std::size_t>(m.num_edges()), 0);
    std::vector<int> seen(static_cast<std::size_t>(m.num_edges()), 0);
    for (Index c = 0; c < m.num_cells(); ++c)
    {
      CHECK(m.cell_area(c) > 0.0);
      for (int i = 0; i < 3; ++i)
      {
        sign_sum[static_cast<std::size_t>(m.cell_edge(c, i))] += m.cell_edge_sign(c, i);
        ++seen[static_cast<std::size_t>(m.cell_edge(c, i))];
      }
    }
    for (Index e = 0; e < m.num_edges(); ++e)
    {
      CHECK(seen[static_cast<std::size_t>(e)] == (m.is_boundary_edge(e) ? 1 : 2));
      if (!m.is_boundary_edge(e))
        CHECK(sign_sum[static_cast<std::size_t>(e)] == 0);
      else
        CHECK(std::abs(std::abs(m.boundary_normal(e).dot(m.edge_normal(e))) - 1.0) < 1e-14);
    }
  }
}

TEST_CASE("outward normals of the unit square")
{
  const Mesh m = unit_square_mesh(2);
  for (Index e = 0; e < m.num_edges(); ++e)
  {
    if (!m.is_boundary_edge(e))
      continue;
    const Vector2 n = m.boundary_normal(e);
    const std::string &tag = m.boundary_tag(e);
    const Vector2 expect = tag == "left" ? Vector2(-1, 0) : tag == "right" ? Vector2(1, 0)
                         : tag == "bottom" ? Vector2(0, -1) : Vector2(0, 1);
    CHECK((n - expect).norm() < 1e-14);
  }
}

TEST_CASE("clockwise cells are reoriented and bad input rejected")
{
  const std::vector<Vector2> v{{0, 0}, {1, 0}, {0, 1}};
  const Mesh m(v, {{0, 2, 1}});
  CHECK(m.cell_area(0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(Mesh(v, {{0, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Mesh(v, {{0, 1, 5}}), std::invalid_argument);
  const std::vector<Vector2> collinear{{0, 0}, {1, 0}, {2, 0}};
  CHECK_THROWS_AS(Mesh(collinear, {{0, 1, 2}}), std::invalid_argument);
}

TEST_CASE("mesh file round trip")
{
  const Mesh m = unit_square_mesh(3);
  std::stringstream ss;
  write_mesh(ss, m);
  const Mesh r = read_mesh(ss);
  REQUIRE(r.num_vertices() == m.num_vertices());
  REQUIRE(r.num_cells() == m.num_cells());
  REQUIRE(r.num_edges() == m.num_edges());
  for (Index e = 0; e < m.num_edges(); ++e)
  {
    const Index f = r.find_edge(m.edge(e).a, m.edge(e).b);
    REQUIRE(f >= 0);
    CHECK(r.boundary_tag(f) == m.boundary_tag(e));
  }
  std::stringstream bad("dim=3 nv=1 nc=0\n0 0\n");
  CHECK_THROWS_AS(read_mesh(bad), std::invalid_argument);
}

TEST_CASE("boundary configuration validation")
{
  const Mesh m = unit_square_mesh(2);
  BoundaryConfig bc = BoundaryConfig::uniform(m, MechanicsBoundary::Displacement, FlowBoundary::Pressure);
  CHECK_NOTHROW(bc.validate(m));
  bc.flow.erase("left");
  CHECK_THROWS_AS(bc.validate(m), std::invalid_argument);
  BoundaryConfig all_flux = BoundaryConfig::uniform(m, MechanicsBoundary::Rotation, FlowBoundary::Flux);
  CHECK_THROWS_AS(all_flux.validate(m), std::invalid_argument);

  const BoundaryConfig s = sweep_boundary(m);
  for (Index e = 0; e < m.num_edges(); ++e)
    if (m.is_boundary_edge(e))
    {
      CHECK(s.is_rotation_edge(m, e) != s.is_displacement_edge(m, e));
      CHECK(s.is_pressure_edge(m, e) != s.is_flux_edge(m, e));
    }
}
