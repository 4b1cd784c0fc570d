// SPDX-License-Identifier: Apache-2.0

#include "biot/spaces.hpp"

#include <algorithm>
#include <stdexcept>

#include "biot/quadrature_rules.hpp"

namespace biot
{

std::string to_string(Family family)
{
  switch (family)
  {
    case Family::Lagrange1:
      return "Lagrange1";
    case Family::RT0:
      return "RT0";
    case Family::BDM1:
      return "BDM1";
    case Family::P0:
      return "P0";
  }
  return "unknown";
}

FESpace::FESpace(std::shared_ptr<const Mesh> mesh, Family family, FieldRole role, std::vector<char> essential)
  : mesh_(std::move(mesh)), family_(family), role_(role), essential_(std::move(essential))
{
  if (static_cast<Index>(essential_.size()) != biot::dof_count(*mesh_, family_))
  {
    throw std::invalid_argument("essential mask length does not match the DOF count");
  }
}

Index FESpace::num_essential() const
{
  return std::count(essential_.begin(), essential_.end(), 1);
}

std::vector<std::vector<Index>> FESpace::vertex_dof_groups() const
{
  const Mesh &m = *mesh_;
  std::vector<std::vector<Index>> groups;
  if (family_ == Family::P0)
  {
    return groups;
  }
  groups.resize(m.num_vertices());
  for (Index v = 0; v < m.num_vertices(); ++v)
  {
    if (family_ == Family::Lagrange1)
    {
      groups[v].push_back(v);
      continue;
    }
    for (Index e : m.vertex_edges(v))
    {
      if (family_ == Family::RT0)
        groups[v].push_back(e);
      else
        groups[v].push_back(2 * e + (m.edge(e).a == v ? 0 : 1));
    }
  }
  return groups;
}

Index dof_count(const Mesh &mesh, Family family)
{
  switch (family)
  {
    case Family::Lagrange1:
      return mesh.num_vertices();
    case Family::RT0:
      return mesh.num_edges();
    case Family::BDM1:
      return 2 * mesh.num_edges();
    case Family::P0:
      return mesh.num_cells();
  }
  throw std::invalid_argument("unknown element family");
}

FESpace build_space(std::shared_ptr<const Mesh> mesh, Family family, FieldRole role, const BoundaryConfig &bc)
{
  const Mesh &m = *mesh;
  std::vector<char> essential(dof_count(m, family), 0);
  for (Index e = 0; e < m.num_edges(); ++e)
  {
    if (!m.is_boundary_edge(e))
      continue;
    switch (role)
    {
      case FieldRole::Rotation:
        if (family != Family::Lagrange1)
          throw std::invalid_argument("rotation space must be Lagrange1 in 2D");
        if (bc.is_rotation_edge(m, e))
        {
          essential[m.edge(e).a] = 1;
          essential[m.edge(e).b] = 1;
        }
        break;
      case FieldRole::Displacement:
        if (family != Family::RT0)
          throw std::invalid_argument("displacement space must be RT0");
        if (bc.is_rotation_edge(m, e))
          essential[e] = 1;
        break;
      case FieldRole::Flux:
        if (bc.is_flux_edge(m, e))
        {
          if (family == Family::RT0)
          {
            essential[e] = 1;
          }
          else if (family == Family::BDM1)
          {
            essential[2 * e] = 1;
            essential[2 * e + 1] = 1;
          }
          else
          {
            throw std::invalid_argument("flux space must be RT0 or BDM1");
          }
        }
        break;
      case FieldRole::Pressure:
        if (family != Family::P0)
          throw std::invalid_argument("pressure space must be P0");
        break;
    }
  }
  return FESpace(std::move(mesh), family, role, std::move(essential));
}

LocalBasis eval_basis(const FESpace &space, Index c, const Vector3 &bary)
{
  const Mesh &m = space.mesh();
  if (c < 0 || c >= m.num_cells())
  {
    throw std::out_of_range("cell id " + std::to_string(c) + " out of range");
  }
  const Triangle t = triangle(m, c);
  const auto &cell = m.cell(c);
  LocalBasis b;
  switch (space.family())
  {
    case Family::Lagrange1:
      b.count = 3;
      for (int i = 0; i < 3; ++i)
      {
        b.dofs[i] = cell[i];
        b.value(0, i) = bary[i];
        b.curl.col(i) = Vector2(-t.grad_bary[i].y(), t.grad_bary[i].x());
      }
      break;
    case Family::RT0:
    {
      b.count = 3;
      const Vector2 x = t.point(bary);
      for (int i = 0; i < 3; ++i)
      {
        const double s = m.cell_edge_sign(c, i);
        b.dofs[i] = m.cell_edge(c, i);
        b.value.col(i) = s * (x - t.x[i]) / (2.0 * t.area);
        b.div(i) = s / t.area;
      }
      break;
    }
    case Family::BDM1:
      b.count = 6;
      for (int i = 0; i < 3; ++i)
      {
        const Index e = m.cell_edge(c, i);
        const double s = m.cell_edge_sign(c, i);
        for (int k = 1; k <= 2; ++k)
        {
          const int j = (i + k) % 3;
          const int slot = 2 * i + (k - 1);
          b.dofs[slot] = 2 * e + (m.edge(e).a == cell[j] ? 0 : 1);
          b.value.col(slot) = s * bary[j] * (t.x[j] - t.x[i]) / t.area;
          b.div(slot) = s / t.area;
        }
      }
      break;
    case Family::P0:
      b.count = 1;
      b.dofs[0] = c;
      b.value(0, 0) = 1.0;
      break;
  }
  return b;
}

Vector interpolate(const FESpace &space, const ScalarField &f)
{
  const Mesh &m = space.mesh();
  Vector coeffs(space.dof_count());
  if (space.family() == Family::Lagrange1)
  {
    for (Index v = 0; v < m.num_vertices(); ++v)
      coeffs[v] = f(m.vertex(v));
  }
  else if (space.family() == Family::P0)
  {
    const auto pts = TriangleRule4<>::points();
    const auto wts = TriangleRule4<>::weights();
    for (Index c = 0; c < m.num_cells(); ++c)
    {
      const Triangle t = triangle(m, c);
      double mean = 0.0;
      for (int q = 0; q < TriangleRule4<>::size; ++q)
        mean += wts[q] * f(t.point(pts[q]));
      coeffs[c] = mean;
    }
  }
  else
  {
    throw std::invalid_argument("scalar interpolation on a vector-valued space");
  }
  return coeffs;
}

Vector interpolate(const FESpace &space, const VectorField &f)
{
  const Mesh &m = space.mesh();
  if (!space.is_vector_valued())
  {
    throw std::invalid_argument("vector interpolation on a scalar space");
  }
  Vector coeffs(space.dof_count());
  const auto pts = EdgeRule3<>::points();
  const auto wts = EdgeRule3<>::weights();
  for (Index e = 0; e < m.num_edges(); ++e)
  {
    const Vector2 &xa = m.vertex(m.edge(e).a);
    const Vector2 &xb = m.vertex(m.edge(e).b);
    const Vector2 n = m.edge_normal(e);
    const double len = m.edge_length(e);
    double m0 = 0.0;  // flux
    double m1 = 0.0;  // moment against lambda_a - lambda_b
    for (int q = 0; q < EdgeRule3<>::size; ++q)
    {
      const double s = pts[q];
      const double fn = f((1.0 - s) * xa + s * xb).dot(n);
      m0 += wts[q] * len * fn;
      m1 += wts[q] * len * fn * (1.0 - 2.0 * s);
    }
    if (space.family() == Family::RT0)
    {
      coeffs[e] = m0;
    }
    else
    {
      coeffs[2 * e] = 0.5 * (m0 + 3.0 * m1);
      coeffs[2 * e + 1] = 0.5 * (m0 - 3.0 * m1);
    }
  }
  return coeffs;
}

namespace
{

void check_length(const FESpace &space, const Vector &coeffs)
{
  if (coeffs.size() != space.dof_count())
  {
    throw std::invalid_argument("coefficient vector length " + std::to_string(coeffs.size()) +
                                " does not match the " + to_string(space.family()) + " DOF count " +
                                std::to_string(space.dof_count()));
  }
}

}  // namespace

double eval_scalar(const FESpace &space, const Vector &coeffs, Index c, const Vector3 &bary)
{
  check_length(space, coeffs);
  if (space.is_vector_valued())
    throw std::invalid_argument("eval_scalar on a vector-valued space");
  const LocalBasis b = eval_basis(space, c, bary);
  double value = 0.0;
  for (int i = 0; i < b.count; ++i)
    value += coeffs[b.dofs[i]] * b.value(0, i);
  return value;
}

Vector2 eval_vector(const FESpace &space, const Vector &coeffs, Index c, const Vector3 &bary)
{
  check_length(space, coeffs);
  if (!space.is_vector_valued())
    throw std::invalid_argument("eval_vector on a scalar space");
  const LocalBasis b = eval_basis(space, c, bary);
  Vector2 value = Vector2::Zero();
  for (int i = 0; i < b.count; ++i)
    value += coeffs[b.dofs[i]] * b.value.col(i);
  return value;
}

Vector2 eval_curl(const FESpace &space, const Vector &coeffs, Index c, const Vector3 &bary)
{
  check_length(space, coeffs);
  if (space.family() != Family::Lagrange1)
    throw std::invalid_argument("eval_curl requires a Lagrange1 space");
  const LocalBasis b = eval_basis(space, c, bary);
  Vector2 value = Vector2::Zero();
  for (int i = 0; i < b.count; ++i)
    value += coeffs[b.dofs[i]] * b.curl.col(i);
  return value;
}

double eval_div(const FESpace &space, const Vector &coeffs, Index c, const Vector3 &bary)
{
  check_length(space, coeffs);
  if (!space.is_vector_valued())
    throw std::invalid_argument("eval_div requires an RT0 or BDM1 space");
  const LocalBasis b = eval_basis(space, c, bary);
  double value = 0.0;
  for (int i = 0; i < b.count; ++i)
    value += coeffs[b.dofs[i]] * b.div(i);
  return value;
}

const FESpace &MixedSpaces::operator[](int field) const
{
  switch (field)
  {
    case 0:
      return rotation;
    case 1:
      return displacement;
    case 2:
      return flux;
    case 3:
      return pressure;
  }
  throw std::out_of_range("field index must be 0..3");
}

std::array<Index, 5> MixedSpaces::offsets() const
{
  std::array<Index, 5> o{0, 0, 0, 0, 0};
  for (int i = 0; i < 4; ++i)
    o[i + 1] = o[i] + (*this)[i].dof_count();
  return o;
}

std::shared_ptr<const MixedSpaces> build_mixed_spaces(std::shared_ptr<const Mesh> mesh, int family,
                                                      const BoundaryConfig &bc)
{
  if (family != 1 && family != 2)
  {
    throw std::invalid_argument("family must be 1 or 2");
  }
  bc.validate(*mesh);
  const Family flux_family = family == 1 ? Family::RT0 : Family::BDM1;
  return std::make_shared<const MixedSpaces>(MixedSpaces{
      mesh, family, build_space(mesh, Family::Lagrange1, FieldRole::Rotation, bc),
      build_space(mesh, Family::RT0, FieldRole::Displacement, bc),
      build_space(mesh, flux_family, FieldRole::Flux, bc), build_space(mesh, Family::P0, FieldRole::Pressure, bc)});
}

FieldState FieldState::zero(std::shared_ptr<const MixedSpaces> spaces)
{
  FieldState s;
  s.r = Vector::Zero(spaces->rotation.dof_count());
  s.u = Vector::Zero(spaces->displacement.dof_count());
  s.q = Vector::Zero(spaces->flux.dof_count());
  s.p = Vector::Zero(spaces->pressure.dof_count());
  s.spaces = std::move(spaces);
  return s;
}

FieldState FieldState::from_stacked(std::shared_ptr<const MixedSpaces> spaces, const Vector &x)
{
  const auto o = spaces->offsets();
  if (x.size() != o[4])
  {
    throw std::invalid_argument("stacked vector length does not match the mixed spaces");
  }
  FieldState s;
  s.r = x.segment(o[0], o[1] - o[0]);
  s.u = x.segment(o[1], o[2] - o[1]);
  s.q = x.segment(o[2], o[3] - o[2]);
  s.p = x.segment(o[3], o[4] - o[3]);
  s.spaces = std::move(spaces);
  return s;
}

Vector FieldState::stacked() const
{
  check();
  Vector x(r.size() + u.size() + q.size() + p.size());
  x << r, u, q, p;
  return x;
}

void FieldState::check() const
{
  if (!spaces)
    throw std::invalid_argument("field state without spaces");
  check_length(spaces->rotation, r);
  check_length(spaces->displacement, u);
  check_length(spaces->flux, q);
  check_length(spaces->pressure, p);
}

}  // namespace biot
