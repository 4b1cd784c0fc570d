// SPDX-License-Identifier: Apache-2.0

#include "biot/assembly.hpp"

#include <stdexcept>

#include "biot/quadrature_rules.hpp"

namespace biot
{

CellWeight CellWeight::uniform(double value)
{
  CellWeight w;
  w.uniform_ = value;
  return w;
}

CellWeight CellWeight::per_cell(std::vector<double> values)
{
  CellWeight w;
  w.scalars_ = std::move(values);
  return w;
}

CellWeight CellWeight::tensor(std::vector<Matrix2> values)
{
  CellWeight w;
  w.tensors_ = std::move(values);
  return w;
}

Matrix2 CellWeight::at(Index c) const
{
  if (!tensors_.empty())
    return tensors_[c];
  return scalar_at(c) * Matrix2::Identity();
}

double CellWeight::scalar_at(Index c) const
{
  if (!tensors_.empty())
    throw std::logic_error("scalar_at on a tensor weight");
  return scalars_.empty() ? uniform_ : scalars_[c];
}

void CellWeight::validate(Index num_cells) const
{
  if (!tensors_.empty())
  {
    if (static_cast<Index>(tensors_.size()) != num_cells)
      throw std::invalid_argument("tensor weight needs one entry per cell");
    for (const auto &k : tensors_)
    {
      if (std::abs(k(0, 1) - k(1, 0)) > 1e-14 * k.norm())
        throw std::invalid_argument("tensor weight is not symmetric");
      if (!(k(0, 0) > 0.0) || !(k.determinant() > 0.0))
        throw std::invalid_argument("tensor weight is not positive definite");
    }
    return;
  }
  if (!scalars_.empty())
  {
    if (static_cast<Index>(scalars_.size()) != num_cells)
      throw std::invalid_argument("cellwise weight needs one entry per cell");
    for (double v : scalars_)
      if (!(v > 0.0))
        throw std::invalid_argument("cellwise weight must be positive");
    return;
  }
  if (!(uniform_ > 0.0))
    throw std::invalid_argument("weight must be positive");
}

CellWeight CellWeight::scaled(double factor) const
{
  CellWeight w = *this;
  w.uniform_ *= factor;
  for (auto &v : w.scalars_)
    v *= factor;
  for (auto &k : w.tensors_)
    k *= factor;
  return w;
}

namespace
{

SparseMatrix from_triplets(Index rows, Index cols, const std::vector<Triplet> &triplets)
{
  SparseMatrix m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace

SparseMatrix mass_matrix(const FESpace &space, const CellWeight &weight)
{
  const Mesh &m = space.mesh();
  weight.validate(m.num_cells());
  const auto pts = TriangleRule4<>::points();
  const auto wts = TriangleRule4<>::weights();
  std::vector<Triplet> triplets;
  for (Index c = 0; c < m.num_cells(); ++c)
  {
    const double area = m.cell_area(c);
    const Matrix2 w = weight.at(c);
    Eigen::Matrix<double, 6, 6> local = Eigen::Matrix<double, 6, 6>::Zero();
    LocalBasis b;
    for (int q = 0; q < TriangleRule4<>::size; ++q)
    {
      b = eval_basis(space, c, pts[q]);
      for (int i = 0; i < b.count; ++i)
      {
        for (int j = i; j < b.count; ++j)
        {
          const double v = space.is_vector_valued() ? b.value.col(i).dot(w * b.value.col(j))
                                                    : w(0, 0) * b.value(0, i) * b.value(0, j);
          local(i, j) += wts[q] * area * v;
        }
      }
    }
    for (int i = 0; i < b.count; ++i)
    {
      for (int j = i; j < b.count; ++j)
      {
        triplets.emplace_back(b.dofs[i], b.dofs[j], local(i, j));
        if (j != i)
          triplets.emplace_back(b.dofs[j], b.dofs[i], local(i, j));
      }
    }
  }
  return from_triplets(space.dof_count(), space.dof_count(), triplets);
}

SparseMatrix stiffness_matrix(const FESpace &rotation)
{
  if (rotation.family() != Family::Lagrange1)
    throw std::invalid_argument("stiffness_matrix requires a Lagrange1 space");
  const Mesh &m = rotation.mesh();
  std::vector<Triplet> triplets;
  for (Index c = 0; c < m.num_cells(); ++c)
  {
    const Triangle t = triangle(m, c);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        triplets.emplace_back(m.cell(c)[i], m.cell(c)[j], t.area * t.grad_bary[i].dot(t.grad_bary[j]));
  }
  return from_triplets(rotation.dof_count(), rotation.dof_count(), triplets);
}

SparseMatrix curl_matrix(const FESpace &rotation, const FESpace &displacement)
{
  if (rotation.family() != Family::Lagrange1 || displacement.family() != Family::RT0)
    throw std::invalid_argument("curl_matrix maps Lagrange1 into RT0");
  if (&rotation.mesh() != &displacement.mesh())
    throw std::invalid_argument("curl_matrix: spaces live on different meshes");
  const Mesh &m = rotation.mesh();
  std::vector<Triplet> triplets;
  triplets.reserve(2 * m.num_edges());
  for (Index e = 0; e < m.num_edges(); ++e)
  {
    triplets.emplace_back(e, m.edge(e).a, 1.0);
    triplets.emplace_back(e, m.edge(e).b, -1.0);
  }
  return from_triplets(displacement.dof_count(), rotation.dof_count(), triplets);
}

SparseMatrix div_matrix(const FESpace &hdiv, const FESpace &pressure)
{
  if (!hdiv.is_vector_valued() || pressure.family() != Family::P0)
    throw std::invalid_argument("div_matrix maps RT0/BDM1 into P0");
  if (&hdiv.mesh() != &pressure.mesh())
    throw std::invalid_argument("div_matrix: spaces live on different meshes");
  const Mesh &m = hdiv.mesh();
  const Vector3 centroid = Vector3::Constant(1.0 / 3.0);
  std::vector<Triplet> triplets;
  for (Index c = 0; c < m.num_cells(); ++c)
  {
    const LocalBasis b = eval_basis(hdiv, c, centroid);
    for (int i = 0; i < b.count; ++i)
      triplets.emplace_back(c, b.dofs[i], b.div(i));
  }
  return from_triplets(pressure.dof_count(), hdiv.dof_count(), triplets);
}

double exact_inner_product(const FESpace &space, const Vector &coeffs, const CellwiseConstant &c)
{
  const Mesh &m = space.mesh();
  if (c.cols() != m.num_cells())
    throw std::invalid_argument("cellwise constant needs one column per cell");
  const auto pts = TriangleRule4<>::points();
  const auto wts = TriangleRule4<>::weights();
  double sum = 0.0;
  for (Index cell = 0; cell < m.num_cells(); ++cell)
  {
    const double area = m.cell_area(cell);
    for (int q = 0; q < TriangleRule4<>::size; ++q)
    {
      const double v = space.is_vector_valued() ? eval_vector(space, coeffs, cell, pts[q]).dot(c.col(cell))
                                                : eval_scalar(space, coeffs, cell, pts[q]) * c(0, cell);
      sum += wts[q] * area * v;
    }
  }
  return sum;
}

OperatorBlocks assemble_operators(const MixedSpaces &spaces)
{
  OperatorBlocks ops;
  ops.M_r = mass_matrix(spaces.rotation);
  ops.M_u = mass_matrix(spaces.displacement);
  ops.M_q = mass_matrix(spaces.flux);
  ops.M_p = mass_matrix(spaces.pressure);
  ops.B_r = curl_matrix(spaces.rotation, spaces.displacement);
  ops.B_u = div_matrix(spaces.displacement, spaces.pressure);
  ops.B_q = div_matrix(spaces.flux, spaces.pressure);
  ops.Bh_r = (ops.M_u * ops.B_r).pruned();
  ops.Bh_u = (ops.M_p * ops.B_u).pruned();
  ops.Bh_q = (ops.M_p * ops.B_q).pruned();
  return ops;
}

Vector RhsAssembly::stacked() const
{
  Vector x(f_r.size() + f_u.size() + f_q.size() + f_p.size());
  x << f_r, f_u, f_q, f_p;
  return x;
}

RhsAssembly assemble_rhs(const ProblemData &data, const MixedSpaces &spaces, const BoundaryConfig &bc,
                         double delta)
{
  const Mesh &m = *spaces.mesh;
  RhsAssembly rhs;
  rhs.f_r = Vector::Zero(spaces.rotation.dof_count());
  rhs.f_u = Vector::Zero(spaces.displacement.dof_count());
  rhs.f_q = Vector::Zero(spaces.flux.dof_count());
  rhs.f_p = Vector::Zero(spaces.pressure.dof_count());

  const auto cpts = TriangleRule4<>::points();
  const auto cwts = TriangleRule4<>::weights();
  if (data.body_force || data.fluid_source)
  {
    for (Index c = 0; c < m.num_cells(); ++c)
    {
      const Triangle t = triangle(m, c);
      for (int q = 0; q < TriangleRule4<>::size; ++q)
      {
        const Vector2 x = t.point(cpts[q]);
        const double w = cwts[q] * t.area;
        if (data.body_force)
        {
          const Vector2 f = data.body_force(x);
          const LocalBasis b = eval_basis(spaces.displacement, c, cpts[q]);
          for (int i = 0; i < b.count; ++i)
            rhs.f_u[b.dofs[i]] += w * f.dot(b.value.col(i));
        }
        if (data.fluid_source)
          rhs.f_p[c] += w * data.fluid_source(x);
      }
    }
  }

  const auto epts = EdgeRule3<>::points();
  const auto ewts = EdgeRule3<>::weights();
  for (Index e = 0; e < m.num_edges(); ++e)
  {
    if (!m.is_boundary_edge(e))
      continue;
    const bool on_u = bc.is_displacement_edge(m, e);
    const bool on_p = bc.is_pressure_edge(m, e);
    if (!on_u && !on_p)
      continue;
    if (on_u && (!bc.displacement || !bc.normal_stress))
      throw std::invalid_argument("displacement boundary '" + m.boundary_tag(e) +
                                  "' needs displacement and normal_stress data");
    if (on_p && !bc.pressure)
      throw std::invalid_argument("pressure boundary '" + m.boundary_tag(e) + "' needs pressure data");

    const Index c = m.edge_cells(e)[0];
    int local = 0;
    while (m.cell_edge(c, local) != e)
      ++local;
    const Vector2 nu = m.boundary_normal(e);
    const double len = m.edge_length(e);
    const Triangle t = triangle(m, c);
    for (int q = 0; q < EdgeRule3<>::size; ++q)
    {
      Vector3 bary = Vector3::Zero();
      bary[(local + 1) % 3] = 1.0 - epts[q];
      bary[(local + 2) % 3] = epts[q];
      const Vector2 x = t.point(bary);
      const double w = ewts[q] * len;
      if (on_u)
      {
        const Vector2 u0 = bc.displacement(x);
        const double tangential = nu.y() * u0.x() - nu.x() * u0.y();
        const LocalBasis br = eval_basis(spaces.rotation, c, bary);
        for (int i = 0; i < br.count; ++i)
          rhs.f_r[br.dofs[i]] += w * tangential * br.value(0, i);
        const double sigma0 = bc.normal_stress(x);
        const LocalBasis bu = eval_basis(spaces.displacement, c, bary);
        for (int i = 0; i < bu.count; ++i)
          rhs.f_u[bu.dofs[i]] -= w * sigma0 * nu.dot(bu.value.col(i));
      }
      if (on_p)
      {
        const double p0 = bc.pressure(x);
        const LocalBasis bq = eval_basis(spaces.flux, c, bary);
        for (int i = 0; i < bq.count; ++i)
          rhs.f_q[bq.dofs[i]] -= w * delta * p0 * nu.dot(bq.value.col(i));
      }
    }
  }
  return rhs;
}

}  // namespace biot
