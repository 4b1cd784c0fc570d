// SPDX-License-Identifier: Apache-2.0

#include "biot/lumping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace biot
{

namespace
{

void require_quadrature_space(const FESpace &space)
{
  if (space.family() == Family::P0)
    throw std::invalid_argument("unsupported space: vertex quadrature applies to Lagrange1, RT0 and BDM1");
}

Vector2 point_value(const LocalBasis &b, const Vector &coeffs)
{
  Vector2 v = Vector2::Zero();
  for (int i = 0; i < b.count; ++i)
    v += coeffs[b.dofs[i]] * b.value.col(i);
  return v;
}

}  // namespace

double vertex_inner_product(const FESpace &space, const Vector &a, const Vector &b)
{
  require_quadrature_space(space);
  if (a.size() != space.dof_count() || b.size() != space.dof_count())
    throw std::invalid_argument("vertex_inner_product: coefficient vectors do not match the space");
  const Mesh &m = space.mesh();
  double sum = 0.0;
  for (Index c = 0; c < m.num_cells(); ++c)
  {
    const double w = m.cell_area(c) / 3.0;
    for (int k = 0; k < 3; ++k)
    {
      const LocalBasis basis = eval_basis(space, c, Vector3::Unit(k));
      sum += w * point_value(basis, a).dot(point_value(basis, b));
    }
  }
  return sum;
}

double vertex_inner_product(const FESpace &space, const Vector &coeffs, const CellwiseConstant &cw)
{
  require_quadrature_space(space);
  const Mesh &m = space.mesh();
  if (coeffs.size() != space.dof_count() || cw.cols() != m.num_cells())
    throw std::invalid_argument("vertex_inner_product: argument sizes do not match the space");
  double sum = 0.0;
  for (Index c = 0; c < m.num_cells(); ++c)
  {
    const double w = m.cell_area(c) / 3.0;
    Vector2 test = cw.col(c);
    if (!space.is_vector_valued())
      test.y() = 0.0;
    for (int k = 0; k < 3; ++k)
    {
      const LocalBasis basis = eval_basis(space, c, Vector3::Unit(k));
      sum += w * point_value(basis, coeffs).dot(test);
    }
  }
  return sum;
}

LumpedMass lumped_mass(const FESpace &space, const CellWeight &weight)
{
  require_quadrature_space(space);
  const Mesh &m = space.mesh();
  weight.validate(m.num_cells());
  if (weight.is_tensor() && !space.is_vector_valued())
    throw std::invalid_argument("tensor weight on a scalar space");

  LumpedMass lm;
  lm.vertex_dofs = space.vertex_dof_groups();
  lm.block_diagonal = space.vertex_groups_disjoint();
  lm.vertex_blocks.resize(m.num_vertices());
  for (Index v = 0; v < m.num_vertices(); ++v)
  {
    const auto n = static_cast<Index>(lm.vertex_dofs[v].size());
    lm.vertex_blocks[v] = Eigen::MatrixXd::Zero(n, n);
  }
  auto position = [&lm](Index v, Index dof) {
    const auto &g = lm.vertex_dofs[v];
    const auto it = std::find(g.begin(), g.end(), dof);
    return it == g.end() ? Index(-1) : static_cast<Index>(it - g.begin());
  };

  std::vector<Triplet> triplets;
  for (Index c = 0; c < m.num_cells(); ++c)
  {
    const double w = m.cell_area(c) / 3.0;
    const Matrix2 k = weight.at(c);
    for (int corner = 0; corner < 3; ++corner)
    {
      const Index v = m.cell(c)[corner];
      const LocalBasis b = eval_basis(space, c, Vector3::Unit(corner));
      std::array<Index, 6> pos{};
      for (int i = 0; i < b.count; ++i)
      {
        pos[i] = position(v, b.dofs[i]);
        if (pos[i] < 0 && b.value.col(i).squaredNorm() != 0.0)
          throw std::logic_error("basis function nonzero at a vertex outside its group");
      }
      for (int i = 0; i < b.count; ++i)
      {
        if (pos[i] < 0)
          continue;
        for (int j = i; j < b.count; ++j)
        {
          if (pos[j] < 0)
            continue;
          const double val = space.is_vector_valued() ? w * b.value.col(i).dot(k * b.value.col(j))
                                                      : w * k(0, 0) * b.value(0, i) * b.value(0, j);
          triplets.emplace_back(b.dofs[i], b.dofs[j], val);
          lm.vertex_blocks[v](pos[i], pos[j]) += val;
          if (j != i)
          {
            triplets.emplace_back(b.dofs[j], b.dofs[i], val);
            lm.vertex_blocks[v](pos[j], pos[i]) += val;
          }
        }
      }
    }
  }
  lm.matrix = SparseMatrix(space.dof_count(), space.dof_count());
  lm.matrix.setFromTriplets(triplets.begin(), triplets.end());
  lm.matrix.makeCompressed();
  return lm;
}

EquivalenceRatio norm_equivalence_ratio(const FESpace &space, int samples, std::uint64_t seed)
{
  require_quadrature_space(space);
  if (samples < 1)
    throw std::invalid_argument("norm_equivalence_ratio: samples must be >= 1");
  const SparseMatrix exact = mass_matrix(space);
  const SparseMatrix lumped = lumped_mass(space).matrix;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  EquivalenceRatio out{std::numeric_limits<double>::max(), 0.0, seed};
  Vector x(space.dof_count());
  for (int s = 0; s < samples; ++s)
  {
    for (Index i = 0; i < x.size(); ++i)
      x[i] = dist(rng);
    const double ratio = std::sqrt(x.dot(lumped * x) / x.dot(exact * x));
    out.min_ratio = std::min(out.min_ratio, ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
  }
  return out;
}

BlockDiagonalSolver::BlockDiagonalSolver(const SparseMatrix &matrix, std::vector<std::vector<Index>> groups)
  : size_(matrix.rows()), groups_(std::move(groups))
{
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("BlockDiagonalSolver: matrix must be square");
  std::vector<Index> owner(size_, -1);
  std::vector<Index> slot(size_, -1);
  for (Index g = 0; g < static_cast<Index>(groups_.size()); ++g)
  {
    for (Index k = 0; k < static_cast<Index>(groups_[g].size()); ++k)
    {
      const Index row = groups_[g][k];
      if (row < 0 || row >= size_ || owner[row] >= 0)
        throw std::invalid_argument("BlockDiagonalSolver: groups do not partition the rows");
      owner[row] = g;
      slot[row] = k;
    }
  }
  if (std::find(owner.begin(), owner.end(), Index(-1)) != owner.end())
    throw std::invalid_argument("BlockDiagonalSolver: groups do not cover all rows");

  std::vector<Eigen::MatrixXd> blocks(groups_.size());
  for (std::size_t g = 0; g < groups_.size(); ++g)
  {
    const auto n = static_cast<Index>(groups_[g].size());
    blocks[g] = Eigen::MatrixXd::Zero(n, n);
  }
  for (Index col = 0; col < matrix.outerSize(); ++col)
  {
    for (SparseMatrix::InnerIterator it(matrix, col); it; ++it)
    {
      if (it.value() == 0.0)
        continue;
      if (owner[it.row()] != owner[it.col()])
        throw std::invalid_argument("BlockDiagonalSolver: matrix couples DOFs of different vertex groups");
      blocks[owner[it.row()]](slot[it.row()], slot[it.col()]) = it.value();
    }
  }
  factors_.reserve(groups_.size());
  for (const auto &block : blocks)
  {
    factors_.emplace_back(block);
    if (factors_.back().info() != Eigen::Success)
      throw std::invalid_argument("BlockDiagonalSolver: a vertex block is not positive definite");
  }
}

Vector BlockDiagonalSolver::solve(const Vector &rhs) const
{
  if (rhs.size() != size_)
    throw std::invalid_argument("BlockDiagonalSolver: rhs size mismatch");
  Vector x(size_);
  Eigen::VectorXd local;
  for (std::size_t g = 0; g < groups_.size(); ++g)
  {
    const auto &rows = groups_[g];
    local.resize(static_cast<Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k)
      local[k] = rhs[rows[k]];
    local = factors_[g].solve(local);
    for (std::size_t k = 0; k < rows.size(); ++k)
      x[rows[k]] = local[k];
  }
  return x;
}

SparseMatrix BlockDiagonalSolver::inverse() const
{
  std::vector<Triplet> triplets;
  for (std::size_t g = 0; g < groups_.size(); ++g)
  {
    const auto &rows = groups_[g];
    const auto n = static_cast<Index>(rows.size());
    Eigen::MatrixXd inv = factors_[g].solve(Eigen::MatrixXd::Identity(n, n));
    // symmetric by construction
    inv = (0.5 * (inv + inv.transpose())).eval();
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        triplets.emplace_back(rows[i], rows[j], inv(i, j));
  }
  SparseMatrix m(size_, size_);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace biot
