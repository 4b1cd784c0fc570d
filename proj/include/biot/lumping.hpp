// SPDX-License-Identifier: Apache-2.0

#ifndef BIOT_LUMPING_HPP
#define BIOT_LUMPING_HPP

#include <cstdint>
#include <vector>

#include "biot/assembly.hpp"

namespace biot
{

/// Vertex quadrature: each cell contributes |w|/3 times the sum over its
/// three vertices of the pointwise product of the cell restrictions.
double vertex_inner_product(const FESpace &space, const Vector &a, const Vector &b);

/// Vertex quadrature of <phi, c> for a cellwise-constant c.
double vertex_inner_product(const FESpace &space, const Vector &coeffs, const CellwiseConstant &c);

/// Mass matrix of the vertex quadrature, <w phi_i, phi_j>_h.
struct LumpedMass
{
  SparseMatrix matrix;
  /// DOFs nonzero at each vertex (see FESpace::vertex_dof_groups).
  std::vector<std::vector<Index>> vertex_dofs;
  /// Contribution of the quadrature points at each vertex, on vertex_dofs.
  std::vector<Eigen::MatrixXd> vertex_blocks;
  /// true when vertex_dofs partition the DOFs, so matrix is block diagonal.
  bool block_diagonal = false;
};

/// Supported on Lagrange1, RT0 and BDM1. Throws std::invalid_argument for P0
/// or a weight that is not positive (definite).
LumpedMass lumped_mass(const FESpace &space, const CellWeight &weight = CellWeight::uniform(1.0));

struct EquivalenceRatio
{
  double min_ratio;
  double max_ratio;
  std::uint64_t seed;
};

/// Extremes of ||phi||_h / ||phi|| over random coefficient vectors drawn
/// with a fixed seed. Throws std::invalid_argument("unsupported space") for P0.
EquivalenceRatio norm_equivalence_ratio(const FESpace &space, int samples, std::uint64_t seed = 20220517);

/// Inverse of a symmetric positive definite matrix that is block diagonal
/// with respect to a partition of its rows, applied through one dense
/// Cholesky factor per block.
class BlockDiagonalSolver
{
public:
  /// Throws std::invalid_argument when the groups do not partition the
  /// rows, when an entry couples two groups, or when a block is not SPD.
  BlockDiagonalSolver(const SparseMatrix &matrix, std::vector<std::vector<Index>> groups);

  Index size() const { return size_; }
  Vector solve(const Vector &rhs) const;
  SparseMatrix inverse() const;

private:
  Index size_ = 0;
  std::vector<std::vector<Index>> groups_;
  std::vector<Eigen::LLT<Eigen::MatrixXd>> factors_;
};

}  // namespace biot

#endif  // BIOT_LUMPING_HPP
