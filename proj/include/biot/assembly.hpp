// SPDX-License-Identifier: Apache-2.0

#ifndef BIOT_ASSEMBLY_HPP
#define BIOT_ASSEMBLY_HPP

#include <vector>

#include <Eigen/Sparse>

#include "biot/spaces.hpp"

namespace biot
{

using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Cellwise-constant coefficient of a bilinear form: a positive scalar or a
/// symmetric positive definite 2x2 tensor per cell.
class CellWeight
{
public:
  static CellWeight uniform(double value);
  static CellWeight per_cell(std::vector<double> values);
  static CellWeight tensor(std::vector<Matrix2> values);

  bool is_tensor() const { return !tensors_.empty(); }
  /// Scalar weights as a multiple of the identity.
  Matrix2 at(Index c) const;
  double scalar_at(Index c) const;
  /// Throws std::invalid_argument for wrong length or a non-positive weight.
  void validate(Index num_cells) const;
  CellWeight scaled(double factor) const;

private:
  double uniform_ = 1.0;
  std::vector<double> scalars_;
  std::vector<Matrix2> tensors_;
};

/// Cellwise-constant test field: row 0 for scalars, both rows for vectors.
using CellwiseConstant = Eigen::Matrix<double, 2, Eigen::Dynamic>;

/// Exact weighted mass matrix <w phi_i, phi_j> by the degree-4 cell rule.
/// Symmetric bit for bit.
SparseMatrix mass_matrix(const FESpace &space, const CellWeight &weight = CellWeight::uniform(1.0));

/// Exact P1 stiffness <grad phi_i, grad phi_j>; equals the curl-curl form in 2D.
SparseMatrix stiffness_matrix(const FESpace &rotation);

/// Coefficient map of curl: Lagrange1 -> RT0. Column j holds the RT0 DOFs of
/// curl phi_j, which for an edge a -> b are +1 at a and -1 at b.
SparseMatrix curl_matrix(const FESpace &rotation, const FESpace &displacement);

/// Coefficient map of div: RT0/BDM1 -> P0 (cellwise divergence values).
SparseMatrix div_matrix(const FESpace &hdiv, const FESpace &pressure);

/// Exact <phi, c> for a discrete field phi and a cellwise-constant c.
double exact_inner_product(const FESpace &space, const Vector &coeffs, const CellwiseConstant &c);

/// Unweighted building blocks of the four-field system.
struct OperatorBlocks
{
  SparseMatrix M_r, M_u, M_q, M_p;
  SparseMatrix B_r, B_u, B_q;
  /// M_u B_r, M_p B_u, M_p B_q
  SparseMatrix Bh_r, Bh_u, Bh_q;
};

OperatorBlocks assemble_operators(const MixedSpaces &spaces);

/// Volume data of the problem. Empty callbacks mean zero.
struct ProblemData
{
  VectorField body_force;
  ScalarField fluid_source;
};

/// Load vectors of the four test spaces:
///   f_r =  <u0, nu x r~> on the displacement boundary
///   f_u =  <f_u, u~> - <sigma0, nu.u~> on the displacement boundary
///   f_q = -<p0, nu.(delta q~)> on the pressure boundary
///   f_p =  <f_p, p~>
struct RhsAssembly
{
  Vector f_r, f_u, f_q, f_p;

  Vector stacked() const;
};

/// Throws std::invalid_argument when a boundary part is non-empty but its
/// data provider is missing.
RhsAssembly assemble_rhs(const ProblemData &data, const MixedSpaces &spaces, const BoundaryConfig &bc,
                         double delta);

}  // namespace biot

#endif  // BIOT_ASSEMBLY_HPP
