// SPDX-License-Identifier: Apache-2.0

#ifndef BIOT_SYSTEM_HPP
#define BIOT_SYSTEM_HPP

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "biot/assembly.hpp"
#include "biot/lumping.hpp"

namespace biot
{

/// Material parameters of one time step.
struct MaterialParams
{
  double mu = 1.0;
  double lambda = 1.0;
  double alpha = 1.0;
  double c0 = 0.0;
  double K = 1.0;
  double dt = 1.0;
  /// Optional cellwise conductivity tensors; only the lumped path accepts them.
  std::vector<Matrix2> K_tensor;

  double delta() const;
  /// alpha^2 / (2 mu + lambda) + delta^2 K, with K the largest tensor
  /// eigenvalue when K_tensor is set.
  double eta() const;
  /// Throws std::invalid_argument naming the first offending parameter.
  void validate() const;
};

/// Four-field operator in the unknown order (r, u, q, p):
///
///   [ A_rr  -Bh_r^T                 ]
///   [ Bh_r   A_uu           -a Bh_u^T ]
///   [               A_qq   -d Bh_q^T ]
///   [        a Bh_u  d Bh_q   c0 M_p  ]
///
/// Essential DOFs are eliminated: their rows and columns are zero except for
/// a unit diagonal, and their right-hand side entries hold the boundary
/// values interpolated from the BoundaryConfig data (zero when absent).
struct BlockSystem
{
  std::shared_ptr<const MixedSpaces> spaces;
  MaterialParams params;
  bool lumped = false;
  OperatorBlocks ops;
  std::array<std::array<SparseMatrix, 4>, 4> blocks;
  std::array<Vector, 4> rhs;
  /// 1 marks an essential DOF, stacked over the four fields.
  std::vector<char> essential;
  /// Vertex-quadrature masses of the rotation and flux spaces (lumped only).
  std::optional<LumpedMass> lumped_r;
  std::optional<LumpedMass> lumped_q;

  std::array<Index, 5> offsets() const { return spaces->offsets(); }
  Index size() const { return offsets()[4]; }
  SparseMatrix matrix() const;
  Vector rhs_vector() const;
};

/// Zeroes the rows and columns of essential DOFs of a diagonal block and
/// puts ones on the diagonal.
void eliminate_diagonal(SparseMatrix &block, const std::vector<char> &essential);
/// Zeroes rows flagged in \p rows and columns flagged in \p cols.
void eliminate_coupling(SparseMatrix &block, const std::vector<char> &rows, const std::vector<char> &cols);

/// (A + A^T) / 2, symmetric bit for bit.
SparseMatrix symmetric_part(const SparseMatrix &a);

/// Throws std::invalid_argument for a tensor conductivity with lumped = false.
BlockSystem assemble_biot(std::shared_ptr<const Mesh> mesh, int family, const MaterialParams &params,
                          const BoundaryConfig &bc, const ProblemData &data, bool lumped);

/// Assembles on prebuilt spaces.
BlockSystem assemble_biot(std::shared_ptr<const MixedSpaces> spaces, const MaterialParams &params,
                          const BoundaryConfig &bc, const ProblemData &data, bool lumped);

struct Symmetrized
{
  SparseMatrix matrix;
  /// diag(+I_r, -I_u, -I_q, +I_p)
  Vector signs;
};

/// A S with S flipping the signs of the u and q columns; solve (A S) y = f
/// and recover x = S y.
Symmetrized symmetrize(const BlockSystem &sys);

enum class TimeScheme
{
  BackwardEuler,
  CrankNicolson
};

class SolverError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Linear solver used by the time loop: (system, stacked rhs) -> stacked x.
using SystemSolver = std::function<Vector(const BlockSystem &, const Vector &)>;

/// Sources of the time loop. fluid_source is the unscaled rate per unit time.
struct TimeData
{
  VectorField body_force;
  ScalarField fluid_source;
};

/// Steps the semi-discrete system from (u0, p0). Returns the states after
/// each step, flux scaled by delta. SolverError carries the step index.
std::vector<FieldState> time_loop(std::shared_ptr<const MixedSpaces> spaces, const Vector &u0, const Vector &p0,
                                  const MaterialParams &params, const BoundaryConfig &bc, const TimeData &data,
                                  int n_steps, bool lumped, TimeScheme scheme, const SystemSolver &solve);

}  // namespace biot

#endif  // BIOT_SYSTEM_HPP
