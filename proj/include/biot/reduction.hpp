// SPDX-License-Identifier: Apache-2.0

#ifndef BIOT_REDUCTION_HPP
#define BIOT_REDUCTION_HPP

#include <array>
#include <memory>

#include "biot/system.hpp"

namespace biot
{

/// Two-field system in (u, p) left after eliminating r and q from a lumped
/// four-field system:
///
///   [ A_uu - A_ur A_rr^-1 A_ru    A_up                      ]
///   [ A_pu                        A_pp - A_pq A_qq^-1 A_qp  ]
struct CondensedSystem
{
  std::shared_ptr<const MixedSpaces> spaces;
  MaterialParams params;
  SparseMatrix S_uu, A_up, A_pu, S_pp;
  Vector g_u, g_p;

  /// Couplings and load kept for the recovery of r and q.
  SparseMatrix A_ru, A_qp;
  Vector f_r, f_q;
  /// Couplings from r and q into the kept rows, and the lumped four-field
  /// matrix, for residual correction.
  SparseMatrix A_ur, A_pq;
  SparseMatrix reducible;
  std::shared_ptr<const BlockDiagonalSolver> rotation_solver;
  std::shared_ptr<const BlockDiagonalSolver> flux_solver;

  Index size() const { return S_uu.rows() + S_pp.rows(); }
  SparseMatrix matrix() const;
  Vector rhs() const;
  /// The matrix with the u columns negated, which is symmetric; the
  /// solution of the symmetrized system is (-u, p).
  SparseMatrix symmetrized() const;
  /// Condensed load (g_u, g_p) of a four-field load (f_r, f_u, f_q, f_p).
  Vector condense_rhs(const std::array<Vector, 4> &f) const;
};

/// Throws std::invalid_argument when \p sys is not lumped or the rotation
/// and flux DOFs do not split into disjoint vertex groups.
CondensedSystem condense(const BlockSystem &sys);

/// Back-substitution of r and q from the first and third block rows.
FieldState recover(const CondensedSystem &cs, const Vector &u, const Vector &p);

/// Same with an explicit four-field load (f_r, f_u, f_q, f_p). Throws
/// std::invalid_argument when its lengths do not match the spaces.
FieldState recover(const CondensedSystem &cs, const Vector &u, const Vector &p, const std::array<Vector, 4> &rhs);

}  // namespace biot

#endif  // BIOT_REDUCTION_HPP
