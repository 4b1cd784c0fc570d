// SPDX-License-Identifier: Apache-2.0

#ifndef BIOT_SPACES_HPP
#define BIOT_SPACES_HPP

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "biot/mesh.hpp"

namespace biot
{

using Vector = Eigen::VectorXd;

/// Lowest-order element families.
///
///  Lagrange1  continuous P1, one DOF per vertex (rotation space in 2D)
///  RT0        one DOF per edge: total flux through the edge along its
///             global normal
///  BDM1       two DOFs per edge, one per endpoint. Basis function (e, v)
///             has normal trace (2/|e|) lambda_v on e and vanishes at every
///             other mesh vertex; the pair sums to the RT0 flux DOF.
///  P0         one DOF per cell: the cell value
enum class Family
{
  Lagrange1,
  RT0,
  BDM1,
  P0
};

/// Which field of the four-field system a space discretizes. Determines the
/// essential-DOF mask.
enum class FieldRole
{
  Rotation,
  Displacement,
  Flux,
  Pressure
};

std::string to_string(Family family);

/// Basis functions of one cell, with global DOF ids and orientation signs
/// applied. Scalar families store their values in row 0 of value.
struct LocalBasis
{
  int count = 0;
  std::array<Index, 6> dofs{};
  Eigen::Matrix<double, 2, 6> value = Eigen::Matrix<double, 2, 6>::Zero();
  /// Lagrange1 only: curl r = (-d2 r, d1 r), constant on the cell.
  Eigen::Matrix<double, 2, 6> curl = Eigen::Matrix<double, 2, 6>::Zero();
  /// RT0/BDM1 only: constant on the cell.
  Eigen::Matrix<double, 1, 6> div = Eigen::Matrix<double, 1, 6>::Zero();
};

class FESpace
{
public:
  FESpace(std::shared_ptr<const Mesh> mesh, Family family, FieldRole role, std::vector<char> essential);

  Family family() const { return family_; }
  FieldRole role() const { return role_; }
  const Mesh &mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh> &mesh_ptr() const { return mesh_; }
  Index dof_count() const { return static_cast<Index>(essential_.size()); }
  bool is_vector_valued() const { return family_ == Family::RT0 || family_ == Family::BDM1; }

  /// 1 marks a DOF carrying an essential condition.
  const std::vector<char> &essential() const { return essential_; }
  Index num_essential() const;

  /// DOFs grouped by the mesh vertex at which the basis function is nonzero.
  /// For Lagrange1 and BDM1 the groups partition the DOFs; for RT0 every DOF
  /// appears in the groups of both its edge endpoints; P0 has no groups.
  std::vector<std::vector<Index>> vertex_dof_groups() const;
  bool vertex_groups_disjoint() const { return family_ == Family::Lagrange1 || family_ == Family::BDM1; }

private:
  std::shared_ptr<const Mesh> mesh_;
  Family family_;
  FieldRole role_;
  std::vector<char> essential_;
};

/// Builds the space for \p role. Essential DOFs: Lagrange1 rotation on
/// vertices of rotation edges; RT0 displacement on rotation edges; RT0/BDM1
/// flux on flux edges.
FESpace build_space(std::shared_ptr<const Mesh> mesh, Family family, FieldRole role, const BoundaryConfig &bc);

/// Number of DOFs of \p family on \p mesh without building a space.
Index dof_count(const Mesh &mesh, Family family);

/// All basis functions supported on cell \p c, evaluated at barycentric
/// point \p bary. Throws std::out_of_range for a bad cell id.
LocalBasis eval_basis(const FESpace &space, Index c, const Vector3 &bary);

using ScalarField = std::function<double(const Vector2 &)>;
using VectorField = std::function<Vector2(const Vector2 &)>;

/// Canonical interpolants: vertex values (Lagrange1), edge flux (RT0),
/// endpoint values of the L2-projected normal trace (BDM1), cell mean (P0).
Vector interpolate(const FESpace &space, const ScalarField &f);
Vector interpolate(const FESpace &space, const VectorField &f);

double eval_scalar(const FESpace &space, const Vector &coeffs, Index c, const Vector3 &bary);
Vector2 eval_vector(const FESpace &space, const Vector &coeffs, Index c, const Vector3 &bary);
/// Lagrange1 only.
Vector2 eval_curl(const FESpace &space, const Vector &coeffs, Index c, const Vector3 &bary);
/// RT0/BDM1 only.
double eval_div(const FESpace &space, const Vector &coeffs, Index c, const Vector3 &bary);

/// The four spaces of one discretization family:
///  family 1: Lagrange1 x RT0 x RT0  x P0
///  family 2: Lagrange1 x RT0 x BDM1 x P0
struct MixedSpaces
{
  std::shared_ptr<const Mesh> mesh;
  int family;
  FESpace rotation;
  FESpace displacement;
  FESpace flux;
  FESpace pressure;

  const FESpace &operator[](int field) const;
  std::array<Index, 5> offsets() const;
};

std::shared_ptr<const MixedSpaces> build_mixed_spaces(std::shared_ptr<const Mesh> mesh, int family,
                                                      const BoundaryConfig &bc);

/// Coefficients (r, u, q, p) bound to their spaces.
struct FieldState
{
  std::shared_ptr<const MixedSpaces> spaces;
  Vector r;
  Vector u;
  Vector q;
  Vector p;

  static FieldState zero(std::shared_ptr<const MixedSpaces> spaces);
  /// Splits a stacked (r, u, q, p) vector.
  static FieldState from_stacked(std::shared_ptr<const MixedSpaces> spaces, const Vector &x);
  Vector stacked() const;
  /// Throws std::invalid_argument when a vector length does not match its space.
  void check() const;
};

}  // namespace biot

#endif  // BIOT_SPACES_HPP
