// SPDX-License-Identifier: Apache-2.0

#ifndef BIOT_VERIFY_HPP
#define BIOT_VERIFY_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "biot/solver.hpp"

namespace biot
{

/// L2 norms of the seven quantities entering the weighted norm.
struct NormComponents
{
  double r = 0.0;
  double curl_r = 0.0;
  double u = 0.0;
  double div_u = 0.0;
  double q = 0.0;
  double div_q = 0.0;
  double p = 0.0;
};

/// sqrt( mu^-1 (|r|^2 + |curl r|^2) + mu |u|^2 + (2 mu + lambda) |div u|^2
///       + K^-1 |q|^2 + delta^2 / (eta + c0) |div q|^2 + (eta + c0) |p|^2 )
double combine_X(const NormComponents &c, const MaterialParams &params);

/// Component norms of a discrete state by cell quadrature.
NormComponents component_norms(const FieldState &state);

double weighted_norm_X(const FieldState &state, const MaterialParams &params);

/// L2 projection of u onto the range of curl on the constrained rotation
/// space. Without essential rotation DOFs the first vertex is pinned.
Vector curl_range_projection(const MixedSpaces &spaces, const Vector &u);

/// Energy norm with Pi_h u in place of u and |div(alpha u + delta q)|^2 /
/// (eta + c0) in place of the flux divergence term.
double energy_norm(const FieldState &state, const MaterialParams &params);

/// Point evaluation of an analytic field in extended precision, for the
/// finite-difference oracle.
using ScalarFieldLD = std::function<long double(long double, long double)>;
using VectorFieldLD = std::function<std::array<long double, 2>(long double, long double)>;

/// Exact solution with hand-derived forcing.
struct ManufacturedCase
{
  std::string name;
  MaterialParams params;

  VectorField u;
  ScalarField p;
  ScalarField r;
  VectorField curl_r;
  ScalarField div_u;
  VectorField q;
  ScalarField div_q;
  VectorField f_u;
  ScalarField f_p;
  /// alpha p - (2 mu + lambda) div u
  ScalarField sigma0;

  VectorFieldLD u_ld;
  ScalarFieldLD p_ld;

  /// Boundary assignment that is compatible with the exact fields, with the
  /// boundary data traced from them.
  BoundaryConfig boundary(const Mesh &mesh) const;
  ProblemData data() const;
};

/// "poly": u = (x^2 y, -x y^2), p = x(1-x) y(1-y).
/// "trig": u = (sin pi x sin pi y, cos pi x cos pi y), p = cos pi x cos pi y.
/// Throws std::invalid_argument for other names.
ManufacturedCase make_case(const std::string &name, const MaterialParams &params);

struct OracleResult
{
  /// Largest strong-form residual, relative to max(1, size of its terms).
  double max_residual = 0.0;
  Vector2 worst_point = Vector2::Zero();
  int points = 0;
};

/// Substitutes the exact fields into the strong form at random interior
/// points, differentiating with sixth-order central differences (step
/// 2e-3) in extended precision, and compares with the hand-derived r, q,
/// f_u and f_p.
OracleResult forcing_oracle(const ManufacturedCase &mc, int points, std::uint64_t seed);

/// Errors of a discrete state against the exact fields.
NormComponents error_components(const FieldState &state, const ManufacturedCase &mc);

enum class Method
{
  FourField,
  MultipointReduced
};

std::string to_string(Method method);

struct ErrorRow
{
  int level = 0;
  double h = 0.0;
  Index dofs = 0;
  NormComponents err;
  double err_X = 0.0;
  /// Observed order against the previous row; NaN on the first row.
  double rate_X = std::numeric_limits<double>::quiet_NaN();
};

struct ErrorTable
{
  std::vector<ErrorRow> rows;

  /// Order of a component between rows i - 1 and i.
  double rate(std::size_t i, double NormComponents::*component) const;
  double final_rate_X() const;
  double final_rate(double NormComponents::*component) const;
  /// level,h,err_r,err_curl_r,err_u,err_div_u,err_q,err_div_q,err_p,err_X,rate_X
  std::string to_csv() const;
};

enum class LinearSolver
{
  Direct,
  Minres
};

struct StudyOptions
{
  LinearSolver solver = LinearSolver::Direct;
  MinresOptions minres;
  /// Boundary assignment per mesh; the case's own assignment when empty.
  std::function<BoundaryConfig(const Mesh &)> boundary;
};

/// Discrete solution of a manufactured case on one mesh. \p report receives
/// the MINRES report when that solver is selected.
FieldState solve_case(std::shared_ptr<const Mesh> mesh, const ManufacturedCase &mc, int family, Method method,
                      const StudyOptions &options = {}, SolveReport *report = nullptr);

/// Solves on \p coarse and on levels - 1 uniform refinements. A solver
/// failure rethrows as SolverError after the rows computed so far are
/// stored in \p partial (when given).
ErrorTable convergence_study(const ManufacturedCase &mc, const Mesh &coarse, int levels, int family, Method method,
                             const StudyOptions &options = {}, ErrorTable *partial = nullptr);

/// Formats a double with 17 significant digits.
std::string format_double(double v);

}  // namespace biot

#endif  // BIOT_VERIFY_HPP
