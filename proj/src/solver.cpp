// SPDX-License-Identifier: Apache-2.0

#include "biot/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

namespace biot
{

namespace
{

/// b - A x accumulated in extended precision.
Vector residual_ld(const SparseMatrix &a, const Vector &x, const Vector &b)
{
  std::vector<long double> r(static_cast<std::size_t>(b.size()));
  for (Index i = 0; i < b.size(); ++i)
    r[static_cast<std::size_t>(i)] = b[i];
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it)
      r[static_cast<std::size_t>(it.row())] -= static_cast<long double>(it.value()) * x[it.col()];
  Vector out(b.size());
  for (Index i = 0; i < b.size(); ++i)
    out[i] = static_cast<double>(r[static_cast<std::size_t>(i)]);
  return out;
}

/// Power-of-two row and column scaling that brings the largest entry of
/// every row and column close to one.
std::pair<Vector, Vector> equilibrate(const SparseMatrix &a)
{
  auto pow2 = [](double v) { return v > 0.0 ? std::ldexp(1.0, -std::ilogb(v)) : 1.0; };
  Vector row = Vector::Zero(a.rows());
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it)
      row[it.row()] = std::max(row[it.row()], std::abs(it.value()));
  for (Index i = 0; i < row.size(); ++i)
    row[i] = pow2(row[i]);
  Vector col = Vector::Zero(a.cols());
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it)
      col[it.col()] = std::max(col[it.col()], std::abs(row[it.row()] * it.value()));
  for (Index j = 0; j < col.size(); ++j)
    col[j] = pow2(col[j]);
  return {row, col};
}

/// Equilibrated sparse LU, refined with extended-precision residuals.
class DirectFactor
{
public:
  explicit DirectFactor(const SparseMatrix &matrix) : matrix_(matrix)
  {
    if (matrix.rows() != matrix.cols())
      throw std::invalid_argument("direct_solve: dimension mismatch");
    std::tie(row_, col_) = equilibrate(matrix);
    scaled_ = row_.asDiagonal() * matrix * col_.asDiagonal();
    scaled_.makeCompressed();
    lu_.analyzePattern(scaled_);
    lu_.factorize(scaled_);
    if (lu_.info() != Eigen::Success)
      throw SolverError("singular matrix: " + lu_.lastErrorMessage());
  }

  Vector solve(const Vector &rhs) const
  {
    if (rhs.size() != matrix_.rows())
      throw std::invalid_argument("direct_solve: dimension mismatch");
    const Vector b = row_.asDiagonal() * rhs;
    Vector y = lu_.solve(b);
    for (int it = 0; it < 5 && y.allFinite(); ++it)
    {
      const Vector dy = lu_.solve(residual_ld(scaled_, y, b));
      if (!dy.allFinite())
        break;
      y += dy;
      if (dy.norm() <= 1e-17 * y.norm())
        break;
    }
    Vector x = col_.asDiagonal() * y;
    const double bnorm = rhs.norm();
    const double res = residual_ld(matrix_, x, rhs).norm();
    if (!x.allFinite() || !(res <= 1e-6 * std::max(bnorm, std::numeric_limits<double>::min())))
    {
      Index where = 0;
      if (x.allFinite())
        x.cwiseAbs().maxCoeff(&where);
      std::ostringstream msg;
      msg << "numerically singular matrix (relative residual " << res / bnorm
          << "); null vector concentrates at DOF " << where;
      throw SolverError(msg.str());
    }
    return x;
  }

private:
  const SparseMatrix &matrix_;
  Vector row_, col_;
  SparseMatrix scaled_;
  mutable Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
};

}  // namespace

Vector direct_solve(const SparseMatrix &matrix, const Vector &rhs)
{
  if (matrix.rows() != matrix.cols() || matrix.rows() != rhs.size())
    throw std::invalid_argument("direct_solve: dimension mismatch");
  if (matrix.rows() == 0)
    return Vector();
  return DirectFactor(matrix).solve(rhs);
}

LinearOperator identity_operator()
{
  return [](const Vector &v) { return v; };
}

namespace
{

double symmetry_drift(const LinearOperator &A, Index n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector x(n), y(n);
  for (Index i = 0; i < n; ++i)
    x[i] = dist(rng);
  for (Index i = 0; i < n; ++i)
    y[i] = dist(rng);
  const Vector ax = A(x);
  const Vector ay = A(y);
  const double scale = ax.norm() * y.norm() + ay.norm() * x.norm();
  if (scale == 0.0)
    return 0.0;
  return std::abs(y.dot(ax) - x.dot(ay)) / scale;
}

void fill_ritz(SolveReport &report, const std::vector<double> &alphas, const std::vector<double> &betas)
{
  const auto k = static_cast<Index>(alphas.size());
  if (k == 0)
    return;
  Vector diag = Eigen::Map<const Vector>(alphas.data(), k);
  Vector sub(std::max<Index>(k - 1, 0));
  for (Index i = 0; i + 1 < k; ++i)
    sub[i] = betas[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success)
    return;
  const Vector &theta = eig.eigenvalues();
  report.ritz_low = theta.minCoeff();
  report.ritz_high = theta.maxCoeff();
  report.ritz_abs_min = theta.cwiseAbs().minCoeff();
  report.ritz_abs_max = theta.cwiseAbs().maxCoeff();
  report.condition_estimate =
      report.ritz_abs_min > 0.0 ? report.ritz_abs_max / report.ritz_abs_min : std::numeric_limits<double>::infinity();
}

}  // namespace

MinresResult minres(const LinearOperator &A, const LinearOperator &P, const Vector &b, const MinresOptions &options)
{
  const auto start = std::chrono::steady_clock::now();
  const Index n = b.size();
  MinresResult out;
  out.x = Vector::Zero(n);
  SolveReport &rep = out.report;

  if (options.check_symmetry)
  {
    const double drift = symmetry_drift(A, n, options.probe_seed);
    if (drift > 1e-8)
    {
      std::ostringstream msg;
      msg << "minres: operator is not symmetric (relative drift " << drift << ")";
      throw SolverError(msg.str());
    }
  }

  Vector r1 = b;
  Vector y = P(r1);
  double beta1 = r1.dot(y);
  if (beta1 < 0.0)
    throw SolverError("minres: preconditioner is not positive definite");
  beta1 = std::sqrt(beta1);
  if (beta1 == 0.0)
  {
    rep.converged = true;
    rep.message = "zero right-hand side";
    return out;
  }

  const double eps = std::numeric_limits<double>::epsilon();
  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1;
  double cs = -1.0, sn = 0.0;
  Vector w = Vector::Zero(n), w2 = Vector::Zero(n), r2 = r1, v(n);
  std::vector<double> alphas, betas;

  for (int itn = 1; itn <= options.max_iter; ++itn)
  {
    v = y / beta;
    y = A(v);
    if (itn >= 2)
      y -= (beta / oldb) * r1;
    const double alfa = v.dot(y);
    y -= (alfa / beta) * r2;
    r1.swap(r2);
    r2 = y;
    y = P(r2);
    oldb = beta;
    double b2 = r2.dot(y);
    if (b2 < 0.0)
      throw SolverError("minres: preconditioner is not positive definite");
    beta = std::sqrt(b2);
    alphas.push_back(alfa);
    betas.push_back(beta);

    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    const double gamma = std::max(std::hypot(gbar, beta), eps);
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    const Vector w1 = w2;
    w2 = w;
    w = (v - oldeps * w1 - delta * w2) / gamma;
    out.x += phi * w;

    rep.iterations = itn;
    rep.relative_residual = phibar / beta1;
    if (rep.relative_residual <= options.tol)
    {
      rep.converged = true;
      break;
    }
    if (beta == 0.0)
    {
      rep.converged = rep.relative_residual <= options.tol;
      rep.message = "Krylov space exhausted";
      break;
    }
  }
  if (!rep.converged && rep.message.empty())
    rep.message = "maximum number of iterations reached";
  fill_ritz(rep, alphas, betas);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

MinresResult minres(const SparseMatrix &A, const LinearOperator &P, const Vector &b, const MinresOptions &options)
{
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw std::invalid_argument("minres: dimension mismatch");
  return minres([&A](const Vector &x) { return Vector(A * x); }, P, b, options);
}

BlockPreconditioner::BlockPreconditioner(std::vector<SparseMatrix> inverse_blocks)
  : inverse_(std::move(inverse_blocks))
{
  offsets_.push_back(0);
  for (std::size_t i = 0; i < inverse_.size(); ++i)
  {
    auto factor = std::make_shared<Factor>(inverse_[i]);
    if (factor->info() != Eigen::Success)
      throw SolverError("preconditioner block " + std::to_string(i) + " is not positive definite");
    factors_.push_back(std::move(factor));
    offsets_.push_back(offsets_.back() + inverse_[i].rows());
  }
}

SparseMatrix BlockPreconditioner::inverse_matrix() const
{
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < inverse_.size(); ++i)
    for (Index k = 0; k < inverse_[i].outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(inverse_[i], k); it; ++it)
        t.emplace_back(offsets_[i] + it.row(), offsets_[i] + it.col(), it.value());
  SparseMatrix m(size(), size());
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

Vector BlockPreconditioner::apply(const Vector &f) const
{
  if (f.size() != size())
    throw std::invalid_argument("preconditioner: size mismatch");
  Vector x(f.size());
  for (std::size_t i = 0; i < factors_.size(); ++i)
  {
    const Index n = offsets_[i + 1] - offsets_[i];
    x.segment(offsets_[i], n) = factors_[i]->solve(Vector(f.segment(offsets_[i], n)));
  }
  return x;
}

LinearOperator BlockPreconditioner::as_operator() const
{
  return [this](const Vector &f) { return apply(f); };
}

namespace
{

SparseMatrix div_div(const FESpace &hdiv, const FESpace &pressure, const SparseMatrix &M_p)
{
  const SparseMatrix B = div_matrix(hdiv, pressure);
  return symmetric_part(SparseMatrix(B.transpose() * M_p * B));
}

SparseMatrix with_essential(SparseMatrix m, const FESpace &space)
{
  eliminate_diagonal(m, space.essential());
  return m;
}

SparseMatrix rotation_block(const MixedSpaces &s, const MaterialParams &p)
{
  const SparseMatrix m = mass_matrix(s.rotation) + stiffness_matrix(s.rotation);
  return with_essential((1.0 / p.mu) * symmetric_part(m), s.rotation);
}

SparseMatrix displacement_block(const MixedSpaces &s, const MaterialParams &p, const SparseMatrix &M_p)
{
  const SparseMatrix m = p.mu * mass_matrix(s.displacement) +
                         (2.0 * p.mu + p.lambda) * div_div(s.displacement, s.pressure, M_p);
  return with_essential(m, s.displacement);
}

SparseMatrix flux_block(const MixedSpaces &s, const MaterialParams &p, const SparseMatrix &M_p)
{
  SparseMatrix mass;
  if (p.K_tensor.empty())
    mass = (1.0 / p.K) * mass_matrix(s.flux);
  else
  {
    std::vector<Matrix2> inv(p.K_tensor.size());
    for (std::size_t c = 0; c < inv.size(); ++c)
    {
      inv[c] = p.K_tensor[c].inverse();
      inv[c](1, 0) = inv[c](0, 1);
    }
    mass = lumped_mass(s.flux, CellWeight::tensor(std::move(inv))).matrix;
  }
  const SparseMatrix m = mass + (p.dt / (p.eta() + p.c0)) * div_div(s.flux, s.pressure, M_p);
  return with_essential(m, s.flux);
}

}  // namespace

BlockPreconditioner build_preconditioner(const MixedSpaces &spaces, const MaterialParams &params)
{
  params.validate();
  const SparseMatrix M_p = mass_matrix(spaces.pressure);
  std::vector<SparseMatrix> blocks;
  blocks.push_back(rotation_block(spaces, params));
  blocks.push_back(displacement_block(spaces, params, M_p));
  blocks.push_back(flux_block(spaces, params, M_p));
  blocks.push_back((params.eta() + params.c0) * M_p);
  return BlockPreconditioner(std::move(blocks));
}

BlockPreconditioner build_condensed_preconditioner(const MixedSpaces &spaces, const MaterialParams &params)
{
  params.validate();
  const SparseMatrix M_p = mass_matrix(spaces.pressure);
  std::vector<SparseMatrix> blocks;
  blocks.push_back(displacement_block(spaces, params, M_p));
  blocks.push_back((params.eta() + params.c0) * M_p);
  return BlockPreconditioner(std::move(blocks));
}

MinresResult solve_minres(const BlockSystem &sys, const MinresOptions &options)
{
  const Symmetrized s = symmetrize(sys);
  const BlockPreconditioner P = build_preconditioner(*sys.spaces, sys.params);
  MinresResult res = minres(s.matrix, P.as_operator(), sys.rhs_vector(), options);
  res.x = s.signs.cwiseProduct(res.x);
  return res;
}

MinresResult solve_minres(const CondensedSystem &cs, const MinresOptions &options)
{
  const SparseMatrix a = cs.symmetrized();
  const BlockPreconditioner P = build_condensed_preconditioner(*cs.spaces, cs.params);
  MinresResult res = minres(a, P.as_operator(), cs.rhs(), options);
  res.x.head(cs.S_uu.rows()) *= -1.0;
  return res;
}

FieldState solve_direct(const BlockSystem &sys)
{
  return FieldState::from_stacked(sys.spaces, direct_solve(sys.matrix(), sys.rhs_vector()));
}

FieldState solve_direct(const CondensedSystem &cs)
{
  const SparseMatrix a = cs.matrix();
  const Index nu = cs.S_uu.rows();
  if (a.rows() == 0)
    return recover(cs, Vector(), Vector());
  const DirectFactor lu(a);
  Vector up = lu.solve(cs.rhs());
  FieldState x = recover(cs, up.head(nu), up.tail(up.size() - nu));

  // correction against the four-field lumped system
  const auto off = cs.spaces->offsets();
  Vector f(off[4]);
  f.segment(off[0], off[1] - off[0]) = cs.f_r;
  f.segment(off[1], off[2] - off[1]) = cs.g_u + cs.A_ur * cs.rotation_solver->solve(cs.f_r);
  f.segment(off[2], off[3] - off[2]) = cs.f_q;
  f.segment(off[3], off[4] - off[3]) = cs.g_p + cs.A_pq * cs.flux_solver->solve(cs.f_q);
  for (int it = 0; it < 3; ++it)
  {
    const Vector res = residual_ld(cs.reducible, x.stacked(), f);
    if (!(res.norm() > 1e-16 * f.norm()))
      break;
    std::array<Vector, 4> parts;
    for (int i = 0; i < 4; ++i)
      parts[i] = res.segment(off[i], off[i + 1] - off[i]);
    const Vector d = lu.solve(cs.condense_rhs(parts));
    const FieldState dx = recover(cs, d.head(nu), d.tail(d.size() - nu), parts);
    x.r += dx.r;
    x.u += dx.u;
    x.q += dx.q;
    x.p += dx.p;
  }
  return x;
}

std::vector<MaterialParams> default_sweep_grid()
{
  std::vector<MaterialParams> grid;
  for (double mu : {1e-6, 1.0, 1e6})
    for (double K : {1e-6, 1.0, 1e6})
      for (double lambda : {0.0, 1.0, 1e6})
        for (double c0 : {0.0, 1.0})
          for (double alpha : {0.0, 0.5, 1.0})
            for (double dt : {1e-6, 1.0})
            {
              MaterialParams p;
              p.mu = mu;
              p.K = K;
              p.lambda = lambda;
              p.c0 = c0;
              p.alpha = alpha;
              p.dt = dt;
              grid.push_back(p);
            }
  return grid;
}

BoundaryConfig sweep_boundary(const Mesh &mesh)
{
  BoundaryConfig bc;
  for (const auto &tag : mesh.boundary_tag_set())
  {
    const bool side = tag == "left" || tag == "bottom";
    bc.mechanics[tag] = side ? MechanicsBoundary::Rotation : MechanicsBoundary::Displacement;
    bc.flow[tag] = side ? FlowBoundary::Flux : FlowBoundary::Pressure;
  }
  bc.displacement = [](const Vector2 &) { return Vector2::Zero().eval(); };
  bc.normal_stress = [](const Vector2 &) { return 0.0; };
  bc.pressure = [](const Vector2 &) { return 0.0; };
  return bc;
}

int worker_threads(int requested, std::size_t jobs)
{
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char *env = std::getenv("BIOT_MRFEM_THREADS"))
  {
    const int cap = std::atoi(env);
    if (cap > 0)
      n = std::min(n, cap);
  }
  n = std::max(n, 1);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), std::max<std::size_t>(jobs, 1)));
}

std::vector<SweepRow> parameter_sweep(const std::vector<MaterialParams> &grid, const std::vector<int> &levels,
                                      const SweepOptions &options)
{
  struct Level
  {
    int n;
    BoundaryConfig bc;
    std::shared_ptr<const MixedSpaces> spaces;
  };
  std::vector<Level> lv;
  for (int n : levels)
  {
    auto mesh = std::make_shared<const Mesh>(unit_square_mesh(n));
    BoundaryConfig bc = sweep_boundary(*mesh);
    auto spaces = build_mixed_spaces(mesh, options.family, bc);
    lv.push_back({n, std::move(bc), std::move(spaces)});
  }

  const std::size_t total = lv.size() * grid.size();
  std::vector<SweepRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < total; i = next++)
    {
      const Level &level = lv[i / grid.size()];
      SweepRow &row = rows[i];
      row.params = grid[i % grid.size()];
      row.n = level.n;
      try
      {
        const BlockSystem sys = assemble_biot(level.spaces, row.params, level.bc, ProblemData{}, options.lumped);
        row.dofs = sys.size();
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(i)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        Vector b(sys.size());
        for (Index k = 0; k < b.size(); ++k)
          b[k] = sys.essential[k] ? 0.0 : dist(rng);
        const Symmetrized s = symmetrize(sys);
        const BlockPreconditioner P = build_preconditioner(*level.spaces, row.params);
        MinresOptions mo;
        mo.tol = options.tol;
        mo.max_iter = options.max_iter;
        row.report = minres(s.matrix, P.as_operator(), b, mo).report;
        row.ok = row.report.converged;
        if (!row.ok)
          row.error = row.report.message;
      }
      catch (const std::exception &e)
      {
        row.ok = false;
        row.error = e.what();
      }
    }
  };
  const int nthreads = worker_threads(options.threads, total);
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();
  return rows;
}

}  // namespace biot
