// SPDX-License-Identifier: Apache-2.0

#include "biot/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "biot/quadrature_rules.hpp"

namespace biot
{

double combine_X(const NormComponents &c, const MaterialParams &p)
{
  const double eta_c0 = p.eta() + p.c0;
  const double sq = (c.r * c.r + c.curl_r * c.curl_r) / p.mu + p.mu * c.u * c.u +
                    (2.0 * p.mu + p.lambda) * c.div_u * c.div_u + c.q * c.q / p.K +
                    p.dt / eta_c0 * c.div_q * c.div_q + eta_c0 * c.p * c.p;
  return std::sqrt(sq);
}

namespace
{

NormComponents integrate_errors(const FieldState &s, const ManufacturedCase *mc)
{
  s.check();
  const MixedSpaces &sp = *s.spaces;
  const Mesh &m = *sp.mesh;
  const auto pts = TriangleRule4<>::points();
  const auto wts = TriangleRule4<>::weights();
  std::array<double, 7> sum{};
  for (Index c = 0; c < m.num_cells(); ++c)
  {
    const Triangle t = triangle(m, c);
    for (int k = 0; k < TriangleRule4<>::size; ++k)
    {
      const double w = wts[k] * t.area;
      const LocalBasis br = eval_basis(sp.rotation, c, pts[k]);
      const LocalBasis bu = eval_basis(sp.displacement, c, pts[k]);
      const LocalBasis bq = eval_basis(sp.flux, c, pts[k]);
      double r = 0.0, div_u = 0.0, div_q = 0.0;
      Vector2 curl_r = Vector2::Zero(), u = Vector2::Zero(), q = Vector2::Zero();
      for (int i = 0; i < br.count; ++i)
      {
        r += s.r[br.dofs[i]] * br.value(0, i);
        curl_r += s.r[br.dofs[i]] * br.curl.col(i);
      }
      for (int i = 0; i < bu.count; ++i)
      {
        u += s.u[bu.dofs[i]] * bu.value.col(i);
        div_u += s.u[bu.dofs[i]] * bu.div(i);
      }
      for (int i = 0; i < bq.count; ++i)
      {
        q += s.q[bq.dofs[i]] * bq.value.col(i);
        div_q += s.q[bq.dofs[i]] * bq.div(i);
      }
      double p = s.p[c];
      if (mc)
      {
        const Vector2 x = t.point(pts[k]);
        r -= mc->r(x);
        curl_r -= mc->curl_r(x);
        u -= mc->u(x);
        div_u -= mc->div_u(x);
        q -= mc->q(x);
        div_q -= mc->div_q(x);
        p -= mc->p(x);
      }
      sum[0] += w * r * r;
      sum[1] += w * curl_r.squaredNorm();
      sum[2] += w * u.squaredNorm();
      sum[3] += w * div_u * div_u;
      sum[4] += w * q.squaredNorm();
      sum[5] += w * div_q * div_q;
      sum[6] += w * p * p;
    }
  }
  return {std::sqrt(sum[0]), std::sqrt(sum[1]), std::sqrt(sum[2]), std::sqrt(sum[3]),
          std::sqrt(sum[4]), std::sqrt(sum[5]), std::sqrt(sum[6])};
}

}  // namespace

NormComponents component_norms(const FieldState &state) { return integrate_errors(state, nullptr); }

NormComponents error_components(const FieldState &state, const ManufacturedCase &mc)
{
  return integrate_errors(state, &mc);
}

double weighted_norm_X(const FieldState &state, const MaterialParams &params)
{
  return combine_X(component_norms(state), params);
}

Vector curl_range_projection(const MixedSpaces &spaces, const Vector &u)
{
  if (u.size() != spaces.displacement.dof_count())
    throw std::invalid_argument("curl_range_projection: u does not match the displacement space");
  const SparseMatrix M_u = mass_matrix(spaces.displacement);
  const SparseMatrix B_r = curl_matrix(spaces.rotation, spaces.displacement);
  std::vector<char> fixed = spaces.rotation.essential();
  if (spaces.rotation.num_essential() == 0)
    fixed[0] = 1;
  SparseMatrix A = stiffness_matrix(spaces.rotation);
  eliminate_diagonal(A, fixed);
  Vector rhs = B_r.transpose() * (M_u * u);
  for (std::size_t i = 0; i < fixed.size(); ++i)
    if (fixed[i])
      rhs[static_cast<Index>(i)] = 0.0;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(A);
  if (ldlt.info() != Eigen::Success)
    throw SolverError("curl_range_projection: factorization failed");
  const Vector rho = ldlt.solve(rhs);
  return B_r * rho;
}

double energy_norm(const FieldState &state, const MaterialParams &params)
{
  state.check();
  const MixedSpaces &sp = *state.spaces;
  const SparseMatrix M_r = mass_matrix(sp.rotation);
  const SparseMatrix K_r = stiffness_matrix(sp.rotation);
  const SparseMatrix M_u = mass_matrix(sp.displacement);
  const SparseMatrix M_q = mass_matrix(sp.flux);
  const SparseMatrix M_p = mass_matrix(sp.pressure);
  const SparseMatrix B_u = div_matrix(sp.displacement, sp.pressure);
  const SparseMatrix B_q = div_matrix(sp.flux, sp.pressure);

  const Vector pi_u = curl_range_projection(sp, state.u);
  const Vector div_u = B_u * state.u;
  const Vector coupled = params.alpha * div_u + params.delta() * (B_q * state.q);
  const double eta_c0 = params.eta() + params.c0;
  const double sq = (state.r.dot(M_r * state.r) + state.r.dot(K_r * state.r)) / params.mu +
                    params.mu * pi_u.dot(M_u * pi_u) + (2.0 * params.mu + params.lambda) * div_u.dot(M_p * div_u) +
                    state.q.dot(M_q * state.q) / params.K + coupled.dot(M_p * coupled) / eta_c0 +
                    eta_c0 * state.p.dot(M_p * state.p);
  return std::sqrt(sq);
}

namespace
{

template <typename T>
std::array<T, 2> poly_u(T x, T y)
{
  return {x * x * y, -x * y * y};
}

template <typename T>
T poly_p(T x, T y)
{
  return x * (1 - x) * y * (1 - y);
}

template <typename T>
std::array<T, 2> trig_u(T x, T y)
{
  const T pi = std::numbers::pi_v<T>;
  return {std::sin(pi * x) * std::sin(pi * y), std::cos(pi * x) * std::cos(pi * y)};
}

template <typename T>
T trig_p(T x, T y)
{
  const T pi = std::numbers::pi_v<T>;
  return std::cos(pi * x) * std::cos(pi * y);
}

/// Hand-derived first and second derivatives shared by both cases.
struct Derivatives
{
  std::function<Matrix2(const Vector2 &)> grad_u;  // (i, j) = d_j u_i
  std::function<Vector2(const Vector2 &)> grad_div_u;
  std::function<Vector2(const Vector2 &)> grad_p;
  std::function<double(const Vector2 &)> lap_p;
  std::function<Vector2(const Vector2 &)> grad_r_over_mu;
};

Derivatives poly_derivatives()
{
  Derivatives d;
  d.grad_u = [](const Vector2 &x) {
    Matrix2 g;
    g << 2 * x[0] * x[1], x[0] * x[0], -x[1] * x[1], -2 * x[0] * x[1];
    return g;
  };
  d.grad_div_u = [](const Vector2 &) { return Vector2(0.0, 0.0); };
  d.grad_p = [](const Vector2 &x) {
    return Vector2((1 - 2 * x[0]) * x[1] * (1 - x[1]), x[0] * (1 - x[0]) * (1 - 2 * x[1]));
  };
  d.lap_p = [](const Vector2 &x) { return -2 * x[1] * (1 - x[1]) - 2 * x[0] * (1 - x[0]); };
  d.grad_r_over_mu = [](const Vector2 &x) { return Vector2(2 * x[0], 2 * x[1]); };
  return d;
}

Derivatives trig_derivatives()
{
  using std::cos;
  using std::sin;
  const double pi = std::numbers::pi;
  Derivatives d;
  d.grad_u = [pi](const Vector2 &x) {
    Matrix2 g;
    g << pi * cos(pi * x[0]) * sin(pi * x[1]), pi * sin(pi * x[0]) * cos(pi * x[1]),
        -pi * sin(pi * x[0]) * cos(pi * x[1]), -pi * cos(pi * x[0]) * sin(pi * x[1]);
    return g;
  };
  d.grad_div_u = [](const Vector2 &) { return Vector2(0.0, 0.0); };
  d.grad_p = [pi](const Vector2 &x) {
    return Vector2(-pi * sin(pi * x[0]) * cos(pi * x[1]), -pi * cos(pi * x[0]) * sin(pi * x[1]));
  };
  d.lap_p = [pi](const Vector2 &x) { return -2 * pi * pi * cos(pi * x[0]) * cos(pi * x[1]); };
  // r / mu = 2 pi sin(pi x) cos(pi y)
  d.grad_r_over_mu = [pi](const Vector2 &x) {
    return Vector2(2 * pi * pi * cos(pi * x[0]) * cos(pi * x[1]), -2 * pi * pi * sin(pi * x[0]) * sin(pi * x[1]));
  };
  return d;
}

}  // namespace

ManufacturedCase make_case(const std::string &name, const MaterialParams &params)
{
  params.validate();
  if (!params.K_tensor.empty())
    throw std::invalid_argument("manufactured cases use a scalar conductivity");
  ManufacturedCase mc;
  mc.name = name;
  mc.params = params;
  Derivatives d;
  if (name == "poly")
  {
    d = poly_derivatives();
    mc.u = [](const Vector2 &x) {
      const auto v = poly_u(x[0], x[1]);
      return Vector2(v[0], v[1]);
    };
    mc.p = [](const Vector2 &x) { return poly_p(x[0], x[1]); };
    mc.u_ld = [](long double x, long double y) { return poly_u(x, y); };
    mc.p_ld = [](long double x, long double y) { return poly_p(x, y); };
  }
  else if (name == "trig")
  {
    d = trig_derivatives();
    mc.u = [](const Vector2 &x) {
      const auto v = trig_u(x[0], x[1]);
      return Vector2(v[0], v[1]);
    };
    mc.p = [](const Vector2 &x) { return trig_p(x[0], x[1]); };
    mc.u_ld = [](long double x, long double y) { return trig_u(x, y); };
    mc.p_ld = [](long double x, long double y) { return trig_p(x, y); };
  }
  else
  {
    throw std::invalid_argument("unknown manufactured case '" + name + "'");
  }

  const double mu = params.mu;
  const double lm = 2.0 * params.mu + params.lambda;
  const double alpha = params.alpha;
  const double delta = params.delta();
  const double K = params.K;
  const double c0 = params.c0;

  mc.r = [d, mu](const Vector2 &x) {
    const Matrix2 g = d.grad_u(x);
    return mu * (g(0, 1) - g(1, 0));
  };
  mc.curl_r = [d, mu](const Vector2 &x) {
    const Vector2 g = d.grad_r_over_mu(x);
    return Vector2(-mu * g[1], mu * g[0]);
  };
  mc.div_u = [d](const Vector2 &x) { return d.grad_u(x).trace(); };
  mc.q = [d, delta, K](const Vector2 &x) { return Vector2(-delta * K * d.grad_p(x)); };
  mc.div_q = [d, delta, K](const Vector2 &x) { return -delta * K * d.lap_p(x); };
  mc.f_u = [mc, d, lm, alpha](const Vector2 &x) {
    return Vector2(mc.curl_r(x) - lm * d.grad_div_u(x) + alpha * d.grad_p(x));
  };
  mc.f_p = [mc, delta, alpha, c0](const Vector2 &x) {
    return c0 * mc.p(x) + alpha * mc.div_u(x) + delta * mc.div_q(x);
  };
  mc.sigma0 = [mc, lm, alpha](const Vector2 &x) { return alpha * mc.p(x) - lm * mc.div_u(x); };
  return mc;
}

BoundaryConfig ManufacturedCase::boundary(const Mesh &mesh) const
{
  BoundaryConfig bc;
  for (const auto &tag : mesh.boundary_tag_set())
  {
    const bool essential = tag == "left" || tag == "bottom";
    bc.mechanics[tag] = essential ? MechanicsBoundary::Rotation : MechanicsBoundary::Displacement;
    bc.flow[tag] = essential ? FlowBoundary::Flux : FlowBoundary::Pressure;
  }
  bc.displacement = u;
  bc.rotation = r;
  bc.flux = q;
  bc.normal_stress = sigma0;
  bc.pressure = p;
  return bc;
}

ProblemData ManufacturedCase::data() const { return ProblemData{f_u, f_p}; }

namespace
{

using LD = long double;
constexpr LD fd_step = 2e-3L;

/// Sixth-order central difference.
template <typename F>
LD d_dx(const F &f, LD x, LD y, int dir)
{
  const LD h = fd_step;
  auto at = [&](LD s) { return dir == 0 ? f(x + s, y) : f(x, y + s); };
  return (45 * (at(h) - at(-h)) - 9 * (at(2 * h) - at(-2 * h)) + (at(3 * h) - at(-3 * h))) / (60 * h);
}

}  // namespace

OracleResult forcing_oracle(const ManufacturedCase &mc, int points, std::uint64_t seed)
{
  const MaterialParams &pr = mc.params;
  const LD mu = pr.mu;
  const LD lm = 2.0L * pr.mu + pr.lambda;
  const LD alpha = pr.alpha;
  const LD delta = std::sqrt(static_cast<LD>(pr.dt));
  const LD K = pr.K;
  const LD c0 = pr.c0;

  auto u1 = [&](LD x, LD y) { return mc.u_ld(x, y)[0]; };
  auto u2 = [&](LD x, LD y) { return mc.u_ld(x, y)[1]; };
  auto r_fd = [&](LD x, LD y) { return mu * (d_dx(u1, x, y, 1) - d_dx(u2, x, y, 0)); };
  auto div_fd = [&](LD x, LD y) { return d_dx(u1, x, y, 0) + d_dx(u2, x, y, 1); };
  auto q_sym = [&](LD x, LD y, int i) { return static_cast<LD>(mc.q(Vector2(double(x), double(y)))[i]); };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  OracleResult out;
  out.points = points;
  for (int k = 0; k < points; ++k)
  {
    const double xd = dist(rng);
    const double yd = dist(rng);
    const Vector2 xv(xd, yd);
    const LD x = xd, y = yd;

    std::vector<std::pair<LD, LD>> checks;  // (residual, scale)
    const LD r = r_fd(x, y);
    checks.emplace_back(mc.r(xv) - r, std::abs(r));

    const LD curl_r0 = -d_dx(r_fd, x, y, 1);
    const LD curl_r1 = d_dx(r_fd, x, y, 0);
    const LD gdiv0 = d_dx(div_fd, x, y, 0);
    const LD gdiv1 = d_dx(div_fd, x, y, 1);
    const LD gp0 = d_dx(mc.p_ld, x, y, 0);
    const LD gp1 = d_dx(mc.p_ld, x, y, 1);
    const Vector2 fu = mc.f_u(xv);
    const LD m0 = curl_r0 - lm * gdiv0 + alpha * gp0;
    const LD m1 = curl_r1 - lm * gdiv1 + alpha * gp1;
    const LD scale_u =
        std::max({std::abs(curl_r0), std::abs(curl_r1), std::abs(lm * gdiv0), std::abs(lm * gdiv1),
                  std::abs(alpha * gp0), std::abs(alpha * gp1)});
    checks.emplace_back(fu[0] - m0, scale_u);
    checks.emplace_back(fu[1] - m1, scale_u);

    const Vector2 q = mc.q(xv);
    checks.emplace_back(q[0] + delta * K * gp0, std::abs(delta * K * gp0));
    checks.emplace_back(q[1] + delta * K * gp1, std::abs(delta * K * gp1));

    auto q0 = [&](LD a, LD b) { return q_sym(a, b, 0); };
    auto q1 = [&](LD a, LD b) { return q_sym(a, b, 1); };
    // q is evaluated in double precision, so its difference quotient is
    // only accurate to about eps / step
    const LD div_q = d_dx(q0, x, y, 0) + d_dx(q1, x, y, 1);
    const LD p = mc.p_ld(x, y);
    const LD mass = c0 * p + alpha * div_fd(x, y) + delta * div_q;
    checks.emplace_back(mc.f_p(xv) - mass,
                        std::max({std::abs(c0 * p), std::abs(alpha * div_fd(x, y)), std::abs(delta * div_q)}));

    for (const auto &[res, scale] : checks)
    {
      const double rel = static_cast<double>(std::abs(res) / std::max<LD>(1.0L, scale));
      if (rel > out.max_residual)
      {
        out.max_residual = rel;
        out.worst_point = xv;
      }
    }
  }
  return out;
}

std::string to_string(Method method) { return method == Method::FourField ? "4F" : "MR"; }

double ErrorTable::rate(std::size_t i, double NormComponents::*component) const
{
  if (i == 0 || i >= rows.size())
    return std::numeric_limits<double>::quiet_NaN();
  const double e0 = rows[i - 1].err.*component;
  const double e1 = rows[i].err.*component;
  return std::log(e0 / e1) / std::log(rows[i - 1].h / rows[i].h);
}

double ErrorTable::final_rate_X() const
{
  return rows.size() < 2 ? std::numeric_limits<double>::quiet_NaN() : rows.back().rate_X;
}

double ErrorTable::final_rate(double NormComponents::*component) const
{
  return rows.size() < 2 ? std::numeric_limits<double>::quiet_NaN() : rate(rows.size() - 1, component);
}

std::string format_double(double v)
{
  if (std::isnan(v))
    return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string ErrorTable::to_csv() const
{
  std::ostringstream os;
  os << "level,h,err_r,err_curl_r,err_u,err_div_u,err_q,err_div_q,err_p,err_X,rate_X\n";
  for (const auto &row : rows)
  {
    os << row.level << ',' << format_double(row.h) << ',' << format_double(row.err.r) << ','
       << format_double(row.err.curl_r) << ',' << format_double(row.err.u) << ',' << format_double(row.err.div_u)
       << ',' << format_double(row.err.q) << ',' << format_double(row.err.div_q) << ','
       << format_double(row.err.p) << ',' << format_double(row.err_X) << ',' << format_double(row.rate_X) << '\n';
  }
  return os.str();
}

FieldState solve_case(std::shared_ptr<const Mesh> mesh, const ManufacturedCase &mc, int family, Method method,
                      const StudyOptions &options, SolveReport *report)
{
  const BoundaryConfig bc = options.boundary ? options.boundary(*mesh) : mc.boundary(*mesh);
  const bool lumped = method == Method::MultipointReduced;
  const BlockSystem sys = assemble_biot(std::move(mesh), family, mc.params, bc, mc.data(), lumped);
  if (method == Method::FourField)
  {
    if (options.solver == LinearSolver::Direct)
      return solve_direct(sys);
    const MinresResult res = solve_minres(sys, options.minres);
    if (report)
      *report = res.report;
    if (!res.report.converged)
      throw SolverError("minres: " + res.report.message);
    return FieldState::from_stacked(sys.spaces, res.x);
  }
  const CondensedSystem cs = condense(sys);
  if (options.solver == LinearSolver::Direct)
    return solve_direct(cs);
  const MinresResult res = solve_minres(cs, options.minres);
  if (report)
    *report = res.report;
  if (!res.report.converged)
    throw SolverError("minres: " + res.report.message);
  const Index nu = cs.S_uu.rows();
  return recover(cs, res.x.head(nu), res.x.tail(res.x.size() - nu));
}

ErrorTable convergence_study(const ManufacturedCase &mc, const Mesh &coarse, int levels, int family, Method method,
                             const StudyOptions &options, ErrorTable *partial)
{
  if (levels < 1)
    throw std::invalid_argument("convergence_study: levels must be >= 1");
  ErrorTable table;
  auto mesh = std::make_shared<const Mesh>(coarse);
  for (int level = 0; level < levels; ++level)
  {
    if (level > 0)
      mesh = std::make_shared<const Mesh>(refine_uniform(*mesh));
    FieldState x;
    try
    {
      x = solve_case(mesh, mc, family, method, options);
    }
    catch (const std::exception &e)
    {
      if (partial)
        *partial = table;
      throw SolverError("level " + std::to_string(level) + ": " + e.what());
    }
    ErrorRow row;
    row.level = level;
    row.h = mesh_stats(*mesh).h_max;
    row.dofs = x.spaces->offsets()[4];
    row.err = error_components(x, mc);
    row.err_X = combine_X(row.err, mc.params);
    if (!table.rows.empty())
      row.rate_X = std::log(table.rows.back().err_X / row.err_X) / std::log(table.rows.back().h / row.h);
    table.rows.push_back(row);
  }
  if (partial)
    *partial = table;
  return table;
}

}  // namespace biot
