// SPDX-License-Identifier: Apache-2.0

#include "biot/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

namespace biot
{

namespace
{

std::string trim(const std::string &s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    out.push_back(trim(item));
  return out;
}

double to_double(const std::string &key, const std::string &value)
{
  try
  {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(v))
      throw std::invalid_argument(value);
    return v;
  }
  catch (const std::exception &)
  {
    throw ConfigError(key, "expected a number, got '" + value + "'");
  }
}

long long to_integer(const std::string &key, const std::string &value)
{
  try
  {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size())
      throw std::invalid_argument(value);
    return v;
  }
  catch (const std::exception &)
  {
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  }
}

const std::set<std::string> param_keys{"params.mu", "params.lambda", "params.alpha",
                                       "params.c0", "params.K",      "params.dt"};

const std::set<std::string> sweep_param_keys{"sweep.mu", "sweep.lambda", "sweep.alpha",
                                             "sweep.c0", "sweep.K",      "sweep.dt"};

const std::set<std::string> plain_keys{"mode",       "mesh.n",          "mesh.file", "family",
                                       "method",     "case",            "levels",    "solver",
                                       "solver.tol", "solver.max_iter", "seed",      "time.steps",
                                       "time.scheme", "sweep.levels"};

void check_param(const MaterialParams &p, const std::string &key)
{
  try
  {
    p.validate();
  }
  catch (const std::invalid_argument &e)
  {
    throw ConfigError(key, e.what());
  }
}

std::string mode_name(RunMode m)
{
  switch (m)
  {
  case RunMode::Solve:
    return "solve";
  case RunMode::TimeLoop:
    return "timeloop";
  case RunMode::Convergence:
    return "convergence";
  case RunMode::Sweep:
    return "sweep";
  }
  return "";
}

std::string join(const std::vector<double> &v)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + format_double(v[i]);
  return s;
}

}  // namespace

RunConfig parse_config(std::istream &in)
{
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line))
  {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno), "empty key");
    const bool known = plain_keys.count(key) || param_keys.count(key) || sweep_param_keys.count(key) ||
                       (key.rfind("bc.", 0) == 0 && key.size() > 3);
    if (!known)
      throw ConfigError(key, "unknown key");
    if (!kv.emplace(key, value).second)
      throw ConfigError(key, "duplicate key");
  }

  RunConfig c;
  auto get = [&kv](const std::string &key) -> const std::string * {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  const std::string *mode = get("mode");
  if (!mode)
    throw ConfigError("mode", "missing required key");
  if (*mode == "solve")
    c.mode = RunMode::Solve;
  else if (*mode == "timeloop")
    c.mode = RunMode::TimeLoop;
  else if (*mode == "convergence")
    c.mode = RunMode::Convergence;
  else if (*mode == "sweep")
    c.mode = RunMode::Sweep;
  else
    throw ConfigError("mode", "expected solve, timeloop, convergence or sweep");

  if (const auto *v = get("mesh.n"))
  {
    const auto n = to_integer("mesh.n", *v);
    if (n < 1 || n > 4096)
      throw ConfigError("mesh.n", "must be between 1 and 4096");
    c.mesh_n = static_cast<int>(n);
  }
  if (const auto *v = get("mesh.file"))
  {
    if (v->empty())
      throw ConfigError("mesh.file", "empty path");
    c.mesh_file = *v;
  }
  if (const auto *v = get("family"))
  {
    const auto f = to_integer("family", *v);
    if (f != 1 && f != 2)
      throw ConfigError("family", "expected 1 or 2");
    c.family = static_cast<int>(f);
  }
  if (const auto *v = get("method"))
  {
    if (*v == "4F")
      c.method = Method::FourField;
    else if (*v == "MR")
      c.method = Method::MultipointReduced;
    else
      throw ConfigError("method", "expected 4F or MR");
  }
  if (c.method == Method::MultipointReduced && c.family != 2)
    throw ConfigError("method", "MR requires family=2");

  if (c.mode != RunMode::Sweep)
  {
    for (const auto &key : param_keys)
      if (!get(key))
        throw ConfigError(key.substr(7), "missing required key '" + key + "'");
    c.params.mu = to_double("params.mu", *get("params.mu"));
    c.params.lambda = to_double("params.lambda", *get("params.lambda"));
    c.params.alpha = to_double("params.alpha", *get("params.alpha"));
    c.params.c0 = to_double("params.c0", *get("params.c0"));
    c.params.K = to_double("params.K", *get("params.K"));
    c.params.dt = to_double("params.dt", *get("params.dt"));
    MaterialParams probe;
    const std::vector<std::pair<std::string, double MaterialParams::*>> fields{
        {"params.mu", &MaterialParams::mu}, {"params.lambda", &MaterialParams::lambda},
        {"params.alpha", &MaterialParams::alpha}, {"params.c0", &MaterialParams::c0},
        {"params.K", &MaterialParams::K}, {"params.dt", &MaterialParams::dt}};
    for (const auto &[key, member] : fields)
    {
      probe.*member = c.params.*member;
      check_param(probe, key);
    }
    check_param(c.params, "params");
  }
  else
  {
    for (const auto &key : param_keys)
      if (get(key))
        throw ConfigError(key, "not used in sweep mode; use " + std::string("sweep.") + key.substr(7));
  }

  for (const auto &[key, value] : kv)
  {
    if (key.rfind("bc.", 0) != 0)
      continue;
    const auto parts = split(value, ',');
    if (parts.size() != 2)
      throw ConfigError(key, "expected '<r|u>,<p|q>'");
    MechanicsBoundary mb;
    FlowBoundary fb;
    if (parts[0] == "r")
      mb = MechanicsBoundary::Rotation;
    else if (parts[0] == "u")
      mb = MechanicsBoundary::Displacement;
    else
      throw ConfigError(key, "mechanics part must be r or u");
    if (parts[1] == "p")
      fb = FlowBoundary::Pressure;
    else if (parts[1] == "q")
      fb = FlowBoundary::Flux;
    else
      throw ConfigError(key, "flow part must be p or q");
    c.bc[key.substr(3)] = {mb, fb};
  }

  if (const auto *v = get("case"))
  {
    if (*v != "poly" && *v != "trig")
      throw ConfigError("case", "expected poly or trig");
    c.case_name = *v;
  }
  if (const auto *v = get("levels"))
  {
    const auto n = to_integer("levels", *v);
    if (n < 1 || n > 8)
      throw ConfigError("levels", "must be between 1 and 8");
    c.levels = static_cast<int>(n);
  }
  if (const auto *v = get("solver"))
  {
    if (*v == "direct")
      c.solver = LinearSolver::Direct;
    else if (*v == "minres")
      c.solver = LinearSolver::Minres;
    else
      throw ConfigError("solver", "expected direct or minres");
  }
  if (const auto *v = get("solver.tol"))
  {
    c.tol = to_double("solver.tol", *v);
    if (!(c.tol > 0.0 && c.tol < 1.0))
      throw ConfigError("solver.tol", "must lie in (0, 1)");
  }
  if (const auto *v = get("solver.max_iter"))
  {
    const auto n = to_integer("solver.max_iter", *v);
    if (n < 1)
      throw ConfigError("solver.max_iter", "must be positive");
    c.max_iter = static_cast<int>(n);
  }
  if (const auto *v = get("seed"))
  {
    const auto s = to_integer("seed", *v);
    if (s < 0)
      throw ConfigError("seed", "must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (const auto *v = get("time.steps"))
  {
    const auto n = to_integer("time.steps", *v);
    if (n < 1)
      throw ConfigError("time.steps", "must be positive");
    c.time_steps = static_cast<int>(n);
  }
  if (const auto *v = get("time.scheme"))
  {
    if (*v == "BE")
      c.time_scheme = TimeScheme::BackwardEuler;
    else if (*v == "CN")
      c.time_scheme = TimeScheme::CrankNicolson;
    else
      throw ConfigError("time.scheme", "expected BE or CN");
  }
  if (const auto *v = get("sweep.levels"))
  {
    c.sweep_levels.clear();
    for (const auto &s : split(*v, ','))
    {
      const auto n = to_integer("sweep.levels", s);
      if (n < 1 || n > 512)
        throw ConfigError("sweep.levels", "mesh sizes must be between 1 and 512");
      c.sweep_levels.push_back(static_cast<int>(n));
    }
    if (c.sweep_levels.empty())
      throw ConfigError("sweep.levels", "empty list");
  }
  for (const auto &key : sweep_param_keys)
  {
    if (const auto *v = get(key))
    {
      std::vector<double> values;
      for (const auto &s : split(*v, ','))
        values.push_back(to_double(key, s));
      if (values.empty())
        throw ConfigError(key, "empty list");
      c.sweep_values[key.substr(6)] = values;
    }
  }
  return c;
}

RunConfig parse_config_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config", "cannot open '" + path + "'");
  return parse_config(in);
}

std::string echo_config(const RunConfig &c)
{
  std::ostringstream os;
  os << "mode=" << mode_name(c.mode) << '\n';
  if (c.mesh_file.empty())
    os << "mesh.n=" << c.mesh_n << '\n';
  else
    os << "mesh.file=" << c.mesh_file << '\n';
  os << "family=" << c.family << '\n';
  os << "method=" << to_string(c.method) << '\n';
  if (c.mode != RunMode::Sweep)
  {
    os << "params.mu=" << format_double(c.params.mu) << '\n';
    os << "params.lambda=" << format_double(c.params.lambda) << '\n';
    os << "params.alpha=" << format_double(c.params.alpha) << '\n';
    os << "params.c0=" << format_double(c.params.c0) << '\n';
    os << "params.K=" << format_double(c.params.K) << '\n';
    os << "params.dt=" << format_double(c.params.dt) << '\n';
  }
  for (const auto &[tag, assignment] : c.bc)
    os << "bc." << tag << '=' << (assignment.first == MechanicsBoundary::Rotation ? 'r' : 'u') << ','
       << (assignment.second == FlowBoundary::Pressure ? 'p' : 'q') << '\n';
  os << "case=" << c.case_name << '\n';
  os << "levels=" << c.levels << '\n';
  os << "solver=" << (c.solver == LinearSolver::Direct ? "direct" : "minres") << '\n';
  os << "solver.tol=" << format_double(c.tol) << '\n';
  os << "solver.max_iter=" << c.max_iter << '\n';
  os << "seed=" << c.seed << '\n';
  os << "time.steps=" << c.time_steps << '\n';
  os << "time.scheme=" << (c.time_scheme == TimeScheme::BackwardEuler ? "BE" : "CN") << '\n';
  if (c.mode == RunMode::Sweep)
  {
    std::string levels;
    for (std::size_t i = 0; i < c.sweep_levels.size(); ++i)
      levels += (i ? "," : "") + std::to_string(c.sweep_levels[i]);
    os << "sweep.levels=" << levels << '\n';
    for (const auto &[name, values] : c.sweep_values)
      os << "sweep." << name << '=' << join(values) << '\n';
  }
  return os.str();
}

namespace
{

namespace fs = std::filesystem;

void write_file(const fs::path &path, const std::string &content)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

Mesh load_mesh(const RunConfig &c)
{
  if (c.mesh_file.empty())
    return unit_square_mesh(c.mesh_n);
  try
  {
    return read_mesh_file(c.mesh_file);
  }
  catch (const std::exception &e)
  {
    throw ConfigError("mesh.file", e.what());
  }
}

std::function<BoundaryConfig(const Mesh &)> boundary_for(const RunConfig &c, const ManufacturedCase &mc)
{
  return [&c, &mc](const Mesh &mesh) {
    BoundaryConfig bc = mc.boundary(mesh);
    const auto tags = mesh.boundary_tag_set();
    for (const auto &[tag, assignment] : c.bc)
    {
      if (std::find(tags.begin(), tags.end(), tag) == tags.end())
        throw ConfigError("bc." + tag, "no boundary edge carries this tag");
      bc.mechanics[tag] = assignment.first;
      bc.flow[tag] = assignment.second;
    }
    try
    {
      bc.validate(mesh);
    }
    catch (const std::invalid_argument &e)
    {
      throw ConfigError("bc", e.what());
    }
    return bc;
  };
}

StudyOptions study_options(const RunConfig &c, const ManufacturedCase &mc)
{
  StudyOptions o;
  o.solver = c.solver;
  o.minres.tol = c.tol;
  o.minres.max_iter = c.max_iter;
  o.minres.probe_seed = c.seed;
  o.boundary = boundary_for(c, mc);
  return o;
}

std::string plot_script(const std::string &csv)
{
  std::ostringstream os;
  os << "# gnuplot script: log-log error against mesh size\n"
     << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set key left top\n"
     << "set xlabel 'h'\n"
     << "set ylabel 'error'\n"
     << "set terminal pngcairo size 900,600\n"
     << "set output 'errors.png'\n"
     << "plot '" << csv << "' every ::1 using 2:3 with linespoints title 'r', \\\n"
     << "     '' every ::1 using 2:5 with linespoints title 'u', \\\n"
     << "     '' every ::1 using 2:7 with linespoints title 'q', \\\n"
     << "     '' every ::1 using 2:9 with linespoints title 'p', \\\n"
     << "     '' every ::1 using 2:10 with linespoints title 'X'\n";
  return os.str();
}

int run_solve(const RunConfig &c, const fs::path &out, std::ostream &log)
{
  const ManufacturedCase mc = make_case(c.case_name, c.params);
  auto mesh = std::make_shared<const Mesh>(load_mesh(c));
  SolveReport report;
  const StudyOptions opts = study_options(c, mc);
  const FieldState x = solve_case(mesh, mc, c.family, c.method, opts, &report);
  const NormComponents e = error_components(x, mc);
  const double ex = combine_X(e, c.params);
  std::ostringstream csv;
  csv << "dofs,iterations,err_r,err_curl_r,err_u,err_div_u,err_q,err_div_q,err_p,err_X\n";
  csv << x.spaces->offsets()[4] << ',' << (c.solver == LinearSolver::Minres ? std::to_string(report.iterations) : "")
      << ',' << format_double(e.r) << ',' << format_double(e.curl_r) << ',' << format_double(e.u) << ','
      << format_double(e.div_u) << ',' << format_double(e.q) << ',' << format_double(e.div_q) << ','
      << format_double(e.p) << ',' << format_double(ex) << '\n';
  write_file(out / "solve.csv", csv.str());
  log << "solve: " << x.spaces->offsets()[4] << " dofs, error in X norm " << format_double(ex) << '\n';
  return ExitSuccess;
}

int run_timeloop(const RunConfig &c, const fs::path &out, std::ostream &log)
{
  const ManufacturedCase mc = make_case(c.case_name, c.params);
  auto mesh = std::make_shared<const Mesh>(load_mesh(c));
  const BoundaryConfig bc = boundary_for(c, mc)(*mesh);
  auto spaces = build_mixed_spaces(mesh, c.family, bc);
  const bool lumped = c.method == Method::MultipointReduced;
  SystemSolver solver = [&c, lumped](const BlockSystem &sys, const Vector &f) -> Vector {
    BlockSystem s = sys;
    for (int i = 0; i < 4; ++i)
      s.rhs[i] = f.segment(sys.offsets()[i], sys.offsets()[i + 1] - sys.offsets()[i]);
    if (lumped)
    {
      const CondensedSystem cs = condense(s);
      if (c.solver == LinearSolver::Direct)
        return solve_direct(cs).stacked();
      MinresOptions mo;
      mo.tol = c.tol;
      mo.max_iter = c.max_iter;
      const MinresResult res = solve_minres(cs, mo);
      if (!res.report.converged)
        throw SolverError("minres: " + res.report.message);
      const Index nu = cs.S_uu.rows();
      return recover(cs, res.x.head(nu), res.x.tail(res.x.size() - nu)).stacked();
    }
    if (c.solver == LinearSolver::Direct)
      return direct_solve(s.matrix(), s.rhs_vector());
    MinresOptions mo;
    mo.tol = c.tol;
    mo.max_iter = c.max_iter;
    const MinresResult res = solve_minres(s, mo);
    if (!res.report.converged)
      throw SolverError("minres: " + res.report.message);
    return res.x;
  };
  TimeData data{mc.f_u, mc.f_p};
  const auto states =
      time_loop(spaces, Vector::Zero(spaces->displacement.dof_count()), Vector::Zero(spaces->pressure.dof_count()),
                c.params, bc, data, c.time_steps, lumped, c.time_scheme, solver);
  std::ostringstream csv;
  csv << "step,time,norm_X,norm_u,norm_p\n";
  for (std::size_t i = 0; i < states.size(); ++i)
  {
    const NormComponents n = component_norms(states[i]);
    csv << i + 1 << ',' << format_double(c.params.dt * static_cast<double>(i + 1)) << ','
        << format_double(combine_X(n, c.params)) << ',' << format_double(n.u) << ',' << format_double(n.p) << '\n';
  }
  write_file(out / "timeloop.csv", csv.str());
  log << "timeloop: " << states.size() << " steps\n";
  return ExitSuccess;
}

int run_convergence(const RunConfig &c, const fs::path &out, std::ostream &log)
{
  const ManufacturedCase mc = make_case(c.case_name, c.params);
  const Mesh coarse = load_mesh(c);
  ErrorTable partial;
  const StudyOptions opts = study_options(c, mc);
  try
  {
    const ErrorTable table = convergence_study(mc, coarse, c.levels, c.family, c.method, opts, &partial);
    write_file(out / "errors.csv", table.to_csv());
    write_file(out / "plot_errors.gp", plot_script("errors.csv"));
    log << "convergence: final rate in X norm " << format_double(table.final_rate_X()) << '\n';
  }
  catch (const SolverError &)
  {
    write_file(out / "errors.csv", partial.to_csv());
    throw;
  }
  return ExitSuccess;
}

int run_sweep(const RunConfig &c, const fs::path &out, std::ostream &log)
{
  std::vector<MaterialParams> grid = default_sweep_grid();
  if (!c.sweep_values.empty())
  {
    auto values = [&c](const std::string &name, std::vector<double> fallback) {
      const auto it = c.sweep_values.find(name);
      return it == c.sweep_values.end() ? fallback : it->second;
    };
    grid.clear();
    for (double mu : values("mu", {1e-6, 1.0, 1e6}))
      for (double K : values("K", {1e-6, 1.0, 1e6}))
        for (double lambda : values("lambda", {0.0, 1.0, 1e6}))
          for (double c0 : values("c0", {0.0, 1.0}))
            for (double alpha : values("alpha", {0.0, 0.5, 1.0}))
              for (double dt : values("dt", {1e-6, 1.0}))
              {
                MaterialParams p;
                p.mu = mu;
                p.K = K;
                p.lambda = lambda;
                p.c0 = c0;
                p.alpha = alpha;
                p.dt = dt;
                check_param(p, "sweep");
                grid.push_back(p);
              }
  }
  SweepOptions so;
  so.family = c.family;
  so.tol = c.tol;
  so.max_iter = c.max_iter;
  so.seed = c.seed;
  const auto rows = parameter_sweep(grid, c.sweep_levels, so);
  std::ostringstream csv;
  csv << "row,n,mu,lambda,alpha,c0,K,dt,dofs,converged,iterations,relative_residual,ritz_low,ritz_high,"
         "ritz_abs_min,ritz_abs_max,condition_estimate,error\n";
  int it_min = 0, it_max = 0;
  bool failed = false;
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    const SweepRow &r = rows[i];
    csv << i << ',' << r.n << ',' << format_double(r.params.mu) << ',' << format_double(r.params.lambda) << ','
        << format_double(r.params.alpha) << ',' << format_double(r.params.c0) << ',' << format_double(r.params.K)
        << ',' << format_double(r.params.dt) << ',' << r.dofs << ',' << (r.ok ? 1 : 0) << ','
        << r.report.iterations << ',' << format_double(r.report.relative_residual) << ','
        << format_double(r.report.ritz_low) << ',' << format_double(r.report.ritz_high) << ','
        << format_double(r.report.ritz_abs_min) << ',' << format_double(r.report.ritz_abs_max) << ','
        << format_double(r.report.condition_estimate) << ',' << '"' << r.error << '"' << '\n';
    failed = failed || !r.ok;
    if (r.ok)
    {
      it_min = it_min == 0 ? r.report.iterations : std::min(it_min, r.report.iterations);
      it_max = std::max(it_max, r.report.iterations);
    }
  }
  write_file(out / "sweep.csv", csv.str());
  log << "sweep: " << rows.size() << " rows, iterations in [" << it_min << ", " << it_max << "]\n";
  return failed ? ExitSolverFailure : ExitSuccess;
}

}  // namespace

int run(const RunConfig &config, std::ostream &log, std::ostream &err)
{
  try
  {
    const fs::path out(config.out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec)
      throw ConfigError("out", "cannot create '" + out.string() + "': " + ec.message());
    write_file(out / "effective_config.txt", echo_config(config));
    switch (config.mode)
    {
    case RunMode::Solve:
      return run_solve(config, out, log);
    case RunMode::TimeLoop:
      return run_timeloop(config, out, log);
    case RunMode::Convergence:
      return run_convergence(config, out, log);
    case RunMode::Sweep:
      return run_sweep(config, out, log);
    }
  }
  catch (const ConfigError &e)
  {
    err << "config error: " << e.what() << '\n';
    return ExitConfigError;
  }
  catch (const SolverError &e)
  {
    err << "solver failure: " << e.what() << '\n';
    return ExitSolverFailure;
  }
  catch (const std::invalid_argument &e)
  {
    err << "config error: " << e.what() << '\n';
    return ExitConfigError;
  }
  catch (const std::exception &e)
  {
    err << "solver failure: " << e.what() << '\n';
    return ExitSolverFailure;
  }
  return ExitSuccess;
}

int cli_main(int argc, char **argv)
{
  CLI::App app{"Rotation-based mixed finite elements for Biot poroelasticity"};
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  bool verbose = false;
  app.add_option("config", config_path, "configuration file (key=value)")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "random seed, overrides the config");
  app.add_flag("--verbose", verbose, "print the effective configuration");
  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? ExitSuccess : ExitConfigError;
  }

  RunConfig config;
  try
  {
    config = parse_config_file(config_path);
  }
  catch (const ConfigError &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return ExitConfigError;
  }
  config.out_dir = out_dir;
  config.verbose = verbose;
  if (seed)
    config.seed = *seed;
  if (verbose)
    std::cout << echo_config(config);
  return run(config, std::cout, std::cerr);
}

}  // namespace biot
