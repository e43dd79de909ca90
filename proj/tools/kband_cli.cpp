// Command-line front end: basis | project | forward | residual.
// All artifacts are CSV with documented headers plus a JSON run manifest;
// bodies are byte-deterministic for a fixed config.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "kband/band.hpp"
#include "kband/basis.hpp"
#include "kband/config.hpp"
#include "kband/csv.hpp"
#include "kband/field_transform.hpp"
#include "kband/galerkin.hpp"
#include "kband/grid.hpp"
#include "kband/projection.hpp"
#include "kband/residual.hpp"
#include "kband/scattering.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace kband;

namespace {

std::string resolve_output_dir(const RunConfig& cfg, const std::string& flag) {
  if (const char* env = std::getenv("KBAND_OUTPUT_DIR")) return env;
  if (!flag.empty()) return flag;
  return cfg.output_dir;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw io_error("cannot create output directory: " + dir);
}

json config_json(const RunConfig& cfg) {
  return json{{"band", {{"k_lo", cfg.k_lo}, {"k_hi", cfg.k_hi}}},
              {"basis", {{"n", cfg.basis_n}, {"n_list", cfg.n_list}}},
              {"grid", {{"R", cfg.grid_R}, {"n_per_axis", cfg.grid_n}}},
              {"medium",
               {{"center_x", cfg.bump_cx},
                {"center_y", cfg.bump_cy},
                {"radius", cfg.bump_radius},
                {"contrast", cfg.bump_contrast},
                {"support_n", cfg.support_n}}},
              {"source", cfg.source},
              {"quad_nodes", cfg.effective_quad_nodes()},
              {"seed", cfg.seed}};
}

void write_manifest(const std::string& dir, const std::string& subcommand,
                    const RunConfig& cfg, json extra) {
  json m;
  m["subcommand"] = subcommand;
  m["parameters"] = config_json(cfg);
  m["tolerances"] = {{"orthonormality", 1e-10},
                     {"triangular_structure", 1e-8},
                     {"pointwise_identity", 1e-8},
                     {"galerkin_consistency", 1e-6},
                     {"residual_decay_slack", 0.05}};
  m["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  if (!extra.is_null()) m.update(extra);
  std::ofstream out(dir + "/manifest.json");
  if (!out) throw io_error("cannot write manifest in " + dir);
  out << m.dump(2) << '\n';
}

int run_basis(const RunConfig& cfg, const std::string& dir, bool dump_system) {
  const Band band(cfg.k_lo, cfg.k_hi);
  const OrthonormalBasis basis = build_basis(band, cfg.basis_n);
  const int N = basis.size();

  CsvWriter coeffs(dir + "/basis_coeffs.csv", "n,j,c_j");
  for (int n = 1; n <= N; ++n) {
    const auto& c = basis.element(n).coeffs();
    for (std::size_t j = 0; j < c.size(); ++j)
      coeffs.row({csv_num(n), csv_num(static_cast<int>(j)), csv_num(c[j])});
  }

  double max_resid = 0.0;
  CsvWriter ortho(dir + "/orthonormality.csv", "m,n,residual");
  for (int m = 1; m <= N; ++m)
    for (int n = 1; n <= N; ++n) {
      const double ip = inner_product(basis.element(m), basis.element(n), band);
      const double resid = ip - (m == n ? 1.0 : 0.0);
      max_resid = std::max(max_resid, std::abs(resid));
      ortho.row({csv_num(m), csv_num(n), csv_num(resid)});
    }

  if (dump_system) {
    const GalerkinSystem sys = assemble_system(basis);
    CsvWriter d(dir + "/galerkin_d.csv", "m,n,value");
    CsvWriter s(dir + "/galerkin_s.csv", "m,n,re,im");
    CsvWriter bb(dir + "/galerkin_b.csv", "m,n,l,value");
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n) {
        d.row({csv_num(m + 1), csv_num(n + 1), csv_num(sys.D(m, n))});
        s.row({csv_num(m + 1), csv_num(n + 1), csv_num(sys.S(m, n).real()),
               csv_num(sys.S(m, n).imag())});
        for (int l = 0; l < N; ++l)
          bb.row({csv_num(m + 1), csv_num(n + 1), csv_num(l + 1),
                  csv_num(sys.block(m, n)(l))});
      }
  }

  write_manifest(dir, "basis", cfg,
                 json{{"max_orthonormality_residual", max_resid},
                      {"dump_system", dump_system}});
  std::cout << "basis: N=" << N
            << " max orthonormality residual = " << csv_num(max_resid) << '\n';
  return 0;
}

int run_project(const RunConfig& cfg, const std::string& dir,
                const std::string& function) {
  const Band band(cfg.k_lo, cfg.k_hi);
  const int n_max = cfg.n_list.back();
  const OrthonormalBasis basis = build_basis(band, n_max);
  const QuadratureRule rule = band_rule(band, 2 * n_max + 8);
  const double k0 = band.k0();

  std::function<double(double)> f, fp;
  if (function == "gaussian") {
    f = [k0](double k) { return std::exp(-4.0 * (k - k0) * (k - k0)); };
    fp = [k0, f](double k) { return -8.0 * (k - k0) * f(k); };
  } else if (function == "sin") {
    f = [](double k) { return std::sin(k); };
    fp = [](double k) { return std::cos(k); };
  } else if (function.rfind("in-span:", 0) == 0) {
    const int M = std::stoi(function.substr(8));
    if (M < 1 || M > n_max)
      throw config_error("project: in-span order must be in [1, n_max]");
    // fixed smooth member of T_M: c_n = 1/n
    Eigen::VectorXd c(M);
    for (int n = 1; n <= M; ++n) c(n - 1) = 1.0 / n;
    f = [basis, c](double k) {
      double s = 0.0;
      for (int n = 1; n <= c.size(); ++n) s += c(n - 1) * basis.eval(n, k);
      return s;
    };
    fp = [basis, c](double k) {
      double s = 0.0;
      for (int n = 1; n <= c.size(); ++n) s += c(n - 1) * basis.eval_deriv(n, k);
      return s;
    };
  } else {
    throw config_error("project: unknown function '" + function +
                       "' (gaussian | sin | in-span:M)");
  }

  std::vector<cplx> fv(rule.size()), fpv(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    fv[i] = f(rule.nodes[i]);
    fpv[i] = fp(rule.nodes[i]);
  }

  CsvWriter out(dir + "/project.csv", "N,l2_error,h1_error");
  for (int N : cfg.n_list) {
    const auto pn = project(fv, basis, rule, N);
    std::vector<cplx> diff(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) diff[i] = pn[i] - fv[i];
    const double l2 = l2_norm(diff, rule);
    const double h1 = h1_projection_error(fv, fpv, basis, rule, N);
    out.row({csv_num(N), csv_num(l2), csv_num(h1)});
  }
  write_manifest(dir, "project", cfg, json{{"function", function}});
  std::cout << "project: wrote " << dir << "/project.csv\n";
  return 0;
}

int run_forward(const RunConfig& cfg, const std::string& dir) {
  const Band band(cfg.k_lo, cfg.k_hi);
  const QuadratureRule rule = band_rule(band, cfg.effective_quad_nodes());
  const SpaceGrid grid(cfg.grid_R, cfg.grid_n);
  const BumpMedium medium{cfg.bump_cx, cfg.bump_cy, cfg.bump_radius,
                          cfg.bump_contrast};

  std::vector<LippmannSchwingerSolution> sols;
  for (double k : rule.nodes)
    sols.push_back(solve_lippmann_schwinger(medium, k, cfg.support_n));
  const SampledField u = sample_total_field(sols, grid);
  const CauchyData cauchy = extract_cauchy_data(sols, grid);

  CsvWriter fu(dir + "/field_u.csv", "ix,iy,ik,re,im");
  for (std::size_t ik = 0; ik < rule.size(); ++ik)
    for (int iy = 0; iy < grid.n; ++iy)
      for (int ix = 0; ix < grid.n; ++ix) {
        const cplx v = u.at(ix, iy, static_cast<int>(ik));
        fu.row({csv_num(ix), csv_num(iy), csv_num(static_cast<int>(ik)),
                csv_num(v.real()), csv_num(v.imag())});
      }

  CsvWriter g0(dir + "/cauchy_g0.csv", "ix,iy,ik,re,im");
  CsvWriter g1(dir + "/cauchy_g1.csv", "ix,iy,ik,re,im");
  for (std::size_t ik = 0; ik < rule.size(); ++ik)
    for (int ix = 0; ix < grid.n; ++ix) {
      const cplx a = cauchy.g0[ix + grid.n * ik];
      const cplx b = cauchy.g1[ix + grid.n * ik];
      g0.row({csv_num(ix), csv_num(grid.n - 1), csv_num(static_cast<int>(ik)),
              csv_num(a.real()), csv_num(a.imag())});
      g1.row({csv_num(ix), csv_num(grid.n - 1), csv_num(static_cast<int>(ik)),
              csv_num(b.real()), csv_num(b.imag())});
    }

  double max_solve_residual = 0.0;
  for (const auto& s : sols)
    max_solve_residual = std::max(max_solve_residual, s.solve_residual);
  write_manifest(dir, "forward", cfg,
                 json{{"max_solve_residual", max_solve_residual}});
  std::cout << "forward: " << rule.size() << " wavenumbers, max solve residual "
            << csv_num(max_solve_residual) << '\n';
  return 0;
}

int run_residual(const RunConfig& cfg, const std::string& dir) {
  const Band band(cfg.k_lo, cfg.k_hi);
  const int n_max = cfg.n_list.back();
  const OrthonormalBasis basis = build_basis(band, std::max(n_max, cfg.basis_n));
  const SpaceGrid grid(cfg.grid_R, cfg.grid_n);

  ResidualReport report;
  if (cfg.source == "manufactured") {
    const QuadratureRule rule = band_rule(band, std::max(24, 2 * n_max + 8));
    const ManufacturedField mf = ManufacturedField::gaussian(band.k0());
    report = decay_study_manufactured(mf, basis, rule, grid, cfg.n_list);
  } else {
    const QuadratureRule rule = band_rule(band, cfg.effective_quad_nodes());
    const BumpMedium medium{cfg.bump_cx, cfg.bump_cy, cfg.bump_radius,
                            cfg.bump_contrast};
    std::vector<LippmannSchwingerSolution> sols;
    for (double k : rule.nodes)
      sols.push_back(solve_lippmann_schwinger(medium, k, cfg.support_n));
    const SampledField u = sample_total_field(sols, grid);
    const SampledField v = p_to_v(total_to_p(u));
    report = decay_study_solver(v, basis, rule, cfg.n_list);
  }

  CsvWriter out(dir + "/residual_report.csv",
                "N,abs_residual,rel_residual,galerkin_gap");
  for (const auto& row : report.rows)
    out.row({csv_num(row.N), csv_num(row.abs_residual),
             csv_num(row.rel_residual), csv_num(row.galerkin_gap)});

  write_manifest(dir, "residual", cfg, json{});
  for (const auto& row : report.rows)
    std::cout << "residual: N=" << row.N
              << " rel_residual=" << csv_num(row.rel_residual) << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral Galerkin machinery for multifrequency inverse "
               "scattering over a wavenumber band"};
  app.require_subcommand(1);
  app.fallthrough(); // global -c/-o may follow the subcommand

  std::string config_path, out_dir_flag, project_function = "gaussian";
  bool dump_system = false;
  app.add_option("-c,--config", config_path, "key = value config file");
  app.add_option("-o,--out-dir", out_dir_flag,
                 "output directory (overridden by KBAND_OUTPUT_DIR)");

  auto* basis_cmd = app.add_subcommand(
      "basis", "orthonormal band basis: coefficients and orthonormality residuals");
  basis_cmd->add_flag("--dump-system", dump_system,
                      "also emit the D, S, B matrices as CSV");
  auto* project_cmd =
      app.add_subcommand("project", "L2/H1 projection error sweep over N");
  project_cmd->add_option("--function", project_function,
                          "gaussian | sin | in-span:M");
  auto* forward_cmd = app.add_subcommand(
      "forward", "direct scattering solve: total field and Cauchy data");
  auto* residual_cmd = app.add_subcommand(
      "residual", "truncated-series residual decay study over N");
  std::string source_flag;
  std::string n_list_flag;
  residual_cmd->add_option("--source", source_flag, "manufactured | solver");
  residual_cmd->add_option("--n-list", n_list_flag,
                           "comma-separated strictly increasing N values");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg =
        config_path.empty() ? RunConfig{} : load_config_file(config_path);
    if (!source_flag.empty()) cfg.source = source_flag;
    if (!n_list_flag.empty())
      cfg = [&] {
        RunConfig c = cfg;
        c.n_list.clear();
        std::stringstream ss(n_list_flag);
        std::string item;
        while (std::getline(ss, item, ','))
          c.n_list.push_back(std::stoi(item));
        return c;
      }();
    cfg.validate();

    const std::string dir = resolve_output_dir(cfg, out_dir_flag);
    ensure_dir(dir);

    if (basis_cmd->parsed()) return run_basis(cfg, dir, dump_system);
    if (project_cmd->parsed()) return run_project(cfg, dir, project_function);
    if (forward_cmd->parsed()) return run_forward(cfg, dir);
    if (residual_cmd->parsed()) return run_residual(cfg, dir);
    return 2;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
