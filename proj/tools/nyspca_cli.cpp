#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nyspca/errors.hpp"
#include "nyspca/harness.hpp"
#include "nyspca/io.hpp"
#include "nyspca/kernels.hpp"
#include "nyspca/matcore.hpp"
#include "nyspca/specapprox.hpp"
#include "nyspca/subspace.hpp"

using namespace nyspca;

namespace {

struct GridFlags {
  std::string in, model, l_grid = "default", methods = "v_nys,v_cs", route = "stable";
  std::string csv, plot;
  std::size_t n = 0, p = 0;
  std::vector<std::size_t> d{5};
  std::vector<std::uint64_t> seeds{1};
  bool bounds = false;
  bool no_center = false;
};

void add_grid_flags(CLI::App* cmd, GridFlags& f) {
  auto* in = cmd->add_option("--in", f.in, "data matrix (DMAT or .csv)");
  auto* model = cmd->add_option("--model", f.model, "random:<x> or band:<b>");
  in->excludes(model);
  cmd->add_option("--n", f.n, "observations (with --model)");
  cmd->add_option("--p", f.p, "variables (with --model)");
  cmd->add_option("--d", f.d, "subspace dimensions")->delimiter(',');
  cmd->add_option("--l-grid", f.l_grid, "'default' or a comma list of l values");
  cmd->add_option("--methods", f.methods, "comma list of method tags");
  cmd->add_option("--seeds", f.seeds, "comma list of seeds")->delimiter(',');
  cmd->add_option("--route", f.route, "Nyström route: space|stable")->check(CLI::IsMember({"space", "stable"}));
  cmd->add_option("--csv", f.csv, "results CSV path ('-' for stdout)");
  cmd->add_option("--plot", f.plot, "SVG path for relative error vs l (first d)");
  cmd->add_flag("--bounds", f.bounds, "evaluate error bounds for v_nys / v_cs");
  cmd->add_flag("--no-center", f.no_center, "use the data as given");
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

ExperimentConfig make_config(const GridFlags& f) {
  ExperimentConfig cfg;
  if (!f.in.empty()) cfg.input = f.in;
  else if (!f.model.empty()) cfg.model = parse_model(f.model);
  else throw InvalidParameter("one of --in or --model is required");
  cfg.n = f.n;
  cfg.p = f.p;
  cfg.d_list = f.d;
  if (f.l_grid == "default") {
    cfg.l_rule = LRule::default_grid;
  } else {
    cfg.l_rule = LRule::explicit_list;
    for (const auto& t : split(f.l_grid)) {
      try {
        cfg.l_list.push_back(std::stoul(t));
      } catch (const std::exception&) {
        throw InvalidParameter("bad l value '" + t + "'");
      }
    }
  }
  for (const auto& t : split(f.methods)) cfg.methods.push_back(method_from_string(t));
  cfg.seeds = f.seeds;
  cfg.route = f.route == "space" ? NystromRoute::space : NystromRoute::stable;
  cfg.with_bounds = f.bounds;
  cfg.center = !f.no_center;
  return cfg;
}

void emit_rows(const GridFlags& f, const std::vector<ResultRow>& rows) {
  if (f.csv == "-" || f.csv.empty()) {
    write_results_csv(std::cout, rows);
  } else {
    std::ofstream out(f.csv);
    if (!out) throw IoError("cannot open " + f.csv + " for writing");
    write_results_csv(out, rows);
  }
  if (!f.plot.empty()) write_svg_plot(f.plot, rows, f.d.front());
}

Mat load_centered(const std::string& path, bool center) {
  Mat x = load_matrix(path);
  return center ? center_columns(x) : x;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nyström and column-sampling approximate PCA"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (default: NYSPCA_THREADS or all cores)");

  // simgen
  auto* simgen = app.add_subcommand("simgen", "sample X with rows i.i.d. N(0, Ω⁻¹)");
  std::size_t sg_n = 0, sg_p = 0;
  std::string sg_model, sg_out, sg_omega;
  std::uint64_t sg_seed = 1;
  simgen->add_option("--p", sg_p, "variables")->required();
  simgen->add_option("--n", sg_n, "observations")->required();
  simgen->add_option("--model", sg_model, "random:<x> or band:<b>")->required();
  simgen->add_option("--seed", sg_seed, "seed");
  simgen->add_option("--out", sg_out, "output matrix")->required();
  simgen->add_option("--omega-out", sg_omega, "also write the repaired precision matrix");

  // pca
  auto* pca = app.add_subcommand("pca", "exact leading-d principal axes");
  std::string pca_in, pca_out;
  std::size_t pca_d = 0;
  bool pca_no_center = false;
  pca->add_option("--in", pca_in, "data matrix")->required();
  pca->add_option("--d", pca_d, "dimension")->required();
  pca->add_option("--out", pca_out, "p x d output")->required();
  pca->add_flag("--no-center", pca_no_center, "use the data as given");

  // approx
  auto* approx = app.add_subcommand("approx", "one sketch-based approximation");
  std::string ap_in, ap_method, ap_route = "stable", ap_out;
  std::size_t ap_l = 0, ap_d = 0;
  std::uint64_t ap_seed = 1;
  bool ap_no_center = false;
  approx->add_option("--in", ap_in, "data matrix")->required();
  approx->add_option("--method", ap_method, "method tag")->required();
  approx->add_option("--l", ap_l, "sample size")->required();
  approx->add_option("--d", ap_d, "dimension")->required();
  approx->add_option("--seed", ap_seed, "selection seed");
  approx->add_option("--route", ap_route, "space|stable")->check(CLI::IsMember({"space", "stable"}));
  approx->add_option("--out", ap_out, "basis output")->required();
  approx->add_flag("--no-center", ap_no_center, "use the data as given");

  // compare
  auto* compare = app.add_subcommand("compare", "experiment grid with Δ and relative errors");
  GridFlags cmp;
  add_grid_flags(compare, cmp);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "full and coherence bounds for one selection");
  std::string bd_in, bd_csv;
  std::size_t bd_d = 0, bd_l = 0;
  std::uint64_t bd_seed = 1;
  bool bd_no_center = false;
  bounds->add_option("--in", bd_in, "data matrix")->required();
  bounds->add_option("--d", bd_d, "dimension")->required();
  bounds->add_option("--l", bd_l, "sample size")->required();
  bounds->add_option("--seed", bd_seed, "selection seed");
  bounds->add_option("--csv", bd_csv, "output CSV (default stdout)");
  bounds->add_flag("--no-center", bd_no_center, "use the data as given");

  // bench
  auto* bench = app.add_subcommand("bench", "median-of-k timing table");
  GridFlags bf;
  std::size_t runs = 4;
  bench->add_option("--runs", runs, "repetitions per cell")->check(CLI::PositiveNumber);
  add_grid_flags(bench, bf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (threads > 0) kernels::set_threads(threads);

    if (*simgen) {
      const auto req = parse_model(sg_model);
      const auto [omega, spec] = make_precision(req, sg_p, sg_seed);
      save_matrix(sg_out, sample_mvn(sg_n, omega, sg_seed));
      if (!sg_omega.empty()) save_matrix(sg_omega, omega);
      std::cout << "model=" << req.label() << " n=" << sg_n << " p=" << sg_p << " seed=" << sg_seed
                << " edges=" << count_edges(omega) << " pd_shift=" << format_double(spec.pd_shift)
                << '\n';
    } else if (*pca) {
      const Mat x = load_centered(pca_in, !pca_no_center);
      const Basis b = exact_pca(x, pca_d);
      save_matrix(pca_out, b.b);
      std::cout << "eigenvalues:";
      for (double v : b.eigvals) std::cout << ' ' << format_double(v);
      std::cout << '\n';
    } else if (*approx) {
      const Mat x = load_centered(ap_in, !ap_no_center);
      const Method m = method_from_string(ap_method);
      if (m == Method::exact) throw InvalidParameter("use the pca subcommand for the exact method");
      const Axis axis = sample_axis(m);
      const Selection sel = sample_uniform(axis == Axis::columns ? x.cols() : x.rows(), ap_l, ap_seed, axis);
      const Basis b = truncate(approximate(m, x, sel, ap_route == "space" ? NystromRoute::space
                                                                          : NystromRoute::stable),
                               ap_d);
      save_matrix(ap_out, b.b);
      const Basis exact = target_of(m) == Target::right ? exact_pca(x, ap_d) : exact_pca_left(x, ap_d);
      std::cout << "method=" << to_string(m) << " l=" << ap_l << " d=" << ap_d
                << " delta=" << format_double(basis_distance(b, exact, ap_d)) << '\n';
    } else if (*compare) {
      emit_rows(cmp, run_experiment(make_config(cmp)));
    } else if (*bounds) {
      const Mat x = load_centered(bd_in, !bd_no_center);
      const Selection sel = sample_uniform(x.cols(), bd_l, bd_seed, Axis::columns);
      const auto rows = evaluate_bounds(x, sel, bd_d);
      if (bd_csv.empty() || bd_csv == "-") {
        write_bounds_csv(std::cout, rows);
      } else {
        std::ofstream out(bd_csv);
        if (!out) throw IoError("cannot open " + bd_csv + " for writing");
        write_bounds_csv(out, rows);
      }
    } else if (*bench) {
      const auto rows = time_methods(make_config(bf), runs);
      std::cout << timing_table(rows);
      if (!bf.csv.empty()) emit_rows(bf, rows);
    }
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
