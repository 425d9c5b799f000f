// Command line front end.  All numerics live in the library; this file
// only parses flags into a RunConfig and writes the resulting CSV.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "wsq/runs.hpp"

namespace {

int emit(const wsq::RunOutput& out, const std::string& path) {
  for (const auto& note : out.notes) std::cerr << "note: " << note << '\n';
  if (path.empty()) {
    std::cout << out.csv;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return 3;
  }
  f << out.csv;
  return f.good() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubature for weakly singular integrals and capacitance runs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a file");

  wsq::RunConfig cfg;
  std::string out_path;
  std::string shape_str = "ellipsoid";

  const std::map<std::string, wsq::Family> fam_map{
      {"periodic", wsq::Family::Periodic},
      {"planar-holder", wsq::Family::PlanarHolder},
      {"planar-smooth", wsq::Family::PlanarSmooth}};
  const std::map<std::string, wsq::NearPolicy> near_map{
      {"per-cell", wsq::NearPolicy::PerCell},
      {"merged", wsq::NearPolicy::MergedDelta}};
  const std::map<std::string, wsq::SumPolicy> policy_map{
      {"pairwise", wsq::SumPolicy::PairwiseDeterministic},
      {"compensated", wsq::SumPolicy::SequentialCompensated}};

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write CSV here instead of stdout");
    cmd->add_option("--policy", cfg.policy, "summation order")
        ->transform(CLI::CheckedTransformer(policy_map, CLI::ignore_case));
  };

  auto* cap = app.add_subcommand("capacitance",
                                 "double layer capacitance of a closed body");
  add_common(cap);
  cap->add_option("--shape", shape_str, "ellipsoid or table")
      ->check(CLI::IsMember({"ellipsoid", "table"}));
  cap->add_option("--a", cfg.shape.a, "ellipsoid semi axis a");
  cap->add_option("--b", cfg.shape.b, "ellipsoid semi axis b");
  cap->add_option("--c", cfg.c_list, "semi axis c values to sweep")
      ->delimiter(',');
  cap->add_option("--radial-table", cfg.shape.table_path,
                  "radius table file for --shape table");
  cap->add_option("--n", cfg.n_list, "longitude counts")->delimiter(',');
  cap->add_option("--m", cfg.m_list, "latitude counts, paired with --n")
      ->delimiter(',');
  cap->add_option("--iters", cfg.iters, "density iterations after the start");
  cap->add_option("--eps0", cfg.eps0, "permittivity constant");
  cap->add_option("--threads", cfg.threads, "worker threads")
      ->check(CLI::Range(1, 256));
  cap->add_flag("--no-timing", cfg.no_timing,
                "omit the wall clock column from the CSV");

  auto* conv = app.add_subcommand("convergence",
                                  "error against a refined reference");
  add_common(conv);
  conv->add_option("--family", cfg.family, "rule family")
      ->transform(CLI::CheckedTransformer(fam_map, CLI::ignore_case));
  conv->add_option("--n", cfg.n_list, "grid sizes")->delimiter(',');
  conv->add_option("--lambda", cfg.lambda, "kernel exponent in (0,1)");
  conv->add_option("--alpha", cfg.alpha, "Holder exponent in (0,1]");
  conv->add_option("--r", cfg.r, "spline degree for planar-smooth");
  conv->add_option("--near", cfg.near, "near cell handling")
      ->transform(CLI::CheckedTransformer(near_map, CLI::ignore_case));
  conv->add_option("--i", cfg.i, "periodic node index, default n/2");
  conv->add_option("--j", cfg.j, "periodic node index, default n/2");
  conv->add_option("--t1", cfg.t1, "planar evaluation point, first");
  conv->add_option("--t2", cfg.t2, "planar evaluation point, second");
  conv->add_option("--oracle-tol", cfg.oracle_tol, "reference tolerance");
  conv->add_option("--m-cap", cfg.m_cap, "Gauss order cap");

  auto* wts = app.add_subcommand("weights", "dump a cubature weight table");
  add_common(wts);
  wts->add_option("--family", cfg.family, "periodic or planar-holder")
      ->transform(CLI::CheckedTransformer(fam_map, CLI::ignore_case));
  wts->add_option("--n", cfg.n_list, "grid size")->delimiter(',');
  wts->add_option("--lambda", cfg.lambda, "kernel exponent in (0,1)");
  wts->add_option("--alpha", cfg.alpha, "Holder exponent in (0,1]");
  wts->add_option("--i", cfg.i, "periodic node index, default n/2");
  wts->add_option("--j", cfg.j, "periodic node index, default n/2");
  wts->add_option("--t1", cfg.t1, "planar evaluation point, first");
  wts->add_option("--t2", cfg.t2, "planar evaluation point, second");
  wts->add_option("--near", cfg.near, "near cell handling")
      ->transform(CLI::CheckedTransformer(near_map, CLI::ignore_case));
  wts->add_option("--m-cap", cfg.m_cap, "Gauss order cap");

  auto* cst = app.add_subcommand("constants",
                                 "sharp constants used by the error bounds");
  add_common(cst);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (cap->parsed()) {
    cfg.command = wsq::Command::Capacitance;
    cfg.shape.kind = shape_str == "table" ? wsq::ShapeSpec::Kind::Table
                                          : wsq::ShapeSpec::Kind::Ellipsoid;
  } else if (conv->parsed()) {
    cfg.command = wsq::Command::Convergence;
  } else if (wts->parsed()) {
    cfg.command = wsq::Command::Weights;
  } else {
    cfg.command = wsq::Command::Constants;
  }

  try {
    return emit(wsq::run(cfg), out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
