// cfiebem: experiment harness for the preconditioned CFIE solver.

#include <iostream>

#include "CLI11.hpp"
#include "cfiebem/blas_runtime.hpp"
#include "commands.hpp"

using namespace cfiebem::cli;

int main(int argc, char** argv) {
  cfiebem::reexec_with_preferred_blas_core(argv);
  CLI::App app{"Boundary-element experiments for the resonance-free preconditioned CFIE"};
  app.require_subcommand(1);

  std::string config_path, out_dir, mesh_out, dump_dir;
  std::vector<std::string> sets;
  int jobs = 1;
  app.add_option("--config", config_path, "INI-style configuration file")->check(CLI::ExistingFile);
  app.add_option("--set", sets, "override a config key, e.g. --set mesh.h=0.2 (repeatable)");
  app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  app.add_option("--jobs", jobs, "worker threads for sweep points and assembly")->check(CLI::PositiveNumber);
  app.add_option("--mesh-out", mesh_out, "write the mesh(es) in OFF format to this path");
  app.add_option("--dump-matrices", dump_dir, "write assembled matrices below this directory");

  const char* help[] = {"print mesh statistics",
                        "err_h against the Mie series over h and kappa'/kappa",
                        "condition numbers over the meshwidth",
                        "condition numbers over the wavenumber",
                        "condition numbers over the coupling parameter",
                        "check the Mie reference and write its field",
                        "assemble one system and write its matrices"};
  for (std::size_t i = 0; i < command_names().size(); ++i)
    app.add_subcommand(command_names()[i], help[i])->fallthrough();

  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  try {
    if (!config_path.empty()) apply_overrides(cfg, read_ini(config_path));
    apply_overrides(cfg, parse_overrides(sets));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  cfg.jobs = jobs;
  cfg.mesh_out = mesh_out;
  cfg.dump_dir = dump_dir;

  return run_command(app.get_subcommands().front()->get_name(), cfg, std::cout);
}
