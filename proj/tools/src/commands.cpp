#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

#include "cfiebem/matrix_io.hpp"
#include "cfiebem/mie.hpp"
#include "json.hpp"

#ifndef CFIEBEM_VERSION
#define CFIEBEM_VERSION "unknown"
#endif

namespace fs = std::filesystem;

namespace cfiebem::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

class Run {
 public:
  Run(std::string command, const RunConfig& cfg, std::ostream& log)
      : command_(std::move(command)), cfg_(cfg), log_(log), started_(utc_now()) {}

  void stage(const std::string& name, bool mandatory, bool ok, const std::string& detail = "") {
    stages_.push_back({name, mandatory, ok, detail});
    log_ << (ok ? "[ok]   " : mandatory ? "[FAIL] " : "[warn] ") << name << (detail.empty() ? "" : ": " + detail)
         << '\n';
  }

  void output(const fs::path& p) { outputs_.push_back(p.string()); }

  std::ostream& log() { return log_; }

  int finish() {
    bool ok = true;
    for (const Stage& s : stages_) ok = ok && (s.ok || !s.mandatory);
    nlohmann::ordered_json j;
    j["tool"] = "cfiebem";
    j["version"] = CFIEBEM_VERSION;
    j["command"] = command_;
    nlohmann::ordered_json c;
    for (const auto& [k, v] : cfg_.echo()) c[k] = v;
    j["config"] = c;
    j["started_utc"] = started_;
    j["finished_utc"] = utc_now();
    j["stages"] = nlohmann::json::array();
    for (const Stage& s : stages_)
      j["stages"].push_back({{"name", s.name}, {"mandatory", s.mandatory}, {"ok", s.ok}, {"detail", s.detail}});
    j["outputs"] = outputs_;
    j["status"] = ok ? "ok" : "failed";
    const fs::path path = fs::path(cfg_.out_dir) / (command_ + ".manifest.json");
    std::ofstream out(path);
    out << j.dump(2) << '\n';
    if (!out) {
      log_ << "[FAIL] could not write " << path.string() << '\n';
      return 1;
    }
    log_ << "manifest: " << path.string() << '\n';
    return ok ? 0 : 1;
  }

 private:
  struct Stage {
    std::string name;
    bool mandatory;
    bool ok;
    std::string detail;
  };
  std::string command_;
  const RunConfig& cfg_;
  std::ostream& log_;
  std::string started_;
  std::vector<Stage> stages_;
  std::vector<std::string> outputs_;
};

MeshPtr make_mesh(const RunConfig& cfg, double h) {
  return std::make_shared<const TriangleMesh>(cfg.geometry == Geometry::sphere ? make_sphere_mesh(cfg.size, h)
                                                                               : make_cube_mesh(cfg.size, h));
}

AssemblyOptions assembly_options(const RunConfig& cfg, int jobs) {
  AssemblyOptions opt;
  opt.quad = cfg.quad;
  opt.jobs = jobs;
  return opt;
}

PlaneWave incident(double kappa) { return PlaneWave(Vec3(1, 0, 0), Vec3(0, 0, 1), kappa); }

// Index-ordered parallel loop: results land in their slot, so output order never depends on scheduling.
template <class F>
void parallel_for(int n, int jobs, const F& f) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(jobs, n); ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) f(i);
    });
  for (std::thread& t : pool) t.join();
}

fs::path with_suffix(const std::string& path, const std::string& suffix) {
  const fs::path p(path);
  return p.parent_path() / (p.stem().string() + suffix + p.extension().string());
}

void write_mesh_if_requested(Run& run, const RunConfig& cfg, const TriangleMesh& mesh, const std::string& suffix) {
  if (cfg.mesh_out.empty()) return;
  const fs::path p = suffix.empty() ? fs::path(cfg.mesh_out) : with_suffix(cfg.mesh_out, suffix);
  try {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    write_off(mesh, p.string());
    run.output(p);
    run.stage("write mesh " + p.string(), true, true);
  } catch (const std::exception& e) {
    run.stage("write mesh " + p.string(), true, false, e.what());
  }
}

void dump_system(const fs::path& dir, const CfieSystem& sys, const ComplexDenseMatrix* efie) {
  fs::create_directories(dir);
  write_matrix((dir / "G.bin").string(), sys.G());
  write_matrix((dir / "S.bin").string(), sys.S());
  write_matrix((dir / "K.bin").string(), sys.K());
  write_matrix((dir / "C.bin").string(), sys.C());
  write_matrix((dir / "M.bin").string(), sys.M());
  write_matrix((dir / "Z.bin").string(), sys.Z());
  if (efie) write_matrix((dir / "EFIE.bin").string(), *efie);
}

void write_csv(Run& run, const RunConfig& cfg, const std::string& name, const std::vector<SweepRecord>& rows) {
  const fs::path p = fs::path(cfg.out_dir) / name;
  std::ofstream out(p);
  write_sweep_csv(rows, out);
  out.close();
  run.stage("write " + p.string(), true, static_cast<bool>(out));
  run.output(p);
}

std::string tag(const char* what, double v) { return std::string(what) + num(v); }

// One sweep sample: condition numbers of G^{-T}L and of the EFIE, GMRES counts for both.
SweepRecord skeleton(const RunConfig& cfg, double h, double kappa, double kappa_prime, double eta) {
  return SweepRecord{to_string(cfg.geometry), h, kappa, kappa_prime, eta, nan, nan, -1, -1, std::nullopt};
}

void sweep_point(const RunConfig& cfg, const MeshPtr& mesh, const std::string& dump_tag, int inner_jobs, SweepRecord& r) {
  const double kappa = r.kappa;
  const AssemblyOptions opt = assembly_options(cfg, inner_jobs);
  const CfieSystem sys = CfieSystem::assemble(mesh, Wavenumber(kappa, r.kappa_prime), CouplingParameter(r.eta), opt);
  const EfieReference efie = build_efie_reference(kappa, sys.rt0(), opt);
  r.cond_cfie = preconditioned_cond(sys);
  r.cond_efie = condition_number(efie.matrix);
  const ComplexVector b = assemble_rhs(incident(kappa), *sys.rt0(), opt.quad);
  try {
    r.iters_cfie = solve(sys, b, cfg.tol_sweep, cfg.max_iter).iterations;
  } catch (const SolveFailure&) {
  }
  const GmresResult ge = efie.solve(b, cfg.tol_sweep, cfg.max_iter);
  if (ge.converged) r.iters_efie = ge.iterations;
  if (!cfg.dump_dir.empty()) dump_system(fs::path(cfg.dump_dir) / dump_tag, sys, &efie.matrix);
}

// Runs the samples on pre-labelled rows and records per-row failures without stopping the sweep.
template <class F>
void run_samples(Run& run, const RunConfig& cfg, std::vector<SweepRecord>& rows, const F& point) {
  const int n = static_cast<int>(rows.size());
  std::vector<std::string> errors(n);
  const int inner = n == 1 ? cfg.jobs : 1;
  parallel_for(n, cfg.jobs, [&](int i) {
    try {
      point(i, inner, rows[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (int i = 0; i < n; ++i) {
    const bool solved = errors[i].empty() && rows[i].iters_cfie >= 0;
    run.stage("sample " + std::to_string(i), false, solved,
              errors[i].empty() ? (solved ? "" : "CFIE GMRES did not converge") : errors[i]);
  }
}

void cmd_mesh_info(Run& run, const RunConfig& cfg) {
  const MeshPtr mesh = make_mesh(cfg, cfg.h);
  const int euler = mesh->num_vertices() - mesh->num_edges() + mesh->num_triangles();
  run.log() << "geometry   " << to_string(cfg.geometry) << " size " << num(cfg.size) << '\n'
            << "h_target   " << num(cfg.h) << '\n'
            << "meshwidth  " << num(meshwidth(*mesh)) << '\n'
            << "vertices   " << mesh->num_vertices() << '\n'
            << "edges      " << mesh->num_edges() << "  (RT0 and BC dofs)\n"
            << "triangles  " << mesh->num_triangles() << '\n'
            << "area       " << num(mesh->total_area()) << '\n'
            << "euler      " << euler << '\n';
  run.stage("mesh", true, euler == 2, euler == 2 ? "" : "Euler characteristic is not 2");
  write_mesh_if_requested(run, cfg, *mesh, "");
}

void cmd_convergence(Run& run, const RunConfig& cfg) {
  if (cfg.geometry != Geometry::sphere) {
    run.stage("geometry", true, false, "convergence needs the sphere (Mie reference)");
    return;
  }
  const std::vector<double> hs = cfg.h_values.empty() ? default_convergence_h_values() : cfg.h_values;
  const double k = cfg.kappa;
  const std::vector<Vec3> pts = eval_points_sphere(cfg.eval_points, cfg.eval_radius * cfg.size);
  const std::vector<FieldSample> exact = eval_mie(build_mie(k, cfg.size), pts);
  std::vector<MeshPtr> meshes;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    meshes.push_back(make_mesh(cfg, hs[i]));
    write_mesh_if_requested(run, cfg, *meshes.back(), hs.size() > 1 ? "-" + tag("h", hs[i]) : "");
  }
  const std::size_t nr = cfg.kappa_prime_ratios.size();
  std::vector<SweepRecord> rows;
  for (double h : hs)
    for (double ratio : cfg.kappa_prime_ratios) rows.push_back(skeleton(cfg, h, k, ratio * k, cfg.eta_for(k)));
  run_samples(run, cfg, rows, [&](int i, int inner, SweepRecord& r) {
    const AssemblyOptions opt = assembly_options(cfg, inner);
    const CfieSystem sys =
        CfieSystem::assemble(meshes[i / nr], Wavenumber(k, r.kappa_prime), CouplingParameter(r.eta), opt);
    if (!cfg.dump_dir.empty())
      dump_system(fs::path(cfg.dump_dir) / (tag("h", r.h) + "_" + tag("ratio", r.kappa_prime / k)), sys, nullptr);
    const CfieSolution s =
        solve(sys, assemble_rhs(incident(k), *sys.rt0(), opt.quad), cfg.tol_convergence, cfg.max_iter);
    r.iters_cfie = s.iterations;
    PotentialOptions popt;
    popt.jobs = inner;
    r.err_h = avg_pointwise_error(eval_scattered(s, sys, pts, popt), exact);
  });
  write_csv(run, cfg, "convergence.csv", rows);
}

void cmd_sweep_h(Run& run, const RunConfig& cfg) {
  const std::vector<double> hs = cfg.h_values.empty() ? default_h_values(cfg.geometry) : cfg.h_values;
  std::vector<MeshPtr> meshes;
  for (double h : hs) {
    meshes.push_back(make_mesh(cfg, h));
    write_mesh_if_requested(run, cfg, *meshes.back(), hs.size() > 1 ? "-" + tag("h", h) : "");
  }
  const double k = cfg.kappa;
  std::vector<SweepRecord> rows;
  for (double h : hs) rows.push_back(skeleton(cfg, h, k, cfg.kappa_prime_ratio * k, cfg.eta_for(k)));
  run_samples(run, cfg, rows, [&](int i, int inner, SweepRecord& r) {
    sweep_point(cfg, meshes[i], tag("h", r.h), inner, r);
  });
  write_csv(run, cfg, "sweep_h.csv", rows);
}

void cmd_sweep_kappa(Run& run, const RunConfig& cfg) {
  const std::vector<double> ks = cfg.kappa_values.empty() ? default_kappa_values(cfg.geometry) : cfg.kappa_values;
  const MeshPtr mesh = make_mesh(cfg, cfg.h);
  write_mesh_if_requested(run, cfg, *mesh, "");
  std::vector<SweepRecord> rows;
  for (double k : ks) rows.push_back(skeleton(cfg, cfg.h, k, cfg.kappa_prime_ratio * k, cfg.eta_for(k)));
  run_samples(run, cfg, rows, [&](int, int inner, SweepRecord& r) {
    sweep_point(cfg, mesh, tag("kappa", r.kappa), inner, r);
  });
  write_csv(run, cfg, "sweep_kappa.csv", rows);
}

void cmd_sweep_eta(Run& run, const RunConfig& cfg) {
  const double k = cfg.kappa, kp = cfg.kappa_prime_ratio * k;
  const MeshPtr mesh = make_mesh(cfg, cfg.h);
  write_mesh_if_requested(run, cfg, *mesh, "");
  std::vector<double> etas;
  for (double sign : {-1.0, 1.0})
    for (int e = cfg.eta_min_exponent; e <= cfg.eta_max_exponent; ++e) etas.push_back(sign * std::pow(10.0, e) * k * k);

  // the geometry blocks and the EFIE do not depend on eta
  const AssemblyOptions opt = assembly_options(cfg, cfg.jobs);
  const CfieSystem base = CfieSystem::assemble(mesh, Wavenumber(k, kp), CouplingParameter(etas.front()), opt);
  const EfieReference efie = build_efie_reference(k, base.rt0(), opt);
  const ComplexVector b = assemble_rhs(incident(k), *base.rt0(), opt.quad);
  const double cond_efie = condition_number(efie.matrix);
  const GmresResult ge = efie.solve(b, cfg.tol_sweep, cfg.max_iter);
  run.stage("EFIE reference", false, ge.converged, ge.converged ? "" : "EFIE GMRES did not converge");

  std::vector<SweepRecord> rows;
  for (double eta : etas) {
    rows.push_back(skeleton(cfg, cfg.h, k, kp, eta));
    rows.back().cond_efie = cond_efie;
    rows.back().iters_efie = ge.converged ? ge.iterations : -1;
  }
  run_samples(run, cfg, rows, [&](int, int, SweepRecord& r) {
    const CfieSystem sys = base.with_eta(CouplingParameter(r.eta));
    r.cond_cfie = preconditioned_cond(sys);
    try {
      r.iters_cfie = solve(sys, b, cfg.tol_sweep, cfg.max_iter).iterations;
    } catch (const SolveFailure&) {
    }
    if (!cfg.dump_dir.empty()) dump_system(fs::path(cfg.dump_dir) / tag("eta", r.eta), sys, &efie.matrix);
  });
  write_csv(run, cfg, "sweep_eta.csv", rows);
}

void cmd_mie_validate(Run& run, const RunConfig& cfg) {
  if (cfg.geometry != Geometry::sphere) {
    run.stage("geometry", true, false, "mie-validate needs the sphere");
    return;
  }
  const double k = cfg.kappa;
  const MieSolution sol = build_mie(k, cfg.size);
  const PlaneWave w = incident(k);

  const std::vector<Vec3> surf = eval_points_sphere(cfg.mie_points, cfg.size);
  const auto scat = eval_mie(sol, surf);
  double bc = 0.0;
  for (std::size_t i = 0; i < surf.size(); ++i)
    bc = std::max(bc, cross(scat[i].e + w.field(surf[i]), surf[i].normalized().cast<cplx>()).norm());
  run.stage("PEC boundary condition", true, bc < cfg.mie_tolerance, "max |n x e| = " + num(bc) + " over " +
                                                                        std::to_string(surf.size()) + " points");

  const auto inner = eval_mie_incident(sol, surf);
  double inc = 0.0;
  for (std::size_t i = 0; i < surf.size(); ++i) inc = std::max(inc, (inner[i].e - w.field(surf[i])).norm());
  run.stage("incident series", true, inc < cfg.mie_tolerance, "max |e_series - e_inc| = " + num(inc));

  const std::vector<Vec3> pts = eval_points_sphere(cfg.eval_points, cfg.eval_radius * cfg.size);
  const fs::path p = fs::path(cfg.out_dir) / "mie_field.csv";
  try {
    write_field_csv(eval_mie(sol, pts), p.string());
    run.output(p);
    run.stage("write " + p.string(), true, true);
  } catch (const std::exception& e) {
    run.stage("write " + p.string(), true, false, e.what());
  }
}

void cmd_dump_matrices(Run& run, const RunConfig& cfg) {
  const MeshPtr mesh = make_mesh(cfg, cfg.h);
  write_mesh_if_requested(run, cfg, *mesh, "");
  const double k = cfg.kappa;
  const AssemblyOptions opt = assembly_options(cfg, cfg.jobs);
  const CfieSystem sys =
      CfieSystem::assemble(mesh, Wavenumber(k, cfg.kappa_prime_ratio * k), CouplingParameter(cfg.eta_for(k)), opt);
  const EfieReference efie = build_efie_reference(k, sys.rt0(), opt);
  const fs::path dir = cfg.dump_dir.empty() ? fs::path(cfg.out_dir) / "matrices" : fs::path(cfg.dump_dir);
  try {
    dump_system(dir, sys, &efie.matrix);
    for (const char* m : {"G", "S", "K", "C", "M", "Z", "EFIE"}) run.output(dir / (std::string(m) + ".bin"));
    run.stage("write matrices to " + dir.string(), true, true, "N = " + std::to_string(sys.size()));
  } catch (const std::exception& e) {
    run.stage("write matrices to " + dir.string(), true, false, e.what());
  }
}

}  // namespace

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& log) {
  Run run(name, cfg, log);
  try {
    cfg.validate();
    run.stage("config", true, true);
  } catch (const std::exception& e) {
    log << "[FAIL] config: " << e.what() << '\n';
    return 1;
  }
  try {
    fs::create_directories(cfg.out_dir);
  } catch (const std::exception& e) {
    log << "[FAIL] output directory: " << e.what() << '\n';
    return 1;
  }
  try {
    if (name == "mesh-info") cmd_mesh_info(run, cfg);
    else if (name == "convergence") cmd_convergence(run, cfg);
    else if (name == "sweep-h") cmd_sweep_h(run, cfg);
    else if (name == "sweep-kappa") cmd_sweep_kappa(run, cfg);
    else if (name == "sweep-eta") cmd_sweep_eta(run, cfg);
    else if (name == "mie-validate") cmd_mie_validate(run, cfg);
    else if (name == "dump-matrices") cmd_dump_matrices(run, cfg);
    else run.stage("command", true, false, "unknown command '" + name + "'");
  } catch (const std::exception& e) {
    run.stage(name, true, false, e.what());
  }
  return run.finish();
}

}  // namespace cfiebem::cli
