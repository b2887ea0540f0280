#pragma once

#include <map>
#include <string>
#include <vector>

#include "cfiebem/analysis.hpp"

namespace cfiebem::cli {

// Resolved run configuration. Every field has a default; an INI file and
// `--set section.key=value` overrides are applied on top, in that order.
struct RunConfig {
  Geometry geometry = Geometry::sphere;
  double size = 1.0;  // sphere radius or cube edge length

  double h = 0.15;
  std::vector<double> h_values;  // empty: per-command default

  double kappa = 4.4934;
  std::vector<double> kappa_values;  // empty: clustered around the resonance table
  double kappa_prime_ratio = 1.0;
  std::vector<double> kappa_prime_ratios{0.1, 1.0, 5.0, 10.0};

  // eta = eta_value * kappa^2 when eta_mode is "ratio", eta_value itself when "absolute"
  std::string eta_mode = "ratio";
  double eta_value = -1.0;
  int eta_min_exponent = -4;
  int eta_max_exponent = 4;

  double tol_convergence = 1e-12;
  double tol_sweep = 1e-8;
  int max_iter = 1000;

  QuadratureOptions quad;

  int eval_points = 5000;
  double eval_radius = 2.0;
  int mie_points = 200;
  double mie_tolerance = 1e-8;

  std::string out_dir = "out";
  int jobs = 1;
  std::string mesh_out;
  std::string dump_dir;

  [[nodiscard]] double eta_for(double k) const { return eta_mode == "absolute" ? eta_value : eta_value * k * k; }
  void validate() const;
  // flat key -> value echo in a fixed order, used for the manifest
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> echo() const;
};

// key/value pairs in "section.key" form
using Overrides = std::map<std::string, std::string>;

Overrides read_ini(const std::string& path);
Overrides parse_overrides(const std::vector<std::string>& assignments);
void apply_overrides(RunConfig& cfg, const Overrides& kv);

std::vector<double> parse_list(const std::string& text);
std::string format_list(const std::vector<double>& v);

std::vector<double> default_h_values(Geometry g);
std::vector<double> default_convergence_h_values();
std::vector<double> default_kappa_values(Geometry g);

}  // namespace cfiebem::cli
