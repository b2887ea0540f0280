#include "config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cfiebem::cli {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || trim(v.substr(pos)) != "") throw std::invalid_argument("config: " + key + " expects a number, got '" + v + "'");
  return d;
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != static_cast<int>(d)) throw std::invalid_argument("config: " + key + " expects an integer, got '" + v + "'");
  return static_cast<int>(d);
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double("list", item));
  }
  return out;
}

std::string format_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s;
}

Overrides read_ini(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  Overrides kv;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw std::invalid_argument("config: key '" + section + "' outside a section");
    for (const auto& [key, value] : body) kv[section + "." + key] = value.get_value<std::string>();
  }
  return kv;
}

Overrides parse_overrides(const std::vector<std::string>& assignments) {
  Overrides kv;
  for (const std::string& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || a.find('.') > eq)
      throw std::invalid_argument("override '" + a + "' is not of the form section.key=value");
    kv[trim(a.substr(0, eq))] = trim(a.substr(eq + 1));
  }
  return kv;
}

void apply_overrides(RunConfig& c, const Overrides& kv) {
  for (const auto& [key, v] : kv) {
    if (key == "geometry.shape") c.geometry = parse_geometry(v);
    else if (key == "geometry.size") c.size = to_double(key, v);
    else if (key == "mesh.h") c.h = to_double(key, v);
    else if (key == "mesh.h_values") c.h_values = parse_list(v);
    else if (key == "physics.kappa") c.kappa = to_double(key, v);
    else if (key == "physics.kappa_values") c.kappa_values = parse_list(v);
    else if (key == "physics.kappa_prime_ratio") c.kappa_prime_ratio = to_double(key, v);
    else if (key == "physics.kappa_prime_ratios") c.kappa_prime_ratios = parse_list(v);
    else if (key == "physics.eta_mode") c.eta_mode = v;
    else if (key == "physics.eta") c.eta_value = to_double(key, v);
    else if (key == "physics.eta_min_exponent") c.eta_min_exponent = to_int(key, v);
    else if (key == "physics.eta_max_exponent") c.eta_max_exponent = to_int(key, v);
    else if (key == "solver.tol_convergence") c.tol_convergence = to_double(key, v);
    else if (key == "solver.tol_sweep") c.tol_sweep = to_double(key, v);
    else if (key == "solver.max_iter") c.max_iter = to_int(key, v);
    else if (key == "quadrature.singular_order") c.quad.singular_order = to_int(key, v);
    else if (key == "quadrature.regular_order") c.quad.regular_order = to_int(key, v);
    else if (key == "quadrature.far_ratio") c.quad.far_ratio = to_double(key, v);
    else if (key == "quadrature.far_order") c.quad.far_order = to_int(key, v);
    else if (key == "evaluation.points") c.eval_points = to_int(key, v);
    else if (key == "evaluation.radius") c.eval_radius = to_double(key, v);
    else if (key == "mie.points") c.mie_points = to_int(key, v);
    else if (key == "mie.tolerance") c.mie_tolerance = to_double(key, v);
    else if (key == "output.dir") c.out_dir = v;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

void RunConfig::validate() const {
  auto positive = [](const char* what, double v) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string("config: ") + what + " must be positive");
  };
  auto unit = [](const char* what, double v) {
    if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument(std::string("config: ") + what + " must lie in (0,1)");
  };
  positive("geometry.size", size);
  positive("mesh.h", h);
  positive("physics.kappa", kappa);
  positive("physics.kappa_prime_ratio", kappa_prime_ratio);
  for (double v : h_values) positive("mesh.h_values entries", v);
  for (double v : kappa_values) positive("physics.kappa_values entries", v);
  if (kappa_prime_ratios.empty()) throw std::invalid_argument("config: physics.kappa_prime_ratios is empty");
  for (double v : kappa_prime_ratios) positive("physics.kappa_prime_ratios entries", v);
  if (eta_mode != "ratio" && eta_mode != "absolute")
    throw std::invalid_argument("config: physics.eta_mode must be 'ratio' or 'absolute'");
  if (eta_value == 0.0) throw std::invalid_argument("config: physics.eta must be nonzero");
  if (eta_min_exponent > eta_max_exponent) throw std::invalid_argument("config: empty eta exponent range");
  unit("solver.tol_convergence", tol_convergence);
  unit("solver.tol_sweep", tol_sweep);
  if (max_iter < 1) throw std::invalid_argument("config: solver.max_iter must be at least 1");
  quad.validate();
  if (eval_points < 1 || mie_points < 1) throw std::invalid_argument("config: point counts must be positive");
  positive("evaluation.radius", eval_radius);
  positive("mie.tolerance", mie_tolerance);
  if (jobs < 1) throw std::invalid_argument("--jobs must be at least 1");
  if (out_dir.empty()) throw std::invalid_argument("config: output.dir is empty");
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  return {{"geometry.shape", to_string(geometry)},
          {"geometry.size", num(size)},
          {"mesh.h", num(h)},
          {"mesh.h_values", format_list(h_values)},
          {"physics.kappa", num(kappa)},
          {"physics.kappa_values", format_list(kappa_values)},
          {"physics.kappa_prime_ratio", num(kappa_prime_ratio)},
          {"physics.kappa_prime_ratios", format_list(kappa_prime_ratios)},
          {"physics.eta_mode", eta_mode},
          {"physics.eta", num(eta_value)},
          {"physics.eta_min_exponent", std::to_string(eta_min_exponent)},
          {"physics.eta_max_exponent", std::to_string(eta_max_exponent)},
          {"solver.tol_convergence", num(tol_convergence)},
          {"solver.tol_sweep", num(tol_sweep)},
          {"solver.max_iter", std::to_string(max_iter)},
          {"quadrature.singular_order", std::to_string(quad.singular_order)},
          {"quadrature.regular_order", std::to_string(quad.regular_order)},
          {"quadrature.far_ratio", num(quad.far_ratio)},
          {"quadrature.far_order", std::to_string(quad.far_order)},
          {"evaluation.points", std::to_string(eval_points)},
          {"evaluation.radius", num(eval_radius)},
          {"mie.points", std::to_string(mie_points)},
          {"mie.tolerance", num(mie_tolerance)},
          {"output.dir", out_dir},
          {"jobs", std::to_string(jobs)},
          {"mesh_out", mesh_out},
          {"dump_matrices", dump_dir}};
}

std::vector<double> default_h_values(Geometry g) {
  if (g == Geometry::sphere) return {0.45, 0.35, 0.3, 0.2, 0.15};
  return {0.35, 0.25, 0.2, 0.15, 0.1};
}

std::vector<double> default_convergence_h_values() { return {0.45, 0.3, 0.2}; }

std::vector<double> default_kappa_values(Geometry g) {
  std::vector<double> k = g == Geometry::sphere
                              ? std::vector<double>{0.005, 0.05, 0.25, 0.5, 1.0, 1.5, 2.0, 2.4, 3.2, 3.5, 4.0, 4.28}
                              : std::vector<double>{0.01, 0.05, 0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0};
  const double top = k.back();
  for (double r : resonance_table(g, top))
    for (double d : {-0.1, -0.03, 0.0, 0.03, 0.1})
      if (r + d < top) k.push_back(r + d);
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

}  // namespace cfiebem::cli
