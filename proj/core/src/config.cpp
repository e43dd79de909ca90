#include "kband/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "kband/basis.hpp"

namespace kband {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw config_error("line " + std::to_string(line) + ": bad number '" + v + "'");
  }
  if (pos != v.size())
    throw config_error("line " + std::to_string(line) + ": bad number '" + v + "'");
  return out;
}

long parse_int(const std::string& v, int line) {
  std::size_t pos = 0;
  long out;
  try {
    out = std::stol(v, &pos);
  } catch (const std::exception&) {
    throw config_error("line " + std::to_string(line) + ": bad integer '" + v + "'");
  }
  if (pos != v.size())
    throw config_error("line " + std::to_string(line) + ": bad integer '" + v + "'");
  return out;
}

std::vector<int> parse_int_list(const std::string& v, int line) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw config_error("line " + std::to_string(line) + ": empty list entry");
    out.push_back(static_cast<int>(parse_int(item, line)));
  }
  if (out.empty())
    throw config_error("line " + std::to_string(line) + ": empty list");
  return out;
}

} // namespace

void RunConfig::validate() const {
  if (!(0.0 < k_lo && k_lo < k_hi))
    throw config_error("band degenerate: require 0 < band.k_lo < band.k_hi");
  if (basis_n < 1 || basis_n > kDefaultBasisCap)
    throw config_error("basis.n out of range [1, " +
                       std::to_string(kDefaultBasisCap) + "]");
  if (n_list.empty())
    throw config_error("basis.n_list must not be empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1 || n_list[i] > kDefaultBasisCap)
      throw config_error("basis.n_list entry out of range");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw config_error("basis.n_list must be strictly increasing");
  }
  if (grid_R <= 0.0) throw config_error("grid.R must be positive");
  if (grid_n < 3) throw config_error("grid.n_per_axis must be at least 3");
  if (bump_contrast < 0.0) throw config_error("medium.contrast must be >= 0");
  if (bump_radius <= 0.0) throw config_error("medium.radius must be positive");
  if (std::max(std::abs(bump_cx), std::abs(bump_cy)) + bump_radius >= grid_R)
    throw config_error(
        "support touches boundary: bump must lie strictly inside the domain");
  if (support_n < 1 || support_n > 64)
    throw config_error("medium.support_n must be in [1, 64]");
  if (source != "manufactured" && source != "solver")
    throw config_error("source must be 'manufactured' or 'solver'");
  if (quad_nodes < 0) throw config_error("quad.nodes must be >= 0");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(line) +
                         ": expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (val.empty())
      throw config_error("line " + std::to_string(line) + ": empty value for '" +
                         key + "'");

    if (key == "band.k_lo") cfg.k_lo = parse_double(val, line);
    else if (key == "band.k_hi") cfg.k_hi = parse_double(val, line);
    else if (key == "basis.n") cfg.basis_n = static_cast<int>(parse_int(val, line));
    else if (key == "basis.n_list") cfg.n_list = parse_int_list(val, line);
    else if (key == "grid.R") cfg.grid_R = parse_double(val, line);
    else if (key == "grid.n_per_axis") cfg.grid_n = static_cast<int>(parse_int(val, line));
    else if (key == "medium.center_x") cfg.bump_cx = parse_double(val, line);
    else if (key == "medium.center_y") cfg.bump_cy = parse_double(val, line);
    else if (key == "medium.radius") cfg.bump_radius = parse_double(val, line);
    else if (key == "medium.contrast") cfg.bump_contrast = parse_double(val, line);
    else if (key == "medium.support_n") cfg.support_n = static_cast<int>(parse_int(val, line));
    else if (key == "source") cfg.source = val;
    else if (key == "quad.nodes") cfg.quad_nodes = static_cast<int>(parse_int(val, line));
    else if (key == "seed") cfg.seed = static_cast<unsigned>(parse_int(val, line));
    else if (key == "output_dir") cfg.output_dir = val;
    else
      throw config_error("line " + std::to_string(line) + ": unknown key '" +
                         key + "'");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

} // namespace kband
