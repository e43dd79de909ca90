#pragma once

#include <string>
#include <vector>

#include "kband/errors.hpp"

namespace kband {

/// Run parameters shared by the CLI subcommands. Parsed from a strict
/// key = value document; every field is validated before any computation.
struct RunConfig {
  double k_lo = 1.0;
  double k_hi = 2.0;
  int basis_n = 4;
  std::vector<int> n_list = {2, 4, 6, 8};
  double grid_R = 1.0;
  int grid_n = 65;
  double bump_cx = 0.0;
  double bump_cy = 0.0;
  double bump_radius = 0.3;
  double bump_contrast = 0.5;
  int support_n = 32;
  std::string source = "manufactured"; // manufactured | solver
  int quad_nodes = 0;                  // 0 means 2 * basis_n + 8
  unsigned seed = 42;
  std::string output_dir = "out";

  int effective_quad_nodes() const {
    return quad_nodes > 0 ? quad_nodes : 2 * basis_n + 8;
  }

  void validate() const;
};

/// Parse a key = value document ('#' comments, blank lines allowed).
/// Unknown keys are rejected; errors carry the line number.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

} // namespace kband
