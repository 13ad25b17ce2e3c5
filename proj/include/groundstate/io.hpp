#pragma once

#include <string>

#include "groundstate/domain.hpp"

namespace groundstate {

// Field dump format: raw little-endian float64, row-major with axis 0
// slowest, plus a JSON sidecar {dimension, side_lengths, nodes_per_axis,
// boundary} describing the grid.

void write_field(const Field& f, const std::string& data_path, const std::string& sidecar_path);
Field read_field(const std::string& data_path, const std::string& sidecar_path);

std::string boundary_name(Boundary bc);
Boundary parse_boundary(const std::string& name);

} // namespace groundstate
