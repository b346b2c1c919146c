#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chemflow/field.hpp"

namespace chemflow {

/// Binary field container. Layout:
///   magic "CHFL", version u32, dim u32, points per axis u32 x dim,
///   side lengths f64 x dim, field count u32, then per field a
///   u32-length-prefixed UTF-8 name, then each field's samples as
///   row-major little-endian f64. Round trips are bit-exact.
void write_snapshot(const std::string& path, const GridSpec& grid,
                    const std::vector<std::pair<std::string, ScalarField>>& fields);

std::vector<std::pair<std::string, ScalarField>> read_snapshot(const std::string& path,
                                                               GridSpec& grid_out);

}  // namespace chemflow
