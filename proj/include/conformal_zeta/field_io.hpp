#pragma once

#include <string>

#include "json.hpp"

#include "conformal_zeta/zonal.hpp"

namespace cz {

// Field files:
//   {"n": 4, "grid": {"kind": "gauss-jacobi", "N": 256}, "values": [...]}
// or the same with "coeffs" (orthonormal Gegenbauer coefficients, l = 0, 1, ...; may be
// shorter than N). Exactly one of "values" and "coeffs" must be present.

ZonalField field_from_json(const nlohmann::json& j);
nlohmann::json field_to_json(const ZonalField& f, bool as_coeffs = false);

ZonalField read_field(const std::string& path);
void write_field(const std::string& path, const ZonalField& f, bool as_coeffs = false);

/// Reads a field and checks that it lives on the expected dimension (and grid, if given).
ZonalField read_field_for(const std::string& path, int n, const GridPtr& grid = nullptr);

}  // namespace cz
