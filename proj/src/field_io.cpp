#include "conformal_zeta/field_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "conformal_zeta/errors.hpp"

namespace cz {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "/" + key, "missing");
  return *it;
}

int require_int(const json& j, const std::string& key, const std::string& path) {
  const auto& v = require(j, key, path);
  if (!v.is_number_integer()) throw SchemaError(path + "/" + key, "expected an integer");
  return v.get<int>();
}

std::vector<double> real_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw SchemaError(path + "/" + std::to_string(i), "expected a number");
    const double x = v[i].get<double>();
    if (!std::isfinite(x)) throw SchemaError(path + "/" + std::to_string(i), "non-finite value");
    out.push_back(x);
  }
  return out;
}

}  // namespace

ZonalField field_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("/", "expected an object");
  const int n = require_int(j, "n", "");
  if (n < 4 || n % 2 != 0) throw SchemaError("/n", "dimension must be even and >= 4");
  const auto& g = require(j, "grid", "");
  const auto& kind = require(g, "kind", "/grid");
  if (!kind.is_string() || kind.get<std::string>() != "gauss-jacobi") {
    throw SchemaError("/grid/kind", "expected \"gauss-jacobi\"");
  }
  const int N = require_int(g, "N", "/grid");
  if (N < 16) throw SchemaError("/grid/N", "grid size must be >= 16");
  const bool has_values = j.contains("values");
  const bool has_coeffs = j.contains("coeffs");
  if (has_values == has_coeffs) throw SchemaError("/", "exactly one of \"values\" and \"coeffs\" is required");
  const auto grid = make_grid(n, N);
  if (has_values) {
    auto v = real_array(j["values"], "/values");
    if (static_cast<int>(v.size()) != N) {
      throw SchemaError("/values", "expected " + std::to_string(N) + " values, got " + std::to_string(v.size()));
    }
    return ZonalField(grid, std::move(v));
  }
  auto c = real_array(j["coeffs"], "/coeffs");
  if (c.empty() || static_cast<int>(c.size()) > N) {
    throw SchemaError("/coeffs", "expected between 1 and " + std::to_string(N) + " coefficients");
  }
  return ZonalField::from_coeffs(grid, c);
}

json field_to_json(const ZonalField& f, bool as_coeffs) {
  json j;
  j["n"] = f.grid().dimension();
  j["grid"] = {{"kind", "gauss-jacobi"}, {"N", f.grid().size()}};
  if (as_coeffs) {
    j["coeffs"] = f.coeffs();
  } else {
    j["values"] = std::vector<double>(f.values().begin(), f.values().end());
  }
  return j;
}

ZonalField read_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open field file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError("/", std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return field_from_json(j);
}

void write_field(const std::string& path, const ZonalField& f, bool as_coeffs) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write field file " + path);
  out << field_to_json(f, as_coeffs).dump(2) << '\n';
}

ZonalField read_field_for(const std::string& path, int n, const GridPtr& grid) {
  auto f = read_field(path);
  if (f.grid().dimension() != n) {
    throw GridMismatch(path + ": field has n=" + std::to_string(f.grid().dimension()) +
                       " but n=" + std::to_string(n) + " was requested");
  }
  if (grid && !grid->same_as(f.grid())) {
    throw GridMismatch(path + ": grid N=" + std::to_string(f.grid().size()) +
                       " does not match N=" + std::to_string(grid->size()));
  }
  return f;
}

}  // namespace cz
