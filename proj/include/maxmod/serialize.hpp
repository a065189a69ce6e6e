#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "maxmod/ratio_measure.hpp"
#include "maxmod/recurrence.hpp"
#include "maxmod/symbolfield.hpp"

namespace maxmod {

using Json = nlohmann::json;

// complex numbers as [re, im]; polynomials as ascending coefficient arrays
Json to_json(Complex z);
Complex complex_from_json(const Json& j);
Json to_json(const ComplexPoly& p);
ComplexPoly poly_from_json(const Json& j);

Json to_json(const RecurrenceSpec& spec);
RecurrenceSpec recurrence_from_json(const Json& j);

Json to_json(const SymbolEquation& sym);
SymbolEquation symbol_from_json(const Json& j);

GridSpec grid_from_json(const Json& j);
Json to_json(const GridSpec& g);

Json to_json(const ResidueMeasure& m);

/// FNV-1a over the canonical (sorted-key) dump; embedded into outputs for
/// reproducibility checks.
std::uint64_t config_hash(const Json& config);
std::string hash_hex(std::uint64_t h);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace maxmod
