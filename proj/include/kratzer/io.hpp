#pragma once

#include <istream>
#include <string>

#include <json.hpp>

#include "kratzer/correction.hpp"
#include "kratzer/diagnostics.hpp"
#include "kratzer/fitting.hpp"
#include "kratzer/potential.hpp"
#include "kratzer/solver.hpp"

namespace kratzer::io {

using nlohmann::json;

// 12 significant digits, '.' decimal separator regardless of locale.
std::string format_number(double x);
double round_significant(double x);

// {"family": name, "params": {name: number}} plus, for corrected_general,
// "coefficients", "screening" and optional "additive". Numbers keep full
// precision so a spec reloads bit-identically.
json to_json(const PotentialSpec& spec);
PotentialSpec spec_from_json(const json& doc);

struct ModelDocument {
  PotentialSpec spec;
  bool corrected = false;  // optional top-level "corrected" flag
};
ModelDocument model_from_json(const json& doc);

json to_json(const FlawReport& report);
json to_json(const ValidationReport& report);
json to_json(const Spectrum& spectrum);
json to_json(const FitResult& result, Family family);

/// Columns n, l, energy[, weight]; an optional header row and '#' comments.
SpectrumData read_spectrum_csv(std::istream& in);

json parse_json(std::istream& in);

}  // namespace kratzer::io
