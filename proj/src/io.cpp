#include "kratzer/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "kratzer/error.hpp"

namespace kratzer::io {

namespace {

json number_or_null(const std::optional<double>& x) {
  if (!x) return nullptr;
  return round_significant(*x);
}

double read_number(const json& value, const std::string& where) {
  if (!value.is_number()) throw Error(ErrorKind::Load, where + " must be a number");
  return value.get<double>();
}

const json& require_object(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end() || !it->is_object()) {
    throw Error(ErrorKind::Load, std::string("missing object '") + key + "'");
  }
  return *it;
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || item.key() == a;
    if (!known) throw Error(ErrorKind::Load, "unknown key '" + item.key() + "' in " + where);
  }
}

json params_to_json(const PotentialSpec& spec) {
  json params = json::object();
  for (auto name : parameter_names(spec.family())) {
    params[std::string(name)] = get_parameter(spec.params(), name);
  }
  return params;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_field(const std::string& text, T& out) {
  const auto* begin = text.data();
  const auto* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

std::string format_number(double x) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), x, std::chars_format::general, 12);
  if (ec != std::errc{}) return "nan";
  return std::string(buffer.data(), ptr);
}

double round_significant(double x) {
  if (!std::isfinite(x)) return x;
  double out = 0.0;
  const auto text = format_number(x);
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

json to_json(const PotentialSpec& spec) {
  json doc;
  doc["family"] = std::string(to_string(spec.family()));
  doc["params"] = params_to_json(spec);
  if (spec.family() != Family::CorrectedGeneral) return doc;

  doc["coefficients"] = {{"a", spec.coefficients().a}, {"b", spec.coefficients().b}};
  const auto* f = spec.screening().analytic();
  if (!f) throw Error(ErrorKind::NotApplicable, "custom screening functions cannot be serialized");
  doc["screening"] = {{"offset", f->offset}, {"scale", f->scale}, {"decay", f->decay}, {"frequency", f->frequency}};
  const auto& g = spec.additive();
  if (const auto* h = g.hulthen_form()) {
    doc["additive"] = {{"kind", "hulthen"}, {"V0", h->strength}, {"alpha", h->alpha}};
  } else if (const auto* h = g.harmonic_form()) {
    doc["additive"] = {{"kind", "harmonic"}, {"c", h->c}};
  } else if (g.is_custom()) {
    throw Error(ErrorKind::NotApplicable, "custom additive terms cannot be serialized");
  }
  return doc;
}

PotentialSpec spec_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::Load, "spec must be a JSON object");
  reject_unknown(doc, {"family", "params", "coefficients", "screening", "additive"}, "spec");
  const auto family_it = doc.find("family");
  if (family_it == doc.end() || !family_it->is_string()) throw Error(ErrorKind::Load, "missing string 'family'");
  const Family family = family_from_string(family_it->get<std::string>());

  PotentialParams params;
  for (const auto& item : require_object(doc, "params").items()) {
    set_parameter(params, item.key(), read_number(item.value(), "params." + item.key()));
  }
  if (family != Family::CorrectedGeneral) {
    reject_unknown(doc, {"family", "params"}, std::string(to_string(family)) + " spec");
    return PotentialSpec::make(family, params);
  }

  const auto& c = require_object(doc, "coefficients");
  reject_unknown(c, {"a", "b"}, "coefficients");
  const CorrectionCoefficients coefficients{read_number(c.at("a"), "coefficients.a"), read_number(c.at("b"), "coefficients.b")};
  const auto& s = require_object(doc, "screening");
  reject_unknown(s, {"offset", "scale", "decay", "frequency"}, "screening");
  ExpCoshForm form;
  form.offset = read_number(s.value("offset", json(0.0)), "screening.offset");
  form.scale = read_number(s.value("scale", json(1.0)), "screening.scale");
  form.decay = read_number(s.value("decay", json(0.0)), "screening.decay");
  form.frequency = read_number(s.value("frequency", json(0.0)), "screening.frequency");
  AdditiveTerm additive;
  if (const auto it = doc.find("additive"); it != doc.end() && !it->is_null()) {
    const auto kind = it->value("kind", std::string{});
    if (kind == "hulthen") {
      reject_unknown(*it, {"kind", "V0", "alpha"}, "additive");
      additive = AdditiveTerm::hulthen(read_number(it->at("V0"), "additive.V0"), read_number(it->at("alpha"), "additive.alpha"));
    } else if (kind == "harmonic") {
      reject_unknown(*it, {"kind", "c"}, "additive");
      additive = AdditiveTerm::harmonic(read_number(it->at("c"), "additive.c"));
    } else {
      throw Error(ErrorKind::Load, "unknown additive kind '" + kind + "'");
    }
  }
  return PotentialSpec::corrected(params, coefficients, Screening::exp_cosh(form), additive);
}

ModelDocument model_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::Load, "spec must be a JSON object");
  json copy = doc;
  bool corrected = false;
  if (const auto it = copy.find("corrected"); it != copy.end()) {
    if (!it->is_boolean()) throw Error(ErrorKind::Load, "'corrected' must be a boolean");
    corrected = it->get<bool>();
    copy.erase("corrected");
  }
  return {spec_from_json(copy), corrected};
}

json to_json(const FlawReport& r) {
  return {
      {"claimed_re", round_significant(r.claimed_re)},
      {"claimed_De", round_significant(r.claimed_De)},
      {"actual_re", round_significant(r.actual_re)},
      {"V_min", round_significant(r.V_min)},
      {"actual_De", number_or_null(r.actual_De)},
      {"slope_at_claimed_re", round_significant(r.slope_at_claimed_re)},
      {"depth_at_claimed_re", number_or_null(r.depth_at_claimed_re)},
      {"closed_form_slope", number_or_null(r.closed_form_slope)},
      {"closed_form_depth", number_or_null(r.closed_form_depth)},
      {"flawed", r.flawed},
  };
}

json to_json(const ValidationReport& r) {
  const auto check = [](const ValidationCheck& c) {
    return json{{"passed", c.passed}, {"residual", std::isfinite(c.residual) ? json(round_significant(c.residual)) : json(nullptr)}};
  };
  return {{"slope", check(r.slope)}, {"curvature", check(r.curvature)}, {"depth", check(r.depth)}, {"passed", r.passed()}};
}

json to_json(const Spectrum& s) {
  json levels = json::array();
  for (const auto& state : s.states) {
    levels.push_back({{"n", state.n}, {"l", state.l}, {"energy", round_significant(state.energy)}});
  }
  return {{"levels", levels},
          {"threshold", round_significant(s.threshold)},
          {"capacity", s.capacity},
          {"truncated", s.truncated}};
}

json to_json(const FitResult& r, Family family) {
  json params = json::object();
  for (auto name : parameter_names(family)) params[std::string(name)] = round_significant(get_parameter(r.params, name));
  json residuals = json::array();
  for (double x : r.residuals) residuals.push_back(round_significant(x));
  return {{"family", std::string(to_string(family))},
          {"params", params},
          {"free", r.free},
          {"square_deviation", round_significant(r.square_deviation)},
          {"gradient_norm", round_significant(r.gradient_norm)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"residuals", residuals}};
}

SpectrumData read_spectrum_csv(std::istream& in) {
  SpectrumData data;
  std::string line;
  int line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    const bool header = first_data_line && !fields.empty() && fields[0] == "n";
    first_data_line = false;
    if (header) continue;
    SpectrumEntry e;
    const bool ok = (fields.size() == 3 || fields.size() == 4) && parse_field(fields[0], e.n) &&
                    parse_field(fields[1], e.l) && parse_field(fields[2], e.energy) &&
                    (fields.size() == 3 || parse_field(fields[3], e.weight));
    if (!ok) throw Error(ErrorKind::Load, "bad spectrum row at line " + std::to_string(line_no) + ": '" + line + "'");
    data.entries.push_back(e);
  }
  try {
    validate(data);
  } catch (const Error& err) {
    throw Error(ErrorKind::Load, err.what());
  }
  return data;
}

json parse_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw Error(ErrorKind::Load, err.what());
  }
}

}  // namespace kratzer::io
