#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "kratzer/correction.hpp"
#include "kratzer/diagnostics.hpp"
#include "kratzer/error.hpp"
#include "kratzer/fitting.hpp"
#include "kratzer/io.hpp"
#include "kratzer/kernels.hpp"
#include "kratzer/solver.hpp"

namespace kratzer::cli {

namespace {

using io::format_number;
using io::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string unit_preset = "atomic";
  std::optional<double> kinetic_coefficient;
  double reduced_mass = 1.0;  // in electron masses for the atomic preset
  RelativeGrid grid;
  std::string format;
};

// Options shared by every subcommand.
struct Common {
  std::string spec_path;
  std::string family;
  std::map<std::string, double> params;
  std::map<std::string, CLI::Option*> param_options;
  bool corrected = false;
  std::string config_path;
  std::string preset;
  double k = 0.0;
  CLI::Option* k_option = nullptr;
  double mass = 1.0;
  CLI::Option* mass_option = nullptr;
  double r_min_factor = 0.0;
  double r_max_factor = 0.0;
  int points = 0;
  CLI::Option* r_min_option = nullptr;
  CLI::Option* r_max_option = nullptr;
  CLI::Option* points_option = nullptr;
  std::string format;
  std::string out_path;
};

void add_common(CLI::App& cmd, Common& c, bool with_spec = true) {
  if (with_spec) cmd.add_option("spec", c.spec_path, "Spec JSON file, or - for stdin");
  cmd.add_option("--family", c.family, "Potential family (overrides the spec file)");
  for (auto name : all_parameter_names()) {
    const std::string key(name);
    c.param_options[key] = cmd.add_option("--" + key, c.params[key], "Parameter " + key);
  }
  cmd.add_flag("--corrected", c.corrected, "Apply the equilibrium correction");
  cmd.add_option("--config", c.config_path, "RunConfig JSON");
  cmd.add_option("--preset", c.preset, "Unit preset")->check(CLI::IsMember({"atomic", "spectroscopic", "custom"}));
  c.k_option = cmd.add_option("--k", c.k, "Kinetic coefficient hbar^2/2mu");
  c.mass_option = cmd.add_option("--mass", c.mass, "Reduced mass (atomic preset, electron masses)");
  c.r_min_option = cmd.add_option("--r-min-factor", c.r_min_factor, "Grid start in units of re");
  c.r_max_option = cmd.add_option("--r-max-factor", c.r_max_factor, "Grid end in units of re");
  c.points_option = cmd.add_option("--points", c.points, "Grid points");
  cmd.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd.add_option("--out", c.out_path, "Write output to FILE instead of stdout");
}

json read_json_source(const std::string& path, std::istream& in) {
  if (path == "-") return io::parse_json(in);
  std::ifstream file(path);
  if (!file) throw Error(ErrorKind::Load, "cannot open '" + path + "'");
  return io::parse_json(file);
}

RunConfig load_config(const Common& c, std::istream& in) {
  RunConfig config;
  if (!c.config_path.empty()) {
    const json doc = read_json_source(c.config_path, in);
    if (!doc.is_object()) throw Error(ErrorKind::Load, "config must be a JSON object");
    for (const auto& item : doc.items()) {
      const auto& key = item.key();
      const auto& v = item.value();
      if (key == "unit_preset") {
        config.unit_preset = v.get<std::string>();
      } else if (key == "kinetic_coefficient") {
        config.kinetic_coefficient = v.get<double>();
      } else if (key == "reduced_mass") {
        config.reduced_mass = v.get<double>();
      } else if (key == "format") {
        config.format = v.get<std::string>();
      } else if (key == "grid") {
        config.grid.r_min_factor = v.value("r_min_factor", config.grid.r_min_factor);
        config.grid.r_max_factor = v.value("r_max_factor", config.grid.r_max_factor);
        config.grid.n_points = v.value("n_points", config.grid.n_points);
        config.grid.switch_factor = v.value("switch_factor", config.grid.switch_factor);
      } else {
        throw Error(ErrorKind::Load, "unknown config key '" + key + "'");
      }
    }
  }
  if (!c.preset.empty()) config.unit_preset = c.preset;
  if (c.k_option->count() > 0) config.kinetic_coefficient = c.k;
  if (c.mass_option->count() > 0) config.reduced_mass = c.mass;
  if (c.r_min_option->count() > 0) config.grid.r_min_factor = c.r_min_factor;
  if (c.r_max_option->count() > 0) config.grid.r_max_factor = c.r_max_factor;
  if (c.points_option->count() > 0) config.grid.n_points = c.points;
  if (!c.format.empty()) config.format = c.format;
  if (config.unit_preset != "atomic" && config.unit_preset != "spectroscopic" && config.unit_preset != "custom") {
    throw Error(ErrorKind::Load, "unknown unit preset '" + config.unit_preset + "'");
  }
  if (config.format.empty()) config.format = "csv";
  if (config.format != "csv" && config.format != "json") {
    throw Error(ErrorKind::Load, "unknown format '" + config.format + "'");
  }
  return config;
}

double kinetic_coefficient(const RunConfig& config) {
  if (config.kinetic_coefficient) return *config.kinetic_coefficient;
  if (config.unit_preset == "atomic") {
    if (!(config.reduced_mass > 0.0)) throw Error(ErrorKind::InvalidParameter, "reduced mass must be > 0");
    return 0.5 / config.reduced_mass;
  }
  throw UsageError("the " + config.unit_preset + " preset needs an explicit kinetic coefficient (--k)");
}

// Spec from file and/or flags; flags override file parameters.
io::ModelDocument load_model(const Common& c, std::istream& in) {
  std::optional<io::ModelDocument> doc;
  if (!c.spec_path.empty()) doc = io::model_from_json(read_json_source(c.spec_path, in));

  PotentialParams params = doc ? doc->spec.params() : PotentialParams{};
  bool overridden = false;
  for (const auto& [name, option] : c.param_options) {
    if (option->count() > 0) {
      set_parameter(params, name, c.params.at(name));
      overridden = true;
    }
  }
  const bool corrected = c.corrected || (doc && doc->corrected);
  if (!c.family.empty()) {
    const Family family = family_from_string(c.family);
    if (family == Family::CorrectedGeneral) throw UsageError("corrected_general specs come from files");
    return {PotentialSpec::make(family, params), corrected};
  }
  if (!doc) throw UsageError("give a spec file or --family");
  if (overridden) {
    return {Model::from_spec(doc->spec, false).build(params), corrected};
  }
  return {doc->spec, corrected};
}

PotentialSpec load_potential(const Common& c, std::istream& in) {
  auto doc = load_model(c, in);
  return doc.corrected ? correct(doc.spec) : doc.spec;
}

// Writes to --out or the given stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorKind::Load, "cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void write_json(std::ostream& os, const json& doc) { os << doc.dump(2) << '\n'; }

std::vector<double> parse_number_list(const std::vector<std::string>& items) {
  std::vector<double> values;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string field;
    while (std::getline(ss, field, ',')) {
      if (field.empty()) continue;
      std::istringstream parse(field);
      parse.imbue(std::locale::classic());
      double x = 0.0;
      if (!(parse >> x) || !parse.eof()) throw UsageError("not a number: '" + field + "'");
      values.push_back(x);
    }
  }
  return values;
}

std::vector<std::string> split_names(const std::vector<std::string>& items) {
  std::vector<std::string> names;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string field;
    while (std::getline(ss, field, ',')) {
      if (!field.empty()) names.push_back(field);
    }
  }
  return names;
}

int cmd_eval(const Common& c, const std::vector<std::string>& radii, const std::vector<double>& range,
             std::istream& in, std::ostream& out) {
  const RunConfig config = load_config(c, in);
  const auto spec = load_potential(c, in);
  std::vector<double> r = parse_number_list(radii);
  if (!range.empty()) {
    if (range.size() != 3 || !(range[2] > 0.0) || range[1] < range[0]) {
      throw UsageError("--range needs LO,HI,STEP with LO <= HI and STEP > 0");
    }
    const auto count = static_cast<long>(std::floor((range[1] - range[0]) / range[2] + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) r.push_back(range[0] + static_cast<double>(i) * range[2]);
  }
  if (r.empty()) throw UsageError("give --r or --range");
  std::vector<double> v(r.size());
  std::vector<double> d1(r.size());
  std::vector<double> d2(r.size());
  tabulate(spec, r, {v, d1, d2});

  Output sink(c.out_path, out);
  if (config.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < r.size(); ++i) {
      rows.push_back({{"r", io::round_significant(r[i])},
                      {"V", io::round_significant(v[i])},
                      {"dV", io::round_significant(d1[i])},
                      {"d2V", io::round_significant(d2[i])}});
    }
    write_json(*sink, rows);
  } else {
    *sink << "r,V,dV,d2V\n";
    for (std::size_t i = 0; i < r.size(); ++i) {
      *sink << format_number(r[i]) << ',' << format_number(v[i]) << ',' << format_number(d1[i]) << ','
            << format_number(d2[i]) << '\n';
    }
  }
  return kOk;
}

std::string optional_text(const std::optional<double>& x) { return x ? format_number(*x) : "undefined"; }

int cmd_diagnose(const Common& c, std::istream& in, std::ostream& out) {
  const RunConfig config = load_config(c, in);
  const auto spec = load_potential(c, in);
  const auto report = flaw_report(spec);
  Output sink(c.out_path, out);
  if (config.format == "json") {
    json doc = io::to_json(report);
    doc["family"] = std::string(to_string(spec.family()));
    write_json(*sink, doc);
  } else {
    auto& os = *sink;
    os << "family: " << to_string(spec.family()) << '\n';
    os << std::left << std::setw(22) << "quantity" << std::setw(20) << "claimed" << std::setw(20) << "actual" << '\n';
    os << std::setw(22) << "re" << std::setw(20) << format_number(report.claimed_re) << std::setw(20)
       << format_number(report.actual_re) << '\n';
    os << std::setw(22) << "De" << std::setw(20) << format_number(report.claimed_De) << std::setw(20)
       << optional_text(report.actual_De) << '\n';
    os << std::setw(22) << "V'(re)" << std::setw(20) << "0" << std::setw(20)
       << format_number(report.slope_at_claimed_re) << '\n';
    os << std::setw(22) << "V(inf) - V(re)" << std::setw(20) << format_number(report.claimed_De) << std::setw(20)
       << optional_text(report.depth_at_claimed_re) << '\n';
    if (report.closed_form_slope) {
      os << std::setw(22) << "closed-form V'(re)" << std::setw(20) << "" << std::setw(20)
         << format_number(*report.closed_form_slope) << '\n';
      os << std::setw(22) << "closed-form depth" << std::setw(20) << "" << std::setw(20)
         << optional_text(report.closed_form_depth) << '\n';
    }
    os << "verdict: " << (report.flawed ? "flawed (re, De are not the equilibrium length and dissociation energy)"
                                        : "consistent") << '\n';
  }
  return report.flawed ? kFlawed : kOk;
}

int cmd_correct(const Common& c, std::istream& in, std::ostream& out) {
  load_config(c, in);
  const auto doc = load_model(c, in);
  const auto corrected = correct(doc.spec);
  const auto validation = validate_correction(corrected, doc.spec.De(), doc.spec.re());
  json result;
  result["input"] = io::to_json(doc.spec);
  result["corrected"] = io::to_json(corrected);
  result["validation"] = io::to_json(validation);
  Output sink(c.out_path, out);
  write_json(*sink, result);
  return validation.passed() ? kOk : kFlawed;
}

void write_wavefunctions(const std::string& dir, const Spectrum& spectrum) {
  std::filesystem::create_directories(dir);
  for (const auto& state : spectrum.states) {
    const auto path = std::filesystem::path(dir) /
                      ("wf_n" + std::to_string(state.n) + "_l" + std::to_string(state.l) + ".csv");
    std::ofstream file(path);
    if (!file) throw Error(ErrorKind::Load, "cannot write '" + path.string() + "'");
    file << "r,u\n";
    for (std::size_t i = 0; i < spectrum.r.size(); ++i) {
      file << format_number(spectrum.r[i]) << ',' << format_number(state.wavefunction[i]) << '\n';
    }
  }
}

int cmd_solve(const Common& c, const std::vector<std::string>& l_items, int n_max, const std::string& wf_dir,
              std::istream& in, std::ostream& out, std::ostream& err) {
  const RunConfig config = load_config(c, in);
  const double k = kinetic_coefficient(config);
  const auto spec = load_potential(c, in);
  std::vector<int> ls;
  for (double x : parse_number_list(l_items)) {
    if (x < 0.0 || x != std::floor(x)) throw UsageError("l must be a nonnegative integer");
    ls.push_back(static_cast<int>(x));
  }
  if (ls.empty()) ls.push_back(0);
  const RadialGrid grid = config.grid.at(spec.re());

  std::vector<Spectrum> spectra;
  for (int l : ls) {
    spectra.push_back(solve_bound_states({spec, l, k}, grid, n_max));
    if (!wf_dir.empty()) write_wavefunctions(wf_dir, spectra.back());
  }
  Output sink(c.out_path, out);
  if (config.format == "json") {
    json doc = json::array();
    for (std::size_t i = 0; i < spectra.size(); ++i) {
      json entry = io::to_json(spectra[i]);
      entry["l"] = ls[i];
      doc.push_back(entry);
    }
    write_json(*sink, doc);
  } else {
    *sink << "n,l,energy\n";
    for (const auto& spectrum : spectra) {
      for (const auto& s : spectrum.states) *sink << s.n << ',' << s.l << ',' << format_number(s.energy) << '\n';
    }
  }
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    if (spectra[i].truncated) {
      err << "note: l = " << ls[i] << " binds only " << spectra[i].capacity << " levels\n";
    }
  }
  return kOk;
}

int cmd_fit(const Common& c, const std::string& data_path, const std::vector<std::string>& free_items,
            bool multistart, std::istream& in, std::ostream& out) {
  const RunConfig config = load_config(c, in);
  const double k = kinetic_coefficient(config);
  const auto doc = load_model(c, in);
  const Model model = Model::from_spec(doc.spec, doc.corrected);
  std::ifstream data_file(data_path);
  if (!data_file) throw Error(ErrorKind::Load, "cannot open '" + data_path + "'");
  const auto data = io::read_spectrum_csv(data_file);
  auto free = split_names(free_items);
  if (free.empty()) free = {"De", "re"};

  FitOptions options;
  options.grid = config.grid;
  const PotentialParams start = doc.spec.params();
  std::vector<PotentialParams> starts{start};
  if (multistart) {
    // Every combination of 0.8, 1, 1.2 times each free parameter.
    starts.clear();
    std::size_t combos = 1;
    for (std::size_t j = 0; j < free.size(); ++j) combos *= 3;
    for (std::size_t index = 0; index < combos; ++index) {
      PotentialParams p = start;
      std::size_t digits = index;
      for (const auto& name : free) {
        const double factor = 0.8 + 0.2 * static_cast<double>(digits % 3);
        digits /= 3;
        set_parameter(p, name, factor * get_parameter(start, name));
      }
      starts.push_back(p);
    }
  }
  std::optional<FitResult> best;
  for (const auto& s : starts) {
    try {
      auto result = fit(model, data, s, free, k, options);
      if (!best || result.square_deviation < best->square_deviation) best = std::move(result);
    } catch (const Error& err) {
      if (!multistart || err.kind() != ErrorKind::MissingLevel) throw;
    }
  }
  if (!best) throw Error(ErrorKind::MissingLevel, "no feasible starting point");
  Output sink(c.out_path, out);
  write_json(*sink, io::to_json(*best, model.family()));
  return kOk;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain:
      return kDomain;
    case ErrorKind::Load:
    case ErrorKind::InvalidParameter:
    case ErrorKind::Underdetermined:
      return kUsage;
    default:
      return kNumeric;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modified Kratzer potentials: evaluation, equilibrium diagnostics, correction, bound states, fits",
               "kratzer"};
  app.require_subcommand(1);

  Common eval_opts;
  std::vector<std::string> radii;
  std::vector<double> range;
  auto* eval = app.add_subcommand("eval", "Tabulate V, V', V'' (plot data)");
  add_common(*eval, eval_opts);
  eval->add_option("--r", radii, "Radii, comma separated or repeated");
  eval->add_option("--range", range, "LO,HI,STEP sweep")->delimiter(',')->expected(3);

  Common diagnose_opts;
  auto* diagnose = app.add_subcommand("diagnose", "Claimed vs actual equilibrium length and dissociation energy");
  add_common(*diagnose, diagnose_opts);

  Common correct_opts;
  auto* correct_cmd = app.add_subcommand("correct", "Emit the corrected spec and its validation report");
  add_common(*correct_cmd, correct_opts);

  Common solve_opts;
  std::vector<std::string> l_items;
  int n_max = 4;
  std::string wf_dir;
  auto* solve = app.add_subcommand("solve", "Vibrational-rotational levels");
  add_common(*solve, solve_opts);
  solve->add_option("--l", l_items, "Rotational quantum numbers, comma separated");
  solve->add_option("--nmax", n_max, "Highest vibrational index")->check(CLI::NonNegativeNumber);
  solve->add_option("--wavefunctions", wf_dir, "Directory for wf_n<n>_l<l>.csv files");

  Common fit_opts;
  std::string data_path;
  std::vector<std::string> free_items;
  bool multistart = false;
  auto* fit_cmd = app.add_subcommand("fit", "Least-squares fit of model levels to a spectrum");
  add_common(*fit_cmd, fit_opts);
  fit_cmd->add_option("data", data_path, "Spectrum CSV (n,l,energy[,weight])")->required();
  fit_cmd->add_option("--free", free_items, "Free parameters, comma separated (default De,re)");
  fit_cmd->add_flag("--multistart", multistart, "Try every +-20% start and keep the best");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_opts, radii, range, in, out);
    if (*diagnose) return cmd_diagnose(diagnose_opts, in, out);
    if (*correct_cmd) return cmd_correct(correct_opts, in, out);
    if (*solve) return cmd_solve(solve_opts, l_items, n_max, wf_dir, in, out, err);
    if (*fit_cmd) return cmd_fit(fit_opts, data_path, free_items, multistart, in, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace kratzer::cli
