#include "landweber/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace landweber::config {

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::deconv:
      return "deconv";
    case Experiment::lsq:
      return "lsq";
    case Experiment::ser:
      return "ser";
    case Experiment::bounds:
      return "bounds";
  }
  return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (auto e : {Experiment::deconv, Experiment::lsq, Experiment::ser, Experiment::bounds}) {
    if (to_string(e) == name) return e;
  }
  return std::nullopt;
}

namespace {

using K = ValueKind;

std::vector<KeySpec> common_keys(Experiment e) {
  return {
      {"out", K::text, "out/" + std::string(to_string(e)), "output directory", {}},
      {"seed", K::integer, "1", "master random seed", {}},
      {"parallel", K::integer, "0", "worker threads for trial loops (0: all logical processors)", {}},
  };
}

std::vector<KeySpec> build_schema(Experiment e) {
  std::vector<KeySpec> keys = common_keys(e);
  auto add = [&](std::vector<KeySpec> more) { keys.insert(keys.end(), more.begin(), more.end()); };
  const KeySpec factor_order{"factor_order", K::choice, "natural", "order of Chebyshev factors within a period",
                             {"natural", "reversed"}};
  switch (e) {
    case Experiment::deconv:
      add({
          {"grid_lo", K::real, "-8.192", "left end of the signal grid", {}},
          {"grid_hi", K::real, "8.192", "right end of the signal grid", {}},
          {"bins", K::integer, "16384", "grid bins (power of two)", {}},
          {"omega", K::real, "0.3", "fixed Landweber step", {}},
          {"l_min", K::real, "0.1", "lower spectral bound for the Chebyshev factors", {}},
          {"l_max", K::real, "0.9", "upper spectral bound for the Chebyshev factors", {}},
          {"periods", K::int_list, "1,2,8", "Chebyshev periods", {}},
          {"snapshot_period", K::integer, "8", "Chebyshev period stored in snapshots", {}},
          {"iters", K::integer, "300", "iterations", {}},
          {"snapshot_every", K::integer, "30", "snapshot interval", {}},
          {"snapshot_decimate", K::integer, "8", "write every n-th grid point in snapshots", {}},
          factor_order,
      });
      break;
    case Experiment::lsq:
      add({
          {"n", K::integer, "32", "antennas (square channel)", {}},
          {"sigma", K::real, "1e-4", "noise standard deviation", {}},
          {"trials", K::integer, "100", "independent channel draws", {}},
          {"iters", K::integer, "30000", "iterations per run", {}},
          {"periods", K::int_list, "2,8", "Chebyshev periods", {}},
          {"rate_max_period", K::integer, "16", "largest T reported in lsq_rates.csv", {}},
          {"record_every", K::integer, "0", "history stride (0: 1 up to 1000 iterations, else 10)", {}},
          factor_order,
      });
      break;
    case Experiment::ser:
      add({
          {"n", K::integer, "32", "antennas (square channel)", {}},
          {"snr_db", K::real_list, "0,2,4,6,8,10", "SNR grid in dB", {}},
          {"iters", K::integer, "100", "detector iterations", {}},
          {"periods", K::int_list, "4,8,16", "Chebyshev periods", {}},
          {"alpha2_early", K::real, "0.5", "soft projection temperature before alpha_switch", {}},
          {"alpha2_late", K::real, "0.25", "soft projection temperature from alpha_switch on", {}},
          {"alpha_switch", K::integer, "20", "iteration at which the temperature changes", {}},
          {"floor_ratio", K::real, "0.1", "Marchenko-Pastur lower edge floor, relative to l_max", {}},
          {"step_rule", K::choice, "omega_opt", "detector step from the Marchenko-Pastur bounds",
           {"omega_opt", "inverse_lmax"}},
          {"projection_order", K::choice, "project_then_inertial", "where the soft projection sits",
           {"project_then_inertial", "inertial_then_project"}},
          {"min_errors", K::integer, "100", "stop a detector after this many symbol errors", {}},
          {"max_trials", K::integer, "10000", "trial cap per SNR point", {}},
          {"batch", K::integer, "50", "trials between stopping checks", {}},
          factor_order,
      });
      break;
    case Experiment::bounds:
      add({
          {"source", K::choice, "user", "where the bounds come from", {"user", "marchenko_pastur"}},
          {"l_min", K::real, "0.1", "lower spectral bound (source=user)", {}},
          {"l_max", K::real, "0.9", "upper spectral bound (source=user)", {}},
          {"T", K::integer, "8", "Chebyshev period", {}},
          {"n", K::integer, "32", "columns of H (source=marchenko_pastur)", {}},
          {"m", K::integer, "32", "rows of H (source=marchenko_pastur)", {}},
          {"variance", K::real, "1", "entry variance of H (source=marchenko_pastur)", {}},
          {"floor_ratio", K::real, "0.01", "lower edge floor (source=marchenko_pastur)", {}},
          {"scale", K::real, "1", "bounds are those of scale * H^H H (source=marchenko_pastur)", {}},
          factor_order,
      });
      break;
  }
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

bool parse_ll(const std::string& s, long long& v) {
  const auto* end = s.data() + s.size();
  auto r = std::from_chars(s.data(), end, v);
  return !s.empty() && r.ec == std::errc{} && r.ptr == end;
}

bool parse_real(const std::string& s, double& v) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return errno == 0 && end == s.c_str() + s.size() && std::isfinite(v);
}

bool valid_value(const KeySpec& spec, const std::string& value) {
  long long i = 0;
  double d = 0.0;
  switch (spec.kind) {
    case K::integer:
      return parse_ll(value, i);
    case K::real:
      return parse_real(value, d);
    case K::text:
      return !value.empty();
    case K::choice:
      return std::find(spec.choices.begin(), spec.choices.end(), value) != spec.choices.end();
    case K::int_list: {
      const auto items = split_list(value);
      return !items.empty() && std::all_of(items.begin(), items.end(), [&](const auto& x) { return parse_ll(x, i); });
    }
    case K::real_list: {
      const auto items = split_list(value);
      return !items.empty() &&
             std::all_of(items.begin(), items.end(), [&](const auto& x) { return parse_real(x, d); });
    }
  }
  return false;
}

const KeySpec* find_key(const std::vector<KeySpec>& keys, const std::string& name) {
  for (const auto& k : keys) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

}  // namespace

const std::vector<KeySpec>& schema(Experiment e) {
  static const std::map<Experiment, std::vector<KeySpec>> all = [] {
    std::map<Experiment, std::vector<KeySpec>> m;
    for (auto ex : {Experiment::deconv, Experiment::lsq, Experiment::ser, Experiment::bounds}) {
      m.emplace(ex, build_schema(ex));
    }
    return m;
  }();
  return all.at(e);
}

KeyValues parse_key_values(std::istream& in, const std::string& source_name) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw SchemaError(source_name + ":" + std::to_string(lineno) + ": expected 'key = value'", {});
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw SchemaError(source_name + ":" + std::to_string(lineno) + ": empty key", {});
    if (kv.count(key) != 0) throw SchemaError(source_name + ": duplicate key '" + key + "'", {key});
    kv[key] = value;
  }
  return kv;
}

KeyValues read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read config file " + path.string(), {});
  return parse_key_values(in, path.string());
}

ExperimentConfig ExperimentConfig::resolve(Experiment experiment, const KeyValues& file, const KeyValues& flags) {
  const auto& keys = schema(experiment);
  ExperimentConfig cfg;
  cfg.experiment_ = experiment;
  for (const auto& k : keys) cfg.values_[k.name] = k.default_value;

  std::vector<std::string> unknown;
  std::vector<std::string> invalid;
  std::vector<std::string> messages;

  auto merge = [&](const KeyValues& src, bool from_file) {
    for (const auto& [key, value] : src) {
      if (from_file && key == "tool_version") continue;
      if (from_file && key == "experiment") {
        if (value != to_string(experiment)) {
          invalid.push_back(key);
          messages.push_back("experiment = " + value + " does not match subcommand " + std::string(to_string(experiment)));
        }
        continue;
      }
      const KeySpec* spec = find_key(keys, key);
      if (spec == nullptr) {
        unknown.push_back(key);
        continue;
      }
      cfg.values_[key] = value;
    }
  };
  merge(file, true);
  merge(flags, false);

  for (const auto& k : keys) {
    const std::string& v = cfg.values_.at(k.name);
    if (!valid_value(k, v)) {
      invalid.push_back(k.name);
      std::string expect;
      switch (k.kind) {
        case K::integer: expect = "integer"; break;
        case K::real: expect = "finite real"; break;
        case K::text: expect = "non-empty text"; break;
        case K::int_list: expect = "comma-separated integers"; break;
        case K::real_list: expect = "comma-separated reals"; break;
        case K::choice: {
          for (const auto& c : k.choices) expect += (expect.empty() ? "" : "|") + c;
          break;
        }
      }
      messages.push_back(k.name + " = '" + v + "' (expected " + expect + ")");
    }
  }

  if (!unknown.empty() || !invalid.empty()) {
    std::string what = "invalid " + std::string(to_string(experiment)) + " configuration";
    if (!unknown.empty()) {
      what += "; unknown keys:";
      for (const auto& u : unknown) what += " " + u;
    }
    for (const auto& m : messages) what += "; " + m;
    std::vector<std::string> offending = unknown;
    offending.insert(offending.end(), invalid.begin(), invalid.end());
    throw SchemaError(what, offending);
  }

  if (cfg.integer("parallel") <= 0) {
    cfg.values_["parallel"] = std::to_string(std::max(1u, std::thread::hardware_concurrency()));
  }
  return cfg;
}

const std::string& ExperimentConfig::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw std::out_of_range("no config key '" + key + "'");
  return it->second;
}

long long ExperimentConfig::integer(const std::string& key) const {
  long long v = 0;
  if (!parse_ll(text(key), v)) throw SchemaError(key + " is not an integer", {key});
  return v;
}

std::uint64_t ExperimentConfig::unsigned_integer(const std::string& key) const {
  const long long v = integer(key);
  if (v < 0) throw SchemaError(key + " must be non-negative", {key});
  return static_cast<std::uint64_t>(v);
}

double ExperimentConfig::real(const std::string& key) const {
  double v = 0.0;
  if (!parse_real(text(key), v)) throw SchemaError(key + " is not a real number", {key});
  return v;
}

std::vector<int> ExperimentConfig::int_list(const std::string& key) const {
  std::vector<int> out;
  for (const auto& item : split_list(text(key))) {
    long long v = 0;
    if (!parse_ll(item, v)) throw SchemaError(key + " has a non-integer entry", {key});
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<double> ExperimentConfig::real_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(text(key))) {
    double v = 0.0;
    if (!parse_real(item, v)) throw SchemaError(key + " has a non-real entry", {key});
    out.push_back(v);
  }
  return out;
}

namespace {

FactorOrder factor_order_of(const ExperimentConfig& cfg) {
  return cfg.text("factor_order") == "reversed" ? FactorOrder::reversed : FactorOrder::natural;
}

int as_int(const ExperimentConfig& cfg, const std::string& key) { return static_cast<int>(cfg.integer(key)); }

}  // namespace

deconv::Config to_deconv_config(const ExperimentConfig& cfg) {
  deconv::Config c;
  c.grid.lo = cfg.real("grid_lo");
  c.grid.hi = cfg.real("grid_hi");
  c.grid.bins = as_int(cfg, "bins");
  c.omega = cfg.real("omega");
  c.l_min = cfg.real("l_min");
  c.l_max = cfg.real("l_max");
  c.periods = cfg.int_list("periods");
  c.snapshot_period = as_int(cfg, "snapshot_period");
  c.iters = as_int(cfg, "iters");
  c.snapshot_every = as_int(cfg, "snapshot_every");
  c.factor_order = factor_order_of(cfg);
  return c;
}

mimo::LsqConfig to_lsq_config(const ExperimentConfig& cfg) {
  mimo::LsqConfig c;
  c.n = as_int(cfg, "n");
  c.sigma = cfg.real("sigma");
  c.trials = as_int(cfg, "trials");
  c.iters = as_int(cfg, "iters");
  c.periods = cfg.int_list("periods");
  c.rate_max_period = as_int(cfg, "rate_max_period");
  c.record_every = as_int(cfg, "record_every");
  c.factor_order = factor_order_of(cfg);
  c.seed = cfg.unsigned_integer("seed");
  c.parallel = as_int(cfg, "parallel");
  return c;
}

mimo::SerConfig to_ser_config(const ExperimentConfig& cfg) {
  mimo::SerConfig c;
  c.n = as_int(cfg, "n");
  c.snr_db = cfg.real_list("snr_db");
  c.iters = as_int(cfg, "iters");
  c.periods = cfg.int_list("periods");
  c.alpha2_early = cfg.real("alpha2_early");
  c.alpha2_late = cfg.real("alpha2_late");
  c.alpha_switch = as_int(cfg, "alpha_switch");
  c.floor_ratio = cfg.real("floor_ratio");
  c.step_rule = cfg.text("step_rule") == "inverse_lmax" ? mimo::StepRule::inverse_lmax : mimo::StepRule::omega_opt;
  c.projection_order = cfg.text("projection_order") == "inertial_then_project"
                           ? ProjectionOrder::inertial_then_project
                           : ProjectionOrder::project_then_inertial;
  c.factor_order = factor_order_of(cfg);
  c.min_errors = cfg.integer("min_errors");
  c.max_trials = cfg.integer("max_trials");
  c.batch = as_int(cfg, "batch");
  c.seed = cfg.unsigned_integer("seed");
  c.parallel = as_int(cfg, "parallel");
  return c;
}

void write_manifest(const std::filesystem::path& path, const ExperimentConfig& cfg) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write manifest " + path.string());
  out << "# resolved configuration; rerun with --config <this file>\n";
  out << "tool_version = " << kToolVersion << '\n';
  out << "experiment = " << to_string(cfg.experiment()) << '\n';
  for (const auto& [k, v] : cfg.values()) out << k << " = " << v << '\n';
  if (!out) throw std::runtime_error("failed writing manifest " + path.string());
}

}  // namespace landweber::config
