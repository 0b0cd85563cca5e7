#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "landweber/deconv.hpp"
#include "landweber/experiments.hpp"

namespace landweber::config {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum class Experiment { deconv, lsq, ser, bounds };

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

enum class ValueKind { integer, real, text, choice, int_list, real_list };

struct KeySpec {
  std::string name;
  ValueKind kind;
  std::string default_value;
  std::string help;
  std::vector<std::string> choices;  // ValueKind::choice only
};

/// Keys accepted by an experiment, including the common out/seed/parallel.
const std::vector<KeySpec>& schema(Experiment e);

/// Invalid configuration. offending_keys lists every rejected key.
class SchemaError : public std::invalid_argument {
 public:
  SchemaError(const std::string& what, std::vector<std::string> keys)
      : std::invalid_argument(what), keys_(std::move(keys)) {}
  const std::vector<std::string>& offending_keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
};

using KeyValues = std::map<std::string, std::string>;

/// Flat "key = value" text; '#' starts a comment; blank lines are skipped.
KeyValues parse_key_values(std::istream& in, const std::string& source_name);
KeyValues read_config_file(const std::filesystem::path& path);

/// Fully resolved, schema-validated parameters of one experiment run.
class ExperimentConfig {
 public:
  /// Defaults, then file values, then flag values (flags win). The file may
  /// carry the manifest keys `experiment` (must match) and `tool_version`.
  static ExperimentConfig resolve(Experiment experiment, const KeyValues& file, const KeyValues& flags);

  Experiment experiment() const { return experiment_; }
  const KeyValues& values() const { return values_; }

  const std::string& text(const std::string& key) const;
  long long integer(const std::string& key) const;
  std::uint64_t unsigned_integer(const std::string& key) const;
  double real(const std::string& key) const;
  std::vector<int> int_list(const std::string& key) const;
  std::vector<double> real_list(const std::string& key) const;

 private:
  Experiment experiment_ = Experiment::deconv;
  KeyValues values_;
};

deconv::Config to_deconv_config(const ExperimentConfig& cfg);
mimo::LsqConfig to_lsq_config(const ExperimentConfig& cfg);
mimo::SerConfig to_ser_config(const ExperimentConfig& cfg);

/// Resolved key-value pairs, one per line, plus experiment and tool version.
/// Readable back through read_config_file.
void write_manifest(const std::filesystem::path& path, const ExperimentConfig& cfg);

}  // namespace landweber::config
