#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <lpdc/lpdc.hpp>

namespace lpdc::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitTolerance = 3,
  kExitIo = 4,
};

inline constexpr std::size_t kDefaultGridPoints = 16384;

/// Everything that determines a run. Embedded in every output file.
struct RunManifest {
  std::string subcommand;
  std::string config_path;
  std::string output_dir = ".";
  std::size_t grid_points = kDefaultGridPoints;
  bool langevin = true;
  bool accidentals = false;
  std::string preset;
  Trigger trigger = Trigger::idler;
  std::optional<double> filter_fwhm;

  /// "# key: value" lines, one per field.
  [[nodiscard]] std::string header() const;
};

enum class RunKind { correlation, spectrum, hom, rates, certify };

const char* to_string(RunKind k);

/// One crystal of a preset, with the label used in file names.
struct PresetCase {
  std::string label;
  CrystalConfig config;
};

struct Preset {
  std::string name;
  std::string description;
  RunKind kind;
  Trigger trigger = Trigger::idler;
  std::optional<Side> side;          // filtered spectrum side, fig4 only
  std::optional<double> filter_fwhm;  // m
  std::vector<PresetCase> cases;
};

/// Crystal used by the presets: linear group-velocity mismatch with the
/// default group-index difference, default coupling, given loss.
CrystalConfig preset_crystal(double length, LossProfile loss, bool langevin);

const std::vector<Preset>& presets();
/// Throws ConfigError listing the known names.
const Preset& find_preset(const std::string& name);

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;
  std::string message;  // one-line summary or failure reason
};

/// Loads the config (or expands the preset), runs the subcommand and writes
/// the output files. Never throws: errors map onto exit codes.
RunResult run(const RunManifest& manifest);

// Individual runners; they throw lpdc errors.
RunResult run_correlation(const RunManifest& m, const std::vector<PresetCase>& cases);
RunResult run_spectrum(const RunManifest& m, const std::vector<PresetCase>& cases,
                       std::optional<Side> only_side = std::nullopt);
RunResult run_hom(const RunManifest& m, const std::vector<PresetCase>& cases);
RunResult run_rates(const RunManifest& m, const std::vector<PresetCase>& cases);
RunResult run_certify(const RunManifest& m, const std::vector<PresetCase>& cases);

}  // namespace lpdc::app
