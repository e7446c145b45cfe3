#include <sstream>

#include "lpdc_app/app.hpp"

namespace lpdc::app {

namespace {

constexpr double kShortCrystal = 0.008;  // m, uniformly lossy crystal
constexpr double kLongCrystal = 0.02;    // m, position-dependent loss study
constexpr double kLossySignal = 1100.0;  // 1/m, Ti/Au covered region
constexpr double kLossyIdler = 60.0;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<PresetCase> signal_loss_series() {
  std::vector<PresetCase> out;
  for (double a : {0.0, 100.0, 200.0, 500.0, 1000.0}) {
    out.push_back({"as" + fmt(a),
                   preset_crystal(kShortCrystal, LossProfile::uniform(kShortCrystal, a, 0.0), true)});
  }
  return out;
}

// alpha_s + alpha_i = 100 1/m, in both modes
std::vector<PresetCase> loss_difference_series() {
  std::vector<PresetCase> out;
  for (bool langevin : {true, false}) {
    for (double d : {-100.0, -50.0, 0.0, 50.0, 100.0}) {
      const double as = 0.5 * (100.0 + d);
      const double ai = 0.5 * (100.0 - d);
      out.push_back({std::string(langevin ? "langevin" : "nolangevin") + "_da" + fmt(d),
                     preset_crystal(kShortCrystal, LossProfile::uniform(kShortCrystal, as, ai),
                                    langevin)});
    }
  }
  return out;
}

std::vector<PresetCase> covered_length_series(std::initializer_list<double> fractions,
                                              bool langevin) {
  std::vector<PresetCase> out;
  for (double f : fractions) {
    out.push_back({"l1_" + fmt(f) + "L",
                   preset_crystal(kLongCrystal,
                                  LossProfile::two_region(kLongCrystal, f * kLongCrystal,
                                                          kLossySignal, kLossyIdler),
                                  langevin)});
  }
  return out;
}

std::vector<Preset> build() {
  std::vector<Preset> p;
  p.push_back({"fig1a", "correlation functions, L = 8 mm, alpha_i = 0, alpha_s swept",
               RunKind::correlation, Trigger::idler, {}, {}, signal_loss_series()});
  p.push_back({"fig1b", "biphoton spectra for the fig1a crystals", RunKind::spectrum,
               Trigger::idler, {}, {}, signal_loss_series()});
  p.push_back({"fig1c", "idler-triggered waveforms, alpha_sum = 100 1/m, both modes",
               RunKind::correlation, Trigger::idler, {}, {}, loss_difference_series()});
  p.push_back({"fig1d", "signal-triggered waveforms, alpha_sum = 100 1/m, both modes",
               RunKind::correlation, Trigger::signal, {}, {}, loss_difference_series()});
  p.push_back({"fig1e", "HOM scans for the fig1c crystals", RunKind::hom, Trigger::idler, {}, {},
               loss_difference_series()});
  {
    std::vector<PresetCase> cases;
    for (bool langevin : {true, false}) {
      cases.push_back({langevin ? "langevin" : "nolangevin",
                       preset_crystal(kShortCrystal,
                                      LossProfile::uniform(kShortCrystal, 87.00, 29.77), langevin)});
    }
    p.push_back({"fig1f", "HOM scan, L = 8 mm, alpha_s = 87.00, alpha_i = 29.77 1/m",
                 RunKind::hom, Trigger::idler, {}, {}, cases});
  }
  p.push_back({"fig3a", "correlation functions, L = 2 cm, lossy region of length L1",
               RunKind::correlation, Trigger::idler, {}, {},
               covered_length_series({0.0, 0.3, 0.6, 0.9}, true)});
  p.push_back({"fig3b", "biphoton spectra for the fig3a crystals", RunKind::spectrum,
               Trigger::idler, {}, {}, covered_length_series({0.0, 0.3, 0.6, 0.9}, true)});
  p.push_back({"fig3c", "HOM scans for the fig3a crystals", RunKind::hom, Trigger::idler, {}, {},
               covered_length_series({0.0, 0.3, 0.6, 0.9}, true)});
  p.push_back({"fig3d", "HOM scans for the fig3a crystals without noise terms", RunKind::hom,
               Trigger::idler, {}, {}, covered_length_series({0.0, 0.3, 0.6, 0.9}, false)});
  p.push_back({"fig4e", "filtered heralded idler spectra, 1 nm filter", RunKind::spectrum,
               Trigger::signal, Side::idler, kDefaultFilterFwhm,
               covered_length_series({0.0, 0.6, 0.9}, true)});
  p.push_back({"fig4f", "filtered heralded signal spectra, 1 nm filter", RunKind::spectrum,
               Trigger::idler, Side::signal, kDefaultFilterFwhm,
               covered_length_series({0.0, 0.6, 0.9}, true)});
  return p;
}

}  // namespace

CrystalConfig preset_crystal(double length, LossProfile loss, bool langevin) {
  CrystalConfig c;
  c.length = length;
  c.dispersion = DispersionModel::group_velocity_mismatch(kDefaultGroupIndexMismatch);
  c.loss = std::move(loss);
  c.langevin_enabled = langevin;
  return validate_config(c);
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

}  // namespace lpdc::app
