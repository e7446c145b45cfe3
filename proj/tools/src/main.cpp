#include <iostream>
#include <utility>

#include "CLI11.hpp"
#include "lpdc_app/app.hpp"

namespace {

using lpdc::app::RunManifest;

void add_common(CLI::App* sub, RunManifest& m, bool with_config) {
  if (with_config) {
    sub->add_option("--config", m.config_path, "JSON crystal description");
    sub->add_flag("--no-langevin", [&m](std::int64_t) { m.langevin = false; },
                  "drop the Langevin noise terms");
    sub->add_flag("--accidentals", m.accidentals, "add the R_s R_i floor to G2");
    sub->add_option("--trigger", m.trigger, "heralding photon: idler or signal")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, lpdc::Trigger>{{"idler", lpdc::Trigger::idler},
                                                 {"signal", lpdc::Trigger::signal}},
            CLI::ignore_case));
  }
  sub->add_option("--out", m.output_dir, "output directory")->capture_default_str();
  sub->add_option("--grid", m.grid_points, "number of detuning samples (even)")
      ->capture_default_str();
  sub->add_option("--filter-fwhm", m.filter_fwhm, "band-pass filter FWHM in metres");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric down-conversion with loss and Langevin noise"};
  app.require_subcommand(1);
  RunManifest m;

  const std::pair<const char*, const char*> subcommands[] = {
      {"correlation", "triggered biphoton waveforms G2(tau)"},
      {"spectrum", "biphoton spectra, optionally through a band-pass filter"},
      {"hom", "Hong-Ou-Mandel scan with visibility and width"},
      {"rates", "signal and idler singles rates"},
      {"certify", "cross-check the fast path against the ODE and closed-form oracles"},
  };
  for (const auto& [name, help] : subcommands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, m, true);
  }
  auto* preset = app.add_subcommand("preset", "reproduce a figure with pinned parameters");
  preset->add_option("name", m.preset, "preset name")->required();
  add_common(preset, m, false);
  preset->footer([] {
    std::string s = "Presets:\n";
    for (const auto& p : lpdc::app::presets()) s += "  " + p.name + "  " + p.description + "\n";
    return s;
  }());

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lpdc::app::kExitConfig;
  }
  m.subcommand = app.get_subcommands().front()->get_name();

  const auto result = lpdc::app::run(m);
  for (const auto& f : result.files) std::cout << f.string() << "\n";
  if (result.exit_code == lpdc::app::kExitOk) {
    if (!result.message.empty()) std::cout << result.message << "\n";
  } else {
    std::cerr << "lpdc: " << result.message << "\n";
  }
  return result.exit_code;
}
