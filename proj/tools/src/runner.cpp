#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lpdc_app/app.hpp"

namespace lpdc::app {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Column {
  std::string name;
  const std::vector<double>* values;
};

std::string stem_for(const RunManifest& m, const PresetCase& c, const char* kind) {
  return m.preset.empty() ? std::string(kind) : m.preset + "_" + c.label;
}

std::string case_header(const RunManifest& m, const PresetCase& c) {
  std::ostringstream os;
  os << m.header();
  if (!m.preset.empty()) os << "# case: " << c.label << "\n";
  os << "# config_digest: " << config_digest(c.config) << "\n";
  return os.str();
}

fs::path write_table(const fs::path& path, const std::string& header,
                     const std::vector<std::string>& notes, const std::vector<Column>& cols) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << header;
  for (const auto& n : notes) out << "# " << n << "\n";
  out << "#";
  for (std::size_t j = 0; j < cols.size(); ++j) out << (j ? "\t" : " ") << cols[j].name;
  out << "\n";
  const std::size_t rows = cols.empty() ? 0 : cols.front().values->size();
  char buf[32];
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.12e", (*cols[j].values)[r]);
      if (j) out << '\t';
      out << buf;
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
  return path;
}

json manifest_json(const RunManifest& m) {
  json j;
  j["subcommand"] = m.subcommand;
  j["config"] = m.config_path;
  j["output_dir"] = m.output_dir;
  j["grid_points"] = m.grid_points;
  j["langevin"] = m.langevin;
  j["accidentals"] = m.accidentals;
  j["preset"] = m.preset;
  j["trigger"] = to_string(m.trigger);
  j["filter_fwhm_m"] = m.filter_fwhm ? json(*m.filter_fwhm) : json(nullptr);
  return j;
}

fs::path write_summary(const fs::path& path, const RunManifest& m, const PresetCase& c,
                       json results) {
  json doc;
  doc["manifest"] = manifest_json(m);
  doc["case"] = c.label;
  doc["config_digest"] = config_digest(c.config);
  doc["results"] = std::move(results);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << "\n";
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
  return path;
}

fs::path out_path(const RunManifest& m, const std::string& name) {
  return fs::path(m.output_dir) / name;
}

Trigger other(Trigger t) { return t == Trigger::idler ? Trigger::signal : Trigger::idler; }

const char* g2_name(Trigger t) { return t == Trigger::idler ? "g2_si_per_s2" : "g2_is_per_s2"; }

}  // namespace

const char* to_string(RunKind k) {
  switch (k) {
    case RunKind::correlation: return "correlation";
    case RunKind::spectrum: return "spectrum";
    case RunKind::hom: return "hom";
    case RunKind::rates: return "rates";
    case RunKind::certify: return "certify";
  }
  return "?";
}

std::string RunManifest::header() const {
  std::ostringstream os;
  os << "# lpdc " << subcommand << "\n";
  os << "# config: " << (config_path.empty() ? "-" : config_path) << "\n";
  os << "# preset: " << (preset.empty() ? "-" : preset) << "\n";
  os << "# output_dir: " << output_dir << "\n";
  os << "# grid_points: " << grid_points << "\n";
  os << "# langevin: " << (langevin ? "true" : "false") << "\n";
  os << "# accidentals: " << (accidentals ? "true" : "false") << "\n";
  os << "# trigger: " << to_string(trigger) << "\n";
  os << "# filter_fwhm_m: ";
  if (filter_fwhm) {
    os << *filter_fwhm;
  } else {
    os << "-";
  }
  os << "\n";
  return os.str();
}

RunResult run_correlation(const RunManifest& m, const std::vector<PresetCase>& cases) {
  RunResult result;
  for (const auto& c : cases) {
    const auto grid = build_grid(c.config, m.grid_points);
    double floor = 0.0;
    if (c.config.include_accidentals) {
      const auto r = rates(c.config, grid);
      floor = r.signal * r.idler;
    }
    const auto spec = spectrum(c.config, grid);
    const Trigger first = m.trigger;
    const auto g1 = correlation(spec, first, floor);
    const auto g2 = correlation(spec, other(first), floor);
    std::vector<double> tau = g1.time_grid, path(tau.size()), v1(tau.size()), v2(tau.size());
    for (std::size_t k = 0; k < tau.size(); ++k) {
      path[k] = kSpeedOfLight * tau[k];
      v1[k] = g1.g2(k);
      v2[k] = g2.g2(k);
    }
    const auto stem = stem_for(m, c, "correlation");
    result.files.push_back(write_table(
        out_path(m, stem + ".tsv"), case_header(m, c),
        {"G2 = |phi(tau)|^2 + accidental floor; first G2 column is the triggered waveform"},
        {{"tau_s", &tau}, {"c0_tau_m", &path}, {g2_name(first), &v1}, {g2_name(other(first)), &v2}}));

    json res;
    res["accidental_floor_per_s2"] = floor;
    for (const auto* g : {&g1, &g2}) {
      json w;
      w["integral_per_s"] = integrated_intensity(*g);
      // an all-zero waveform (no coupling) has neither a centroid nor a width
      try {
        w["centroid_s"] = centroid(*g);
      } catch (const NumericError&) {
        w["centroid_s"] = nullptr;
      }
      try {
        w["fwhm_s"] = fwhm_duration(*g);
      } catch (const NumericError&) {
        w["fwhm_s"] = nullptr;
      }
      res[std::string("triggered_by_") + to_string(g->trigger)] = w;
    }
    result.files.push_back(write_summary(out_path(m, stem + ".summary.json"), m, c, res));
  }
  result.message = "wrote " + std::to_string(result.files.size()) + " files";
  return result;
}

RunResult run_spectrum(const RunManifest& m, const std::vector<PresetCase>& cases,
                       std::optional<Side> only_side) {
  RunResult result;
  std::ostringstream msg;
  for (const auto& c : cases) {
    const auto grid = build_grid(c.config, m.grid_points);
    const auto spec = spectrum(c.config, grid);
    const double lam = c.config.degenerate_wavelength;
    const double w0 = 2.0 * kPi * kSpeedOfLight / lam;
    std::vector<double> om, ls, li, ps, pi;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double w = grid.omega(k);
      if (std::abs(w) >= w0) continue;
      om.push_back(w);
      ls.push_back(wavelength(Side::signal, w, lam));
      li.push_back(wavelength(Side::idler, w, lam));
      ps.push_back(std::norm(spec.phi_si[k]));
      pi.push_back(std::norm(spec.phi_is[k]));
    }
    const auto stem = stem_for(m, c, "spectrum");
    result.files.push_back(write_table(
        out_path(m, stem + ".tsv"), case_header(m, c),
        {"detunings with |w'| >= w0 have no physical wavelength and are omitted"},
        {{"omega_rad_per_s", &om}, {"lambda_signal_m", &ls}, {"lambda_idler_m", &li},
         {"abs_phi_si_sq", &ps}, {"abs_phi_is_sq", &pi}}));

    json res;
    if (m.filter_fwhm) {
      std::vector<Side> sides = only_side ? std::vector<Side>{*only_side}
                                          : std::vector<Side>{Side::signal, Side::idler};
      for (Side side : sides) {
        const auto fs = filtered_spectrum(spec, side, *m.filter_fwhm, lam);
        const double bw = fwhm_bandwidth(fs);
        result.files.push_back(write_table(
            out_path(m, stem + ".filtered_" + to_string(side) + ".tsv"), case_header(m, c),
            {std::string("heralded ") + to_string(side) + " spectrum through a Gaussian filter"},
            {{"filter_centre_m", &fs.wavelengths}, {"intensity", &fs.intensity}}));
        res[std::string("bandwidth_") + to_string(side) + "_m"] = bw;
        msg << c.label << " " << to_string(side) << " " << bw * 1e9 << " nm; ";
      }
    }
    res["spectral_norm_si_per_s"] = spectral_norm(spec, Trigger::idler);
    res["spectral_norm_is_per_s"] = spectral_norm(spec, Trigger::signal);
    result.files.push_back(write_summary(out_path(m, stem + ".summary.json"), m, c, res));
  }
  result.message = msg.str().empty() ? "wrote " + std::to_string(result.files.size()) + " files"
                                     : msg.str();
  return result;
}

RunResult run_hom(const RunManifest& m, const std::vector<PresetCase>& cases) {
  RunResult result;
  std::ostringstream msg;
  for (const auto& c : cases) {
    const auto grid = build_grid(c.config, m.grid_points);
    const auto spec = spectrum(c.config, grid);
    const auto scan = hom_scan_lattice(c.config, spec, default_delay_range(c.config, spec));
    const auto stem = stem_for(m, c, "hom");
    result.files.push_back(write_table(
        out_path(m, stem + ".tsv"), case_header(m, c),
        {"delay is measured from the walk-off centre c1 L / 2; path difference = 2 c0 delay"},
        {{"delay_s", &scan.delays},
         {"path_difference_m", &scan.path_differences},
         {"coincidence_per_s", &scan.coincidence}}));
    json res;
    res["visibility"] = scan.visibility;
    res["fwhm_path_m"] = scan.fwhm_path ? json(*scan.fwhm_path) : json(nullptr);
    res["baseline_per_s"] = scan.baseline;
    res["minimum_per_s"] = scan.minimum;
    res["dip_delay_s"] = scan.dip_delay;
    res["dip_path_m"] = path_difference(scan.dip_delay);
    result.files.push_back(write_summary(out_path(m, stem + ".summary.json"), m, c, res));
    msg << (m.preset.empty() ? std::string("hom") : c.label) << ": V = " << scan.visibility;
    if (scan.fwhm_path) msg << ", FWHM = " << *scan.fwhm_path * 1e3 << " mm";
    msg << "; ";
  }
  result.message = msg.str();
  return result;
}

RunResult run_rates(const RunManifest& m, const std::vector<PresetCase>& cases) {
  RunResult result;
  std::ostringstream msg;
  for (const auto& c : cases) {
    const auto grid = build_grid(c.config, m.grid_points);
    const auto r = rates(c.config, grid);
    const std::vector<double> rs{r.signal}, ri{r.idler};
    const auto stem = stem_for(m, c, "rates");
    result.files.push_back(write_table(out_path(m, stem + ".tsv"), case_header(m, c), {},
                                       {{"rate_signal_per_s", &rs}, {"rate_idler_per_s", &ri}}));
    json res;
    res["rate_signal_per_s"] = r.signal;
    res["rate_idler_per_s"] = r.idler;
    result.files.push_back(write_summary(out_path(m, stem + ".summary.json"), m, c, res));
    msg << "R_s = " << r.signal << " 1/s, R_i = " << r.idler << " 1/s; ";
  }
  result.message = msg.str();
  return result;
}

RunResult run_certify(const RunManifest& m, const std::vector<PresetCase>& cases) {
  RunResult result;
  std::ostringstream msg;
  for (const auto& c : cases) {
    const auto grid = build_grid(c.config, m.grid_points);
    const auto report = certify(c.config, grid);
    const auto stem = stem_for(m, c, "certify");

    const fs::path path = out_path(m, stem + ".txt");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << case_header(m, c);
    out << "# steps: " << report.n_steps << "\n";
    out << "# check\tomega_rad_per_s\terror\ttolerance\tstatus\n";
    json checks = json::array();
    for (const auto& k : report.checks) {
      char line[160];
      std::snprintf(line, sizeof line, "%s\t%.6e\t%.3e\t%.1e\t%s\n", k.name.c_str(), k.omega,
                    k.error, k.tolerance, k.passed() ? "pass" : "FAIL");
      out << line;
      checks.push_back({{"name", k.name}, {"omega", k.omega}, {"error", k.error},
                        {"tolerance", k.tolerance}, {"passed", k.passed()}});
    }
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
    result.files.push_back(path);

    json res;
    res["passed"] = report.passed();
    res["max_relative_error"] = report.max_relative_error;
    res["checks"] = checks;
    result.files.push_back(write_summary(out_path(m, stem + ".summary.json"), m, c, res));

    if (!report.passed()) {
      const auto* w = report.worst_offender();
      result.exit_code = kExitTolerance;
      msg << "certification failed: " << w->name << " error " << w->error << " exceeds "
          << w->tolerance << " at omega = " << w->omega << " rad/s; ";
    } else {
      msg << "certified (max error " << report.max_relative_error << "); ";
    }
  }
  result.message = msg.str();
  return result;
}

RunResult run(const RunManifest& manifest) {
  try {
    RunManifest m = manifest;
    std::vector<PresetCase> cases;
    RunKind kind{};
    std::optional<Side> side;
    if (!m.preset.empty()) {
      const auto& p = find_preset(m.preset);
      cases = p.cases;
      kind = p.kind;
      side = p.side;
      m.trigger = p.trigger;
      if (!m.filter_fwhm) m.filter_fwhm = p.filter_fwhm;
    } else {
      if (m.subcommand == "correlation") kind = RunKind::correlation;
      else if (m.subcommand == "spectrum") kind = RunKind::spectrum;
      else if (m.subcommand == "hom") kind = RunKind::hom;
      else if (m.subcommand == "rates") kind = RunKind::rates;
      else if (m.subcommand == "certify") kind = RunKind::certify;
      else throw ConfigError("unknown subcommand '" + m.subcommand + "'");
      if (m.config_path.empty()) throw ConfigError("--config <path> is required");
      auto cfg = load_config(m.config_path);
      if (!m.langevin) cfg.langevin_enabled = false;
      if (m.accidentals) cfg.include_accidentals = true;
      m.langevin = cfg.langevin_enabled;
      m.accidentals = cfg.include_accidentals;
      cases.push_back({"run", cfg});
    }
    if (m.filter_fwhm && !(*m.filter_fwhm > 0.0)) throw ConfigError("--filter-fwhm must be positive");

    std::error_code ec;
    fs::create_directories(m.output_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + m.output_dir + "': " + ec.message());

    switch (kind) {
      case RunKind::correlation: return run_correlation(m, cases);
      case RunKind::spectrum: return run_spectrum(m, cases, side);
      case RunKind::hom: return run_hom(m, cases);
      case RunKind::rates: return run_rates(m, cases);
      case RunKind::certify: return run_certify(m, cases);
    }
    throw ConfigError("unsupported run kind");
  } catch (const ConfigError& e) {
    return {kExitConfig, {}, std::string("config error: ") + e.what()};
  } catch (const NumericError& e) {
    return {kExitTolerance, {}, std::string("numeric error: ") + e.what()};
  } catch (const IoError& e) {
    return {kExitIo, {}, std::string("i/o error: ") + e.what()};
  } catch (const std::filesystem::filesystem_error& e) {
    return {kExitIo, {}, std::string("i/o error: ") + e.what()};
  }
}

}  // namespace lpdc::app
