#include "lpdc/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lpdc {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + " is missing '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a number");
  return v.get<double>();
}

bool flag(const json& obj, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError("'" + std::string(key) + "' must be true or false");
  return v.get<bool>();
}

cplx parse_kappa(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError("'kappa' must be a number or a [real, imag] pair");
}

DispersionModel parse_dispersion(const json& v) {
  if (!v.is_object()) throw ConfigError("'dispersion' must be an object");
  reject_unknown(v, {"group_index_mismatch", "coefficients"}, "dispersion");
  const bool gvm = v.contains("group_index_mismatch");
  const bool poly = v.contains("coefficients");
  if (gvm == poly) {
    throw ConfigError("'dispersion' needs exactly one of 'group_index_mismatch' or 'coefficients'");
  }
  if (gvm) {
    return DispersionModel::group_velocity_mismatch(number(v, "group_index_mismatch", "dispersion"));
  }
  const auto& c = v.at("coefficients");
  if (!c.is_array() || c.empty()) throw ConfigError("'coefficients' must be a non-empty list");
  DispersionModel d;
  for (const auto& x : c) {
    if (!x.is_number()) throw ConfigError("dispersion coefficients must be numbers");
    d.coefficients.push_back(x.get<double>());
  }
  return d;
}

LossProfile parse_loss(const json& v) {
  if (!v.is_array()) throw ConfigError("'loss' must be a list of segments");
  LossProfile p;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const std::string where = "loss segment " + std::to_string(j);
    const auto& s = v[j];
    if (!s.is_object()) throw ConfigError(where + " must be an object");
    reject_unknown(s, {"z_start", "z_end", "alpha_s", "alpha_i"}, where);
    p.segments.push_back({number(s, "z_start", where), number(s, "z_end", where),
                          number(s, "alpha_s", where), number(s, "alpha_i", where)});
  }
  return p;
}

}  // namespace

CrystalConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc,
                 {"length", "kappa", "dispersion", "loss", "langevin", "accidentals",
                  "degenerate_wavelength"},
                 "config");

  CrystalConfig c;
  c.length = number(doc, "length", "config");
  if (doc.contains("kappa")) c.kappa = parse_kappa(doc.at("kappa"));
  c.dispersion = doc.contains("dispersion")
                     ? parse_dispersion(doc.at("dispersion"))
                     : DispersionModel::group_velocity_mismatch(kDefaultGroupIndexMismatch);
  if (doc.contains("loss")) {
    c.loss = parse_loss(doc.at("loss"));
  } else {
    c.loss = LossProfile::uniform(c.length, 0.0, 0.0);
  }
  c.langevin_enabled = flag(doc, "langevin", true);
  c.include_accidentals = flag(doc, "accidentals", false);
  if (doc.contains("degenerate_wavelength")) {
    c.degenerate_wavelength = number(doc, "degenerate_wavelength", "config");
  }
  return validate_config(c);
}

CrystalConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading config file '" + path.string() + "'");
  return parse_config(buf.str());
}

std::string dump_config(const CrystalConfig& c) {
  json doc;
  doc["length"] = c.length;
  if (c.kappa.imag() == 0.0) {
    doc["kappa"] = c.kappa.real();
  } else {
    doc["kappa"] = {c.kappa.real(), c.kappa.imag()};
  }
  doc["dispersion"] = {{"coefficients", c.dispersion.coefficients}};
  json loss = json::array();
  for (const auto& s : c.loss.segments) {
    loss.push_back({{"z_start", s.z_start}, {"z_end", s.z_end}, {"alpha_s", s.alpha_s},
                    {"alpha_i", s.alpha_i}});
  }
  doc["loss"] = loss;
  doc["langevin"] = c.langevin_enabled;
  doc["accidentals"] = c.include_accidentals;
  doc["degenerate_wavelength"] = c.degenerate_wavelength;
  return doc.dump(2);
}

}  // namespace lpdc
