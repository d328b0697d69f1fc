#include "cutpaste/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "cutpaste/errors.hpp"

namespace cutpaste::io {

namespace {

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? get_field<T>(j, key) : fallback;
}

void check_loss(const json& j, const char* key, double derived) {
  if (!j.contains(key)) return;
  const double given = get_field<double>(j, key);
  if (std::abs(given - derived) > 1e-6) {
    throw Error(ErrorCode::ElementInconsistent, std::string(key) + " = " + format_number(given) +
                                                    " but 1 - T - R = " + format_number(derived));
  }
}

std::string to_chars_string(double v, std::chars_format fmt, int precision) {
  char buf[64];
  const auto res = precision < 0 ? std::to_chars(buf, buf + sizeof buf, v, fmt)
                                 : std::to_chars(buf, buf + sizeof buf, v, fmt, precision);
  if (res.ec != std::errc()) throw Error(ErrorCode::ParseError, "number formatting failed");
  return std::string(buf, res.ptr);
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty()) {
    throw Error(ErrorCode::ParseError, "matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::ParseError, "matrix rows have different lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw Error(ErrorCode::ParseError, "matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

json channel_to_json(const QuantumChannel& c) {
  json kraus = json::array();
  for (const auto& k : c.kraus()) kraus.push_back(matrix_to_json(k));
  return {{"in_dim", c.in_dim()}, {"out_dim", c.out_dim()}, {"kraus", std::move(kraus)}};
}

QuantumChannel channel_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "channel document must be an object");
  const int in_dim = get_field<int>(j, "in_dim");
  const int out_dim = get_field<int>(j, "out_dim");
  const json& list = j.at("kraus");
  if (!list.is_array() || list.empty()) throw Error(ErrorCode::ParseError, "'kraus' must be a non-empty array");
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : list) {
    kraus.push_back(matrix_from_json(k));
    if (kraus.back().rows() != out_dim || kraus.back().cols() != in_dim) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operator shape disagrees with in_dim/out_dim");
    }
  }
  return QuantumChannel::from_kraus(std::move(kraus));
}

json elements_to_json(const DifElements& e) {
  return {{"bs", {{"T", e.bs.T}, {"R", e.bs.R}}},
          {"pbs", {{"T_H", e.pbs.T_H}, {"R_H", e.pbs.R_H}, {"T_V", e.pbs.T_V}, {"R_V", e.pbs.R_V}}},
          {"coupling_c", e.coupling_c},
          {"coupling_d", e.coupling_d}};
}

DifElements elements_from_json(const json& j) {
  DifElements e;
  if (j.contains("bs")) {
    const json& b = j.at("bs");
    e.bs = {get_field<double>(b, "T"), get_field<double>(b, "R")};
    check_loss(b, "loss", e.bs.loss());
  }
  if (j.contains("pbs")) {
    const json& p = j.at("pbs");
    e.pbs = {get_field<double>(p, "T_H"), get_field<double>(p, "R_H"), get_field<double>(p, "T_V"),
             get_field<double>(p, "R_V")};
    check_loss(p, "loss_H", e.pbs.loss_H());
    check_loss(p, "loss_V", e.pbs.loss_V());
  }
  e.coupling_c = get_or(j, "coupling_c", 1.0);
  e.coupling_d = get_or(j, "coupling_d", 1.0);
  e.validate();
  return e;
}

json setup_to_json(const OpticalSetup& s) {
  json elems = json::array();
  for (const auto& e : s.elements) elems.push_back(elements_to_json(e));
  return {{"alpha1", s.alpha1},
          {"alpha21", s.alpha21},
          {"alpha2", s.alpha2},
          {"theta", s.theta},
          {"phi", s.phi},
          {"theta_present", s.theta_present},
          {"phi_present", s.phi_present},
          {"preset", to_string(s.preset)},
          {"elements", std::move(elems)},
          {"W", s.W},
          {"omega_phase", s.omega_phase},
          {"label", s.label}};
}

OpticalSetup setup_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "setup document must be an object");
  OpticalSetup s;
  s.alpha1 = get_or(j, "alpha1", s.alpha1);
  s.alpha21 = get_or(j, "alpha21", s.alpha21);
  s.alpha2 = get_or(j, "alpha2", s.alpha2);
  s.theta = get_or(j, "theta", s.theta);
  s.phi = get_or(j, "phi", s.phi);
  s.theta_present = get_or(j, "theta_present", s.theta_present);
  s.phi_present = get_or(j, "phi_present", s.phi_present);
  s.W = get_or(j, "W", s.W);
  s.omega_phase = get_or(j, "omega_phase", s.omega_phase);
  s.label = get_or<std::string>(j, "label", s.label);
  if (j.contains("preset")) {
    s.preset = preset_from_string(get_field<std::string>(j, "preset"));
    s.elements.fill(preset_elements(s.preset));
  }
  if (j.contains("elements")) {
    const json& list = j.at("elements");
    if (!list.is_array() || list.size() != 3) {
      throw Error(ErrorCode::ParseError, "'elements' must list exactly three interferometers");
    }
    for (std::size_t i = 0; i < 3; ++i) s.elements[i] = elements_from_json(list[i]);
    if (!j.contains("preset")) s.preset = Preset::Custom;
  }
  s.validate();
  return s;
}

std::string format_number(double v) { return to_chars_string(v, std::chars_format::general, -1); }

std::string csv_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  return to_chars_string(v, std::chars_format::general, 12);
}

std::string profile_csv(const std::vector<ProfilePoint>& rows, const std::string& label) {
  std::string out = "x,concurrence,pre_clamp,label\n";
  for (const auto& r : rows) {
    out += csv_number(r.x) + ',' + csv_number(r.concurrence) + ',' + csv_number(r.pre_clamp) + ',' + label + '\n';
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepPoint>& rows, const std::string& preset, const std::string& map_label) {
  std::string out = "angle,concurrence,success_prob,preset,map_label\n";
  for (const auto& r : rows) {
    out += csv_number(r.angle) + ',' + csv_number(r.concurrence) + ',' + csv_number(r.success_prob) + ',' +
           preset + ',' + map_label + '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw Error(ErrorCode::ParseError, "failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json manifest_to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"args", m.args},
          {"outputs", m.outputs},
          {"version", m.version},
          {"wall_time_s", m.wall_time_s}};
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.command = get_field<std::string>(j, "command");
  m.args = get_field<std::vector<std::string>>(j, "args");
  m.outputs = get_or(j, "outputs", std::vector<std::string>{});
  m.version = get_or<std::string>(j, "version", "");
  m.wall_time_s = get_or(j, "wall_time_s", 0.0);
  return m;
}

std::string library_version() { return CUTPASTE_VERSION; }

}  // namespace cutpaste::io
