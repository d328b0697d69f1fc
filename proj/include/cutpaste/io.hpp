#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cutpaste/channels.hpp"
#include "cutpaste/continuous.hpp"
#include "cutpaste/optics.hpp"

namespace cutpaste::io {

using nlohmann::json;

/// Matrix as rows of [re, im] pairs.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

/// {"in_dim", "out_dim", "kraus": [matrix, ...]}
json channel_to_json(const QuantumChannel& c);
QuantumChannel channel_from_json(const json& j);

json elements_to_json(const DifElements& e);
/// Optional "loss_*" fields must agree with 1 - T - R, else ElementInconsistent.
DifElements elements_from_json(const json& j);

json setup_to_json(const OpticalSetup& s);
/// Missing fields keep the defaults of OpticalSetup. "preset" fills all three
/// interferometers; an "elements" array of three overrides them.
OpticalSetup setup_from_json(const json& j);

/// Shortest round-trip text for a double in the C locale.
std::string format_number(double v);

/// Fixed CSV formatting: 12 significant digits, '.' decimal separator, '\n' line ends.
std::string csv_number(double v);

std::string profile_csv(const std::vector<ProfilePoint>& rows, const std::string& label);
std::string sweep_csv(const std::vector<SweepPoint>& rows, const std::string& preset, const std::string& map_label);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// Record written next to every output: enough to regenerate the files.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;  // argv after the program name
  std::vector<std::string> outputs;
  std::string version;
  double wall_time_s = 0.0;
};

json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const json& j);

std::string library_version();

}  // namespace cutpaste::io
