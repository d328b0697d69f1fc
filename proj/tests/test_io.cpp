#include <gtest/gtest.h>

#include <filesystem>
#include <functional>

#include "cutpaste/errors.hpp"
#include "cutpaste/io.hpp"
#include "test_support.hpp"

using namespace cutpaste;
using io::json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidState;
}

}  // namespace

TEST(Json, MatrixRoundTripIsExact) {
  const ComplexMatrix m = cutpaste::testing::ginibre(3, 2);
  const json j = json::parse(io::matrix_to_json(m).dump());
  EXPECT_EQ(io::matrix_from_json(j), m);
}

TEST(Json, MatrixAcceptsPlainNumbers) {
  const ComplexMatrix m = io::matrix_from_json(json::parse("[[0, 1], [1, 0]]"));
  EXPECT_EQ(m, pauli::x());
}

TEST(Json, MalformedMatrix) {
  EXPECT_EQ(code_of([] { io::matrix_from_json(json::parse("[[1, 2], [3]]")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { io::matrix_from_json(json::parse("[]")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { io::matrix_from_json(json::parse("[[\"a\"]]")); }), ErrorCode::ParseError);
}

TEST(Json, ChannelRoundTrip) {
  const QuantumChannel c = cutpaste::testing::random_channel(3);
  const QuantumChannel back = io::channel_from_json(json::parse(io::channel_to_json(c).dump()));
  EXPECT_LT(superop_distance(c, back), 1e-15);
}

TEST(Json, ChannelShapeChecked) {
  json j = io::channel_to_json(ad_channel(0.5));
  j["in_dim"] = 3;
  EXPECT_EQ(code_of([&] { io::channel_from_json(j); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { io::channel_from_json(json::parse("{\"in_dim\": 2}")); }), ErrorCode::ParseError);
}

TEST(Json, SetupRoundTrip) {
  OpticalSetup s = make_setup(MapKind::MPrime, 0.2, 0.6, Preset::Measured, 0.3, -0.4, 0.9);
  s.elements[1].coupling_d = 0.8;
  const OpticalSetup back = io::setup_from_json(json::parse(io::setup_to_json(s).dump()));
  EXPECT_EQ(io::setup_to_json(back), io::setup_to_json(s));
  EXPECT_EQ(back.elements[1].coupling_d, 0.8);
}

TEST(Json, SetupPresetFillsElements) {
  const OpticalSetup s = io::setup_from_json(json::parse(R"({"preset": "measured"})"));
  for (const auto& e : s.elements) EXPECT_EQ(e.pbs.T_V, 0.004);
  EXPECT_EQ(s.preset, Preset::Measured);
}

TEST(Json, CustomElementsMarkPreset) {
  json j = json::parse(R"({"elements": [{}, {"bs": {"T": 0.45, "R": 0.45}}, {}]})");
  const OpticalSetup s = io::setup_from_json(j);
  EXPECT_EQ(s.preset, Preset::Custom);
  EXPECT_DOUBLE_EQ(s.elements[1].bs.loss(), 0.1);
  j["elements"].erase(2);
  EXPECT_EQ(code_of([&] { io::setup_from_json(j); }), ErrorCode::ParseError);
}

TEST(Json, StatedLossMustMatch) {
  // measured PBS: 1 - 0.965 - 0.0185 = 0.0165
  json ok = io::elements_to_json(DifElements::measured());
  ok["pbs"]["loss_H"] = 0.0165;
  EXPECT_NO_THROW(io::elements_from_json(ok));
  json bad = ok;
  bad["pbs"]["loss_H"] = 0.022;
  EXPECT_EQ(code_of([&] { io::elements_from_json(bad); }), ErrorCode::ElementInconsistent);
  json bs = ok;
  bs["bs"]["loss"] = 0.0;
  EXPECT_EQ(code_of([&] { io::elements_from_json(bs); }), ErrorCode::ElementInconsistent);
}

TEST(Json, OutOfRangeElements) {
  EXPECT_EQ(code_of([] { io::elements_from_json(json::parse(R"({"bs": {"T": 0.9, "R": 0.3}})")); }),
            ErrorCode::ElementInconsistent);
  EXPECT_EQ(code_of([] { io::elements_from_json(json::parse(R"({"bs": {"T": 0.5}})")); }), ErrorCode::ParseError);
}

TEST(Csv, NumberFormat) {
  EXPECT_EQ(io::csv_number(0.5), "0.5");
  EXPECT_EQ(io::csv_number(-0.0), "0");
  EXPECT_EQ(io::csv_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(io::csv_number(1e-20), "1e-20");
  EXPECT_EQ(io::format_number(0.1), "0.1");
}

TEST(Csv, Profile) {
  const std::vector<ProfilePoint> rows{{0.0, 1.0, 1.0}, {0.5, 0.25, 0.25}};
  EXPECT_EQ(io::profile_csv(rows, "n2"), "x,concurrence,pre_clamp,label\n0,1,1,n2\n0.5,0.25,0.25,n2\n");
}

TEST(Csv, Sweep) {
  const std::vector<SweepPoint> rows{{-0.5, 0.125, -0.1, 0.0625}};
  EXPECT_EQ(io::sweep_csv(rows, "ideal", "m1"), "angle,concurrence,success_prob,preset,map_label\n-0.5,0.125,0.0625,ideal,m1\n");
}

TEST(Files, WriteCreatesDirectories) {
  const auto dir = std::filesystem::temp_directory_path() / "cutpaste_io_test";
  std::filesystem::remove_all(dir);
  const auto path = dir / "a" / "b.txt";
  io::write_text(path, "line\n");
  EXPECT_EQ(io::read_text(path), "line\n");
  std::filesystem::remove_all(dir);
  EXPECT_EQ(code_of([&] { io::read_text(path); }), ErrorCode::ParseError);
}

TEST(Manifest, RoundTrip) {
  const io::RunManifest m{"discrete", {"--out", "x", "discrete", "--eta", "0.3"}, {"discrete_report.json"}, "0.1.0", 0.25};
  const io::RunManifest back = io::manifest_from_json(json::parse(io::manifest_to_json(m).dump()));
  EXPECT_EQ(back.command, m.command);
  EXPECT_EQ(back.args, m.args);
  EXPECT_EQ(back.outputs, m.outputs);
  EXPECT_EQ(back.version, m.version);
  EXPECT_EQ(back.wall_time_s, m.wall_time_s);
  EXPECT_EQ(code_of([] { io::manifest_from_json(json::parse("{}")); }), ErrorCode::ParseError);
}

TEST(Version, Reported) { EXPECT_FALSE(io::library_version().empty()); }
