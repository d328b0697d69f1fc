#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cutpaste/channels.hpp"
#include "cutpaste/continuous.hpp"
#include "cutpaste/entanglement.hpp"
#include "cutpaste/errors.hpp"
#include "cutpaste/io.hpp"
#include "cutpaste/optics.hpp"

namespace cutpaste::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Globals {
  std::string out_dir = "cutpaste_out";
  std::uint64_t seed = 1;
  bool degrees = false;
};

struct Context {
  Globals globals;
  std::vector<std::string> args;
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> outputs;

  double angle_in(double v) const { return globals.degrees ? v * kPi / 180.0 : v; }
  double angle_out(double v) const { return globals.degrees ? v * 180.0 / kPi : v; }

  void emit(const std::string& name, const std::string& text) {
    io::write_text(fs::path(globals.out_dir) / name, text);
    outputs.push_back(name);
  }

  void write_manifest(const std::string& command, double seconds) {
    io::RunManifest m{command, args, outputs, io::library_version(), seconds};
    io::write_text(fs::path(globals.out_dir) / (command + "_manifest.json"),
                   io::manifest_to_json(m).dump(2) + "\n");
  }
};

std::string num(double v) { return io::csv_number(v); }

// ---------------------------------------------------------------------------
// discrete

struct DiscreteOptions {
  std::optional<double> eta;
  std::optional<double> pd;
  std::string unitary = "x";
  std::string sequence;
  std::string order_of;
  int max_order = 50;
  int order_sweep = 0;
  bool json_stdout = false;
};

ComplexMatrix parse_unitary(const std::string& arg) {
  if (arg == "x") return pauli::x();
  if (arg == "z") return pauli::z();
  if (arg == "zx-diag") return (pauli::z() - pauli::x()) / std::sqrt(2.0);
  std::string text = arg;
  if (!arg.empty() && arg.front() == '@') text = io::read_text(arg.substr(1));
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    throw Error(ErrorCode::ParseError, "unitary must be x, z, zx-diag or a JSON 2x2 matrix, got '" + arg + "'");
  }
  ComplexMatrix u = io::matrix_from_json(j);
  if (u.rows() != 2 || u.cols() != 2) throw Error(ErrorCode::BadDimension, "unitary must be 2x2");
  return u;
}

struct PairMaps {
  QuantumChannel phi;  // damping after the unitary
  QuantumChannel psi;  // damping before the inverse unitary
};

PairMaps make_maps(const QuantumChannel& damping, const ComplexMatrix& u) {
  const QuantumChannel uu = unitary_channel(u);
  const QuantumChannel ud = unitary_channel(u.adjoint());
  return {compose(uu, damping), compose(damping, ud)};
}

QuantumChannel parse_sequence(const std::string& seq, const PairMaps& maps) {
  if (seq.empty()) throw Error(ErrorCode::ParseError, "empty sequence");
  std::vector<QuantumChannel> chain;
  for (char c : seq) {
    if (c == 'P') {
      chain.push_back(maps.phi);
    } else if (c == 'Q') {
      chain.push_back(maps.psi);
    } else {
      throw Error(ErrorCode::ParseError, std::string("sequence may only contain P and Q, found '") + c + "'");
    }
  }
  return compose_sequence(chain);
}

json verdict_json(const QuantumChannel& c, int max_order) {
  const EbVerdict v = is_eb(c);
  const EbOrder o = eb_order(c, max_order);
  json j = {{"is_eb", v.entanglement_breaking},
            {"concurrence", v.concurrence},
            {"margin", v.margin},
            {"negativity", v.negativity},
            {"max_order", max_order}};
  if (o.bounded()) {
    j["eb_order"] = *o.order;
  } else {
    j["eb_order"] = "Unbounded";
  }
  return j;
}

std::string order_text(const json& j) {
  return j["eb_order"].is_number() ? std::to_string(j["eb_order"].get<int>())
                                   : "Unbounded(" + std::to_string(j["max_order"].get<int>()) + ")";
}

void print_verdict(std::ostream& out, const std::string& name, const json& j) {
  out << name << ": is_eb=" << (j["is_eb"].get<bool>() ? "true" : "false")
      << " concurrence=" << num(j["concurrence"].get<double>()) << " margin=" << num(j["margin"].get<double>())
      << " eb_order=" << order_text(j) << "\n";
}

int cmd_discrete(Context& ctx, const DiscreteOptions& o) {
  if (o.eta && o.pd) throw Error(ErrorCode::OutOfRange, "--eta and --pd are mutually exclusive");
  if (o.max_order < 1) throw Error(ErrorCode::OutOfRange, "--max-order must be >= 1");
  const bool phase = o.pd.has_value();
  const double param = phase ? *o.pd : o.eta.value_or(0.3);
  const ComplexMatrix u = parse_unitary(o.unitary);
  const auto damping = [&](double v) { return phase ? pd_channel(v) : ad_channel(v); };
  const PairMaps maps = make_maps(damping(param), u);

  json report = {{"family", phase ? "pd" : "ad"},
                 {"parameter", param},
                 {"unitary", io::matrix_to_json(u)},
                 {"phi", verdict_json(maps.phi, o.max_order)},
                 {"psi", verdict_json(maps.psi, o.max_order)}};
  if (!o.sequence.empty()) {
    json s = verdict_json(parse_sequence(o.sequence, maps), o.max_order);
    s["sequence"] = o.sequence;
    report["sequence"] = s;
  }
  if (!o.order_of.empty()) {
    json s = verdict_json(parse_sequence(o.order_of, maps), o.max_order);
    s["sequence"] = o.order_of;
    report["order_of"] = s;
  }

  if (o.order_sweep > 0) {
    std::string csv = "parameter,order_phi,order_psi\n";
    for (int i = 1; i <= o.order_sweep; ++i) {
      const double v = static_cast<double>(i) / o.order_sweep;
      const PairMaps m = make_maps(damping(v), u);
      const auto a = eb_order(m.phi, o.max_order);
      const auto b = eb_order(m.psi, o.max_order);
      auto txt = [](const EbOrder& e) { return e.bounded() ? std::to_string(*e.order) : std::string("Unbounded"); };
      csv += num(v) + ',' + txt(a) + ',' + txt(b) + '\n';
    }
    ctx.emit("discrete_order_sweep.csv", csv);
  }

  ctx.emit("discrete_report.json", report.dump(2) + "\n");
  if (o.json_stdout) {
    ctx.out << report.dump(2) << "\n";
  } else {
    print_verdict(ctx.out, "Phi", report["phi"]);
    print_verdict(ctx.out, "Psi", report["psi"]);
    if (report.contains("sequence")) print_verdict(ctx.out, "sequence " + o.sequence, report["sequence"]);
    if (report.contains("order_of")) print_verdict(ctx.out, "order_of " + o.order_of, report["order_of"]);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// continuous

struct ContinuousOptions {
  std::string family = "ad";
  double omega = 1.5;
  double eps = 1.0;
  std::vector<int> n_list{1, 2, 4, 8, 16};
  double x_max = 6.0;
  int steps = 601;
  double x_hi = 50.0;
  std::optional<double> length;
  double scan_step = kDefaultScanStep;
  bool literal_sign = false;
};

std::string length_text(const std::optional<double>& l, double x_hi) {
  return l ? num(*l) : "Unbounded(" + num(x_hi) + ")";
}

int cmd_continuous(Context& ctx, const ContinuousOptions& o) {
  std::string fam = o.family;
  std::transform(fam.begin(), fam.end(), fam.begin(), [](unsigned char c) { return std::tolower(c); });
  if (fam != "ad" && fam != "pd") throw Error(ErrorCode::OutOfRange, "--family must be ad or pd");
  if (o.literal_sign && fam != "pd") throw Error(ErrorCode::OutOfRange, "--paper-literal-sign applies to pd only");
  for (int n : o.n_list) {
    if (n < 1) throw Error(ErrorCode::OutOfRange, "every n must be >= 1");
  }
  const auto sign = o.literal_sign ? DephasingSign::Growing : DephasingSign::Decaying;
  auto make = [&](int j) {
    return fam == "ad" ? rotating_ad_liouvillian(j, o.omega, o.eps) : rotating_pd_liouvillian(j, o.omega, o.eps, sign);
  };
  const Liouvillian l1 = make(1);
  const Liouvillian l2 = make(2);
  const std::string prefix = "continuous_" + fam;

  ctx.emit(prefix + "_single.csv", io::profile_csv(concurrence_profile(l1, o.x_max, o.steps), "single"));
  const auto single = eb_length(l1, o.x_hi, o.scan_step);
  ctx.out << "single: eb_length=" << length_text(single, o.x_hi) << "\n";

  const std::optional<double> base = o.length ? o.length : single;
  if (base) {
    for (int n : o.n_list) {
      const SwitchedLine line(l1, l2, *base / n, "n=" + std::to_string(n));
      const std::string label = "n" + std::to_string(n);
      ctx.emit(prefix + "_" + label + ".csv", io::profile_csv(concurrence_profile(line, o.x_max, o.steps), label));
      ctx.out << label << ": slice_len=" << num(line.slice_len())
              << " eb_length=" << length_text(eb_length(line, o.x_hi, o.scan_step), o.x_hi) << "\n";
    }
  } else {
    ctx.out << "switched lines skipped: the single line never becomes EB and no --length was given\n";
  }

  const Liouvillian avg = average(l1, l2);
  ctx.emit(prefix + "_trotter.csv", io::profile_csv(concurrence_profile(avg, o.x_max, o.steps), "trotter"));
  ctx.out << "trotter: eb_length=" << length_text(eb_length(avg, o.x_hi, o.scan_step), o.x_hi) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentOptions {
  std::string map = "mprime";
  std::string preset = "ideal";
  std::string vary = "theta";
  std::optional<double> lo;
  std::optional<double> hi;
  int steps = 361;
  double W = 0.96;
  std::optional<double> theta;
  std::optional<double> phi;
  std::optional<double> omega_phase;
  double eta1 = 0.3;
  double eta2 = 0.3;
  std::string setup_file;
  int omega_samples = 0;
  unsigned threads = 0;
};

int cmd_experiment(Context& ctx, const ExperimentOptions& o) {
  std::string axis_name = o.vary;
  std::transform(axis_name.begin(), axis_name.end(), axis_name.begin(), [](unsigned char c) { return std::tolower(c); });
  if (axis_name != "theta" && axis_name != "phi") throw Error(ErrorCode::OutOfRange, "--vary must be theta or phi");
  const SweepAxis axis = axis_name == "theta" ? SweepAxis::Theta : SweepAxis::Phi;

  const MapKind kind = map_kind_from_string(o.map);
  OpticalSetup s;
  if (!o.setup_file.empty()) {
    s = io::setup_from_json(json::parse(io::read_text(o.setup_file)));
  } else {
    const Preset preset = preset_from_string(o.preset);
    if (preset == Preset::Custom) throw Error(ErrorCode::OutOfRange, "custom elements need --setup");
    s = make_setup(kind, o.eta1, o.eta2, preset, kPi / 4, kPi / 4, o.W);
  }
  if (o.theta) s.theta = ctx.angle_in(*o.theta);
  if (o.phi) s.phi = ctx.angle_in(*o.phi);
  if (o.omega_phase) s.omega_phase = ctx.angle_in(*o.omega_phase);

  const double lo = o.lo ? ctx.angle_in(*o.lo) : -kPi / 2;
  const double hi = o.hi ? ctx.angle_in(*o.hi) : kPi / 2;
  auto rows = sweep(s, axis, lo, hi, o.steps, o.threads);
  for (auto& r : rows) r.angle = ctx.angle_out(r.angle);

  const std::string preset_name = to_string(s.preset);
  ctx.emit("experiment_" + s.label + "_" + preset_name + "_" + axis_name + ".csv",
           io::sweep_csv(rows, preset_name, s.label));

  int zeros = 0;
  for (const auto& r : rows) zeros += r.concurrence <= kTol.eb ? 1 : 0;
  ctx.out << "map=" << s.label << " preset=" << preset_name << " vary=" << axis_name << " points=" << rows.size()
          << " zero_points=" << zeros << "\n";
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const double c = rows[i].concurrence;
    if (c > kTol.eb && c >= rows[i - 1].concurrence && c > rows[i + 1].concurrence) {
      ctx.out << "peak angle=" << num(rows[i].angle) << " concurrence=" << num(c) << "\n";
    }
  }

  if (o.omega_samples > 0) {
    const double alphas[3] = {s.alpha1, s.alpha21, s.alpha2};
    for (int k = 0; k < 3; ++k) {
      const auto mc = dif_map_monte_carlo(alphas[k], s.elements[k], o.omega_samples, ctx.globals.seed + k);
      const auto exact = dif_map(alphas[k], s.elements[k]);
      ctx.out << "omega_check dif" << (k + 1) << " samples=" << o.omega_samples
              << " superop_distance=" << num(superop_distance(mc, exact)) << "\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// replay

std::vector<std::string> redirect_out(const std::vector<std::string>& args, const std::string& dir) {
  std::vector<std::string> outv{"--out", dir};
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    outv.push_back(args[i]);
  }
  return outv;
}

int cmd_replay(Context& ctx, const std::string& manifest_path, const std::string& target) {
  const io::RunManifest m = io::manifest_from_json(json::parse(io::read_text(manifest_path)));
  if (m.command == "replay") throw Error(ErrorCode::ParseError, "refusing to replay a replay");
  const fs::path origin = fs::path(manifest_path).parent_path();
  const fs::path dir = target.empty() ? origin / "replay" : fs::path(target);
  std::ostringstream sink;
  const int code = run(redirect_out(m.args, dir.string()), sink, ctx.err);
  if (code != kExitOk) return code;
  bool same = true;
  for (const auto& name : m.outputs) {
    const bool eq = fs::exists(origin / name) && io::read_text(origin / name) == io::read_text(dir / name);
    same = same && eq;
    ctx.out << (eq ? "identical " : "differs ") << name << "\n";
  }
  return same ? kExitOk : kExitNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cut-and-paste entanglement restoration: channel algebra, continuous lines, optical setup"};
  app.set_version_flag("--version", io::library_version());
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx{Globals{}, args, out, err, {}};
  app.add_option("--out", ctx.globals.out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", ctx.globals.seed, "Seed for the Monte Carlo phase check")->capture_default_str();
  app.add_flag("--degrees", ctx.globals.degrees, "Angles in degrees instead of radians");

  DiscreteOptions d;
  auto* disc = app.add_subcommand("discrete", "EB verdicts and orders for the discrete maps");
  disc->add_option("--eta", d.eta, "Amplitude-damping transmissivity (default 0.3)");
  disc->add_option("--pd", d.pd, "Use phase damping with this p instead");
  disc->add_option("--unitary", d.unitary, "x, z, zx-diag, a JSON 2x2 matrix or @file")->capture_default_str();
  disc->add_option("--sequence", d.sequence, "Maps in signal order, P = Phi and Q = Psi");
  disc->add_option("--order-of", d.order_of, "Sequence whose EB order is reported");
  disc->add_option("--max-order", d.max_order, "Largest power tried")->capture_default_str();
  disc->add_option("--order-sweep", d.order_sweep, "Tabulate EB orders on this many parameter points in (0,1]");
  disc->add_flag("--json", d.json_stdout, "Print the JSON report instead of text");

  ContinuousOptions c;
  auto* cont = app.add_subcommand("continuous", "Concurrence profiles of the switched lines");
  cont->add_option("--family", c.family, "ad or pd")->capture_default_str();
  cont->add_option("--omega", c.omega, "Rotation rate")->capture_default_str();
  cont->add_option("--eps", c.eps, "Dissipation rate")->capture_default_str();
  cont->add_option("--n", c.n_list, "Slices per single-line EB length")->delimiter(',')->capture_default_str();
  cont->add_option("--x-max", c.x_max, "Profile range")->capture_default_str();
  cont->add_option("--steps", c.steps, "Profile points")->capture_default_str();
  cont->add_option("--x-hi", c.x_hi, "Search limit for EB lengths")->capture_default_str();
  cont->add_option("--length", c.length, "Base length split into n slices (default: single-line EB length)");
  cont->add_option("--scan-step", c.scan_step, "Grid step before bisection")->capture_default_str();
  cont->add_flag("--paper-literal-sign", c.literal_sign, "Dephasing term with the growing-coherence sign");

  ExperimentOptions e;
  auto* exp = app.add_subcommand("experiment", "Angle sweeps of the three-interferometer setup");
  exp->add_option("--map", e.map, "mprime, m1, m2 or identity")->capture_default_str();
  exp->add_option("--preset", e.preset, "ideal or measured")->capture_default_str();
  exp->add_option("--vary", e.vary, "theta or phi")->capture_default_str();
  exp->add_option("--lo", e.lo, "Sweep start (default -pi/2)");
  exp->add_option("--hi", e.hi, "Sweep end (default pi/2)");
  exp->add_option("--steps", e.steps, "Sweep points")->capture_default_str();
  exp->add_option("--W", e.W, "Werner parameter of the input")->capture_default_str();
  exp->add_option("--theta", e.theta, "Fixed theta (default pi/4)");
  exp->add_option("--phi", e.phi, "Fixed phi (default pi/4)");
  exp->add_option("--omega-phase", e.omega_phase, "Source relative phase (default pi)");
  exp->add_option("--eta1", e.eta1, "First damping")->capture_default_str();
  exp->add_option("--eta2", e.eta2, "Second damping")->capture_default_str();
  exp->add_option("--setup", e.setup_file, "JSON setup document; overrides map and preset");
  exp->add_option("--omega-samples", e.omega_samples, "Also check the phase average with N random samples");
  exp->add_option("--threads", e.threads, "Worker threads, 0 = all cores");

  std::string manifest;
  std::string replay_out;
  auto* rep = app.add_subcommand("replay", "Re-run a manifest and compare the outputs byte for byte");
  rep->add_option("--manifest", manifest, "Manifest JSON")->required();
  rep->add_option("--into", replay_out, "Directory for the regenerated files (default: <manifest dir>/replay)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  try {
    int code = kExitOk;
    std::string name;
    if (disc->parsed()) {
      name = "discrete";
      code = cmd_discrete(ctx, d);
    } else if (cont->parsed()) {
      name = "continuous";
      code = cmd_continuous(ctx, c);
    } else if (exp->parsed()) {
      name = "experiment";
      code = cmd_experiment(ctx, e);
    } else {
      return cmd_replay(ctx, manifest, replay_out);
    }
    if (code == kExitOk) ctx.write_manifest(name, elapsed());
    return code;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return is_numerical_failure(ex.code()) ? kExitNumerical : kExitValidation;
  } catch (const json::exception& ex) {
    err << "error: malformed JSON: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const fs::filesystem_error& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace cutpaste::cli
