#include "fireprox/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "fireprox/config.hpp"
#include "fireprox/error.hpp"
#include "fireprox/geometry.hpp"
#include "fireprox/line_server.hpp"
#include "fireprox/overlay.hpp"
#include "fireprox/synth.hpp"
#include "fireprox/wire.hpp"

namespace fireprox {
namespace {

namespace fs = std::filesystem;

// Usage and config problems share exit code 2; bad input data is 1.
struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, std::string message) { throw Failure{code, std::move(message)}; }

EngineConfig read_config(const std::string& path) {
  try {
    return load_config(path);
  } catch (const Error& e) {
    fail(kExitConfigError, e.what());
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(kExitInputError, "cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(kExitInputError, "cannot write " + path);
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) fail(kExitInputError, "cannot write " + path.string());
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(kExitInputError, "cannot create directory " + dir + ": " + ec.message());
}

fs::path overlay_path(const std::string& dir, std::uint64_t frame_id) {
  return fs::path(dir) / ("overlay_" + std::to_string(frame_id) + ".svg");
}

void check_stream(const StreamResult& result) {
  if (result.failed) fail(result.config_failure ? kExitConfigError : kExitInputError, result.diagnostic);
}

struct AssessArgs {
  std::string config;
  std::string input;
  std::string output;
  std::string overlays;
  std::optional<double> kappa;
};

void run_assess(const AssessArgs& a) {
  const EngineConfig config = read_config(a.config);
  if (!a.overlays.empty()) ensure_dir(a.overlays);
  auto in = open_input(a.input);
  auto out = open_output(a.output);
  std::function<void(const FrameRecord&, const StreamStep&)> on_step;
  if (!a.overlays.empty()) {
    on_step = [&](const FrameRecord& frame, const StreamStep& step) {
      write_file(overlay_path(a.overlays, frame.frame_id), render_overlay(frame, step.report, config));
    };
  }
  check_stream(process_stream(in, out, nullptr, config, a.kappa, false, on_step));
}

struct StreamArgs {
  std::string config;
  std::string listen;
  bool use_stdin = false;
  std::string output;
  std::string alerts;
  std::optional<double> kappa;
  std::uint32_t max_connections = 0;
};

void run_stream(const StreamArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  const EngineConfig config = read_config(a.config);
  if (a.listen.empty() == !a.use_stdin) fail(kExitConfigError, "stream needs exactly one of --listen or --stdin");

  std::ofstream report_file;
  std::ostream* reports = &out;
  if (a.output != "stdout" && a.output != "-") {
    report_file = open_output(a.output);
    reports = &report_file;
  }
  std::ofstream alert_file;
  if (!a.alerts.empty()) alert_file = open_output(a.alerts);
  std::ostream* alerts = a.alerts.empty() ? nullptr : &alert_file;

  if (a.use_stdin) {
    check_stream(process_stream(in, *reports, alerts, config, a.kappa, false));
    return;
  }

  ListenOptions listen;
  const auto colon = a.listen.rfind(':');
  if (colon == std::string::npos) fail(kExitConfigError, "--listen expects host:port");
  listen.host = a.listen.substr(0, colon);
  try {
    const unsigned long port = std::stoul(a.listen.substr(colon + 1));
    if (port > 65535) throw std::out_of_range("port");
    listen.port = static_cast<std::uint16_t>(port);
  } catch (const std::exception&) {
    fail(kExitConfigError, "invalid port in --listen " + a.listen);
  }
  listen.max_connections = a.max_connections;
  // With --output stdout the socket is the report channel; skip the copy.
  std::ostream* copy = reports == &out ? nullptr : reports;
  try {
    serve_lines(listen, config, a.kappa, copy, alerts, [&](std::uint16_t port) {
      err << "listening on " << listen.host << ':' << port << std::endl;
    });
  } catch (const Error& e) {
    fail(kExitInputError, e.what());
  }
}

void run_calibrate(double ref_px, double ref_m, std::ostream& out) {
  try {
    const auto scale = derive_scale(ref_px, ref_m);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", scale.kappa);
    out << "kappa=" << buf << " px/m\n";
  } catch (const Error& e) {
    fail(kExitInputError, e.what());
  }
}

struct RenderArgs {
  std::string config;
  std::string input;
  std::string report;
  std::string out_dir;
};

void run_render(const RenderArgs& a) {
  const EngineConfig config = read_config(a.config);
  std::map<std::uint64_t, RiskReport> reports;
  {
    auto in = open_input(a.report);
    std::string line;
    for (std::uint64_t n = 1; std::getline(in, line); ++n) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        auto report = parse_report_line(line);
        reports[report.frame_id] = std::move(report);
      } catch (const Error& e) {
        fail(kExitInputError, a.report + " line " + std::to_string(n) + ": " + e.what());
      }
    }
  }
  ensure_dir(a.out_dir);
  auto in = open_input(a.input);
  std::string line;
  for (std::uint64_t n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const FrameRecord frame = parse_frame_line(line);
      const auto it = reports.find(frame.frame_id);
      if (it == reports.end()) {
        throw Error(ErrorKind::MismatchedReport, "no report for frame " + std::to_string(frame.frame_id));
      }
      write_file(overlay_path(a.out_dir, frame.frame_id), render_overlay(frame, it->second, config));
    } catch (const Error& e) {
      fail(kExitInputError, a.input + " line " + std::to_string(n) + ": " + e.what());
    }
  }
}

void run_synth(const std::string& spec_path, const std::string& out_path) {
  auto in = open_input(spec_path);
  std::ostringstream text;
  text << in.rdbuf();
  std::vector<FrameRecord> frames;
  try {
    frames = synth::generate(synth::parse_scenario_spec(text.str()));
  } catch (const Error& e) {
    fail(e.is_config_error() ? kExitConfigError : kExitInputError, e.what());
  }
  auto out = open_output(out_path);
  for (const auto& frame : frames) out << emit_frame_line(frame) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Proximity-aware fire hazard risk engine", "fireprox"};
  app.require_subcommand(1);

  AssessArgs assess;
  auto* assess_cmd = app.add_subcommand("assess", "Score a JSONL file of frames");
  assess_cmd->add_option("--config", assess.config, "Engine config (JSON)")->required();
  assess_cmd->add_option("--input", assess.input, "Frames (JSONL)")->required();
  assess_cmd->add_option("--output", assess.output, "Report lines (JSONL)")->required();
  assess_cmd->add_option("--overlays", assess.overlays, "Directory for overlay_<frame_id>.svg");
  assess_cmd->add_option("--kappa", assess.kappa, "Fallback pixels per meter")->check(CLI::PositiveNumber);

  StreamArgs stream;
  auto* stream_cmd = app.add_subcommand("stream", "Score frames as they arrive on stdin or a socket");
  stream_cmd->add_option("--config", stream.config, "Engine config (JSON)")->required();
  auto* listen_opt = stream_cmd->add_option("--listen", stream.listen, "host:port to serve");
  auto* stdin_opt = stream_cmd->add_flag("--stdin", stream.use_stdin, "Read frames from stdin");
  listen_opt->excludes(stdin_opt);
  stream_cmd->add_option("--output", stream.output, "Report file, or 'stdout'")->required();
  stream_cmd->add_option("--alerts", stream.alerts, "Smoothed-stream alert lines (JSONL)");
  stream_cmd->add_option("--kappa", stream.kappa, "Fallback pixels per meter")->check(CLI::PositiveNumber);
  stream_cmd->add_option("--max-connections", stream.max_connections,
                         "Exit after serving this many connections (0 = forever)");

  double ref_px = 0.0;
  double ref_m = 0.0;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Derive pixels per meter from a reference object");
  calibrate_cmd->add_option("--ref-px", ref_px, "Reference width in pixels")->required();
  calibrate_cmd->add_option("--ref-m", ref_m, "Reference width in meters")->required();

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Re-render overlays from stored frames and reports");
  render_cmd->add_option("--config", render.config, "Engine config (JSON)")->required();
  render_cmd->add_option("--input", render.input, "Frames (JSONL)")->required();
  render_cmd->add_option("--report", render.report, "Report lines (JSONL)")->required();
  render_cmd->add_option("--out", render.out_dir, "Output directory")->required();

  std::string spec_path;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic frames from a scenario spec");
  synth_cmd->add_option("--spec", spec_path, "Scenario spec (JSON)")->required();
  synth_cmd->add_option("--out", synth_out, "Frames (JSONL)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*assess_cmd) {
      run_assess(assess);
    } else if (*stream_cmd) {
      run_stream(stream, in, out, err);
    } else if (*calibrate_cmd) {
      run_calibrate(ref_px, ref_m, out);
    } else if (*render_cmd) {
      run_render(render);
    } else if (*synth_cmd) {
      run_synth(spec_path, synth_out);
    }
  } catch (const Failure& f) {
    err << "fireprox: " << f.message << '\n';
    return f.code;
  } catch (const Error& e) {
    err << "fireprox: " << e.what() << '\n';
    return e.is_config_error() ? kExitConfigError : kExitInputError;
  }
  return kExitOk;
}

}  // namespace fireprox
