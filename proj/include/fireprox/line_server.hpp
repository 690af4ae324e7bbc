#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "fireprox/config.hpp"
#include "fireprox/temporal.hpp"

namespace fireprox {

/// Outcome of processing one frame stream.
struct StreamResult {
  std::uint64_t frames = 0;
  bool failed = false;
  bool config_failure = false;
  std::string diagnostic;
};

/// Reads frame lines from `in` and writes one report line per frame to
/// `reports` (flushed per line); stream alerts go to `alerts` if non-null.
/// When `continue_on_error` is set a bad line yields an {"error": ...} line in
/// place of its report and processing continues; otherwise it stops.
/// Blank lines are skipped. `on_step` sees every successfully assessed frame.
StreamResult process_stream(
    std::istream& in, std::ostream& reports, std::ostream* alerts, const EngineConfig& config,
    std::optional<double> cli_kappa, bool continue_on_error,
    const std::function<void(const FrameRecord&, const StreamStep&)>& on_step = {});

struct ListenOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  /// Stop after this many connections; 0 serves forever.
  std::uint32_t max_connections = 0;
};

/// TCP line server. Each connection is an independent stream using the frame
/// line protocol; one response line per received frame line. `on_listening`
/// receives the bound port before the first accept. Report lines are also
/// copied to `reports_copy` when non-null. Throws Error(Io) on socket failure.
void serve_lines(const ListenOptions& options, const EngineConfig& config,
                 std::optional<double> cli_kappa, std::ostream* reports_copy,
                 std::ostream* alerts, const std::function<void(std::uint16_t)>& on_listening);

}  // namespace fireprox
