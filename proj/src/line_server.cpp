#include "fireprox/line_server.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstring>
#include <streambuf>
#include <string>

#include <nlohmann/json.hpp>

#include "fireprox/error.hpp"
#include "fireprox/wire.hpp"

namespace fireprox {
namespace {

// Bidirectional streambuf over a connected socket.
class SocketBuf : public std::streambuf {
 public:
  explicit SocketBuf(int fd) : fd_(fd) {
    setg(in_.data(), in_.data(), in_.data());
    setp(out_.data(), out_.data() + out_.size());
  }
  ~SocketBuf() override { sync(); }

 protected:
  int_type underflow() override {
    ssize_t n;
    do {
      n = ::recv(fd_, in_.data(), in_.size(), 0);
    } while (n < 0 && errno == EINTR);
    if (n <= 0) return traits_type::eof();
    setg(in_.data(), in_.data(), in_.data() + n);
    return traits_type::to_int_type(*gptr());
  }

  int_type overflow(int_type ch) override {
    if (sync() != 0) return traits_type::eof();
    if (!traits_type::eq_int_type(ch, traits_type::eof())) {
      *pptr() = traits_type::to_char_type(ch);
      pbump(1);
    }
    return traits_type::not_eof(ch);
  }

  int sync() override {
    const char* data = pbase();
    std::size_t left = static_cast<std::size_t>(pptr() - pbase());
    while (left > 0) {
      const ssize_t n = ::send(fd_, data, left, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        return -1;
      }
      data += n;
      left -= static_cast<std::size_t>(n);
    }
    setp(out_.data(), out_.data() + out_.size());
    return 0;
  }

 private:
  int fd_;
  std::array<char, 4096> in_{};
  std::array<char, 4096> out_{};
};

// Duplicates writes into two streambufs.
class TeeBuf : public std::streambuf {
 public:
  TeeBuf(std::streambuf* a, std::streambuf* b) : a_(a), b_(b) {}

 protected:
  int_type overflow(int_type ch) override {
    if (traits_type::eq_int_type(ch, traits_type::eof())) return traits_type::not_eof(ch);
    const auto c = traits_type::to_char_type(ch);
    const bool ok = !traits_type::eq_int_type(a_->sputc(c), traits_type::eof()) &
                    !traits_type::eq_int_type(b_->sputc(c), traits_type::eof());
    return ok ? ch : traits_type::eof();
  }
  std::streamsize xsputn(const char* s, std::streamsize n) override {
    const auto wrote_a = a_->sputn(s, n);
    const auto wrote_b = b_->sputn(s, n);
    return std::min(wrote_a, wrote_b);
  }
  int sync() override { return (a_->pubsync() == 0 && b_->pubsync() == 0) ? 0 : -1; }

 private:
  std::streambuf* a_;
  std::streambuf* b_;
};

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  int get() const { return fd_; }

 private:
  int fd_;
};

[[noreturn]] void socket_error(const std::string& what) {
  throw Error(ErrorKind::Io, what + ": " + std::strerror(errno));
}

std::string error_line(std::uint64_t line_no, const std::string& message) {
  nlohmann::ordered_json out;
  out["error"] = message;
  out["line"] = line_no;
  return out.dump();
}

}  // namespace

StreamResult process_stream(std::istream& in, std::ostream& reports, std::ostream* alerts,
                            const EngineConfig& config, std::optional<double> cli_kappa,
                            bool continue_on_error,
                            const std::function<void(const FrameRecord&, const StreamStep&)>& on_step) {
  StreamResult result;
  StreamAssessor assessor(config.params, config.debounce_frames, config.proximity_metric);
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      const FrameRecord frame = parse_frame_line(line);
      const StreamStep step = assessor.push(frame, resolve_scale(frame, config.kappa, cli_kappa));
      reports << emit_report_line(step.report) << '\n' << std::flush;
      if (alerts) {
        for (const auto& alert : step.stream_alerts) *alerts << emit_alert_line(alert) << '\n';
        alerts->flush();
      }
      if (on_step) on_step(frame, step);
      ++result.frames;
    } catch (const Error& e) {
      const std::string diagnostic = "line " + std::to_string(line_no) + ": " + e.what();
      if (!continue_on_error) {
        result.failed = true;
        result.config_failure = e.is_config_error();
        result.diagnostic = diagnostic;
        return result;
      }
      reports << error_line(line_no, e.what()) << '\n' << std::flush;
    }
  }
  return result;
}

void serve_lines(const ListenOptions& options, const EngineConfig& config,
                 std::optional<double> cli_kappa, std::ostream* reports_copy, std::ostream* alerts,
                 const std::function<void(std::uint16_t)>& on_listening) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* resolved = nullptr;
  const std::string port = std::to_string(options.port);
  if (const int rc = ::getaddrinfo(options.host.c_str(), port.c_str(), &hints, &resolved); rc != 0) {
    throw Error(ErrorKind::Io, "cannot resolve " + options.host + ": " + ::gai_strerror(rc));
  }
  std::unique_ptr<addrinfo, decltype(&::freeaddrinfo)> guard(resolved, ::freeaddrinfo);

  Fd listener(::socket(resolved->ai_family, resolved->ai_socktype, resolved->ai_protocol));
  if (listener.get() < 0) socket_error("socket");
  const int reuse = 1;
  ::setsockopt(listener.get(), SOL_SOCKET, SO_REUSEADDR, &reuse, sizeof reuse);
  if (::bind(listener.get(), resolved->ai_addr, resolved->ai_addrlen) != 0) socket_error("bind");
  if (::listen(listener.get(), 8) != 0) socket_error("listen");

  sockaddr_in bound{};
  socklen_t bound_len = sizeof bound;
  if (::getsockname(listener.get(), reinterpret_cast<sockaddr*>(&bound), &bound_len) != 0) {
    socket_error("getsockname");
  }
  if (on_listening) on_listening(ntohs(bound.sin_port));

  for (std::uint32_t served = 0; options.max_connections == 0 || served < options.max_connections;
       ++served) {
    const int client = ::accept(listener.get(), nullptr, nullptr);
    if (client < 0) {
      if (errno == EINTR) continue;
      socket_error("accept");
    }
    Fd connection(client);
    SocketBuf buf(connection.get());
    std::istream in(&buf);
    if (reports_copy) {
      TeeBuf tee(&buf, reports_copy->rdbuf());
      std::ostream out(&tee);
      process_stream(in, out, alerts, config, cli_kappa, /*continue_on_error=*/true);
      out.flush();
    } else {
      std::ostream out(&buf);
      process_stream(in, out, alerts, config, cli_kappa, /*continue_on_error=*/true);
      out.flush();
    }
  }
}

}  // namespace fireprox
