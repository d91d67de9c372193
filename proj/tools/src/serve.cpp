#include <atomic>
#include <csignal>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <pthread.h>
#include <sys/socket.h>

#include <httplib.h>

#include "cli.hpp"
#include "sysmap/bundle.hpp"

namespace sysmap::cli {

namespace {

constexpr const char *kPlaceholderIndex = R"html(<!doctype html>
<html lang="en">
<head><meta charset="utf-8"><title>sysmap</title></head>
<body>
<h1>sysmap</h1>
<p>No viewer assets were given (<code>--assets DIR</code>).
The city bundle is available at <a href="/bundle.json">/bundle.json</a>.</p>
</body>
</html>
)html";

// httplib's default sets SO_REUSEPORT, which would let a second server
// share a busy port instead of failing.
void reuse_addr_only(socket_t sock) {
  int yes = 1;
  setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
}

std::string slurp(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw BundleError(path.string() + ": cannot open bundle");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

int run_serve(const ServeOptions &options, std::ostream &out, const Logger &log) {
  std::string body;
  try {
    body = slurp(options.bundle);
    validate_bundle(body);
  } catch (const BundleError &e) {
    log.log(Severity::warn, std::string("error: ") + e.what());
    return exit_bundle_error;
  }

  httplib::Server server;
  server.set_socket_options(reuse_addr_only);
  if (options.assets) {
    std::error_code ec;
    if (!std::filesystem::is_directory(*options.assets, ec)) {
      log.log(Severity::warn, "error: assets directory not found: " +
                                  options.assets->string());
      return exit_input_error;
    }
    server.set_mount_point("/", options.assets->string());
  }
  server.Get("/bundle.json", [&body](const httplib::Request &, httplib::Response &res) {
    res.set_content(body, "application/json");
  });
  server.Get("/", [](const httplib::Request &, httplib::Response &res) {
    res.set_content(kPlaceholderIndex, "text/html; charset=utf-8");
  });
  // Access log on stdout, independent of SYSMAP_LOG.
  std::mutex out_mutex;
  server.set_logger([&](const httplib::Request &req, const httplib::Response &res) {
    const std::lock_guard lock(out_mutex);
    out << req.remote_addr << ' ' << req.method << ' ' << req.path << ' '
        << res.status << std::endl;
  });

  int port = options.port;
  if (port == 0) {
    port = server.bind_to_any_port(options.host);
    if (port < 0) {
      log.log(Severity::warn, "error: cannot bind " + options.host);
      return exit_server_error;
    }
  } else if (!server.bind_to_port(options.host, port)) {
    log.log(Severity::warn, "error: cannot listen on " + options.host + ":" +
                                std::to_string(port) + " (port in use?)");
    return exit_server_error;
  }

  // Signals are taken synchronously by one thread; worker threads created
  // by the server inherit the blocked mask.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &stop_signals, &previous);

  std::atomic<bool> interrupted{false};
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&stop_signals, &sig);
    interrupted = true;
    server.stop();
  });

  out << "serving " << options.bundle.string() << " at http://" << options.host
      << ':' << port << "/" << std::endl;
  const bool ok = server.listen_after_bind();

  if (!interrupted)
    pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);

  if (!ok && !interrupted) {
    log.log(Severity::warn, "error: server stopped unexpectedly");
    return exit_server_error;
  }
  out << "stopped" << std::endl;
  return exit_ok;
}

} // namespace sysmap::cli
