#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "csa/session_store.hpp"

namespace httplib {
class Server;
}

namespace csa::api {

inline constexpr const char* kVersion = "1.0.0";

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  /// Origin allowed for cross-origin requests; empty disables CORS headers.
  std::string allow_origin;
};

/// Engine computations on stored sessions. These are what the HTTP handlers
/// return, and what the CLI prints for the same inputs.
nlohmann::json session_analysis(const store::Session& s);
/// Throws MissingInput when the session has no hierarchy.
nlohmann::json session_weights(const store::Session& s);
/// Throws MissingInput when the session has no scale.
nlohmann::json session_scale_weights(const store::Session& s);
/// Body: {"source": "esv"|"weights"|"scale", "method", "alpha"/"beta" | "k1"/"k2"}.
/// "source" defaults to "esv".
nlohmann::json session_trisect(const store::Session& s, const nlohmann::json& body);

/// JSON HTTP service over a session store.
class ApiServer {
 public:
  ApiServer(store::SessionStore& store, ServerConfig config);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds the configured port (0 picks a free one). False when the port is in use.
  bool bind();
  int port() const noexcept { return bound_port_; }

  /// Blocks until stop() is called; in-flight requests complete first.
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  void routes();

  store::SessionStore& store_;
  ServerConfig config_;
  std::unique_ptr<httplib::Server> server_;
  int bound_port_ = 0;
};

}  // namespace csa::api
