#include "csa/api_server.hpp"

#include <httplib.h>

#include "csa/error.hpp"
#include "csa/io.hpp"

namespace csa::api {

using nlohmann::json;

json session_analysis(const store::Session& s) {
  auto out = io::analysis_to_json(s.disorders, s.judgments);
  out["revision"] = s.revision;
  return out;
}

json session_weights(const store::Session& s) {
  if (!s.hierarchy) {
    throw Error(ErrorCode::MissingInput, "session has no hierarchy", {{"id", s.id}});
  }
  return io::to_json(weighting::weigh_hierarchy(*s.hierarchy, &s.disorders));
}

json session_scale_weights(const store::Session& s) {
  if (!s.scale) {
    throw Error(ErrorCode::MissingInput, "session has no importance scale", {{"id", s.id}});
  }
  const auto scale = weighting::build_importance_scale(s.scale->levels, s.scale->level_matrix);
  auto out = io::to_json(scale);
  const auto weights = weighting::assign_scale_weights(scale, s.scale->assignment, s.disorders);
  out["raw"] = io::to_json(weights.raw);
  out["normalized"] = io::to_json(weights.normalized);
  return out;
}

json session_trisect(const store::Session& s, const json& body) {
  const auto params = io::parse_trisection_params(body);
  const std::string source = body.value("source", "esv");
  trisection::ValueMap values;
  if (source == "esv") {
    values = trisection::esv(order::build_relation(s.disorders, s.judgments)).values();
  } else if (source == "weights" || source == "scale") {
    weighting::WeightVector w;
    if (source == "weights") {
      if (!s.hierarchy) {
        throw Error(ErrorCode::MissingInput, "session has no hierarchy", {{"id", s.id}});
      }
      w = weighting::weigh_hierarchy(*s.hierarchy, &s.disorders).global;
    } else {
      if (!s.scale) {
        throw Error(ErrorCode::MissingInput, "session has no importance scale", {{"id", s.id}});
      }
      const auto scale =
          weighting::build_importance_scale(s.scale->levels, s.scale->level_matrix);
      w = weighting::assign_scale_weights(scale, s.scale->assignment, s.disorders).normalized;
    }
    values.ids = w.ids;
    values.values = w.values;
  } else {
    throw Error(ErrorCode::BadParameters, "unknown trisection source '" + source + "'",
                {{"source", source}});
  }
  auto out = io::to_json(trisection::run(values, params));
  out["source"] = source;
  return out;
}

namespace {

json body_of(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return io::parse_text(req.body, "request body");
}

std::uint64_t expected_revision(const json& body) {
  auto it = body.find("expected_revision");
  if (it == body.end() || !it->is_number_unsigned()) {
    throw Error(ErrorCode::ParseError, "request needs a non-negative 'expected_revision'");
  }
  return it->get<std::uint64_t>();
}

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

}  // namespace

ApiServer::ApiServer(store::SessionStore& store, ServerConfig config)
    : store_(store), config_(std::move(config)), server_(std::make_unique<httplib::Server>()) {
  // SO_REUSEADDR only: the library default also sets SO_REUSEPORT, which
  // would let a second server share a port that is already in use.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  routes();
}

ApiServer::~ApiServer() { stop(); }

bool ApiServer::bind() {
  if (config_.port == 0) {
    bound_port_ = server_->bind_to_any_port(config_.host);
    return bound_port_ > 0;
  }
  if (!server_->bind_to_port(config_.host, config_.port)) return false;
  bound_port_ = config_.port;
  return true;
}

void ApiServer::listen() { server_->listen_after_bind(); }

void ApiServer::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

void ApiServer::wait_until_ready() const { server_->wait_until_ready(); }

void ApiServer::routes() {
  using httplib::Request;
  using httplib::Response;
  auto& srv = *server_;

  srv.set_exception_handler([](const Request&, Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error& e) {
      reply(res, http_status(e.code()), e.to_json());
    } catch (const nlohmann::json::exception& e) {
      reply(res, 400, Error(ErrorCode::ParseError, e.what()).to_json());
    } catch (const std::exception& e) {
      reply(res, 500, {{"code", "INTERNAL_ERROR"}, {"message", e.what()}, {"details", json::object()}});
    }
  });

  if (!config_.allow_origin.empty()) {
    const auto origin = config_.allow_origin;
    srv.set_post_routing_handler([origin](const Request&, Response& res) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    srv.Options(R"(/.*)", [](const Request&, Response& res) { res.status = 204; });
  }

  srv.Get("/healthz", [](const Request&, Response& res) {
    reply(res, 200, {{"status", "ok"}, {"version", kVersion}});
  });

  srv.Post("/sessions", [this](const Request& req, Response& res) {
    const auto body = body_of(req);
    if (!body.contains("disorders")) {
      throw Error(ErrorCode::ParseError, "request needs 'disorders'");
    }
    const auto disorders = io::parse_disorders(body["disorders"]);
    const auto session = store_.create(disorders, body.value("notes", ""));
    reply(res, 201, store::to_json(session));
  });

  srv.Get("/sessions", [this](const Request&, Response& res) {
    json list = json::array();
    for (const auto& s : store_.list()) list.push_back(store::to_json(s));
    reply(res, 200, {{"sessions", list}});
  });

  srv.Get(R"(/sessions/([^/]+))", [this](const Request& req, Response& res) {
    reply(res, 200, store::to_json(store_.load(req.matches[1])));
  });

  auto mutate = [this](const Request& req, Response& res, auto make_mutation) {
    const auto body = body_of(req);
    const auto revision = expected_revision(body);
    const store::Mutation m = make_mutation(body);
    reply(res, 200, store::to_json(store_.update(req.matches[1], revision, m)));
  };

  srv.Put(R"(/sessions/([^/]+)/judgments)", [mutate](const Request& req, Response& res) {
    mutate(req, res, [](const json& body) {
      if (!body.contains("judgments")) {
        throw Error(ErrorCode::ParseError, "request needs 'judgments'");
      }
      return store::mutation::SetJudgments{io::parse_judgments(body["judgments"])};
    });
  });

  srv.Put(R"(/sessions/([^/]+)/hierarchy)", [mutate](const Request& req, Response& res) {
    mutate(req, res, [](const json& body) {
      if (!body.contains("hierarchy")) {
        throw Error(ErrorCode::ParseError, "request needs 'hierarchy'");
      }
      store::mutation::SetHierarchy m;
      if (!body["hierarchy"].is_null()) m.hierarchy = io::parse_hierarchy(body["hierarchy"]);
      return m;
    });
  });

  srv.Put(R"(/sessions/([^/]+)/scale)", [mutate](const Request& req, Response& res) {
    mutate(req, res, [](const json& body) {
      store::mutation::SetScale m;
      if (body.contains("scale") && body["scale"].is_null()) return m;
      store::ScaleSetting setting;
      if (!body.contains("levels") || !body.contains("matrix")) {
        throw Error(ErrorCode::ParseError, "request needs 'levels' and 'matrix'");
      }
      setting.levels = body["levels"].get<std::vector<std::string>>();
      setting.level_matrix = io::parse_matrix(body["matrix"], &setting.levels);
      if (body.contains("assignment")) {
        setting.assignment = body["assignment"].get<std::map<DisorderId, std::string>>();
      }
      m.scale = std::move(setting);
      return m;
    });
  });

  srv.Put(R"(/sessions/([^/]+)/trisection-params)", [mutate](const Request& req, Response& res) {
    mutate(req, res, [](const json& body) {
      store::mutation::SetTrisectionParams m;
      if (!body.contains("params")) {
        throw Error(ErrorCode::ParseError, "request needs 'params'");
      }
      if (!body["params"].is_null()) m.params = io::parse_trisection_params(body["params"]);
      return m;
    });
  });

  srv.Put(R"(/sessions/([^/]+)/notes)", [mutate](const Request& req, Response& res) {
    mutate(req, res, [](const json& body) {
      return store::mutation::SetNotes{body.value("notes", "")};
    });
  });

  srv.Get(R"(/sessions/([^/]+)/analysis)", [this](const Request& req, Response& res) {
    reply(res, 200, session_analysis(store_.load(req.matches[1])));
  });

  srv.Get(R"(/sessions/([^/]+)/weights)", [this](const Request& req, Response& res) {
    reply(res, 200, session_weights(store_.load(req.matches[1])));
  });

  srv.Get(R"(/sessions/([^/]+)/scale-weights)", [this](const Request& req, Response& res) {
    reply(res, 200, session_scale_weights(store_.load(req.matches[1])));
  });

  srv.Post(R"(/sessions/([^/]+)/trisect)", [this](const Request& req, Response& res) {
    reply(res, 200, session_trisect(store_.load(req.matches[1]), body_of(req)));
  });

  srv.set_error_handler([](const Request&, Response& res) {
    if (res.status == 404 && res.body.empty()) {
      reply(res, 404, Error(ErrorCode::NotFound, "no such endpoint").to_json());
    }
  });
}

}  // namespace csa::api
