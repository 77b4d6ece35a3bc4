#include "httplib.h"
#include "javai/service.hpp"

namespace javai::service {

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, std::string_view code, std::string_view message) {
  send_json(res, status, Json{{"error", code}, {"message", message}});
}

// Parses a JSON request body, answering 400 itself when it is malformed.
std::optional<Json> read_body(const httplib::Request& req, httplib::Response& res) {
  Json body = Json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded() || !body.is_object()) {
    send_error(res, 400, "bad_request", "request body must be a JSON object");
    return std::nullopt;
  }
  return body;
}

}  // namespace

void install_routes(httplib::Server& server, SessionManager& sessions, const HttpOptions& options) {
  server.set_default_headers({
      {"Access-Control-Allow-Origin", options.cors_origin},
      {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
      {"Access-Control-Allow-Headers", "Content-Type"},
  });

  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  server.Post("/api/sessions", [&sessions](const httplib::Request& req, httplib::Response& res) {
    auto body = read_body(req, res);
    if (!body) return;
    if (!body->contains("source") || !(*body)["source"].is_string()) {
      send_error(res, 400, "bad_request", "missing string field 'source'");
      return;
    }
    try {
      send_json(res, 201, to_json(sessions.create_session((*body)["source"].get<std::string>())));
    } catch (const ParseError& e) {
      send_json(res, 422, parse_error_json(e));
    }
  });

  server.Get(R"(/api/sessions/([0-9a-f]+))",
             [&sessions](const httplib::Request& req, httplib::Response& res) {
               try {
                 send_json(res, 200, to_json(sessions.get_session(req.matches[1])));
               } catch (const SessionNotFound& e) {
                 send_error(res, 404, "not_found", e.what());
               }
             });

  server.Post(R"(/api/sessions/([0-9a-f]+)/choice)",
              [&sessions](const httplib::Request& req, httplib::Response& res) {
                auto body = read_body(req, res);
                if (!body) return;
                const Json& b = *body;
                if (!b.contains("pointId") || !b["pointId"].is_number_unsigned() ||
                    !b.contains("pick") || !b["pick"].is_string()) {
                  send_error(res, 400, "bad_request", "expected {\"pointId\": N, \"pick\": ...}");
                  return;
                }
                const std::string pick = b["pick"].get<std::string>();
                if (pick != "left" && pick != "right") {
                  send_error(res, 400, "bad_request", "pick must be \"left\" or \"right\"");
                  return;
                }
                ChoiceDecision decision{b["pointId"].get<std::uint64_t>(),
                                        pick == "left" ? Pick::Left : Pick::Right};
                try {
                  send_json(res, 200, to_json(sessions.submit_choice(req.matches[1], decision)));
                } catch (const SessionNotFound& e) {
                  send_error(res, 404, "not_found", e.what());
                } catch (const StaleDecisionError& e) {
                  send_error(res, 409, "stale", e.what());
                } catch (const IllegalStateError& e) {
                  send_error(res, 409, "illegal_state", e.what());
                }
              });

  server.Delete(R"(/api/sessions/([0-9a-f]+))",
                [&sessions](const httplib::Request& req, httplib::Response& res) {
                  sessions.delete_session(req.matches[1]);
                  res.status = 204;
                });

  server.Post("/api/enumerate", [&sessions](const httplib::Request& req, httplib::Response& res) {
    auto body = read_body(req, res);
    if (!body) return;
    const Json& b = *body;
    if (!b.contains("source") || !b["source"].is_string()) {
      send_error(res, 400, "bad_request", "missing string field 'source'");
      return;
    }
    std::optional<std::size_t> max_outcomes;
    if (b.contains("maxOutcomes")) {
      if (!b["maxOutcomes"].is_number_unsigned() || b["maxOutcomes"].get<std::size_t>() == 0) {
        send_error(res, 400, "bad_request", "maxOutcomes must be a positive integer");
        return;
      }
      max_outcomes = b["maxOutcomes"].get<std::size_t>();
    }
    try {
      send_json(res, 200, to_json(sessions.enumerate(b["source"].get<std::string>(), max_outcomes)));
    } catch (const ParseError& e) {
      send_json(res, 422, parse_error_json(e));
    }
  });

  if (!options.static_dir.empty()) server.set_mount_point("/", options.static_dir);
}

bool serve(const std::string& host, int port, SessionManager& sessions,
           const HttpOptions& options) {
  httplib::Server server;
  install_routes(server, sessions, options);
  return server.listen(host, port);
}

}  // namespace javai::service
