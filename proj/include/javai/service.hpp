#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "javai/choice.hpp"
#include "javai/engine.hpp"
#include "javai/parser.hpp"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace javai::service {

using Json = nlohmann::ordered_json;

/// Snapshot of a session as sent over the wire.
struct WireSessionView {
  enum class Status { AwaitingChoice, Finished, Failed };

  std::string session_id;
  Status status = Status::Finished;
  std::optional<ChoicePoint> pending_choice;  // iff AwaitingChoice
  std::vector<std::string> output;
  std::optional<std::vector<std::pair<std::string, FieldMap>>> final_fields;  // iff Finished
  std::optional<FailureReason> error;                                          // iff Failed

  friend bool operator==(const WireSessionView& a, const WireSessionView& b);
};

std::string_view status_text(WireSessionView::Status s);

/// View of a state that has been advanced to a suspension or terminal.
WireSessionView view_of(const std::string& session_id, const ExecutionState& state);

Json to_json(const Value& v);
Json to_json(const WireSessionView& view);
Json to_json(const Outcome& outcome);
Json to_json(const Enumeration& enumeration);
Json parse_error_json(const ParseError& e);

class SessionNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ServiceOptions {
  std::chrono::steady_clock::duration idle_ttl = std::chrono::minutes(30);
  std::size_t max_call_depth = 10'000;
  std::size_t default_max_outcomes = 1024;
};

/// In-memory session table. Sessions advance independently; transitions on
/// one session are serialized by its own mutex.
class SessionManager {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit SessionManager(ServiceOptions options = {}, Clock clock = {});

  /// Parses and starts a run, advancing to the first prompt or to the end.
  /// Throws ParseError; no session is created in that case.
  WireSessionView create_session(std::string_view source);

  /// Throws SessionNotFound.
  WireSessionView get_session(const std::string& id);

  /// Throws SessionNotFound, StaleDecisionError, IllegalStateError.
  WireSessionView submit_choice(const std::string& id, const ChoiceDecision& decision);

  /// Returns false when the id was unknown.
  bool delete_session(const std::string& id);

  /// Stateless; throws ParseError.
  Enumeration enumerate(std::string_view source, std::optional<std::size_t> max_outcomes) const;

  /// Drops sessions idle longer than the configured ttl.
  std::size_t purge_expired();
  std::size_t size() const;

  /// Decisions accepted so far for a session, in order.
  std::vector<std::pair<ChoicePoint, ChoiceDecision>> prompt_history(const std::string& id);

 private:
  struct Session {
    Session(std::string id, std::shared_ptr<const SourceProgram> program, ExecutionState state,
            std::chrono::steady_clock::time_point now)
        : id(std::move(id)),
          program(std::move(program)),
          state(std::move(state)),
          created_at(std::chrono::system_clock::now()),
          last_access(now) {}

    std::string id;
    std::shared_ptr<const SourceProgram> program;
    ExecutionState state;
    std::chrono::system_clock::time_point created_at;
    std::chrono::steady_clock::time_point last_access;
    std::vector<std::pair<ChoicePoint, ChoiceDecision>> prompt_history;
    std::mutex mutex;
  };

  std::shared_ptr<Session> find(const std::string& id);
  std::string new_id();

  ServiceOptions options_;
  Clock clock_;
  mutable std::mutex table_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

struct HttpOptions {
  std::string cors_origin = "*";
  std::string static_dir;  // served at "/" when non-empty
};

/// Registers the /api routes on `server`.
void install_routes(httplib::Server& server, SessionManager& sessions, const HttpOptions& options);

/// Blocks serving HTTP until the process is stopped. Returns false if the
/// socket could not be bound.
bool serve(const std::string& host, int port, SessionManager& sessions,
           const HttpOptions& options);

}  // namespace javai::service
