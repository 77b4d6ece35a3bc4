#include <cstdint>
#include <cstdio>
#include <random>

#include "javai/service.hpp"

namespace javai::service {

SessionManager::SessionManager(ServiceOptions options, Clock clock)
    : options_(options), clock_(std::move(clock)) {
  if (!clock_) clock_ = [] { return std::chrono::steady_clock::now(); };
}

std::string SessionManager::new_id() {
  static thread_local std::random_device device;
  char buf[33];
  for (int i = 0; i < 4; ++i) {
    std::snprintf(buf + i * 8, 9, "%08x", static_cast<std::uint32_t>(device()));
  }
  return std::string(buf, 32);
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) {
  std::lock_guard lock(table_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionNotFound("no session " + id);
  const auto now = clock_();
  if (now - it->second->last_access > options_.idle_ttl) {
    sessions_.erase(it);
    throw SessionNotFound("session " + id + " expired");
  }
  it->second->last_access = now;
  return it->second;
}

WireSessionView SessionManager::create_session(std::string_view source) {
  purge_expired();
  auto program = std::make_shared<const SourceProgram>(parse_program(source));
  RunOptions run_options;
  run_options.limits.max_call_depth = options_.max_call_depth;
  ExecutionState state = advance(ExecutionState::start(program, run_options));

  std::lock_guard lock(table_mutex_);
  std::string id;
  do {
    id = new_id();
  } while (sessions_.count(id));
  auto session = std::make_shared<Session>(id, program, std::move(state), clock_());
  WireSessionView view = view_of(id, session->state);
  sessions_.emplace(id, std::move(session));
  return view;
}

WireSessionView SessionManager::get_session(const std::string& id) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  return view_of(session->id, session->state);
}

WireSessionView SessionManager::submit_choice(const std::string& id,
                                              const ChoiceDecision& decision) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  const ChoicePoint* pending = session->state.pending_choice();
  std::optional<ChoicePoint> point;
  if (pending) point = *pending;
  // resume() validates and throws before touching anything; the session
  // keeps its old state on error.
  ExecutionState next = resume(session->state, decision);
  session->prompt_history.emplace_back(*point, decision);
  session->state = std::move(next);
  return view_of(session->id, session->state);
}

bool SessionManager::delete_session(const std::string& id) {
  std::lock_guard lock(table_mutex_);
  return sessions_.erase(id) > 0;
}

Enumeration SessionManager::enumerate(std::string_view source,
                                      std::optional<std::size_t> max_outcomes) const {
  auto program = std::make_shared<const SourceProgram>(parse_program(source));
  EnumerationLimits limits;
  limits.max_outcomes = max_outcomes.value_or(options_.default_max_outcomes);
  limits.max_call_depth = options_.max_call_depth;
  return enumerate_outcomes(std::move(program), limits);
}

std::size_t SessionManager::purge_expired() {
  std::lock_guard lock(table_mutex_);
  const auto now = clock_();
  std::size_t removed = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_access > options_.idle_ttl) {
      it = sessions_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

std::size_t SessionManager::size() const {
  std::lock_guard lock(table_mutex_);
  return sessions_.size();
}

std::vector<std::pair<ChoicePoint, ChoiceDecision>> SessionManager::prompt_history(
    const std::string& id) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  return session->prompt_history;
}

}  // namespace javai::service
