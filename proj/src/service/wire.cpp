#include "javai/parser.hpp"
#include "javai/service.hpp"
#include "overloaded.hpp"

namespace javai::service {

bool operator==(const WireSessionView& a, const WireSessionView& b) {
  auto same_error = [](const std::optional<FailureReason>& x, const std::optional<FailureReason>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || describe_failure(*x) == describe_failure(*y);
  };
  return a.session_id == b.session_id && a.status == b.status &&
         a.pending_choice == b.pending_choice && a.output == b.output &&
         a.final_fields == b.final_fields && same_error(a.error, b.error);
}

std::string_view status_text(WireSessionView::Status s) {
  switch (s) {
    case WireSessionView::Status::AwaitingChoice: return "awaiting_choice";
    case WireSessionView::Status::Finished: return "finished";
    case WireSessionView::Status::Failed: return "failed";
  }
  return "failed";
}

WireSessionView view_of(const std::string& session_id, const ExecutionState& state) {
  WireSessionView v;
  v.session_id = session_id;
  v.output = state.store().output();
  switch (state.status()) {
    case ExecutionState::Status::AwaitingChoice:
      v.status = WireSessionView::Status::AwaitingChoice;
      v.pending_choice = *state.pending_choice();
      break;
    case ExecutionState::Status::Finished: {
      v.status = WireSessionView::Status::Finished;
      std::vector<std::pair<std::string, FieldMap>> fields;
      for (const auto& obj : state.store().objects()) fields.emplace_back(obj.name, obj.fields);
      v.final_fields = std::move(fields);
      break;
    }
    case ExecutionState::Status::Failed:
      v.status = WireSessionView::Status::Failed;
      v.error = *state.failure();
      break;
    case ExecutionState::Status::Running:
      throw std::logic_error("view_of: state has not been advanced");
  }
  return v;
}

Json to_json(const Value& v) {
  return std::visit(overloaded{
                        [](std::int64_t i) { return Json(i); },
                        [](bool b) { return Json(b); },
                        [](const std::string& s) { return Json(s); },
                        [](const ObjRef& r) { return Json{{"object", r.object}}; },
                    },
                    v);
}

namespace {

Json fields_json(const std::vector<std::pair<std::string, FieldMap>>& objects) {
  Json out = Json::object();
  for (const auto& [name, fields] : objects) {
    Json f = Json::object();
    for (const auto& [field, value] : fields) f[field] = to_json(value);
    out[name] = std::move(f);
  }
  return out;
}

Json error_json(const FailureReason& r) {
  return Json{{"kind", failure_kind(r)}, {"message", failure_message(r)}};
}

Json point_json(const ChoicePoint& p) {
  return Json{{"pointId", p.id},
              {"objectName", p.object_name},
              {"className", p.class_name},
              {"leftText", p.left_text},
              {"rightText", p.right_text}};
}

}  // namespace

Json to_json(const WireSessionView& view) {
  Json j;
  j["sessionId"] = view.session_id;
  j["status"] = status_text(view.status);
  if (view.pending_choice) j["pendingChoice"] = point_json(*view.pending_choice);
  j["output"] = view.output;
  if (view.final_fields) j["finalFields"] = fields_json(*view.final_fields);
  if (view.error) j["error"] = error_json(*view.error);
  return j;
}

Json to_json(const Outcome& o) {
  Json choices = Json::array();
  for (const auto& [point, pick] : o.choices) {
    Json c = point_json(point);
    c["pick"] = pick_word(pick);
    choices.push_back(std::move(c));
  }
  Json j;
  j["choices"] = std::move(choices);
  j["status"] = o.finished() ? "finished" : "failed";
  j["output"] = o.output;
  j["finalFields"] = fields_json(o.final_fields);
  if (o.failure) j["error"] = error_json(*o.failure);
  return j;
}

Json to_json(const Enumeration& e) {
  Json outcomes = Json::array();
  for (const auto& o : e.outcomes) outcomes.push_back(to_json(o));
  return Json{{"outcomes", std::move(outcomes)}, {"truncated", e.truncated}};
}

Json parse_error_json(const ParseError& e) {
  Json detail{{"kind", kind_name(e.kind())},
              {"message", e.what()},
              {"line", e.span().line},
              {"column", e.span().column}};
  if (!e.expected().empty()) detail["expected"] = e.expected();
  return Json{{"parseError", std::move(detail)}};
}

}  // namespace javai::service
