#include "javai/choice.hpp"

namespace javai {

std::vector<Pick> Outcome::picks() const {
  std::vector<Pick> out;
  out.reserve(choices.size());
  for (const auto& c : choices) out.push_back(c.second);
  return out;
}

bool operator==(const Outcome& a, const Outcome& b) {
  if (a.failure.has_value() != b.failure.has_value()) return false;
  if (a.failure && describe_failure(*a.failure) != describe_failure(*b.failure)) return false;
  return a.choices == b.choices && a.output == b.output && a.final_fields == b.final_fields;
}

Outcome outcome_of(const ExecutionState& terminal) {
  Outcome o;
  o.choices = terminal.history();
  o.output = terminal.store().output();
  for (const auto& obj : terminal.store().objects()) o.final_fields.emplace_back(obj.name, obj.fields);
  if (const FailureReason* f = terminal.failure()) o.failure = *f;
  return o;
}

Enumeration enumerate_outcomes(std::shared_ptr<const SourceProgram> program,
                               EnumerationLimits limits) {
  RunOptions options;
  options.limits.max_call_depth = limits.max_call_depth;

  // A pending fork: `state` is paused at a choice point and continues with
  // `pick`; the root has no pick.
  struct Branch {
    ExecutionState state;
    std::optional<Pick> pick;
  };

  Enumeration result;
  std::vector<Branch> stack;
  stack.push_back(Branch{ExecutionState::start(std::move(program), options), std::nullopt});

  while (!stack.empty()) {
    if (result.outcomes.size() >= limits.max_outcomes) {
      result.truncated = true;
      break;
    }
    Branch b = std::move(stack.back());
    stack.pop_back();
    ExecutionState s = std::move(b.state);
    if (b.pick) {
      const ChoiceDecision decision{s.pending_choice()->id, *b.pick};
      s = resume(std::move(s), decision);
    } else {
      s = advance(std::move(s));
    }
    if (s.terminal()) {
      result.outcomes.push_back(outcome_of(s));
      continue;
    }
    stack.push_back(Branch{s, Pick::Right});
    stack.push_back(Branch{std::move(s), Pick::Left});
  }
  return result;
}

Enumeration enumerate_outcomes(const SourceProgram& program, EnumerationLimits limits) {
  return enumerate_outcomes(std::make_shared<const SourceProgram>(program), limits);
}

}  // namespace javai
