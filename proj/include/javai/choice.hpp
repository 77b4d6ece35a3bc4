#pragma once

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "javai/engine.hpp"
#include "javai/strategy.hpp"

namespace javai {

/// Replays a fixed list of picks; refuses with ChoiceScriptExhausted once
/// the list runs out.
class ScriptedStrategy : public ChoiceStrategy {
 public:
  explicit ScriptedStrategy(std::vector<Pick> picks) : picks_(std::move(picks)) {}

  std::optional<Pick> choose(const ChoicePoint& point) override;

  std::size_t consulted() const { return consulted_; }

 private:
  std::vector<Pick> picks_;
  std::size_t consulted_ = 0;
};

ScriptedStrategy scripted_strategy(std::vector<Pick> picks);

/// Parses an L/R script such as "LRL". Returns nullopt on any other
/// character.
std::optional<std::vector<Pick>> parse_script(std::string_view script);
std::string script_text(const std::vector<Pick>& picks);

/// Prompts on `out` and reads answers from `in`: "1"/"2" or "left"/"right"
/// (also "l"/"r"). Invalid answers re-prompt; end of input refuses with
/// ChannelClosed.
class InteractiveStrategy : public ChoiceStrategy {
 public:
  InteractiveStrategy(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  std::optional<Pick> choose(const ChoicePoint& point) override;
  FailureReason refusal(const ChoicePoint& point) const override;

  std::size_t reprompts() const { return reprompts_; }

 private:
  std::istream& in_;
  std::ostream& out_;
  std::size_t reprompts_ = 0;
};

InteractiveStrategy interactive_strategy(std::istream& in, std::ostream& out);

/// "Creating <class> as <object>: choose — [1] <left>  [2] <right>"
std::string render_prompt(const ChoicePoint& point);

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

using FieldMap = std::vector<std::pair<std::string, Value>>;

/// One complete run under a fixed vector of decisions.
struct Outcome {
  std::vector<std::pair<ChoicePoint, Pick>> choices;
  std::vector<std::string> output;
  std::vector<std::pair<std::string, FieldMap>> final_fields;  // creation order
  std::optional<FailureReason> failure;                        // empty when finished

  bool finished() const { return !failure.has_value(); }
  std::vector<Pick> picks() const;

  friend bool operator==(const Outcome& a, const Outcome& b);
};

Outcome outcome_of(const ExecutionState& terminal);

struct EnumerationLimits {
  std::size_t max_outcomes = 1024;
  std::size_t max_call_depth = 10'000;
};

struct Enumeration {
  std::vector<Outcome> outcomes;
  bool truncated = false;
};

/// Depth-first, left-first exploration of every choice resolution. A state
/// paused at a choice point is forked into its two continuations.
Enumeration enumerate_outcomes(std::shared_ptr<const SourceProgram> program,
                               EnumerationLimits limits = {});
Enumeration enumerate_outcomes(const SourceProgram& program, EnumerationLimits limits = {});

}  // namespace javai
