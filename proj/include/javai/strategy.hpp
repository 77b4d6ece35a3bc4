#pragma once

#include <optional>

#include "javai/choice_point.hpp"
#include "javai/store.hpp"

namespace javai {

/// Decision source consulted once per choice point, in prompt order.
class ChoiceStrategy {
 public:
  virtual ~ChoiceStrategy() = default;

  /// Returns the pick for `point`, or nullopt when no answer is available.
  virtual std::optional<Pick> choose(const ChoicePoint& point) = 0;

  /// Failure recorded when choose() returned nullopt.
  virtual FailureReason refusal(const ChoicePoint& point) const {
    return failure::ChoiceScriptExhausted{point.id};
  }
};

}  // namespace javai
