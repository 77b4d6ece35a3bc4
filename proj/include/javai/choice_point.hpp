#pragma once

#include <cstdint>
#include <string>

namespace javai {

enum class Pick { Left, Right };

inline char pick_letter(Pick p) { return p == Pick::Left ? 'L' : 'R'; }
inline const char* pick_word(Pick p) { return p == Pick::Left ? "left" : "right"; }

/// A pending (+) prompt raised while an object is being created.
struct ChoicePoint {
  std::uint64_t id = 0;  // 1-based, increasing within one run
  std::string object_name;
  std::string class_name;
  std::string left_text;
  std::string right_text;

  friend bool operator==(const ChoicePoint&, const ChoicePoint&) = default;
};

struct ChoiceDecision {
  std::uint64_t point_id = 0;
  Pick pick = Pick::Left;

  friend bool operator==(const ChoiceDecision&, const ChoiceDecision&) = default;
};

}  // namespace javai
