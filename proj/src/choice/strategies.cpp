#include <algorithm>
#include <cctype>
#include <string>

#include "javai/choice.hpp"

namespace javai {

std::optional<Pick> ScriptedStrategy::choose(const ChoicePoint&) {
  if (consulted_ >= picks_.size()) return std::nullopt;
  return picks_[consulted_++];
}

ScriptedStrategy scripted_strategy(std::vector<Pick> picks) {
  return ScriptedStrategy(std::move(picks));
}

std::optional<std::vector<Pick>> parse_script(std::string_view script) {
  std::vector<Pick> out;
  out.reserve(script.size());
  for (char c : script) {
    if (c == 'L') {
      out.push_back(Pick::Left);
    } else if (c == 'R') {
      out.push_back(Pick::Right);
    } else {
      return std::nullopt;
    }
  }
  return out;
}

std::string script_text(const std::vector<Pick>& picks) {
  std::string out;
  for (Pick p : picks) out += pick_letter(p);
  return out;
}

std::string render_prompt(const ChoicePoint& point) {
  return "Creating " + point.class_name + " as " + point.object_name + ": choose — [1] " +
         point.left_text + "  [2] " + point.right_text;
}

namespace {

std::string trimmed_lower(const std::string& s) {
  auto b = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  auto e = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); })
               .base();
  std::string out = b < e ? std::string(b, e) : std::string();
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::optional<Pick> InteractiveStrategy::choose(const ChoicePoint& point) {
  out_ << render_prompt(point) << "\n> " << std::flush;
  std::string line;
  while (std::getline(in_, line)) {
    std::string answer = trimmed_lower(line);
    if (answer == "1" || answer == "left" || answer == "l") return Pick::Left;
    if (answer == "2" || answer == "right" || answer == "r") return Pick::Right;
    ++reprompts_;
    out_ << "please answer 1 or 2\n" << render_prompt(point) << "\n> " << std::flush;
  }
  out_ << "\n";
  return std::nullopt;
}

FailureReason InteractiveStrategy::refusal(const ChoicePoint&) const {
  return failure::ChannelClosed{};
}

InteractiveStrategy interactive_strategy(std::istream& in, std::ostream& out) {
  return InteractiveStrategy(in, out);
}

}  // namespace javai
