#include "javai/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "javai/choice.hpp"
#include "javai/engine.hpp"
#include "javai/parser.hpp"
#include "javai/printer.hpp"
#include "javai/service.hpp"

namespace javai::cli {

namespace {

struct CliConfig {
  std::string source_path;
  std::string choices;
  bool interactive = false;
  bool trace = false;
  std::size_t max_depth = 10'000;
  std::size_t max_outcomes = 1024;
  std::string host = "127.0.0.1";
  int port = 7477;
  std::string cors_origin = "*";
  std::string static_dir;
  int session_ttl_minutes = 30;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Loads and parses the source, reporting problems on `err`. Returns the exit
// code to use on failure through `code`.
std::shared_ptr<const SourceProgram> load_program(const std::string& path, std::ostream& err,
                                                  int& code) {
  std::optional<std::string> source = read_file(path);
  if (!source) {
    err << "javai: cannot read " << path << "\n";
    code = kUsageError;
    return nullptr;
  }
  try {
    return std::make_shared<const SourceProgram>(parse_program(*source));
  } catch (const ParseError& e) {
    err << path << ": " << e.what() << "\n";
    code = kParseError;
    return nullptr;
  }
}

int exit_code_for(const ExecutionState& s) {
  if (s.status() == ExecutionState::Status::Finished) return kSuccess;
  if (std::holds_alternative<failure::ChoiceScriptExhausted>(*s.failure())) return kScriptExhausted;
  return kExecutionFailure;
}

int cmd_run(const CliConfig& config, bool scripted, std::istream& in, std::ostream& out,
            std::ostream& err) {
  int code = kSuccess;
  auto program = load_program(config.source_path, err, code);
  if (!program) return code;

  std::unique_ptr<ChoiceStrategy> chooser;
  if (scripted) {
    chooser = std::make_unique<ScriptedStrategy>(*parse_script(config.choices));
  } else {
    chooser = std::make_unique<InteractiveStrategy>(in, err);
  }

  RunOptions options;
  options.limits.max_call_depth = config.max_depth;
  if (config.trace) options.trace = [&err](const std::string& line) { err << line << "\n"; };

  // Output is flushed at every suspension so interactive users see earlier
  // prints before the next prompt.
  std::size_t printed = 0;
  auto flush = [&](const ExecutionState& s) {
    const auto& log = s.store().output();
    for (; printed < log.size(); ++printed) out << log[printed] << "\n";
    out.flush();
  };

  ExecutionState state = advance(ExecutionState::start(program, options));
  flush(state);
  while (state.status() == ExecutionState::Status::AwaitingChoice) {
    const ChoicePoint point = *state.pending_choice();
    std::optional<Pick> pick = chooser->choose(point);
    if (!pick) {
      state.refuse(chooser->refusal(point));
      break;
    }
    state = resume(std::move(state), ChoiceDecision{point.id, *pick});
    flush(state);
  }
  if (const FailureReason* f = state.failure()) err << "error: " << describe_failure(*f) << "\n";
  return exit_code_for(state);
}

void print_fields(std::ostream& out, const std::vector<std::pair<std::string, FieldMap>>& objects) {
  for (const auto& [name, fields] : objects) {
    out << "  object " << name << ":";
    if (fields.empty()) out << " (no fields)";
    for (std::size_t i = 0; i < fields.size(); ++i) {
      out << (i ? ", " : " ") << fields[i].first << " = " << value_literal(fields[i].second);
    }
    out << "\n";
  }
}

int cmd_enumerate(const CliConfig& config, std::ostream& out, std::ostream& err) {
  int code = kSuccess;
  auto program = load_program(config.source_path, err, code);
  if (!program) return code;

  EnumerationLimits limits;
  limits.max_outcomes = config.max_outcomes;
  limits.max_call_depth = config.max_depth;
  Enumeration result = enumerate_outcomes(program, limits);

  for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
    const Outcome& o = result.outcomes[i];
    std::string picks = script_text(o.picks());
    out << "outcome " << (i + 1) << ": choices " << (picks.empty() ? "(none)" : picks) << "\n";
    out << "  status: "
        << (o.finished() ? std::string("finished") : "failed (" + describe_failure(*o.failure) + ")")
        << "\n";
    out << "  output:";
    if (o.output.empty()) out << " (none)";
    out << "\n";
    for (const auto& line : o.output) out << "    " << line << "\n";
    print_fields(out, o.final_fields);
  }
  out << result.outcomes.size() << " outcomes";
  if (result.truncated) out << " (truncated at max-outcomes=" << config.max_outcomes << ")";
  out << "\n";
  return kSuccess;
}

int cmd_parse(const CliConfig& config, std::ostream& out, std::ostream& err) {
  int code = kSuccess;
  auto program = load_program(config.source_path, err, code);
  if (!program) return code;
  out << dump_ast(*program);
  return kSuccess;
}

int cmd_serve(const CliConfig& config, std::ostream& err) {
  service::ServiceOptions options;
  options.idle_ttl = std::chrono::minutes(config.session_ttl_minutes);
  options.max_call_depth = config.max_depth;
  options.default_max_outcomes = config.max_outcomes;
  service::SessionManager sessions(options);
  service::HttpOptions http{config.cors_origin, config.static_dir};
  err << "javai: serving on http://" << config.host << ":" << config.port << "\n" << std::flush;
  if (!service::serve(config.host, config.port, sessions, http)) {
    err << "javai: cannot listen on " << config.host << ":" << config.port << "\n";
    return kExecutionFailure;
  }
  return kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CliConfig config;
  CLI::App app{"Interpreter for an object-oriented core language with choice-disjunctive "
               "declarations",
               "javai"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a program");
  run->add_option("file", config.source_path, "Source file")->required();
  auto* choices = run->add_option("--choices", config.choices,
                                  "Scripted picks, one L or R per prompt (e.g. LRL)")
                     ->expected(0, 1);
  auto* interactive = run->add_flag("--interactive", config.interactive,
                                    "Ask for each choice on the terminal (default)");
  choices->excludes(interactive);
  run->add_flag("--trace", config.trace, "Log each applied execution rule to stderr");
  run->add_option("--max-depth", config.max_depth, "Maximum procedure call depth")
      ->check(CLI::PositiveNumber);

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate every choice resolution");
  enumerate->add_option("file", config.source_path, "Source file")->required();
  enumerate->add_option("--max-outcomes", config.max_outcomes, "Stop after this many outcomes")
      ->check(CLI::PositiveNumber);
  enumerate->add_option("--max-depth", config.max_depth, "Maximum procedure call depth")
      ->check(CLI::PositiveNumber);

  auto* parse = app.add_subcommand("parse", "Print the syntax tree of a program");
  parse->add_option("file", config.source_path, "Source file")->required();

  auto* serve = app.add_subcommand("serve", "Serve the session API over HTTP");
  serve->add_option("--port", config.port, "TCP port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", config.host, "Bind address");
  serve->add_option("--cors-origin", config.cors_origin, "Access-Control-Allow-Origin value");
  serve->add_option("--static-dir", config.static_dir, "Directory served at /")
      ->check(CLI::ExistingDirectory);
  serve->add_option("--session-ttl", config.session_ttl_minutes, "Idle session expiry in minutes")
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  bool scripted = run->parsed() && choices->count() > 0;
  if (scripted && !parse_script(config.choices)) {
    err << "javai: --choices accepts only the letters L and R\n";
    return kUsageError;
  }

  if (run->parsed()) return cmd_run(config, scripted, in, out, err);
  if (enumerate->parsed()) return cmd_enumerate(config, out, err);
  if (parse->parsed()) return cmd_parse(config, out, err);
  return cmd_serve(config, err);
}

}  // namespace javai::cli
