#include "cpaths/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>

#include "cpaths/check.hpp"
#include "cpaths/error.hpp"
#include "cpaths/groupoid.hpp"
#include "cpaths/pi1.hpp"
#include "cpaths/rewrite_engine.hpp"
#include "cpaths/syntax.hpp"

namespace cpaths::cli {

namespace {

using nlohmann::json;

struct SpaceOptions {
  std::string name;
  std::string file;
};

struct Common {
  bool json = false;
  SpaceOptions space;
};

void add_space_options(CLI::App* sub, SpaceOptions& opts) {
  auto* by_name = sub->add_option("--space", opts.name, "builtin space name");
  auto* by_file = sub->add_option("--space-file", opts.file, "presentation file");
  by_name->excludes(by_file);
  by_file->excludes(by_name);
}

SpaceRef resolve(const SpaceOptions& opts) {
  if (!opts.file.empty()) return load_space_file(opts.file);
  if (opts.name.empty()) throw PathError(ErrorKind::UnknownSpace, "one of --space or --space-file is required");
  return builtin(opts.name);
}

class Emitter {
 public:
  Emitter(bool as_json, std::ostringstream& out) : json_(as_json), out_(out) {}

  /// Plain mode prints `text` and then each trace line.
  void emit(const std::string& cmd, const std::string& space, const json& input, const std::string& text,
            const json& result, const std::vector<std::string>* trace = nullptr) {
    if (json_) {
      json line = {{"cmd", cmd},
                   {"space", space},
                   {"input", input},
                   {"result", result},
                   {"trace", trace ? json(*trace) : json(nullptr)}};
      out_ << line.dump() << '\n';
      return;
    }
    out_ << text << '\n';
    if (trace)
      for (const auto& s : *trace) out_ << s << '\n';
  }

 private:
  bool json_;
  std::ostringstream& out_;
};

std::string space_label(const SpaceRef& s) { return std::string(s->name()); }

}  // namespace

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CLI::App app{"Computational paths over finitely presented spaces"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.json, "one JSON object per output line");

  std::string expr, expr2, value;
  bool emit_trace = false;
  CheckOptions check;

  auto* normalize_cmd = app.add_subcommand("normalize", "print the normal form word");
  add_space_options(normalize_cmd, common.space);
  normalize_cmd->add_flag("--emit-trace", emit_trace, "print the rewrite steps");
  normalize_cmd->add_option("expr", expr)->required();

  auto* equal_cmd = app.add_subcommand("equal", "decide rewrite equality of two paths");
  add_space_options(equal_cmd, common.space);
  equal_cmd->add_option("expr1", expr)->required();
  equal_cmd->add_option("expr2", expr2)->required();

  auto* encode_cmd = app.add_subcommand("encode", "map a basepoint loop to its group value");
  add_space_options(encode_cmd, common.space);
  encode_cmd->add_option("expr", expr)->required();

  auto* decode_cmd = app.add_subcommand("decode", "map a group value to a loop normal form");
  add_space_options(decode_cmd, common.space);
  decode_cmd->add_option("value", value)->required();

  auto* check_cmd = app.add_subcommand("check", "run the randomized invariant suites");
  add_space_options(check_cmd, common.space);
  check_cmd->add_option("--seed", check.seed, "random seed");
  check_cmd->add_option("--size", check.max_size, "largest random term size")->check(CLI::PositiveNumber);
  check_cmd->add_option("--samples", check.samples, "samples per suite")->check(CLI::PositiveNumber);
  check_cmd->add_option("--max-states", check.budget.max_states, "oracle state budget")->check(CLI::PositiveNumber);
  check_cmd->add_option("--max-term-size", check.budget.max_term_size, "oracle term size cap (0: input size + 6)");

  auto* spaces_cmd = app.add_subcommand("spaces", "list the builtin spaces");

  // --json may also follow the subcommand
  for (auto* sub : app.get_subcommands({}))
    sub->add_flag("--json", common.json, "one JSON object per output line");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return {code == 0 ? 0 : 2, out.str(), err.str()};
  }

  Emitter emitter(common.json, out);
  int code = 0;
  try {
    if (spaces_cmd->parsed()) {
      for (auto name : kBuiltinNames) {
        SpaceRef s = builtin(name);
        std::string tag(group_tag_name(s->tag()));
        emitter.emit("spaces", std::string(name), nullptr, std::string(name) + " " + tag, tag);
      }
    } else if (normalize_cmd->parsed()) {
      SpaceRef s = resolve(common.space);
      PathExpr p = parse_path(*s, expr);
      if (emit_trace) {
        Trace t = trace(*s, p);
        std::vector<std::string> lines;
        for (const auto& step : t.steps) lines.push_back(to_string(step));
        std::string word = render_word(*s, t.normal_form.word);
        emitter.emit("normalize", space_label(s), expr, word, word, &lines);
      } else {
        std::string word = render_word(*s, normalize(*s, p).word);
        emitter.emit("normalize", space_label(s), expr, word, word);
      }
    } else if (equal_cmd->parsed()) {
      SpaceRef s = resolve(common.space);
      PathExpr p = parse_path(*s, expr), q = parse_path(*s, expr2);
      bool eq = rw_eq(*s, p, q);
      std::string text = eq ? "equal" : "not-equal";
      emitter.emit("equal", space_label(s), json::array({expr, expr2}), text, text);
      code = eq ? 0 : 1;
    } else if (encode_cmd->parsed()) {
      SpaceRef s = resolve(common.space);
      std::string text = render(encode(s, class_of(s, parse_path(*s, expr))));
      emitter.emit("encode", space_label(s), expr, text, text);
    } else if (decode_cmd->parsed()) {
      SpaceRef s = resolve(common.space);
      if (s->tag() == GroupTag::None)
        throw PathError(ErrorKind::GroupTagMismatch, "space '" + space_label(s) + "' has no group tag");
      std::string word = render_word(*s, decode(s, parse_group_value(s->tag(), value)).word());
      emitter.emit("decode", space_label(s), value, word, word);
    } else if (check_cmd->parsed()) {
      SpaceRef s = resolve(common.space);
      auto results = run_check_suites(s, check);
      json report = json::array();
      std::ostringstream text;
      bool all = true;
      for (const auto& r : results) {
        all = all && r.passed;
        report.push_back({{"suite", r.name}, {"passed", r.passed}, {"checks", r.checks}, {"detail", r.detail}});
        text << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)";
        if (!r.detail.empty()) text << ": " << r.detail;
        text << '\n';
      }
      text << (all ? "all suites passed" : "some suites failed");
      json input = {{"seed", check.seed}, {"size", check.max_size}, {"samples", check.samples}};
      emitter.emit("check", space_label(s), input, text.str(), report);
      code = all ? 0 : 1;
    }
  } catch (const PathError& e) {
    err << "error: " << e.what() << '\n';
    return {2, out.str(), err.str()};
  }
  return {code, out.str(), err.str()};
}

}  // namespace cpaths::cli
