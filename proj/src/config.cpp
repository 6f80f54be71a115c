#include "chowlift/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "chowlift/errors.hpp"

namespace chowlift {

int VarietySpec::dimension() const {
  switch (kind) {
    case Kind::ProjectiveSpace:
      return n;
    case Kind::Product:
      return children[0].dimension() + children[1].dimension();
    case Kind::Quotient:
    case Kind::Blowup:
      return children[0].dimension();
  }
  return 0;
}

std::string VarietySpec::str() const {
  switch (kind) {
    case Kind::ProjectiveSpace:
      return "projective_space(" + std::to_string(n) + ")";
    case Kind::Product:
      return "product(" + children[0].str() + ", " + children[1].str() + ")";
    case Kind::Quotient:
      return "quotient(" + children[0].str() + ", " + action + ")";
    case Kind::Blowup:
      return "blowup(" + children[0].str() + ", " +
             std::to_string(num_points) + ", " + multiplier.get_str() + ")";
  }
  return "";
}

bool operator==(const VarietySpec& a, const VarietySpec& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case VarietySpec::Kind::ProjectiveSpace:
      return a.n == b.n;
    case VarietySpec::Kind::Product:
      return a.children[0] == b.children[0] && a.children[1] == b.children[1];
    case VarietySpec::Kind::Quotient:
      return a.action == b.action && a.children[0] == b.children[0];
    case VarietySpec::Kind::Blowup:
      return a.num_points == b.num_points && a.multiplier == b.multiplier &&
             a.children[0] == b.children[0];
  }
  return false;
}

const std::vector<Task>& all_tasks() {
  static const std::vector<Task> tasks = {
      Task::VerifyCK, Task::Poincare,  Task::MurreB,
      Task::MurreBprime, Task::MurreC, Task::MurreD,
      Task::Lift,     Task::Blowdown,  Task::Roundtrip,
      Task::OracleFuzz,
  };
  return tasks;
}

std::string task_name(Task t) {
  switch (t) {
    case Task::VerifyCK:
      return "verify-ck";
    case Task::Poincare:
      return "poincare";
    case Task::MurreB:
      return "murre-B";
    case Task::MurreBprime:
      return "murre-Bprime";
    case Task::MurreC:
      return "murre-C";
    case Task::MurreD:
      return "murre-D";
    case Task::Lift:
      return "lift";
    case Task::Blowdown:
      return "blowdown";
    case Task::Roundtrip:
      return "roundtrip";
    case Task::OracleFuzz:
      return "oracle-fuzz";
  }
  return "";
}

std::optional<Task> task_from_name(const std::string& name) {
  for (Task t : all_tasks())
    if (task_name(t) == name) return t;
  return std::nullopt;
}

namespace {

// Character cursor with line/column tracking for parse diagnostics.
class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  char take() {
    const char c = peek();
    ++pos_;
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_spaces() {
    while (!done() && (peek() == ' ' || peek() == '\t')) take();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("parse error at line " + std::to_string(line_) +
                      ", column " + std::to_string(col_) + ": " + msg);
  }

  std::string ident() {
    skip_spaces();
    std::string word;
    while (!done() &&
           (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
            peek() == '-'))
      word.push_back(take());
    if (word.empty()) fail("expected an identifier");
    return word;
  }

  long integer() {
    skip_spaces();
    std::string digits;
    if (peek() == '-') digits.push_back(take());
    while (!done() && std::isdigit(static_cast<unsigned char>(peek())))
      digits.push_back(take());
    if (digits.empty() || digits == "-") fail("expected an integer");
    return std::stol(digits);
  }

  Rational rational() {
    skip_spaces();
    std::string body;
    if (peek() == '-') body.push_back(take());
    while (!done() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                       peek() == '/'))
      body.push_back(take());
    Rational q;
    if (!rat_parse(body, q)) fail("expected a rational number");
    return q;
  }

  void expect(char c) {
    skip_spaces();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    take();
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

VarietySpec parse_variety(Cursor& cur) {
  const std::string head = cur.ident();
  VarietySpec spec;
  if (head == "projective_space") {
    spec.kind = VarietySpec::Kind::ProjectiveSpace;
    cur.expect('(');
    spec.n = static_cast<int>(cur.integer());
    cur.expect(')');
  } else if (head == "product") {
    spec.kind = VarietySpec::Kind::Product;
    cur.expect('(');
    spec.children.push_back(parse_variety(cur));
    cur.expect(',');
    spec.children.push_back(parse_variety(cur));
    cur.expect(')');
  } else if (head == "quotient") {
    spec.kind = VarietySpec::Kind::Quotient;
    cur.expect('(');
    spec.children.push_back(parse_variety(cur));
    cur.expect(',');
    cur.skip_spaces();
    spec.action = cur.ident();
    cur.expect(')');
  } else if (head == "blowup") {
    spec.kind = VarietySpec::Kind::Blowup;
    cur.expect('(');
    spec.children.push_back(parse_variety(cur));
    cur.expect(',');
    spec.num_points = static_cast<int>(cur.integer());
    cur.expect(',');
    spec.multiplier = cur.rational();
    cur.expect(')');
  } else {
    cur.fail("unknown variety constructor '" + head + "'");
  }
  return spec;
}

[[noreturn]] void semantic_fail(const std::string& path,
                                const std::string& msg) {
  throw ConfigError("semantic error at " + path + ": " + msg);
}

void check_variety(const VarietySpec& spec, const std::string& path) {
  switch (spec.kind) {
    case VarietySpec::Kind::ProjectiveSpace:
      if (spec.n < 0) semantic_fail(path + ".n", "must be non-negative");
      break;
    case VarietySpec::Kind::Product:
      check_variety(spec.children[0], path + ".product[0]");
      check_variety(spec.children[1], path + ".product[1]");
      break;
    case VarietySpec::Kind::Quotient:
      if (spec.action != "swap" && spec.action != "trivial")
        semantic_fail(path + ".quotient.action",
                      "unknown action '" + spec.action +
                          "' (known actions: swap, trivial)");
      if (spec.action == "swap" &&
          (spec.children[0].kind != VarietySpec::Kind::Product ||
           !(spec.children[0].children[0] == spec.children[0].children[1])))
        semantic_fail(path + ".quotient.action",
                      "swap needs a product of two equal specs");
      check_variety(spec.children[0], path + ".quotient[0]");
      break;
    case VarietySpec::Kind::Blowup:
      if (spec.multiplier == 0)
        semantic_fail(path + ".blowup.multiplier", "must be nonzero");
      if (spec.num_points < 0)
        semantic_fail(path + ".blowup.num_points", "must be non-negative");
      if (spec.children[0].dimension() < 1 && spec.num_points > 0)
        semantic_fail(path + ".blowup",
                      "blow-up needs a base of dimension >= 1");
      check_variety(spec.children[0], path + ".blowup[0]");
      break;
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  bool saw_variety = false;
  bool saw_tasks = false;

  Cursor cur(text);
  while (!cur.done()) {
    cur.skip_spaces();
    if (cur.peek() == '\n') {
      cur.take();
      continue;
    }
    if (cur.peek() == '#') {
      while (!cur.done() && cur.peek() != '\n') cur.take();
      continue;
    }
    if (cur.done()) break;
    const std::string key = cur.ident();
    cur.expect('=');
    if (key == "variety") {
      config.variety = parse_variety(cur);
      saw_variety = true;
    } else if (key == "tasks") {
      cur.expect('[');
      cur.skip_spaces();
      if (cur.peek() != ']') {
        while (true) {
          const std::string name = cur.ident();
          const auto task = task_from_name(name);
          if (!task)
            semantic_fail("tasks", "unknown task '" + name + "'");
          config.tasks.push_back(*task);
          cur.skip_spaces();
          if (cur.peek() == ',') {
            cur.take();
            continue;
          }
          break;
        }
      }
      cur.expect(']');
      saw_tasks = true;
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(cur.integer());
    } else if (key == "format") {
      const std::string value = cur.ident();
      if (value == "text")
        config.format = OutputFormat::Text;
      else if (value == "machine")
        config.format = OutputFormat::Machine;
      else
        semantic_fail("format", "expected text or machine");
    } else if (key == "cases") {
      const long cases = cur.integer();
      if (cases <= 0) semantic_fail("cases", "must be positive");
      config.fuzz_cases = static_cast<int>(cases);
    } else {
      cur.fail("unknown key '" + key + "'");
    }
    cur.skip_spaces();
    if (!cur.done() && cur.peek() != '\n')
      cur.fail("unexpected trailing input after value");
  }

  if (!saw_variety) semantic_fail("variety", "missing");
  if (!saw_tasks || config.tasks.empty())
    semantic_fail("tasks", "task list must be nonempty");
  check_variety(config.variety, "variety");
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_echo(const RunConfig& config) {
  std::ostringstream os;
  os << "    variety = " << config.variety.str() << "\n";
  os << "    tasks = [";
  for (std::size_t i = 0; i < config.tasks.size(); ++i)
    os << (i ? ", " : "") << task_name(config.tasks[i]);
  os << "]\n";
  os << "    seed = " << config.seed << "\n";
  os << "    cases = " << config.fuzz_cases << "\n";
  os << "    format = "
     << (config.format == OutputFormat::Machine ? "machine" : "text") << "\n";
  return os.str();
}

}  // namespace chowlift
