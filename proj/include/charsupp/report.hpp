#pragma once

#include <optional>
#include <string>
#include <vector>

namespace charsupp {

enum class CheckResult { pass, fail, skip };

// One verification check, rendered as a single report line:
//   CHECK <suite>.<name> group=<id> chi=<k> result=PASS|FAIL|SKIP
//         expected=<...> got=<...>
// Field values never contain whitespace.
struct CheckLine {
  std::string suite;
  std::string name;
  std::string group_id;
  int32_t chi = -1;  // -1 renders as '-'
  CheckResult result = CheckResult::pass;
  std::string expected;
  std::string got;

  std::string id() const { return suite + "." + name; }
  std::string render() const;
};

std::optional<CheckLine> parse_check_line(const std::string& line);

// Declared negative controls. Tokens have the shape
//   <suite>.<name>[@<group-id>[:chi<k>]]
// and may come from the command line or a manifest file (lines of
// `expect-fail <token>`, '#' comments allowed).
class ExpectedFailures {
 public:
  void add_token(const std::string& token);
  void load_manifest(const std::string& text);
  bool matches(const CheckLine& line) const;
  size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    std::string id;
    std::string group_id;  // empty = any
    int32_t chi = -1;      // -1 = any
  };
  std::vector<Entry> entries_;
};

struct ReportTally {
  uint32_t pass = 0;
  uint32_t fail = 0;
  uint32_t skip = 0;
  uint32_t expected_fail = 0;

  void account(const CheckLine& line, const ExpectedFailures& declared);
  bool clean() const { return fail == 0; }
  std::string summary() const;
};

}  // namespace charsupp
