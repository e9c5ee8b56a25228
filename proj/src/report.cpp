#include "charsupp/report.hpp"

#include <sstream>
#include <stdexcept>

namespace charsupp {

namespace {

const char* result_text(CheckResult r) {
  switch (r) {
    case CheckResult::pass: return "PASS";
    case CheckResult::fail: return "FAIL";
    case CheckResult::skip: return "SKIP";
  }
  return "?";
}

}  // namespace

std::string CheckLine::render() const {
  std::ostringstream os;
  os << "CHECK " << suite << "." << name << " group=" << group_id << " chi=";
  if (chi < 0)
    os << "-";
  else
    os << chi;
  os << " result=" << result_text(result) << " expected=" << expected << " got=" << got;
  return os.str();
}

std::optional<CheckLine> parse_check_line(const std::string& line) {
  std::istringstream is(line);
  std::string head, id, group, chi, result, expected, got, extra;
  if (!(is >> head >> id >> group >> chi >> result >> expected >> got)) return std::nullopt;
  if (is >> extra) return std::nullopt;
  if (head != "CHECK") return std::nullopt;
  auto dot = id.find('.');
  if (dot == std::string::npos) return std::nullopt;
  CheckLine out;
  out.suite = id.substr(0, dot);
  out.name = id.substr(dot + 1);
  if (group.rfind("group=", 0) != 0 || chi.rfind("chi=", 0) != 0 ||
      result.rfind("result=", 0) != 0 || expected.rfind("expected=", 0) != 0 ||
      got.rfind("got=", 0) != 0)
    return std::nullopt;
  out.group_id = group.substr(6);
  std::string chi_v = chi.substr(4);
  out.chi = chi_v == "-" ? -1 : std::stoi(chi_v);
  std::string res = result.substr(7);
  if (res == "PASS")
    out.result = CheckResult::pass;
  else if (res == "FAIL")
    out.result = CheckResult::fail;
  else if (res == "SKIP")
    out.result = CheckResult::skip;
  else
    return std::nullopt;
  out.expected = expected.substr(9);
  out.got = got.substr(4);
  return out;
}

void ExpectedFailures::add_token(const std::string& token) {
  Entry e;
  std::string rest = token;
  auto at = rest.find('@');
  if (at != std::string::npos) {
    std::string scope = rest.substr(at + 1);
    rest = rest.substr(0, at);
    auto colon = scope.find(":chi");
    if (colon != std::string::npos) {
      e.chi = std::stoi(scope.substr(colon + 4));
      scope = scope.substr(0, colon);
    }
    e.group_id = scope;
  }
  if (rest.find('.') == std::string::npos)
    throw std::runtime_error("malformed expect-fail token '" + token +
                             "' (want suite.name[@group[:chi<k>]])");
  e.id = rest;
  entries_.push_back(std::move(e));
}

void ExpectedFailures::load_manifest(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string word, token, extra;
    if (!(ls >> word)) continue;
    if (word != "expect-fail" || !(ls >> token) || (ls >> extra))
      throw std::runtime_error("manifest line " + std::to_string(line_no) +
                               ": want `expect-fail <token>`");
    add_token(token);
  }
}

bool ExpectedFailures::matches(const CheckLine& line) const {
  for (const Entry& e : entries_) {
    if (e.id != line.id()) continue;
    if (!e.group_id.empty() && e.group_id != line.group_id) continue;
    if (e.chi >= 0 && e.chi != line.chi) continue;
    return true;
  }
  return false;
}

void ReportTally::account(const CheckLine& line, const ExpectedFailures& declared) {
  switch (line.result) {
    case CheckResult::pass: ++pass; break;
    case CheckResult::skip: ++skip; break;
    case CheckResult::fail:
      if (declared.matches(line))
        ++expected_fail;
      else
        ++fail;
      break;
  }
}

std::string ReportTally::summary() const {
  std::ostringstream os;
  os << "SUMMARY pass=" << pass << " fail=" << fail << " skip=" << skip
     << " expected_fail=" << expected_fail;
  return os.str();
}

}  // namespace charsupp
