#include "pensionsim/scenario.hpp"

#include <cctype>
#include <stdexcept>

namespace pensionsim {

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_spaces() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw std::runtime_error("scenario parse error at position " + std::to_string(pos) +
                             ": expected " + expected);
  }

  void expect_char(char c, const std::string& what) {
    skip_spaces();
    if (pos >= text.size() || text[pos] != c) fail(what);
    ++pos;
  }

  std::string word() {
    skip_spaces();
    std::string w;
    while (pos < text.size() &&
           std::isalnum(static_cast<unsigned char>(text[pos]))) {
      w += static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
      ++pos;
    }
    return w;
  }

  bool flag() {
    const std::size_t at = pos;
    const std::string w = word();
    if (w == "ON" || w == "1") return true;
    if (w == "OFF" || w == "0") return false;
    pos = at;
    fail("ON, OFF, 1 or 0");
  }

  DistKind dist() {
    const std::size_t at = pos;
    const std::string w = word();
    if (w == "U") return DistKind::Uniform;
    if (w == "N") return DistKind::Normal;
    pos = at;
    fail("U or N");
  }
};

}  // namespace

ScenarioTriple parse_scenario(std::string_view text) {
  Cursor c{text};
  c.skip_spaces();
  if (c.pos >= text.size() ||
      std::toupper(static_cast<unsigned char>(text[c.pos])) != 'S') {
    c.fail("'S'");
  }
  ++c.pos;
  c.expect_char('(', "'('");
  ScenarioTriple t;
  t.social_services = c.flag();
  c.expect_char(',', "','");
  t.productivity_decay = c.flag();
  c.expect_char(',', "','");
  t.dist_kind = c.dist();
  c.expect_char(')', "')'");
  c.skip_spaces();
  if (c.pos != text.size()) c.fail("end of input");
  return t;
}

std::string render_scenario(const ScenarioTriple& t) {
  std::string out = "S(";
  out += t.social_services ? "ON" : "OFF";
  out += ',';
  out += t.productivity_decay ? "ON" : "OFF";
  out += ',';
  out += t.dist_kind == DistKind::Uniform ? 'U' : 'N';
  out += ')';
  return out;
}

ScenarioSpec ScenarioSpec::from_triple(const ScenarioTriple& triple) {
  ScenarioSpec s;
  s.policy.social_services = triple.social_services;
  s.policy.productivity_decay = triple.productivity_decay;
  s.dist_kind = triple.dist_kind;
  if (triple.dist_kind == DistKind::Normal) {
    s.vision_dist = DistributionSpec::clamped_normal(3.5, 0.8, 1, 6, true);
    s.metabolism_dist = DistributionSpec::clamped_normal(2.5, 0.5, 1, 4, true);
    s.age_to_reproduce_dist = DistributionSpec::clamped_normal(32.5, 5.8, 15, 50, true);
  }
  return s;
}

void ScenarioSpec::validate() const {
  policy.validate();
  vision_dist.validate();
  metabolism_dist.validate();
  age_to_reproduce_dist.validate();
  children_dist.validate();
  max_age_dist.validate();
  wealth_dist.validate();
  if (initial_population < 0) {
    throw std::invalid_argument("ScenarioSpec: initial_population must be >= 0");
  }
  if (!landscape_template && (landscape_width < 10 || landscape_height < 10)) {
    throw std::invalid_argument("ScenarioSpec: landscape dimensions must be >= 10");
  }
}

}  // namespace pensionsim
