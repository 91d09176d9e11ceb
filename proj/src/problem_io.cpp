#include "slt/problem_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "slt/error.hpp"

namespace slt {

namespace {

constexpr std::string_view kPaperExample = R"(# -y'' = lambda y on [-pi, 0) and (0, pi]
# y(-pi) + lambda y'(-pi) = 0
# lambda y(pi) + y'(pi) = 0
# y(0-) = 2 y(0+), y'(0-) = y'(0+)
[domain]
a = -3.14159265358979323846
c = 0
b = 3.14159265358979323846

[equation]
p_minus = 1
p_plus = 1
q_minus_poly = 0
q_plus_poly = 0

[bc_left]
alpha10 = 1
alpha11 = 0
alpha10p = 0
alpha11p = 1

[bc_right]
alpha20 = 0
alpha21 = -1
alpha20p = 1
alpha21p = 0

[transmission]
row1 = 1 0 -2 0
row2 = 0 1 0 -1
)";

constexpr std::string_view kDeskBenchmark = R"(# paper-example with y(0-) = 2 y(0+) + y'(0+), so Delta24 = 1
[domain]
a = -3.14159265358979323846
c = 0
b = 3.14159265358979323846

[equation]
p_minus = 1
p_plus = 1
q_minus_poly = 0
q_plus_poly = 0

[bc_left]
alpha10 = 1
alpha11 = 0
alpha10p = 0
alpha11p = 1

[bc_right]
alpha20 = 0
alpha21 = -1
alpha20p = 1
alpha21p = 0

[transmission]
row1 = 1 0 -2 -1
row2 = 0 1 0 -1
)";

constexpr std::string_view kDirichlet = R"(# -y'' = lambda y, y(0) = y(pi) = 0, continuous at pi/2; lambda_n = n^2
[domain]
a = 0
c = 1.57079632679489661923
b = 3.14159265358979323846

[equation]
p_minus = 1
p_plus = 1
q_minus_poly = 0
q_plus_poly = 0

[bc_left]
alpha10 = 1

[bc_right]
alpha20 = 1

[transmission]
row1 = 1 0 -1 0
row2 = 0 1 0 -1
)";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(int line, const std::string& what) {
  std::ostringstream msg;
  msg << "line " << line << ": " << what;
  throw Error(ErrorKind::Parse, msg.str());
}

std::vector<double> numbers(std::string_view s, int line) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    const auto tok = s.substr(i, j - i);
    // from_chars rejects a leading '+'
    const auto body = tok.front() == '+' ? tok.substr(1) : tok;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc{} || ptr != body.data() + body.size() || body.empty()) {
      parse_error(line, "not a number: '" + std::string(tok) + "'");
    }
    out.push_back(v);
    i = j;
  }
  return out;
}

double scalar(std::string_view s, int line, std::string_view key) {
  const auto v = numbers(s, line);
  if (v.size() != 1) parse_error(line, std::string(key) + " expects one number");
  return v.front();
}

std::array<double, 4> four(std::string_view s, int line, std::string_view what) {
  const auto v = numbers(s, line);
  if (v.size() != 4) parse_error(line, std::string(what) + " expects four numbers");
  return {v[0], v[1], v[2], v[3]};
}

bool boolean(std::string_view s, int line) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  parse_error(line, "expected true or false, got '" + std::string(s) + "'");
}

}  // namespace

Potential polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return [coeffs = std::move(coeffs)](double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
}

ProblemSpec parse_problem(std::string_view text) {
  ProblemSpec spec;
  spec.bc = {};
  bool have_a = false, have_c = false, have_b = false;
  TransmissionCoefficients::Matrix beta{{{1.0, 0.0, -1.0, 0.0}, {0.0, 1.0, 0.0, -1.0}}};
  int rows_seen = 0;
  bool bare_bc_left = false, bare_bc_right = false;

  const std::map<std::string_view, double BoundaryCoefficients::*> left_keys{
      {"alpha10", &BoundaryCoefficients::alpha10},
      {"alpha11", &BoundaryCoefficients::alpha11},
      {"alpha10p", &BoundaryCoefficients::alpha10p},
      {"alpha11p", &BoundaryCoefficients::alpha11p}};
  const std::map<std::string_view, double BoundaryCoefficients::*> right_keys{
      {"alpha20", &BoundaryCoefficients::alpha20},
      {"alpha21", &BoundaryCoefficients::alpha21},
      {"alpha20p", &BoundaryCoefficients::alpha20p},
      {"alpha21p", &BoundaryCoefficients::alpha21p}};

  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto cut = line.find_first_of("#;"); cut != std::string_view::npos) {
      line = line.substr(0, cut);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') parse_error(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "domain" && section != "equation" && section != "bc_left" &&
          section != "bc_right" && section != "transmission" && section != "options") {
        parse_error(line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    if (section.empty()) parse_error(line_no, "content before the first section");

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      if (section == "bc_left" && !bare_bc_left) {
        const auto v = four(line, line_no, "bc_left");
        spec.bc.alpha10 = v[0], spec.bc.alpha11 = v[1], spec.bc.alpha10p = v[2],
        spec.bc.alpha11p = v[3];
        bare_bc_left = true;
      } else if (section == "bc_right" && !bare_bc_right) {
        const auto v = four(line, line_no, "bc_right");
        spec.bc.alpha20 = v[0], spec.bc.alpha21 = v[1], spec.bc.alpha20p = v[2],
        spec.bc.alpha21p = v[3];
        bare_bc_right = true;
      } else if (section == "transmission" && rows_seen < 2) {
        beta[rows_seen++] = four(line, line_no, "transmission row");
      } else {
        parse_error(line_no, "expected key = value");
      }
      continue;
    }

    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (value.empty()) parse_error(line_no, "missing value for " + std::string(key));

    if (section == "domain") {
      if (key == "a") spec.domain.a = scalar(value, line_no, key), have_a = true;
      else if (key == "c") spec.domain.c = scalar(value, line_no, key), have_c = true;
      else if (key == "b") spec.domain.b = scalar(value, line_no, key), have_b = true;
      else parse_error(line_no, "unknown key '" + std::string(key) + "' in [domain]");
    } else if (section == "equation") {
      if (key == "p_minus") spec.coeffs.p_minus = scalar(value, line_no, key);
      else if (key == "p_plus") spec.coeffs.p_plus = scalar(value, line_no, key);
      else if (key == "q_minus_poly") spec.coeffs.q_minus = polynomial(numbers(value, line_no));
      else if (key == "q_plus_poly") spec.coeffs.q_plus = polynomial(numbers(value, line_no));
      else if (key == "q_minus") spec.coeffs.q_minus = polynomial({scalar(value, line_no, key)});
      else if (key == "q_plus") spec.coeffs.q_plus = polynomial({scalar(value, line_no, key)});
      else parse_error(line_no, "unknown key '" + std::string(key) + "' in [equation]");
    } else if (section == "bc_left" || section == "bc_right") {
      const auto& keys = section == "bc_left" ? left_keys : right_keys;
      const auto it = keys.find(key);
      if (it == keys.end()) {
        parse_error(line_no, "unknown key '" + std::string(key) + "' in [" + section + "]");
      }
      spec.bc.*(it->second) = scalar(value, line_no, key);
    } else if (section == "transmission") {
      if (key == "row1") beta[0] = four(value, line_no, "row1");
      else if (key == "row2") beta[1] = four(value, line_no, "row2");
      else parse_error(line_no, "unknown key '" + std::string(key) + "' in [transmission]");
    } else if (section == "options") {
      if (key == "strict") spec.strict = boolean(value, line_no);
      else parse_error(line_no, "unknown key '" + std::string(key) + "' in [options]");
    }
  }
  if (!have_a || !have_c || !have_b) {
    throw Error(ErrorKind::Parse, "[domain] needs a, c and b");
  }
  if (rows_seen == 1) throw Error(ErrorKind::Parse, "[transmission] needs two rows");
  spec.tm = TransmissionCoefficients(beta);
  return spec;
}

ProblemSpec read_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::vector<std::string> builtin_names() { return {"paper-example", "desk-benchmark", "dirichlet"}; }

std::optional<std::string_view> builtin_text(std::string_view name) {
  if (name == "paper-example") return kPaperExample;
  if (name == "desk-benchmark") return kDeskBenchmark;
  if (name == "dirichlet") return kDirichlet;
  return std::nullopt;
}

ValidatedProblem load_problem(const std::string& name_or_path, bool strict) {
  ProblemSpec spec;
  if (const auto text = builtin_text(name_or_path)) {
    spec = parse_problem(*text);
  } else {
    spec = read_problem_file(name_or_path);
  }
  spec.strict = spec.strict || strict;
  return validate(std::move(spec));
}

}  // namespace slt
