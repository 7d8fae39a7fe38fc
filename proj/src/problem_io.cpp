#include "dqaoa/problem_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "dqaoa/error.hpp"
#include "dqaoa/format.hpp"

namespace dqaoa {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, Leq, Geq, Eq, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  int column = 1;
  int line = 0;
};

std::vector<Token> tokenize(std::string_view line, int line_no, int column_base) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char ch = line[i];
    const int col = column_base + static_cast<int>(i);
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t j = i;
      while (j < line.size() && (std::isdigit(static_cast<unsigned char>(line[j])) || line[j] == '.')) ++j;
      if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
        if (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) {
          j = k;
          while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
        }
      }
      Token t{Tok::Number, std::string(line.substr(i, j - i)), 0.0, col};
      auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
      if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size())
        throw ParseError(line_no, col, "malformed number '" + t.text + "'");
      out.push_back(std::move(t));
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(line.substr(i, j - i)), 0.0, col});
      i = j;
      continue;
    }
    auto two = line.substr(i, 2);
    if (two == "<=") {
      out.push_back({Tok::Leq, "<=", 0.0, col});
      i += 2;
    } else if (two == ">=") {
      out.push_back({Tok::Geq, ">=", 0.0, col});
      i += 2;
    } else if (two == "==") {
      out.push_back({Tok::Eq, "==", 0.0, col});
      i += 2;
    } else if (ch == '+') {
      out.push_back({Tok::Plus, "+", 0.0, col});
      ++i;
    } else if (ch == '-') {
      out.push_back({Tok::Minus, "-", 0.0, col});
      ++i;
    } else if (ch == '*') {
      out.push_back({Tok::Star, "*", 0.0, col});
      ++i;
    } else if (ch == '^') {
      out.push_back({Tok::Caret, "^", 0.0, col});
      ++i;
    } else {
      throw ParseError(line_no, col, std::string("unexpected character '") + ch + "'");
    }
  }
  out.push_back({Tok::End, "", 0.0, column_base + static_cast<int>(line.size())});
  for (auto& t : out) t.line = line_no;
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> toks, std::map<std::string, int>& index, std::vector<std::string>& names)
      : toks_(std::move(toks)), index_(index), names_(names) {}

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of line" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, "expected " + expected + ", found " + got);
  }

  MultilinearPolynomial expression() {
    MultilinearPolynomial poly;
    double sign = 1.0;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) sign = take().kind == Tok::Minus ? -1.0 : 1.0;
    term(poly, sign);
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      sign = take().kind == Tok::Minus ? -1.0 : 1.0;
      term(poly, sign);
    }
    return poly;
  }

  double integer_rhs() {
    double sign = 1.0;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) sign = take().kind == Tok::Minus ? -1.0 : 1.0;
    if (peek().kind != Tok::Number) fail("integer right-hand side");
    const Token t = take();
    if (t.number != std::floor(t.number)) throw ParseError(t.line, t.column, "right-hand side must be an integer");
    return sign * t.number;
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail("end of line");
  }

 private:
  void term(MultilinearPolynomial& poly, double sign) {
    double coeff = 1.0;
    VarSet vars;
    if (peek().kind == Tok::Number) {
      coeff = take().number;
      if (peek().kind == Tok::Star) {
        take();
        if (peek().kind != Tok::Ident) fail("variable after '*'");
      }
      if (peek().kind == Tok::Ident) product(vars);
    } else if (peek().kind == Tok::Ident) {
      product(vars);
    } else {
      fail("coefficient or variable");
    }
    poly.add_term(std::move(vars), sign * coeff);
  }

  void product(VarSet& vars) {
    vars.push_back(variable());
    while (peek().kind == Tok::Star) {
      take();
      if (peek().kind != Tok::Ident) fail("variable after '*'");
      vars.push_back(variable());
    }
  }

  int variable() {
    const Token t = take();
    if (peek().kind == Tok::Caret)
      throw ParseError(peek().line, peek().column, "multilinear only: exponents are not allowed (x^k = x for Boolean x)");
    auto [it, inserted] = index_.try_emplace(t.text, static_cast<int>(names_.size()));
    if (inserted) names_.push_back(t.text);
    return it->second;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, int>& index_;
  std::vector<std::string>& names_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Returns the header length ("min:"/"max:") if the line starts with one, else 0.
std::size_t header_length(std::string_view line, Sense& sense) {
  auto t = line;
  std::size_t lead = 0;
  while (lead < t.size() && std::isspace(static_cast<unsigned char>(t[lead]))) ++lead;
  t.remove_prefix(lead);
  if (t.size() < 4 || t[3] != ':') return 0;
  std::string word(t.substr(0, 3));
  for (auto& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (word == "min")
    sense = Sense::Minimize;
  else if (word == "max")
    sense = Sense::Maximize;
  else
    return 0;
  return lead + 4;
}

void write_expression(std::ostream& os, const MultilinearPolynomial& p, const std::vector<std::string>& names,
                      bool skip_constant) {
  bool first = true;
  for (const auto& [vars, c] : p.terms()) {
    if (skip_constant && vars.empty()) continue;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    os << format_number(std::abs(c));
    for (std::size_t k = 0; k < vars.size(); ++k) os << (k == 0 ? " " : "*") << names.at(vars[k]);
  }
  if (first) os << "0";
}

nlohmann::json terms_to_json(const MultilinearPolynomial& p, const std::vector<std::string>& names,
                             bool skip_constant) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [vars, c] : p.terms()) {
    if (skip_constant && vars.empty()) continue;
    nlohmann::json v = nlohmann::json::array();
    for (int i : vars) v.push_back(names.at(i));
    arr.push_back({{"vars", v}, {"coeff", c}});
  }
  return arr;
}

MultilinearPolynomial terms_from_json(const nlohmann::json& arr, std::map<std::string, int>& index,
                                      std::vector<std::string>& names) {
  MultilinearPolynomial p;
  for (const auto& t : arr) {
    VarSet vars;
    for (const auto& v : t.at("vars")) {
      const auto name = v.get<std::string>();
      auto [it, inserted] = index.try_emplace(name, static_cast<int>(names.size()));
      if (inserted) names.push_back(name);
      vars.push_back(it->second);
    }
    p.add_term(std::move(vars), t.at("coeff").get<double>());
  }
  return p;
}

}  // namespace

bool looks_like_problem(std::string_view source) {
  std::istringstream is{std::string(source)};
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    std::string_view body = std::string_view(line).substr(0, hash);
    Sense s;
    if (header_length(body, s) > 0) return true;
  }
  return false;
}

ConstrainedProblem parse_problem(std::string_view source) {
  ConstrainedProblem problem;
  std::map<std::string, int> index;
  bool have_objective = false;

  // (line number, content without comment); blank lines dropped.
  std::vector<std::pair<int, std::string_view>> lines;
  int line_no = 0;
  for (std::size_t start = 0; start <= source.size();) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view line = source.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty()) lines.emplace_back(line_no, line);
  }

  // An objective may continue on following lines that start with '+' or '-' and hold no relation.
  auto continues = [](std::string_view line) {
    const auto t = trim(line);
    return (t.front() == '+' || t.front() == '-') && t.find("<=") == std::string_view::npos &&
           t.find(">=") == std::string_view::npos && t.find("==") == std::string_view::npos;
  };

  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto [ln, line] = lines[k];
    Sense sense{};
    if (const std::size_t hl = header_length(line, sense); hl > 0) {
      if (have_objective) throw ParseError(ln, 1, "duplicate objective");
      std::vector<Token> toks = tokenize(line.substr(hl), ln, static_cast<int>(hl) + 1);
      while (k + 1 < lines.size() && continues(lines[k + 1].second)) {
        ++k;
        toks.pop_back();
        auto more = tokenize(lines[k].second, lines[k].first, 1);
        toks.insert(toks.end(), more.begin(), more.end());
      }
      LineParser p(std::move(toks), index, problem.variable_names);
      problem.objective = p.expression();
      p.expect_end();
      problem.sense = sense;
      have_objective = true;
    } else {
      LineParser p(tokenize(line, ln, 1), index, problem.variable_names);
      MultilinearPolynomial lhs = p.expression();
      const Tok op = p.peek().kind;
      if (op != Tok::Leq && op != Tok::Geq && op != Tok::Eq) p.fail("'<=', '>=' or '=='");
      p.take();
      const double rhs = p.integer_rhs();
      p.expect_end();
      Constraint c;
      if (op == Tok::Geq) {
        c.poly = MultilinearPolynomial(rhs) - lhs;
        c.kind = ConstraintKind::LeqZero;
      } else {
        c.poly = lhs - MultilinearPolynomial(rhs);
        c.kind = op == Tok::Eq ? ConstraintKind::EqualZero : ConstraintKind::LeqZero;
      }
      problem.constraints.push_back(std::move(c));
    }
  }
  if (!have_objective) throw ParseError(line_no, 1, "missing objective: expected 'min:' or 'max:' line");
  return problem;
}

std::string format_problem(const ConstrainedProblem& problem) {
  std::ostringstream os;
  os << (problem.sense == Sense::Maximize ? "max: " : "min: ");
  write_expression(os, problem.objective, problem.variable_names, false);
  os << "\n";
  for (const auto& c : problem.constraints) {
    write_expression(os, c.poly, problem.variable_names, true);
    os << (c.kind == ConstraintKind::EqualZero ? " == " : " <= ") << format_number(-c.poly.constant()) << "\n";
  }
  return os.str();
}

nlohmann::json problem_to_json(const ConstrainedProblem& problem) {
  nlohmann::json j;
  j["sense"] = problem.sense == Sense::Maximize ? "max" : "min";
  j["variables"] = problem.variable_names;
  j["terms"] = terms_to_json(problem.objective, problem.variable_names, false);
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : problem.constraints) {
    cons.push_back({{"terms", terms_to_json(c.poly, problem.variable_names, true)},
                    {"kind", c.kind == ConstraintKind::EqualZero ? "eq" : "leq"},
                    {"rhs", -c.poly.constant()}});
  }
  j["constraints"] = cons;
  if (problem.negated) j["negated"] = true;
  return j;
}

ConstrainedProblem problem_from_json(const nlohmann::json& j) {
  ConstrainedProblem problem;
  std::map<std::string, int> index;
  if (j.contains("variables")) {
    for (const auto& v : j.at("variables")) {
      const auto name = v.get<std::string>();
      if (index.try_emplace(name, static_cast<int>(problem.variable_names.size())).second)
        problem.variable_names.push_back(name);
    }
  }
  const auto sense = j.at("sense").get<std::string>();
  if (sense != "min" && sense != "max") throw InputError("sense must be \"min\" or \"max\"");
  problem.sense = sense == "max" ? Sense::Maximize : Sense::Minimize;
  problem.objective = terms_from_json(j.at("terms"), index, problem.variable_names);
  if (j.contains("constraints")) {
    for (const auto& c : j.at("constraints")) {
      Constraint con;
      con.poly = terms_from_json(c.at("terms"), index, problem.variable_names);
      con.poly.add_term({}, -c.at("rhs").get<double>());
      const auto kind = c.at("kind").get<std::string>();
      if (kind != "eq" && kind != "leq") throw InputError("constraint kind must be \"eq\" or \"leq\"");
      con.kind = kind == "eq" ? ConstraintKind::EqualZero : ConstraintKind::LeqZero;
      problem.constraints.push_back(std::move(con));
    }
  }
  problem.negated = j.value("negated", false);
  return problem;
}

}  // namespace dqaoa
