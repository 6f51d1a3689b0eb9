// Copyright 2026 The chebham Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chebham/spec_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace chebham {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> series_mul(const std::vector<double>& a, const std::vector<double>& b, int pbar) {
  std::vector<double> out(static_cast<std::size_t>(pbar) + 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(pbar); ++j)
      out[i + j] += a[i] * b[j];
  return out;
}

// Rate a in "ax": "" -> 1, "-" -> -1, else a number.
double parse_rate(const std::string& body) {
  const std::string s = trim(body);
  if (s.empty() || s.back() != 'x') throw std::invalid_argument("expected argument of the form a*x, got '" + body + "'");
  std::string a = trim(s.substr(0, s.size() - 1));
  if (!a.empty() && a.back() == '*') a = trim(a.substr(0, a.size() - 1));
  if (a.empty() || a == "+") return 1.0;
  if (a == "-") return -1.0;
  return parse_number(a);
}

std::vector<double> factor_series(const std::string& tok, int pbar) {
  const std::size_t P = static_cast<std::size_t>(pbar) + 1;
  std::vector<double> c(P, 0.0);
  if (tok == "x") {
    if (pbar >= 1) c[1] = 1.0;
    return c;
  }
  if (tok.rfind("x^", 0) == 0) {
    const int k = static_cast<int>(parse_number(tok.substr(2)));
    if (k < 0) throw std::invalid_argument("negative power in '" + tok + "'");
    if (k <= pbar) c[static_cast<std::size_t>(k)] = 1.0;
    return c;
  }
  const auto open = tok.find('(');
  if (open == std::string::npos || tok.back() != ')') throw std::invalid_argument("unknown source factor '" + tok + "'");
  const std::string name = tok.substr(0, open);
  const std::string body = tok.substr(open + 1, tok.size() - open - 2);
  if (name == "poly") {
    std::stringstream ss(body);
    std::string item;
    std::size_t k = 0;
    while (std::getline(ss, item, ',')) {
      if (k < P) c[k] = parse_number(trim(item));
      ++k;
    }
    return c;
  }
  const double a = parse_rate(body);
  double term = 1.0;  // a^p / p!
  for (std::size_t p = 0; p < P; ++p) {
    if (p > 0) term *= a / static_cast<double>(p);
    if (name == "exp") {
      c[p] = term;
    } else if (name == "sin") {
      if (p % 2 == 1) c[p] = ((p / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    } else if (name == "cos") {
      if (p % 2 == 0) c[p] = ((p / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    } else {
      throw std::invalid_argument("unknown source function '" + name + "'");
    }
  }
  return c;
}

std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_number(v[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (ss >> tok) out.push_back(parse_number(tok));
  return out;
}

int parse_int(const std::string& s) {
  int v = 0;
  const auto t = trim(s);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

using Section = std::map<std::string, std::pair<std::string, int>>;

struct RawSection {
  std::string name;
  int line = 0;
  Section kv;
};

std::string take(RawSection& s, const std::string& key, bool required = true) {
  auto it = s.kv.find(key);
  if (it == s.kv.end()) {
    if (required) throw ParseError(s.line, "[" + s.name + "] missing key '" + key + "'");
    return "";
  }
  std::string v = it->second.first;
  s.kv.erase(it);
  return v;
}

template <typename F>
auto at_line(RawSection& s, const std::string& key, F&& f) -> decltype(f(std::string())) {
  const int line = s.kv.count(key) ? s.kv[key].second : s.line;
  try {
    return f(take(s, key));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(line, key + ": " + e.what());
  }
}

void reject_leftovers(const RawSection& s) {
  if (!s.kv.empty()) {
    const auto& [k, v] = *s.kv.begin();
    throw ParseError(v.second, "unknown key '" + k + "' in [" + (s.name.empty() ? "top" : s.name) + "]");
  }
}

DataConstraint parse_constraint(RawSection& s) {
  DataConstraint c;
  c.kind = at_line(s, "kind", [](const std::string& v) { return constraint_kind_from_string(v); });
  if (s.kv.count("x")) c.x = at_line(s, "x", parse_number);
  if (s.kv.count("y")) c.y = at_line(s, "y", parse_number);
  if (s.kv.count("axis")) c.axis = at_line(s, "axis", parse_int);
  if (s.kv.count("value")) c.value = at_line(s, "value", parse_number);
  if (s.kv.count("weight")) c.weight = at_line(s, "weight", parse_number);
  reject_leftovers(s);
  return c;
}

void write_constraint(std::ostream& out, const char* header, const DataConstraint& c) {
  out << "\n[" << header << "]\n";
  out << "kind = " << to_string(c.kind) << "\n";
  out << "x = " << format_number(c.x) << "\n";
  if (c.y != 0.0) out << "y = " << format_number(c.y) << "\n";
  if (c.axis != 0) out << "axis = " << c.axis << "\n";
  if (c.value != 0.0) out << "value = " << format_number(c.value) << "\n";
  if (c.weight != 1.0) out << "weight = " << format_number(c.weight) << "\n";
}

}  // namespace

double parse_number(const std::string& text) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  if (slash != std::string::npos) {
    const double den = parse_number(t.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + t + "'");
    return parse_number(t.substr(0, slash)) / den;
  }
  double v = 0.0;
  const char* b = t.data();
  if (!t.empty() && t[0] == '+') ++b;
  auto [p, ec] = std::from_chars(b, t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || p != t.data() + t.size())
    throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

std::string format_number(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

std::vector<double> maclaurin(const std::string& expr, int pbar) {
  if (pbar < 0) throw std::invalid_argument("negative truncation order");
  std::vector<double> acc(static_cast<std::size_t>(pbar) + 1, 0.0);
  acc[0] = 1.0;
  std::string tok;
  int depth = 0;
  auto flush = [&] {
    const std::string f = trim(tok);
    if (f.empty()) throw std::invalid_argument("empty factor in source expression '" + expr + "'");
    acc = series_mul(acc, factor_series(f, pbar), pbar);
    tok.clear();
  };
  for (char ch : expr) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '*' && depth == 0) {
      flush();
    } else if (ch != ' ') {
      tok += ch;
    }
  }
  flush();
  return acc;
}

ProblemSpec parse_spec(std::istream& in) {
  std::vector<RawSection> sections(1);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
      sections.push_back(RawSection{trim(line.substr(1, line.size() - 2)), lineno, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(lineno, "empty key");
    auto& kv = sections.back().kv;
    if (kv.count(key)) throw ParseError(lineno, "duplicate key '" + key + "'");
    kv[key] = {trim(line.substr(eq + 1)), lineno};
  }

  ProblemSpec spec;
  spec.terms.clear();
  RawSection& top = sections[0];
  top.line = 1;
  spec.id = take(top, "id");
  spec.kind = at_line(top, "kind", [](const std::string& v) { return kind_from_string(v); });
  spec.n = at_line(top, "n", parse_int);
  if (top.kv.count("workflow"))
    spec.workflow = at_line(top, "workflow", [](const std::string& v) { return workflow_from_string(v); });
  if (top.kv.count("reference")) spec.reference = take(top, "reference");
  reject_leftovers(top);

  bool have_regular = false;
  for (std::size_t i = 1; i < sections.size(); ++i) {
    RawSection& s = sections[i];
    if (s.name == "term") {
      DiffTerm t;
      t.coeff = at_line(s, "coeff", parse_list);
      if (s.kv.count("dx")) t.dx = at_line(s, "dx", parse_int);
      if (s.kv.count("dy")) t.dy = at_line(s, "dy", parse_int);
      if (s.kv.count("degree")) t.degree = at_line(s, "degree", parse_int);
      if (s.kv.count("factors")) {
        for (double v : at_line(s, "factors", parse_list)) t.factors.push_back(static_cast<int>(v));
      }
      reject_leftovers(s);
      spec.terms.push_back(t);
    } else if (s.name == "source") {
      if (spec.source) throw ParseError(s.line, "duplicate [source]");
      SourceSpec src;
      src.pbar = at_line(s, "pbar", parse_int);
      if (s.kv.count("expr")) {
        src.expr = take(s, "expr");
        const int line_no = s.line;
        try {
          src.coeffs = maclaurin(src.expr, src.pbar);
        } catch (const std::exception& e) {
          throw ParseError(line_no, e.what());
        }
        if (s.kv.count("coeffs")) throw ParseError(s.line, "[source] takes expr or coeffs, not both");
      } else {
        src.coeffs = at_line(s, "coeffs", parse_list);
      }
      reject_leftovers(s);
      spec.source = src;
    } else if (s.name == "invariant") {
      spec.invariants.push_back(parse_constraint(s));
    } else if (s.name == "regular") {
      if (have_regular) throw ParseError(s.line, "exactly one [regular] section is allowed");
      spec.regular = parse_constraint(s);
      have_regular = true;
    } else if (s.name == "shift") {
      ShiftSpec sh;
      sh.c0 = at_line(s, "c0", parse_number);
      sh.at = at_line(s, "at", parse_number);
      reject_leftovers(s);
      spec.shift = sh;
    } else {
      throw ParseError(s.line, "unknown section [" + s.name + "]");
    }
  }
  if (!have_regular) throw std::invalid_argument("spec '" + spec.id + "': missing [regular] constraint");
  validate(spec);
  return spec;
}

ProblemSpec parse_spec_string(const std::string& text) {
  std::istringstream in(text);
  return parse_spec(in);
}

ProblemSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file '" + path + "'");
  return parse_spec(in);
}

void write_spec(std::ostream& out, const ProblemSpec& spec) {
  out << "id = " << spec.id << "\n";
  out << "kind = " << to_string(spec.kind) << "\n";
  out << "n = " << spec.n << "\n";
  out << "workflow = " << to_string(spec.workflow) << "\n";
  if (!spec.reference.empty()) out << "reference = " << spec.reference << "\n";
  for (const auto& t : spec.terms) {
    out << "\n[term]\n";
    out << "coeff = " << join_numbers(t.coeff) << "\n";
    if (t.dx) out << "dx = " << t.dx << "\n";
    if (t.dy) out << "dy = " << t.dy << "\n";
    if (t.degree != 1) out << "degree = " << t.degree << "\n";
    if (!t.factors.empty()) out << "factors = " << join_ints(t.factors) << "\n";
  }
  if (spec.source) {
    out << "\n[source]\n";
    out << "pbar = " << spec.source->pbar << "\n";
    if (!spec.source->expr.empty()) {
      out << "expr = " << spec.source->expr << "\n";
    } else {
      out << "coeffs = " << join_numbers(spec.source->coeffs) << "\n";
    }
  }
  for (const auto& c : spec.invariants) write_constraint(out, "invariant", c);
  write_constraint(out, "regular", spec.regular);
  if (spec.shift) {
    out << "\n[shift]\n";
    out << "c0 = " << format_number(spec.shift->c0) << "\n";
    out << "at = " << format_number(spec.shift->at) << "\n";
  }
}

std::string spec_to_string(const ProblemSpec& spec) {
  std::ostringstream os;
  write_spec(os, spec);
  return os.str();
}

}  // namespace chebham
