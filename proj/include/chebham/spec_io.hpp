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

#ifndef CHEBHAM_SPEC_IO_HPP
#define CHEBHAM_SPEC_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "chebham/problem.hpp"

namespace chebham {

/// Parse failure carrying the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Truncated Maclaurin coefficients c_0..c_pbar of a product of factors
/// such as "x*exp(-2x)*sin(4x)". Recognised factors: x, x^k, exp(ax),
/// sin(ax), cos(ax), poly(c0,c1,...).
std::vector<double> maclaurin(const std::string& expr, int pbar);

/// Numeric literal with optional a/b form, e.g. "-0.75" or "1/3".
double parse_number(const std::string& text);
/// Shortest text that parses back to the same double.
std::string format_number(double v);

ProblemSpec parse_spec(std::istream& in);
ProblemSpec parse_spec_file(const std::string& path);
ProblemSpec parse_spec_string(const std::string& text);
void write_spec(std::ostream& out, const ProblemSpec& spec);
std::string spec_to_string(const ProblemSpec& spec);

}  // namespace chebham

#endif  // CHEBHAM_SPEC_IO_HPP
