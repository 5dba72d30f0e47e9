// Copyright 2026 The psgate Authors
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

#include <cmath>
#include <sstream>

#include "psgate/cartan.hpp"
#include "psgate/cli.hpp"
#include "psgate/error.hpp"

namespace psgate::cli {

namespace {

Matrix4 from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  Matrix4 m = Matrix4::Zero();
  int r = 0;
  for (const auto &row : rows) {
    int c = 0;
    for (const Complex &z : row) m(r, c++) = z;
    ++r;
  }
  return m;
}

void expect_params(
    const std::string &name, const std::vector<double> &params,
    std::size_t n) {
  if (params.size() != n) {
    throw Error(
        ErrorCode::InvalidArgument, "gate '" + name + "' takes " +
                                        std::to_string(n) + " parameter(s), got " +
                                        std::to_string(params.size()));
  }
}

}  // namespace

std::vector<std::string> gate_names() {
  return {"identity", "cnot",      "cz",     "swap",
          "iswap",    "sqrt_swap", "cphase", "canonical"};
}

Matrix4 named_gate(const std::string &name, const std::vector<double> &params) {
  const Complex o{0.0, 0.0};
  const Complex l{1.0, 0.0};
  if (name == "identity") {
    expect_params(name, params, 0);
    return Matrix4::Identity();
  }
  if (name == "cnot") {
    expect_params(name, params, 0);
    return from_rows({{l, o, o, o}, {o, l, o, o}, {o, o, o, l}, {o, o, l, o}});
  }
  if (name == "cz") {
    expect_params(name, params, 0);
    return from_rows({{l, o, o, o}, {o, l, o, o}, {o, o, l, o}, {o, o, o, -l}});
  }
  if (name == "swap") {
    expect_params(name, params, 0);
    return swap_operator();
  }
  if (name == "iswap") {
    expect_params(name, params, 0);
    return from_rows({{l, o, o, o}, {o, o, kI, o}, {o, kI, o, o}, {o, o, o, l}});
  }
  if (name == "sqrt_swap") {
    expect_params(name, params, 0);
    const Complex p{0.5, 0.5};
    const Complex q{0.5, -0.5};
    return from_rows({{l, o, o, o}, {o, p, q, o}, {o, q, p, o}, {o, o, o, l}});
  }
  if (name == "cphase") {
    expect_params(name, params, 1);
    Matrix4 m = Matrix4::Identity();
    m(3, 3) = std::polar(1.0, params[0]);
    return m;
  }
  if (name == "canonical") {
    expect_params(name, params, 3);
    return canonical_matrix(CanonicalTriple{params[0], params[1], params[2]});
  }
  throw Error(ErrorCode::InvalidArgument, "unknown gate '" + name + "'");
}

double parse_angle(const std::string &text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception &) {
    throw Error(ErrorCode::ParseError, "not a number: '" + text + "'");
  }
  if (used != text.size()) {
    throw Error(
        ErrorCode::ParseError,
        "angles are plain numbers in radians, got '" + text + "'");
  }
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::ParseError, "angle is not finite: '" + text + "'");
  }
  return v;
}

Complex parse_complex(const std::string &text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_angle(text), 0.0};
  return {parse_angle(text.substr(0, comma)), parse_angle(text.substr(comma + 1))};
}

std::string GateSpec::describe() const {
  if (matrix_file) return "matrix:" + *matrix_file;
  std::ostringstream s;
  s.precision(12);
  s << name;
  for (double p : params) s << ' ' << p;
  return s.str();
}

GateSpec make_gate_spec(
    const std::vector<std::string> &words,
    const std::optional<std::string> &matrix_file) {
  GateSpec spec;
  if (matrix_file) {
    if (!words.empty()) {
      throw Error(
          ErrorCode::InvalidArgument, "give either a gate name or --matrix");
    }
    spec.matrix_file = matrix_file;
    return spec;
  }
  if (words.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no gate given");
  }
  spec.name = words[0];
  for (std::size_t i = 1; i < words.size(); ++i) {
    spec.params.push_back(parse_angle(words[i]));
  }
  return spec;
}

Matrix4 resolve_gate(const GateSpec &spec) {
  Matrix4 m;
  if (spec.matrix_file) {
    const ComplexMatrix raw = read_matrix_file(*spec.matrix_file);
    require_shape(raw, 4, 4, "gate matrix");
    m = raw;
  } else {
    m = named_gate(spec.name, spec.params);
  }
  require_unitary(m, kInputUnitaryTol, "gate");
  return m;
}

}  // namespace psgate::cli
