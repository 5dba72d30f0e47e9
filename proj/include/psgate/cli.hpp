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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "psgate/dilation.hpp"
#include "psgate/linalg.hpp"

namespace psgate::cli {

using nlohmann::json;

/// Version tag carried by every report document.
inline constexpr const char *kReportSchema = "psgate/1";
/// Version tag of network files.
inline constexpr const char *kNetworkSchema = "psgate-network/1";

/**
 * Named two-qubit gates in the basis |00>, |01>, |10>, |11>, the first
 * factor being the qubit on modes 0/1. Parameters are radians:
 *
 *   identity, cnot, cz, swap, iswap, sqrt_swap   (no parameters)
 *   cphase phi                                   (diag(1, 1, 1, e^{i phi}))
 *   canonical alpha beta gamma                   (exp(i(a XX + b YY + c ZZ)))
 *
 * Throws InvalidArgument for unknown names or a wrong parameter count.
 */
Matrix4 named_gate(const std::string &name, const std::vector<double> &params);

/// Names accepted by named_gate.
std::vector<std::string> gate_names();

/**
 * Strict angle parser: accepts a plain decimal number (radians) and rejects
 * everything else, including degree suffixes.
 */
double parse_angle(const std::string &text);

/// "re,im" or a bare real.
Complex parse_complex(const std::string &text);

/**
 * A gate given on the command line: either a name with parameters or a
 * matrix file. The resolved matrix must be unitary within 1e-8.
 */
struct GateSpec {
  std::string name;
  std::vector<double> params;
  std::optional<std::string> matrix_file;

  std::string describe() const;
};

/// Builds a GateSpec from positional words ("cphase", "0.5") or a file.
GateSpec make_gate_spec(
    const std::vector<std::string> &words,
    const std::optional<std::string> &matrix_file);

/// Throws ParseError, NonUnitary or InvalidArgument.
Matrix4 resolve_gate(const GateSpec &spec);

/**
 * Matrix file format: {"rows": [[[re, im], ...], ...]}, row major. Errors
 * are reported as "source:line:column: message".
 */
ComplexMatrix parse_matrix_json(
    const std::string &text, const std::string &source = "<input>");
ComplexMatrix read_matrix_file(const std::string &path);
json matrix_to_json(const ComplexMatrix &m);
/// Inverse of matrix_to_json (no position information in errors).
ComplexMatrix matrix_from_json(const json &j);

/**
 * Network file format:
 *
 *   {"schema": "psgate-network/1", "n_modes": 8,
 *    "convention": "...",
 *    "elements": [{"kind": "bs", "modes": [a, b], "theta": t, "phi": p},
 *                 {"kind": "ps", "modes": [a], "theta": 0, "phi": p}, ...]}
 *
 * Elements are listed in the order light meets them. A bare list of
 * elements is also accepted; n_modes then defaults to max(8, top mode + 1).
 */
OpticalNetwork parse_network_json(
    const std::string &text, const std::string &source = "<input>");
OpticalNetwork read_network_file(const std::string &path);
json network_to_json(const OpticalNetwork &net);
OpticalNetwork network_from_json(const json &j);

std::string read_text_file(const std::string &path);

/// Fixed-width text rendering of a complex matrix.
std::string format_matrix(const ComplexMatrix &m, int precision = 6);
std::string format_complex(Complex z, int precision = 6);

/// Exit codes shared by every command.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitNotAchievable = 1,
  kExitInvalidInput = 2,
  kExitInternal = 3,
};

/**
 * Entry point of the psgate tool. args excludes the program name. Output
 * documents go to `out`, diagnostics to `err`.
 */
int run_cli(
    const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace psgate::cli
