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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

#include "psgate/cli.hpp"
#include "psgate/error.hpp"

namespace psgate::cli {

namespace {

using PathStep = std::variant<std::string, std::size_t>;
using JsonPath = std::vector<PathStep>;

/**
 * Finds the byte offset of the value at `path` in well-formed JSON text.
 * Only used to attach positions to semantic errors after a successful parse.
 */
class Locator {
 public:
  explicit Locator(const std::string &text) : t_(text) {}

  std::size_t find(const JsonPath &path) {
    pos_ = 0;
    skip_ws();
    for (const PathStep &step : path) {
      if (!descend(step)) break;
    }
    return pos_;
  }

 private:
  void skip_ws() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_])))
      ++pos_;
  }

  std::string read_string() {
    std::string s;
    ++pos_;
    while (pos_ < t_.size() && t_[pos_] != '"') {
      if (t_[pos_] == '\\') ++pos_;
      if (pos_ < t_.size()) s += t_[pos_++];
    }
    ++pos_;
    return s;
  }

  void skip_value() {
    skip_ws();
    if (pos_ >= t_.size()) return;
    const char c = t_[pos_];
    if (c == '"') {
      read_string();
    } else if (c == '[' || c == '{') {
      int depth = 0;
      while (pos_ < t_.size()) {
        const char d = t_[pos_];
        if (d == '"') {
          read_string();
          continue;
        }
        if (d == '[' || d == '{') ++depth;
        if (d == ']' || d == '}') {
          --depth;
          if (depth == 0) {
            ++pos_;
            return;
          }
        }
        ++pos_;
      }
    } else {
      while (pos_ < t_.size() && t_[pos_] != ',' && t_[pos_] != ']' &&
             t_[pos_] != '}' && !std::isspace(static_cast<unsigned char>(t_[pos_])))
        ++pos_;
    }
  }

  bool descend(const PathStep &step) {
    skip_ws();
    if (pos_ >= t_.size()) return false;
    const std::size_t start = pos_;
    if (std::holds_alternative<std::string>(step) && t_[pos_] == '{') {
      ++pos_;
      while (true) {
        skip_ws();
        if (pos_ >= t_.size() || t_[pos_] != '"') break;
        const std::string key = read_string();
        skip_ws();
        ++pos_;  // ':'
        skip_ws();
        if (key == std::get<std::string>(step)) return true;
        skip_value();
        skip_ws();
        if (pos_ < t_.size() && t_[pos_] == ',') ++pos_;
      }
    } else if (std::holds_alternative<std::size_t>(step) && t_[pos_] == '[') {
      ++pos_;
      const std::size_t target = std::get<std::size_t>(step);
      for (std::size_t i = 0;; ++i) {
        skip_ws();
        if (pos_ >= t_.size() || t_[pos_] == ']') break;
        if (i == target) return true;
        skip_value();
        skip_ws();
        if (pos_ < t_.size() && t_[pos_] == ',') ++pos_;
      }
    }
    pos_ = start;
    return false;
  }

  const std::string &t_;
  std::size_t pos_ = 0;
};

std::string position(const std::string &text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

/// Semantic error raised while walking a parsed document.
struct Misfit {
  JsonPath path;
  std::string message;
};

std::string path_string(const JsonPath &path) {
  std::string s;
  for (const PathStep &p : path) {
    if (std::holds_alternative<std::string>(p)) {
      s += "." + std::get<std::string>(p);
    } else {
      s += "[" + std::to_string(std::get<std::size_t>(p)) + "]";
    }
  }
  return s.empty() ? "document" : s.substr(s[0] == '.' ? 1 : 0);
}

json parse_or_throw(const std::string &text, const std::string &source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
    std::string what = e.what();
    const auto cut = what.find("parse error");
    if (cut != std::string::npos) what = what.substr(cut);
    throw Error(
        ErrorCode::ParseError, source + ":" + position(text, at) + ": " + what);
  }
}

template <typename Fn>
auto with_positions(const std::string &text, const std::string &source, Fn fn) {
  const json doc = parse_or_throw(text, source);
  try {
    return fn(doc);
  } catch (const Misfit &m) {
    Locator loc(text);
    throw Error(
        ErrorCode::ParseError, source + ":" + position(text, loc.find(m.path)) +
                                   ": " + path_string(m.path) + ": " +
                                   m.message);
  }
}

double number_at(const json &j, const JsonPath &path) {
  if (!j.is_number()) throw Misfit{path, "expected a number"};
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw Misfit{path, "number is not finite"};
  return v;
}

ComplexMatrix matrix_walk(const json &doc) {
  if (!doc.is_object() || !doc.contains("rows")) {
    throw Misfit{{}, "expected an object with a \"rows\" field"};
  }
  const json &rows = doc.at("rows");
  const JsonPath base{std::string("rows")};
  if (!rows.is_array() || rows.empty()) {
    throw Misfit{base, "expected a non-empty array of rows"};
  }
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    JsonPath rp = base;
    rp.emplace_back(r);
    if (!rows[r].is_array() || rows[r].empty()) {
      throw Misfit{rp, "expected a non-empty array of entries"};
    }
    if (r == 0) cols = rows[r].size();
    if (rows[r].size() != cols) {
      throw Misfit{
          rp, "ragged row: " + std::to_string(rows[r].size()) +
                  " entries, expected " + std::to_string(cols)};
    }
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      JsonPath ep = base;
      ep.emplace_back(r);
      ep.emplace_back(c);
      const json &e = rows[r][c];
      if (!e.is_array() || e.size() != 2) {
        throw Misfit{ep, "expected [re, im]"};
      }
      JsonPath re = ep;
      re.emplace_back(std::size_t{0});
      JsonPath im = ep;
      im.emplace_back(std::size_t{1});
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(number_at(e[0], re), number_at(e[1], im));
    }
  }
  return m;
}

std::string kind_tag(ElementKind k) {
  return k == ElementKind::BeamSplitter ? "bs" : "ps";
}

OpticalNetwork network_walk(const json &doc) {
  OpticalNetwork net;
  const json *elements = &doc;
  JsonPath base;
  bool explicit_modes = false;
  if (doc.is_object()) {
    if (doc.contains("schema") &&
        (!doc["schema"].is_string() ||
         doc["schema"].get<std::string>() != kNetworkSchema)) {
      throw Misfit{{std::string("schema")}, std::string("expected \"") + kNetworkSchema + "\""};
    }
    if (!doc.contains("elements")) {
      throw Misfit{{}, "expected an \"elements\" field"};
    }
    elements = &doc.at("elements");
    base.emplace_back(std::string("elements"));
    if (doc.contains("n_modes")) {
      const json &n = doc.at("n_modes");
      if (!n.is_number_integer() || n.get<long long>() < 1 ||
          n.get<long long>() > 64) {
        throw Misfit{{std::string("n_modes")}, "expected an integer in 1..64"};
      }
      net.n_modes = n.get<int>();
      explicit_modes = true;
    }
  }
  if (!elements->is_array()) {
    throw Misfit{base, "expected an array of elements"};
  }
  int top = -1;
  for (std::size_t i = 0; i < elements->size(); ++i) {
    JsonPath ep = base;
    ep.emplace_back(i);
    const json &e = (*elements)[i];
    if (!e.is_object()) throw Misfit{ep, "expected an element object"};
    auto field = [&](const char *name) -> const json & {
      if (!e.contains(name)) {
        throw Misfit{ep, std::string("missing field \"") + name + "\""};
      }
      return e.at(name);
    };
    JsonPath kp = ep;
    kp.emplace_back(std::string("kind"));
    const json &kind = field("kind");
    if (!kind.is_string()) throw Misfit{kp, "expected \"bs\" or \"ps\""};
    const std::string k = kind.get<std::string>();
    OpticalElement el;
    if (k == "bs" || k == "beam_splitter") {
      el.kind = ElementKind::BeamSplitter;
    } else if (k == "ps" || k == "phase_shifter") {
      el.kind = ElementKind::PhaseShifter;
    } else {
      throw Misfit{kp, "unknown element kind '" + k + "'"};
    }
    JsonPath mp = ep;
    mp.emplace_back(std::string("modes"));
    const json &modes = field("modes");
    const std::size_t want = el.kind == ElementKind::BeamSplitter ? 2 : 1;
    if (!modes.is_array() || modes.size() != want) {
      throw Misfit{mp, "expected " + std::to_string(want) + " mode index(es)"};
    }
    for (std::size_t q = 0; q < want; ++q) {
      if (!modes[q].is_number_integer() || modes[q].get<long long>() < 0 ||
          modes[q].get<long long>() > 1000) {
        JsonPath qp = mp;
        qp.emplace_back(q);
        throw Misfit{qp, "expected a non-negative mode index"};
      }
    }
    el.mode_a = modes[0].get<int>();
    el.mode_b = want == 2 ? modes[1].get<int>() : -1;
    top = std::max({top, el.mode_a, el.mode_b});
    JsonPath tp = ep;
    tp.emplace_back(std::string("theta"));
    JsonPath pp = ep;
    pp.emplace_back(std::string("phi"));
    el.theta = e.contains("theta") ? number_at(e.at("theta"), tp) : 0.0;
    el.phi = number_at(field("phi"), pp);
    net.elements.push_back(el);
  }
  if (!explicit_modes) net.n_modes = std::max(kDilationModes, top + 1);
  try {
    validate_network(net);
  } catch (const Error &err) {
    throw Misfit{base, err.what()};
  }
  return net;
}

}  // namespace

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ComplexMatrix parse_matrix_json(const std::string &text, const std::string &source) {
  return with_positions(text, source, matrix_walk);
}

ComplexMatrix read_matrix_file(const std::string &path) {
  return parse_matrix_json(read_text_file(path), path);
}

json matrix_to_json(const ComplexMatrix &m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return json{{"rows", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const json &j) {
  try {
    return matrix_walk(j);
  } catch (const Misfit &m) {
    throw Error(ErrorCode::ParseError, path_string(m.path) + ": " + m.message);
  }
}

OpticalNetwork parse_network_json(const std::string &text, const std::string &source) {
  return with_positions(text, source, network_walk);
}

OpticalNetwork read_network_file(const std::string &path) {
  return parse_network_json(read_text_file(path), path);
}

json network_to_json(const OpticalNetwork &net) {
  json elements = json::array();
  for (const OpticalElement &e : net.elements) {
    json modes = e.kind == ElementKind::BeamSplitter
                     ? json::array({e.mode_a, e.mode_b})
                     : json::array({e.mode_a});
    elements.push_back(
        {{"kind", kind_tag(e.kind)},
         {"modes", std::move(modes)},
         {"theta", e.theta},
         {"phi", e.phi}});
  }
  return json{
      {"schema", kNetworkSchema},
      {"n_modes", net.n_modes},
      {"convention",
       "bs on modes [a,b]: [[cos t, sin t], [e^{i p} sin t, -e^{i p} cos t]]; "
       "ps on [a]: e^{i p}; elements in propagation order"},
      {"elements", std::move(elements)}};
}

OpticalNetwork network_from_json(const json &j) {
  try {
    return network_walk(j);
  } catch (const Misfit &m) {
    throw Error(ErrorCode::ParseError, path_string(m.path) + ": " + m.message);
  }
}

std::string format_complex(Complex z, int precision) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%+.*f%+.*fi", precision, z.real(), precision, z.imag());
  return buf;
}

std::string format_matrix(const ComplexMatrix &m, int precision) {
  std::string s;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    s += "  [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      s += (c ? "  " : " ") + format_complex(m(r, c), precision);
    }
    s += " ]\n";
  }
  return s;
}

}  // namespace psgate::cli
