/**
 * Copyright 2026 railsynth contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "railsynth/circuit.hpp"
#include "railsynth/common.hpp"

namespace railsynth {

// Line-oriented circuit netlist.  One directive per line, applied in file
// order; '#' starts a comment; angles are radians.
//
//   modes <int>                      first directive, exactly once
//   bs <mode_a> <mode_b> theta=<float>
//   ps <mode> phi=<float>
//   det <mode>
//
// A mode stops accepting elements once its `det` line has appeared.
// Parse failures throw Diagnostic with 1-based line and column.

namespace netlist_detail {

struct Token {
  std::string_view text;
  int column = 1;
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    tokens.push_back(Token{line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

inline int parse_int(const Token& tok, int line) {
  int value = 0;
  const char* begin = tok.text.data();
  const char* end = begin + tok.text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw Diagnostic(line, tok.column,
                     "malformed integer '" + std::string(tok.text) + "'");
  return value;
}

inline double parse_keyed_angle(const Token& tok, int line, std::string_view key) {
  const std::string prefix = std::string(key) + "=";
  if (!tok.text.starts_with(prefix))
    throw Diagnostic(line, tok.column,
                     "expected " + prefix + "<float>, got '" + std::string(tok.text) + "'");
  const std::string_view number = tok.text.substr(prefix.size());
  double value = 0.0;
  const char* begin = number.data();
  const char* end = begin + number.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || number.empty() || !std::isfinite(value))
    throw Diagnostic(line, tok.column + static_cast<int>(prefix.size()),
                     "malformed number '" + std::string(number) + "'");
  return value;
}

inline int parse_mode(const Token& tok, int line, const Circuit& c) {
  const int mode = parse_int(tok, line);
  if (mode < 0 || mode >= c.num_modes())
    throw Diagnostic(line, tok.column,
                     "mode " + std::to_string(mode) + " out of range [0, " +
                         std::to_string(c.num_modes()) + ")");
  return mode;
}

inline int parse_live_mode(const Token& tok, int line, const Circuit& c) {
  const int mode = parse_mode(tok, line, c);
  if (c.detector_modes().contains(mode))
    throw Diagnostic(line, tok.column,
                     "mode " + std::to_string(mode) + " already feeds a detector");
  return mode;
}

}  // namespace netlist_detail

inline Circuit parse_netlist(std::string_view text) {
  using namespace netlist_detail;

  std::optional<Circuit> circuit;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    const std::vector<Token> toks = tokenize(line);
    if (toks.empty()) continue;
    const Token& dir = toks[0];

    auto expect_args = [&](std::size_t count) {
      if (toks.size() < count + 1)
        throw Diagnostic(line_no, dir.column,
                         "'" + std::string(dir.text) + "' needs " + std::to_string(count) +
                             " argument(s)");
      if (toks.size() > count + 1)
        throw Diagnostic(line_no, toks[count + 1].column,
                         "unexpected token '" + std::string(toks[count + 1].text) + "'");
    };

    if (dir.text == "modes") {
      if (circuit) throw Diagnostic(line_no, dir.column, "duplicate modes directive");
      expect_args(1);
      const int m = parse_int(toks[1], line_no);
      if (m < 2)
        throw Diagnostic(line_no, toks[1].column, "mode count must be at least 2");
      circuit.emplace(m);
      continue;
    }
    if (!circuit)
      throw Diagnostic(line_no, dir.column,
                       "missing modes directive before '" + std::string(dir.text) + "'");

    if (dir.text == "bs") {
      expect_args(3);
      const int a = parse_live_mode(toks[1], line_no, *circuit);
      const int b = parse_live_mode(toks[2], line_no, *circuit);
      if (a == b)
        throw Diagnostic(line_no, toks[2].column, "beam splitter modes must be distinct");
      circuit->add_beam_splitter(a, b, parse_keyed_angle(toks[3], line_no, "theta"));
    } else if (dir.text == "ps") {
      expect_args(2);
      const int m = parse_live_mode(toks[1], line_no, *circuit);
      circuit->add_phase_shift(m, parse_keyed_angle(toks[2], line_no, "phi"));
    } else if (dir.text == "det") {
      expect_args(1);
      const int m = parse_mode(toks[1], line_no, *circuit);
      if (circuit->detector_modes().contains(m))
        throw Diagnostic(line_no, toks[1].column,
                         "duplicate detector on mode " + std::to_string(m));
      circuit->add_detector(m);
    } else {
      throw Diagnostic(line_no, dir.column,
                       "unknown directive '" + std::string(dir.text) + "'");
    }
  }

  if (!circuit) throw Diagnostic(std::max(line_no, 1), 1, "missing modes directive");
  return *circuit;
}

/**
 * @brief Canonical netlist text: elements in application order, detectors
 * last in ascending mode order, floats with 17 significant digits.
 *
 * parse_netlist(emit_netlist(c)) reproduces c exactly, including angle bits.
 */
inline std::string emit_netlist(const Circuit& c) {
  std::string out = "modes " + std::to_string(c.num_modes()) + "\n";
  char buf[64];
  for (const Element& el : c.elements()) {
    if (const auto* bs = std::get_if<BeamSplitter>(&el)) {
      std::snprintf(buf, sizeof(buf), "bs %d %d theta=%.17g\n", bs->mode_a, bs->mode_b,
                    bs->theta);
    } else {
      const auto& ps = std::get<PhaseShift>(el);
      std::snprintf(buf, sizeof(buf), "ps %d phi=%.17g\n", ps.mode, ps.phi);
    }
    out += buf;
  }
  for (int d : c.detector_modes()) {
    std::snprintf(buf, sizeof(buf), "det %d\n", d);
    out += buf;
  }
  return out;
}

}  // namespace railsynth
