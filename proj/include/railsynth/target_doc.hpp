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

#include <string>
#include <string_view>

#include <json.hpp>

#include "railsynth/common.hpp"
#include "railsynth/synth.hpp"

namespace railsynth {

// Target document: JSON with a `photons` array; each entry carries a
// positive integer `label` and two [re, im] pairs `alpha1`, `alpha2`:
//
//   { "photons": [ { "label": 1, "alpha1": [1.0, 0.0], "alpha2": [0.0, 0.0] } ] }

namespace target_detail {

inline std::pair<int, int> position_of_byte(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  const std::size_t limit = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < limit; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline Complex read_pair(const nlohmann::json& j, const std::string& key, int entry) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 ||
      !j[key][0].is_number() || !j[key][1].is_number())
    throw Diagnostic(1, 1,
                     "photons[" + std::to_string(entry) + "]." + key +
                         " must be a [re, im] pair of numbers");
  const Complex z{j[key][0].get<double>(), j[key][1].get<double>()};
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Diagnostic(1, 1, "photons[" + std::to_string(entry) + "]." + key + " must be finite");
  return z;
}

}  // namespace target_detail

inline TargetSpec parse_target_doc(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = target_detail::position_of_byte(text, e.byte);
    throw Diagnostic(line, column, std::string("target document: ") + e.what());
  }

  if (!doc.is_object() || !doc.contains("photons") || !doc["photons"].is_array() ||
      doc["photons"].empty())
    throw Diagnostic(1, 1, "target document must contain a nonempty 'photons' array");

  TargetSpec spec;
  int entry = 0;
  for (const auto& item : doc["photons"]) {
    if (!item.is_object())
      throw Diagnostic(1, 1, "photons[" + std::to_string(entry) + "] must be an object");
    if (!item.contains("label") || !item["label"].is_number_integer() ||
        item["label"].get<long long>() < 1 || item["label"].get<long long>() > 1000000)
      throw Diagnostic(1, 1,
                       "photons[" + std::to_string(entry) +
                           "].label must be a positive integer");
    const PhotonLabel label{item["label"].get<int>()};
    for (const TargetPhoton& existing : spec.photons)
      if (existing.label == label)
        throw Diagnostic(1, 1, "duplicate photon label " + std::to_string(label.index));
    spec.photons.push_back(TargetPhoton{label,
                                        target_detail::read_pair(item, "alpha1", entry),
                                        target_detail::read_pair(item, "alpha2", entry)});
    ++entry;
  }

  spec.validate();  // NotNormalized names the offending label
  return spec;
}

}  // namespace railsynth
