// Copyright 2026 The Spectrum Auction Authors.
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

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "spectrum/mechanism.hpp"
#include "spectrum/model.hpp"

namespace spectrum {

using Json = nlohmann::ordered_json;

// Document layout is described in docs/formats.md. Parsers throw InputError on
// any schema violation; serialisers emit keys in a fixed order so equal values
// always produce identical text.

Json to_json(const Instance& instance);
Instance instance_from_json(const Json& doc);

Json to_json(const Allocation& allocation);
Allocation allocation_from_json(const Json& doc);

Json to_json(const RandomTape& tape);
RandomTape tape_from_json(const Json& doc);

Json to_json(const Outcome& outcome);
Outcome outcome_from_json(const Json& doc);

/// Accepts either a bare array or {"values": [...]}.
std::vector<double> values_from_json(const Json& doc);
Json values_to_json(const std::vector<double>& values);

Json read_json_file(const std::filesystem::path& path);
/// Writes `doc` with two-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& doc);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace spectrum
