/*
 * Copyright 2026 The trollstack Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace trollstack::detail {

/// Reads and parses a JSON file. Throws DataError(io) or DataError(format).
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Writes `content` to `path`, replacing it. Throws DataError(io).
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Two-space indented dump with a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& value);

}  // namespace trollstack::detail
