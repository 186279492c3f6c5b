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

#include "trollstack/error.hpp"

namespace trollstack {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::config: return "config";
    case ErrorKind::data: return "data";
    case ErrorKind::training: return "training";
    case ErrorKind::evaluation: return "evaluation";
    case ErrorKind::shape: return "shape";
    case ErrorKind::stale_model: return "stale_model";
    }
    return "unknown";
}

namespace {

std::string with_line(const std::string& what, std::size_t line) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

DataError::DataError(DataErrorCode code, const std::string& what, std::size_t line)
    : Error(ErrorKind::data, with_line(what, line)), code_(code), line_(line) {}

ShapeError::ShapeError(std::size_t expected, std::size_t actual)
    : Error(ErrorKind::shape, "feature width mismatch: expected " + std::to_string(expected) +
                                  " columns, got " + std::to_string(actual)),
      expected_(expected),
      actual_(actual) {}

}  // namespace trollstack
