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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trollstack {

enum class ErrorKind {
    config,
    data,
    training,
    evaluation,
    shape,
    stale_model,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

enum class DataErrorCode {
    io,
    malformed_line,
    rejected_record,
    empty_dataset,
    format,
    stratification,
};

/// Ingestion and splitting failures. `line()` is 1-based, 0 when not tied to a line.
class DataError : public Error {
public:
    DataError(DataErrorCode code, const std::string& what, std::size_t line = 0);
    DataErrorCode code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }

private:
    DataErrorCode code_;
    std::size_t line_;
};

class TrainingError : public Error {
public:
    explicit TrainingError(const std::string& what) : Error(ErrorKind::training, what) {}
};

class EvaluationError : public Error {
public:
    explicit EvaluationError(const std::string& what) : Error(ErrorKind::evaluation, what) {}
};

class ShapeError : public Error {
public:
    ShapeError(std::size_t expected, std::size_t actual);
    std::size_t expected() const noexcept { return expected_; }
    std::size_t actual() const noexcept { return actual_; }

private:
    std::size_t expected_;
    std::size_t actual_;
};

class StaleModelError : public Error {
public:
    explicit StaleModelError(const std::string& what) : Error(ErrorKind::stale_model, what) {}
};

}  // namespace trollstack
