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

#include "staged_directory.hpp"

#include <string>

#include <unistd.h>

#include "trollstack/error.hpp"

namespace trollstack::cli {

namespace fs = std::filesystem;

namespace {

fs::path sibling(const fs::path& target, const char* tag) {
    return target.parent_path() / ("." + target.filename().string() + "." + tag + "-" + std::to_string(::getpid()));
}

}  // namespace

StagedDirectory::StagedDirectory(fs::path target) : target_(fs::absolute(std::move(target))) {
    if (target_.filename().empty()) target_ = target_.parent_path();
    staging_ = sibling(target_, "staging");
    std::error_code ec;
    fs::remove_all(staging_, ec);
    fs::create_directories(staging_, ec);
    if (ec) throw DataError(DataErrorCode::io, "cannot create " + staging_.string() + ": " + ec.message());
}

StagedDirectory::~StagedDirectory() {
    if (committed_) return;
    std::error_code ec;
    fs::remove_all(staging_, ec);
}

void StagedDirectory::commit() {
    std::error_code ec;
    const fs::path old = sibling(target_, "old");
    const bool replacing = fs::exists(target_, ec);
    if (replacing) {
        fs::remove_all(old, ec);
        fs::rename(target_, old, ec);
        if (ec) throw DataError(DataErrorCode::io, "cannot move aside " + target_.string() + ": " + ec.message());
    }
    fs::rename(staging_, target_, ec);
    if (ec) {
        if (replacing) fs::rename(old, target_, ec);
        throw DataError(DataErrorCode::io, "cannot publish " + target_.string());
    }
    committed_ = true;
    if (replacing) fs::remove_all(old, ec);
}

}  // namespace trollstack::cli
