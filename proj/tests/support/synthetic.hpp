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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "trollstack/corpus.hpp"

namespace trollstack::testing {

/// Tweet-like records with Cyber-Troll's class balance and noise (mentions, links,
/// hashtags, entities, digits). Aggressive tweets draw from an insult lexicon but
/// share filler words with the rest, and a fraction of labels is flipped.
struct SyntheticOptions {
    std::size_t n_docs = 2000;
    double aggressive_fraction = 0.39;
    double label_noise = 0.03;
    double empty_fraction = 0.005;  // tweets that clean to nothing
    std::uint64_t seed = 7;
};

std::vector<corpus::RawRecord> synthetic_tweets(const SyntheticOptions& options = {});

/// One line of the Cyber-Troll JSON-lines format.
std::string cybertroll_line(const corpus::RawRecord& record);

void write_cybertroll(const std::filesystem::path& path, const std::vector<corpus::RawRecord>& records);
void write_csv(const std::filesystem::path& path, const std::vector<corpus::RawRecord>& records);

}  // namespace trollstack::testing
