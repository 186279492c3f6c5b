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

#include <vector>

#include "synthetic.hpp"
#include "trollstack/corpus.hpp"

namespace bench {

inline const std::vector<trollstack::corpus::RawRecord>& tweets(std::size_t n) {
    static std::vector<trollstack::corpus::RawRecord> cache;
    if (cache.size() < n) {
        trollstack::testing::SyntheticOptions opt;
        opt.n_docs = n;
        cache = trollstack::testing::synthetic_tweets(opt);
    }
    return cache;
}

inline std::vector<trollstack::corpus::LabeledDocument> docs(std::size_t n) {
    const auto& all = tweets(n);
    const auto stopwords = trollstack::corpus::StopWords::load(TROLLSTACK_STOPWORDS_FILE);
    return trollstack::corpus::prepare(std::span(all.data(), n), stopwords);
}

}  // namespace bench
