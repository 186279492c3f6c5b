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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace trollstack::corpus {

/// One tweet as read from disk. label is 1 for aggressive, 0 otherwise.
struct RawRecord {
    std::string content;
    int label = 0;

    friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

struct LabeledDocument {
    std::size_t id = 0;  // position in load order
    std::string raw;
    std::vector<std::string> tokens;
    int label = 0;
};

using TokenSpan = std::span<const std::string>;

struct SplitIndices {
    std::vector<std::size_t> train_ids;
    std::vector<std::size_t> test_ids;
    std::vector<std::size_t> excluded_ids;  // documents that cleaned to zero tokens
    std::uint64_t seed = 0;
};

struct CorpusStats {
    std::size_t total = 0;
    std::size_t aggressive = 0;
    std::size_t non_aggressive = 0;

    double aggressive_fraction() const noexcept {
        return total == 0 ? 0.0 : static_cast<double>(aggressive) / static_cast<double>(total);
    }
    friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

class StopWords {
public:
    StopWords() = default;
    explicit StopWords(std::unordered_set<std::string> words) : words_(std::move(words)) {}

    /// One lowercase token per line; blank lines and lines starting with '#' are skipped.
    static StopWords load(const std::filesystem::path& path);
    static StopWords parse(std::istream& in);

    bool contains(std::string_view token) const { return words_.contains(std::string(token)); }
    std::size_t size() const noexcept { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

// --- ingestion -------------------------------------------------------------

std::vector<RawRecord> load_cybertroll(const std::filesystem::path& path);
std::vector<RawRecord> parse_cybertroll(std::istream& in);

struct CsvOptions {
    std::string text_column = "text";
    std::string label_column = "label";
    /// Extra label spellings, e.g. {"aggressive", 1}. "0" and "1" are always accepted.
    std::map<std::string, int> label_map;
};

std::vector<RawRecord> load_csv(const std::filesystem::path& path, const CsvOptions& options);
std::vector<RawRecord> parse_csv(std::istream& in, const CsvOptions& options);

// --- cleaning --------------------------------------------------------------

/// The fixed twelve-step cleaning pipeline. Total: never throws, may return no tokens.
std::vector<std::string> clean(std::string_view raw, const StopWords& stopwords);

/// The individual steps of `clean`, applied in declaration order.
namespace steps {
std::string decode_entities(std::string_view text);
std::string lowercase(std::string_view text);
std::string remove_urls(std::string_view text);
std::string remove_mentions(std::string_view text);
std::string strip_hashes(std::string_view text);
std::string strip_brackets(std::string_view text);
std::string remove_digits(std::string_view text);
std::string keep_letters(std::string_view text);
std::string collapse_whitespace(std::string_view text);
std::vector<std::string> split_whitespace(std::string_view text);
std::vector<std::string> drop_stopwords(std::vector<std::string> tokens, const StopWords& stopwords);
std::vector<std::string> drop_empty(std::vector<std::string> tokens);
}  // namespace steps

/// Cleans every record (in parallel) and assigns ids in load order.
std::vector<LabeledDocument> prepare(std::span<const RawRecord> records, const StopWords& stopwords);

// --- splitting -------------------------------------------------------------

/// Stratified train/test split. Documents with no tokens are excluded and reported.
SplitIndices stratified_split(std::span<const LabeledDocument> docs, double test_fraction,
                              std::uint64_t seed);

/// Stratified k-fold partition of positions 0..labels.size()-1. Each fold's class
/// counts are within one of proportional.
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels, std::size_t k,
                                                       std::uint64_t seed);

CorpusStats corpus_stats(std::span<const RawRecord> records);
CorpusStats corpus_stats(std::span<const LabeledDocument> docs);

std::vector<TokenSpan> token_views(std::span<const LabeledDocument> docs);
std::vector<TokenSpan> token_views(std::span<const std::vector<std::string>> token_lists);
std::vector<int> labels_of(std::span<const LabeledDocument> docs);
std::vector<LabeledDocument> select(std::span<const LabeledDocument> docs, std::span<const std::size_t> ids);

}  // namespace trollstack::corpus
