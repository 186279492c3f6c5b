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

#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "synthetic.hpp"
#include "trollstack/error.hpp"
#include "trollstack/corpus.hpp"
#include "trollstack/random.hpp"

using namespace trollstack;
using namespace trollstack::corpus;
using Tokens = std::vector<std::string>;

namespace {

const StopWords& stopwords() {
    static const StopWords words = StopWords::load(TROLLSTACK_STOPWORDS_FILE);
    return words;
}

std::vector<RawRecord> parse_jsonl(const std::string& text) {
    std::istringstream in(text);
    return parse_cybertroll(in);
}

std::vector<RawRecord> parse_csv_text(const std::string& text, const CsvOptions& options = {}) {
    std::istringstream in(text);
    return parse_csv(in, options);
}

template <typename Fn>
DataError capture_data_error(Fn&& fn) {
    try {
        fn();
    } catch (const DataError& e) {
        return e;
    }
    FAIL("expected a DataError");
    return DataError(DataErrorCode::io, "unreachable");
}

std::vector<LabeledDocument> docs_with_labels(const std::vector<int>& labels) {
    std::vector<LabeledDocument> docs;
    for (std::size_t i = 0; i < labels.size(); ++i) docs.push_back({i, "", {"tok" + std::string(1, char('a' + i % 26))}, labels[i]});
    return docs;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("cybertroll loader reads content and first label, ignoring other fields") {
    const auto records = parse_jsonl(R"({"content":"x","annotation":{"label":["1"]},"extras":null})"
                                     "\n"
                                     R"({"content":"y z","annotation":{"notes":"","label":["0"]},"extras":null,"metadata":{"a":1}})"
                                     "\n");
    REQUIRE(records.size() == 2);
    CHECK(records[0] == RawRecord{"x", 1});
    CHECK(records[1] == RawRecord{"y z", 0});
}

TEST_CASE("cybertroll loader rejects labels outside 0/1 with the line number") {
    const auto e = capture_data_error([] {
        parse_jsonl(R"({"content":"a","annotation":{"label":["0"]}})"
                    "\n"
                    R"({"content":"b","annotation":{"label":["2"]}})"
                    "\n");
    });
    CHECK(e.code() == DataErrorCode::rejected_record);
    CHECK(e.line() == 2);
}

TEST_CASE("cybertroll loader errors") {
    CHECK(capture_data_error([] { parse_jsonl(""); }).code() == DataErrorCode::empty_dataset);
    CHECK(capture_data_error([] { parse_jsonl("\n\n"); }).code() == DataErrorCode::empty_dataset);
    const auto bad = capture_data_error([] { parse_jsonl("{\"content\":\"a\",\"annotation\":{\"label\":[\"1\"]}}\n{not json\n"); });
    CHECK(bad.code() == DataErrorCode::malformed_line);
    CHECK(bad.line() == 2);
    CHECK(capture_data_error([] { parse_jsonl(R"({"content":"a"})"); }).code() == DataErrorCode::malformed_line);
    CHECK(capture_data_error([] { load_cybertroll("/nonexistent/file.json"); }).code() == DataErrorCode::io);
}

TEST_CASE("cybertroll loader preserves order") {
    auto records = testing::synthetic_tweets({.n_docs = 50, .seed = 3});
    std::string text;
    for (const auto& r : records) text += testing::cybertroll_line(r) + "\n";
    CHECK(parse_jsonl(text) == records);
}

TEST_CASE("csv loader") {
    const auto two = parse_csv_text("text,label\nhi,0\nbye,1\n");
    REQUIRE(two.size() == 2);
    CHECK(two[0] == RawRecord{"hi", 0});
    CHECK(two[1] == RawRecord{"bye", 1});

    CHECK_THROWS_AS(parse_csv_text("text,score\nhi,0\n"), ConfigError);

    CsvOptions mapped;
    mapped.label_map = {{"aggressive", 1}};
    CHECK(parse_csv_text("text,label\nyou,aggressive\n", mapped).front().label == 1);

    CHECK(capture_data_error([] { parse_csv_text("text,label\nhi,maybe\n"); }).code() == DataErrorCode::rejected_record);

    const auto quoted = parse_csv_text("label,text\n1,\"a, \"\"quoted\"\"\nline\"\n");
    REQUIRE(quoted.size() == 1);
    CHECK(quoted[0].content == "a, \"quoted\"\nline");

    CsvOptions renamed{.text_column = "tweet", .label_column = "y", .label_map = {}};
    CHECK(parse_csv_text("id,tweet,y\n7,hello,1\n", renamed).front() == RawRecord{"hello", 1});
}

TEST_CASE("shipped stop-word list") {
    CHECK(stopwords().contains("about"));
    CHECK(stopwords().contains("s"));
    CHECK(stopwords().contains("the"));
    CHECK_FALSE(stopwords().contains("ohio"));
    std::istringstream in("# comment\nfoo\n\nbar\n");
    const auto parsed = StopWords::parse(in);
    CHECK(parsed.size() == 2);
    CHECK(parsed.contains("bar"));
}

TEST_CASE("clean reproduces the cleaned example tweet") {
    CHECK(clean("What&;s something unique about Ohio? :)", stopwords()) == Tokens{"whats", "something", "unique", "ohio"});
}

TEST_CASE("clean of empty input") { CHECK(clean("", stopwords()).empty()); }

TEST_CASE("clean step trace") {
    const std::string raw = "Visit http://a.b #now @you 123!!";
    std::string s = steps::decode_entities(raw);
    CHECK(s == raw);
    s = steps::lowercase(s);
    CHECK(s == "visit http://a.b #now @you 123!!");
    s = steps::remove_urls(s);
    CHECK(s == "visit  #now @you 123!!");
    s = steps::remove_mentions(s);
    CHECK(s == "visit  #now  123!!");
    s = steps::strip_hashes(s);
    CHECK(s == "visit  now  123!!");
    s = steps::strip_brackets(s);
    CHECK(s == "visit  now  123!!");
    s = steps::remove_digits(s);
    CHECK(s == "visit  now  !!");
    s = steps::keep_letters(s);
    CHECK(s == "visit  now  ");
    s = steps::collapse_whitespace(s);
    CHECK(s == "visit now");
    auto tokens = steps::split_whitespace(s);
    CHECK(tokens == Tokens{"visit", "now"});
    tokens = steps::drop_stopwords(tokens, stopwords());
    tokens = steps::drop_empty(tokens);
    CHECK(tokens == Tokens{"visit", "now"});
    CHECK(clean(raw, stopwords()) == tokens);
}

TEST_CASE("clean step details") {
    CHECK(steps::decode_entities("a &amp; b &lt;3 &#65;&#x42; &bogus; &;x & y") == "a & b <3 AB  x & y");
    CHECK(steps::remove_urls("see https://x.y/z?q=1 and www.foo.com.") == "see  and ");
    CHECK(steps::remove_mentions("hey @a_b1, hi") == "hey , hi");
    CHECK(steps::strip_brackets("(a)[b]{c}") == "abc");
    CHECK(clean("#Hashtag (Brackets) [xx] {zz}", stopwords()) == Tokens{"hashtag", "brackets", "xx", "zz"});
    CHECK(clean("I'm so ANGRY at you!!! 2day", stopwords()) == Tokens{"im", "angry", "day"});
    CHECK(clean("12345 !!!", stopwords()).empty());
}

TEST_CASE("clean output alphabet and idempotence") {
    Rng rng(5);
    const std::string alphabet = "abcXYZ  &;#@()[]{}0123456789!?.:/_-'\"\t\nhttp://www.";
    std::vector<std::string> inputs;
    for (const auto& r : testing::synthetic_tweets({.n_docs = 300, .seed = 9})) inputs.push_back(r.content);
    for (int i = 0; i < 300; ++i) {
        std::string s;
        const std::size_t len = rng.uniform_index(60);
        for (std::size_t k = 0; k < len; ++k) s.push_back(alphabet[rng.uniform_index(alphabet.size())]);
        inputs.push_back(s);
    }
    for (const auto& raw : inputs) {
        const auto once = clean(raw, stopwords());
        std::string joined;
        for (const auto& t : once) {
            CHECK_FALSE(t.empty());
            CHECK(std::all_of(t.begin(), t.end(), [](char c) { return c >= 'a' && c <= 'z'; }));
            CHECK_FALSE(stopwords().contains(t));
            joined += t + " ";
        }
        CHECK(clean(joined, stopwords()) == once);
    }
}

TEST_CASE("prepare assigns ids in load order") {
    const std::vector<RawRecord> records{{"Hello World", 0}, {"you IDIOT", 1}, {"123", 0}};
    const auto docs = prepare(records, stopwords());
    REQUIRE(docs.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(docs[i].id == i);
        CHECK(docs[i].raw == records[i].content);
        CHECK(docs[i].label == records[i].label);
    }
    CHECK(docs[1].tokens == Tokens{"idiot"});
    CHECK(docs[2].tokens.empty());
}

TEST_CASE("corpus stats") {
    CHECK(corpus_stats(std::vector<RawRecord>{}) == CorpusStats{0, 0, 0});
    const std::vector<RawRecord> three{{"a", 1}, {"b", 1}, {"c", 0}};
    CHECK(corpus_stats(three) == CorpusStats{3, 2, 1});
    CHECK(corpus_stats(three).aggressive_fraction() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("stratified split of ten documents") {
    const auto docs = docs_with_labels({0, 0, 0, 0, 0, 1, 1, 1, 1, 1});
    const auto a = stratified_split(docs, 0.2, 7);
    CHECK(a.train_ids.size() == 8);
    REQUIRE(a.test_ids.size() == 2);
    CHECK(docs[a.test_ids[0]].label != docs[a.test_ids[1]].label);
    const auto b = stratified_split(docs, 0.2, 7);
    CHECK(a.train_ids == b.train_ids);
    CHECK(a.test_ids == b.test_ids);
    CHECK(a.seed == 7);
}

TEST_CASE("stratified split partitions and keeps proportions") {
    const auto docs = prepare(testing::synthetic_tweets({.n_docs = 2000, .seed = 21}), stopwords());
    const auto split = stratified_split(docs, 0.2, 42);
    std::vector<int> seen(docs.size(), 0);
    for (auto i : split.train_ids) ++seen[i];
    for (auto i : split.test_ids) ++seen[i];
    for (auto i : split.excluded_ids) ++seen[i];
    for (std::size_t i = 0; i < docs.size(); ++i) {
        CHECK(seen[i] == 1);
        CHECK((docs[i].tokens.empty()) == std::binary_search(split.excluded_ids.begin(), split.excluded_ids.end(), i));
    }
    const double usable = static_cast<double>(split.train_ids.size() + split.test_ids.size());
    const double train_share = static_cast<double>(split.train_ids.size()) / usable;
    CHECK(train_share >= 0.795);
    CHECK(train_share <= 0.805);

    auto positive_share = [&](const std::vector<std::size_t>& ids) {
        double pos = 0;
        for (auto i : ids) pos += docs[i].label;
        return pos / static_cast<double>(ids.size());
    };
    std::vector<std::size_t> all = split.train_ids;
    all.insert(all.end(), split.test_ids.begin(), split.test_ids.end());
    const double global = positive_share(all);
    CHECK(std::abs(positive_share(split.train_ids) - global) <= 0.01);
    CHECK(std::abs(positive_share(split.test_ids) - global) <= 0.01);

    // per-class test counts are round(count * fraction) within one
    std::size_t pos_total = 0, pos_test = 0;
    for (auto i : all) pos_total += docs[i].label;
    for (auto i : split.test_ids) pos_test += docs[i].label;
    CHECK(std::abs(static_cast<double>(pos_test) - std::round(0.2 * static_cast<double>(pos_total))) <= 1.0);
}

TEST_CASE("stratified split rejects a class with fewer than two documents") {
    const auto docs = docs_with_labels({0, 0, 0, 1});
    const auto e = capture_data_error([&] { stratified_split(docs, 0.2, 1); });
    CHECK(e.code() == DataErrorCode::stratification);
    CHECK_THROWS_AS(stratified_split(docs_with_labels({0, 0, 1, 1}), 1.0, 1), ConfigError);
}

TEST_CASE("stratified folds partition law") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 20 + rng.uniform_index(200);
        const std::size_t k = 2 + rng.uniform_index(9);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = i < k || (i >= k && i < 2 * k) ? int(i < k) : int(rng.uniform01() < 0.4);
        const auto folds = stratified_folds(labels, k, trial);
        REQUIRE(folds.size() == k);
        std::vector<int> seen(n, 0);
        double pos_total = 0;
        for (int l : labels) pos_total += l;
        for (const auto& f : folds) {
            double pos = 0;
            for (auto i : f) {
                ++seen[i];
                pos += labels[i];
            }
            const double expected_pos = pos_total / static_cast<double>(k);
            const double expected_neg = (static_cast<double>(n) - pos_total) / static_cast<double>(k);
            CHECK(std::abs(pos - expected_pos) <= 1.0);
            CHECK(std::abs((static_cast<double>(f.size()) - pos) - expected_neg) <= 1.0);
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
    }
    const std::vector<int> few{0, 0, 0, 1};
    CHECK(capture_data_error([&] { stratified_folds(few, 2, 0); }).code() == DataErrorCode::stratification);
}

}  // TEST_SUITE
