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

#include <cmath>
#include <map>
#include <set>

#include "synthetic.hpp"
#include "trollstack/error.hpp"
#include "trollstack/vectorizers.hpp"

using namespace trollstack;
using namespace trollstack::vectorizers;
using Docs = std::vector<std::vector<std::string>>;

namespace {

Vocabulary vocab_of(const Docs& docs, std::size_t min_df = 1) {
    const auto views = corpus::token_views(docs);
    return fit_vocabulary(std::span<const corpus::TokenSpan>(views), min_df);
}

FeatureMatrix tfidf(const Docs& docs, const Vocabulary& v) {
    const auto views = corpus::token_views(docs);
    return tfidf_transform(std::span<const corpus::TokenSpan>(views), v);
}

FeatureMatrix bow(const Docs& docs, const Vocabulary& v, BowMode mode = BowMode::binary) {
    const auto views = corpus::token_views(docs);
    return bow_transform(std::span<const corpus::TokenSpan>(views), v, mode);
}

}  // namespace

TEST_SUITE("vectorizers") {

TEST_CASE("vocabulary terms and document frequencies") {
    const auto v = vocab_of({{"a", "b"}, {"b", "c"}});
    CHECK(v.terms() == std::vector<std::string>{"a", "b", "c"});
    CHECK(v.doc_freq(0) == 1);
    CHECK(v.doc_freq(1) == 2);
    CHECK(v.doc_freq(2) == 1);
    CHECK(v.n_docs() == 2);
    CHECK(*v.index_of("c") == 2);
    CHECK_FALSE(v.index_of("z").has_value());

    CHECK(vocab_of({{"a", "b"}, {"b", "c"}}, 2).terms() == std::vector<std::string>{"b"});
    CHECK_THROWS_AS(vocab_of({{"a"}, {"b"}}, 2), ConfigError);
}

TEST_CASE("vocabulary equals a one-pass set union and is lexicographic") {
    const auto records = testing::synthetic_tweets({.n_docs = 500, .seed = 4});
    const auto docs = corpus::prepare(records, corpus::StopWords::load(TROLLSTACK_STOPWORDS_FILE));
    std::set<std::string> uni;
    for (const auto& d : docs) uni.insert(d.tokens.begin(), d.tokens.end());
    const auto v = fit_vocabulary(std::span<const corpus::LabeledDocument>(docs));
    CHECK(v.terms() == std::vector<std::string>(uni.begin(), uni.end()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(v.doc_freq(i) >= 1);
        CHECK(v.doc_freq(i) <= v.n_docs());
    }
    CHECK(fit_vocabulary(std::span<const corpus::LabeledDocument>(docs)) == v);
}

TEST_CASE("vocabulary json round trip and validation") {
    const auto v = vocab_of({{"x", "y"}, {"y"}});
    CHECK(Vocabulary::from_json(v.to_json()) == v);
    CHECK_THROWS(Vocabulary({"b", "a"}, {1, 1}, 2));
    CHECK_THROWS(Vocabulary({"a", "a"}, {1, 1}, 2));
    CHECK_THROWS(Vocabulary({"a"}, {3}, 2));
}

TEST_CASE("binary bag of words") {
    const auto v = vocab_of({{"a"}, {"b"}, {"c"}});
    const auto m = bow({{"b", "b", "a"}, {}, {"z"}}, v);
    CHECK(m.kind() == FeatureKind::bow);
    CHECK(m.to_dense() == std::vector<double>{1, 1, 0, 0, 0, 0, 0, 0, 0});
    CHECK(m.stored_values() == 2);
    CHECK(bow({{"b", "b", "a"}}, v, BowMode::counts).to_dense() == std::vector<double>{1, 2, 0});
}

TEST_CASE("tf-idf hand arithmetic") {
    const auto v = vocab_of({{"a"}, {"a"}, {"b"}});
    CHECK(v.idf(0) == doctest::Approx(std::log(4.0 / 3.0) + 1.0));
    CHECK(v.idf(1) == doctest::Approx(std::log(4.0 / 2.0) + 1.0));
    const auto m = tfidf({{"a", "b"}, {}}, v);
    // pre-norm (1.2877, 1.6931)
    CHECK(m.at(0, 0) == doctest::Approx(0.6055).epsilon(1e-4));
    CHECK(m.at(0, 1) == doctest::Approx(0.7958).epsilon(1e-4));
    CHECK(m.row(1).cols.empty());
}

TEST_CASE("idf of a term in every document is one") {
    const auto v = vocab_of({{"t", "x"}, {"t"}, {"t", "y"}});
    CHECK(v.idf(*v.index_of("t")) == 1.0);
}

TEST_CASE("rarer terms weigh more") {
    const auto records = testing::synthetic_tweets({.n_docs = 300, .seed = 8});
    const auto docs = corpus::prepare(records, corpus::StopWords::load(TROLLSTACK_STOPWORDS_FILE));
    const auto v = fit_vocabulary(std::span<const corpus::LabeledDocument>(docs));
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v.doc_freq(i) < v.doc_freq(j)) CHECK(v.idf(i) > v.idf(j));
}

TEST_CASE("tf-idf rows are unit or zero, transform is repeatable, sparse equals brute force") {
    const Docs docs{{"a", "b", "a"}, {"c"}, {}, {"b", "c", "d", "d"}, {"zz"}, {"a", "d"}};
    const auto v = vocab_of(docs);
    const auto m = tfidf(docs, v);
    CHECK(m == tfidf(docs, v));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double n2 = m.row(i).squared_norm();
        CHECK((n2 == 0.0 || std::abs(std::sqrt(n2) - 1.0) < 1e-9));
        for (double x : m.row(i).values) CHECK(x != 0.0);
    }
    // brute force dense computation
    const auto dense = m.to_dense();
    for (std::size_t i = 0; i < docs.size(); ++i) {
        std::vector<double> row(v.size(), 0.0);
        for (const auto& t : docs[i]) {
            for (std::size_t j = 0; j < v.size(); ++j)
                if (v.terms()[j] == t) row[j] += 1.0;
        }
        double n2 = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            double df = 0;
            for (const auto& d : docs)
                for (const auto& t : d)
                    if (t == v.terms()[j]) {
                        df += 1;
                        break;
                    }
            row[j] *= std::log((1.0 + 6.0) / (1.0 + df)) + 1.0;
            n2 += row[j] * row[j];
        }
        for (std::size_t j = 0; j < v.size(); ++j) {
            const double expected = n2 > 0 ? row[j] / std::sqrt(n2) : 0.0;
            CHECK(dense[i * v.size() + j] == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

}  // TEST_SUITE
