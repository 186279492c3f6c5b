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
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "oracles.hpp"
#include "trollstack/embeddings.hpp"
#include "trollstack/error.hpp"
#include "trollstack/random.hpp"

using namespace trollstack;
using namespace trollstack::embeddings;
using Docs = std::vector<std::vector<std::string>>;

namespace {

std::vector<corpus::TokenSpan> views(const Docs& docs) { return corpus::token_views(docs); }

EmbeddingTable w2v(const Docs& docs, const Word2VecConfig& c) {
    const auto v = views(docs);
    return train_word2vec(std::span<const corpus::TokenSpan>(v), c);
}

EmbeddingTable glove(const Docs& docs, const GloveConfig& c) {
    const auto v = views(docs);
    return train_glove(std::span<const corpus::TokenSpan>(v), c);
}

Cooccurrence cooc_of(const Docs& docs, std::size_t window) {
    const auto v = views(docs);
    return build_cooccurrence(v, window);
}

EmbeddingTable parse(const std::string& text) {
    std::istringstream in(text);
    return parse_pretrained(in);
}

// Four synonym pairs; each pair shares a context vocabulary no other pair uses.
const std::vector<std::pair<std::string, std::string>> kPairs{
    {"cat", "feline"}, {"dog", "canine"}, {"rock", "stone"}, {"car", "automobile"}};
const std::vector<std::vector<std::string>> kContexts{
    {"purr", "whiskers", "meow", "fur", "nap"},
    {"bark", "leash", "fetch", "bone", "walk"},
    {"granite", "cliff", "hard", "mountain", "quarry"},
    {"engine", "wheel", "drive", "road", "fuel"}};

Docs shared_context_corpus(std::size_t sentences, std::uint64_t seed) {
    Rng rng(seed);
    Docs docs;
    for (std::size_t s = 0; s < sentences; ++s) {
        const std::size_t g = rng.uniform_index(kPairs.size());
        const auto& ctx = kContexts[g];
        std::vector<std::string> doc;
        for (int k = 0; k < 3; ++k) doc.push_back(ctx[rng.uniform_index(ctx.size())]);
        doc.push_back(rng.uniform01() < 0.5 ? kPairs[g].first : kPairs[g].second);
        for (int k = 0; k < 3; ++k) doc.push_back(ctx[rng.uniform_index(ctx.size())]);
        docs.push_back(doc);
    }
    return docs;
}

double cos_terms(const EmbeddingTable& t, const std::string& a, const std::string& b) {
    return cosine(*t.find(a), *t.find(b));
}

void check_semantic_closeness(const EmbeddingTable& t) {
    CHECK(cos_terms(t, "cat", "feline") > cos_terms(t, "cat", "rock"));
    double within = 0.0, across = 0.0;
    int n_across = 0;
    for (std::size_t i = 0; i < kPairs.size(); ++i) {
        within += cos_terms(t, kPairs[i].first, kPairs[i].second);
        for (std::size_t j = 0; j < kPairs.size(); ++j) {
            if (i == j) continue;
            across += cos_terms(t, kPairs[i].first, kPairs[j].second);
            ++n_across;
        }
    }
    within /= static_cast<double>(kPairs.size());
    across /= n_across;
    CHECK(within - across >= 0.2);
}

std::vector<double> flatten(const GloveParameters& p) {
    std::vector<double> x;
    for (const auto* block : {&p.word, &p.context, &p.word_bias, &p.context_bias}) x.insert(x.end(), block->begin(), block->end());
    return x;
}

GloveParameters unflatten(const std::vector<double>& x, std::size_t vocab, std::size_t dim) {
    auto p = GloveParameters::zeros(vocab, dim);
    std::size_t k = 0;
    for (auto* block : {&p.word, &p.context, &p.word_bias, &p.context_bias})
        for (double& v : *block) v = x[k++];
    return p;
}

}  // namespace

TEST_SUITE("embeddings") {

TEST_CASE("word2vec shape on a two-token document") {
    Word2VecConfig c;
    c.dim = 4;
    c.epochs = 1;
    const auto t = w2v({{"a", "b"}}, c);
    CHECK(t.dim() == 4);
    CHECK(t.size() == 2);
    for (const char* term : {"a", "b"}) {
        const auto v = t.find(term);
        REQUIRE(v.has_value());
        CHECK(v->size() == 4);
        for (double x : *v) CHECK(std::isfinite(x));
    }
    CHECK(t.source() == EmbeddingSource::trained_w2v);
}

TEST_CASE("word2vec is deterministic for a seed") {
    Word2VecConfig c;
    c.dim = 8;
    c.seed = 17;
    const auto docs = shared_context_corpus(100, 2);
    CHECK(w2v(docs, c) == w2v(docs, c));
    Word2VecConfig other = c;
    other.seed = 18;
    CHECK_FALSE(w2v(docs, c) == w2v(docs, other));
}

TEST_CASE("word2vec needs a document with a context pair") {
    CHECK_THROWS_AS(w2v({{"a"}, {"b"}}, Word2VecConfig{}), TrainingError);
}

TEST_CASE("word2vec places shared-context words together") {
    Word2VecConfig c;
    c.dim = 20;
    c.window = 3;
    c.epochs = 10;
    c.seed = 3;
    check_semantic_closeness(w2v(shared_context_corpus(500, 1), c));
}

TEST_CASE("glove places shared-context words together") {
    GloveConfig c;
    c.dim = 20;
    c.window = 3;
    c.epochs = 50;
    c.seed = 3;
    check_semantic_closeness(glove(shared_context_corpus(500, 1), c));
}

TEST_CASE("glove weighting function") {
    CHECK(glove_weight(200.0, 100.0, 0.75) == 1.0);
    CHECK(glove_weight(25.0, 100.0, 0.75) == doctest::Approx(std::pow(0.25, 0.75)));
    CHECK(glove_weight(25.0, 100.0, 0.75) == doctest::Approx(0.3536).epsilon(1e-4));
}

TEST_CASE("co-occurrence counts are symmetric and distance weighted") {
    const auto cooc = cooc_of({{"a", "b", "c"}}, 2);
    CHECK(cooc.terms == std::vector<std::string>{"a", "b", "c"});
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> cells;
    for (const auto& e : cooc.entries) cells[{e.center, e.context}] = e.count;
    CHECK(cells.size() == 6);
    CHECK(cells[{0, 1}] == 1.0);
    CHECK(cells[{1, 0}] == 1.0);
    CHECK(cells[{0, 2}] == 0.5);
    CHECK(cells[{2, 0}] == 0.5);
    CHECK(cells[{1, 2}] == 1.0);
}

TEST_CASE("glove loss vanishes at a constructed exact solution") {
    const auto cooc = cooc_of({{"a", "b"}, {"a", "b"}, {"a", "b"}}, 1);
    REQUIRE(cooc.entries.size() == 2);
    auto p = GloveParameters::zeros(2, 2);
    const double l3 = std::log(3.0);
    p.word = {1, 0, 0, 1};          // w_a, w_b
    p.context = {0, l3, l3, 0};     // c_a, c_b
    CHECK(glove_loss(cooc, p, GloveConfig{}) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("glove gradient matches central differences") {
    const auto cooc = cooc_of({{"a", "b", "c", "a"}, {"c", "b"}, {"b", "a", "a"}}, 3);
    REQUIRE(cooc.terms.size() == 3);
    GloveConfig config;
    config.x_max = 2.0;  // exercise both branches of the weight
    const auto p = GloveParameters::random(3, 5, 99);
    const auto x = flatten(p);
    const auto g = flatten(glove_gradient(cooc, p, config));
    const double err = testing::max_relative_gradient_error(
        [&](const std::vector<double>& v) { return glove_loss(cooc, unflatten(v, 3, 5), config); }, x, g);
    CHECK(err < 1e-4);
}

TEST_CASE("glove training is deterministic and rejects empty input") {
    GloveConfig c;
    c.dim = 6;
    c.epochs = 3;
    const auto docs = shared_context_corpus(50, 4);
    const auto a = glove(docs, c);
    CHECK(a == glove(docs, c));
    CHECK(a.source() == EmbeddingSource::trained_glove);
    CHECK_THROWS_AS(glove({{"a"}}, c), TrainingError);
}

TEST_CASE("pretrained vector files") {
    const auto t = parse("a 1 0\nb 0 1\n");
    CHECK(t.dim() == 2);
    CHECK(t.size() == 2);
    CHECK((*t.find("b"))[1] == 1.0);

    try {
        parse("a 1 0\nb 0 1 1\n");
        FAIL("expected a format error");
    } catch (const DataError& e) {
        CHECK(e.code() == DataErrorCode::format);
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse("a 1 x\n"), DataError);
    CHECK_THROWS_AS(parse(""), DataError);
}

TEST_CASE("pretrained file in published 100-dimensional layout") {
    std::ostringstream text;
    Rng rng(1);
    const char* words[] = {"the", ",", "of"};
    std::vector<std::vector<double>> expected;
    for (const char* w : words) {
        text << w;
        std::vector<double> v;
        for (int d = 0; d < 100; ++d) {
            const double x = std::round(rng.uniform(-1, 1) * 1e5) / 1e5;
            v.push_back(x);
            text << ' ' << x;
        }
        expected.push_back(v);
        text << '\n';
    }
    const auto t = parse(text.str());
    CHECK(t.dim() == 100);
    // independent split of each line
    std::istringstream lines(text.str());
    std::string line;
    for (int i = 0; std::getline(lines, line); ++i) {
        std::istringstream fields(line);
        std::string word;
        fields >> word;
        std::vector<double> v;
        double x;
        while (fields >> x) v.push_back(x);
        const auto got = t.find(word);
        REQUIRE(got.has_value());
        CHECK(std::vector<double>(got->begin(), got->end()) == v);
    }
}

TEST_CASE("embedding table save and load round trip") {
    Word2VecConfig c;
    c.dim = 5;
    const auto t = w2v(shared_context_corpus(40, 5), c);
    const auto path = std::filesystem::temp_directory_path() / "trollstack_table_test.txt";
    t.save(path);
    const auto back = EmbeddingTable::load(path);
    CHECK(back == t);
    CHECK(back.source() == EmbeddingSource::trained_w2v);
    CHECK(back.metadata().at("config").at("dim") == 5);
    std::filesystem::remove(path);
    std::filesystem::remove(path.string() + ".meta.json");
}

TEST_CASE("mean pooling") {
    EmbeddingTable t(2, EmbeddingSource::pretrained_file);
    t.set("a", std::vector<double>{1, 0});
    t.set("b", std::vector<double>{0, 1});
    const std::vector<std::string> ab{"a", "b"}, z{"z"}, aab{"a", "a", "b"};
    CHECK(pool_document(ab, t) == std::vector<double>{0.5, 0.5});
    CHECK(pool_document(z, t) == std::vector<double>{0, 0});
    const auto p = pool_document(aab, t);
    CHECK(p[0] == doctest::Approx(2.0 / 3.0));
    CHECK(p[1] == doctest::Approx(1.0 / 3.0));

    const Docs docs{ab, z, {}};
    const auto v = views(docs);
    const auto m = embed_corpus(std::span<const corpus::TokenSpan>(v), t, FeatureKind::glove);
    CHECK(m.is_dense());
    CHECK(m.kind() == FeatureKind::glove);
    CHECK(m.to_dense() == std::vector<double>{0.5, 0.5, 0, 0, 0, 0});
}

TEST_CASE("pooling a concatenation interpolates by in-table counts") {
    EmbeddingTable t(3, EmbeddingSource::pretrained_file);
    Rng rng(2);
    for (const char* w : {"a", "b", "c", "d"}) {
        std::vector<double> v{rng.normal(), rng.normal(), rng.normal()};
        t.set(w, v);
    }
    const std::vector<std::string> t1{"a", "b", "oov", "a"}, t2{"c", "d", "d"};
    std::vector<std::string> both = t1;
    both.insert(both.end(), t2.begin(), t2.end());
    const auto p1 = pool_document(t1, t), p2 = pool_document(t2, t), p = pool_document(both, t);
    for (std::size_t d = 0; d < 3; ++d) CHECK(p[d] == doctest::Approx((3.0 * p1[d] + 3.0 * p2[d]) / 6.0));
}

TEST_CASE("table rejects bad vectors and counts duplicates") {
    EmbeddingTable t(2, EmbeddingSource::pretrained_file);
    CHECK_THROWS(t.set("a", std::vector<double>{1}));
    CHECK_THROWS(t.set("a", std::vector<double>{1, NAN}));
    t.set("a", std::vector<double>{1, 2});
    t.set("a", std::vector<double>{3, 4});
    CHECK(t.duplicates() == 1);
    CHECK((*t.find("a"))[0] == 3);
}

}  // TEST_SUITE
