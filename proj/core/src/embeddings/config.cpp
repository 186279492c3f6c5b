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

#include <string>

#include "trollstack/embeddings.hpp"
#include "trollstack/error.hpp"

namespace trollstack::embeddings {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

void Word2VecConfig::validate() const {
    require(dim >= 1, "word2vec.dim must be >= 1");
    require(window >= 1, "word2vec.window must be >= 1");
    require(epochs >= 1, "word2vec.epochs must be >= 1");
    require(negatives >= 1, "word2vec.negatives must be >= 1");
    require(learning_rate > 0.0, "word2vec.learning_rate must be > 0");
    require(min_count >= 1, "word2vec.min_count must be >= 1");
}

nlohmann::json Word2VecConfig::to_json() const {
    return {{"dim", dim},           {"window", window},       {"epochs", epochs},
            {"negatives", negatives}, {"learning_rate", learning_rate}, {"min_count", min_count},
            {"seed", seed}};
}

Word2VecConfig Word2VecConfig::from_json(const nlohmann::json& j) {
    Word2VecConfig c;
    c.dim = j.value("dim", c.dim);
    c.window = j.value("window", c.window);
    c.epochs = j.value("epochs", c.epochs);
    c.negatives = j.value("negatives", c.negatives);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.min_count = j.value("min_count", c.min_count);
    c.seed = j.value("seed", c.seed);
    c.validate();
    return c;
}

void GloveConfig::validate() const {
    require(dim >= 1, "glove.dim must be >= 1");
    require(window >= 1, "glove.window must be >= 1");
    require(epochs >= 1, "glove.epochs must be >= 1");
    require(learning_rate > 0.0, "glove.learning_rate must be > 0");
    require(x_max > 0.0, "glove.x_max must be > 0");
    require(alpha > 0.0 && alpha < 1.0, "glove.alpha must lie in (0, 1)");
    require(min_count >= 1, "glove.min_count must be >= 1");
}

nlohmann::json GloveConfig::to_json() const {
    return {{"dim", dim},     {"window", window}, {"epochs", epochs},       {"learning_rate", learning_rate},
            {"x_max", x_max}, {"alpha", alpha},   {"min_count", min_count}, {"seed", seed}};
}

GloveConfig GloveConfig::from_json(const nlohmann::json& j) {
    GloveConfig c;
    c.dim = j.value("dim", c.dim);
    c.window = j.value("window", c.window);
    c.epochs = j.value("epochs", c.epochs);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.x_max = j.value("x_max", c.x_max);
    c.alpha = j.value("alpha", c.alpha);
    c.min_count = j.value("min_count", c.min_count);
    c.seed = j.value("seed", c.seed);
    c.validate();
    return c;
}

}  // namespace trollstack::embeddings
