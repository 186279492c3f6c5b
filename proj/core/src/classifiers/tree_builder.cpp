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

#include "classifiers/tree_builder.hpp"

#include <algorithm>
#include <limits>

#include "trollstack/random.hpp"

namespace trollstack::classifiers::detail {

namespace {

struct Entry {
    double value;
    std::uint32_t label;
};

struct Split {
    bool found = false;
    std::uint32_t feature = 0;
    double threshold = 0.0;
    double score = std::numeric_limits<double>::infinity();  // weighted child impurity, lower is better
};

// n * weighted gini up to a constant factor: p(m-p)/m summed over both children.
double child_score(std::size_t pl, std::size_t nl, std::size_t pr, std::size_t nr) {
    const double l = static_cast<double>(pl) * static_cast<double>(nl - pl) / static_cast<double>(nl);
    const double r = static_cast<double>(pr) * static_cast<double>(nr - pr) / static_cast<double>(nr);
    return l + r;
}

double midpoint(double a, double b) {
    const double mid = a + (b - a) / 2.0;
    return mid < b ? mid : a;
}

class TreeBuilder {
public:
    TreeBuilder(const FeatureMatrix& X, std::span<const int> y, const TreeBuildOptions& options)
        : X_(X), y_(y), options_(options), rng_(options.seed) {
        if (X.is_dense()) {
            pool_.resize(X.cols());
            for (std::size_t f = 0; f < pool_.size(); ++f) pool_[f] = static_cast<std::uint32_t>(f);
        } else {
            count_.assign(X.cols(), 0);
            start_.assign(X.cols(), 0);
            cursor_.assign(X.cols(), 0);
        }
    }

    Tree run(std::vector<std::size_t> samples) {
        samples_ = std::move(samples);
        grow(0, samples_.size(), 0);
        return std::move(tree_);
    }

private:
    std::int32_t grow(std::size_t begin, std::size_t end, std::size_t depth) {
        const std::size_t n = end - begin;
        std::size_t positives = 0;
        for (std::size_t i = begin; i < end; ++i) positives += static_cast<std::size_t>(y_[samples_[i]] == 1);

        const auto node = static_cast<std::int32_t>(tree_.size());
        tree_.feature.push_back(-1);
        tree_.threshold.push_back(0.0);
        tree_.left.push_back(-1);
        tree_.right.push_back(-1);
        tree_.positives.push_back(static_cast<std::uint32_t>(positives));
        tree_.samples.push_back(static_cast<std::uint32_t>(n));

        if (depth >= options_.params.max_depth || n < options_.params.min_samples_split || positives == 0 ||
            positives == n)
            return node;

        const Split split = X_.is_dense() ? best_dense_split(begin, end, positives)
                                          : best_sparse_split(begin, end, positives);
        if (!split.found) return node;

        auto first = samples_.begin() + static_cast<long>(begin);
        auto last = samples_.begin() + static_cast<long>(end);
        auto mid = std::stable_partition(first, last, [&](std::size_t s) {
            return X_.row(s).at(split.feature) <= split.threshold;
        });
        if (mid == first || mid == last) return node;
        const std::size_t middle = static_cast<std::size_t>(mid - samples_.begin());

        tree_.feature[static_cast<std::size_t>(node)] = static_cast<std::int32_t>(split.feature);
        tree_.threshold[static_cast<std::size_t>(node)] = split.threshold;
        const auto left = grow(begin, middle, depth + 1);
        const auto right = grow(middle, end, depth + 1);
        tree_.left[static_cast<std::size_t>(node)] = left;
        tree_.right[static_cast<std::size_t>(node)] = right;
        return node;
    }

    // Scans the value-sorted nonzero entries with an implicit block of `zeros`
    // zero-valued samples (zero_pos of them positive) between negatives and positives.
    void scan_feature(std::uint32_t feature, std::span<Entry> entries, std::size_t zeros, std::size_t zero_pos,
                      std::size_t n, std::size_t positives, Split& best) const {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.value < b.value; });
        std::size_t nl = 0, pl = 0;
        bool has_prev = false;
        double prev = 0.0;
        auto take_group = [&](double value, std::size_t count, std::size_t pos) {
            if (has_prev) {
                const double score = child_score(pl, nl, positives - pl, n - nl);
                if (score < best.score) {
                    best.found = true;
                    best.score = score;
                    best.feature = feature;
                    best.threshold = midpoint(prev, value);
                }
            }
            nl += count;
            pl += pos;
            prev = value;
            has_prev = true;
        };

        bool zeros_done = zeros == 0;
        std::size_t i = 0;
        while (i < entries.size()) {
            const double value = entries[i].value;
            if (!zeros_done && value > 0.0) {
                take_group(0.0, zeros, zero_pos);
                zeros_done = true;
            }
            std::size_t j = i, pos = 0;
            while (j < entries.size() && entries[j].value == value) pos += entries[j++].label;
            take_group(value, j - i, pos);
            i = j;
        }
        if (!zeros_done) take_group(0.0, zeros, zero_pos);
    }

    Split best_sparse_split(std::size_t begin, std::size_t end, std::size_t positives) {
        const std::size_t n = end - begin;
        touched_.clear();
        for (std::size_t i = begin; i < end; ++i) {
            for (std::uint32_t f : X_.row(samples_[i]).cols) {
                if (count_[f]++ == 0) touched_.push_back(f);
            }
        }
        std::sort(touched_.begin(), touched_.end());
        std::size_t offset = 0;
        for (std::uint32_t f : touched_) {
            start_[f] = offset;
            offset += count_[f];
        }
        entries_.resize(offset);
        for (std::uint32_t f : touched_) cursor_[f] = start_[f];
        for (std::size_t i = begin; i < end; ++i) {
            const std::size_t s = samples_[i];
            const auto row = X_.row(s);
            const auto label = static_cast<std::uint32_t>(y_[s] == 1);
            for (std::size_t k = 0; k < row.cols.size(); ++k)
                entries_[cursor_[row.cols[k]]++] = Entry{row.values[k], label};
        }

        candidates_.clear();
        for (std::uint32_t f : touched_) {
            const std::size_t c = count_[f];
            bool constant = c == n;
            for (std::size_t k = start_[f] + 1; constant && k < start_[f] + c; ++k)
                constant = entries_[k].value == entries_[start_[f]].value;
            if (!constant) candidates_.push_back(f);
        }

        const std::size_t m = options_.max_features;
        if (m > 0 && m < candidates_.size()) {
            for (std::size_t i = 0; i < m; ++i)
                std::swap(candidates_[i], candidates_[i + rng_.uniform_index(candidates_.size() - i)]);
            candidates_.resize(m);
            std::sort(candidates_.begin(), candidates_.end());
        }

        Split best;
        for (std::uint32_t f : candidates_) {
            const std::size_t c = count_[f];
            std::span<Entry> span(entries_.data() + start_[f], c);
            std::size_t nz_pos = 0;
            for (const auto& e : span) nz_pos += e.label;
            scan_feature(f, span, n - c, positives - nz_pos, n, positives, best);
        }
        for (std::uint32_t f : touched_) count_[f] = 0;
        return best;
    }

    Split best_dense_split(std::size_t begin, std::size_t end, std::size_t positives) {
        const std::size_t n = end - begin;
        const std::size_t n_features = pool_.size();
        const std::size_t m = options_.max_features == 0 ? n_features : options_.max_features;
        Split best;
        std::size_t evaluated = 0;
        entries_.resize(n);
        for (std::size_t i = 0; i < n_features && evaluated < m; ++i) {
            std::uint32_t f;
            if (options_.max_features == 0) {
                f = static_cast<std::uint32_t>(i);
            } else {
                std::swap(pool_[i], pool_[i + rng_.uniform_index(n_features - i)]);
                f = pool_[i];
            }
            bool constant = true;
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t s = samples_[begin + k];
                entries_[k] = Entry{X_.row(s).values[f], static_cast<std::uint32_t>(y_[s] == 1)};
                constant = constant && entries_[k].value == entries_[0].value;
            }
            if (constant) continue;
            ++evaluated;
            scan_feature(f, std::span<Entry>(entries_.data(), n), 0, 0, n, positives, best);
        }
        return best;
    }

    const FeatureMatrix& X_;
    std::span<const int> y_;
    TreeBuildOptions options_;
    Rng rng_;
    Tree tree_;
    std::vector<std::size_t> samples_;
    std::vector<Entry> entries_;
    std::vector<std::uint32_t> count_;
    std::vector<std::size_t> start_;
    std::vector<std::size_t> cursor_;
    std::vector<std::uint32_t> touched_;
    std::vector<std::uint32_t> candidates_;
    std::vector<std::uint32_t> pool_;
};

}  // namespace

Tree build_tree(const FeatureMatrix& X, std::span<const int> y, std::vector<std::size_t> samples,
                const TreeBuildOptions& options) {
    TreeBuilder builder(X, y, options);
    return builder.run(std::move(samples));
}

}  // namespace trollstack::classifiers::detail
