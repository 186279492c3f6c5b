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

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <string>

#include "trollstack/corpus.hpp"
#include "trollstack/parallel.hpp"

namespace trollstack::corpus {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_entity_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '#';
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x110000) {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Decodes the body between '&' and ';'. Returns false for unknown or malformed names.
bool decode_entity(std::string_view name, std::string& out) {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kNamed{{
        {"amp", "&"}, {"lt", "<"}, {"gt", ">"}, {"quot", "\""}, {"apos", "'"}, {"nbsp", " "},
    }};
    for (const auto& [entity, text] : kNamed) {
        if (name == entity) {
            out.append(text);
            return true;
        }
    }
    if (name.size() >= 2 && name[0] == '#') {
        const bool hex = name[1] == 'x' || name[1] == 'X';
        std::string_view digits = name.substr(hex ? 2 : 1);
        if (digits.empty() || digits.size() > 7) return false;
        std::uint32_t cp = 0;
        for (char c : digits) {
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
            else return false;
            cp = cp * (hex ? 16u : 10u) + static_cast<std::uint32_t>(d);
        }
        append_utf8(out, cp);
        return true;
    }
    return false;
}

bool starts_url(std::string_view text, std::size_t i) {
    auto rest = text.substr(i);
    return rest.starts_with("http://") || rest.starts_with("https://") || rest.starts_with("www.");
}

template <typename Keep>
std::string filter_chars(std::string_view text, Keep keep) {
    std::string out;
    out.reserve(text.size());
    for (char c : text)
        if (keep(c)) out.push_back(c);
    return out;
}

}  // namespace

namespace steps {

std::string decode_entities(std::string_view text) {
    constexpr std::size_t kMaxEntity = 10;
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&') {
            out.push_back(text[i++]);
            continue;
        }
        std::size_t j = i + 1;
        while (j < text.size() && j - i <= kMaxEntity && is_entity_char(text[j])) ++j;
        if (j < text.size() && text[j] == ';') {
            // known entities decode, everything else of the form &...; is dropped
            decode_entity(text.substr(i + 1, j - i - 1), out);
            i = j + 1;
        } else {
            out.push_back(text[i++]);
        }
    }
    return out;
}

std::string lowercase(std::string_view text) {
    std::string out(text);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

std::string remove_urls(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (starts_url(text, i)) {
            while (i < text.size() && !is_space(text[i])) ++i;
            continue;
        }
        out.push_back(text[i++]);
    }
    return out;
}

std::string remove_mentions(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '@') {
            ++i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) != 0 || text[i] == '_'))
                ++i;
            continue;
        }
        out.push_back(text[i++]);
    }
    return out;
}

std::string strip_hashes(std::string_view text) {
    return filter_chars(text, [](char c) { return c != '#'; });
}

std::string strip_brackets(std::string_view text) {
    return filter_chars(text, [](char c) {
        return c != '(' && c != ')' && c != '[' && c != ']' && c != '{' && c != '}';
    });
}

std::string remove_digits(std::string_view text) {
    return filter_chars(text, [](char c) { return c < '0' || c > '9'; });
}

std::string keep_letters(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c >= 'a' && c <= 'z') out.push_back(c);
        else if (is_space(c)) out.push_back(' ');
    }
    return out;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

std::vector<std::string> split_whitespace(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i > start) tokens.emplace_back(text.substr(start, i - start));
    }
    return tokens;
}

std::vector<std::string> drop_stopwords(std::vector<std::string> tokens, const StopWords& stopwords) {
    std::erase_if(tokens, [&](const std::string& t) { return stopwords.contains(t); });
    return tokens;
}

std::vector<std::string> drop_empty(std::vector<std::string> tokens) {
    std::erase_if(tokens, [](const std::string& t) { return t.empty(); });
    return tokens;
}

}  // namespace steps

std::vector<std::string> clean(std::string_view raw, const StopWords& stopwords) {
    using namespace steps;
    std::string text = decode_entities(raw);
    text = lowercase(text);
    text = remove_urls(text);
    text = remove_mentions(text);
    text = strip_hashes(text);
    text = strip_brackets(text);
    text = remove_digits(text);
    text = keep_letters(text);
    text = collapse_whitespace(text);
    return drop_empty(drop_stopwords(split_whitespace(text), stopwords));
}

std::vector<LabeledDocument> prepare(std::span<const RawRecord> records, const StopWords& stopwords) {
    std::vector<LabeledDocument> docs(records.size());
    parallel_for(records.size(), [&](std::size_t i) {
        docs[i].id = i;
        docs[i].raw = records[i].content;
        docs[i].tokens = clean(records[i].content, stopwords);
        docs[i].label = records[i].label;
    });
    return docs;
}

}  // namespace trollstack::corpus
