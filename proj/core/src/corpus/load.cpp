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

#include <fstream>
#include <istream>
#include <optional>

#include <nlohmann/json.hpp>

#include "trollstack/corpus.hpp"
#include "trollstack/error.hpp"

namespace trollstack::corpus {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(DataErrorCode::io, "cannot open dataset " + path.string());
    return in;
}

void strip_bom(std::string& line) {
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF)
        line.erase(0, 3);
}

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

std::optional<int> parse_label(std::string_view text, const std::map<std::string, int>& extra) {
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string_view::npos) return std::nullopt;
    text = text.substr(first, text.find_last_not_of(" \t") - first + 1);
    if (text == "0") return 0;
    if (text == "1") return 1;
    if (auto it = extra.find(std::string(text)); it != extra.end()) {
        if (it->second == 0 || it->second == 1) return it->second;
    }
    return std::nullopt;
}

// RFC 4180 record reader. Returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line) {
    fields.clear();
    int ch = in.get();
    if (ch == EOF) return false;
    ++line;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    for (;; ch = in.get()) {
        if (quoted) {
            if (ch == EOF) throw DataError(DataErrorCode::malformed_line, "unterminated quoted field", line);
            if (ch == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n') ++line;
                field.push_back(static_cast<char>(ch));
            }
            continue;
        }
        if (ch == EOF || ch == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            fields.push_back(std::move(field));
            return true;
        }
        if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
            field_started = false;
            continue;
        }
        if (ch == '"' && !field_started) {
            quoted = true;
            field_started = true;
            continue;
        }
        field_started = true;
        field.push_back(static_cast<char>(ch));
    }
}

}  // namespace

std::vector<RawRecord> load_cybertroll(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_cybertroll(in);
}

std::vector<RawRecord> parse_cybertroll(std::istream& in) {
    std::vector<RawRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) strip_bom(line);
        if (is_blank(line)) continue;

        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw DataError(DataErrorCode::malformed_line, std::string("invalid JSON: ") + e.what(), line_no);
        }
        if (!obj.is_object()) throw DataError(DataErrorCode::malformed_line, "expected a JSON object", line_no);

        const auto content = obj.find("content");
        if (content == obj.end() || !content->is_string())
            throw DataError(DataErrorCode::malformed_line, "missing string field 'content'", line_no);
        const auto annotation = obj.find("annotation");
        if (annotation == obj.end() || !annotation->is_object())
            throw DataError(DataErrorCode::malformed_line, "missing object field 'annotation'", line_no);
        const auto labels = annotation->find("label");
        if (labels == annotation->end() || !labels->is_array() || labels->empty() ||
            !(*labels)[0].is_string())
            throw DataError(DataErrorCode::malformed_line, "missing 'annotation.label[0]'", line_no);

        const auto label_text = (*labels)[0].get<std::string>();
        const auto label = parse_label(label_text, {});
        if (!label)
            throw DataError(DataErrorCode::rejected_record, "label '" + label_text + "' is not 0 or 1", line_no);
        auto text = content->get<std::string>();
        if (text.empty()) throw DataError(DataErrorCode::rejected_record, "empty content", line_no);
        records.push_back(RawRecord{std::move(text), *label});
    }
    if (records.empty()) throw DataError(DataErrorCode::empty_dataset, "dataset contains no records");
    return records;
}

std::vector<RawRecord> load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    auto in = open_input(path);
    return parse_csv(in, options);
}

std::vector<RawRecord> parse_csv(std::istream& in, const CsvOptions& options) {
    std::vector<std::string> fields;
    std::size_t line = 0;
    if (!read_csv_record(in, fields, line))
        throw DataError(DataErrorCode::empty_dataset, "CSV file is empty");
    if (!fields.empty()) strip_bom(fields.front());

    const std::vector<std::string> header = fields;
    auto column = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw ConfigError("CSV header has no column named '" + name + "'");
    };
    const std::size_t text_col = column(options.text_column);
    const std::size_t label_col = column(options.label_column);

    std::vector<RawRecord> records;
    for (;;) {
        const std::size_t record_line = line + 1;
        if (!read_csv_record(in, fields, line)) break;
        if (fields.size() == 1 && is_blank(fields[0])) continue;
        if (fields.size() != header.size())
            throw DataError(DataErrorCode::malformed_line,
                            "expected " + std::to_string(header.size()) + " fields, got " +
                                std::to_string(fields.size()),
                            record_line);
        const auto label = parse_label(fields[label_col], options.label_map);
        if (!label)
            throw DataError(DataErrorCode::rejected_record,
                            "unparseable label '" + fields[label_col] + "'", record_line);
        if (fields[text_col].empty())
            throw DataError(DataErrorCode::rejected_record, "empty text", record_line);
        records.push_back(RawRecord{std::move(fields[text_col]), *label});
    }
    if (records.empty()) throw DataError(DataErrorCode::empty_dataset, "CSV file has no data rows");
    return records;
}

}  // namespace trollstack::corpus
