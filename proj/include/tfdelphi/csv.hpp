// RFC-4180 CSV: comma separator, double-quote quoting with "" escapes,
// LF or CRLF records, optional trailing newline, optional UTF-8 BOM.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tfdelphi::csv {

struct Record {
    /// 1-based physical line where the record starts.
    int line = 0;
    std::vector<std::string> fields;
};

struct Document {
    std::vector<Record> records;
    /// Non-empty when the input is malformed (e.g. an unterminated quote).
    std::string error;
    int error_line = 0;
};

inline Document parse(std::string_view text)
{
    Document doc;
    if (text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }
    std::size_t pos = 0;
    int line = 1;
    while (pos < text.size()) {
        Record rec;
        rec.line = line;
        std::string field;
        bool record_done = false;
        while (!record_done) {
            field.clear();
            if (pos < text.size() && text[pos] == '"') {
                const int quote_line = line;
                ++pos;
                bool closed = false;
                while (pos < text.size()) {
                    const char c = text[pos];
                    if (c == '"') {
                        if (pos + 1 < text.size() && text[pos + 1] == '"') {
                            field.push_back('"');
                            pos += 2;
                            continue;
                        }
                        ++pos;
                        closed = true;
                        break;
                    }
                    if (c == '\n') {
                        ++line;
                    }
                    field.push_back(c);
                    ++pos;
                }
                if (!closed) {
                    doc.error = "unterminated quoted field";
                    doc.error_line = quote_line;
                    rec.fields.push_back(std::move(field));
                    doc.records.push_back(std::move(rec));
                    return doc;
                }
                if (pos < text.size() && text[pos] != ',' && text[pos] != '\n' && text[pos] != '\r') {
                    doc.error = "unexpected character after closing quote";
                    doc.error_line = line;
                    return doc;
                }
            } else {
                while (pos < text.size() && text[pos] != ',' && text[pos] != '\n' && text[pos] != '\r') {
                    field.push_back(text[pos]);
                    ++pos;
                }
            }
            rec.fields.push_back(field);
            if (pos >= text.size()) {
                record_done = true;
            } else if (text[pos] == ',') {
                ++pos;
                if (pos >= text.size()) {
                    rec.fields.emplace_back();
                    record_done = true;
                }
            } else {
                if (text[pos] == '\r') {
                    ++pos;
                }
                if (pos < text.size() && text[pos] == '\n') {
                    ++pos;
                }
                ++line;
                record_done = true;
            }
        }
        // Blank lines carry no data.
        if (!(rec.fields.size() == 1 && rec.fields.front().empty())) {
            doc.records.push_back(std::move(rec));
        }
    }
    return doc;
}

inline std::string quote(std::string_view field)
{
    const bool padded = !field.empty() && (field.front() == ' ' || field.back() == ' ');
    const bool needs = padded || field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

inline std::string format_row(const std::vector<std::string>& fields)
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out.push_back(',');
        }
        out += quote(fields[i]);
    }
    out.push_back('\n');
    return out;
}

} // namespace tfdelphi::csv
