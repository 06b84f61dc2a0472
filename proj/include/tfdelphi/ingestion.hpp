// Parsing and validation of the three per-round CSV sheets.
//
//   description  optional   one item per row: "ordinal,text" or just "text"
//   dimensions   optional   name, begin, end, one weight column per judge
//   responses    mandatory  judge id, Level (3|5|7), then per item C1..C4, R
//
// Every sheet may start with a header row, detected by sniffing the first
// record. Label cells are 0-based indices on the judge's scale ("4" or "s4").
// Decimal separator is '.'; a ',' decimal is an error. All defects found in a
// pass are reported together.

#pragma once

#include "tfdelphi/csv.hpp"
#include "tfdelphi/errors.hpp"
#include "tfdelphi/linguistic.hpp"
#include "tfdelphi/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tfdelphi {

enum class SheetKind { Description, Dimensions, Responses, Round };

inline const char* to_string(SheetKind k) noexcept
{
    switch (k) {
    case SheetKind::Description:
        return "description";
    case SheetKind::Dimensions:
        return "dimensions";
    case SheetKind::Responses:
        return "responses";
    case SheetKind::Round:
        return "round";
    }
    return "round";
}

struct Diagnostic {
    SheetKind sheet = SheetKind::Round;
    /// 1-based line, 0 when not tied to a line.
    int line = 0;
    /// 1-based column, 0 when not tied to a cell.
    int column = 0;
    std::string message;
};

inline std::string to_string(const Diagnostic& d)
{
    std::ostringstream os;
    os << to_string(d.sheet);
    if (d.line > 0) {
        os << ":" << d.line;
        if (d.column > 0) {
            os << ":" << d.column;
        }
    }
    os << ": " << d.message;
    return os.str();
}

using Diagnostics = std::vector<Diagnostic>;

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(Diagnostics diagnostics)
        : std::runtime_error(summary(diagnostics)), diagnostics_(std::move(diagnostics))
    {
    }

    [[nodiscard]] const Diagnostics& diagnostics() const noexcept { return diagnostics_; }

private:
    static std::string summary(const Diagnostics& diags)
    {
        std::string s = std::to_string(diags.size()) + " validation error(s)";
        for (const auto& d : diags) {
            s += "\n  " + to_string(d);
        }
        return s;
    }

    Diagnostics diagnostics_;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::optional<int> parse_int(std::string_view cell)
{
    cell = trim(cell);
    if (cell.empty()) {
        return std::nullopt;
    }
    int value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        return std::nullopt;
    }
    return value;
}

/// "27" or "I27".
inline std::optional<int> parse_ordinal(std::string_view cell)
{
    cell = trim(cell);
    if (!cell.empty() && (cell.front() == 'I' || cell.front() == 'i')) {
        cell.remove_prefix(1);
    }
    return parse_int(cell);
}

/// "4" or "s4".
inline std::optional<int> parse_label(std::string_view cell)
{
    cell = trim(cell);
    if (!cell.empty() && (cell.front() == 's' || cell.front() == 'S')) {
        cell.remove_prefix(1);
    }
    return parse_int(cell);
}

struct RealParse {
    std::optional<double> value;
    std::string error;
};

inline RealParse parse_real(std::string_view cell)
{
    cell = trim(cell);
    if (cell.empty()) {
        return {std::nullopt, "empty numeric cell"};
    }
    if (cell.find(',') != std::string_view::npos) {
        return {std::nullopt, "'" + std::string(cell) + "' uses ',' as decimal separator; use '.'"};
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        return {std::nullopt, "'" + std::string(cell) + "' is not a number"};
    }
    return {value, {}};
}

inline std::string format_real(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline bool header_words(std::string_view cell)
{
    // A whole-cell title such as "Item", "Description" or "Item text"; prose that merely mentions an item is data.
    static const std::regex re(R"((item|description)s?(\s+\w+)?)", std::regex::icase);
    const std::string s(trim(cell));
    return std::regex_match(s, re);
}

inline constexpr int kFieldsPerItem = 5;

} // namespace detail

// ---------------------------------------------------------------------------

inline std::vector<std::string> default_descriptions(std::size_t n)
{
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t r = 1; r <= n; ++r) {
        out.push_back("Item " + std::to_string(r));
    }
    return out;
}

inline std::vector<Dimension> default_dimensions(std::size_t n, std::size_t p)
{
    Dimension d;
    d.name = "D1";
    d.begin = 1;
    d.end = static_cast<int>(n);
    d.expert_weights.assign(p, 1.0 / static_cast<double>(p));
    return {d};
}

inline std::vector<std::string> parse_descriptions(std::string_view text, Diagnostics& diags)
{
    const auto doc = csv::parse(text);
    if (!doc.error.empty()) {
        diags.push_back({SheetKind::Description, doc.error_line, 0, doc.error});
    }
    std::vector<std::string> out;
    std::size_t first = 0;
    if (!doc.records.empty()) {
        const auto& head = doc.records.front().fields;
        if (!detail::parse_int(head.front()) && detail::header_words(head.front())) {
            first = 1;
        }
    }
    for (std::size_t k = first; k < doc.records.size(); ++k) {
        const auto& rec = doc.records[k];
        const int expected = static_cast<int>(out.size()) + 1;
        if (rec.fields.size() == 1) {
            out.push_back(rec.fields.front());
            continue;
        }
        const auto ordinal = detail::parse_ordinal(rec.fields.front());
        if (!ordinal) {
            diags.push_back({SheetKind::Description, rec.line, 1,
                             "expected item ordinal, got '" + rec.fields.front() + "'"});
        } else if (*ordinal != expected) {
            diags.push_back({SheetKind::Description, rec.line, 1,
                             "item ordinal " + std::to_string(*ordinal) + " out of sequence, expected "
                                 + std::to_string(expected)});
        }
        // Unquoted commas inside the text split it; stitch it back together.
        std::string description = rec.fields[1];
        for (std::size_t f = 2; f < rec.fields.size(); ++f) {
            description += "," + rec.fields[f];
        }
        out.push_back(std::move(description));
    }
    if (out.empty() && doc.error.empty()) {
        diags.push_back({SheetKind::Description, 0, 0, "no data rows"});
    }
    return out;
}

inline std::vector<std::string> parse_descriptions(std::string_view text)
{
    Diagnostics diags;
    auto out = parse_descriptions(text, diags);
    if (!diags.empty()) {
        throw ValidationError(std::move(diags));
    }
    return out;
}

/// `judges` fixes the expected weight column count; when absent it is taken from the first data row.
inline std::vector<Dimension> parse_dimensions(std::string_view text, std::optional<std::size_t> judges,
                                               Diagnostics& diags)
{
    const auto doc = csv::parse(text);
    if (!doc.error.empty()) {
        diags.push_back({SheetKind::Dimensions, doc.error_line, 0, doc.error});
    }
    std::vector<Dimension> out;
    std::size_t first = 0;
    if (!doc.records.empty()) {
        const auto& head = doc.records.front().fields;
        if (head.size() < 2 || !detail::parse_ordinal(head[1])) {
            first = 1;
        }
    }
    int previous_end = 0;
    for (std::size_t k = first; k < doc.records.size(); ++k) {
        const auto& rec = doc.records[k];
        const auto& f = rec.fields;
        if (!judges && f.size() >= 4) {
            judges = f.size() - 3;
        }
        const std::size_t p = judges.value_or(0);
        if (f.size() < 4 || f.size() != 3 + p) {
            diags.push_back({SheetKind::Dimensions, rec.line, 0,
                             "expected " + std::to_string(3 + p) + " columns (name, begin, end, " + std::to_string(p)
                                 + " judge weights), got " + std::to_string(f.size())});
            continue;
        }
        Dimension d;
        d.name = std::string(detail::trim(f[0]));
        const auto begin = detail::parse_ordinal(f[1]);
        const auto end = detail::parse_ordinal(f[2]);
        if (!begin) {
            diags.push_back({SheetKind::Dimensions, rec.line, 2, "begin '" + f[1] + "' is not an item ordinal"});
        }
        if (!end) {
            diags.push_back({SheetKind::Dimensions, rec.line, 3, "end '" + f[2] + "' is not an item ordinal"});
        }
        if (begin && end) {
            d.begin = *begin;
            d.end = *end;
            if (d.begin > d.end) {
                diags.push_back({SheetKind::Dimensions, rec.line, 2,
                                 "dimension " + d.name + " begins at " + std::to_string(d.begin) + " after its end "
                                     + std::to_string(d.end)});
            }
            if (d.begin != previous_end + 1) {
                const char* what = d.begin > previous_end + 1 ? "gap" : "overlap";
                diags.push_back({SheetKind::Dimensions, rec.line, 2,
                                 std::string(what) + ": dimension " + d.name + " begins at " + std::to_string(d.begin)
                                     + " but the previous range ends at " + std::to_string(previous_end)});
            }
            previous_end = std::max(previous_end, d.end);
        }
        bool weights_ok = true;
        double sum = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            const auto w = detail::parse_real(f[3 + i]);
            if (!w.value) {
                diags.push_back({SheetKind::Dimensions, rec.line, static_cast<int>(4 + i), w.error});
                weights_ok = false;
                continue;
            }
            if (*w.value < 0.0) {
                diags.push_back({SheetKind::Dimensions, rec.line, static_cast<int>(4 + i),
                                 "negative weight " + detail::format_real(*w.value)});
                weights_ok = false;
            }
            d.expert_weights.push_back(*w.value);
            sum += *w.value;
        }
        if (weights_ok) {
            if (sum < 0.98 || sum > 1.02) {
                diags.push_back({SheetKind::Dimensions, rec.line, 4,
                                 "weights of dimension " + d.name + " sum to " + detail::format_real(sum)
                                     + ", outside [0.98, 1.02]"});
            } else if (std::abs(sum - 1.0) > 1e-12) {
                for (auto& w : d.expert_weights) {
                    w /= sum;
                }
            }
        }
        out.push_back(std::move(d));
    }
    if (out.empty() && doc.error.empty() && diags.empty()) {
        diags.push_back({SheetKind::Dimensions, 0, 0, "no data rows"});
    }
    return out;
}

inline std::vector<Dimension> parse_dimensions(std::string_view text, std::optional<std::size_t> judges = std::nullopt)
{
    Diagnostics diags;
    auto out = parse_dimensions(text, judges, diags);
    if (!diags.empty()) {
        throw ValidationError(std::move(diags));
    }
    return out;
}

struct ParsedResponses {
    std::vector<Judge> judges;
    /// grid[judge][item - 1]
    std::vector<std::vector<Assessment>> grid;
    std::size_t item_count = 0;
};

inline ParsedResponses parse_responses(std::string_view text, Diagnostics& diags,
                                       const ExtendedHierarchy& hierarchy = ExtendedHierarchy::standard())
{
    const auto doc = csv::parse(text);
    if (!doc.error.empty()) {
        diags.push_back({SheetKind::Responses, doc.error_line, 0, doc.error});
    }
    ParsedResponses out;
    std::size_t first = 0;
    if (!doc.records.empty()) {
        const auto& head = doc.records.front().fields;
        if (head.size() < 2 || !detail::parse_int(head[1])) {
            first = 1;
        }
    }
    if (first >= doc.records.size()) {
        if (doc.error.empty()) {
            diags.push_back({SheetKind::Responses, 0, 0, "no data rows"});
        }
        return out;
    }

    const std::size_t columns = doc.records[first].fields.size();
    if (columns < 2 + detail::kFieldsPerItem || (columns - 2) % detail::kFieldsPerItem != 0) {
        diags.push_back({SheetKind::Responses, doc.records[first].line, 0,
                         "expected 2 + 5*n columns (judge, level, then C1..C4,R per item), got "
                             + std::to_string(columns)});
        return out;
    }
    out.item_count = (columns - 2) / detail::kFieldsPerItem;

    std::set<std::string> seen;
    for (std::size_t k = first; k < doc.records.size(); ++k) {
        const auto& rec = doc.records[k];
        const auto& f = rec.fields;
        if (f.size() != columns) {
            diags.push_back({SheetKind::Responses, rec.line, 0,
                             "row has " + std::to_string(f.size()) + " columns, expected " + std::to_string(columns)});
            continue;
        }
        Judge judge;
        judge.id = std::string(detail::trim(f[0]));
        if (judge.id.empty()) {
            diags.push_back({SheetKind::Responses, rec.line, 1, "empty judge id"});
        } else if (!seen.insert(judge.id).second) {
            diags.push_back({SheetKind::Responses, rec.line, 1, "duplicate judge id '" + judge.id + "'"});
        }
        const auto level = detail::parse_int(f[1]);
        bool level_ok = level.has_value() && hierarchy.contains(*level);
        if (!level_ok) {
            diags.push_back({SheetKind::Responses, rec.line, 2, "level '" + f[1] + "' is not one of the scales 3, 5, 7"});
        } else {
            judge.scale_granularity = *level;
        }

        std::vector<Assessment> row(out.item_count);
        for (std::size_t r = 0; r < out.item_count; ++r) {
            const std::size_t base = 2 + r * detail::kFieldsPerItem;
            for (std::size_t j = 0; j < kCriteriaCount; ++j) {
                const int col = static_cast<int>(base + j + 1);
                const auto label = detail::parse_label(f[base + j]);
                if (!label) {
                    diags.push_back({SheetKind::Responses, rec.line, col,
                                     "item " + std::to_string(r + 1) + ": '" + f[base + j] + "' is not a label index"});
                    continue;
                }
                if (level_ok && (*label < 0 || *label >= *level)) {
                    diags.push_back({SheetKind::Responses, rec.line, col,
                                     "label " + std::to_string(*label) + " out of range for granularity "
                                         + std::to_string(*level)});
                }
                row[r].criteria_labels[j] = *label;
            }
            const int rcol = static_cast<int>(base + kCriteriaCount + 1);
            const auto rel = detail::parse_real(f[base + kCriteriaCount]);
            if (!rel.value) {
                diags.push_back({SheetKind::Responses, rec.line, rcol, "item " + std::to_string(r + 1) + ": " + rel.error});
            } else if (*rel.value < 0.0 || *rel.value > 1.0) {
                diags.push_back({SheetKind::Responses, rec.line, rcol,
                                 "item " + std::to_string(r + 1) + ": relevance " + detail::format_real(*rel.value)
                                     + " outside [0, 1]"});
            } else {
                row[r].relevance = *rel.value;
            }
        }
        out.judges.push_back(std::move(judge));
        out.grid.push_back(std::move(row));
    }
    return out;
}

inline ParsedResponses parse_responses(std::string_view text)
{
    Diagnostics diags;
    auto out = parse_responses(text, diags);
    if (!diags.empty()) {
        throw ValidationError(std::move(diags));
    }
    return out;
}

/// Raw sheet contents for one round; absent optional sheets take their documented defaults.
struct RoundSheets {
    std::optional<std::string> descriptions;
    std::optional<std::string> dimensions;
    std::string responses;
};

inline RoundInput assemble_round(int round_no, const RoundSheets& sheets, double epsilon)
{
    Diagnostics diags;
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        diags.push_back({SheetKind::Round, 0, 0, "epsilon " + detail::format_real(epsilon) + " outside [0, 1]"});
    }
    if (round_no < 0) {
        diags.push_back({SheetKind::Round, 0, 0, "round number must be >= 0"});
    }

    auto responses = parse_responses(sheets.responses, diags);
    const std::size_t n = responses.item_count;
    const std::size_t p = responses.judges.size();
    const bool have_panel = n > 0 && p > 0;

    std::vector<std::string> descriptions;
    if (sheets.descriptions) {
        descriptions = parse_descriptions(*sheets.descriptions, diags);
        if (have_panel && !descriptions.empty() && descriptions.size() != n) {
            diags.push_back({SheetKind::Description, 0, 0,
                             "description sheet lists " + std::to_string(descriptions.size())
                                 + " items but the responses sheet has " + std::to_string(n)});
        }
    } else {
        descriptions = default_descriptions(n);
    }

    std::vector<Dimension> dimensions;
    if (sheets.dimensions) {
        dimensions = parse_dimensions(*sheets.dimensions, have_panel ? std::optional<std::size_t>(p) : std::nullopt,
                                      diags);
        if (have_panel && !dimensions.empty()) {
            const int last = dimensions.back().end;
            if (static_cast<std::size_t>(last) != n) {
                diags.push_back({SheetKind::Dimensions, 0, 0,
                                 "dimensions cover items 1.." + std::to_string(last) + " but the responses sheet has "
                                     + std::to_string(n) + " items"});
            }
        }
    } else {
        dimensions = default_dimensions(n, p);
    }

    if (!diags.empty()) {
        throw ValidationError(std::move(diags));
    }

    RoundInput round;
    round.epsilon = epsilon;
    round.questionnaire.round_number = round_no;
    for (std::size_t r = 0; r < n; ++r) {
        round.questionnaire.items.push_back({static_cast<int>(r + 1), descriptions[r]});
    }
    round.questionnaire.dimensions = std::move(dimensions);
    round.judges = std::move(responses.judges);
    round.assessments = std::move(responses.grid);
    return round;
}

/// Inverse of assemble_round: the three sheets, with headers.
inline RoundSheets serialize_round(const RoundInput& round)
{
    RoundSheets s;
    std::string text = csv::format_row({"Item", "Description"});
    for (const auto& item : round.questionnaire.items) {
        text += csv::format_row({std::to_string(item.ordinal), item.description});
    }
    s.descriptions = std::move(text);

    std::vector<std::string> header = {"Dimension", "Begin", "End"};
    for (const auto& j : round.judges) {
        header.push_back(j.id);
    }
    text = csv::format_row(header);
    for (const auto& d : round.questionnaire.dimensions) {
        std::vector<std::string> row = {d.name, std::to_string(d.begin), std::to_string(d.end)};
        for (double w : d.expert_weights) {
            row.push_back(detail::format_real(w));
        }
        text += csv::format_row(row);
    }
    s.dimensions = std::move(text);

    header = {"Judge", "Level"};
    for (std::size_t r = 1; r <= round.questionnaire.item_count(); ++r) {
        const std::string prefix = "I" + std::to_string(r);
        for (std::size_t j = 1; j <= kCriteriaCount; ++j) {
            header.push_back(prefix + "C" + std::to_string(j));
        }
        header.push_back(prefix + "R");
    }
    text = csv::format_row(header);
    for (std::size_t i = 0; i < round.judges.size(); ++i) {
        std::vector<std::string> row = {round.judges[i].id, std::to_string(round.judges[i].scale_granularity)};
        for (const auto& a : round.assessments[i]) {
            for (int label : a.criteria_labels) {
                row.push_back(std::to_string(label));
            }
            row.push_back(detail::format_real(a.relevance));
        }
        text += csv::format_row(row);
    }
    s.responses = std::move(text);
    return s;
}

} // namespace tfdelphi
