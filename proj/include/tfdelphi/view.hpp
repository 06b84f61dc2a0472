// Moderator view over a stored round: epsilon what-if, trimming, column
// filter, text search and sorting. Pure functions of (report, query).

#pragma once

#include "tfdelphi/engine.hpp"
#include "tfdelphi/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfdelphi {

/// Bad query parameter; maps to HTTP 400.
class QueryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ViewQuery {
    std::optional<double> epsilon;
    int trim = 0;
    std::string filter = "all";
    std::string search;
    std::string sort_key = "item";
    bool descending = false;
};

inline const std::vector<std::string>& view_filters()
{
    static const std::vector<std::string> f = {"all",      "clarity",   "writing",  "presence",
                                               "answering_scale", "relevance", "consensus"};
    return f;
}

inline const std::vector<std::string>& view_sort_keys()
{
    static const std::vector<std::string> k = {"item", "is",       "ci",       "cs",      "ri",
                                               "rs",   "relevance", "clarity", "writing", "presence",
                                               "answering_scale", "description"};
    return k;
}

namespace detail {

inline std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

inline bool known(const std::vector<std::string>& set, const std::string& v)
{
    return std::find(set.begin(), set.end(), v) != set.end();
}

} // namespace detail

/// Builds a query from raw parameters (absent keys take defaults).
inline ViewQuery parse_view_query(const std::map<std::string, std::string>& params, int reporting_granularity = 7)
{
    ViewQuery q;
    const auto get = [&](const char* key) -> const std::string* {
        const auto it = params.find(key);
        return it == params.end() ? nullptr : &it->second;
    };
    if (const auto* e = get("epsilon"); e != nullptr && !e->empty()) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(e->data(), e->data() + e->size(), v);
        if (ec != std::errc{} || ptr != e->data() + e->size() || !(v >= 0.0 && v <= 1.0)) {
            throw QueryError("epsilon must be a number in [0, 1], got '" + *e + "'");
        }
        q.epsilon = v;
    }
    if (const auto* t = get("trim"); t != nullptr && !t->empty()) {
        int idx = -1;
        const std::string s = detail::lower(*t);
        if (s.size() >= 2 && s.front() == 's') {
            const auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), idx);
            if (ec != std::errc{} || ptr != s.data() + s.size()) {
                idx = -1;
            }
        }
        if (idx < 0 || idx >= reporting_granularity) {
            throw QueryError("trim must be one of s0..s" + std::to_string(reporting_granularity - 1) + ", got '" + *t + "'");
        }
        q.trim = idx;
    }
    if (const auto* f = get("filter"); f != nullptr && !f->empty()) {
        if (!detail::known(view_filters(), *f)) {
            throw QueryError("unknown filter '" + *f + "'");
        }
        q.filter = *f;
    }
    if (const auto* s = get("q"); s != nullptr) {
        q.search = *s;
    }
    if (const auto* s = get("sort"); s != nullptr && !s->empty()) {
        const auto colon = s->find(':');
        q.sort_key = s->substr(0, colon);
        if (colon != std::string::npos) {
            const std::string dir = s->substr(colon + 1);
            if (dir == "desc") {
                q.descending = true;
            } else if (dir != "asc") {
                throw QueryError("unknown sort direction '" + dir + "'");
            }
        }
        if (!detail::known(view_sort_keys(), q.sort_key)) {
            throw QueryError("unknown sort key '" + q.sort_key + "'");
        }
    }
    return q;
}

inline nlohmann::json render_view(const RoundReport& stored, const ViewQuery& q, const LabelTable& labels = {})
{
    using nlohmann::json;
    const RoundResult result = q.epsilon ? what_if_epsilon(stored.result, *q.epsilon) : stored.result;
    const TermSet reporting(result.reporting_granularity);
    const TermSet unified(result.unified_granularity);

    const auto trimmed = trim(result, from_label(q.trim, reporting));
    const std::string needle = detail::lower(q.search);

    struct Entry {
        const ItemResult* item;
        std::string description;
    };
    std::vector<Entry> entries;
    for (int ordinal : trimmed.visible) {
        const auto idx = static_cast<std::size_t>(ordinal - 1);
        std::string description = idx < stored.descriptions.size() ? stored.descriptions[idx] : "";
        if (!needle.empty() && detail::lower(description).find(needle) == std::string::npos) {
            continue;
        }
        entries.push_back({&result.items[idx], std::move(description)});
    }

    const auto criterion = [&](const ItemResult& it, std::size_t j) { return transform(it.y[j], unified, reporting); };
    const auto criterion_index = [](const std::string& key) -> std::size_t {
        for (std::size_t j = 0; j < kCriteriaCount; ++j) {
            if (key == kCriterionKeys[j]) {
                return j;
            }
        }
        return kCriteriaCount;
    };

    // -1/0/1 on the sort key; the item ordinal breaks ties in both directions.
    const auto compare_key = [&](const Entry& a, const Entry& b) -> int {
        const auto cmp = [](auto x, auto y) { return x < y ? -1 : (y < x ? 1 : 0); };
        const auto& x = *a.item;
        const auto& y = *b.item;
        const std::string& k = q.sort_key;
        if (k == "is") return cmp(x.score.beta(), y.score.beta());
        if (k == "ci") return cmp(x.ci, y.ci);
        if (k == "cs") return cmp(x.cs, y.cs);
        if (k == "ri") return cmp(x.ri, y.ri);
        if (k == "rs") return cmp(x.rs, y.rs);
        if (k == "relevance") return cmp(x.relevance, y.relevance);
        if (k == "description") return cmp(detail::lower(a.description), detail::lower(b.description));
        if (const auto j = criterion_index(k); j < kCriteriaCount) return cmp(x.y[j].beta(), y.y[j].beta());
        return 0;
    };
    std::stable_sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
        const int c = compare_key(a, b);
        if (c != 0) {
            return q.descending ? c > 0 : c < 0;
        }
        return a.item->item < b.item->item;
    });

    const bool all = q.filter == "all";
    json rows = json::array();
    for (const auto& e : entries) {
        const auto& it = *e.item;
        json row;
        row["item"] = it.item;
        row["description"] = e.description;
        if (all) {
            row["score"] = detail::tuple_json(it.score, &labels);
        }
        if (all || q.filter == "consensus") {
            row["ci"] = it.ci;
            row["cs"] = it.cs;
            row["ri"] = it.ri;
            row["rs"] = it.rs;
            row["consensual"] = it.consensual();
        }
        if (all || q.filter == "relevance") {
            row["relevance"] = it.relevance;
        }
        for (std::size_t j = 0; j < kCriteriaCount; ++j) {
            if (all || q.filter == kCriterionKeys[j]) {
                row[kCriterionKeys[j]] = detail::tuple_json(criterion(it, j), &labels);
            }
        }
        rows.push_back(std::move(row));
    }

    json out;
    out["round"] = result.round;
    out["epsilon"] = result.epsilon;
    out["trim"] = "s" + std::to_string(q.trim);
    out["filter"] = q.filter;
    out["q"] = q.search;
    out["sort"] = q.sort_key + (q.descending ? ":desc" : ":asc");
    out["total"] = result.items.size();
    out["hidden_count"] = trimmed.hidden_count;
    out["visible_count"] = rows.size();
    out["rows"] = std::move(rows);
    out["collective"] = collective_json(result, labels);
    out["average_relevance"] = result.average_relevance;
    out["all_consensual"] = result.all_consensual;
    return out;
}

} // namespace tfdelphi
