// Report serialization: JSON (canonical, "delphi-report/1"), Markdown and CSV
// summaries, and the display names of the reporting-scale labels.

#pragma once

#include "tfdelphi/csv.hpp"
#include "tfdelphi/engine.hpp"
#include "tfdelphi/errors.hpp"
#include "tfdelphi/linguistic.hpp"
#include "tfdelphi/model.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfdelphi {

inline constexpr const char* kReportSchema = "delphi-report/1";
inline constexpr const char* kComparisonSchema = "delphi-comparison/1";

/// Report JSON that is not ours or is structurally broken.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Display names for the labels of the reporting scale. The engine only ever deals in indices.
class LabelTable {
public:
    LabelTable() : names_{"Dreadful", "Incorrect", "Moderate", "Correct enough", "Correct", "Very correct", "Excellent"}
    {
    }

    explicit LabelTable(std::vector<std::string> names) : names_(std::move(names))
    {
        if (names_.size() < 2) {
            throw DomainError("label table needs at least two names");
        }
    }

    /// Accepts a bare array of names or {"labels": [...]}.
    static LabelTable from_json(const nlohmann::json& j)
    {
        const auto& arr = j.is_object() && j.contains("labels") ? j.at("labels") : j;
        if (!arr.is_array()) {
            throw SchemaError("label table must be an array of strings");
        }
        std::vector<std::string> names;
        for (const auto& v : arr) {
            if (!v.is_string()) {
                throw SchemaError("label table must be an array of strings");
            }
            names.push_back(v.get<std::string>());
        }
        return LabelTable(std::move(names));
    }

    [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }

    [[nodiscard]] std::string name(int index) const
    {
        if (index < 0 || static_cast<std::size_t>(index) >= names_.size()) {
            return "s" + std::to_string(index);
        }
        return names_[static_cast<std::size_t>(index)];
    }

private:
    std::vector<std::string> names_;
};

/// A round result plus the context needed to present it on its own.
struct RoundReport {
    RoundResult result;
    std::vector<std::string> descriptions;
    std::vector<std::string> dimension_names;
    StopVerdict verdict = StopVerdict::Continue;
    int max_iterations = 10;
};

inline RoundReport make_report(const RoundInput& input, RoundResult result, int max_iterations = 10)
{
    RoundReport rep;
    for (const auto& it : input.questionnaire.items) {
        rep.descriptions.push_back(it.description);
    }
    for (const auto& d : input.questionnaire.dimensions) {
        rep.dimension_names.push_back(d.name);
    }
    rep.max_iterations = max_iterations;
    rep.verdict = stop_decision(result.all_consensual, static_cast<std::size_t>(std::max(result.round, 0)),
                                max_iterations);
    rep.result = std::move(result);
    return rep;
}

/// Half-away-from-zero to 3 decimals, never "-0.000".
inline std::string fixed3(double v)
{
    double r = std::round(v * 1000.0) / 1000.0;
    if (r == 0.0) {
        r = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", r);
    return buf;
}

inline std::string short_tuple(const TwoTuple& t) { return "(s" + std::to_string(t.index()) + ", " + fixed3(t.alpha()) + ")"; }

namespace detail {

using nlohmann::json;

inline json tuple_json(const TwoTuple& t, const LabelTable* labels = nullptr)
{
    json j = {{"index", t.index()}, {"alpha", t.alpha()}, {"beta", t.beta()}, {"granularity", t.granularity()}};
    if (labels != nullptr && static_cast<std::size_t>(t.granularity()) == labels->size()) {
        j["name"] = labels->name(t.index());
    }
    return j;
}

inline TwoTuple tuple_from(const json& j)
{
    return TwoTuple(j.at("index").get<int>(), j.at("alpha").get<double>(), TermSet(j.at("granularity").get<int>()));
}

inline const char* collective_key(std::size_t j)
{
    static constexpr std::array<const char*, 4> keys = {"CC", "CW", "CP", "CAS"};
    return j < keys.size() ? keys[j] : "C?";
}

inline StopVerdict verdict_from(const std::string& s)
{
    if (s == "continue") {
        return StopVerdict::Continue;
    }
    if (s == "stop_consensus") {
        return StopVerdict::StopConsensus;
    }
    if (s == "stop_budget") {
        return StopVerdict::StopBudget;
    }
    throw SchemaError("unknown stop verdict '" + s + "'");
}

} // namespace detail

inline nlohmann::json item_json(const ItemResult& it, const RoundReport& rep, const LabelTable& labels)
{
    using nlohmann::json;
    const auto idx = static_cast<std::size_t>(it.item - 1);
    json j;
    j["item"] = it.item;
    j["description"] = idx < rep.descriptions.size() ? rep.descriptions[idx] : "";
    j["dimension"] = it.dimension;
    j["dimension_name"] = it.dimension < rep.dimension_names.size() ? rep.dimension_names[it.dimension] : "";
    j["score"] = detail::tuple_json(it.score, &labels);
    j["z"] = detail::tuple_json(it.z);
    json y = json::array();
    for (const auto& v : it.y) {
        y.push_back(detail::tuple_json(v));
    }
    j["y"] = std::move(y);
    json unified = json::array();
    for (const auto& row : it.unified) {
        json r = json::array();
        for (const auto& v : row) {
            r.push_back(v.beta());
        }
        unified.push_back(std::move(r));
    }
    j["unified"] = std::move(unified);
    j["relevance"] = it.relevance;
    j["rho"] = it.rho;
    j["ci"] = it.ci;
    j["cs"] = it.cs;
    j["ci_clamped"] = it.ci_clamped;
    j["ri"] = it.ri;
    j["rs"] = it.rs;
    j["consensual"] = it.consensual();
    return j;
}

inline nlohmann::json collective_json(const RoundResult& r, const LabelTable& labels)
{
    nlohmann::json c = nlohmann::json::object();
    for (std::size_t j = 0; j < r.collective.size(); ++j) {
        c[detail::collective_key(j)] = detail::tuple_json(r.collective[j], &labels);
    }
    c["QS"] = detail::tuple_json(r.qs, &labels);
    return c;
}

inline nlohmann::json to_json(const RoundReport& rep, const LabelTable& labels = {})
{
    using nlohmann::json;
    const auto& r = rep.result;
    json j;
    j["schema"] = kReportSchema;
    j["round"] = r.round;
    j["epsilon"] = r.epsilon;
    j["unified_granularity"] = r.unified_granularity;
    j["reporting_granularity"] = r.reporting_granularity;
    j["labels"] = labels.names();
    json items = json::array();
    for (const auto& it : r.items) {
        items.push_back(item_json(it, rep, labels));
    }
    j["items"] = std::move(items);
    j["collective"] = collective_json(r, labels);
    j["average_relevance"] = r.average_relevance;
    j["uniform_item_weights"] = r.uniform_item_weights;
    j["all_consensual"] = r.all_consensual;
    j["stop"] = {{"verdict", to_string(rep.verdict)}, {"max_iterations", rep.max_iterations}};
    return j;
}

inline RoundReport report_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("schema")) {
        throw SchemaError("not a round report: missing \"schema\"");
    }
    if (j.at("schema") != kReportSchema) {
        throw SchemaError("unsupported report schema " + j.at("schema").dump() + ", expected \"" + kReportSchema + "\"");
    }
    try {
        RoundReport rep;
        auto& r = rep.result;
        r.round = j.at("round").get<int>();
        r.epsilon = j.at("epsilon").get<double>();
        r.unified_granularity = j.at("unified_granularity").get<int>();
        r.reporting_granularity = j.at("reporting_granularity").get<int>();
        for (const auto& ij : j.at("items")) {
            ItemResult it;
            it.item = ij.at("item").get<int>();
            it.dimension = ij.at("dimension").get<std::size_t>();
            it.score = detail::tuple_from(ij.at("score"));
            it.z = detail::tuple_from(ij.at("z"));
            for (const auto& v : ij.at("y")) {
                it.y.push_back(detail::tuple_from(v));
            }
            const TermSet unified(r.unified_granularity);
            for (const auto& row : ij.at("unified")) {
                std::vector<TwoTuple> tuples;
                for (const auto& b : row) {
                    tuples.push_back(delta_of(b.get<double>(), unified));
                }
                it.unified.push_back(std::move(tuples));
            }
            it.relevance = ij.at("relevance").get<double>();
            it.rho = ij.at("rho").get<std::vector<double>>();
            it.ci = ij.at("ci").get<double>();
            it.cs = ij.at("cs").get<bool>();
            it.ci_clamped = ij.at("ci_clamped").get<bool>();
            it.ri = ij.at("ri").get<double>();
            it.rs = ij.at("rs").get<bool>();
            rep.descriptions.push_back(ij.at("description").get<std::string>());
            r.items.push_back(std::move(it));
        }
        const auto& c = j.at("collective");
        for (std::size_t k = 0; k < kCriteriaCount; ++k) {
            r.collective.push_back(detail::tuple_from(c.at(detail::collective_key(k))));
        }
        r.qs = detail::tuple_from(c.at("QS"));
        r.average_relevance = j.at("average_relevance").get<double>();
        r.uniform_item_weights = j.at("uniform_item_weights").get<bool>();
        r.all_consensual = j.at("all_consensual").get<bool>();
        std::size_t max_dim = 0;
        for (const auto& ij : j.at("items")) {
            const auto d = ij.at("dimension").get<std::size_t>();
            max_dim = std::max(max_dim, d + 1);
        }
        rep.dimension_names.assign(max_dim, "");
        for (const auto& ij : j.at("items")) {
            rep.dimension_names[ij.at("dimension").get<std::size_t>()] = ij.at("dimension_name").get<std::string>();
        }
        rep.verdict = detail::verdict_from(j.at("stop").at("verdict").get<std::string>());
        rep.max_iterations = j.at("stop").at("max_iterations").get<int>();
        return rep;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed report: ") + e.what());
    } catch (const DomainError& e) {
        throw SchemaError(std::string("malformed report: ") + e.what());
    }
}

inline std::string to_markdown(const RoundReport& rep, const LabelTable& labels = {})
{
    const auto& r = rep.result;
    std::string out = "# Round " + std::to_string(r.round) + "\n\n";
    out += "epsilon = " + fixed3(r.epsilon) + ", all consensual: " + (r.all_consensual ? "yes" : "no")
           + ", verdict: " + to_string(rep.verdict) + "\n\n";
    out += "| Item | IS | Label | CS | CI | RS | RI |\n";
    out += "|---:|---|---|---|---:|---|---:|\n";
    for (const auto& it : r.items) {
        out += "| " + std::to_string(it.item) + " | " + short_tuple(it.score) + " | " + labels.name(it.score.index())
               + " | " + (it.cs ? "true" : "false") + " | " + fixed3(it.ci) + " | " + (it.rs ? "true" : "false") + " | "
               + fixed3(it.ri) + " |\n";
    }
    out += "\n| Collective | Value | Label |\n|---|---|---|\n";
    for (std::size_t j = 0; j < r.collective.size(); ++j) {
        out += std::string("| ") + detail::collective_key(j) + " | " + short_tuple(r.collective[j]) + " | "
               + labels.name(r.collective[j].index()) + " |\n";
    }
    out += "| QS | " + short_tuple(r.qs) + " | " + labels.name(r.qs.index()) + " |\n";
    return out;
}

inline std::string to_csv(const RoundReport& rep, const LabelTable& labels = {})
{
    const auto& r = rep.result;
    std::string out = csv::format_row({"item", "description", "is_index", "is_alpha", "is_label", "ci", "cs", "ri", "rs",
                                       "relevance"});
    const auto num = [](double v) { return nlohmann::json(v).dump(); };
    for (const auto& it : r.items) {
        const auto idx = static_cast<std::size_t>(it.item - 1);
        out += csv::format_row({std::to_string(it.item), idx < rep.descriptions.size() ? rep.descriptions[idx] : "",
                                std::to_string(it.score.index()), num(it.score.alpha()), labels.name(it.score.index()),
                                num(it.ci), it.cs ? "true" : "false", num(it.ri), it.rs ? "true" : "false",
                                num(it.relevance)});
    }
    return out;
}

inline nlohmann::json to_json(const ComparisonReport& c, const LabelTable& labels = {})
{
    using nlohmann::json;
    json j;
    j["schema"] = kComparisonSchema;
    j["round_a"] = c.round_a;
    j["round_b"] = c.round_b;
    json items = json::array();
    for (const auto& d : c.items) {
        items.push_back({{"item", d.item},
                         {"score_a", detail::tuple_json(d.score_a, &labels)},
                         {"score_b", detail::tuple_json(d.score_b, &labels)},
                         {"score_delta", d.score_delta},
                         {"ci_a", d.ci_a},
                         {"ci_b", d.ci_b},
                         {"ci_delta", d.ci_delta},
                         {"ri_a", d.ri_a},
                         {"ri_b", d.ri_b},
                         {"ri_delta", d.ri_delta},
                         {"cs_a", d.cs_a},
                         {"cs_b", d.cs_b},
                         {"rs_a", d.rs_a},
                         {"rs_b", d.rs_b},
                         {"cs_flipped", d.cs_flipped()},
                         {"rs_flipped", d.rs_flipped()}});
    }
    j["items"] = std::move(items);
    json coll = json::array();
    for (const auto& d : c.collective) {
        coll.push_back({{"key", d.key},
                        {"a", detail::tuple_json(d.a, &labels)},
                        {"b", detail::tuple_json(d.b, &labels)},
                        {"delta", d.delta}});
    }
    j["collective"] = std::move(coll);
    j["flipped"] = c.flipped;
    j["still_failing"] = c.still_failing;
    return j;
}

inline std::string to_markdown(const ComparisonReport& c, const LabelTable& labels = {})
{
    std::string out = "# Round " + std::to_string(c.round_a) + " vs round " + std::to_string(c.round_b) + "\n\n";
    out += "| Item | IS a | IS b | dIS | CI a | CI b | dCI | RI a | RI b | CS | RS |\n";
    out += "|---:|---|---|---:|---:|---:|---:|---:|---:|---|---|\n";
    const auto flip = [](bool a, bool b) { return std::string(a ? "true" : "false") + (a != b ? " -> " : "") + (a != b ? (b ? "true" : "false") : ""); };
    for (const auto& d : c.items) {
        out += "| " + std::to_string(d.item) + " | " + short_tuple(d.score_a) + " | " + short_tuple(d.score_b) + " | "
               + fixed3(d.score_delta) + " | " + fixed3(d.ci_a) + " | " + fixed3(d.ci_b) + " | " + fixed3(d.ci_delta)
               + " | " + fixed3(d.ri_a) + " | " + fixed3(d.ri_b) + " | " + flip(d.cs_a, d.cs_b) + " | "
               + flip(d.rs_a, d.rs_b) + " |\n";
    }
    out += "\n| Collective | a | b | delta |\n|---|---|---|---:|\n";
    for (const auto& d : c.collective) {
        out += "| " + d.key + " | " + short_tuple(d.a) + " " + labels.name(d.a.index()) + " | " + short_tuple(d.b) + " "
               + labels.name(d.b.index()) + " | " + fixed3(d.delta) + " |\n";
    }
    return out;
}

} // namespace tfdelphi
