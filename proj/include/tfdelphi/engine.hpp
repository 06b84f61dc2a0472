// Per-item decision problem and consensus model of a Delphi round.
//
// For every item the panel's labels are lifted to 2-tuples, unified into the
// top level of the hierarchy, aggregated over judges with the item's
// dimension weights (one collective value per criterion) and over criteria
// with uniform weights (the collective opinion Z), then retranslated to the
// reporting level as the item score. Separation of each judge from the
// collective drives the consensus index; the share of criteria whose
// collective value clears epsilon on the unified scale is the reliance index.

#pragma once

#include "tfdelphi/errors.hpp"
#include "tfdelphi/linguistic.hpp"
#include "tfdelphi/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace tfdelphi {

/// judges x criteria.
using TupleMatrix = std::vector<std::vector<TwoTuple>>;

inline constexpr double kConsensusThreshold = 0.5;
inline constexpr double kWeightSumTolerance = 1e-6;

namespace detail {

inline void require_weights(std::span<const double> weights, std::size_t judges, const char* op)
{
    if (weights.size() != judges) {
        throw ContractError(std::string(op) + ": " + std::to_string(judges) + " judges but "
                            + std::to_string(weights.size()) + " weights");
    }
}

inline std::size_t criteria_of(const TupleMatrix& m, const char* op)
{
    if (m.empty()) {
        throw DomainError(std::string(op) + ": empty panel");
    }
    const std::size_t q = m.front().size();
    if (q == 0) {
        throw DomainError(std::string(op) + ": no criteria");
    }
    for (const auto& row : m) {
        if (row.size() != q) {
            throw ContractError(std::string(op) + ": ragged assessment matrix");
        }
    }
    return q;
}

} // namespace detail

/// First aggregation: per-criterion weighted extended mean over judges.
inline std::vector<TwoTuple> aggregate_item_criteria(const TupleMatrix& unified, std::span<const double> weights)
{
    const std::size_t q = detail::criteria_of(unified, "aggregate_item_criteria");
    detail::require_weights(weights, unified.size(), "aggregate_item_criteria");
    std::vector<TwoTuple> y;
    y.reserve(q);
    std::vector<TwoTuple> column(unified.size());
    for (std::size_t j = 0; j < q; ++j) {
        for (std::size_t i = 0; i < unified.size(); ++i) {
            column[i] = unified[i][j];
        }
        y.push_back(weighted_extended_mean(column, weights));
    }
    return y;
}

/// Panel-weighted mean of the judges' relevance ratings (W^r).
inline double average_relevance(std::span<const double> relevances, std::span<const double> weights)
{
    detail::require_weights(weights, relevances.size(), "average_relevance");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0)) {
        throw DomainError("average_relevance: all weights are zero");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < relevances.size(); ++i) {
        acc += relevances[i] * weights[i];
    }
    return acc / total;
}

/// Second aggregation: uniform mean over criteria.
inline TwoTuple collective_opinion(std::span<const TwoTuple> y) { return extended_mean(y); }

/// Retranslation of the collective opinion to the reporting level.
inline TwoTuple item_score(const TwoTuple& z, const ExtendedHierarchy& hierarchy = ExtendedHierarchy::standard())
{
    if (z.granularity() != hierarchy.unified().granularity()) {
        throw ContractError("item_score: collective opinion is not on the unified level");
    }
    return transform(z, hierarchy.unified(), hierarchy.reporting());
}

/// Euclidean distance, in beta space, between each judge's row and the collective.
inline std::vector<double> separations(const TupleMatrix& unified, std::span<const TwoTuple> y)
{
    const std::size_t q = detail::criteria_of(unified, "separations");
    if (y.size() != q) {
        throw ContractError("separations: " + std::to_string(q) + " criteria but collective has "
                            + std::to_string(y.size()));
    }
    std::vector<double> rho;
    rho.reserve(unified.size());
    for (const auto& row : unified) {
        double ss = 0.0;
        for (std::size_t j = 0; j < q; ++j) {
            const double d = row[j].beta() - y[j].beta();
            ss += d * d;
        }
        rho.push_back(std::sqrt(ss));
    }
    return rho;
}

struct Consensus {
    double index = 1.0;
    bool status = true;
    /// The raw index fell below zero and was clamped.
    bool clamped = false;
};

/// CI = 1 - sum(rho_i * v_i) / delta; weights must already sum to one.
inline Consensus consensus_index(std::span<const double> rho, std::span<const double> weights, int unified_delta)
{
    detail::require_weights(weights, rho.size(), "consensus_index");
    if (unified_delta < 1) {
        throw DomainError("consensus_index: unified delta must be >= 1");
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(total - 1.0) > kWeightSumTolerance) {
        throw ContractError("consensus_index: weights sum to " + std::to_string(total) + ", expected 1");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        acc += rho[i] * weights[i];
    }
    Consensus c;
    c.index = 1.0 - acc / unified_delta;
    if (c.index < 0.0) {
        c.index = 0.0;
        c.clamped = true;
    }
    c.index = std::min(c.index, 1.0);
    c.status = c.index >= kConsensusThreshold;
    return c;
}

struct Reliance {
    double index = 0.0;
    bool status = false;
};

/// Share of criteria whose collective value reaches delta * epsilon.
inline Reliance reliance_index(std::span<const TwoTuple> y, double epsilon, int unified_delta)
{
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw DomainError("reliance_index: epsilon " + std::to_string(epsilon) + " outside [0, 1]");
    }
    if (y.empty()) {
        throw DomainError("reliance_index: no criteria");
    }
    // Compared as beta/delta >= epsilon so the step sits exactly at epsilon = beta/delta.
    std::size_t passing = 0;
    for (const auto& v : y) {
        if (v.beta() / unified_delta >= epsilon - 1e-12) {
            ++passing;
        }
    }
    Reliance r;
    r.index = static_cast<double>(passing) / static_cast<double>(y.size());
    r.status = r.index >= epsilon;
    return r;
}

/// Everything computed for one item; intermediate values are kept for drill-down.
struct ItemResult {
    int item = 0;
    std::size_t dimension = 0;
    TupleMatrix unified;
    std::vector<TwoTuple> y;
    TwoTuple z;
    TwoTuple score;
    double relevance = 0.0;
    std::vector<double> rho;
    double ci = 1.0;
    bool cs = true;
    bool ci_clamped = false;
    double ri = 0.0;
    bool rs = false;

    [[nodiscard]] bool consensual() const noexcept { return cs && rs; }

    friend bool operator==(const ItemResult&, const ItemResult&) = default;
};

/// One judge's labels for one item, on the judge's own scale.
struct JudgeOpinion {
    int granularity = 7;
    std::vector<int> labels;
    double relevance = 1.0;
};

/// Full per-item pipeline from raw labels to indices.
inline ItemResult evaluate_item(int ordinal, std::span<const JudgeOpinion> panel, std::span<const double> dim_weights,
                                double epsilon, const ExtendedHierarchy& hierarchy = ExtendedHierarchy::standard())
{
    if (panel.empty()) {
        throw DomainError("evaluate_item: empty panel");
    }
    detail::require_weights(dim_weights, panel.size(), "evaluate_item");

    ItemResult r;
    r.item = ordinal;
    r.unified.reserve(panel.size());
    std::vector<double> relevances;
    relevances.reserve(panel.size());
    for (const auto& judge : panel) {
        if (!hierarchy.contains(judge.granularity)) {
            throw ContractError("evaluate_item: scale S" + std::to_string(judge.granularity)
                                + " is not part of the hierarchy");
        }
        const TermSet own(judge.granularity);
        std::vector<TwoTuple> row;
        row.reserve(judge.labels.size());
        for (int label : judge.labels) {
            row.push_back(hierarchy.to_unified(from_label(label, own)));
        }
        r.unified.push_back(std::move(row));
        relevances.push_back(judge.relevance);
    }

    const int delta = hierarchy.unified().delta();
    r.y = aggregate_item_criteria(r.unified, dim_weights);
    r.z = collective_opinion(r.y);
    r.score = item_score(r.z, hierarchy);
    r.relevance = average_relevance(relevances, dim_weights);
    r.rho = separations(r.unified, r.y);

    const double total = std::accumulate(dim_weights.begin(), dim_weights.end(), 0.0);
    std::vector<double> normalized(dim_weights.begin(), dim_weights.end());
    for (auto& w : normalized) {
        w /= total;
    }
    const auto c = consensus_index(r.rho, normalized, delta);
    r.ci = c.index;
    r.cs = c.status;
    r.ci_clamped = c.clamped;
    const auto rel = reliance_index(r.y, epsilon, delta);
    r.ri = rel.index;
    r.rs = rel.status;
    return r;
}

struct RoundResult {
    int round = 0;
    double epsilon = 0.75;
    int unified_granularity = 13;
    int reporting_granularity = 7;
    std::vector<ItemResult> items;
    /// Per-criterion questionnaire collectives (CC, CW, CP, CAS) on the reporting level.
    std::vector<TwoTuple> collective;
    /// Questionnaire score.
    TwoTuple qs;
    /// Scalar mean of the item relevances.
    double average_relevance = 0.0;
    /// Every item relevance was zero, so uniform weights were used for the questionnaire collectives.
    bool uniform_item_weights = false;
    bool all_consensual = false;

    [[nodiscard]] const ItemResult& item(int ordinal) const
    {
        if (ordinal < 1 || static_cast<std::size_t>(ordinal) > items.size()) {
            throw DomainError("item ordinal " + std::to_string(ordinal) + " outside [1, "
                              + std::to_string(items.size()) + "]");
        }
        return items[static_cast<std::size_t>(ordinal - 1)];
    }

    friend bool operator==(const RoundResult&, const RoundResult&) = default;
};

namespace detail {

inline void refresh_consensual(RoundResult& r)
{
    r.all_consensual = std::all_of(r.items.begin(), r.items.end(), [](const ItemResult& it) { return it.consensual(); });
}

} // namespace detail

inline RoundResult evaluate_round(const RoundInput& round,
                                  const ExtendedHierarchy& hierarchy = ExtendedHierarchy::standard())
{
    const auto& q = round.questionnaire;
    const std::size_t n = q.item_count();
    const std::size_t p = round.judge_count();
    if (n == 0 || p == 0) {
        throw DomainError("evaluate_round: round has no items or no judges");
    }
    if (round.assessments.size() != p) {
        throw ContractError("evaluate_round: assessment grid has " + std::to_string(round.assessments.size())
                            + " rows for " + std::to_string(p) + " judges");
    }
    for (const auto& row : round.assessments) {
        if (row.size() != n) {
            throw ContractError("evaluate_round: assessment grid row has " + std::to_string(row.size())
                                + " items, expected " + std::to_string(n));
        }
    }

    RoundResult result;
    result.round = q.round_number;
    result.epsilon = round.epsilon;
    result.unified_granularity = hierarchy.unified().granularity();
    result.reporting_granularity = hierarchy.reporting().granularity();
    result.items.reserve(n);

    std::vector<JudgeOpinion> panel(p);
    for (std::size_t r = 0; r < n; ++r) {
        const int ordinal = static_cast<int>(r + 1);
        const std::size_t d = q.dimension_index_of(ordinal);
        for (std::size_t i = 0; i < p; ++i) {
            const auto& a = round.assessments[i][r];
            panel[i].granularity = round.judges[i].scale_granularity;
            panel[i].labels.assign(a.criteria_labels.begin(), a.criteria_labels.end());
            panel[i].relevance = a.relevance;
        }
        auto item = evaluate_item(ordinal, panel, q.dimensions[d].expert_weights, round.epsilon, hierarchy);
        item.dimension = d;
        result.items.push_back(std::move(item));
    }

    // Third aggregation, weighted by item relevance.
    std::vector<double> item_weights;
    item_weights.reserve(n);
    for (const auto& it : result.items) {
        item_weights.push_back(it.relevance);
    }
    result.average_relevance = std::accumulate(item_weights.begin(), item_weights.end(), 0.0) / static_cast<double>(n);
    if (std::all_of(item_weights.begin(), item_weights.end(), [](double w) { return w == 0.0; })) {
        std::fill(item_weights.begin(), item_weights.end(), 1.0);
        result.uniform_item_weights = true;
    }

    const std::size_t criteria = result.items.front().y.size();
    std::vector<TwoTuple> column(n);
    for (std::size_t j = 0; j < criteria; ++j) {
        for (std::size_t r = 0; r < n; ++r) {
            column[r] = result.items[r].y[j];
        }
        result.collective.push_back(
            transform(weighted_extended_mean(column, item_weights), hierarchy.unified(), hierarchy.reporting()));
    }
    for (std::size_t r = 0; r < n; ++r) {
        column[r] = result.items[r].score;
    }
    result.qs = weighted_extended_mean(column, item_weights);
    detail::refresh_consensual(result);
    return result;
}

/// Recomputes reliance under a different epsilon; every other field is epsilon-free.
inline RoundResult what_if_epsilon(const RoundResult& result, double epsilon)
{
    RoundResult out = result;
    out.epsilon = epsilon;
    const int delta = out.unified_granularity - 1;
    for (auto& it : out.items) {
        const auto rel = reliance_index(it.y, epsilon, delta);
        it.ri = rel.index;
        it.rs = rel.status;
    }
    detail::refresh_consensual(out);
    return out;
}

struct TrimResult {
    std::vector<int> visible;
    std::size_t hidden_count = 0;
};

/// Hides items whose score label is below the threshold label; order is preserved.
inline TrimResult trim(const RoundResult& result, const TwoTuple& threshold)
{
    if (threshold.granularity() != result.reporting_granularity) {
        throw ContractError("trim: threshold must be on the reporting scale S"
                            + std::to_string(result.reporting_granularity));
    }
    TrimResult t;
    for (const auto& it : result.items) {
        if (it.score.index() < threshold.index()) {
            ++t.hidden_count;
        } else {
            t.visible.push_back(it.item);
        }
    }
    return t;
}

struct ItemDelta {
    int item = 0;
    TwoTuple score_a;
    TwoTuple score_b;
    double score_delta = 0.0;
    double ci_a = 0.0;
    double ci_b = 0.0;
    double ci_delta = 0.0;
    double ri_a = 0.0;
    double ri_b = 0.0;
    double ri_delta = 0.0;
    bool cs_a = false;
    bool cs_b = false;
    bool rs_a = false;
    bool rs_b = false;

    [[nodiscard]] bool cs_flipped() const noexcept { return cs_a != cs_b; }
    [[nodiscard]] bool rs_flipped() const noexcept { return rs_a != rs_b; }
};

struct CollectiveDelta {
    std::string key;
    TwoTuple a;
    TwoTuple b;
    double delta = 0.0;
};

struct ComparisonReport {
    int round_a = 0;
    int round_b = 0;
    std::vector<ItemDelta> items;
    /// CC, CW, CP, CAS then QS.
    std::vector<CollectiveDelta> collective;
    /// Items whose CS or RS changed.
    std::vector<int> flipped;
    /// Items still failing CS or RS in round b.
    std::vector<int> still_failing;
};

inline ComparisonReport compare_rounds(const RoundResult& a, const RoundResult& b)
{
    if (a.items.size() != b.items.size()) {
        throw ContractError("compare_rounds: rounds have " + std::to_string(a.items.size()) + " and "
                            + std::to_string(b.items.size()) + " items");
    }
    if (a.collective.size() != b.collective.size()) {
        throw ContractError("compare_rounds: rounds use different criteria counts");
    }
    ComparisonReport rep;
    rep.round_a = a.round;
    rep.round_b = b.round;
    for (std::size_t r = 0; r < a.items.size(); ++r) {
        const auto& x = a.items[r];
        const auto& y = b.items[r];
        ItemDelta d;
        d.item = x.item;
        d.score_a = x.score;
        d.score_b = y.score;
        d.score_delta = y.score.beta() - x.score.beta();
        d.ci_a = x.ci;
        d.ci_b = y.ci;
        d.ci_delta = y.ci - x.ci;
        d.ri_a = x.ri;
        d.ri_b = y.ri;
        d.ri_delta = y.ri - x.ri;
        d.cs_a = x.cs;
        d.cs_b = y.cs;
        d.rs_a = x.rs;
        d.rs_b = y.rs;
        if (d.cs_flipped() || d.rs_flipped()) {
            rep.flipped.push_back(d.item);
        }
        if (!y.consensual()) {
            rep.still_failing.push_back(y.item);
        }
        rep.items.push_back(d);
    }
    static constexpr std::array<const char*, 4> kCollectiveKeys = {"CC", "CW", "CP", "CAS"};
    for (std::size_t j = 0; j < a.collective.size(); ++j) {
        const std::string key = j < kCollectiveKeys.size() ? kCollectiveKeys[j] : "C" + std::to_string(j + 1);
        rep.collective.push_back({key, a.collective[j], b.collective[j], b.collective[j].beta() - a.collective[j].beta()});
    }
    rep.collective.push_back({"QS", a.qs, b.qs, b.qs.beta() - a.qs.beta()});
    return rep;
}

enum class StopVerdict { Continue, StopConsensus, StopBudget };

inline const char* to_string(StopVerdict v) noexcept
{
    switch (v) {
    case StopVerdict::Continue:
        return "continue";
    case StopVerdict::StopConsensus:
        return "stop_consensus";
    case StopVerdict::StopBudget:
        return "stop_budget";
    }
    return "continue";
}

/// Consensus on the latest round wins over an exhausted budget.
inline StopVerdict stop_decision(bool latest_all_consensual, std::size_t rounds_completed, int max_iterations)
{
    if (latest_all_consensual) {
        return StopVerdict::StopConsensus;
    }
    if (max_iterations >= 0 && rounds_completed >= static_cast<std::size_t>(max_iterations)) {
        return StopVerdict::StopBudget;
    }
    return StopVerdict::Continue;
}

inline StopVerdict stop_decision(std::span<const RoundResult> results, int max_iterations)
{
    if (results.empty()) {
        throw DomainError("stop_decision: no rounds evaluated");
    }
    return stop_decision(results.back().all_consensual, results.size(), max_iterations);
}

} // namespace tfdelphi
