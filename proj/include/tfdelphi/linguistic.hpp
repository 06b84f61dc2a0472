// Linguistic 2-tuple arithmetic over multigranular term sets.
//
// A value is a pair (s_i, alpha) bound to a term set of a given granularity;
// beta = i + alpha is its numeric equivalent in [0, granularity - 1]. Term sets
// of different granularities are unified through an extended hierarchy whose
// top level has delta = LCM of the level deltas, so every label of every level
// lands on an integer position of the unified level.
//
// Label semantics (triangular membership functions) are not materialised; all
// computation happens on indices and beta values.

#pragma once

#include "tfdelphi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace tfdelphi {

/// An ordered set of `granularity` labels s_0 .. s_{granularity-1}.
class TermSet {
public:
    constexpr TermSet() = default;

    explicit TermSet(int granularity) : granularity_(granularity)
    {
        if (granularity < 2) {
            throw DomainError("term set granularity must be >= 2, got " + std::to_string(granularity));
        }
    }

    [[nodiscard]] constexpr int granularity() const noexcept { return granularity_; }
    /// Largest label index.
    [[nodiscard]] constexpr int delta() const noexcept { return granularity_ - 1; }

    friend constexpr bool operator==(TermSet, TermSet) = default;

private:
    int granularity_ = 2;
};

/// Symbolic translation interval is [-0.5, 0.5).
class TwoTuple {
public:
    TwoTuple() = default;

    TwoTuple(int index, double alpha, TermSet set) : index_(index), alpha_(alpha), granularity_(set.granularity())
    {
        if (index < 0 || index > set.delta()) {
            throw DomainError("label index " + std::to_string(index) + " out of range for granularity "
                              + std::to_string(set.granularity()));
        }
        if (!(alpha >= -0.5 && alpha < 0.5)) {
            std::ostringstream os;
            os << "symbolic translation " << alpha << " outside [-0.5, 0.5)";
            throw DomainError(os.str());
        }
        const double beta = index + alpha;
        if (beta < 0.0 || beta > set.delta()) {
            std::ostringstream os;
            os << "2-tuple (s_" << index << ", " << alpha << ") leaves [0, " << set.delta() << "]";
            throw DomainError(os.str());
        }
    }

    [[nodiscard]] int index() const noexcept { return index_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] int granularity() const noexcept { return granularity_; }
    [[nodiscard]] TermSet term_set() const { return TermSet(granularity_); }
    /// Numeric equivalent index + alpha.
    [[nodiscard]] double beta() const noexcept { return index_ + alpha_; }

    friend bool operator==(const TwoTuple&, const TwoTuple&) = default;

private:
    int index_ = 0;
    double alpha_ = 0.0;
    int granularity_ = 2;
};

inline std::string to_string(const TwoTuple& t)
{
    std::ostringstream os;
    os << "(s_" << t.index() << "^" << t.granularity() << ", " << t.alpha() << ")";
    return os.str();
}

inline constexpr double kBetaSlack = 1e-9;

/// Delta: the 2-tuple closest to `beta`. Half-way values round up, so
/// beta = i + 0.5 maps to (s_{i+1}, -0.5).
inline TwoTuple delta_of(double beta, TermSet set)
{
    if (!std::isfinite(beta) || beta < -kBetaSlack || beta > set.delta() + kBetaSlack) {
        std::ostringstream os;
        os << "beta " << beta << " outside [0, " << set.delta() << "]";
        throw DomainError(os.str());
    }
    beta = std::clamp(beta, 0.0, static_cast<double>(set.delta()));
    auto index = static_cast<int>(std::floor(beta + 0.5));
    // beta + 0.5 may itself round; fix up so alpha stays in [-0.5, 0.5).
    if (beta - index < -0.5) {
        --index;
    } else if (beta - index >= 0.5) {
        ++index;
    }
    index = std::min(index, set.delta());
    return TwoTuple(index, beta - index, set);
}

/// Delta inverse.
inline double delta_inv(const TwoTuple& t) noexcept { return t.beta(); }

/// Plain label as a 2-tuple with zero translation.
inline TwoTuple from_label(int index, TermSet set) { return TwoTuple(index, 0.0, set); }

/// Moves a 2-tuple between granularities by rescaling beta: TF(t) = Delta(beta * to.delta / from.delta).
inline TwoTuple transform(const TwoTuple& t, TermSet from, TermSet to)
{
    if (t.granularity() != from.granularity()) {
        throw ContractError("transform: value has granularity " + std::to_string(t.granularity())
                            + " but source term set has " + std::to_string(from.granularity()));
    }
    return delta_of(t.beta() * to.delta() / from.delta(), to);
}

/// Arithmetic weighted extended mean. Weights are normalised internally.
inline TwoTuple weighted_extended_mean(std::span<const TwoTuple> values, std::span<const double> weights)
{
    if (values.empty()) {
        throw DomainError("weighted_extended_mean: empty input");
    }
    if (values.size() != weights.size()) {
        throw ContractError("weighted_extended_mean: " + std::to_string(values.size()) + " values but "
                            + std::to_string(weights.size()) + " weights");
    }
    const int granularity = values.front().granularity();
    double lo = values.front().beta();
    double hi = lo;
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].granularity() != granularity) {
            throw ContractError("weighted_extended_mean: mixed granularities");
        }
        if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
            throw DomainError("weighted_extended_mean: weight " + std::to_string(i) + " is negative or not finite");
        }
        lo = std::min(lo, values[i].beta());
        hi = std::max(hi, values[i].beta());
        total += weights[i];
    }
    if (!(total > 0.0)) {
        throw DomainError("weighted_extended_mean: all weights are zero");
    }
    // Offsetting from the minimum keeps equal inputs exact.
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        acc += (values[i].beta() - lo) * weights[i];
    }
    const double beta = std::clamp(lo + acc / total, lo, hi);
    return delta_of(beta, TermSet(granularity));
}

inline TwoTuple weighted_extended_mean(std::initializer_list<TwoTuple> values, std::initializer_list<double> weights)
{
    return weighted_extended_mean(std::span<const TwoTuple>(values.begin(), values.size()),
                                  std::span<const double>(weights.begin(), weights.size()));
}

/// Uniform-weight extended mean.
inline TwoTuple extended_mean(std::span<const TwoTuple> values)
{
    const std::vector<double> uniform(values.size(), 1.0);
    return weighted_extended_mean(values, uniform);
}

/// Level whose delta is the LCM of all level deltas.
inline TermSet unified_level(std::span<const int> granularities)
{
    if (granularities.empty()) {
        throw DomainError("unified_level: no granularities");
    }
    std::int64_t delta = 1;
    for (int g : granularities) {
        if (g < 2) {
            throw DomainError("unified_level: granularity " + std::to_string(g) + " < 2");
        }
        delta = std::lcm(delta, static_cast<std::int64_t>(g - 1));
        if (delta > 1'000'000) {
            throw DomainError("unified_level: unified granularity too large");
        }
    }
    return TermSet(static_cast<int>(delta + 1));
}

inline TermSet unified_level(std::initializer_list<int> granularities)
{
    return unified_level(std::span<const int>(granularities.begin(), granularities.size()));
}

/// A family of term sets plus their unification level. The reporting level is
/// the finest user level (S7 for the default {3,5,7} family).
class ExtendedHierarchy {
public:
    explicit ExtendedHierarchy(std::vector<int> granularities)
    {
        if (granularities.empty()) {
            throw DomainError("extended hierarchy needs at least one level");
        }
        std::sort(granularities.begin(), granularities.end());
        granularities.erase(std::unique(granularities.begin(), granularities.end()), granularities.end());
        for (int g : granularities) {
            levels_.emplace_back(g);
        }
        unified_ = unified_level(granularities);
    }

    static const ExtendedHierarchy& standard()
    {
        static const ExtendedHierarchy h({3, 5, 7});
        return h;
    }

    [[nodiscard]] const std::vector<TermSet>& levels() const noexcept { return levels_; }
    [[nodiscard]] TermSet unified() const noexcept { return unified_; }
    [[nodiscard]] TermSet reporting() const noexcept { return levels_.back(); }

    [[nodiscard]] bool contains(int granularity) const noexcept
    {
        return std::any_of(levels_.begin(), levels_.end(),
                           [granularity](TermSet t) { return t.granularity() == granularity; });
    }

    /// Position of label `index` of `level` inside the unified level (a former modal point).
    [[nodiscard]] int modal_point(int index, TermSet level) const
    {
        if (!contains(level.granularity())) {
            throw ContractError("granularity " + std::to_string(level.granularity()) + " is not a hierarchy level");
        }
        if (index < 0 || index > level.delta()) {
            throw DomainError("label index " + std::to_string(index) + " out of range for granularity "
                              + std::to_string(level.granularity()));
        }
        return index * (unified_.delta() / level.delta());
    }

    [[nodiscard]] TwoTuple to_unified(const TwoTuple& t) const { return transform(t, t.term_set(), unified_); }
    [[nodiscard]] TwoTuple to_reporting(const TwoTuple& t) const { return transform(t, t.term_set(), reporting()); }

private:
    std::vector<TermSet> levels_;
    TermSet unified_;
};

} // namespace tfdelphi
