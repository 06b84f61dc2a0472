// Domain model of one questionnaire round.

#pragma once

#include "tfdelphi/errors.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace tfdelphi {

/// Fixed rubric: clarity, writing, presence, answering scale.
inline constexpr std::size_t kCriteriaCount = 4;

inline constexpr std::array<const char*, kCriteriaCount> kCriterionKeys = {"clarity", "writing", "presence",
                                                                           "answering_scale"};

struct Item {
    int ordinal = 0;
    std::string description;

    friend bool operator==(const Item&, const Item&) = default;
};

/// Contiguous block of items [begin, end] with one expertise weight per judge.
struct Dimension {
    std::string name;
    int begin = 1;
    int end = 1;
    std::vector<double> expert_weights;

    [[nodiscard]] bool contains(int ordinal) const noexcept { return ordinal >= begin && ordinal <= end; }

    friend bool operator==(const Dimension&, const Dimension&) = default;
};

struct Questionnaire {
    int round_number = 0;
    std::vector<Item> items;
    std::vector<Dimension> dimensions;

    [[nodiscard]] std::size_t item_count() const noexcept { return items.size(); }

    /// Index into `dimensions` of the block containing `ordinal`.
    [[nodiscard]] std::size_t dimension_index_of(int ordinal) const
    {
        if (ordinal < 1 || static_cast<std::size_t>(ordinal) > items.size()) {
            throw DomainError("item ordinal " + std::to_string(ordinal) + " outside [1, "
                              + std::to_string(items.size()) + "]");
        }
        for (std::size_t d = 0; d < dimensions.size(); ++d) {
            if (dimensions[d].contains(ordinal)) {
                return d;
            }
        }
        throw DomainError("item ordinal " + std::to_string(ordinal) + " is not covered by any dimension");
    }

    [[nodiscard]] const Dimension& dimension_of(int ordinal) const { return dimensions[dimension_index_of(ordinal)]; }

    friend bool operator==(const Questionnaire&, const Questionnaire&) = default;
};

/// One judge's opinion on one item, labels on the judge's own scale.
struct Assessment {
    std::array<int, kCriteriaCount> criteria_labels{};
    double relevance = 1.0;

    friend bool operator==(const Assessment&, const Assessment&) = default;
};

struct Judge {
    std::string id;
    int scale_granularity = 7;

    friend bool operator==(const Judge&, const Judge&) = default;
};

struct RoundInput {
    Questionnaire questionnaire;
    std::vector<Judge> judges;
    /// assessments[judge][item - 1]
    std::vector<std::vector<Assessment>> assessments;
    double epsilon = 0.75;

    [[nodiscard]] std::size_t judge_count() const noexcept { return judges.size(); }

    friend bool operator==(const RoundInput&, const RoundInput&) = default;
};

} // namespace tfdelphi
