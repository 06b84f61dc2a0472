// Walks one item through the per-item pipeline and prints every intermediate
// value: item 27 of the reference case study, first round.

#include "tfdelphi/engine.hpp"
#include "tfdelphi/report.hpp"

#include <cstdio>
#include <vector>

int main()
{
    using namespace tfdelphi;

    const std::vector<int> scales = {3, 3, 3, 7, 7, 7, 7, 7, 5};
    const std::vector<std::vector<int>> labels = {{2, 0, 2, 1}, {2, 2, 2, 2}, {2, 1, 2, 2}, {5, 6, 6, 6}, {4, 3, 4, 2},
                                                  {6, 6, 6, 6}, {6, 3, 6, 4}, {4, 4, 3, 3}, {4, 1, 4, 0}};
    const std::vector<double> relevance = {1.0, 1.0, 1.0, 1.0, 0.9, 1.0, 1.0, 1.0, 0.99};
    // Expertise weights of the dimension holding item 27.
    const std::vector<double> weights = {0.121, 0.096, 0.089, 0.127, 0.115, 0.127, 0.115, 0.102, 0.108};

    std::vector<JudgeOpinion> panel;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        panel.push_back({scales[i], labels[i], relevance[i]});
    }
    const auto r = evaluate_item(27, panel, weights, 0.75);

    std::printf("unified assessments (S13 beta)\n");
    for (std::size_t i = 0; i < r.unified.size(); ++i) {
        std::printf("  J%zu:", i + 1);
        for (const auto& t : r.unified[i]) {
            std::printf(" %4.0f", t.beta());
        }
        std::printf("\n");
    }
    std::printf("Y  =");
    for (const auto& y : r.y) {
        std::printf(" %s", short_tuple(y).c_str());
    }
    std::printf("\nZ  = %s\n", short_tuple(r.z).c_str());
    std::printf("IS = %s %s\n", short_tuple(r.score).c_str(), LabelTable{}.name(r.score.index()).c_str());
    std::printf("W  = %s\n", fixed3(r.relevance).c_str());
    std::printf("rho =");
    for (double d : r.rho) {
        std::printf(" %s", fixed3(d).c_str());
    }
    std::printf("\nCI = %s (%s), RI = %s (%s)\n", fixed3(r.ci).c_str(), r.cs ? "consensus" : "no consensus",
                fixed3(r.ri).c_str(), r.rs ? "reliable" : "not reliable");
    return 0;
}
