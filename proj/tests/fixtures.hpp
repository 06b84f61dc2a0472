#pragma once

#include "published.hpp"
#include "tfdelphi/engine.hpp"
#include "tfdelphi/ingestion.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fixtures {

inline std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::string sample_path(int round, const char* sheet)
{
    return std::string(TFDELPHI_DATA_DIR) + "/Round" + std::to_string(round) + sheet + ".csv";
}

inline tfdelphi::RoundSheets sample_sheets(int round)
{
    tfdelphi::RoundSheets s;
    s.responses = slurp(sample_path(round, "Responses"));
    s.dimensions = slurp(sample_path(round, "Dimensions"));
    s.descriptions = slurp(sample_path(round, "Description"));
    return s;
}

inline const tfdelphi::RoundInput& sample_input(int round)
{
    static const auto r1 = tfdelphi::assemble_round(1, sample_sheets(1), 0.75);
    static const auto r2 = tfdelphi::assemble_round(2, sample_sheets(2), 0.75);
    return round == 1 ? r1 : r2;
}

inline const tfdelphi::RoundResult& sample_result(int round)
{
    static const auto r1 = tfdelphi::evaluate_round(sample_input(1));
    static const auto r2 = tfdelphi::evaluate_round(sample_input(2));
    return round == 1 ? r1 : r2;
}

inline std::vector<double> d4_weights()
{
    const auto& w = published::kDimensions[3].weights;
    return {w.begin(), w.end()};
}

inline std::vector<tfdelphi::JudgeOpinion> item27_panel(int round)
{
    const auto& scales = round == 1 ? published::kItem27Scales1 : published::kItem27Scales2;
    const auto& labels = round == 1 ? published::kItem27Labels1 : published::kItem27Labels2;
    const auto& rel = round == 1 ? published::kItem27Relevance1 : published::kItem27Relevance2;
    std::vector<tfdelphi::JudgeOpinion> panel;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        panel.push_back({scales[i], labels[i], rel[i]});
    }
    return panel;
}

} // namespace fixtures
