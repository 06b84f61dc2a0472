// tfdelphi: batch moderator interface.
//
//   tfdelphi evaluate (--responses R.csv | --bundle DIR) [--dimensions D.csv] [--descriptions X.csv]
//                     [--round N] [--epsilon E] [--out PATH] [--format json|md|csv]
//   tfdelphi compare  --a A.json --b B.json [--out PATH] [--format json|md]
//   tfdelphi whatif   --report R.json --epsilon-sweep LO:HI:STEP [--out PATH]
//   tfdelphi trim     --report R.json --threshold s5 [--out PATH]
//
// Exit codes: 0 ok, 2 validation or usage, 3 I/O.

#include "tfdelphi/engine.hpp"
#include "tfdelphi/ingestion.hpp"
#include "tfdelphi/report.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) {
        throw IoError("error reading " + path);
    }
    return os.str();
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw IoError("cannot write " + path);
    }
}

int max_iterations()
{
    const char* env = std::getenv("DELPHI_MAX_ITER");
    if (env == nullptr || *env == '\0') {
        return 10;
    }
    const auto v = tfdelphi::detail::parse_int(env);
    if (!v || *v < 1) {
        throw UsageError(std::string("DELPHI_MAX_ITER must be a positive integer, got '") + env + "'");
    }
    return *v;
}

tfdelphi::LabelTable load_labels(const std::string& path)
{
    if (path.empty()) {
        return {};
    }
    const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) {
        throw tfdelphi::SchemaError(path + ": not valid JSON");
    }
    return tfdelphi::LabelTable::from_json(j);
}

tfdelphi::RoundReport load_report(const std::string& path)
{
    const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) {
        throw tfdelphi::SchemaError(path + ": not valid JSON");
    }
    return tfdelphi::report_from_json(j);
}

struct Sweep {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
};

Sweep parse_sweep(const std::string& text)
{
    Sweep s;
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
        throw UsageError("epsilon sweep must be LO:HI:STEP, got '" + text + "'");
    }
    const auto part = [&](std::string_view cell, const char* what) {
        const auto r = tfdelphi::detail::parse_real(cell);
        if (!r.value) {
            throw UsageError(std::string("epsilon sweep ") + what + ": " + r.error);
        }
        return *r.value;
    };
    const std::string_view v(text);
    s.lo = part(v.substr(0, c1), "LO");
    s.hi = part(v.substr(c1 + 1, c2 - c1 - 1), "HI");
    s.step = part(v.substr(c2 + 1), "STEP");
    if (s.lo < 0.0 || s.hi > 1.0 || s.lo > s.hi) {
        throw UsageError("epsilon sweep bounds must satisfy 0 <= LO <= HI <= 1");
    }
    if (!(s.step > 0.0)) {
        throw UsageError("epsilon sweep STEP must be > 0");
    }
    return s;
}

std::string sweep_csv(const tfdelphi::RoundResult& result, const Sweep& s)
{
    std::string out = "epsilon,rs_true,all_consensual\n";
    for (long k = 0;; ++k) {
        // Snap to 1e-12 so 0.05 steps print as 0.65, not 0.6500000000000001.
        double eps = std::round((s.lo + static_cast<double>(k) * s.step) * 1e12) / 1e12;
        if (eps > s.hi + 1e-12) {
            break;
        }
        eps = std::min(eps, s.hi);
        const auto r = tfdelphi::what_if_epsilon(result, eps);
        std::size_t rs_true = 0;
        for (const auto& it : r.items) {
            rs_true += it.rs ? 1 : 0;
        }
        out += tfdelphi::detail::format_real(eps) + "," + std::to_string(rs_true) + ","
               + (r.all_consensual ? "true" : "false") + "\n";
    }
    return out;
}

/// Sheets of round N from a directory holding RoundNResponses.csv and, optionally,
/// RoundNDimensions.csv and RoundNDescription.csv.
tfdelphi::RoundSheets read_bundle(const std::string& dir, int round_no)
{
    const auto sheet = [&](const char* kind) {
        return std::filesystem::path(dir) / ("Round" + std::to_string(round_no) + kind + ".csv");
    };
    tfdelphi::RoundSheets sheets;
    sheets.responses = read_file(sheet("Responses").string());
    if (const auto d = sheet("Dimensions"); std::filesystem::exists(d)) {
        sheets.dimensions = read_file(d.string());
    }
    if (const auto d = sheet("Description"); std::filesystem::exists(d)) {
        sheets.descriptions = read_file(d.string());
    }
    return sheets;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"2-tuple fuzzy linguistic Delphi workbench"};
    app.require_subcommand(1);

    std::string responses, bundle, dimensions, descriptions, out, format = "json", labels_path;
    int round_no = 1;
    double epsilon = 0.75;
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate one round from its CSV sheets");
    auto* responses_opt = evaluate->add_option("--responses", responses, "Responses CSV");
    evaluate->add_option("--bundle", bundle, "Directory with Round<N>{Responses,Dimensions,Description}.csv")
        ->excludes(responses_opt);
    evaluate->add_option("--dimensions", dimensions, "Dimensions CSV");
    evaluate->add_option("--descriptions", descriptions, "Item descriptions CSV");
    evaluate->add_option("--round", round_no, "Round number");
    evaluate->add_option("--epsilon", epsilon, "Reliance threshold in [0, 1]");
    evaluate->add_option("--out", out, "Output path (stdout if omitted)");
    evaluate->add_option("--format", format, "json, md or csv")->check(CLI::IsMember({"json", "md", "csv"}));
    evaluate->add_option("--labels", labels_path, "JSON array of reporting label names");

    std::string report_a, report_b;
    auto* compare = app.add_subcommand("compare", "Compare two round reports");
    compare->add_option("--a", report_a, "Earlier round report JSON")->required();
    compare->add_option("--b", report_b, "Later round report JSON")->required();
    compare->add_option("--out", out, "Output path (stdout if omitted)");
    compare->add_option("--format", format, "json or md")->check(CLI::IsMember({"json", "md"}));
    compare->add_option("--labels", labels_path, "JSON array of reporting label names");

    std::string report, sweep;
    auto* whatif = app.add_subcommand("whatif", "Sweep epsilon over a stored report");
    whatif->add_option("--report", report, "Round report JSON")->required();
    whatif->add_option("--epsilon-sweep", sweep, "LO:HI:STEP")->required();
    whatif->add_option("--out", out, "Output path (stdout if omitted)");

    std::string threshold;
    auto* trim_cmd = app.add_subcommand("trim", "List items at or above a score label");
    trim_cmd->add_option("--report", report, "Round report JSON")->required();
    trim_cmd->add_option("--threshold", threshold, "Label s0..s6")->required();
    trim_cmd->add_option("--out", out, "Output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        const auto labels = load_labels(labels_path);
        if (evaluate->parsed()) {
            if (responses.empty() && bundle.empty()) {
                throw UsageError("evaluate needs --responses or --bundle");
            }
            tfdelphi::RoundSheets sheets;
            if (!bundle.empty()) {
                sheets = read_bundle(bundle, round_no);
            } else {
                sheets.responses = read_file(responses);
            }
            if (!dimensions.empty()) {
                sheets.dimensions = read_file(dimensions);
            }
            if (!descriptions.empty()) {
                sheets.descriptions = read_file(descriptions);
            }
            const auto input = tfdelphi::assemble_round(round_no, sheets, epsilon);
            const auto rep = tfdelphi::make_report(input, tfdelphi::evaluate_round(input), max_iterations());
            if (format == "md") {
                write_output(out, tfdelphi::to_markdown(rep, labels));
            } else if (format == "csv") {
                write_output(out, tfdelphi::to_csv(rep, labels));
            } else {
                write_output(out, tfdelphi::to_json(rep, labels).dump(2) + "\n");
            }
        } else if (compare->parsed()) {
            const auto a = load_report(report_a);
            const auto b = load_report(report_b);
            const auto cmp = tfdelphi::compare_rounds(a.result, b.result);
            write_output(out, format == "md" ? tfdelphi::to_markdown(cmp, labels)
                                             : tfdelphi::to_json(cmp, labels).dump(2) + "\n");
        } else if (whatif->parsed()) {
            const auto s = parse_sweep(sweep);
            write_output(out, sweep_csv(load_report(report).result, s));
        } else if (trim_cmd->parsed()) {
            const auto rep = load_report(report);
            const auto idx = tfdelphi::detail::parse_label(threshold);
            if (!idx || *idx < 0 || *idx >= rep.result.reporting_granularity) {
                throw UsageError("threshold must be s0..s" + std::to_string(rep.result.reporting_granularity - 1));
            }
            const auto t = tfdelphi::trim(rep.result,
                                          tfdelphi::from_label(*idx, tfdelphi::TermSet(rep.result.reporting_granularity)));
            nlohmann::json j = {{"threshold", "s" + std::to_string(*idx)},
                                {"hidden_count", t.hidden_count},
                                {"visible", t.visible}};
            write_output(out, j.dump(2) + "\n");
        }
        return kExitOk;
    } catch (const tfdelphi::ValidationError& e) {
        for (const auto& d : e.diagnostics()) {
            std::cerr << "error: " << tfdelphi::to_string(d) << "\n";
        }
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        // Schema mismatches, contract violations between reports, bad sweeps.
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
