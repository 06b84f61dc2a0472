// Reference arithmetic for the tests, written directly from the method's
// formulas on plain doubles. Shares no code with the library.

#pragma once

#include <cmath>
#include <numeric>
#include <vector>

namespace oracle {

constexpr int kUnifiedDelta = 12;
constexpr int kReportingDelta = 6;

/// Label i of a scale with g labels, placed on the 13-label scale.
inline double unify(int label, int g) { return label * static_cast<double>(kUnifiedDelta) / (g - 1); }

struct Tuple {
    int index;
    double alpha;
};

/// Nearest label, halves upwards.
inline Tuple split(double beta)
{
    const int i = static_cast<int>(std::floor(beta + 0.5));
    return {i, beta - i};
}

inline double weighted_mean(const std::vector<double>& v, const std::vector<double>& w)
{
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        num += v[i] * w[i];
        den += w[i];
    }
    return num / den;
}

struct Item {
    std::vector<double> y;
    double z = 0.0;
    double is = 0.0;
    double w = 0.0;
    std::vector<double> rho;
    double ci = 0.0;
    double ri = 0.0;
};

/// labels[judge][criterion] on scales[judge]; weights need not be normalised.
inline Item evaluate(const std::vector<std::vector<int>>& labels, const std::vector<int>& scales,
                     const std::vector<double>& relevance, const std::vector<double>& weights, double epsilon)
{
    const std::size_t p = labels.size();
    const std::size_t q = labels.front().size();
    std::vector<std::vector<double>> x(p, std::vector<double>(q));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            x[i][j] = unify(labels[i][j], scales[i]);
        }
    }
    Item out;
    for (std::size_t j = 0; j < q; ++j) {
        std::vector<double> col(p);
        for (std::size_t i = 0; i < p; ++i) {
            col[i] = x[i][j];
        }
        out.y.push_back(weighted_mean(col, weights));
    }
    out.z = std::accumulate(out.y.begin(), out.y.end(), 0.0) / static_cast<double>(q);
    out.is = out.z * kReportingDelta / kUnifiedDelta;
    out.w = weighted_mean(relevance, weights);
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double spread = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        double ss = 0.0;
        for (std::size_t j = 0; j < q; ++j) {
            ss += (x[i][j] - out.y[j]) * (x[i][j] - out.y[j]);
        }
        out.rho.push_back(std::sqrt(ss));
        spread += out.rho.back() * weights[i] / total;
    }
    out.ci = std::max(0.0, 1.0 - spread / kUnifiedDelta);
    int passing = 0;
    for (double v : out.y) {
        if (v >= kUnifiedDelta * epsilon - 1e-9) {
            ++passing;
        }
    }
    out.ri = static_cast<double>(passing) / static_cast<double>(q);
    return out;
}

} // namespace oracle
