// Published reference values of the case study: item 27 raw panels, the
// dimension layout with expertise weights, and the per-item summary table.

#pragma once

#include <array>
#include <vector>

namespace published {

struct DimensionRow {
    const char* name;
    int begin;
    int end;
    std::array<double, 9> weights;
};

inline const std::array<DimensionRow, 7> kDimensions = {{
    {"D1", 1, 8, {0.118, 0.093, 0.087, 0.124, 0.112, 0.124, 0.112, 0.124, 0.106}},
    {"D2", 9, 14, {0.125, 0.094, 0.088, 0.119, 0.113, 0.113, 0.113, 0.125, 0.113}},
    {"D3", 15, 21, {0.101, 0.094, 0.094, 0.126, 0.113, 0.126, 0.113, 0.126, 0.107}},
    {"D4", 22, 28, {0.121, 0.096, 0.089, 0.127, 0.115, 0.127, 0.115, 0.102, 0.108}},
    {"D5", 29, 35, {0.133, 0.100, 0.093, 0.080, 0.120, 0.133, 0.120, 0.107, 0.113}},
    {"D6", 36, 41, {0.123, 0.097, 0.091, 0.130, 0.117, 0.110, 0.117, 0.104, 0.110}},
    {"D7", 42, 45, {0.116, 0.098, 0.091, 0.122, 0.110, 0.110, 0.122, 0.110, 0.122}},
}};

struct Summary {
    int is_index;
    double is_alpha;
    bool cs;
    double ci;
    bool rs;
    double ri;
};

inline const std::array<Summary, 45> kRound1 = {{
    {5, -0.183, true, 0.589, false, 0.50},
    {5, -0.326, true, 0.544, false, 0.50},
    {4, 0.096, true, 0.499, false, 0.25},
    {5, -0.311, true, 0.574, true, 0.75},
    {5, -0.305, true, 0.563, true, 1.00},
    {5, 0.056, true, 0.653, true, 1.00},
    {5, -0.041, true, 0.637, true, 1.00},
    {5, -0.021, true, 0.585, true, 1.00},
    {5, 0.024, true, 0.538, true, 0.75},
    {4, 0.359, false, 0.388, true, 0.75},
    {4, 0.447, false, 0.431, true, 0.75},
    {5, 0.046, true, 0.580, true, 1.00},
    {5, 0.203, true, 0.659, true, 1.00},
    {5, -0.001, true, 0.569, true, 0.75},
    {5, -0.382, true, 0.512, false, 0.50},
    {5, -0.384, false, 0.472, true, 1.00},
    {4, 0.484, true, 0.575, false, 0.25},
    {5, -0.130, true, 0.561, true, 1.00},
    {5, -0.399, true, 0.556, false, 0.50},
    {5, 0.200, true, 0.649, true, 0.75},
    {5, 0.258, true, 0.611, true, 1.00},
    {5, 0.294, true, 0.686, true, 1.00},
    {4, 0.355, false, 0.401, false, 0.00},
    {5, -0.014, true, 0.530, true, 1.00},
    {5, -0.084, true, 0.548, true, 1.00},
    {5, -0.069, true, 0.581, true, 1.00},
    {5, -0.369, false, 0.493, false, 0.50},
    {5, -0.431, false, 0.488, true, 0.75},
    {4, 0.315, false, 0.460, false, 0.00},
    {5, -0.079, true, 0.631, true, 1.00},
    {5, -0.162, true, 0.581, true, 0.75},
    {5, -0.240, true, 0.538, true, 0.75},
    {5, -0.398, false, 0.462, true, 1.00},
    {5, -0.011, true, 0.630, true, 0.75},
    {4, 0.382, true, 0.534, false, 0.50},
    {5, 0.041, true, 0.630, true, 1.00},
    {5, -0.190, true, 0.619, true, 1.00},
    {5, -0.344, true, 0.536, true, 0.75},
    {4, 0.348, true, 0.526, false, 0.25},
    {5, -0.080, true, 0.577, true, 1.00},
    {4, 0.437, true, 0.540, false, 0.25},
    {4, 0.207, false, 0.478, false, 0.00},
    {5, 0.332, true, 0.649, true, 1.00},
    {5, -0.136, true, 0.572, true, 0.75},
    {5, -0.349, false, 0.491, true, 0.75},
}};

inline const std::array<Summary, 45> kRound2 = {{
    {6, -0.370, true, 0.819, true, 1.00},
    {5, 0.478, true, 0.758, true, 1.00},
    {5, 0.438, true, 0.728, true, 1.00},
    {6, -0.361, true, 0.797, true, 1.00},
    {6, -0.199, true, 0.863, true, 1.00},
    {6, -0.272, true, 0.825, true, 1.00},
    {6, -0.161, true, 0.883, true, 1.00},
    {6, -0.219, true, 0.860, true, 1.00},
    {6, -0.180, true, 0.874, true, 1.00},
    {6, -0.324, true, 0.784, true, 1.00},
    {6, -0.446, true, 0.773, true, 1.00},
    {6, -0.180, true, 0.866, true, 1.00},
    {6, -0.355, true, 0.797, true, 1.00},
    {6, -0.208, true, 0.853, true, 1.00},
    {6, -0.385, true, 0.843, true, 1.00},
    {6, -0.497, true, 0.788, true, 1.00},
    {5, 0.403, true, 0.741, true, 1.00},
    {6, -0.082, true, 0.932, true, 1.00},
    {6, -0.389, true, 0.784, true, 1.00},
    {6, -0.244, true, 0.831, true, 1.00},
    {6, -0.132, true, 0.899, true, 1.00},
    {6, -0.115, true, 0.916, true, 1.00},
    {5, 0.468, true, 0.728, true, 1.00},
    {6, -0.328, true, 0.803, true, 1.00},
    {6, -0.266, true, 0.816, true, 1.00},
    {6, -0.286, true, 0.828, true, 1.00},
    {6, -0.107, true, 0.907, true, 1.00},
    {6, -0.306, true, 0.819, true, 1.00},
    {6, -0.231, true, 0.852, true, 1.00},
    {6, -0.269, true, 0.831, true, 1.00},
    {6, -0.269, true, 0.831, true, 1.00},
    {6, -0.208, true, 0.861, true, 1.00},
    {6, -0.209, true, 0.871, true, 1.00},
    {6, -0.307, true, 0.824, true, 1.00},
    {6, -0.292, true, 0.811, true, 1.00},
    {6, -0.210, true, 0.866, true, 1.00},
    {6, -0.119, true, 0.916, true, 1.00},
    {6, -0.304, true, 0.812, true, 1.00},
    {6, -0.328, true, 0.792, true, 1.00},
    {6, -0.123, true, 0.908, true, 1.00},
    {6, -0.296, true, 0.813, true, 1.00},
    {6, -0.273, true, 0.834, true, 1.00},
    {6, -0.096, true, 0.893, true, 1.00},
    {6, -0.266, true, 0.821, true, 1.00},
    {6, -0.258, true, 0.805, true, 1.00},
}};

inline const std::vector<int> kItem27Scales1 = {3, 3, 3, 7, 7, 7, 7, 7, 5};
inline const std::vector<std::vector<int>> kItem27Labels1 = {
    {2, 0, 2, 1}, {2, 2, 2, 2}, {2, 1, 2, 2}, {5, 6, 6, 6}, {4, 3, 4, 2}, {6, 6, 6, 6}, {6, 3, 6, 4}, {4, 4, 3, 3}, {4, 1, 4, 0}};
inline const std::vector<double> kItem27Relevance1 = {1.0, 1.0, 1.0, 1.0, 0.9, 1.0, 1.0, 1.0, 0.99};

inline const std::vector<int> kItem27Scales2 = {7, 7, 7, 7, 7, 7, 7, 7, 7};
inline const std::vector<std::vector<int>> kItem27Labels2 = {
    {6, 6, 6, 6}, {6, 4, 6, 6}, {6, 6, 6, 6}, {6, 6, 6, 6}, {6, 6, 6, 6}, {6, 6, 5, 6}, {6, 6, 6, 6}, {6, 6, 6, 6}, {6, 6, 6, 5}};
inline const std::vector<double> kItem27Relevance2 = {1.0, 1.0, 1.0, 1.0, 0.99, 1.0, 1.0, 1.0, 0.9};

} // namespace published
