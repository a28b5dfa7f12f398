#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace oddball {

struct MetricsRow {
    std::uint64_t step = 0;
    double mean_error = 0.0;
    double std_error = 0.0;
};

struct WaterfallRow {
    std::uint64_t step = 0;
    std::vector<double> errors;
};

// Time series of per-frame-error summary stats plus full-distribution
// snapshots, both keyed by cumulative SGD step.
struct MetricsLog {
    std::vector<MetricsRow> rows;
    std::vector<WaterfallRow> waterfall;
};

// Population statistics (std divides by N, not N-1): the N training frames
// are the whole population of interest. Summation in fixed index order.
std::pair<double, double> error_stats(const std::vector<double>& novelty);

// "step,mean_error,std_error" header; values in shortest round-trip form.
void export_metrics_csv(const MetricsLog& log, const std::filesystem::path& path);
// "step,e_0,...,e_{N-1}" header, one row per snapshot.
void export_waterfall_csv(const MetricsLog& log, const std::filesystem::path& path);

// Exact inverses of the exporters (each reads the part it wrote).
MetricsLog parse_metrics_csv(const std::filesystem::path& path);
MetricsLog parse_waterfall_csv(const std::filesystem::path& path);

struct ComparisonCharts {
    std::string mean_svg;
    std::string std_svg;
};

// Two self-contained SVG line charts (mean and STD vs cumulative SGD steps)
// with one polyline per method. Both logs must share checkpoint steps.
ComparisonCharts render_comparison_svg(const MetricsLog& traditional, const MetricsLog& oddball);

}  // namespace oddball
