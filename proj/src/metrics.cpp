#include "oddball/metrics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oddball/util.hpp"

namespace oddball {

namespace {

[[noreturn]] void io_fail(const std::filesystem::path& path, const std::string& why) {
    throw std::runtime_error("CSV error in '" + path.string() + "': " + why);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) io_fail(path, "cannot open for reading");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    if (lines.empty()) io_fail(path, "file is empty");
    return lines;
}

void write_text(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail(path, "cannot open for writing");
    out << body;
    if (!out) io_fail(path, "write failed");
}

}  // namespace

std::pair<double, double> error_stats(const std::vector<double>& novelty) {
    if (novelty.empty()) throw std::invalid_argument("novelty vector is empty");
    const double n = static_cast<double>(novelty.size());
    double sum = 0.0;
    for (double e : novelty) sum += e;
    const double mean = sum / n;
    double sq = 0.0;
    for (double e : novelty) {
        const double d = e - mean;
        sq += d * d;
    }
    return {mean, std::sqrt(sq / n)};
}

void export_metrics_csv(const MetricsLog& log, const std::filesystem::path& path) {
    if (log.rows.empty()) throw std::invalid_argument("metrics log has no rows");
    std::string body = "step,mean_error,std_error\n";
    for (const auto& row : log.rows) {
        body += std::to_string(row.step);
        body += ',';
        body += format_double(row.mean_error);
        body += ',';
        body += format_double(row.std_error);
        body += '\n';
    }
    write_text(path, body);
}

void export_waterfall_csv(const MetricsLog& log, const std::filesystem::path& path) {
    if (log.waterfall.empty()) throw std::invalid_argument("metrics log has no waterfall rows");
    const std::size_t n = log.waterfall.front().errors.size();
    std::string body = "step";
    for (std::size_t i = 0; i < n; ++i) {
        body += ",e_";
        body += std::to_string(i);
    }
    body += '\n';
    for (const auto& row : log.waterfall) {
        if (row.errors.size() != n)
            throw std::invalid_argument("waterfall rows have inconsistent lengths");
        body += std::to_string(row.step);
        for (double e : row.errors) {
            body += ',';
            body += format_double(e);
        }
        body += '\n';
    }
    write_text(path, body);
}

MetricsLog parse_metrics_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.front() != "step,mean_error,std_error") io_fail(path, "unexpected header");
    MetricsLog log;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        if (fields.size() != 3) io_fail(path, "line " + std::to_string(i + 1) + " has " +
                                                  std::to_string(fields.size()) + " fields");
        MetricsRow row;
        row.step = parse_u64(fields[0]);
        row.mean_error = parse_double(fields[1]);
        row.std_error = parse_double(fields[2]);
        log.rows.push_back(row);
    }
    return log;
}

MetricsLog parse_waterfall_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    const auto header = split_csv_line(lines.front());
    if (header.size() < 2 || header[0] != "step" || header[1] != "e_0")
        io_fail(path, "unexpected header");
    MetricsLog log;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        if (fields.size() != header.size())
            io_fail(path, "line " + std::to_string(i + 1) + " has " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(header.size()));
        WaterfallRow row;
        row.step = parse_u64(fields[0]);
        row.errors.reserve(fields.size() - 1);
        for (std::size_t f = 1; f < fields.size(); ++f)
            row.errors.push_back(parse_double(fields[f]));
        log.waterfall.push_back(std::move(row));
    }
    return log;
}

namespace {

struct Series {
    const char* name;
    const char* color;
    std::vector<double> values;
};

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string svg_line_chart(const std::string& title, const std::string& y_label,
                           const std::vector<std::uint64_t>& steps,
                           const std::vector<Series>& series) {
    constexpr double kWidth = 860, kHeight = 520;
    constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 70;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    double x_min = static_cast<double>(steps.front());
    double x_max = static_cast<double>(steps.back());
    if (x_max == x_min) x_max = x_min + 1.0;
    double y_min = series.front().values.front();
    double y_max = y_min;
    for (const auto& s : series)
        for (double v : s.values) {
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    if (y_max == y_min) {
        y_min -= 1.0;
        y_max += 1.0;
    }

    const auto x_of = [&](double v) { return kLeft + (v - x_min) / (x_max - x_min) * plot_w; };
    const auto y_of = [&](double v) {
        return kTop + plot_h - (v - y_min) / (y_max - y_min) * plot_h;
    };
    const auto coord = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return std::string(buf);
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"18\" "
           "font-family=\"sans-serif\">"
        << title << "</text>\n";

    // axes
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
        << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kTop + plot_h << "\" stroke=\"black\"/>\n";

    constexpr int kTicks = 5;
    for (int t = 0; t <= kTicks; ++t) {
        const double fx = x_min + (x_max - x_min) * t / kTicks;
        const double px = x_of(fx);
        svg << "<line x1=\"" << coord(px) << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << coord(px)
            << "\" y2=\"" << kTop + plot_h + 6 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << coord(px) << "\" y=\"" << kTop + plot_h + 22
            << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">"
            << tick_label(fx) << "</text>\n";
        const double fy = y_min + (y_max - y_min) * t / kTicks;
        const double py = y_of(fy);
        svg << "<line x1=\"" << kLeft - 6 << "\" y1=\"" << coord(py) << "\" x2=\"" << kLeft
            << "\" y2=\"" << coord(py) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kLeft - 10 << "\" y=\"" << coord(py + 4)
            << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">"
            << tick_label(fy) << "</text>\n";
    }

    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 18
        << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\">"
           "cumulative SGD steps</text>\n"
        << "<text x=\"22\" y=\"" << kTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 22 "
        << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

    for (const auto& s : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (i > 0) svg << ' ';
            svg << coord(x_of(static_cast<double>(steps[i]))) << ',' << coord(y_of(s.values[i]));
        }
        svg << "\"/>\n";
    }

    // legend, top right of the plot area
    double ly = kTop + 14;
    for (const auto& s : series) {
        const double lx = kLeft + plot_w - 150;
        svg << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 28 << "\" y2=\""
            << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << lx + 34 << "\" y=\"" << ly
            << "\" font-size=\"13\" font-family=\"sans-serif\">" << s.name << "</text>\n";
        ly += 18;
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

ComparisonCharts render_comparison_svg(const MetricsLog& traditional, const MetricsLog& oddball) {
    if (traditional.rows.empty() || oddball.rows.empty())
        throw std::invalid_argument("metrics logs must be nonempty");
    if (traditional.rows.size() != oddball.rows.size())
        throw std::invalid_argument("metrics logs have different checkpoint counts");
    for (std::size_t i = 0; i < traditional.rows.size(); ++i)
        if (traditional.rows[i].step != oddball.rows[i].step)
            throw std::invalid_argument("metrics logs disagree on checkpoint steps");

    std::vector<std::uint64_t> steps;
    steps.reserve(traditional.rows.size());
    Series trad_mean{"traditional", "#1f77b4", {}};
    Series odd_mean{"oddball", "#d62728", {}};
    Series trad_std = trad_mean;
    Series odd_std = odd_mean;
    for (std::size_t i = 0; i < traditional.rows.size(); ++i) {
        steps.push_back(traditional.rows[i].step);
        trad_mean.values.push_back(traditional.rows[i].mean_error);
        odd_mean.values.push_back(oddball.rows[i].mean_error);
        trad_std.values.push_back(traditional.rows[i].std_error);
        odd_std.values.push_back(oddball.rows[i].std_error);
    }

    ComparisonCharts charts;
    charts.mean_svg = svg_line_chart("Mean per-frame error", "mean summed-absolute error", steps,
                                     {trad_mean, odd_mean});
    charts.std_svg = svg_line_chart("STD of per-frame error", "error STD", steps,
                                    {trad_std, odd_std});
    return charts;
}

}  // namespace oddball
