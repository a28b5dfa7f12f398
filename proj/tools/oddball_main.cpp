#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "oddball/dataset.hpp"
#include "oddball/metrics.hpp"
#include "oddball/netcore.hpp"
#include "oddball/rng.hpp"
#include "oddball/trainer.hpp"
#include "oddball/util.hpp"
#include "oddball/weights_io.hpp"

namespace fs = std::filesystem;
using namespace oddball;

namespace {

// exit 1: bad flags or invalid input preconditions; exit 2: runtime failure
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_writable_out(const fs::path& out, bool force) {
    if (fs::exists(out)) {
        if (!fs::is_directory(out))
            throw UsageError("output path '" + out.string() + "' exists and is not a directory");
        if (!fs::is_empty(out) && !force)
            throw UsageError("output directory '" + out.string() +
                             "' is not empty (use --force to write anyway)");
    }
}

std::string toml_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '\\' || c == '"') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

using ManifestEntries = std::vector<std::pair<std::string, std::string>>;

void write_manifest(const fs::path& dir, const ManifestEntries& entries) {
    std::ofstream out(dir / "manifest.toml", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest in '" + dir.string() + "'");
    for (const auto& [key, value] : entries) out << key << " = " << value << "\n";
    if (!out) throw std::runtime_error("manifest write failed in '" + dir.string() + "'");
}

std::string frame_name(std::size_t index, std::size_t total) {
    std::size_t digits = 1;
    for (std::size_t v = total > 0 ? total - 1 : 0; v >= 10; v /= 10) ++digits;
    digits = std::max<std::size_t>(digits, 4);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "frame_%0*zu.pgm", static_cast<int>(digits), index);
    return buf;
}

struct GenOptions {
    std::size_t frames = 1000;
    std::size_t width = 32;
    std::size_t height = 32;
    std::size_t bursts = 4;
    std::size_t burst_len = 25;
    double drift = 0.01;
    std::uint64_t seed = 1;
    std::string out;
    bool force = false;
};

int cmd_gen(const GenOptions& opt) {
    SyntheticVideoSpec spec;
    spec.n_frames = opt.frames;
    spec.width = opt.width;
    spec.height = opt.height;
    spec.seed = opt.seed;
    spec.n_bursts = opt.bursts;
    spec.burst_length = opt.burst_len;
    spec.background_drift = opt.drift;
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const fs::path out(opt.out);
    require_writable_out(out, opt.force);

    const FrameSet set = generate_synthetic_video(spec);
    fs::create_directories(out);
    for (std::size_t i = 0; i < set.size(); ++i)
        write_frame(set.frames[i], set.width, set.height, out / frame_name(i, set.size()));
    write_manifest(out, {
                            {"command", toml_quote("gen")},
                            {"frames", std::to_string(spec.n_frames)},
                            {"width", std::to_string(spec.width)},
                            {"height", std::to_string(spec.height)},
                            {"bursts", std::to_string(spec.n_bursts)},
                            {"burst_len", std::to_string(spec.burst_length)},
                            {"drift", format_double(spec.background_drift)},
                            {"seed", std::to_string(spec.seed)},
                        });
    std::cout << "wrote " << set.size() << " frames (" << set.width << "x" << set.height
              << ") to " << out.string() << "\n";
    return 0;
}

struct TrainOptions {
    std::string data;
    std::string method = "traditional";
    double power = 100.0;
    double lr = 1.0;
    std::uint64_t sweeps = 10;
    std::size_t hidden = 100;
    std::uint64_t seed = 1;
    std::uint64_t metrics_interval = 1;
    std::uint64_t waterfall_interval = 0;  // 0 -> one row per sweep (N steps)
    std::string out;
    bool force = false;
};

FrameSet load_data_dir(const std::string& dir) {
    try {
        FrameSet set = load_frames(dir);
        set.validate();
        return set;
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
}

std::pair<NetworkConfig, TrainConfig> resolve_train_configs(const TrainOptions& opt,
                                                            const FrameSet& data,
                                                            TrainMethod method) {
    NetworkConfig net_config;
    net_config.input_size = data.size();
    net_config.hidden_size = opt.hidden;
    net_config.output_size = data.frame_length();
    net_config.init_seed = derive_seed(opt.seed, RngStream::weight_init);

    TrainConfig train_config;
    train_config.method = method;
    train_config.power = opt.power;
    train_config.learning_rate = opt.lr;
    train_config.sweeps = opt.sweeps;
    train_config.seed = opt.seed;
    train_config.metrics_interval = opt.metrics_interval;
    train_config.waterfall_interval =
        opt.waterfall_interval == 0 ? data.size() : opt.waterfall_interval;
    try {
        net_config.validate();
        train_config.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return {net_config, train_config};
}

ManifestEntries train_manifest(const char* command, const TrainOptions& opt, const FrameSet& data,
                               const TrainConfig& cfg) {
    return {
        {"command", toml_quote(command)},
        {"data", toml_quote(fs::absolute(opt.data).string())},
        {"method", toml_quote(opt.method)},
        {"power", format_double(opt.power)},
        {"lr", format_double(opt.lr)},
        {"sweeps", std::to_string(opt.sweeps)},
        {"hidden", std::to_string(opt.hidden)},
        {"seed", std::to_string(opt.seed)},
        {"metrics_interval", std::to_string(cfg.metrics_interval)},
        {"waterfall_interval", std::to_string(cfg.waterfall_interval)},
        {"frames", std::to_string(data.size())},
        {"width", std::to_string(data.width)},
        {"height", std::to_string(data.height)},
    };
}

int cmd_train(const TrainOptions& opt) {
    const fs::path out(opt.out);
    require_writable_out(out, opt.force);
    const FrameSet data = load_data_dir(opt.data);
    const TrainMethod method =
        opt.method == "oddball" ? TrainMethod::oddball : TrainMethod::traditional;
    const auto [net_config, train_config] = resolve_train_configs(opt, data, method);

    ExperimentResult result = train(init_network(net_config), data, train_config);

    fs::create_directories(out);
    export_metrics_csv(result.log, out / "metrics.csv");
    export_waterfall_csv(result.log, out / "waterfall.csv");
    save_network(result.net, out / "weights.bin");
    write_manifest(out, train_manifest("train", opt, data, train_config));

    const auto& last = result.log.rows.back();
    std::cout << "trained " << opt.method << " for " << result.total_steps
              << " steps: final mean=" << format_double(last.mean_error)
              << " std=" << format_double(last.std_error) << "\n";
    return 0;
}

int cmd_compare(const TrainOptions& opt) {
    const fs::path out(opt.out);
    require_writable_out(out, opt.force);
    const FrameSet data = load_data_dir(opt.data);
    const auto [net_config, trad_config] =
        resolve_train_configs(opt, data, TrainMethod::traditional);
    TrainConfig odd_config = trad_config;
    odd_config.method = TrainMethod::oddball;

    const PairedResult pair = run_paired_experiment(data, net_config, trad_config, odd_config);

    fs::create_directories(out / "plots");
    export_metrics_csv(pair.traditional.log, out / "traditional_metrics.csv");
    export_waterfall_csv(pair.traditional.log, out / "traditional_waterfall.csv");
    save_network(pair.traditional.net, out / "traditional_weights.bin");
    export_metrics_csv(pair.oddball.log, out / "oddball_metrics.csv");
    export_waterfall_csv(pair.oddball.log, out / "oddball_waterfall.csv");
    save_network(pair.oddball.net, out / "oddball_weights.bin");

    const ComparisonCharts charts = render_comparison_svg(pair.traditional.log, pair.oddball.log);
    for (const auto& [name, body] :
         {std::pair<const char*, const std::string&>{"mean.svg", charts.mean_svg},
          {"std.svg", charts.std_svg}}) {
        std::ofstream svg(out / "plots" / name, std::ios::binary);
        if (!svg || !(svg << body))
            throw std::runtime_error("cannot write plot '" + (out / "plots" / name).string() + "'");
    }

    TrainOptions manifest_opt = opt;
    manifest_opt.method = "paired";
    write_manifest(out, train_manifest("compare", manifest_opt, data, trad_config));

    const auto& trad = pair.traditional.log.rows.back();
    const auto& odd = pair.oddball.log.rows.back();
    std::cout << "final: mean_trad=" << format_double(trad.mean_error)
              << " std_trad=" << format_double(trad.std_error)
              << " mean_odd=" << format_double(odd.mean_error)
              << " std_odd=" << format_double(odd.std_error) << "\n";
    return 0;
}

struct RenderOptions {
    std::string weights;
    std::string frames = "0..0";
    std::size_t width = 0;
    std::size_t height = 0;
    std::string out;
    bool force = false;
};

std::pair<std::size_t, std::size_t> parse_frame_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const std::size_t i = parse_u64(text);
            return {i, i};
        }
        const std::size_t first = parse_u64(text.substr(0, dots));
        const std::size_t last = parse_u64(text.substr(dots + 2));
        if (last < first) throw std::runtime_error("range end before start");
        return {first, last};
    } catch (const std::runtime_error&) {
        throw UsageError("invalid --frames range '" + text + "' (expected i or i..j)");
    }
}

int cmd_render(const RenderOptions& opt) {
    const auto [first, last] = parse_frame_range(opt.frames);
    const fs::path out(opt.out);
    require_writable_out(out, opt.force);

    const Network net = load_network(opt.weights);
    if (last >= net.input_size())
        throw UsageError("frame index " + std::to_string(last) + " out of range [0, " +
                         std::to_string(net.input_size()) + ")");

    std::size_t width = opt.width;
    std::size_t height = opt.height;
    if (width == 0 || height == 0) {
        const auto n = net.output_size();
        const auto root = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
        if (root * root != n)
            throw UsageError("output size " + std::to_string(n) +
                             " is not square; pass --width and --height");
        width = height = root;
    }
    if (width * height != net.output_size())
        throw UsageError("width*height " + std::to_string(width * height) +
                         " does not match network output size " +
                         std::to_string(net.output_size()));

    fs::create_directories(out);
    SynthesisBuffers buffers;
    for (std::size_t i = first; i <= last; ++i)
        write_frame(synthesize(net, i, buffers), width, height,
                    out / frame_name(i, net.input_size()));
    write_manifest(out, {
                            {"command", toml_quote("render")},
                            {"weights", toml_quote(fs::absolute(opt.weights).string())},
                            {"frames_first", std::to_string(first)},
                            {"frames_last", std::to_string(last)},
                            {"width", std::to_string(width)},
                            {"height", std::to_string(height)},
                        });
    std::cout << "rendered frames " << first << ".." << last << " to " << out.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oddball: novelty-driven vs traditional SGD on video-frame encoding"};
    app.require_subcommand(1);

    GenOptions gen_opt;
    auto* gen = app.add_subcommand("gen", "generate a synthetic video as PGM frames");
    gen->add_option("--frames", gen_opt.frames, "number of frames")->check(CLI::PositiveNumber);
    gen->add_option("--width", gen_opt.width, "frame width")->check(CLI::PositiveNumber);
    gen->add_option("--height", gen_opt.height, "frame height")->check(CLI::PositiveNumber);
    gen->add_option("--bursts", gen_opt.bursts, "number of oddball bursts");
    gen->add_option("--burst-len", gen_opt.burst_len, "frames per burst")
        ->check(CLI::PositiveNumber);
    gen->add_option("--drift", gen_opt.drift, "background drift half-width")
        ->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", gen_opt.seed, "video seed");
    gen->add_option("--out", gen_opt.out, "output directory")->required();
    gen->add_flag("--force", gen_opt.force, "write into a non-empty directory");

    TrainOptions train_opt;
    auto* train_cmd = app.add_subcommand("train", "train one method on a frame directory");
    auto add_train_flags = [](CLI::App* cmd, TrainOptions& opt, bool with_method) {
        cmd->add_option("--data", opt.data, "directory of PGM frames")->required();
        if (with_method)
            cmd->add_option("--method", opt.method, "training method")
                ->check(CLI::IsMember({"traditional", "oddball"}))
                ->required();
        cmd->add_option("--power", opt.power, "novelty exponent")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--lr", opt.lr, "learning rate")->check(CLI::PositiveNumber);
        cmd->add_option("--sweeps", opt.sweeps, "full sweeps (N steps each)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--hidden", opt.hidden, "hidden layer size")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", opt.seed, "experiment master seed");
        cmd->add_option("--metrics-interval", opt.metrics_interval, "steps between metric rows")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--waterfall-interval", opt.waterfall_interval,
                        "steps between waterfall rows (0 = one per sweep)");
        cmd->add_option("--out", opt.out, "run output directory")->required();
        cmd->add_flag("--force", opt.force, "write into a non-empty directory");
    };
    add_train_flags(train_cmd, train_opt, true);

    TrainOptions compare_opt;
    auto* compare_cmd =
        app.add_subcommand("compare", "paired traditional-vs-oddball run from shared weights");
    add_train_flags(compare_cmd, compare_opt, false);

    RenderOptions render_opt;
    auto* render_cmd = app.add_subcommand("render", "synthesize frames from trained weights");
    render_cmd->add_option("--weights", render_opt.weights, "weights.bin file")->required();
    render_cmd->add_option("--frames", render_opt.frames, "frame index range i..j")->required();
    render_cmd->add_option("--width", render_opt.width, "frame width (default: square)");
    render_cmd->add_option("--height", render_opt.height, "frame height (default: square)");
    render_cmd->add_option("--out", render_opt.out, "output directory")->required();
    render_cmd->add_flag("--force", render_opt.force, "write into a non-empty directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(gen)) return cmd_gen(gen_opt);
        if (app.got_subcommand(train_cmd)) return cmd_train(train_opt);
        if (app.got_subcommand(compare_cmd)) return cmd_compare(compare_opt);
        if (app.got_subcommand(render_cmd)) return cmd_render(render_opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
