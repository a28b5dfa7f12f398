#include "oddball/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "oddball/pgm.hpp"
#include "oddball/rng.hpp"

namespace oddball {

namespace {

// Sub-streams of the video seed; kept clear of the experiment streams 0-3.
constexpr std::uint64_t kTextureStream = 10;
constexpr std::uint64_t kLayoutStream = 11;
constexpr std::uint64_t kPathStream = 12;
constexpr std::uint64_t kDriftStream = 13;

struct Burst {
    std::size_t first = 0;   // first frame index
    std::size_t length = 0;
};

std::vector<Burst> burst_layout(const SyntheticVideoSpec& spec) {
    std::vector<Burst> bursts;
    if (spec.n_bursts == 0) return bursts;
    Rng rng(derive_seed(spec.seed, kLayoutStream));
    // One burst per equal block of frames, at a random offset inside it.
    for (std::size_t k = 0; k < spec.n_bursts; ++k) {
        const std::size_t block_begin = spec.n_frames * k / spec.n_bursts;
        const std::size_t block_end = spec.n_frames * (k + 1) / spec.n_bursts;
        const std::size_t slack = (block_end - block_begin) - spec.burst_length + 1;
        bursts.push_back({block_begin + rng.uniform_index(slack), spec.burst_length});
    }
    return bursts;
}

// Reflects p into [0, hi].
std::size_t reflect(long p, long hi) {
    if (hi <= 0) return 0;
    const long period = 2 * hi;
    p = ((p % period) + period) % period;
    return static_cast<std::size_t>(p > hi ? period - p : p);
}

}  // namespace

void FrameSet::validate() const {
    if (width == 0 || height == 0) throw std::invalid_argument("frame dimensions must be >= 1");
    if (frames.empty()) throw std::invalid_argument("frame set is empty");
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].size() != frame_length())
            throw std::invalid_argument("frame " + std::to_string(i) + " has length " +
                                        std::to_string(frames[i].size()) + ", expected " +
                                        std::to_string(frame_length()));
        for (double v : frames[i])
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("frame " + std::to_string(i) +
                                            " has pixel outside [0,1]");
    }
}

std::vector<double> one_hot(std::size_t index, std::size_t n) {
    if (index >= n)
        throw std::invalid_argument("one_hot index " + std::to_string(index) +
                                    " out of range [0, " + std::to_string(n) + ")");
    std::vector<double> v(n, 0.0);
    v[index] = 1.0;
    return v;
}

std::vector<double> flatten_frame(const std::vector<std::vector<double>>& grid) {
    if (grid.empty() || grid.front().empty())
        throw std::invalid_argument("cannot flatten an empty grid");
    const std::size_t width = grid.front().size();
    std::vector<double> flat;
    flat.reserve(grid.size() * width);
    for (std::size_t r = 0; r < grid.size(); ++r) {
        if (grid[r].size() != width)
            throw std::invalid_argument("grid row " + std::to_string(r) + " has length " +
                                        std::to_string(grid[r].size()) + ", expected " +
                                        std::to_string(width));
        flat.insert(flat.end(), grid[r].begin(), grid[r].end());
    }
    return flat;
}

std::vector<std::vector<double>> unflatten_frame(std::span<const double> flat, std::size_t width,
                                                 std::size_t height) {
    if (flat.size() != width * height)
        throw std::invalid_argument("flat length " + std::to_string(flat.size()) +
                                    " does not match " + std::to_string(width) + "x" +
                                    std::to_string(height));
    std::vector<std::vector<double>> grid(height);
    for (std::size_t r = 0; r < height; ++r)
        grid[r].assign(flat.begin() + static_cast<std::ptrdiff_t>(r * width),
                       flat.begin() + static_cast<std::ptrdiff_t>((r + 1) * width));
    return grid;
}

void SyntheticVideoSpec::validate() const {
    if (n_frames < 1 || width < 1 || height < 1 || burst_length < 1)
        throw std::invalid_argument("n_frames, width, height, burst_length must all be >= 1");
    if (n_bursts * burst_length > n_frames)
        throw std::invalid_argument("n_bursts * burst_length exceeds n_frames");
    if (!(background_drift >= 0.0) || !std::isfinite(background_drift))
        throw std::invalid_argument("background_drift must be finite and >= 0");
}

std::vector<bool> burst_mask(const SyntheticVideoSpec& spec) {
    spec.validate();
    std::vector<bool> mask(spec.n_frames, false);
    for (const Burst& b : burst_layout(spec))
        for (std::size_t f = b.first; f < b.first + b.length; ++f) mask[f] = true;
    return mask;
}

FrameSet generate_synthetic_video(const SyntheticVideoSpec& spec) {
    spec.validate();
    const std::size_t len = spec.width * spec.height;

    Rng texture_rng(derive_seed(spec.seed, kTextureStream));
    std::vector<double> base(len);
    for (double& p : base) p = 0.2 + 0.6 * texture_rng.next_double();

    const auto bursts = burst_layout(spec);

    // The bright square's size and per-burst trajectory. Velocity is +-2 per
    // axis so consecutive burst frames always differ over a band of pixels.
    const std::size_t side =
        std::min({std::max<std::size_t>(2, std::min(spec.width, spec.height) / 4), spec.width,
                  spec.height});
    const long hi_x = static_cast<long>(spec.width - side);
    const long hi_y = static_cast<long>(spec.height - side);
    struct SquarePos {
        std::size_t x, y;
    };
    std::vector<std::vector<SquarePos>> paths(bursts.size());
    Rng path_rng(derive_seed(spec.seed, kPathStream));
    for (std::size_t k = 0; k < bursts.size(); ++k) {
        long x = hi_x > 0 ? static_cast<long>(path_rng.uniform_index(static_cast<std::uint64_t>(hi_x + 1))) : 0;
        long y = hi_y > 0 ? static_cast<long>(path_rng.uniform_index(static_cast<std::uint64_t>(hi_y + 1))) : 0;
        long dx = path_rng.uniform_index(2) == 0 ? 2 : -2;
        long dy = path_rng.uniform_index(2) == 0 ? 2 : -2;
        paths[k].resize(bursts[k].length);
        for (std::size_t f = 0; f < bursts[k].length; ++f) {
            paths[k][f] = {reflect(x, hi_x), reflect(y, hi_y)};
            x += dx;
            y += dy;
        }
    }

    FrameSet set;
    set.width = spec.width;
    set.height = spec.height;
    set.frames.assign(spec.n_frames, base);

    Rng drift_rng(derive_seed(spec.seed, kDriftStream));
    for (std::size_t f = 0; f < spec.n_frames; ++f) {
        auto& frame = set.frames[f];
        if (spec.background_drift > 0.0) {
            for (double& p : frame) {
                p += spec.background_drift * (2.0 * drift_rng.next_double() - 1.0);
                p = std::clamp(p, 0.0, 1.0);
            }
        }
        for (std::size_t k = 0; k < bursts.size(); ++k) {
            if (f < bursts[k].first || f >= bursts[k].first + bursts[k].length) continue;
            const SquarePos pos = paths[k][f - bursts[k].first];
            for (std::size_t r = 0; r < side; ++r)
                for (std::size_t c = 0; c < side; ++c)
                    frame[(pos.y + r) * spec.width + pos.x + c] = 1.0;
        }
    }
    return set;
}

FrameSet load_frames(const std::filesystem::path& directory) {
    if (!std::filesystem::is_directory(directory))
        throw std::runtime_error("not a directory: '" + directory.string() + "'");

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(directory))
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            files.push_back(entry.path());
    if (files.empty())
        throw std::runtime_error("no .pgm files in '" + directory.string() + "'");
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

    FrameSet set;
    for (const auto& file : files) {
        const PgmImage img = read_pgm(file);
        if (set.frames.empty()) {
            set.width = img.width;
            set.height = img.height;
        } else if (img.width != set.width || img.height != set.height) {
            throw std::runtime_error("frame dimensions " + std::to_string(img.width) + "x" +
                                     std::to_string(img.height) + " in '" + file.string() +
                                     "' do not match " + std::to_string(set.width) + "x" +
                                     std::to_string(set.height));
        }
        std::vector<double> frame(img.pixels.size());
        for (std::size_t i = 0; i < img.pixels.size(); ++i)
            frame[i] = static_cast<double>(img.pixels[i]) / 255.0;
        set.frames.push_back(std::move(frame));
    }
    return set;
}

void write_frame(std::span<const double> frame, std::size_t width, std::size_t height,
                 const std::filesystem::path& path) {
    if (frame.size() != width * height)
        throw std::invalid_argument("frame length " + std::to_string(frame.size()) +
                                    " does not match " + std::to_string(width) + "x" +
                                    std::to_string(height));
    PgmImage img;
    img.width = width;
    img.height = height;
    img.pixels.resize(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        const double v = frame[i];
        if (!std::isfinite(v))
            throw std::invalid_argument("non-finite pixel value at index " + std::to_string(i));
        const long q = std::lround(v * 255.0);
        img.pixels[i] = static_cast<std::uint8_t>(std::clamp(q, 0L, 255L));
    }
    write_pgm(img, path);
}

}  // namespace oddball
