#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace oddball {

// Training corpus: N flattened grayscale frames with pixel values in [0,1].
// Frame i is paired with the one-hot class input selecting index i.
struct FrameSet {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::vector<double>> frames;

    std::size_t size() const { return frames.size(); }
    std::size_t frame_length() const { return width * height; }
    void validate() const;  // throws std::invalid_argument
};

std::vector<double> one_hot(std::size_t index, std::size_t n);

// Row-major grid <-> vector. Exact inverses of each other.
std::vector<double> flatten_frame(const std::vector<std::vector<double>>& grid);
std::vector<std::vector<double>> unflatten_frame(std::span<const double> flat, std::size_t width,
                                                 std::size_t height);

// Synthetic video: a static textured background with small per-frame drift,
// plus disjoint frame segments ("bursts") containing a moving bright square.
struct SyntheticVideoSpec {
    std::size_t n_frames = 1000;
    std::size_t width = 32;
    std::size_t height = 32;
    std::uint64_t seed = 1;
    std::size_t n_bursts = 4;
    std::size_t burst_length = 25;
    double background_drift = 0.01;

    void validate() const;
};

FrameSet generate_synthetic_video(const SyntheticVideoSpec& spec);

// Which frames of a generated video belong to a burst. Matches
// generate_synthetic_video for the same spec.
std::vector<bool> burst_mask(const SyntheticVideoSpec& spec);

// Frames sorted by lexicographic filename; 8-bit pixel p maps to p/255.
FrameSet load_frames(const std::filesystem::path& directory);

// Real v maps to round(v*255) clamped to [0,255].
void write_frame(std::span<const double> frame, std::size_t width, std::size_t height,
                 const std::filesystem::path& path);

}  // namespace oddball
