#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace oddball {

// 8-bit single-channel image, row-major.
struct PgmImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;
};

// Binary PGM ("P5", maxval 255). The reader accepts standard header
// whitespace and '#' comments; maxval other than 255 is rejected.
PgmImage read_pgm(const std::filesystem::path& path);

// Writes the exact header "P5\n<width> <height>\n255\n" followed by raw
// row-major bytes.
void write_pgm(const PgmImage& image, const std::filesystem::path& path);

}  // namespace oddball
