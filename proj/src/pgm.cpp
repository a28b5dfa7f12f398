#include "oddball/pgm.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <string>

namespace oddball {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& why) {
    throw std::runtime_error("PGM error in '" + path.string() + "': " + why);
}

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c) && c != '#') {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    if (c == '#') in.unget();
    return tok;
}

std::size_t parse_dim(const std::filesystem::path& path, const std::string& tok, const char* what) {
    if (tok.empty()) {
        fail(path, std::string("missing ") + what);
    }
    std::size_t value = 0;
    for (char ch : tok) {
        if (ch < '0' || ch > '9') fail(path, std::string("invalid ") + what + " '" + tok + "'");
        value = value * 10 + static_cast<std::size_t>(ch - '0');
        if (value > (1u << 20)) fail(path, std::string(what) + " out of range");
    }
    return value;
}

}  // namespace

PgmImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open for reading");

    if (next_token(in) != "P5") fail(path, "not a binary PGM (missing P5 magic)");
    PgmImage img;
    img.width = parse_dim(path, next_token(in), "width");
    img.height = parse_dim(path, next_token(in), "height");
    const std::size_t maxval = parse_dim(path, next_token(in), "maxval");
    if (img.width == 0 || img.height == 0) fail(path, "zero dimension");
    if (maxval != 255) fail(path, "unsupported maxval " + std::to_string(maxval));

    // Exactly one whitespace byte separates the header from the raster.
    const int sep = in.get();
    if (sep == EOF || !std::isspace(sep)) fail(path, "malformed header/raster separator");

    img.pixels.resize(img.width * img.height);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (static_cast<std::size_t>(in.gcount()) != img.pixels.size())
        fail(path, "truncated raster data");
    return img;
}

void write_pgm(const PgmImage& image, const std::filesystem::path& path) {
    if (image.pixels.size() != image.width * image.height)
        fail(path, "pixel buffer does not match dimensions");
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
    if (!out) fail(path, "write failed");
}

}  // namespace oddball
