#include "oddball/weights_io.hpp"

#include <bit>
#include <array>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace oddball {

namespace {

constexpr char kMagic[8] = {'O', 'D', 'B', 'N', 'E', 'T', '0', '1'};
constexpr std::size_t kMaxDim = 1u << 24;

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& why) {
    throw std::runtime_error("weights file '" + path.string() + "': " + why);
}

void put_u32(std::ostream& out, std::uint32_t v) {
    const std::array<char, 4> b = {static_cast<char>(v), static_cast<char>(v >> 8),
                                   static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
    out.write(b.data(), 4);
}

void put_f64(std::ostream& out, double v) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    std::array<char, 8> b;
    for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>(bits >> (8 * i));
    out.write(b.data(), 8);
}

std::uint32_t get_u32(std::istream& in, const std::filesystem::path& path) {
    std::array<unsigned char, 4> b;
    if (!in.read(reinterpret_cast<char*>(b.data()), 4)) fail(path, "truncated header");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

double get_f64(std::istream& in, const std::filesystem::path& path) {
    std::array<unsigned char, 8> b;
    if (!in.read(reinterpret_cast<char*>(b.data()), 8)) fail(path, "truncated parameter data");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[static_cast<std::size_t>(i)]) << (8 * i);
    return std::bit_cast<double>(bits);
}

}  // namespace

void save_network(const Network& net, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out.write(kMagic, sizeof(kMagic));
    put_u32(out, static_cast<std::uint32_t>(net.layers.size()));
    for (const auto& layer : net.layers) {
        put_u32(out, static_cast<std::uint32_t>(layer.out_dim));
        put_u32(out, static_cast<std::uint32_t>(layer.in_dim));
    }
    for (const auto& layer : net.layers) {
        for (double w : layer.weights) put_f64(out, w);
        for (double b : layer.biases) put_f64(out, b);
    }
    if (!out) fail(path, "write failed");
}

Network load_network(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open for reading");

    char magic[8];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        fail(path, "bad magic (not a network weights file)");

    const std::uint32_t n_layers = get_u32(in, path);
    if (n_layers == 0 || n_layers > 16) fail(path, "implausible layer count");

    Network net;
    net.layers.resize(n_layers);
    for (auto& layer : net.layers) {
        layer.out_dim = get_u32(in, path);
        layer.in_dim = get_u32(in, path);
        if (layer.out_dim == 0 || layer.in_dim == 0 || layer.out_dim > kMaxDim ||
            layer.in_dim > kMaxDim)
            fail(path, "implausible layer dimensions");
    }
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        if (k > 0 && net.layers[k].in_dim != net.layers[k - 1].out_dim)
            fail(path, "layer dimension chain broken at layer " + std::to_string(k));
        auto& layer = net.layers[k];
        layer.weights.resize(layer.out_dim * layer.in_dim);
        layer.biases.resize(layer.out_dim);
        for (double& w : layer.weights) w = get_f64(in, path);
        for (double& b : layer.biases) b = get_f64(in, path);
    }
    // must be exactly at EOF
    char extra;
    if (in.read(&extra, 1)) fail(path, "trailing bytes after parameter data");
    return net;
}

}  // namespace oddball
