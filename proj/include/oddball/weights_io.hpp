#pragma once

#include <filesystem>

#include "oddball/netcore.hpp"

namespace oddball {

// Versioned binary network format: 8-byte magic "ODBNET01", little-endian
// u32 layer count, per-layer u32 out/in dimensions, then per layer the
// weights (row-major) followed by the biases as little-endian IEEE-754
// doubles. Round-trips bit-exactly.
void save_network(const Network& net, const std::filesystem::path& path);
Network load_network(const std::filesystem::path& path);

}  // namespace oddball
