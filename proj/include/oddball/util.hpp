#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace oddball {

// Shortest decimal string that round-trips to the exact double.
std::string format_double(double v);

// Strict parse of a full token; throws std::runtime_error on garbage.
double parse_double(std::string_view s);
std::uint64_t parse_u64(std::string_view s);

// Worker count for read-only fan-out, from ODDBALL_WORKERS if set (>=1),
// otherwise hardware concurrency. Never affects numerical results.
std::size_t resolve_workers();

// Runs fn over disjoint contiguous ranges covering [0, n). Each range is
// touched by exactly one thread, so writes to per-index slots are race-free
// and results do not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace oddball
