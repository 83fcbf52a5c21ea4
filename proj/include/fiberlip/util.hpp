#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fiberlip {

/// Raised on malformed input data (bad spec files, bad labels, violated
/// preconditions that callers can trigger with data).
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace util {

/// Number of worker threads for data-parallel scans. Honors FIBERLIP_THREADS,
/// defaults to hardware concurrency, never less than 1.
int worker_threads();

/// Runs fn(begin, end) over disjoint chunks of [0, n). Chunk boundaries are
/// fixed by n and the thread count, so per-chunk partial results can be
/// combined in chunk order to give results identical to a sequential scan.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

/// FNV-1a 64-bit hash, used for input digests in run reports.
std::uint64_t fnv1a64(std::string_view data);

std::string hex64(std::uint64_t v);

} // namespace util
} // namespace fiberlip
