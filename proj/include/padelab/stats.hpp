#ifndef PADELAB_STATS_HPP
#define PADELAB_STATS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace padelab {

// Least-squares slope of y against x; needs >= 2 points.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// Runs fn(i) for i in [0, count) on up to `threads` workers.  Results must be
// written to per-index slots; assembly order is then deterministic.
void parallel_for(size_t count, int threads, const std::function<void(size_t)>& fn);

// FNV-1a 64-bit content digest, hex encoded; used by run manifests.
std::string fnv1a64_hex(const std::string& bytes);

// Deterministic 64-bit mix of (seed, index); drives reproducible draws.
uint64_t splitmix64(uint64_t x);

} // namespace padelab

#endif
