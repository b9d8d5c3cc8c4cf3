#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace evtwin {

using Rng = std::mt19937_64;

std::uint64_t fnv1a64(std::string_view bytes);

// Engine for the named substream `name`/`index` of a master seed. Streams
// are independent of the order in which they are requested.
Rng substream(std::uint64_t master_seed, std::string_view name, std::uint64_t index = 0);

// Samplers written out here rather than taken from <random> so that draws
// are identical across standard library implementations.
double uniform01(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
bool bernoulli(Rng& rng, double p);
double normal(Rng& rng, double mean, double stddev);
// Index drawn proportionally to the non-negative weights. Weights must not
// all be zero.
std::size_t sample_index(Rng& rng, std::span<const double> weights);
// Uniform integer in [0, n).
std::size_t uniform_index(Rng& rng, std::size_t n);

}  // namespace evtwin
