#pragma once

// Seed derivation and multinomial sampling.
//
// A seed names a stream; derive(i) names its i-th child stream. The mapping
// is a SplitMix64 finalizer over (parent, index), so it is stable across
// platforms and independent of execution order. Experiments derive
// replication streams from the experiment seed and block streams from the
// replication seed.

#include <cstdint>
#include <random>
#include <vector>

#include "tomoci/linalg.hpp"

namespace tomoci {

class BlockLayout;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct RngSeed {
  std::uint64_t value = 0;

  RngSeed derive(std::uint64_t index) const {
    return {splitmix64(splitmix64(value) ^ (index * 0xd1b54a32d192ed03ULL + 1))};
  }
  std::mt19937_64 engine() const { return std::mt19937_64(splitmix64(value)); }
};

// Counts of one multinomial block, drawn as a chain of conditional binomials.
// `p` must be a probability vector (checked by the caller).
void sample_block(const double* p, Index outcomes, std::int64_t shots, std::mt19937_64& rng,
                  std::int64_t* counts);

// Block b is drawn from stream seed.derive(b). Throws InvalidArgument unless
// every block of p is a probability vector (entries >= -1e-12, sum within
// 1e-9 of one) and every shot count is positive.
std::vector<std::int64_t> sample_multinomial(const BlockLayout& layout, const RealVector& p,
                                             const std::vector<std::int64_t>& shots, RngSeed seed);

// Complex matrix with i.i.d. standard complex-normal entries.
ComplexMatrix complex_gaussian(Index rows, Index cols, std::mt19937_64& rng);

}  // namespace tomoci
