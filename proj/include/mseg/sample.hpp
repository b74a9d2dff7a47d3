#pragma once

#include <cstdint>
#include <random>

#include "mseg/core.hpp"

namespace mseg {

// Draws use rng() % n only, so a seed gives the same corpus on every standard library.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi);  // inclusive
  // degree in [1, max_deg], begins in [0, span), lengths at most max_len
  Multisegment multisegment(int max_deg, int span = 4, int max_len = 3);
  Multisegment multisegment_of_degree(int deg, int span = 4, int max_len = 3);
  Segment segment(int max_len, int span = 6);

private:
  std::mt19937_64 rng_;
};

}  // namespace mseg
