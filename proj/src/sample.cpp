#include "mseg/sample.hpp"

#include <algorithm>

namespace mseg {

int Sampler::uniform(int lo, int hi) {
  auto width = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(rng_() % width);
}

Multisegment Sampler::multisegment_of_degree(int deg, int span, int max_len) {
  Multisegment a;
  int used = 0;
  while (used < deg) {
    int b = uniform(0, span - 1);
    // short segments are likelier, so that linked pairs and large posets are common
    int len = 1;
    while (len < max_len && uniform(0, 1) == 0) ++len;
    len = std::min(len, deg - used);
    a.add(Segment(b, b + len - 1));
    used += len;
  }
  return a;
}

Multisegment Sampler::multisegment(int max_deg, int span, int max_len) {
  return multisegment_of_degree(uniform(1, max_deg), span, max_len);
}

Segment Sampler::segment(int max_len, int span) {
  int b = uniform(0, span - 1);
  return Segment(b, b + uniform(1, max_len) - 1);
}

}  // namespace mseg
