#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "mseg/core.hpp"

namespace mseg {

struct PosetSnapshot {
  Multisegment root;
  std::vector<Multisegment> elements;  // elements[0] == root
  std::vector<std::pair<int, int>> cover_edges;  // (upper, lower)
  std::map<Multisegment, int> levels;

  int index_of(const Multisegment& b) const;
  const Multisegment& minimum() const;
};

bool leq(const Multisegment& b, const Multisegment& a);
bool lt(const Multisegment& b, const Multisegment& a);

std::size_t poset_size_limit();
void set_poset_size_limit(std::size_t n);

// all b <= a, sorted canonically
std::vector<Multisegment> poset_elements(const Multisegment& a);
PosetSnapshot generate_poset(const Multisegment& a);
Multisegment minimal_element(const Multisegment& a);
Multisegment minimal_element(const Weight& w);

std::string poset_dot(const PosetSnapshot& p);

}  // namespace mseg
