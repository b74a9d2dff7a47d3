#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mseg/core.hpp"

namespace mseg {

enum class Basis { standard_pi, simple_L };
enum class Side { left, right };
enum class Route { sym, deg };

struct RingElement {
  Basis basis = Basis::standard_pi;
  std::map<Multisegment, std::int64_t> terms;

  RingElement() = default;
  explicit RingElement(Basis b) : basis(b) {}
  static RingElement pi(const Multisegment& a);
  static RingElement L(const Multisegment& a);

  void add(const Multisegment& a, std::int64_t c);
  std::int64_t coeff(const Multisegment& a) const;
  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement scaled(std::int64_t c) const;
  bool operator==(const RingElement& o) const { return basis == o.basis && terms == o.terms; }
  std::string str() const;
};

using Decomposition = std::map<Multisegment, std::int64_t>;

std::int64_t multiplicity(const Multisegment& b, const Multisegment& a, Route route = Route::deg);
std::map<Multisegment, std::int64_t> m_matrix(const Multisegment& a, Route route = Route::deg);

RingElement convert(const RingElement& x, Basis target, Route route = Route::deg);
RingElement ring_mult(const RingElement& x, const RingElement& y, Route route = Route::deg);
Decomposition decompose_product(const Multisegment& a, const Multisegment& b,
                                Route route = Route::deg);

Multisegment gamma_truncate(const Multisegment& a, const Multisegment& gamma, Side side);
RingElement derivative_standard(const RingElement& x, int k, Side side = Side::right);
Decomposition derivative_simple(const Multisegment& a, int k, Side side = Side::right,
                                Route route = Route::deg);

void ring_clear_cache();

}  // namespace mseg
