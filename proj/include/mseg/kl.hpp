#pragma once

#include <cstddef>
#include <cstdint>

#include "mseg/coxeter.hpp"
#include "mseg/qpoly.hpp"

namespace mseg {

QPoly kl_poly(const Perm& x, const Perm& y);
std::int64_t mu(const Perm& x, const Perm& y);

// P^J_{v1,v2} = P_{v1 w_J, v2 w_J} for v1, v2 in S^J
QPoly parabolic_kl(const Perm& v1, const Perm& v2, const GeneratorSet& J);
// P_{x1,x2} for the longest elements x_i of S_{J1} v_i S_{J2}
QPoly double_parabolic_kl(const Perm& v1, const Perm& v2, const GeneratorSet& J1,
                          const GeneratorSet& J2);

// P_{a,b}(q) = P_{w(a),w(b)}(q) for b <= a; the multiplicity m(b,a) is its value at 1
QPoly kl_multisegment(const Multisegment& b, const Multisegment& a);

std::size_t kl_cache_size();
void kl_clear_cache();

}  // namespace mseg
