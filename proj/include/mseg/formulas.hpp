#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mseg/core.hpp"
#include "mseg/coxeter.hpp"
#include "mseg/qpoly.hpp"
#include "mseg/reduce.hpp"
#include "mseg/ring.hpp"

namespace mseg {

// a(k) as a list in the order used below: by end, then by begin ascending
std::vector<Segment> segments_ending_at(const Multisegment& a, int k);

// b <=_k a: b <= a_G for some sub-multiset G of a(k)
bool preceq_k(const Multisegment& b, const Multisegment& a, int k, Side side = Side::right);
// Gamma(a,k), or Gamma^i(a,k) when i is given
std::vector<Multisegment> gamma_set(const Multisegment& a, int k, std::optional<int> i = {},
                                    Side side = Side::right);

struct ThetaTable {
  Multisegment model;  // the identity model of type (J, empty)
  GeneratorSet J;
  GeneratorSet J1;  // J_1(l_k - r0, k)
  GeneratorSet J2;  // J_2(r0, k)
  int k = 0;
  int r0 = 0;
  // t_v for each v in S^{J2}
  std::map<Perm, Perm> t;
  // (u, t_v) -> theta
  std::map<std::pair<Perm, Perm>, QPoly> entries;
};

struct ThetaModels {
  Multisegment a1;  // last l_k - r0 segments of a(k) extended to k+1
  Multisegment a2;  // first r0 segments of a(k) cut back to k-1
};

ThetaModels theta_models(const Multisegment& a_id, int k, int r0);
// t_v: the flat/sharp construction, v in S^{J2(r0,k)}
Perm theta_t(const Multisegment& a_id, int k, int r0, const Perm& v);
// theta(w, t) for w in S^J and t in S^{J1}, through the triangular system on the up-set of w
QPoly theta_entry(const Multisegment& a_id, int k, int r0, const Perm& w, const Perm& t);
ThetaTable theta_table(const Multisegment& a_id, int k, int r0);

// D^k(L_{Phi(w)}) in the parabolic normal form; with drop, only the terms of degree deg(a) - drop
Decomposition derivative_normal_form(const Multisegment& a, int k, std::optional<int> drop = {});

struct DerivativeReduction {
  Multisegment top;                      // normal form
  std::vector<TruncationStep> replay;    // top -> a
};

DerivativeReduction derivative_reduction(const Multisegment& a, int k);
// D^k(L_a) (right) or ^kD(L_a) (left): theta_k(b, a) for each b
Decomposition derivative_closed_form(const Multisegment& a, int k, Side side = Side::right,
                                     std::optional<int> drop = {});

struct InduceStats {
  std::uint64_t point_formula = 0;      // products settled by the point reduction chain
  std::uint64_t derivation_system = 0;  // products settled by comparing derivatives
};

// m(c, [k+1], a)
Decomposition induce_point(const Multisegment& a, int k);
// m(c, b, a)
Decomposition induce_segment(const Multisegment& a, const Segment& b);

InduceStats induce_stats();
void formulas_clear_cache();

}  // namespace mseg
