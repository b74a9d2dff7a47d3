#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mseg/coxeter.hpp"
#include "mseg/core.hpp"
#include "mseg/ring.hpp"

namespace mseg {

struct TruncationStep {
  Side side = Side::right;
  int k = 0;
  bool operator==(const TruncationStep&) const = default;
};

std::string format_step(const TruncationStep& s);

Multisegment mirror(const Multisegment& a);
Multisegment truncate(const Multisegment& a, const TruncationStep& step);
Multisegment truncate(const Multisegment& a, int k, Side side = Side::right);
Multisegment truncate_seq(const Multisegment& a, const std::vector<TruncationStep>& steps);

// H_k(b, a): deg(b^(k)) = deg(a^(k)) and no linked pair of b ends at k-1 and k
bool hypothesis_Hk(const Multisegment& b, const Multisegment& a, int k, Side side = Side::right);
bool in_S_a_k(const Multisegment& b, const Multisegment& a, int k, Side side = Side::right);
std::vector<Multisegment> S_a_k(const Multisegment& a, int k, Side side = Side::right);

Multisegment psi_k(const Multisegment& b, const Multisegment& a, int k, Side side = Side::right);
Multisegment psi_k_inv(const Multisegment& d, const Multisegment& a, int k,
                       Side side = Side::right);

struct OrdinaryReduction {
  Multisegment b;
  std::vector<Segment> c1;  // right scripts
  std::vector<Segment> c2;  // left scripts
  std::vector<TruncationStep> replay;  // applied to b in order, gives the source
};

OrdinaryReduction reduce_to_ordinary(const Multisegment& a);

struct SymmetrizationCertificate {
  Multisegment source;
  Multisegment sym;
  std::vector<Segment> c1, c2, c3;
  std::vector<TruncationStep> replay;  // sym -> source
  Multisegment a_id;
  Perm w;
};

SymmetrizationCertificate symmetrize(const Multisegment& a);
// the lift of b along the certificate, with the intermediate lifts checked
Multisegment transport(const Multisegment& b, const SymmetrizationCertificate& cert);
// lift along a replay list: the unique c in the iterated truncation domain of top
Multisegment lift_along(const Multisegment& b, const Multisegment& top,
                        const std::vector<TruncationStep>& replay);
std::int64_t multiplicity_sym(const Multisegment& b, const Multisegment& a);

struct RelationMap {
  std::vector<std::pair<int, int>> begins;
  std::vector<std::pair<int, int>> ends;
};

std::optional<RelationMap> relation_map(const Multisegment& a, const Multisegment& a2);
bool relation_type_equal(const Multisegment& a, const Multisegment& a2);
Multisegment xi_transport(const Multisegment& b, const Multisegment& a, const Multisegment& a2);

// insert a gap at x: begins > x and ends >= x move up by one
Multisegment stretch(const Multisegment& a, int x);

struct Classification {
  int n = 0;
  GeneratorSet J1;
  GeneratorSet J2;
  Perm w;
  Multisegment floor;
  Multisegment lifted;  // a_w, of parabolic type
  Multisegment model;   // the identity model of the same type
  std::vector<TruncationStep> replay;  // lifted -> a
};

Classification classify_poset(const Multisegment& a);

}  // namespace mseg
