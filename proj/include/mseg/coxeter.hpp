#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mseg/core.hpp"

namespace mseg {

class Perm {
public:
  Perm() = default;
  explicit Perm(std::vector<int> one_line);
  static Perm identity(int n);
  static Perm simple(int n, int i);  // sigma_i swaps i and i+1

  int n() const { return static_cast<int>(w_.size()); }
  int operator()(int i) const { return w_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& one_line() const { return w_; }

  Perm inverse() const;
  Perm left_mul(int i) const;   // sigma_i * w
  Perm right_mul(int i) const;  // w * sigma_i
  bool is_identity() const;

  std::uint64_t packed() const;
  static Perm unpack(std::uint64_t p, int n);

  bool operator==(const Perm&) const = default;
  auto operator<=>(const Perm&) const = default;

  std::string str() const;

private:
  std::vector<int> w_;
};

Perm compose(const Perm& u, const Perm& v);  // (u v)(i) = u(v(i))
Perm parse_perm(const std::string& text, int n = 0);

int length(const Perm& w);
bool bruhat_leq(const Perm& u, const Perm& w);
bool bruhat_lt(const Perm& u, const Perm& w);
std::vector<int> left_descents(const Perm& w);
std::vector<int> right_descents(const Perm& w);
std::vector<Perm> all_perms(int n);
// elements covered by w in the Bruhat order
std::vector<Perm> bruhat_lower_covers(const Perm& w);

struct GeneratorSet {
  int n = 0;
  std::vector<int> members;  // sorted indices in 1..n-1

  GeneratorSet() = default;
  GeneratorSet(int n, std::vector<int> members);
  bool contains(int i) const;
  bool empty() const { return members.empty(); }
  std::string str() const;
  bool operator==(const GeneratorSet&) const = default;
};

// S^{J1,J2}: s1 v > v for s1 in J1 and v s2 > v for s2 in J2
bool in_quotient(const Perm& v, const GeneratorSet& J1, const GeneratorSet& J2);
// S^J: no right descent in J
bool in_right_quotient(const Perm& v, const GeneratorSet& J);
std::vector<Perm> coset_reps(const GeneratorSet& J1, const GeneratorSet& J2);
std::vector<Perm> parabolic_subgroup(const GeneratorSet& J);
Perm longest_element(const GeneratorSet& J);
Perm max_double_coset(const Perm& v, const GeneratorSet& J1, const GeneratorSet& J2);
Perm min_double_coset(const Perm& v, const GeneratorSet& J1, const GeneratorSet& J2);

// models for the dictionary between permutations and multisegments
bool is_symmetric(const Multisegment& a);
bool is_ordinary(const Multisegment& a);
bool is_parabolic_type(const Multisegment& a);
GeneratorSet ends_generators(const Multisegment& a_id);    // J1: repeated ends
GeneratorSet begins_generators(const Multisegment& a_id);  // J2: repeated begins

Multisegment phi(const Multisegment& a_id, const Perm& w);
Perm phi_inv(const Multisegment& a_id, const Multisegment& b);

Perm zelevinsky_permutation(const Multisegment& b);
// for tests: the block data of X^b and the membership test for S^b
std::vector<std::vector<int>> zelevinsky_matrix(const Multisegment& b);
bool in_zelevinsky_set(const Multisegment& b, const Perm& w);

struct Partition {
  std::vector<int> parts;  // weakly increasing, each part <= l

  std::vector<int> sigma2() const;  // (l_1+1, ..., l_r+r)
  std::string str() const;
  bool operator==(const Partition&) const = default;
};

// alternate encoding (a_1..a_m; b_0..b_{m-1}) of a partition in Omega^{r,l}
struct PartitionBlocks {
  std::vector<int> a;
  std::vector<int> b;
  bool operator==(const PartitionBlocks&) const = default;
};

PartitionBlocks to_blocks(const Partition& lambda, int l);
Partition from_blocks(const PartitionBlocks& blocks);
std::vector<Partition> partitions_in_box(int r, int l);
bool partition_leq(const Partition& x, const Partition& y);

struct PartitionImage {
  std::vector<int> x_lambda;
  Multisegment a_lambda;
};

PartitionImage partition_maps(const Partition& lambda, int r, int l,
                              const Multisegment& a_ref);

}  // namespace mseg
