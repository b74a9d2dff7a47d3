#include "mseg/kl.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>

#include "mseg/poset.hpp"

namespace mseg {

namespace {

using u64 = std::uint64_t;

struct Packed {
  int n;

  int at(u64 p, int i) const { return static_cast<int>((p >> (4 * i)) & 15u); }
  u64 put(u64 p, int i, int v) const {
    return (p & ~(u64{15} << (4 * i))) | (static_cast<u64>(v) << (4 * i));
  }
  int pos(u64 p, int v) const {
    for (int i = 0; i < n; ++i)
      if (at(p, i) == v) return i;
    return -1;
  }
  bool left_descent(u64 p, int s) const { return pos(p, s) > pos(p, s + 1); }
  bool right_descent(u64 p, int s) const { return at(p, s) > at(p, s + 1); }
  u64 left_mul(u64 p, int s) const {
    int i = pos(p, s), j = pos(p, s + 1);
    return put(put(p, i, s + 1), j, s);
  }
  u64 right_mul(u64 p, int s) const {
    int a = at(p, s), b = at(p, s + 1);
    return put(put(p, s, b), s + 1, a);
  }
  int length(u64 p) const {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (at(p, i) > at(p, j)) ++inv;
    return inv;
  }
  bool leq(u64 x, u64 y) const {
    int rx[17] = {0}, ry[17] = {0};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= at(x, i); ++j) ++rx[j];
      for (int j = 0; j <= at(y, i); ++j) ++ry[j];
      for (int j = 0; j < n; ++j)
        if (rx[j] > ry[j]) return false;
    }
    return true;
  }
  void lower_covers(u64 p, std::vector<u64>& out) const {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int vi = at(p, i), vj = at(p, j);
        if (vi < vj) continue;
        bool cover = true;
        for (int k = i + 1; k < j && cover; ++k) {
          int vk = at(p, k);
          if (vk < vi && vk > vj) cover = false;
        }
        if (cover) out.push_back(put(put(p, i, vj), j, vi));
      }
  }
};

struct PairHash {
  std::size_t operator()(const std::pair<u64, u64>& k) const {
    u64 h = k.first * 0x9e3779b97f4a7c15ull;
    h ^= k.second + 0x7f4a7c159e3779b9ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

class KLTable {
public:
  QPoly get(int n, u64 x, u64 y) {
    Packed pk{n};
    if (!pk.leq(x, y)) return QPoly();
    return compute(pk, x, y);
  }

  std::size_t size() {
    std::shared_lock lock(mu_);
    return cache_.size();
  }

  void clear() {
    std::unique_lock lock(mu_);
    cache_.clear();
  }

private:
  // x <= y is assumed
  QPoly compute(const Packed& pk, u64 x, u64 y) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int s = 0; s + 1 < pk.n; ++s) {
        if (pk.left_descent(y, s) && !pk.left_descent(x, s)) {
          x = pk.left_mul(x, s);
          moved = true;
        }
        if (pk.right_descent(y, s) && !pk.right_descent(x, s)) {
          x = pk.right_mul(x, s);
          moved = true;
        }
      }
    }
    if (x == y) return QPoly(1);
    int ly = pk.length(y);
    int lx = pk.length(x);
    if (ly - lx <= 2) return QPoly(1);
    {
      std::shared_lock lock(mu_);
      auto it = cache_.find({x, y});
      if (it != cache_.end()) return it->second;
    }
    int s = 0;
    while (!pk.left_descent(y, s)) ++s;
    u64 v = pk.left_mul(y, s);
    u64 sx = pk.left_mul(x, s);
    QPoly p = compute(pk, sx, v);
    if (pk.leq(x, v)) p += compute(pk, x, v).shifted_v(2);

    // z with x <= z < v, sz < z and mu(z, v) != 0
    int lv = ly - 1;
    std::vector<u64> layer{v};
    std::unordered_set<u64> seen{v};
    for (int depth = 1; lv - depth >= lx && !layer.empty(); ++depth) {
      std::vector<u64> next, covers;
      for (u64 z : layer) {
        covers.clear();
        pk.lower_covers(z, covers);
        for (u64 c : covers)
          if (seen.insert(c).second && pk.leq(x, c)) next.push_back(c);
      }
      layer = std::move(next);
      if (depth % 2 == 0) continue;
      for (u64 z : layer) {
        if (!pk.left_descent(z, s)) continue;
        std::int64_t m = depth == 1 ? 1 : compute(pk, z, v).coeff_q((depth - 1) / 2);
        if (m == 0) continue;
        QPoly term = compute(pk, x, z) * QPoly::monomial(m, ly - (lv - depth));
        p -= term;
      }
    }
    std::unique_lock lock(mu_);
    cache_.emplace(std::make_pair(x, y), p);
    return p;
  }

  std::shared_mutex mu_;
  std::unordered_map<std::pair<u64, u64>, QPoly, PairHash> cache_;
};

KLTable& table() {
  static KLTable t;
  return t;
}

}  // namespace

QPoly kl_poly(const Perm& x, const Perm& y) {
  if (x.n() != y.n()) throw SizeMismatch("kl_poly: different n");
  if (x.n() > 16) throw SizeMismatch("kl_poly supports n <= 16");
  return table().get(x.n(), x.packed(), y.packed());
}

std::int64_t mu(const Perm& x, const Perm& y) {
  int d = length(y) - length(x);
  if (d <= 0 || d % 2 == 0) return 0;
  return kl_poly(x, y).coeff_q((d - 1) / 2);
}

QPoly parabolic_kl(const Perm& v1, const Perm& v2, const GeneratorSet& J) {
  GeneratorSet none(v1.n(), {});
  return double_parabolic_kl(v1, v2, none, J);
}

QPoly double_parabolic_kl(const Perm& v1, const Perm& v2, const GeneratorSet& J1,
                          const GeneratorSet& J2) {
  if (!in_quotient(v1, J1, J2) || !in_quotient(v2, J1, J2))
    throw NotInQuotient(v1.str() + " / " + v2.str() + " for " + J1.str() + "," + J2.str());
  return kl_poly(max_double_coset(v1, J1, J2), max_double_coset(v2, J1, J2));
}

QPoly kl_multisegment(const Multisegment& b, const Multisegment& a) {
  if (!leq(b, a))
    throw NotComparable(format_multisegment(b) + " is not below " + format_multisegment(a));
  return kl_poly(zelevinsky_permutation(a), zelevinsky_permutation(b));
}

std::size_t kl_cache_size() { return table().size(); }
void kl_clear_cache() { table().clear(); }

}  // namespace mseg
