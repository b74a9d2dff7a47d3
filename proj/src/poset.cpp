#include "mseg/poset.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <unordered_map>
#include <unordered_set>

namespace mseg {

namespace {

std::atomic<std::size_t> size_limit_override{0};

std::size_t env_size_limit() {
  static const std::size_t value = [] {
    const char* env = std::getenv("MSEG_SIZE_LIMIT");
    if (env != nullptr) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(200000);
  }();
  return value;
}

std::vector<Multisegment> children(const Multisegment& a) {
  std::vector<Multisegment> out;
  for (const auto& [d1, d2] : linked_pairs(a)) out.push_back(elementary_op(a, d1, d2));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::size_t poset_size_limit() {
  std::size_t o = size_limit_override.load();
  return o != 0 ? o : env_size_limit();
}

void set_poset_size_limit(std::size_t n) { size_limit_override.store(n); }

bool leq(const Multisegment& b, const Multisegment& a) {
  if (b == a) return true;
  Weight wa = a.weight();
  if (b.weight() != wa) return false;
  if (wa.empty()) return true;
  int lo = wa.begin()->first;
  int hi = wa.rbegin()->first;
  for (int i = lo; i <= hi; ++i)
    for (int j = i; j <= hi; ++j)
      if (rank_invariant(a, i, j) > rank_invariant(b, i, j)) return false;
  return true;
}

bool lt(const Multisegment& b, const Multisegment& a) { return b != a && leq(b, a); }

std::vector<Multisegment> poset_elements(const Multisegment& a) {
  const std::size_t cap = poset_size_limit();
  std::unordered_set<Multisegment> seen{a};
  std::vector<Multisegment> frontier{a};
  while (!frontier.empty()) {
    std::vector<Multisegment> next;
    for (const auto& x : frontier)
      for (auto& c : children(x))
        if (seen.insert(c).second) {
          if (seen.size() > cap)
            throw SizeLimit("poset of " + format_multisegment(a) +
                            " exceeds " + std::to_string(cap) + " elements");
          next.push_back(std::move(c));
        }
    frontier = std::move(next);
  }
  std::vector<Multisegment> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

PosetSnapshot generate_poset(const Multisegment& a) {
  PosetSnapshot p;
  p.root = a;
  std::vector<Multisegment> all = poset_elements(a);

  std::unordered_map<Multisegment, std::vector<Multisegment>> kids;
  for (const auto& x : all) {
    auto cs = children(x);
    std::vector<Multisegment> covers;
    for (const auto& c : cs) {
      bool below_other = std::any_of(cs.begin(), cs.end(), [&](const Multisegment& o) {
        return o != c && leq(c, o);
      });
      if (!below_other) covers.push_back(c);
    }
    kids.emplace(x, std::move(covers));
  }

  // a strict linear extension: sum of rank invariants grows strictly downward
  Weight w = a.weight();
  auto rank_sum = [&](const Multisegment& x) {
    long long s = 0;
    if (w.empty()) return s;
    for (int i = w.begin()->first; i <= w.rbegin()->first; ++i)
      for (int j = i; j <= w.rbegin()->first; ++j) s += rank_invariant(x, i, j);
    return s;
  };
  std::vector<std::pair<long long, Multisegment>> order;
  for (const auto& x : all) order.emplace_back(rank_sum(x), x);
  std::sort(order.begin(), order.end());

  std::unordered_map<Multisegment, int> level;
  for (const auto& x : all) level[x] = -1;
  level[a] = 0;
  for (const auto& [rs, x] : order) {
    int lx = level[x];
    for (const auto& c : kids[x]) level[c] = std::max(level[c], lx + 1);
  }

  std::sort(all.begin(), all.end(), [&](const Multisegment& x, const Multisegment& y) {
    int lx = level[x], ly = level[y];
    if (lx != ly) return lx < ly;
    return x < y;
  });
  p.elements = all;
  std::unordered_map<Multisegment, int> idx;
  for (int i = 0; i < static_cast<int>(all.size()); ++i) idx[all[i]] = i;
  for (int i = 0; i < static_cast<int>(all.size()); ++i)
    for (const auto& c : kids[all[i]]) p.cover_edges.emplace_back(i, idx[c]);
  std::sort(p.cover_edges.begin(), p.cover_edges.end());
  for (const auto& x : all) p.levels[x] = level[x];
  return p;
}

int PosetSnapshot::index_of(const Multisegment& b) const {
  auto it = std::find(elements.begin(), elements.end(), b);
  return it == elements.end() ? -1 : static_cast<int>(it - elements.begin());
}

const Multisegment& PosetSnapshot::minimum() const { return elements.back(); }

Multisegment minimal_element(const Weight& w0) {
  Weight w;
  for (const auto& [k, v] : w0)
    if (v > 0) w[k] = v;
  Multisegment out;
  while (!w.empty()) {
    // the maximal segment for the canonical order: largest end, then smallest begin
    int e = w.rbegin()->first;
    int b = e;
    while (w.count(b - 1) && w[b - 1] > 0) --b;
    out.add(Segment(b, e));
    for (int x = b; x <= e; ++x)
      if (--w[x] == 0) w.erase(x);
  }
  return out;
}

Multisegment minimal_element(const Multisegment& a) { return minimal_element(a.weight()); }

std::string poset_dot(const PosetSnapshot& p) {
  std::string out = "digraph S {\n";
  for (std::size_t i = 0; i < p.elements.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" +
           format_multisegment(p.elements[i]) + "\"];\n";
  for (const auto& [u, v] : p.cover_edges)
    out += "  n" + std::to_string(u) + " -> n" + std::to_string(v) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace mseg
