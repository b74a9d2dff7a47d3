#include "mseg/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace mseg {

Perm::Perm(std::vector<int> one_line) : w_(std::move(one_line)) {
  std::vector<bool> seen(w_.size() + 1, false);
  for (int x : w_) {
    if (x < 1 || x > n() || seen[static_cast<std::size_t>(x)])
      throw BadRange("not a permutation: " + str());
    seen[static_cast<std::size_t>(x)] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  return Perm(std::move(w));
}

Perm Perm::simple(int n, int i) { return identity(n).right_mul(i); }

Perm Perm::inverse() const {
  std::vector<int> v(w_.size());
  for (int i = 1; i <= n(); ++i) v[static_cast<std::size_t>((*this)(i) - 1)] = i;
  Perm p;
  p.w_ = std::move(v);
  return p;
}

Perm Perm::left_mul(int i) const {
  if (i < 1 || i >= n()) throw BadRange("generator index " + std::to_string(i));
  Perm p = *this;
  for (auto& x : p.w_) {
    if (x == i)
      x = i + 1;
    else if (x == i + 1)
      x = i;
  }
  return p;
}

Perm Perm::right_mul(int i) const {
  if (i < 1 || i >= n()) throw BadRange("generator index " + std::to_string(i));
  Perm p = *this;
  std::swap(p.w_[static_cast<std::size_t>(i - 1)], p.w_[static_cast<std::size_t>(i)]);
  return p;
}

bool Perm::is_identity() const {
  for (int i = 1; i <= n(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

std::uint64_t Perm::packed() const {
  if (n() > 16) throw SizeMismatch("packed permutations need n <= 16");
  std::uint64_t p = 0;
  for (int i = 0; i < n(); ++i)
    p |= static_cast<std::uint64_t>(w_[static_cast<std::size_t>(i)] - 1) << (4 * i);
  return p;
}

Perm Perm::unpack(std::uint64_t p, int n) {
  Perm w;
  w.w_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w.w_[static_cast<std::size_t>(i)] = static_cast<int>((p >> (4 * i)) & 15u) + 1;
  return w;
}

std::string Perm::str() const {
  std::string out;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(w_[i]);
  }
  return out;
}

Perm compose(const Perm& u, const Perm& v) {
  if (u.n() != v.n()) throw SizeMismatch("compose: different n");
  std::vector<int> w(static_cast<std::size_t>(u.n()));
  for (int i = 1; i <= u.n(); ++i) w[static_cast<std::size_t>(i - 1)] = u(v(i));
  return Perm(std::move(w));
}

Perm parse_perm(const std::string& text, int n) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) || c == ' ') t += c;
  bool cycles = t.find('(') != std::string::npos;
  auto read_int = [&](std::size_t& i) {
    std::size_t start = i;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (i == start) throw ParseError("expected integer", start);
    return std::stoi(t.substr(start, i - start));
  };
  if (!cycles) {
    std::vector<int> w;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < t.size() && t[i] == ' ') ++i;
    };
    skip();
    while (i < t.size()) {
      w.push_back(read_int(i));
      skip();
      if (i < t.size()) {
        if (t[i] != ',') throw ParseError("expected ','", i);
        ++i;
        skip();
      }
    }
    if (w.empty()) throw ParseError("empty permutation", 0);
    if (n != 0 && static_cast<int>(w.size()) != n)
      throw SizeMismatch("permutation has " + std::to_string(w.size()) + " entries, expected " +
                         std::to_string(n));
    try {
      return Perm(w);
    } catch (const BadRange&) {
      throw ParseError("not a permutation", 0);
    }
  }
  std::vector<std::vector<int>> cyc;
  int top = 0;
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i] == ' ') {
      ++i;
      continue;
    }
    if (t[i] != '(') throw ParseError("expected '('", i);
    ++i;
    std::vector<int> c;
    while (true) {
      while (i < t.size() && (t[i] == ' ' || t[i] == ',')) ++i;
      if (i < t.size() && t[i] == ')') {
        ++i;
        break;
      }
      if (i >= t.size()) throw ParseError("unterminated cycle", i);
      int x = read_int(i);
      if (x < 1) throw ParseError("cycle entries must be positive", i);
      c.push_back(x);
      top = std::max(top, x);
    }
    cyc.push_back(std::move(c));
  }
  if (n == 0) n = top;
  if (top > n) throw SizeMismatch("cycle entry exceeds n");
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  // cycles compose right to left
  for (auto it = cyc.rbegin(); it != cyc.rend(); ++it) {
    std::vector<int> c = *it;
    std::set<int> uniq(c.begin(), c.end());
    if (uniq.size() != c.size()) throw ParseError("repeated entry in cycle", 0);
    std::vector<int> step(static_cast<std::size_t>(n));
    std::iota(step.begin(), step.end(), 1);
    for (std::size_t j = 0; j < c.size(); ++j)
      step[static_cast<std::size_t>(c[j] - 1)] = c[(j + 1) % c.size()];
    std::vector<int> nw(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) nw[static_cast<std::size_t>(x)] = step[static_cast<std::size_t>(w[static_cast<std::size_t>(x)] - 1)];
    w = std::move(nw);
  }
  return Perm(w);
}

int length(const Perm& w) {
  int inv = 0;
  for (int i = 1; i <= w.n(); ++i)
    for (int j = i + 1; j <= w.n(); ++j)
      if (w(i) > w(j)) ++inv;
  return inv;
}

bool bruhat_leq(const Perm& u, const Perm& w) {
  if (u.n() != w.n()) throw SizeMismatch("bruhat_leq: different n");
  int n = u.n();
  // rank counts r[j] = #{i' <= i : x(i') >= j}, compared row by row
  std::vector<int> diff(static_cast<std::size_t>(n + 2), 0);
  for (int i = 1; i <= n; ++i) {
    int a = u(i), b = w(i);
    if (a == b) continue;
    if (a < b) {
      for (int j = a + 1; j <= b; ++j) ++diff[static_cast<std::size_t>(j)];
    } else {
      for (int j = b + 1; j <= a; ++j)
        if (--diff[static_cast<std::size_t>(j)] < 0) return false;
    }
  }
  return true;
}

bool bruhat_lt(const Perm& u, const Perm& w) { return u != w && bruhat_leq(u, w); }

std::vector<int> left_descents(const Perm& w) {
  Perm inv = w.inverse();
  std::vector<int> out;
  for (int i = 1; i < w.n(); ++i)
    if (inv(i) > inv(i + 1)) out.push_back(i);
  return out;
}

std::vector<int> right_descents(const Perm& w) {
  std::vector<int> out;
  for (int i = 1; i < w.n(); ++i)
    if (w(i) > w(i + 1)) out.push_back(i);
  return out;
}

std::vector<Perm> all_perms(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  std::vector<Perm> out;
  do {
    out.emplace_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

std::vector<Perm> bruhat_lower_covers(const Perm& w) {
  std::vector<Perm> out;
  std::vector<int> v = w.one_line();
  int n = w.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (v[static_cast<std::size_t>(i)] < v[static_cast<std::size_t>(j)]) continue;
      bool cover = true;
      for (int k = i + 1; k < j && cover; ++k)
        if (v[static_cast<std::size_t>(k)] < v[static_cast<std::size_t>(i)] &&
            v[static_cast<std::size_t>(k)] > v[static_cast<std::size_t>(j)])
          cover = false;
      if (!cover) continue;
      std::vector<int> u = v;
      std::swap(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(j)]);
      out.emplace_back(std::move(u));
    }
  return out;
}

GeneratorSet::GeneratorSet(int n_, std::vector<int> m) : n(n_), members(std::move(m)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (int i : members)
    if (i < 1 || i >= n) throw BadRange("generator index " + std::to_string(i) + " for n=" + std::to_string(n));
}

bool GeneratorSet::contains(int i) const {
  return std::binary_search(members.begin(), members.end(), i);
}

std::string GeneratorSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ",";
    out += "s" + std::to_string(members[i]);
  }
  return out + "}";
}

bool in_quotient(const Perm& v, const GeneratorSet& J1, const GeneratorSet& J2) {
  Perm inv = v.inverse();
  for (int i : J1.members)
    if (inv(i) > inv(i + 1)) return false;
  for (int i : J2.members)
    if (v(i) > v(i + 1)) return false;
  return true;
}

bool in_right_quotient(const Perm& v, const GeneratorSet& J) {
  return in_quotient(v, GeneratorSet(v.n(), {}), J);
}

std::vector<Perm> coset_reps(const GeneratorSet& J1, const GeneratorSet& J2) {
  int n = std::max(J1.n, J2.n);
  std::vector<Perm> out;
  for (auto& w : all_perms(n))
    if (in_quotient(w, J1, J2)) out.push_back(std::move(w));
  return out;
}

std::vector<Perm> parabolic_subgroup(const GeneratorSet& J) {
  // products of arbitrary permutations of each block of consecutive indices joined by J
  std::vector<std::pair<int, int>> blocks;
  for (int i = 1; i <= J.n;) {
    int hi = i;
    while (hi < J.n && J.contains(hi)) ++hi;
    blocks.emplace_back(i, hi);
    i = hi + 1;
  }
  std::vector<int> w(static_cast<std::size_t>(J.n));
  std::iota(w.begin(), w.end(), 1);
  std::vector<Perm> out;
  std::function<void(std::size_t)> rec = [&](std::size_t bi) {
    if (bi == blocks.size()) {
      out.emplace_back(w);
      return;
    }
    auto first = w.begin() + (blocks[bi].first - 1), last = w.begin() + blocks[bi].second;
    std::sort(first, last);
    do rec(bi + 1);
    while (std::next_permutation(first, last));
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

Perm longest_element(const GeneratorSet& J) {
  std::vector<int> w(static_cast<std::size_t>(J.n));
  int i = 1;
  while (i <= J.n) {
    int hi = i;
    while (hi < J.n && J.contains(hi)) ++hi;
    for (int x = i; x <= hi; ++x) w[static_cast<std::size_t>(x - 1)] = hi - (x - i);
    i = hi + 1;
  }
  return Perm(std::move(w));
}

Perm max_double_coset(const Perm& v, const GeneratorSet& J1, const GeneratorSet& J2) {
  Perm w = v;
  bool moved = true;
  while (moved) {
    moved = false;
    Perm inv = w.inverse();
    for (int i : J1.members)
      if (inv(i) < inv(i + 1)) {
        w = w.left_mul(i);
        moved = true;
        break;
      }
    if (moved) continue;
    for (int i : J2.members)
      if (w(i) < w(i + 1)) {
        w = w.right_mul(i);
        moved = true;
        break;
      }
  }
  return w;
}

Perm min_double_coset(const Perm& v, const GeneratorSet& J1, const GeneratorSet& J2) {
  Perm w = v;
  bool moved = true;
  while (moved) {
    moved = false;
    Perm inv = w.inverse();
    for (int i : J1.members)
      if (inv(i) > inv(i + 1)) {
        w = w.left_mul(i);
        moved = true;
        break;
      }
    if (moved) continue;
    for (int i : J2.members)
      if (w(i) > w(i + 1)) {
        w = w.right_mul(i);
        moved = true;
        break;
      }
  }
  return w;
}

bool is_ordinary(const Multisegment& a) {
  auto b = a.begins();
  auto e = a.ends();
  return std::adjacent_find(b.begin(), b.end()) == b.end() &&
         std::adjacent_find(e.begin(), e.end()) == e.end();
}

bool is_parabolic_type(const Multisegment& a) {
  if (a.empty()) return true;
  auto b = a.begins();
  auto e = a.ends();
  return b.back() <= e.front();
}

bool is_symmetric(const Multisegment& a) {
  if (!is_ordinary(a)) return false;
  if (a.empty()) return true;
  return a.begins().back() <= a.ends().front();
}

namespace {

GeneratorSet repeats(const std::vector<int>& xs) {
  std::vector<int> m;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (xs[i] == xs[i + 1]) m.push_back(static_cast<int>(i) + 1);
  return GeneratorSet(static_cast<int>(xs.size()), m);
}

}  // namespace

GeneratorSet ends_generators(const Multisegment& a_id) { return repeats(a_id.ends()); }
GeneratorSet begins_generators(const Multisegment& a_id) { return repeats(a_id.begins()); }

Multisegment phi(const Multisegment& a_id, const Perm& w) {
  if (!is_parabolic_type(a_id))
    throw NotSymmetric(format_multisegment(a_id) + " is not of parabolic type");
  auto b = a_id.begins();
  auto e = a_id.ends();
  if (w.n() != static_cast<int>(b.size()))
    throw SizeMismatch("permutation size " + std::to_string(w.n()) + " vs " +
                       std::to_string(b.size()) + " segments");
  if (!in_quotient(w, ends_generators(a_id), begins_generators(a_id)))
    throw NotInQuotient(w.str() + " is not a minimal double coset representative");
  Multisegment out;
  for (int i = 1; i <= w.n(); ++i)
    out.add(Segment(b[static_cast<std::size_t>(i - 1)], e[static_cast<std::size_t>(w(i) - 1)]));
  return out;
}

Perm phi_inv(const Multisegment& a_id, const Multisegment& x) {
  if (!is_parabolic_type(a_id))
    throw NotSymmetric(format_multisegment(a_id) + " is not of parabolic type");
  auto b = a_id.begins();
  auto e = a_id.ends();
  if (x.begins() != b || x.ends() != e)
    throw NotInImage(format_multisegment(x) + " has other begins or ends than " +
                     format_multisegment(a_id));
  std::vector<Segment> segs = x.segments();
  std::sort(segs.begin(), segs.end(), [](const Segment& s, const Segment& t) {
    return s.b != t.b ? s.b < t.b : s.e < t.e;
  });
  std::map<int, int> next_end_index;
  for (std::size_t j = e.size(); j-- > 0;) next_end_index[e[j]] = static_cast<int>(j) + 1;
  std::vector<int> w;
  for (const auto& s : segs) w.push_back(next_end_index[s.e]++);
  return Perm(w);
}

std::vector<std::vector<int>> zelevinsky_matrix(const Multisegment& b) {
  Weight wt = b.weight();
  if (wt.empty()) return {};
  int base = wt.begin()->first;
  int r = wt.rbegin()->first - base + 1;
  std::vector<std::vector<int>> x(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
  for (const auto& [s, n] : b.entries()) {
    x[static_cast<std::size_t>(s.b - base)][static_cast<std::size_t>(s.e - base)] += n;
    for (int i = s.b + 1; i <= s.e; ++i)
      x[static_cast<std::size_t>(i - base)][static_cast<std::size_t>(i - 1 - base)] += n;
  }
  return x;
}

namespace {

std::vector<int> block_starts(const Multisegment& b) {
  Weight wt = b.weight();
  std::vector<int> starts{1};
  if (wt.empty()) return starts;
  int base = wt.begin()->first;
  for (int k = base; k <= wt.rbegin()->first; ++k) {
    auto it = wt.find(k);
    starts.push_back(starts.back() + (it == wt.end() ? 0 : it->second));
  }
  return starts;
}

}  // namespace

bool in_zelevinsky_set(const Multisegment& b, const Perm& w) {
  auto x = zelevinsky_matrix(b);
  auto st = block_starts(b);
  int r = static_cast<int>(x.size());
  if (w.n() != b.degree()) return false;
  for (int i = 0; i < r; ++i) {
    std::vector<int> cnt(static_cast<std::size_t>(r), 0);
    for (int p = st[static_cast<std::size_t>(i)]; p < st[static_cast<std::size_t>(i + 1)]; ++p) {
      int v = w(p);
      int j = static_cast<int>(std::upper_bound(st.begin(), st.end(), v) - st.begin()) - 1;
      ++cnt[static_cast<std::size_t>(j)];
    }
    if (cnt != x[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

Perm zelevinsky_permutation(const Multisegment& b) {
  auto x = zelevinsky_matrix(b);
  auto st = block_starts(b);
  int r = static_cast<int>(x.size());
  int n = b.degree();
  std::vector<int> w(static_cast<std::size_t>(n), 0);
  // values of target block j handed out from the top, domain blocks in increasing order
  std::vector<std::vector<std::vector<int>>> vals(static_cast<std::size_t>(r),
                                                  std::vector<std::vector<int>>(static_cast<std::size_t>(r)));
  for (int j = 0; j < r; ++j) {
    int top = st[static_cast<std::size_t>(j + 1)] - 1;
    for (int i = 0; i < r; ++i)
      for (int c = 0; c < x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; ++c)
        vals[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].push_back(top--);
  }
  // inside a domain block, earlier positions take larger target blocks and larger values
  for (int i = 0; i < r; ++i) {
    int p = st[static_cast<std::size_t>(i)];
    for (int j = r - 1; j >= 0; --j)
      for (int v : vals[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) w[static_cast<std::size_t>(p++ - 1)] = v;
  }
  return Perm(w);
}

std::vector<int> Partition::sigma2() const {
  std::vector<int> x;
  for (std::size_t i = 0; i < parts.size(); ++i) x.push_back(parts[i] + static_cast<int>(i) + 1);
  return x;
}

std::string Partition::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts[i]);
  }
  return out + ")";
}

PartitionBlocks to_blocks(const Partition& lambda, int l) {
  std::map<int, int> mult;
  for (int p : lambda.parts) {
    if (p < 0 || p > l) throw ShapeMismatch("part " + std::to_string(p) + " outside [0," + std::to_string(l) + "]");
    ++mult[p];
  }
  PartitionBlocks out;
  int prev = 0;
  bool first = true;
  for (const auto& [v, m] : mult) {
    if (v == l) break;
    out.b.push_back(first ? v : v - prev);
    out.a.push_back(m);
    prev = v;
    first = false;
  }
  out.b.push_back(first ? l : l - prev);
  out.a.push_back(mult.count(l) ? mult[l] : 0);
  return out;
}

Partition from_blocks(const PartitionBlocks& blocks) {
  if (blocks.a.size() != blocks.b.size()) throw ShapeMismatch("block lists differ in length");
  Partition p;
  int v = 0;
  for (std::size_t i = 0; i < blocks.a.size(); ++i) {
    v += blocks.b[i];
    p.parts.insert(p.parts.end(), static_cast<std::size_t>(blocks.a[i]), v);
  }
  return p;
}

std::vector<Partition> partitions_in_box(int r, int l) {
  std::vector<Partition> out;
  std::vector<int> cur(static_cast<std::size_t>(r), 0);
  while (true) {
    out.push_back(Partition{cur});
    int i = r - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == l) --i;
    if (i < 0) break;
    int v = cur[static_cast<std::size_t>(i)] + 1;
    for (int j = i; j < r; ++j) cur[static_cast<std::size_t>(j)] = v;
    if (r == 0) break;
  }
  return out;
}

bool partition_leq(const Partition& x, const Partition& y) {
  if (x.parts.size() != y.parts.size()) return false;
  for (std::size_t i = 0; i < x.parts.size(); ++i)
    if (x.parts[i] > y.parts[i]) return false;
  return true;
}

PartitionImage partition_maps(const Partition& lambda, int r, int l, const Multisegment& a_ref) {
  if (static_cast<int>(lambda.parts.size()) != r)
    throw ShapeMismatch("partition has " + std::to_string(lambda.parts.size()) + " parts, expected " +
                        std::to_string(r));
  for (std::size_t i = 0; i < lambda.parts.size(); ++i)
    if (lambda.parts[i] < 0 || lambda.parts[i] > l || (i && lambda.parts[i] < lambda.parts[i - 1]))
      throw ShapeMismatch("not a partition in the " + std::to_string(r) + "x" + std::to_string(l) + " box");
  if (a_ref.size() != r + l || !is_parabolic_type(a_ref))
    throw ShapeMismatch(format_multisegment(a_ref) + " has the wrong shape");
  auto begins = a_ref.begins();
  auto ends = a_ref.ends();
  if (std::adjacent_find(begins.begin(), begins.end()) != begins.end())
    throw ShapeMismatch("reference multisegment has repeated begins");
  int k = ends.back();
  for (int e : ends)
    if (e != k && e != k - 1) throw ShapeMismatch("reference ends must lie in {k-1,k}");
  PartitionImage img;
  img.x_lambda = lambda.sigma2();
  std::vector<bool> low(static_cast<std::size_t>(r + l), false);
  for (int x : img.x_lambda) low[static_cast<std::size_t>(x - 1)] = true;
  for (int i = 0; i < r + l; ++i)
    img.a_lambda.add(Segment(begins[static_cast<std::size_t>(i)], low[static_cast<std::size_t>(i)] ? k - 1 : k));
  return img;
}

}  // namespace mseg
