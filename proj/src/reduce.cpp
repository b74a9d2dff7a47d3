#include "mseg/reduce.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "mseg/kl.hpp"
#include "mseg/poset.hpp"

namespace mseg {

std::string format_step(const TruncationStep& s) {
  return (s.side == Side::right ? "R" : "L") + std::to_string(s.k);
}

Multisegment mirror(const Multisegment& a) {
  Multisegment out;
  for (const auto& [s, n] : a.entries()) out.add(Segment(-s.e, -s.b), n);
  return out;
}

Multisegment truncate(const Multisegment& a, int k, Side side) {
  Multisegment out;
  for (const auto& [s, n] : a.entries()) {
    if (side == Side::right && s.e == k) {
      if (auto t = make_segment(s.b, k - 1)) out.add(*t, n);
    } else if (side == Side::left && s.b == k) {
      if (auto t = make_segment(k + 1, s.e)) out.add(*t, n);
    } else {
      out.add(s, n);
    }
  }
  return out;
}

Multisegment truncate(const Multisegment& a, const TruncationStep& step) {
  return truncate(a, step.k, step.side);
}

Multisegment truncate_seq(const Multisegment& a, const std::vector<TruncationStep>& steps) {
  Multisegment cur = a;
  for (const auto& s : steps) cur = truncate(cur, s);
  return cur;
}

bool hypothesis_Hk(const Multisegment& b, const Multisegment& a, int k, Side side) {
  if (side == Side::left) return hypothesis_Hk(mirror(b), mirror(a), -k, Side::right);
  if (!leq(b, a))
    throw NotComparable(format_multisegment(b) + " is not below " + format_multisegment(a));
  if (truncate(b, k).degree() != truncate(a, k).degree()) return false;
  for (const auto& [s, n] : b.entries()) {
    if (s.e != k - 1) continue;
    for (const auto& [t, m] : b.entries())
      if (t.e == k && linked(s, t)) return false;
  }
  return true;
}

bool in_S_a_k(const Multisegment& b, const Multisegment& a, int k, Side side) {
  return leq(b, a) && hypothesis_Hk(b, a, k, side);
}

std::vector<Multisegment> S_a_k(const Multisegment& a, int k, Side side) {
  std::vector<Multisegment> out;
  for (const auto& b : poset_elements(a))
    if (hypothesis_Hk(b, a, k, side)) out.push_back(b);
  return out;
}

Multisegment psi_k(const Multisegment& b, const Multisegment& a, int k, Side side) {
  if (!in_S_a_k(b, a, k, side))
    throw NotInDomain(format_multisegment(b) + " is not in S(" + format_multisegment(a) + ")_" +
                      std::to_string(k));
  return truncate(b, k, side);
}

namespace {

void choose_sub(const std::vector<std::pair<Segment, int>>& pool, std::size_t i, int left,
                Multisegment& cur, std::vector<Multisegment>& out) {
  if (left == 0) {
    out.push_back(cur);
    return;
  }
  if (i == pool.size()) return;
  for (int t = 0; t <= std::min(left, pool[i].second); ++t) {
    cur.add(pool[i].first, t);
    choose_sub(pool, i + 1, left - t, cur, out);
    if (t > 0) cur.remove(pool[i].first, t);
  }
}

}  // namespace

Multisegment psi_k_inv(const Multisegment& d, const Multisegment& a, int k, Side side) {
  if (side == Side::left) return mirror(psi_k_inv(mirror(d), mirror(a), -k, Side::right));
  if (!leq(d, truncate(a, k)))
    throw NotInDomain(format_multisegment(d) + " is not below " +
                      format_multisegment(truncate(a, k)));
  int lk = a.ends_at(k);
  std::vector<std::pair<Segment, int>> pool;
  for (const auto& [s, n] : d.entries())
    if (s.e == k - 1) pool.emplace_back(s, n);
  std::set<Multisegment> found;
  for (int t = 0; t <= lk; ++t) {
    std::vector<Multisegment> picks;
    Multisegment cur;
    choose_sub(pool, 0, lk - t, cur, picks);
    for (const auto& g : picks) {
      Multisegment c = d;
      for (const auto& [s, n] : g.entries()) {
        c.remove(s, n);
        c.add(Segment(s.b, k), n);
      }
      c.add(Segment(k, k), t);
      if (leq(c, a) && hypothesis_Hk(c, a, k)) found.insert(c);
    }
  }
  if (found.size() != 1)
    throw NotInDomain("lifting " + format_multisegment(d) + " into S(" + format_multisegment(a) +
                      ")_" + std::to_string(k) + " gave " + std::to_string(found.size()) +
                      " candidates");
  return *found.begin();
}

namespace {

bool has_end(const Multisegment& a, int x) { return a.ends_at(x) > 0; }

// extend the segment d (if given) and every segment ending in [lo, hi] by one on the right
Multisegment extend_ends(const Multisegment& a, int lo, int hi, std::optional<Segment> d) {
  Multisegment out;
  for (const auto& [s, n] : a.entries()) {
    if (s.e >= lo && s.e <= hi)
      out.add(Segment(s.b, s.e + 1), n);
    else
      out.add(s, n);
  }
  if (d) {
    out.remove(*d);
    out.add(Segment(d->b, d->e + 1));
  }
  return out;
}

std::vector<TruncationStep> right_script(int lo, int hi) {
  std::vector<TruncationStep> r;
  for (int x = lo; x <= hi; ++x) r.push_back({Side::right, x});
  return r;
}

std::vector<TruncationStep> mirrored(const std::vector<TruncationStep>& steps) {
  std::vector<TruncationStep> r;
  for (const auto& s : steps)
    r.push_back({s.side == Side::right ? Side::left : Side::right, -s.k});
  return r;
}

// one step removing the smallest repeated end; returns false when ends are distinct
bool ends_step(Multisegment& cur, Segment& script, std::vector<TruncationStep>& undo) {
  auto ends = cur.ends();
  auto it = std::adjacent_find(ends.begin(), ends.end());
  if (it == ends.end()) return false;
  int e = *it;
  Segment di = cur.ending_at(e).back();  // smallest begin among the segments ending at e
  int l = e + 1;
  while (has_end(cur, l)) ++l;
  cur = extend_ends(cur, e + 1, l - 1, di);
  script = Segment(e + 1, l);
  undo = right_script(e + 1, l);
  return true;
}

void append_reversed(std::vector<TruncationStep>& replay,
                     const std::vector<std::vector<TruncationStep>>& undos) {
  for (auto it = undos.rbegin(); it != undos.rend(); ++it)
    replay.insert(replay.end(), it->begin(), it->end());
}

}  // namespace

OrdinaryReduction reduce_to_ordinary(const Multisegment& a) {
  OrdinaryReduction r;
  Multisegment cur = a;
  std::vector<std::vector<TruncationStep>> undos;
  Segment script;
  std::vector<TruncationStep> undo;
  while (ends_step(cur, script, undo)) {
    r.c1.push_back(script);
    undos.push_back(undo);
  }
  Multisegment m = mirror(cur);
  while (ends_step(m, script, undo)) {
    r.c2.push_back(Segment(-script.e, -script.b));
    undos.push_back(mirrored(undo));
  }
  r.b = mirror(m);
  append_reversed(r.replay, undos);
  return r;
}

SymmetrizationCertificate symmetrize(const Multisegment& a) {
  SymmetrizationCertificate cert;
  cert.source = a;
  OrdinaryReduction ord = reduce_to_ordinary(a);
  cert.c1 = ord.c1;
  cert.c2 = ord.c2;
  Multisegment cur = ord.b;
  std::vector<std::vector<TruncationStep>> undos;
  while (!cur.empty() && cur.ends().front() < cur.begins().back()) {
    int e = cur.ends().front();
    int l = e + 1;
    while (has_end(cur, l)) ++l;
    cur = extend_ends(cur, e, l - 1, std::nullopt);
    cert.c3.push_back(Segment(e + 1, l));
    undos.push_back(right_script(e + 1, l));
  }
  cert.sym = cur;
  append_reversed(cert.replay, undos);
  cert.replay.insert(cert.replay.end(), ord.replay.begin(), ord.replay.end());
  auto b = cur.begins();
  auto e = cur.ends();
  for (std::size_t i = 0; i < b.size(); ++i) cert.a_id.add(Segment(b[i], e[i]));
  cert.w = cur.empty() ? Perm::identity(0) : phi_inv(cert.a_id, cur);
  return cert;
}

Multisegment lift_along(const Multisegment& b, const Multisegment& top,
                        const std::vector<TruncationStep>& replay) {
  std::vector<Multisegment> tops{top};
  for (const auto& s : replay) tops.push_back(truncate(tops.back(), s));
  if (!leq(b, tops.back()))
    throw NotComparable(format_multisegment(b) + " is not below " + format_multisegment(tops.back()));
  Multisegment cur = b;
  for (std::size_t i = replay.size(); i-- > 0;)
    cur = psi_k_inv(cur, tops[i], replay[i].k, replay[i].side);
  return cur;
}

Multisegment transport(const Multisegment& b, const SymmetrizationCertificate& cert) {
  return lift_along(b, cert.sym, cert.replay);
}

namespace {

struct CertCache {
  std::mutex mu;
  std::map<Multisegment, SymmetrizationCertificate> certs;
};

CertCache& cert_cache() {
  static CertCache c;
  return c;
}

}  // namespace

std::int64_t multiplicity_sym(const Multisegment& b, const Multisegment& a) {
  if (!leq(b, a)) return 0;
  if (a.empty()) return 1;
  int t = a.begins().front();
  Multisegment a0 = a.shifted(-t);
  Multisegment b0 = b.shifted(-t);
  SymmetrizationCertificate cert;
  {
    std::lock_guard lock(cert_cache().mu);
    auto it = cert_cache().certs.find(a0);
    if (it != cert_cache().certs.end()) cert = it->second;
  }
  if (cert.source != a0 || a0.empty()) {
    cert = symmetrize(a0);
    std::lock_guard lock(cert_cache().mu);
    cert_cache().certs.emplace(a0, cert);
  }
  Multisegment bs = transport(b0, cert);
  Perm v = phi_inv(cert.a_id, bs);
  return kl_poly(cert.w, v).at_one();
}

std::optional<RelationMap> relation_map(const Multisegment& a, const Multisegment& a2) {
  if (a.size() != a2.size()) return std::nullopt;
  auto uniq = [](std::vector<int> v) {
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  auto b1 = uniq(a.begins()), b2 = uniq(a2.begins());
  auto e1 = uniq(a.ends()), e2 = uniq(a2.ends());
  if (b1.size() != b2.size() || e1.size() != e2.size()) return std::nullopt;
  RelationMap rm;
  std::map<int, int> bm, em;
  for (std::size_t i = 0; i < b1.size(); ++i) {
    rm.begins.emplace_back(b1[i], b2[i]);
    bm[b1[i]] = b2[i];
  }
  for (std::size_t i = 0; i < e1.size(); ++i) {
    rm.ends.emplace_back(e1[i], e2[i]);
    em[e1[i]] = e2[i];
  }
  Multisegment img;
  std::vector<std::pair<Segment, Segment>> pairs;
  for (const auto& [s, n] : a.entries()) {
    if (bm[s.b] > em[s.e]) return std::nullopt;
    Segment t(bm[s.b], em[s.e]);
    img.add(t, n);
    pairs.emplace_back(s, t);
  }
  if (img != a2) return std::nullopt;
  for (const auto& [s, t] : pairs)
    for (const auto& [s2, t2] : pairs)
      if (segment_relation(s, s2) != segment_relation(t, t2)) return std::nullopt;
  return rm;
}

bool relation_type_equal(const Multisegment& a, const Multisegment& a2) {
  return relation_map(a, a2).has_value();
}

Multisegment xi_transport(const Multisegment& b, const Multisegment& a, const Multisegment& a2) {
  auto rm = relation_map(a, a2);
  if (!rm)
    throw NoBijection(format_multisegment(a) + " and " + format_multisegment(a2) +
                      " have different relation types");
  if (!leq(b, a))
    throw NotComparable(format_multisegment(b) + " is not below " + format_multisegment(a));
  std::map<int, int> bm(rm->begins.begin(), rm->begins.end());
  std::map<int, int> em(rm->ends.begin(), rm->ends.end());
  Multisegment out;
  for (const auto& [s, n] : b.entries()) out.add(Segment(bm.at(s.b), em.at(s.e)), n);
  return out;
}

Multisegment stretch(const Multisegment& a, int x) {
  Multisegment out;
  for (const auto& [s, n] : a.entries())
    out.add(Segment(s.b + (s.b > x ? 1 : 0), s.e + (s.e >= x ? 1 : 0)), n);
  return out;
}

Classification classify_poset(const Multisegment& a) {
  Classification c;
  c.n = a.size();
  c.J1 = ends_generators(a);
  c.J2 = begins_generators(a);
  Multisegment cur = a;
  std::vector<std::vector<TruncationStep>> undos;
  while (!is_parabolic_type(cur)) {
    int e = cur.ends().front();
    int l = e + 1;
    while (has_end(cur, l)) ++l;
    cur = extend_ends(cur, e, l - 1, std::nullopt);
    undos.push_back(right_script(e + 1, l));
  }
  append_reversed(c.replay, undos);
  c.lifted = cur;
  auto b = cur.begins();
  auto e = cur.ends();
  for (std::size_t i = 0; i < b.size(); ++i) c.model.add(Segment(b[i], e[i]));
  c.w = cur.empty() ? Perm::identity(0) : phi_inv(c.model, cur);
  c.floor = lift_along(minimal_element(a), cur, c.replay);
  return c;
}

}  // namespace mseg
