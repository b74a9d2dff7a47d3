#include "mseg/ring.hpp"

#include <mutex>
#include <unordered_map>

#include "mseg/kl.hpp"
#include "mseg/poset.hpp"
#include "mseg/qpoly.hpp"
#include "mseg/reduce.hpp"

namespace mseg {

RingElement RingElement::pi(const Multisegment& a) {
  RingElement r(Basis::standard_pi);
  r.terms[a] = 1;
  return r;
}

RingElement RingElement::L(const Multisegment& a) {
  RingElement r(Basis::simple_L);
  r.terms[a] = 1;
  return r;
}

void RingElement::add(const Multisegment& a, std::int64_t c) {
  if (c == 0) return;
  auto& slot = terms[a];
  slot = checked_add(slot, c);
  if (slot == 0) terms.erase(a);
}

std::int64_t RingElement::coeff(const Multisegment& a) const {
  auto it = terms.find(a);
  return it == terms.end() ? 0 : it->second;
}

RingElement& RingElement::operator+=(const RingElement& o) {
  if (o.basis != basis) throw SizeMismatch("adding ring elements in different bases");
  for (const auto& [a, c] : o.terms) add(a, c);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  return *this += o.scaled(-1);
}

RingElement RingElement::scaled(std::int64_t c) const {
  RingElement r(basis);
  if (c == 0) return r;
  for (const auto& [a, x] : terms) r.terms[a] = checked_mul(x, c);
  return r;
}

std::string RingElement::str() const {
  if (terms.empty()) return "0";
  std::string out;
  const char* sym = basis == Basis::simple_L ? "L" : "pi";
  for (const auto& [a, c] : terms) {
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    std::int64_t mag = c < 0 ? -c : c;
    if (mag != 1) out += std::to_string(mag) + "*";
    out += std::string(sym) + "(" + format_multisegment(a) + ")";
  }
  return out;
}

namespace {

std::pair<Multisegment, int> normalized(const Multisegment& a) {
  if (a.empty()) return {a, 0};
  int t = a.begins().front();
  return {a.shifted(-t), t};
}

struct Caches {
  std::mutex mu;
  std::map<std::pair<Multisegment, int>, std::map<Multisegment, std::int64_t>> rows;
  std::map<std::pair<Multisegment, int>, RingElement> l_to_pi;
};

Caches& caches() {
  static Caches c;
  return c;
}

std::map<Multisegment, std::int64_t> shift_keys(const std::map<Multisegment, std::int64_t>& m, int t) {
  if (t == 0) return m;
  std::map<Multisegment, std::int64_t> out;
  for (const auto& [b, c] : m) out.emplace(b.shifted(t), c);
  return out;
}

std::int64_t multiplicity_raw(const Multisegment& b, const Multisegment& a, Route route) {
  if (route == Route::deg) return kl_multisegment(b, a).at_one();
  return multiplicity_sym(b, a);
}

const RingElement& l_to_pi_normalized(const Multisegment& a0, Route route) {
  auto key = std::make_pair(a0, static_cast<int>(route));
  {
    std::lock_guard lock(caches().mu);
    auto it = caches().l_to_pi.find(key);
    if (it != caches().l_to_pi.end()) return it->second;
  }
  // pi(a) = sum_b m(b,a) L_b, so L_a = pi(a) - sum_{b<a} m(b,a) L_b
  RingElement r = RingElement::pi(a0);
  for (const auto& [b, m] : m_matrix(a0, route)) {
    if (b == a0) continue;
    auto [b0, t] = normalized(b);
    const RingElement& lb = l_to_pi_normalized(b0, route);
    for (const auto& [c, x] : lb.terms) r.add(c.shifted(t), -checked_mul(m, x));
  }
  std::lock_guard lock(caches().mu);
  return caches().l_to_pi.emplace(key, std::move(r)).first->second;
}

}  // namespace

std::int64_t multiplicity(const Multisegment& b, const Multisegment& a, Route route) {
  if (!leq(b, a)) return 0;
  return multiplicity_raw(b, a, route);
}

std::map<Multisegment, std::int64_t> m_matrix(const Multisegment& a, Route route) {
  auto [a0, t] = normalized(a);
  auto key = std::make_pair(a0, static_cast<int>(route));
  {
    std::lock_guard lock(caches().mu);
    auto it = caches().rows.find(key);
    if (it != caches().rows.end()) return shift_keys(it->second, t);
  }
  std::map<Multisegment, std::int64_t> row;
  for (const auto& b : poset_elements(a0)) row[b] = multiplicity_raw(b, a0, route);
  {
    std::lock_guard lock(caches().mu);
    caches().rows.emplace(key, row);
  }
  return shift_keys(row, t);
}

RingElement convert(const RingElement& x, Basis target, Route route) {
  if (x.basis == target) return x;
  RingElement out(target);
  for (const auto& [a, c] : x.terms) {
    if (target == Basis::simple_L) {
      for (const auto& [b, m] : m_matrix(a, route)) out.add(b, checked_mul(c, m));
    } else {
      auto [a0, t] = normalized(a);
      for (const auto& [b, m] : l_to_pi_normalized(a0, route).terms)
        out.add(b.shifted(t), checked_mul(c, m));
    }
  }
  return out;
}

RingElement ring_mult(const RingElement& x, const RingElement& y, Route route) {
  RingElement xs = convert(x, Basis::standard_pi, route);
  RingElement ys = convert(y, Basis::standard_pi, route);
  RingElement out(Basis::standard_pi);
  for (const auto& [a, c] : xs.terms)
    for (const auto& [b, d] : ys.terms) out.add(a + b, checked_mul(c, d));
  return out;
}

Decomposition decompose_product(const Multisegment& a, const Multisegment& b, Route route) {
  RingElement p = ring_mult(RingElement::L(a), RingElement::L(b), route);
  return convert(p, Basis::simple_L, route).terms;
}

Multisegment gamma_truncate(const Multisegment& a, const Multisegment& gamma, Side side) {
  Multisegment out = a;
  for (const auto& [s, n] : gamma.entries()) {
    out.remove(s, n);
    auto t = side == Side::right ? make_segment(s.b, s.e - 1) : make_segment(s.b + 1, s.e);
    if (t) out.add(*t, n);
  }
  return out;
}

namespace {

std::int64_t binom(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void derive_pi(const Multisegment& a, int k, Side side, std::int64_t coef, RingElement& out) {
  std::vector<std::pair<Segment, int>> pool;
  for (const auto& [s, n] : a.entries())
    if ((side == Side::right ? s.e : s.b) == k) pool.emplace_back(s, n);
  std::vector<int> pick(pool.size(), 0);
  while (true) {
    Multisegment g;
    std::int64_t c = coef;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      g.add(pool[i].first, pick[i]);
      c = checked_mul(c, binom(pool[i].second, pick[i]));
    }
    out.add(gamma_truncate(a, g, side), c);
    std::size_t i = 0;
    while (i < pool.size() && pick[i] == pool[i].second) pick[i++] = 0;
    if (i == pool.size()) break;
    ++pick[i];
  }
}

}  // namespace

RingElement derivative_standard(const RingElement& x, int k, Side side) {
  RingElement xs = convert(x, Basis::standard_pi);
  RingElement out(Basis::standard_pi);
  for (const auto& [a, c] : xs.terms) derive_pi(a, k, side, c, out);
  return out;
}

Decomposition derivative_simple(const Multisegment& a, int k, Side side, Route route) {
  RingElement la = convert(RingElement::L(a), Basis::standard_pi, route);
  RingElement d(Basis::standard_pi);
  for (const auto& [x, c] : la.terms) derive_pi(x, k, side, c, d);
  return convert(d, Basis::simple_L, route).terms;
}

void ring_clear_cache() {
  std::lock_guard lock(caches().mu);
  caches().rows.clear();
  caches().l_to_pi.clear();
}

}  // namespace mseg
