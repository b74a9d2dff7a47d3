#include "mseg/formulas.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <set>
#include <tuple>

#include "mseg/error.hpp"
#include "mseg/kl.hpp"
#include "mseg/poset.hpp"

namespace mseg {

std::vector<Segment> segments_ending_at(const Multisegment& a, int k) {
  std::vector<Segment> out;
  for (const auto& [s, n] : a.entries())
    if (s.e == k)
      for (int i = 0; i < n; ++i) out.push_back(s);
  std::sort(out.begin(), out.end(), [](const Segment& x, const Segment& y) { return x.b < y.b; });
  return out;
}

namespace {

template <class F>
void for_each_gamma(const Multisegment& a, int k, F&& f) {
  std::vector<std::pair<Segment, int>> pool;
  for (const auto& [s, n] : a.entries())
    if (s.e == k) pool.emplace_back(s, n);
  std::vector<int> pick(pool.size(), 0);
  while (true) {
    Multisegment g;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (pick[i]) g.add(pool[i].first, pick[i]);
    f(g);
    std::size_t i = 0;
    while (i < pool.size() && pick[i] == pool[i].second) pick[i++] = 0;
    if (i == pool.size()) break;
    ++pick[i];
  }
}

Multisegment sorted_model(const Multisegment& a) {
  auto b = a.begins();
  auto e = a.ends();
  Multisegment out;
  for (std::size_t i = 0; i < b.size(); ++i) out.add(Segment(b[i], e[i]));
  return out;
}

Multisegment replace_segments(const Multisegment& a, const std::vector<Segment>& from,
                              const std::vector<Segment>& to) {
  Multisegment out = a;
  for (const auto& s : from) out.remove(s);
  for (const auto& s : to) out.add(s);
  return out;
}

}  // namespace

bool preceq_k(const Multisegment& b, const Multisegment& a, int k, Side side) {
  if (side == Side::left) return preceq_k(mirror(b), mirror(a), -k, Side::right);
  bool found = false;
  Weight wb = b.weight();
  for_each_gamma(a, k, [&](const Multisegment& g) {
    if (found) return;
    Multisegment ag = gamma_truncate(a, g, Side::right);
    if (ag.weight() == wb && leq(b, ag)) found = true;
  });
  return found;
}

std::vector<Multisegment> gamma_set(const Multisegment& a, int k, std::optional<int> i,
                                    Side side) {
  if (side == Side::left) {
    std::vector<Multisegment> out;
    for (const auto& b : gamma_set(mirror(a), -k, i, Side::right)) out.push_back(mirror(b));
    std::sort(out.begin(), out.end());
    return out;
  }
  std::set<Multisegment> acc;
  for_each_gamma(a, k, [&](const Multisegment& g) {
    if (i && g.size() != *i) return;
    for (auto& b : poset_elements(gamma_truncate(a, g, Side::right))) acc.insert(std::move(b));
  });
  return {acc.begin(), acc.end()};
}

ThetaModels theta_models(const Multisegment& a_id, int k, int r0) {
  if (!is_parabolic_type(a_id) || sorted_model(a_id) != a_id || a_id.ends_at(k + 1) != 0)
    throw ShapeMismatch(format_multisegment(a_id) + " is not an identity model for k=" +
                        std::to_string(k));
  auto ak = segments_ending_at(a_id, k);
  int lk = static_cast<int>(ak.size());
  if (lk == 0 || r0 < 0 || r0 > lk)
    throw ShapeMismatch("r0=" + std::to_string(r0) + " with l_k=" + std::to_string(lk));
  for (const auto& s : ak)
    if (s.b == k) throw ShapeMismatch(format_multisegment(a_id) + " contains [k]");
  std::vector<Segment> up, down;
  for (int i = r0; i < lk; ++i) up.push_back(Segment(ak[i].b, k + 1));
  for (int i = 0; i < r0; ++i) down.push_back(Segment(ak[i].b, k - 1));
  ThetaModels m;
  m.a1 = replace_segments(a_id, {ak.begin() + r0, ak.end()}, up);
  m.a2 = replace_segments(a_id, {ak.begin(), ak.begin() + r0}, down);
  return m;
}

Perm theta_t(const Multisegment& a_id, int k, int r0, const Perm& v) {
  ThetaModels m = theta_models(a_id, k, r0);
  Multisegment av = phi(m.a2, v);
  auto below = segments_ending_at(av, k - 1);
  auto at = segments_ending_at(av, k);
  std::vector<Segment> ext, sharp;
  for (int i = 0; i < r0; ++i) ext.push_back(Segment(below[i].b, k));
  Multisegment flat = replace_segments(av, {below.begin(), below.begin() + r0}, ext);
  for (const auto& s : at) sharp.push_back(Segment(s.b, k + 1));
  Multisegment sh = replace_segments(flat, at, sharp);
  Perm t = phi_inv(m.a1, sh);
  if (!in_quotient(t, ends_generators(m.a1), begins_generators(m.a1)) || phi(m.a1, t) != sh)
    throw ShapeMismatch("no t_v for " + v.str());
  return t;
}

namespace {

struct ThetaKey {
  Multisegment a_id;
  int k, r0;
  Perm t;
  auto operator<=>(const ThetaKey&) const = default;
};

const std::vector<Perm>& left_reps(const GeneratorSet& J) {
  static std::mutex mu;
  static std::map<std::pair<int, std::vector<int>>, std::vector<Perm>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(J.n, J.members);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, coset_reps(J, GeneratorSet(J.n, {}))).first;
  return it->second;
}

class ThetaSolver {
public:
  ThetaSolver(const Multisegment& a_id, int k, int r0, const Perm& t)
      : t_(t), J_(ends_generators(a_id)), none_(J_.n, {}) {
    ThetaModels m = theta_models(a_id, k, r0);
    J1_ = ends_generators(m.a1);
    for (auto& rho : parabolic_subgroup(J_))
      if (in_quotient(rho, J1_, none_)) rhos_.push_back(rho);
    ceiling_ = max_double_coset(t, J_, none_);
  }

  QPoly solve(const Perm& w) {
    auto done = known_.find(w);
    if (done != known_.end()) return done->second;
    Perm wt = max_double_coset(w, J_, none_);
    if (!bruhat_leq(wt, ceiling_)) return QPoly();
    // the cosets between w and the ceiling; quotients have the chain property, so
    // right multiplication by transpositions reaches all of them
    std::vector<Coset> up{{w, wt, length(wt)}};
    std::set<Perm> seen{w};
    for (std::size_t q = 0; q < up.size(); ++q) {
      Perm x = up[q].u;
      for (int i = 1; i <= x.n(); ++i)
        for (int j = i + 1; j <= x.n(); ++j) {
          if (x(i) > x(j)) continue;
          std::vector<int> v = x.one_line();
          std::swap(v[static_cast<std::size_t>(i - 1)], v[static_cast<std::size_t>(j - 1)]);
          Perm y = min_double_coset(Perm(std::move(v)), J_, none_);
          if (!seen.insert(y).second) continue;
          Perm yt = max_double_coset(y, J_, none_);
          if (bruhat_leq(yt, ceiling_)) up.push_back({y, yt, length(yt)});
        }
    }
    std::stable_sort(up.begin(), up.end(), [](const Coset& x, const Coset& y) { return x.len > y.len; });
    std::vector<const QPoly*> theta(up.size());
    for (std::size_t a = 0; a < up.size(); ++a) {
      auto it = known_.find(up[a].u);
      if (it == known_.end()) {
        QPoly th = lhs(up[a].u);
        for (std::size_t b = 0; b < a; ++b) {
          if (theta[b]->is_zero() || up[b].len == up[a].len || !bruhat_leq(up[a].top, up[b].top))
            continue;
          th -= *theta[b] * kl_poly(up[a].top, up[b].top);
        }
        it = known_.emplace(up[a].u, std::move(th)).first;
      }
      theta[a] = &it->second;
    }
    return known_.at(w);
  }

private:
  struct Coset {
    Perm u, top;
    int len;
  };

  QPoly lhs(const Perm& u) {
    QPoly s;
    for (const auto& rho : rhos_) {
      Perm x = compose(rho, u);
      QPoly p = double_parabolic_kl(x, t_, J1_, none_);
      if (!p.is_zero()) s += p * QPoly::q_power(1, length(rho));
    }
    return s;
  }

  Perm t_;
  GeneratorSet J_, none_, J1_;
  Perm ceiling_;
  std::vector<Perm> rhos_;
  std::map<Perm, QPoly> known_;
};

struct ThetaCache {
  std::mutex mu;
  std::map<ThetaKey, std::unique_ptr<ThetaSolver>> solvers;
};

ThetaCache& theta_cache() {
  static ThetaCache c;
  return c;
}

}  // namespace

QPoly theta_entry(const Multisegment& a_id, int k, int r0, const Perm& w, const Perm& t) {
  ThetaKey key{a_id, k, r0, t};
  std::lock_guard lock(theta_cache().mu);
  auto& solver = theta_cache().solvers[key];
  if (!solver) solver = std::make_unique<ThetaSolver>(a_id, k, r0, t);
  return solver->solve(w);
}

ThetaTable theta_table(const Multisegment& a_id, int k, int r0) {
  ThetaModels m = theta_models(a_id, k, r0);
  ThetaTable tab;
  tab.model = a_id;
  tab.J = ends_generators(a_id);
  tab.J1 = ends_generators(m.a1);
  tab.J2 = ends_generators(m.a2);
  tab.k = k;
  tab.r0 = r0;
  GeneratorSet none(tab.J.n, {});
  auto reps = coset_reps(tab.J, none);
  for (const auto& v : coset_reps(tab.J2, none)) {
    Perm t = theta_t(a_id, k, r0, v);
    tab.t.emplace(v, t);
    for (const auto& u : reps) {
      QPoly th = theta_entry(a_id, k, r0, u, t);
      if (!th.is_zero()) tab.entries.emplace(std::make_pair(u, t), th);
    }
  }
  return tab;
}

Decomposition derivative_normal_form(const Multisegment& a, int k, std::optional<int> drop) {
  Multisegment a_id = sorted_model(a);
  auto ak = segments_ending_at(a, k);
  int lk = static_cast<int>(ak.size());
  Perm w = phi_inv(a_id, a);
  if (phi(a_id, w) != a) throw ShapeMismatch(format_multisegment(a) + " is not in its model");
  Decomposition out;
  for (int r0 = drop.value_or(0); r0 <= (drop ? std::min(*drop, lk) : lk); ++r0) {
    ThetaModels m = theta_models(a_id, k, r0);
    std::vector<Multisegment> tops;
    for_each_gamma(a, k, [&](const Multisegment& g) {
      if (static_cast<int>(g.size()) == r0) tops.push_back(gamma_truncate(a, g, Side::right));
    });
    for (const auto& v : left_reps(ends_generators(m.a2))) {
      Multisegment b = phi(m.a2, v);
      if (std::none_of(tops.begin(), tops.end(),
                       [&](const Multisegment& top) { return leq(b, top); }))
        continue;
      QPoly th = theta_entry(a_id, k, r0, w, theta_t(a_id, k, r0, v));
      std::int64_t c = th.at_one();
      if (c != 0) out[b] += c;
    }
  }
  return out;
}

namespace {

// left lifts to distinct begins with max b + gap <= min e, then ends above k pushed up
DerivativeReduction normal_form_lift(const Multisegment& a, int k, int gap) {
  Multisegment cur = a;
  std::vector<TruncationStep> lifts;
  auto move_begins = [&](int from, std::optional<Segment> only) {
    Multisegment next;
    for (const auto& [s, n] : cur.entries()) {
      if (s.b != from) {
        next.add(s, n);
      } else if (!only) {
        next.add(Segment(s.b - 1, s.e), n);
      } else if (s == *only) {
        next.add(Segment(s.b - 1, s.e));
        if (n > 1) next.add(s, n - 1);
      } else {
        next.add(s, n);
      }
    }
    cur = next;
    lifts.push_back({Side::left, from - 1});
  };
  auto distinct_begins = [&] {
    std::set<int> seen;
    std::vector<int> out;
    for (int b : cur.begins())
      if (seen.insert(b).second) out.push_back(b);
    return out;
  };
  while (true) {
    auto bs = cur.begins();
    std::optional<int> i0;
    for (std::size_t i = 1; i < bs.size(); ++i)
      if (bs[i] == bs[i - 1]) {
        i0 = bs[i];
        break;
      }
    if (!i0) break;
    for (int j : distinct_begins())
      if (j < *i0) move_begins(j, std::nullopt);
    Segment longest = cur.beginning_at(*i0).front();
    for (const auto& s : cur.beginning_at(*i0))
      if (s.e > longest.e) longest = s;
    move_begins(*i0, longest);
  }
  while (!cur.empty() && cur.begins().back() + gap > cur.ends().front())
    for (int j : distinct_begins()) move_begins(j, std::nullopt);
  if (cur.ends_at(k + 1) > 0) {
    std::set<int> high;
    for (int e : cur.ends())
      if (e > k) high.insert(e);
    for (auto it = high.rbegin(); it != high.rend(); ++it) {
      Multisegment next;
      for (const auto& [s, n] : cur.entries())
        next.add(s.e == *it ? Segment(s.b, s.e + 1) : s, n);
      cur = next;
      lifts.push_back({Side::right, *it + 1});
    }
  }
  DerivativeReduction red;
  red.top = cur;
  red.replay.assign(lifts.rbegin(), lifts.rend());
  return red;
}

}  // namespace

DerivativeReduction derivative_reduction(const Multisegment& a, int k) {
  return normal_form_lift(a, k, 1);
}

Decomposition derivative_closed_form(const Multisegment& a, int k, Side side,
                                     std::optional<int> drop) {
  if (side == Side::left) {
    Decomposition out;
    for (const auto& [b, c] : derivative_closed_form(mirror(a), -k, Side::right, drop))
      out[mirror(b)] = c;
    return out;
  }
  if (a.ends_at(k) == 0) {
    if (drop.value_or(0) != 0) return {};
    return {{a, 1}};
  }
  DerivativeReduction red = derivative_reduction(a, k);
  Decomposition cur = derivative_normal_form(red.top, k, drop);
  Multisegment c = red.top;
  for (const auto& step : red.replay) {
    Multisegment c2 = truncate(c, step);
    Decomposition next;
    for (const auto& [d, n] : cur) {
      if (!hypothesis_Hk(d, d, step.k, step.side)) continue;
      Multisegment d2 = truncate(d, step);
      if (c.degree() - d.degree() != c2.degree() - d2.degree()) continue;
      if (!preceq_k(d2, c2, k)) continue;
      next[d2] += n;
    }
    cur = std::move(next);
    c = c2;
  }
  std::erase_if(cur, [](const auto& kv) { return kv.second == 0; });
  return cur;
}


namespace {

std::mutex& memo_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::tuple<Multisegment, int, Side>, Decomposition>& derivative_memo() {
  static std::map<std::tuple<Multisegment, int, Side>, Decomposition> m;
  return m;
}

std::map<std::pair<Multisegment, Segment>, Decomposition>& product_memo() {
  static std::map<std::pair<Multisegment, Segment>, Decomposition> m;
  return m;
}

struct Counters {
  std::atomic<std::uint64_t> point_formula{0};
  std::atomic<std::uint64_t> derivation_system{0};
};

Counters& stats() {
  static Counters s;
  return s;
}

// the degree -1 part of D^x(L_c) or ^xD(L_c)
Decomposition lowered(const Multisegment& c, int x, Side side) {
  auto key = std::make_tuple(c, x, side);
  {
    std::lock_guard lock(memo_mutex());
    auto it = derivative_memo().find(key);
    if (it != derivative_memo().end()) return it->second;
  }
  Decomposition out;
  for (const auto& [d, n] : derivative_closed_form(c, x, side, 1)) out[d] = n;
  std::lock_guard lock(memo_mutex());
  derivative_memo().emplace(key, out);
  return out;
}

void add_into(Decomposition& acc, const Decomposition& d, std::int64_t scale) {
  for (const auto& [c, n] : d) acc[c] = checked_add(acc[c], checked_mul(n, scale));
}

void drop_zeros(Decomposition& d) {
  std::erase_if(d, [](const auto& kv) { return kv.second == 0; });
}

Decomposition mirrored(const Decomposition& d) {
  Decomposition out;
  for (const auto& [c, n] : d) out[mirror(c)] = n;
  return out;
}

bool linked_to_any(const Multisegment& a, const Segment& b) {
  for (const auto& s : a.distinct())
    if (linked(s, b)) return true;
  return false;
}

// L_{trunc a'} x L_b from L_{a'} x L_b, the steps leaving b alone
Decomposition transport_down(Decomposition prod, Multisegment top,
                             const std::vector<TruncationStep>& replay) {
  for (const auto& step : replay) {
    Decomposition next;
    for (const auto& [c, n] : prod)
      if (hypothesis_Hk(c, top, step.k, step.side)) next[truncate(c, step)] += n;
    prod = std::move(next);
    top = truncate(top, step);
  }
  drop_zeros(prod);
  return prod;
}

// c -> c^{[k+1]_1[k]_{l-1}}
Multisegment lift_point_terms(const Multisegment& c, int k, int copies_k) {
  Multisegment x = psi_k_inv(c, c + Multisegment{Segment(k + 1, k + 1)}, k + 1);
  if (copies_k == 0) return x;
  Multisegment pts;
  pts.add(Segment(k, k), copies_k);
  return psi_k_inv(x, x + pts, k);
}

// a parabolic with distinct begins, f_e(k) > 0 and f_e(k-1) = f_e(k+1) = 0
Decomposition point_normal_form(const Multisegment& a, int k) {
  Multisegment b{Segment(k + 1, k + 1)};
  Multisegment ab = a + b;
  int lk = a.ends_at(k);
  Decomposition da = derivative_closed_form(a, k, Side::right, lk - 1);
  Decomposition dab = derivative_closed_form(ab, k, Side::right, lk - 1);
  Decomposition out{{ab, 1}};
  for (const auto& c : gamma_set(a, k, lk - 1)) {
    Multisegment x = psi_k_inv(c, c + b, k + 1);
    auto ia = da.find(c);
    auto ib = dab.find(x);
    std::int64_t coef = (ia == da.end() ? 0 : ia->second) - (ib == dab.end() ? 0 : ib->second);
    if (coef != 0) out[lift_point_terms(c, k, lk - 1)] += coef;
  }
  drop_zeros(out);
  return out;
}

Decomposition point_chain(const Multisegment& a, int k);

// max b(a) > k+1: move one segment beginning at k+2 onto k+1 and peel it off with ^{k+1}D
Decomposition point_high_begins(const Multisegment& a, int k) {
  Multisegment b{Segment(k + 1, k + 1)};
  if (a.begins_at(k + 1) > 0) {
    Multisegment cur = a;
    std::vector<TruncationStep> lifts;
    std::set<int> low;
    for (int x : a.begins())
      if (x <= k + 1) low.insert(x);
    for (int x : low) {
      Multisegment next;
      for (const auto& [s, n] : cur.entries()) next.add(s.b == x ? Segment(x - 1, s.e) : s, n);
      cur = next;
      lifts.push_back({Side::left, x - 1});
    }
    std::vector<TruncationStep> replay(lifts.rbegin(), lifts.rend());
    return transport_down(point_chain(cur, k), cur + b, replay);
  }
  auto at = a.beginning_at(k + 2);
  if (at.empty()) {
    Multisegment cur = a;
    std::vector<TruncationStep> lifts;
    std::set<int> high;
    for (int x : a.begins())
      if (x > k + 2) high.insert(x);
    for (int x : high) {
      Multisegment next;
      for (const auto& [s, n] : cur.entries()) next.add(s.b == x ? Segment(x - 1, s.e) : s, n);
      cur = next;
      lifts.push_back({Side::left, x - 1});
    }
    std::vector<TruncationStep> replay(lifts.rbegin(), lifts.rend());
    return transport_down(point_chain(cur, k), cur + b, replay);
  }
  Segment longest = at.front();
  for (const auto& s : at)
    if (s.e > longest.e) longest = s;
  Multisegment lifted = a;
  lifted.remove(longest);
  lifted.add(Segment(k + 1, longest.e));
  if (lowered(lifted, k + 1, Side::left) != Decomposition{{a, 1}})
    throw UnreducedCase("left derivative of " + format_multisegment(lifted) + " is not simple");
  Decomposition out;
  for (const auto& [c, n] : point_chain(lifted, k)) add_into(out, lowered(c, k + 1, Side::left), n);
  out[lifted] -= 1;
  drop_zeros(out);
  return out;
}

Decomposition point_chain(const Multisegment& a, int k) {
  Segment pt(k + 1, k + 1);
  Multisegment b{pt};
  if (!linked_to_any(a, pt)) return {{a + b, 1}};
  if (a.ends_at(k) == 0) return mirrored(point_chain(mirror(a), -k - 2));
  if (a.begins().back() > k + 1) return point_high_begins(a, k);

  bool low_ends = a.ends().front() < k;
  DerivativeReduction red = normal_form_lift(a, k, low_ends ? 1 : 0);
  const Multisegment& top = red.top;
  auto top_ends = top.ends();
  std::vector<TruncationStep> low;
  for (int e : std::set<int>(top_ends.begin(), top_ends.end()))
    if (e < k) low.push_back({Side::right, e});
  // a parabolic top keeps every element of S(top + b) inside the truncation domain,
  // so the products correspond through psi
  std::vector<Multisegment> tops{top + b};
  for (const auto& step : low) tops.push_back(truncate(tops.back(), step));
  Decomposition prod;
  for (const auto& [c, n] : point_normal_form(truncate_seq(top, low), k)) {
    Multisegment cur = c;
    for (std::size_t j = low.size(); j-- > 0;) cur = psi_k_inv(cur, tops[j], low[j].k);
    prod[cur] += n;
  }
  return transport_down(prod, top + b, red.replay);
}

// Gaussian elimination modulo a large prime, fed one equation at a time; the solution is
// lifted to the symmetric range and accepted only if it satisfies every equation exactly
class ModSolver {
public:
  static constexpr std::uint64_t P = (1ull << 61) - 1;

  explicit ModSolver(std::size_t n) : n_(n), pivot_of_(n, npos) {}

  void add(std::vector<std::int64_t> row) {
    std::vector<std::uint64_t> r(n_ + 1);
    for (std::size_t j = 0; j <= n_; ++j) r[j] = reduce(row[j]);
    for (std::size_t col = 0; col < n_; ++col) {
      if (r[col] == 0 || pivot_of_[col] == npos) continue;
      const auto& p = reduced_[pivot_of_[col]];
      std::uint64_t f = r[col];
      for (std::size_t j = col; j <= n_; ++j) r[j] = (r[j] + P - mulmod(f, p[j])) % P;
    }
    exact_.push_back(std::move(row));
    std::size_t col = 0;
    while (col < n_ && r[col] == 0) ++col;
    if (col == n_) return;
    std::uint64_t iv = inv(r[col]);
    for (auto& x : r) x = mulmod(x, iv);
    for (auto& q : reduced_) {
      if (q[col] == 0) continue;
      std::uint64_t f = q[col];
      for (std::size_t j = col; j <= n_; ++j) q[j] = (q[j] + P - mulmod(f, r[j])) % P;
    }
    pivot_of_[col] = reduced_.size();
    reduced_.push_back(std::move(r));
  }

  bool full_rank() const { return reduced_.size() == n_; }

  // nullopt if the equations so far do not determine an integral solution
  std::optional<std::vector<std::int64_t>> solve() const {
    if (!full_rank()) return std::nullopt;
    std::vector<std::int64_t> x(n_);
    for (std::size_t col = 0; col < n_; ++col) x[col] = lift(reduced_[pivot_of_[col]][n_]);
    for (const auto& r : exact_) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < n_; ++j) s = checked_add(s, checked_mul(r[j], x[j]));
      if (s != r[n_]) return std::nullopt;
    }
    return x;
  }

private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % P);
  }
  static std::uint64_t reduce(std::int64_t x) {
    std::int64_t r = x % static_cast<std::int64_t>(P);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(P) : r);
  }
  static std::uint64_t inv(std::uint64_t a) {
    std::uint64_t r = 1, e = P - 2;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  }
  static std::int64_t lift(std::uint64_t x) {
    return x > P / 2 ? -static_cast<std::int64_t>(P - x) : static_cast<std::int64_t>(x);
  }

  std::size_t n_;
  std::vector<std::size_t> pivot_of_;
  std::vector<std::vector<std::uint64_t>> reduced_;
  std::vector<std::vector<std::int64_t>> exact_;
};

Decomposition product(const Multisegment& a, const Segment& b);

// compare e'_x of both sides for every point x on both sides; the lowered maps separate
// elements of positive degree, so the system has the multiplicities as its unique solution
// compare e'_x of both sides at the points x of a+b, outermost first, until the
// multiplicities are determined
Decomposition derivation_system(const Multisegment& a, const Segment& b) {
  Multisegment bm{b};
  Multisegment ab = a + bm;
  std::vector<Multisegment> unknowns;
  for (auto& c : poset_elements(ab))
    if (c != ab) unknowns.push_back(std::move(c));
  std::size_t n = unknowns.size();
  if (n == 0) return {{ab, 1}};

  Weight w = ab.weight();
  std::vector<std::pair<Side, int>> order;
  auto hi = w.rbegin();
  auto lo = w.begin();
  for (std::size_t i = 0; i < w.size(); ++i, ++hi, ++lo) {
    order.emplace_back(Side::right, hi->first);
    order.emplace_back(Side::left, lo->first);
  }

  ModSolver solver(n);
  for (const auto& [side, x] : order) {
    // right-hand side: e'(L_a) x L_b + L_a x e'(L_b), minus the known L_{a+b} part
    Decomposition rhs;
    for (const auto& [d, th] : lowered(a, x, side)) add_into(rhs, product(d, b), th);
    int cut = side == Side::right ? b.e : b.b;
    if (cut == x) {
      if (b.b == b.e) {
        rhs[a] += 1;
      } else {
        Segment rest = side == Side::right ? Segment(b.b, b.e - 1) : Segment(b.b + 1, b.e);
        add_into(rhs, product(a, rest), 1);
      }
    }
    add_into(rhs, lowered(ab, x, side), -1);
    std::map<Multisegment, std::vector<std::int64_t>> eq;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [t, c] : lowered(unknowns[i], x, side)) {
        auto& r = eq[t];
        if (r.empty()) r.assign(n + 1, 0);
        r[i] += c;
      }
    for (const auto& [t, c] : rhs) {
      auto& r = eq[t];
      if (r.empty()) r.assign(n + 1, 0);
      r[n] += c;
    }
    for (auto& [t, r] : eq) solver.add(std::move(r));
    if (solver.full_rank()) break;
  }
  auto sol = solver.solve();
  if (!sol)
    throw UnreducedCase("derivative comparison does not determine " + format_multisegment(a) +
                        " x " + format_segment(b));
  Decomposition out{{ab, 1}};
  for (std::size_t i = 0; i < n; ++i)
    if ((*sol)[i] != 0) out[unknowns[i]] = (*sol)[i];
  return out;
}

Decomposition product(const Multisegment& a, const Segment& b) {
  auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(memo_mutex());
    auto it = product_memo().find(key);
    if (it != product_memo().end()) return it->second;
  }
  Decomposition out;
  if (a.empty()) {
    out = {{Multisegment{b}, 1}};
  } else if (b.b == b.e) {
    try {
      out = point_chain(a, b.b - 1);
      ++stats().point_formula;
    } catch (const UnreducedCase&) {
      out = derivation_system(a, b);
      ++stats().derivation_system;
    } catch (const NotInDomain&) {
      out = derivation_system(a, b);
      ++stats().derivation_system;
    }
  } else {
    out = derivation_system(a, b);
    ++stats().derivation_system;
  }
  std::lock_guard lock(memo_mutex());
  product_memo().emplace(key, out);
  return out;
}

}  // namespace

Decomposition induce_point(const Multisegment& a, int k) { return product(a, Segment(k + 1, k + 1)); }

Decomposition induce_segment(const Multisegment& a, const Segment& b) { return product(a, b); }

InduceStats induce_stats() {
  return {stats().point_formula.load(), stats().derivation_system.load()};
}

void formulas_clear_cache() {
  std::lock_guard lock(memo_mutex());
  derivative_memo().clear();
  product_memo().clear();
  std::lock_guard theta_lock(theta_cache().mu);
  theta_cache().solvers.clear();
}

}  // namespace mseg
