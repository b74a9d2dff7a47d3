#include <algorithm>
#include <deque>
#include <set>

#include "catch_amalgamated.hpp"
#include "mseg/coxeter.hpp"
#include "mseg/poset.hpp"
#include "mseg/sample.hpp"

using namespace mseg;

namespace {

Multisegment M(const char* s) { return parse_multisegment(s); }
Perm P(std::vector<int> v) { return Perm(std::move(v)); }

Perm swap_values(const Perm& w, int i, int j) {
  auto v = w.one_line();
  std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
  return Perm(v);
}

// lower Bruhat interval of w: close under w -> wt with a length drop
std::set<Perm> lower_interval(const Perm& w) {
  std::set<Perm> seen{w};
  std::deque<Perm> todo{w};
  while (!todo.empty()) {
    Perm x = todo.front();
    todo.pop_front();
    for (int i = 0; i < x.n(); ++i)
      for (int j = i + 1; j < x.n(); ++j) {
        if (x.one_line()[i] < x.one_line()[j]) continue;
        Perm y = swap_values(x, i, j);
        if (seen.insert(y).second) todo.push_back(y);
      }
  }
  return seen;
}

std::set<int> subset_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("permutation basics") {
  Perm w = P({3, 4, 1, 2});
  CHECK(length(w) == 4);
  CHECK(w(1) == 3);
  CHECK(compose(w, w.inverse()).is_identity());
  CHECK(Perm::simple(4, 2) == P({1, 3, 2, 4}));
  CHECK(w.left_mul(1) == compose(Perm::simple(4, 1), w));
  CHECK(w.right_mul(1) == compose(w, Perm::simple(4, 1)));
  CHECK(Perm::unpack(w.packed(), 4) == w);
  CHECK(parse_perm("3,4,1,2") == w);
  CHECK(parse_perm("(1 3)(2 4)", 4) == w);
  CHECK(parse_perm("(1 4 2 3)", 4) == P({4, 3, 1, 2}));
  CHECK_THROWS_AS(P({1, 1, 2}), BadRange);
  CHECK_THROWS_AS(bruhat_leq(P({1, 2}), P({1, 2, 3})), SizeMismatch);
  CHECK(all_perms(4).size() == 24);
}

TEST_CASE("bruhat order examples") {
  CHECK(bruhat_leq(Perm::identity(4), P({2, 4, 1, 3})));
  CHECK(bruhat_leq(P({1, 3, 2, 4}), P({3, 4, 1, 2})));
  CHECK_FALSE(bruhat_leq(P({2, 1, 3}), P({1, 3, 2})));
  CHECK(bruhat_lt(P({2, 1, 3}), P({3, 2, 1})));
  CHECK_FALSE(bruhat_lt(P({2, 1, 3}), P({2, 1, 3})));
}

TEST_CASE("bruhat order agrees with the reflection closure") {
  for (int n = 1; n <= 5; ++n) {
    auto perms = all_perms(n);
    for (const auto& w : perms) {
      auto below = lower_interval(w);
      for (const auto& u : perms) CHECK(bruhat_leq(u, w) == (below.count(u) > 0));
      for (const auto& c : bruhat_lower_covers(w)) {
        CHECK(below.count(c));
        CHECK(length(c) + 1 == length(w));
      }
      std::size_t covers = 0;
      for (const auto& u : below) covers += length(u) + 1 == length(w);
      CHECK(bruhat_lower_covers(w).size() == covers);
    }
  }
}

TEST_CASE("descents") {
  Perm w = P({3, 1, 4, 2});
  CHECK(right_descents(w) == std::vector<int>{1, 3});
  CHECK(left_descents(w) == right_descents(w.inverse()));
  for (const auto& x : all_perms(4))
    for (int s = 1; s < 4; ++s) {
      auto d = right_descents(x);
      bool desc = std::count(d.begin(), d.end(), s) > 0;
      CHECK(desc == (length(x.right_mul(s)) < length(x)));
    }
}

TEST_CASE("parabolic quotients") {
  GeneratorSet none(4, {});
  GeneratorSet J(4, {1, 3});
  CHECK(coset_reps(none, none).size() == 24);
  CHECK(coset_reps(none, J).size() == 6);
  CHECK(parabolic_subgroup(J).size() == 4);
  CHECK(longest_element(GeneratorSet(3, {1, 2})) == P({3, 2, 1}));
  CHECK(longest_element(J) == P({2, 1, 4, 3}));
  CHECK_THROWS(GeneratorSet(4, {4}));

  // l(wx) = l(w) + l(x) for w in S^J, x in S_J
  for (const auto& w : coset_reps(none, J)) {
    CHECK(in_right_quotient(w, J));
    for (const auto& x : parabolic_subgroup(J)) CHECK(length(compose(w, x)) == length(w) + length(x));
  }

  GeneratorSet J1(4, {2});
  for (const auto& v : all_perms(4)) {
    Perm top = max_double_coset(v, J1, J);
    Perm bottom = min_double_coset(v, J1, J);
    std::set<Perm> coset;
    for (const auto& x : parabolic_subgroup(J1))
      for (const auto& y : parabolic_subgroup(J)) coset.insert(compose(compose(x, v), y));
    CHECK(coset.count(top));
    CHECK(coset.count(bottom));
    CHECK(in_quotient(bottom, J1, J));
    for (const auto& c : coset) {
      CHECK(bruhat_leq(c, top));
      CHECK(bruhat_leq(bottom, c));
    }
  }
}

TEST_CASE("phi on symmetric models") {
  Multisegment a_id = M("[1,4]+[2,5]+[3,6]");
  CHECK(is_symmetric(a_id));
  CHECK(phi(a_id, Perm::simple(3, 1)) == M("[1,5]+[2,4]+[3,6]"));
  CHECK(phi(a_id, Perm::identity(3)) == a_id);
  CHECK(phi(M("[0,3]+[1,4]+[2,5]+[3,6]"), Perm::simple(4, 2)) == M("[0,3]+[1,5]+[2,4]+[3,6]"));
  CHECK_THROWS_AS(phi(M("[1,2]+[3,4]"), Perm::identity(2)), NotSymmetric);
  CHECK_THROWS_AS(phi(a_id, Perm::identity(4)), SizeMismatch);
  CHECK_THROWS_AS(phi_inv(a_id, M("[1,4]+[2,5]+[3,7]")), NotInImage);

  // phi of (13)(24) differs from the multisegment [0,5]+[1,3]+[2,6]+[3,4]
  Multisegment model = M("[0,3]+[1,4]+[2,5]+[3,6]");
  CHECK(phi(model, P({3, 4, 1, 2})) != M("[0,5]+[1,3]+[2,6]+[3,4]"));
  CHECK(phi_inv(model, M("[0,5]+[1,3]+[2,6]+[3,4]")) == P({3, 1, 4, 2}));
}

TEST_CASE("phi reverses the Bruhat order") {
  for (int n = 2; n <= 4; ++n) {
    Multisegment a_id;
    for (int k = 1; k <= n; ++k) a_id.add(Segment(k, k + n - 1));
    auto perms = all_perms(n);
    CHECK(poset_elements(a_id).size() == perms.size());
    for (const auto& w : perms) {
      Multisegment b = phi(a_id, w);
      CHECK(phi_inv(a_id, b) == w);
      // r_{i, j+n-1}(phi(w)) = #{k <= i : w(k) >= j}
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          if (i > j + n - 1) continue;
          int count = 0;
          for (int k = 1; k <= i; ++k) count += w(k) >= j;
          CHECK(rank_invariant(b, i, j + n - 1) == count);
        }
      for (const auto& v : perms) CHECK(bruhat_leq(w, v) == leq(phi(a_id, v), b));
    }
  }
}

TEST_CASE("phi on parabolic models") {
  Multisegment a_id = M("[1,3]+[1,4]+[2,5]+[2,6]");
  CHECK(is_parabolic_type(a_id));
  GeneratorSet J1 = ends_generators(a_id), J2 = begins_generators(a_id);
  CHECK(J1.empty());
  CHECK(J2 == GeneratorSet(4, {1, 3}));
  auto reps = coset_reps(J1, J2);
  CHECK(reps.size() == 6);
  for (const auto& u : reps) {
    CHECK(phi_inv(a_id, phi(a_id, u)) == u);
    for (const auto& v : reps) CHECK(bruhat_leq(u, v) == leq(phi(a_id, v), phi(a_id, u)));
  }
  CHECK_THROWS_AS(phi(a_id, Perm::simple(4, 1)), NotInQuotient);
}

TEST_CASE("zelevinsky permutation examples") {
  CHECK(zelevinsky_permutation(M("[1,2]+[2,3]")) == P({3, 4, 1, 2}));
  CHECK(zelevinsky_permutation(M("[1,3]+[2]")) == parse_perm("(1 4 2 3)", 4));
  CHECK(zelevinsky_permutation(M("[1,4]")) == P({4, 1, 2, 3}));
}

TEST_CASE("zelevinsky permutation is the longest element of its set") {
  Sampler s(5);
  for (int t = 0; t < 80; ++t) {
    Multisegment b = s.multisegment(6);
    INFO(format_multisegment(b));
    Perm w = zelevinsky_permutation(b);
    REQUIRE(in_zelevinsky_set(b, w));
    int deg = degree_of(b);
    int members = 0;
    for (const auto& x : all_perms(deg)) {
      if (!in_zelevinsky_set(b, x)) continue;
      ++members;
      CHECK(bruhat_leq(x, w));
      if (x != w) CHECK(length(x) < length(w));
    }
    CHECK(members >= 1);
  }
}

TEST_CASE("zelevinsky permutation reverses the multisegment order") {
  Sampler s(6);
  for (int t = 0; t < 60; ++t) {
    Multisegment a = s.multisegment(6);
    Perm wa = zelevinsky_permutation(a);
    for (const auto& b : poset_elements(a)) CHECK(bruhat_leq(wa, zelevinsky_permutation(b)));
  }
}

TEST_CASE("partitions") {
  Partition zero{{0, 0}};
  CHECK(zero.sigma2() == std::vector<int>{1, 2});
  Partition lam{{2}};
  auto blocks = to_blocks(lam, 3);
  int sa = 0, sb = 0;
  for (int x : blocks.a) sa += x;
  for (int x : blocks.b) sb += x;
  CHECK(sa == 1);
  CHECK(sb == 3);
  CHECK(from_blocks(blocks) == lam);

  auto img = partition_maps(lam, 1, 3, M("[1,4]+[2,5]+[3,5]+[4,5]"));
  CHECK(img.x_lambda == std::vector<int>{3});
  CHECK(img.a_lambda == M("[1,5]+[2,5]+[3,4]+[4,5]"));
  auto base = partition_maps(Partition{{0}}, 1, 3, M("[1,4]+[2,5]+[3,5]+[4,5]"));
  CHECK(base.a_lambda == M("[1,4]+[2,5]+[3,5]+[4,5]"));
  CHECK_THROWS_AS(partition_maps(lam, 2, 3, M("[1,4]+[2,5]+[3,5]+[4,5]")), ShapeMismatch);
  CHECK_THROWS_AS(partition_maps(lam, 1, 3, M("[1,4]+[2,5]+[3,6]+[4,5]")), ShapeMismatch);
}

TEST_CASE("sigma2 is a poset isomorphism onto subsets") {
  for (int r = 1; r <= 3; ++r)
    for (int l = 0; l <= 3; ++l) {
      auto parts = partitions_in_box(r, l);
      std::set<std::vector<int>> images;
      for (const auto& p : parts) {
        auto x = p.sigma2();
        CHECK(std::is_sorted(x.begin(), x.end()));
        CHECK(subset_set(x).size() == x.size());
        CHECK(x.back() <= r + l);
        images.insert(x);
        CHECK(from_blocks(to_blocks(p, l)) == p);
      }
      // binomial(r + l, r)
      long binom = 1;
      for (int i = 1; i <= r; ++i) binom = binom * (l + i) / i;
      CHECK(static_cast<long>(images.size()) == binom);
      for (const auto& p : parts)
        for (const auto& q : parts) {
          auto x = p.sigma2(), y = q.sigma2();
          bool dominated = true;
          for (std::size_t i = 0; i < x.size(); ++i) dominated = dominated && x[i] <= y[i];
          CHECK(partition_leq(p, q) == dominated);
        }
    }
}
