#include <map>
#include <set>

#include "catch_amalgamated.hpp"
#include "mseg/kl.hpp"
#include "mseg/poset.hpp"
#include "mseg/reduce.hpp"
#include "mseg/ring.hpp"
#include "mseg/sample.hpp"

using namespace mseg;

namespace {

Multisegment M(const char* s) { return parse_multisegment(s); }

bool truncation_domain(const Multisegment& b, const Multisegment& a, int k, Side side) {
  return leq(b, a) && in_S_a_k(b, a, k, side);
}

}  // namespace

TEST_CASE("truncation") {
  CHECK(truncate(M("[1,2]+[2,3]"), 3) == M("[1,2]+[2]"));
  CHECK(truncate(M("[1]"), 1).empty());
  CHECK(truncate(M("[1,2]+[2,3]"), 1, Side::left) == M("[2]+[2,3]"));
  CHECK(mirror(M("[1,2]+[2,3]")) == M("[-3,-2]+[-2,-1]"));
  CHECK(truncate(M("[1,3]"), 2) == M("[1,3]"));

  Multisegment a2 = M("[0,1]+[1,3]+[2]+[3,4]");
  std::vector<TruncationStep> steps{{Side::right, 3}, {Side::right, 4}, {Side::left, 1}, {Side::left, 0}};
  CHECK(truncate_seq(a2, steps) == M("[1]+2*[2]+[3]"));
  CHECK(format_step({Side::left, 2}) == "L2");
  CHECK(format_step({Side::right, 2}) == "R2");
}

TEST_CASE("hypothesis H_k") {
  Multisegment a = M("[1,2]+[2,3]");
  CHECK_FALSE(hypothesis_Hk(a, a, 3));
  CHECK(hypothesis_Hk(M("[1,3]+[2]"), a, 3));
  CHECK(in_S_a_k(M("[1,3]+[2]"), a, 3));
  CHECK(hypothesis_Hk(M("[1,3]+[3]"), M("[1,3]+[3]"), 3));
  CHECK_THROWS_AS(hypothesis_Hk(M("[1,2]+[2,3]"), M("[1,3]+[2]"), 3), NotComparable);
  CHECK(derivative_simple(M("[1,3]+[2]"), 3).count(truncate(M("[1,3]+[2]"), 3)));
}

TEST_CASE("psi_k on the five element poset") {
  Multisegment a = M("[1]+2*[2]+[3]");
  int k = 3;
  auto dom = S_a_k(a, k);
  std::set<Multisegment> img;
  for (const auto& b : dom) {
    Multisegment d = psi_k(b, a, k);
    CHECK(d == truncate(b, k));
    CHECK(psi_k_inv(d, a, k) == b);
    img.insert(d);
  }
  auto lower = poset_elements(truncate(a, k));
  CHECK(img == std::set<Multisegment>(lower.begin(), lower.end()));
  CHECK_THROWS_AS(psi_k(M("[1,2]+[2,3]"), M("[1,2]+[2,3]"), 3), NotInDomain);
}

TEST_CASE("psi_k is an order isomorphism preserving multiplicities") {
  Sampler s(31);
  int checked = 0;
  for (int t = 0; t < 150; ++t) {
    Multisegment a = s.multisegment(7);
    auto ends = a.ends();
    int k = ends[static_cast<std::size_t>(s.uniform(0, static_cast<int>(ends.size()) - 1))];
    Side side = s.uniform(0, 1) ? Side::right : Side::left;
    if (side == Side::left) k = a.begins()[static_cast<std::size_t>(s.uniform(0, static_cast<int>(a.size()) - 1))];
    if (!hypothesis_Hk(a, a, k, side)) continue;
    INFO(format_multisegment(a) << " k=" << k);
    Multisegment ak = truncate(a, k, side);
    auto dom = S_a_k(a, k, side);
    CHECK(psi_k(a, a, k, side) == ak);
    std::set<Multisegment> img;
    for (const auto& b : dom) {
      CHECK(truncation_domain(b, a, k, side));
      Multisegment d = psi_k(b, a, k, side);
      img.insert(d);
      CHECK(psi_k_inv(d, a, k, side) == b);
      CHECK(multiplicity(b, a) == multiplicity(d, ak));
      ++checked;
    }
    auto lower = poset_elements(ak);
    CHECK(img == std::set<Multisegment>(lower.begin(), lower.end()));
    for (const auto& b : dom)
      for (const auto& c : dom) CHECK(lt(c, b) == lt(truncate(c, k, side), truncate(b, k, side)));
  }
  CHECK(checked > 100);
}

TEST_CASE("the minimal lift") {
  Sampler s(32);
  for (int t = 0; t < 100; ++t) {
    Multisegment a = s.multisegment(7);
    int k = a.ends().back();
    if (!hypothesis_Hk(a, a, k)) continue;
    Multisegment ak = truncate(a, k);
    Multisegment c = psi_k_inv(minimal_element(ak), a, k);
    CHECK(in_S_a_k(c, a, k));
    for (const auto& b : S_a_k(a, k)) CHECK(leq(c, b));
  }
}

TEST_CASE("ordinary reduction") {
  auto r = reduce_to_ordinary(M("[1]+2*[2]+[3]"));
  CHECK(r.b == M("[0,1]+[1,3]+[2]+[3,4]"));
  CHECK(r.c1 == std::vector<Segment>{Segment(3, 4)});
  CHECK(r.c2 == std::vector<Segment>{Segment(0, 1)});
  CHECK(truncate_seq(r.b, r.replay) == M("[1]+2*[2]+[3]"));

  auto same = reduce_to_ordinary(M("[1,3]+[2,4]"));
  CHECK(same.b == M("[1,3]+[2,4]"));
  CHECK(same.c1.empty());
  CHECK(same.c2.empty());

  Sampler s(33);
  for (int t = 0; t < 100; ++t) {
    Multisegment a = s.multisegment(8);
    auto red = reduce_to_ordinary(a);
    CHECK(is_ordinary(red.b));
    CHECK(truncate_seq(red.b, red.replay) == a);
  }
}

TEST_CASE("symmetrization certificate") {
  Multisegment a = M("[1]+2*[2]+[3]");
  auto cert = symmetrize(a);
  CHECK(cert.source == a);
  CHECK(cert.sym == M("[0,3]+[1,5]+[2,4]+[3,6]"));
  CHECK(cert.a_id == M("[0,3]+[1,4]+[2,5]+[3,6]"));
  CHECK(cert.w == Perm::simple(4, 2));
  CHECK(phi(cert.a_id, cert.w) == cert.sym);
  CHECK(truncate_seq(cert.sym, cert.replay) == a);

  Multisegment b = M("[1,2]+[2,3]");
  Multisegment bs = transport(b, cert);
  CHECK(truncate_seq(bs, cert.replay) == b);
  CHECK(leq(bs, cert.sym));
  CHECK(multiplicity(bs, cert.sym) == 2);
  CHECK(multiplicity_sym(b, a) == 2);
}

TEST_CASE("symmetrization agrees with the direct route") {
  Sampler s(34);
  for (int t = 0; t < 80; ++t) {
    Multisegment a = s.multisegment(7);
    INFO(format_multisegment(a));
    auto cert = symmetrize(a);
    CHECK(is_symmetric(cert.sym));
    CHECK(phi(cert.a_id, cert.w) == cert.sym);
    CHECK(truncate_seq(cert.sym, cert.replay) == a);
    for (const auto& b : poset_elements(a)) {
      Multisegment bs = transport(b, cert);
      CHECK(truncate_seq(bs, cert.replay) == b);
      CHECK(lift_along(b, cert.sym, cert.replay) == bs);
      // m(phi(v), phi(w)) = P_{w,v}(1)
      CHECK(kl_poly(cert.w, phi_inv(cert.a_id, bs)).at_one() == multiplicity(b, a));
      CHECK(multiplicity_sym(b, a) == multiplicity(b, a));
    }
  }
}

TEST_CASE("relation types") {
  CHECK(relation_type_equal(M("[1,2]+[2,3]"), M("[5,6]+[6,7]")));
  CHECK_FALSE(relation_type_equal(M("[1,2]+[2,3]"), M("[1,2]+[3,4]")));
  CHECK(relation_type_equal(M("[1,2]+[2,3]"), M("[1,3]+[3,5]")));
  CHECK(stretch(M("[1,2]+[2,3]"), 2) == M("[1,3]+[2,4]"));
  CHECK(stretch(M("[1,2]+[2,3]"), 3) == M("[1,2]+[2,4]"));
  CHECK(xi_transport(M("[1,3]+[2]"), M("[1,2]+[2,3]"), M("[5,6]+[6,7]")) == M("[5,7]+[6]"));
  CHECK_THROWS_AS(xi_transport(M("[1,3]+[2]"), M("[1,2]+[2,3]"), M("[1,2]+[3,4]")), NoBijection);
  CHECK_FALSE(relation_map(M("[1,2]+[2,3]"), M("[1,2]+[3,4]")).has_value());
}

TEST_CASE("same relation type gives the same multiplicities") {
  Sampler s(35);
  for (int t = 0; t < 80; ++t) {
    Multisegment a = s.multisegment(7);
    int x = s.uniform(0, 4);
    for (const auto& a2 : {a.shifted(3), stretch(a, x), stretch(a, x).shifted(-2)}) {
      INFO(format_multisegment(a) << " -> " << format_multisegment(a2));
      REQUIRE(relation_type_equal(a, a2));
      auto m = m_matrix(a), m2 = m_matrix(a2);
      CHECK(m.size() == m2.size());
      for (const auto& [b, n] : m) {
        Multisegment b2 = xi_transport(b, a, a2);
        REQUIRE(m2.count(b2));
        CHECK(m2.at(b2) == n);
      }
    }
  }
}

TEST_CASE("poset classification") {
  auto c = classify_poset(M("[1]+2*[2]+[3]"));
  CHECK(c.n == 4);
  CHECK(c.J1.members.size() == 1);
  CHECK(c.J2.members.size() == 1);
  CHECK(is_parabolic_type(c.lifted));

  auto id = classify_poset(M("[1,3]+[1,4]+[2,5]+[2,6]"));
  CHECK(id.w.is_identity());
  CHECK(id.J2 == GeneratorSet(4, {1, 3}));
  CHECK(id.replay.empty());

  auto sym = classify_poset(M("[0,3]+[1,5]+[2,4]+[3,6]"));
  CHECK(sym.J1.empty());
  CHECK(sym.J2.empty());
  CHECK(sym.w == Perm::simple(4, 2));
  CHECK(sym.floor == minimal_element(M("[0,3]+[1,5]+[2,4]+[3,6]")));
}

TEST_CASE("classification gives an isomorphic interval") {
  Sampler s(36);
  for (int t = 0; t < 80; ++t) {
    Multisegment a = s.multisegment(7);
    INFO(format_multisegment(a));
    auto c = classify_poset(a);
    CHECK(phi(c.model, c.w) == c.lifted);
    CHECK(truncate_seq(c.lifted, c.replay) == a);
    auto elems = poset_elements(a);
    if (elems.size() > 200) continue;
    std::map<Multisegment, Multisegment> down;
    for (const auto& x : poset_elements(c.lifted))
      if (leq(c.floor, x)) down[x] = truncate_seq(x, c.replay);
    std::set<Multisegment> image;
    for (const auto& [x, y] : down) image.insert(y);
    CHECK(image.size() == down.size());
    CHECK(image == std::set<Multisegment>(elems.begin(), elems.end()));
    for (const auto& [x, y] : down)
      for (const auto& [x2, y2] : down) CHECK(leq(x, x2) == leq(y, y2));
  }
}
