#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mseg/error.hpp"

namespace mseg {

struct Segment {
  int b = 0;
  int e = 0;

  Segment() = default;
  Segment(int begin, int end);

  int length() const { return e - b + 1; }
  bool contains(int x) const { return b <= x && x <= e; }
  bool contains(const Segment& o) const { return b <= o.b && o.e <= e; }

  bool operator==(const Segment&) const = default;
  // canonical order: end first, then larger begin first
  std::strong_ordering operator<=>(const Segment& o) const {
    if (e != o.e) return e <=> o.e;
    return o.b <=> b;
  }
};

std::optional<Segment> make_segment(int b, int e);

enum class Relation {
  equal,
  covers,
  covered_by,
  linked_not_juxtaposed,
  juxtaposed,
  unrelated
};

struct SegmentRelation {
  Relation kind = Relation::unrelated;
  bool precedes = false;
  bool operator==(const SegmentRelation&) const = default;
};

SegmentRelation segment_relation(const Segment& d1, const Segment& d2);
bool linked(const Segment& d1, const Segment& d2);
bool precedes(const Segment& d1, const Segment& d2);
const char* relation_name(Relation r);

using Weight = std::map<int, int>;

class Multisegment {
public:
  using Entry = std::pair<Segment, int>;

  Multisegment() = default;
  Multisegment(std::initializer_list<Segment> segs);
  explicit Multisegment(const std::vector<Segment>& segs);

  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<Segment> segments() const;
  std::vector<Segment> distinct() const;

  int count(const Segment& s) const;
  void add(const Segment& s, int n = 1);
  void remove(const Segment& s, int n = 1);

  bool empty() const { return entries_.empty(); }
  int size() const;
  int degree() const;
  Weight weight() const;

  std::vector<int> begins() const;
  std::vector<int> ends() const;
  int ends_at(int k) const;
  int begins_at(int k) const;
  std::vector<Segment> ending_at(int k) const;
  std::vector<Segment> beginning_at(int k) const;

  Multisegment shifted(int t) const;

  Multisegment& operator+=(const Multisegment& o);
  friend Multisegment operator+(Multisegment a, const Multisegment& b) {
    a += b;
    return a;
  }

  bool operator==(const Multisegment&) const = default;
  std::strong_ordering operator<=>(const Multisegment& o) const;

  std::size_t hash() const;

private:
  std::vector<Entry> entries_;
};

struct MultisegmentHash {
  std::size_t operator()(const Multisegment& a) const { return a.hash(); }
};

Weight weight_of(const Multisegment& a);
int degree_of(const Multisegment& a);
int degree_of(const Weight& w);
int rank_invariant(const Multisegment& a, int i, int j);

Multisegment elementary_op(const Multisegment& a, const Segment& d1,
                           const Segment& d2);

// every distinct linked pair (d1 precedes d2) available in a
std::vector<std::pair<Segment, Segment>> linked_pairs(const Multisegment& a);

std::string format_segment(const Segment& s);
std::string format_multisegment(const Multisegment& a);
std::string format_weight(const Weight& w);
Multisegment parse_multisegment(const std::string& text);
Segment parse_segment(const std::string& text);

}  // namespace mseg

template <>
struct std::hash<mseg::Multisegment> {
  std::size_t operator()(const mseg::Multisegment& a) const { return a.hash(); }
};
