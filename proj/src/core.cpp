#include "mseg/core.hpp"

#include <algorithm>
#include <cctype>

namespace mseg {

Segment::Segment(int begin, int end) : b(begin), e(end) {
  if (begin > end)
    throw BadRange("segment [" + std::to_string(begin) + "," +
                   std::to_string(end) + "] is empty");
}

std::optional<Segment> make_segment(int b, int e) {
  if (b > e) return std::nullopt;
  return Segment(b, e);
}

SegmentRelation segment_relation(const Segment& d1, const Segment& d2) {
  SegmentRelation r;
  if (d1 == d2) {
    r.kind = Relation::equal;
  } else if (d1.contains(d2)) {
    r.kind = Relation::covers;
  } else if (d2.contains(d1)) {
    r.kind = Relation::covered_by;
  } else {
    const Segment& lo = d1.b < d2.b ? d1 : d2;
    const Segment& hi = d1.b < d2.b ? d2 : d1;
    if (hi.b > lo.e + 1) {
      r.kind = Relation::unrelated;
    } else {
      r.kind = hi.b == lo.e + 1 ? Relation::juxtaposed
                                : Relation::linked_not_juxtaposed;
      r.precedes = d1.b < d2.b;
    }
  }
  return r;
}

bool linked(const Segment& d1, const Segment& d2) {
  auto k = segment_relation(d1, d2).kind;
  return k == Relation::juxtaposed || k == Relation::linked_not_juxtaposed;
}

bool precedes(const Segment& d1, const Segment& d2) {
  return segment_relation(d1, d2).precedes;
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::covers: return "covers";
    case Relation::covered_by: return "covered_by";
    case Relation::linked_not_juxtaposed: return "linked_not_juxtaposed";
    case Relation::juxtaposed: return "juxtaposed";
    case Relation::unrelated: return "unrelated";
  }
  return "?";
}

Multisegment::Multisegment(std::initializer_list<Segment> segs) {
  for (const auto& s : segs) add(s);
}

Multisegment::Multisegment(const std::vector<Segment>& segs) {
  for (const auto& s : segs) add(s);
}

std::vector<Segment> Multisegment::segments() const {
  std::vector<Segment> out;
  for (const auto& [s, n] : entries_)
    for (int i = 0; i < n; ++i) out.push_back(s);
  return out;
}

std::vector<Segment> Multisegment::distinct() const {
  std::vector<Segment> out;
  for (const auto& en : entries_) out.push_back(en.first);
  return out;
}

int Multisegment::count(const Segment& s) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), s,
      [](const Entry& en, const Segment& x) { return en.first < x; });
  return it != entries_.end() && it->first == s ? it->second : 0;
}

void Multisegment::add(const Segment& s, int n) {
  if (n <= 0) return;
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), s,
      [](const Entry& en, const Segment& x) { return en.first < x; });
  if (it != entries_.end() && it->first == s)
    it->second += n;
  else
    entries_.insert(it, {s, n});
}

void Multisegment::remove(const Segment& s, int n) {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), s,
      [](const Entry& en, const Segment& x) { return en.first < x; });
  if (it == entries_.end() || it->first != s || it->second < n)
    throw NotMember(format_segment(s) + " not in multisegment");
  it->second -= n;
  if (it->second == 0) entries_.erase(it);
}

int Multisegment::size() const {
  int n = 0;
  for (const auto& en : entries_) n += en.second;
  return n;
}

int Multisegment::degree() const {
  int d = 0;
  for (const auto& [s, n] : entries_) d += s.length() * n;
  return d;
}

Weight Multisegment::weight() const {
  Weight w;
  for (const auto& [s, n] : entries_)
    for (int x = s.b; x <= s.e; ++x) w[x] += n;
  return w;
}

std::vector<int> Multisegment::begins() const {
  std::vector<int> out;
  for (const auto& [s, n] : entries_) out.insert(out.end(), n, s.b);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Multisegment::ends() const {
  std::vector<int> out;
  for (const auto& [s, n] : entries_) out.insert(out.end(), n, s.e);
  std::sort(out.begin(), out.end());
  return out;
}

int Multisegment::ends_at(int k) const {
  int c = 0;
  for (const auto& [s, n] : entries_)
    if (s.e == k) c += n;
  return c;
}

int Multisegment::begins_at(int k) const {
  int c = 0;
  for (const auto& [s, n] : entries_)
    if (s.b == k) c += n;
  return c;
}

std::vector<Segment> Multisegment::ending_at(int k) const {
  std::vector<Segment> out;
  for (const auto& [s, n] : entries_)
    if (s.e == k) out.insert(out.end(), n, s);
  return out;
}

std::vector<Segment> Multisegment::beginning_at(int k) const {
  std::vector<Segment> out;
  for (const auto& [s, n] : entries_)
    if (s.b == k) out.insert(out.end(), n, s);
  return out;
}

Multisegment Multisegment::shifted(int t) const {
  Multisegment out;
  out.entries_ = entries_;
  for (auto& en : out.entries_) en.first = Segment(en.first.b + t, en.first.e + t);
  return out;
}

Multisegment& Multisegment::operator+=(const Multisegment& o) {
  for (const auto& [s, n] : o.entries_) add(s, n);
  return *this;
}

std::strong_ordering Multisegment::operator<=>(const Multisegment& o) const {
  std::size_t n = std::min(entries_.size(), o.entries_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = entries_[i].first <=> o.entries_[i].first; c != 0) return c;
    if (auto c = entries_[i].second <=> o.entries_[i].second; c != 0) return c;
  }
  return entries_.size() <=> o.entries_.size();
}

std::size_t Multisegment::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& [s, n] : entries_) {
    std::size_t x = (static_cast<std::size_t>(static_cast<unsigned>(s.b)) << 40) ^
                    (static_cast<std::size_t>(static_cast<unsigned>(s.e)) << 16) ^
                    static_cast<std::size_t>(n);
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

Weight weight_of(const Multisegment& a) { return a.weight(); }

int degree_of(const Multisegment& a) { return a.degree(); }

int degree_of(const Weight& w) {
  int d = 0;
  for (const auto& [k, v] : w) d += v;
  return d;
}

int rank_invariant(const Multisegment& a, int i, int j) {
  if (i > j)
    throw BadRange("rank_invariant needs i <= j, got " + std::to_string(i) +
                   " > " + std::to_string(j));
  int r = 0;
  for (const auto& [s, n] : a.entries())
    if (s.b <= i && j <= s.e) r += n;
  return r;
}

Multisegment elementary_op(const Multisegment& a, const Segment& d1,
                           const Segment& d2) {
  if (!linked(d1, d2))
    throw NotLinked(format_segment(d1) + " and " + format_segment(d2));
  if (d1 == d2 ? a.count(d1) < 2 : (a.count(d1) < 1 || a.count(d2) < 1))
    throw NotMember("linked pair not contained in " + format_multisegment(a));
  Multisegment out = a;
  out.remove(d1);
  out.remove(d2);
  out.add(Segment(std::min(d1.b, d2.b), std::max(d1.e, d2.e)));
  if (auto s = make_segment(std::max(d1.b, d2.b), std::min(d1.e, d2.e))) out.add(*s);
  return out;
}

std::vector<std::pair<Segment, Segment>> linked_pairs(const Multisegment& a) {
  std::vector<std::pair<Segment, Segment>> out;
  const auto& es = a.entries();
  for (const auto& [s, n] : es)
    for (const auto& [t, m] : es)
      if (precedes(s, t)) out.emplace_back(s, t);
  return out;
}

std::string format_segment(const Segment& s) {
  if (s.b == s.e) return "[" + std::to_string(s.b) + "]";
  return "[" + std::to_string(s.b) + "," + std::to_string(s.e) + "]";
}

std::string format_multisegment(const Multisegment& a) {
  if (a.empty()) return "0";
  std::string out;
  for (const auto& [s, n] : a.entries()) {
    if (!out.empty()) out += "+";
    if (n > 1) out += std::to_string(n) + "*";
    out += format_segment(s);
  }
  return out;
}

std::string format_weight(const Weight& w) {
  std::string out;
  for (const auto& [k, v] : w) {
    if (v == 0) continue;
    if (!out.empty()) out += " + ";
    if (v > 1) out += std::to_string(v) + "*";
    out += "chi" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

namespace {

struct Parser {
  const std::string& s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool peek(char c) {
    skip();
    return i < s.size() && s[i] == c;
  }
  void expect(char c) {
    if (!peek(c)) throw ParseError(std::string("expected '") + c + "'", i);
    ++i;
  }
  int integer() {
    skip();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) throw ParseError("expected integer", start);
    try {
      return std::stoi(s.substr(start, i - start));
    } catch (const std::out_of_range&) {
      throw ParseError("integer out of range", start);
    }
  }
  Segment segment() {
    expect('[');
    std::size_t at = i;
    int b = integer();
    int e = b;
    if (peek(',')) {
      ++i;
      e = integer();
    }
    expect(']');
    if (b > e) throw ParseError("empty segment", at);
    return Segment(b, e);
  }
  bool done() {
    skip();
    return i == s.size();
  }
};

}  // namespace

Segment parse_segment(const std::string& text) {
  Parser p{text};
  Segment s = p.segment();
  if (!p.done()) throw ParseError("trailing input", p.i);
  return s;
}

Multisegment parse_multisegment(const std::string& text) {
  Parser p{text};
  Multisegment a;
  if (p.peek('0')) {
    ++p.i;
    if (!p.done()) throw ParseError("trailing input", p.i);
    return a;
  }
  while (true) {
    int n = 1;
    if (!p.peek('[')) {
      std::size_t at = p.i;
      n = p.integer();
      if (n < 1) throw ParseError("count must be positive", at);
      p.expect('*');
    }
    a.add(p.segment(), n);
    if (p.done()) break;
    p.expect('+');
  }
  return a;
}

}  // namespace mseg
