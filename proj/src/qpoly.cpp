#include "mseg/qpoly.hpp"

#include <algorithm>

namespace mseg {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow("integer addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer multiplication");
  return r;
}

QPoly::QPoly(std::int64_t constant) {
  if (constant != 0) c_.push_back(constant);
}

QPoly QPoly::monomial(std::int64_t coef, int v_exp) {
  QPoly p;
  if (coef != 0) {
    p.lo_ = v_exp;
    p.c_.push_back(coef);
  }
  return p;
}

void QPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t z = 0;
  while (z < c_.size() && c_[z] == 0) ++z;
  if (z > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(z));
    lo_ += static_cast<int>(z);
  }
  if (c_.empty()) lo_ = 0;
}

std::int64_t QPoly::coeff_v(int e) const {
  if (c_.empty() || e < lo_ || e > high_v()) return 0;
  return c_[static_cast<std::size_t>(e - lo_)];
}

bool QPoly::integral_q() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0 && ((lo_ + static_cast<int>(i)) % 2 != 0)) return false;
  return true;
}

std::int64_t QPoly::at_one() const {
  std::int64_t s = 0;
  for (auto x : c_) s = checked_add(s, x);
  return s;
}

bool QPoly::nonnegative() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x >= 0; });
}

QPoly QPoly::shifted_v(int k) const {
  QPoly p = *this;
  if (!p.c_.empty()) p.lo_ += k;
  return p;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.c_.empty()) return *this;
  if (c_.empty()) return *this = o;
  int lo = std::min(lo_, o.lo_);
  int hi = std::max(high_v(), o.high_v());
  std::vector<std::int64_t> r(static_cast<std::size_t>(hi - lo + 1), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[lo_ - lo + i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    r[o.lo_ - lo + i] = checked_add(r[o.lo_ - lo + i], o.c_[i]);
  lo_ = lo;
  c_ = std::move(r);
  normalize();
  return *this;
}

QPoly QPoly::operator-() const {
  QPoly p = *this;
  for (auto& x : p.c_) x = checked_mul(x, -1);
  return p;
}

QPoly& QPoly::operator-=(const QPoly& o) { return *this += -o; }

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly p;
  if (a.c_.empty() || b.c_.empty()) return p;
  p.lo_ = a.lo_ + b.lo_;
  p.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      p.c_[i + j] = checked_add(p.c_[i + j], checked_mul(a.c_[i], b.c_[j]));
  p.normalize();
  return p;
}

std::string QPoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    std::int64_t x = c_[i];
    if (x == 0) continue;
    int e = lo_ + static_cast<int>(i);
    std::int64_t mag = x < 0 ? -x : x;
    if (out.empty())
      out += x < 0 ? "-" : "";
    else
      out += x < 0 ? " - " : " + ";
    std::string mono;
    if (e == 2) {
      mono = "q";
    } else if (e != 0) {
      mono = e % 2 == 0 ? "q^" + std::to_string(e / 2)
                        : "q^(" + std::to_string(e) + "/2)";
      if (e < 0 && e % 2 == 0) mono = "q^(" + std::to_string(e / 2) + ")";
    }
    if (mono.empty())
      out += std::to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += std::to_string(mag) + "*" + mono;
  }
  return out;
}

}  // namespace mseg
