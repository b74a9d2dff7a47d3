#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mseg/error.hpp"

namespace mseg {

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

// Laurent polynomial in v with v^2 = q; c[i] is the coefficient of v^(lo+i)
class QPoly {
public:
  QPoly() = default;
  QPoly(std::int64_t constant);
  static QPoly monomial(std::int64_t coef, int v_exp);
  static QPoly q_power(std::int64_t coef, int q_exp) { return monomial(coef, 2 * q_exp); }

  bool is_zero() const { return c_.empty(); }
  int low_v() const { return lo_; }
  int high_v() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  std::int64_t coeff_v(int e) const;
  std::int64_t coeff_q(int e) const { return coeff_v(2 * e); }
  bool integral_q() const;
  std::int64_t at_one() const;
  bool nonnegative() const;

  QPoly shifted_v(int k) const;
  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  QPoly operator-() const;

  bool operator==(const QPoly& o) const { return lo_ == o.lo_ && c_ == o.c_; }

  std::string str() const;

private:
  void normalize();
  int lo_ = 0;
  std::vector<std::int64_t> c_;
};

}  // namespace mseg
