#include "metamatrix/golden.hpp"

#include <stdexcept>

namespace metamatrix {
namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r))
    throw std::overflow_error("Z[phi] coefficient overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_sub_overflow(x, y, &r))
    throw std::overflow_error("Z[phi] coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r))
    throw std::overflow_error("Z[phi] coefficient overflow");
  return r;
}

} // namespace

int Golden::sign() const {
  if (a_ >= 0 && b_ >= 0)
    return (a_ == 0 && b_ == 0) ? 0 : 1;
  if (a_ <= 0 && b_ <= 0)
    return -1;
  // a + b*phi = ((2a + b) + b*sqrt5) / 2 with a and b of opposite signs.
  const __int128 s = static_cast<__int128>(2) * a_ + b_;
  const __int128 s2 = s * s;
  const __int128 b2 = static_cast<__int128>(5) * b_ * b_;
  if (b_ > 0)
    return (s >= 0 || b2 > s2) ? 1 : -1;
  return (s > 0 && s2 > b2) ? 1 : -1;
}

Golden Golden::operator-() const { return Golden(checked_sub(0, a_), checked_sub(0, b_)); }

Golden operator+(const Golden &x, const Golden &y) {
  return Golden(checked_add(x.a_, y.a_), checked_add(x.b_, y.b_));
}

Golden operator-(const Golden &x, const Golden &y) {
  return Golden(checked_sub(x.a_, y.a_), checked_sub(x.b_, y.b_));
}

Golden operator*(const Golden &x, const Golden &y) {
  if (x.b_ == 0 && y.b_ == 0)
    return Golden(checked_mul(x.a_, y.a_));
  // (a + b phi)(c + d phi) = (ac + bd) + (ad + bc + bd) phi
  const std::int64_t ac = checked_mul(x.a_, y.a_);
  const std::int64_t bd = checked_mul(x.b_, y.b_);
  const std::int64_t ad = checked_mul(x.a_, y.b_);
  const std::int64_t bc = checked_mul(x.b_, y.a_);
  return Golden(checked_add(ac, bd), checked_add(checked_add(ad, bc), bd));
}

std::string Golden::to_string() const {
  if (b_ == 0)
    return std::to_string(a_);
  std::string s = a_ != 0 ? std::to_string(a_) : std::string();
  if (!s.empty())
    s += b_ < 0 ? "-" : "+";
  else if (b_ < 0)
    s += "-";
  const std::int64_t mag = b_ < 0 ? -b_ : b_;
  if (mag != 1)
    s += std::to_string(mag) + "*";
  return s + "phi";
}

} // namespace metamatrix
