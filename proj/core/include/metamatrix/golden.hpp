#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace metamatrix {

/// Element a + b*phi of Z[phi], phi = (1 + sqrt 5) / 2, so phi^2 = phi + 1.
///
/// Integer root data is the special case b == 0. Coefficients are 64-bit;
/// every operation is overflow-checked and throws std::overflow_error rather
/// than wrapping. Root coordinates of the supported groups stay below 10^3.
class Golden {
public:
  constexpr Golden() = default;
  constexpr Golden(std::int64_t a) : a_(a) {} // NOLINT: implicit from integers
  constexpr Golden(std::int64_t a, std::int64_t b) : a_(a), b_(b) {}

  static constexpr Golden phi() { return Golden(0, 1); }

  constexpr std::int64_t rational_part() const { return a_; }
  constexpr std::int64_t phi_part() const { return b_; }
  constexpr bool is_zero() const { return a_ == 0 && b_ == 0; }
  constexpr bool is_integer() const { return b_ == 0; }

  /// Exact sign of a + b*phi in {-1, 0, 1}.
  int sign() const;

  Golden operator-() const;
  friend Golden operator+(const Golden &x, const Golden &y);
  friend Golden operator-(const Golden &x, const Golden &y);
  friend Golden operator*(const Golden &x, const Golden &y);
  Golden &operator+=(const Golden &y) { return *this = *this + y; }
  Golden &operator-=(const Golden &y) { return *this = *this - y; }

  friend constexpr bool operator==(const Golden &, const Golden &) = default;

  std::string to_string() const;

private:
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
};

} // namespace metamatrix

template <> struct std::hash<metamatrix::Golden> {
  std::size_t operator()(const metamatrix::Golden &g) const noexcept {
    const auto a = static_cast<std::uint64_t>(g.rational_part());
    const auto b = static_cast<std::uint64_t>(g.phi_part());
    return static_cast<std::size_t>(a * 0x9E3779B97F4A7C15ull ^ (b + 0x632BE59BD9B4E019ull));
  }
};
