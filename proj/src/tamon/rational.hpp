#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace tamon {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
///
/// Clock constants, time spans, clock values and timestamps all live in this
/// type so that interval membership and guards such as `x = c` are decided
/// exactly. Storage is 128-bit; every operation checks for overflow and throws
/// `Error(ErrorKind::Overflow)` instead of wrapping.
class Rat {
 public:
  using Int = __int128;

  constexpr Rat() noexcept = default;
  // NOLINTNEXTLINE(google-explicit-constructor)
  constexpr Rat(std::int64_t value) noexcept : num_(value), den_(1) {}
  Rat(Int num, Int den);

  /// Accepts `7`, `-7`, `3/2`, `0.25` (decimal literals are exact: 0.25 == 1/4).
  static Rat parse(std::string_view text);

  const Int& num() const noexcept { return num_; }
  const Int& den() const noexcept { return den_; }

  bool is_integer() const noexcept { return den_ == 1; }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_positive() const noexcept { return num_ > 0; }
  bool is_negative() const noexcept { return num_ < 0; }

  double to_double() const noexcept;
  std::string str() const;

  Rat operator-() const;
  Rat& operator+=(const Rat& rhs);
  Rat& operator-=(const Rat& rhs);
  Rat& operator*=(const Rat& rhs);
  Rat& operator/=(const Rat& rhs);

  friend Rat operator+(Rat lhs, const Rat& rhs) { return lhs += rhs; }
  friend Rat operator-(Rat lhs, const Rat& rhs) { return lhs -= rhs; }
  friend Rat operator*(Rat lhs, const Rat& rhs) { return lhs *= rhs; }
  friend Rat operator/(Rat lhs, const Rat& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rat& a, const Rat& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

  std::size_t hash() const noexcept;

 private:
  Int num_ = 0;
  Int den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

std::string int128_to_string(Rat::Int value);

}  // namespace tamon

template <>
struct std::hash<tamon::Rat> {
  std::size_t operator()(const tamon::Rat& r) const noexcept { return r.hash(); }
};
