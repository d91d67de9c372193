#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace sysmap {

/// A scene length stored as an integer count of thousandths of a unit.
/// Layout arithmetic is exact, and every length prints with at most three
/// fractional digits.
class Length {
public:
  constexpr Length() = default;

  static constexpr Length from_millis(std::int64_t millis) {
    Length l;
    l.millis_ = millis;
    return l;
  }
  static Length from_units(double units) {
    return from_millis(static_cast<std::int64_t>(std::llround(units * 1000.0)));
  }

  constexpr std::int64_t millis() const { return millis_; }
  constexpr double units() const { return static_cast<double>(millis_) / 1000.0; }

  constexpr Length &operator+=(Length o) {
    millis_ += o.millis_;
    return *this;
  }
  friend constexpr Length operator+(Length a, Length b) { return a += b; }
  friend constexpr Length operator-(Length a, Length b) {
    return from_millis(a.millis_ - b.millis_);
  }
  friend constexpr Length operator*(Length a, std::int64_t k) {
    return from_millis(a.millis_ * k);
  }
  friend constexpr auto operator<=>(Length, Length) = default;

private:
  std::int64_t millis_{0};
};

struct Point2 {
  Length x;
  Length z;
  friend constexpr bool operator==(const Point2 &, const Point2 &) = default;
};

} // namespace sysmap
