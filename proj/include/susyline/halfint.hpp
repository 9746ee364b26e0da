#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace susyline {

/// Exact half-integer, stored as twice its value. Carries quantum numbers
/// (j, jz) and the exponents of the trigonometric monomial ring.
struct HalfInt {
    int twice = 0;

    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(int t) {
        HalfInt h;
        h.twice = t;
        return h;
    }
    static constexpr HalfInt whole(int n) { return from_twice(2 * n); }
    /// p/2 for odd p, the half-odd values jz and j live on.
    static constexpr HalfInt halves(int p) { return from_twice(p); }

    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr bool is_half_odd() const { return twice % 2 != 0; }

    constexpr double value() const { return twice / 2.0; }

    constexpr HalfInt operator-() const { return from_twice(-twice); }
    constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice + o.twice); }
    constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice - o.twice); }
    constexpr HalfInt operator+(int n) const { return from_twice(twice + 2 * n); }
    constexpr HalfInt operator-(int n) const { return from_twice(twice - 2 * n); }

    constexpr auto operator<=>(const HalfInt&) const = default;

    constexpr HalfInt abs() const { return from_twice(twice < 0 ? -twice : twice); }

    /// "3/2", "-1/2", "2", ...
    std::string str() const {
        if (is_integer()) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }
};

inline constexpr HalfInt operator+(int n, HalfInt h) { return h + n; }

} // namespace susyline
