#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace rfh {

// Half-integer stored exactly as numerator over a fixed denominator of 2.
struct HalfInt {
    std::int64_t num = 0;  // value = num / 2

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(std::int64_t numerator) : num(numerator) {}

    static constexpr HalfInt whole(std::int64_t k) { return HalfInt(2 * k); }

    constexpr bool is_integer() const { return num % 2 == 0; }
    constexpr std::int64_t as_integer() const { return num / 2; }
    constexpr double as_double() const { return static_cast<double>(num) / 2.0; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.num + b.num); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.num - b.num); }
    friend constexpr HalfInt operator-(HalfInt a) { return HalfInt(-a.num); }
    constexpr HalfInt& operator+=(HalfInt b) { num += b.num; return *this; }
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    std::string str() const {
        if (is_integer()) return std::to_string(as_integer());
        return std::to_string(num) + "/2";
    }
};

}  // namespace rfh
