// wide_int.hpp: checked 128-bit unsigned arithmetic for closed-form counts.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace corona {

using u128 = unsigned __int128;

struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

inline u128 checked_add(u128 a, u128 b) {
    u128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
    return r;
}

inline u128 checked_mul(u128 a, u128 b) {
    u128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
    return r;
}

inline u128 checked_sub(u128 a, u128 b) {
    if (b > a) throw OverflowError("128-bit subtraction underflow");
    return a - b;
}

inline u128 checked_pow(u128 base, std::uint64_t exp) {
    u128 r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

inline bool fits_u64(u128 v) { return v <= static_cast<u128>(UINT64_MAX); }

inline double to_double(u128 v) { return static_cast<double>(v); }

}  // namespace corona
