#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "relclass/errors.hpp"

namespace relclass {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 narrow(i128 v) {
    if (v > INT64_MAX || v < -INT64_MAX) throw ArithmeticOverflow("int64 range");
    return (i64)v;
}
inline i64 iabs(i64 a) { return a < 0 ? -a : a; }
inline i64 gcd64(i64 a, i64 b) { return std::gcd(a, b); }
inline i64 lcm64(i64 a, i64 b) {
    if (!a || !b) return 0;
    return narrow((i128)(iabs(a) / gcd64(a, b)) * iabs(b));
}
inline i64 floordiv(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

// exact rational with normalized int64 parts; overflow throws
struct Rat {
    i64 p = 0, q = 1;
    Rat() = default;
    Rat(i64 v) : p(v), q(1) {}
    Rat(i64 a, i64 b) {
        if (b == 0) throw std::domain_error("zero denominator");
        if (b < 0) a = -a, b = -b;
        i64 g = gcd64(a, b);
        if (g > 1) a /= g, b /= g;
        p = a;
        q = b;
    }
    static Rat from128(i128 a, i128 b) {
        if (b < 0) a = -a, b = -b;
        i128 x = a < 0 ? -a : a, y = b;
        while (y) { i128 t = x % y; x = y; y = t; }
        if (x > 1) a /= x, b /= x;
        Rat r;
        r.p = narrow(a);
        r.q = narrow(b);
        return r;
    }
    bool is_zero() const { return p == 0; }
    bool is_int() const { return q == 1; }
    int sign() const { return (p > 0) - (p < 0); }
    double to_double() const { return (double)p / (double)q; }
    std::string str() const { return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q); }
    static Rat parse(const std::string& s);
};

inline Rat operator+(const Rat& a, const Rat& b) {
    if (a.q == 1 && b.q == 1) return Rat(narrow((i128)a.p + b.p));
    return Rat::from128((i128)a.p * b.q + (i128)b.p * a.q, (i128)a.q * b.q);
}
inline Rat operator-(const Rat& a) { Rat r = a; r.p = -r.p; return r; }
inline Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
inline Rat operator*(const Rat& a, const Rat& b) {
    if (a.q == 1 && b.q == 1) return Rat(narrow((i128)a.p * b.p));
    return Rat::from128((i128)a.p * b.p, (i128)a.q * b.q);
}
inline Rat operator/(const Rat& a, const Rat& b) {
    if (b.p == 0) throw std::domain_error("division by zero");
    return Rat::from128((i128)a.p * b.q, (i128)a.q * b.p);
}
inline Rat& operator+=(Rat& a, const Rat& b) { return a = a + b; }
inline Rat& operator-=(Rat& a, const Rat& b) { return a = a - b; }
inline Rat& operator*=(Rat& a, const Rat& b) { return a = a * b; }
inline bool operator==(const Rat& a, const Rat& b) { return a.p == b.p && a.q == b.q; }
inline bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
inline bool operator<(const Rat& a, const Rat& b) { return (i128)a.p * b.q < (i128)b.p * a.q; }
inline bool operator>(const Rat& a, const Rat& b) { return b < a; }
inline bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
inline bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }
inline Rat rabs(const Rat& a) { return a.p < 0 ? -a : a; }

// integer helpers
i64 isqrt(i64 n);
bool is_square(i64 n);
bool is_prime(i64 n);
bool is_squarefree(i64 n);
std::vector<std::pair<i64, int>> factor(i64 n);
std::vector<i64> primes_upto(i64 n);
i64 powmod(i64 b, i64 e, i64 m);
int legendre(i64 a, i64 p);
int kronecker(i64 a, i64 n);
i64 sqrtmod(i64 a, i64 p);  // p odd prime, a a residue
i64 invmod(i64 a, i64 m);
int valuation(i64 n, i64 p);
i64 ipow(i64 b, int e);

}  // namespace relclass
