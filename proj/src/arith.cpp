#include "relclass/arith.hpp"

#include <cmath>

namespace relclass {

Rat Rat::parse(const std::string& s) {
    auto k = s.find('/');
    if (k == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, k)), std::stoll(s.substr(k + 1)));
}

i64 isqrt(i64 n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    i64 r = (i64)std::sqrt((double)n);
    while (r > 0 && (i128)r * r > n) --r;
    while ((i128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(i64 n) {
    if (n < 0) return false;
    i64 r = isqrt(n);
    return r * r == n;
}

i64 powmod(i64 b, i64 e, i64 m) {
    i128 r = 1 % m, x = mod(b, m);
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return (i64)r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    i64 d = n - 1;
    int s = 0;
    while (d % 2 == 0) d /= 2, ++s;
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i128 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<std::pair<i64, int>> factor(i64 n) {
    std::vector<std::pair<i64, int>> out;
    n = iabs(n);
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

bool is_squarefree(i64 n) {
    for (auto& [p, e] : factor(n))
        if (e > 1) return false;
    return n != 0;
}

std::vector<i64> primes_upto(i64 n) {
    std::vector<i64> ps;
    if (n < 2) return ps;
    std::vector<char> sieve(n + 1, 1);
    for (i64 i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        ps.push_back(i);
        for (i64 j = i * i; j <= n; j += i) sieve[j] = 0;
    }
    return ps;
}

int legendre(i64 a, i64 p) {
    a = mod(a, p);
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int kronecker(i64 a, i64 n) {
    if (n == 0) return iabs(a) == 1 ? 1 : 0;
    int r = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) r = -r;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        i64 am = mod(a, 8);
        if (am == 3 || am == 5) r = -r;
    }
    for (auto& [p, e] : factor(n)) {
        int l = legendre(a, p);
        if (e % 2) r *= l;
        else if (l == 0) return 0;
    }
    return r;
}

i64 sqrtmod(i64 a, i64 p) {
    a = mod(a, p);
    if (a == 0 || p == 2) return a;
    i64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) q /= 2, ++s;
    i64 z = 2;
    while (legendre(z, p) != -1) ++z;
    i64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        i64 i = 0, tt = t;
        while (tt != 1) tt = (i128)tt * tt % p, ++i;
        i64 b = c;
        for (i64 j = 0; j < m - i - 1; ++j) b = (i128)b * b % p;
        m = i;
        c = (i128)b * b % p;
        t = (i128)t * c % p;
        r = (i128)r * b % p;
    }
    return r;
}

i64 invmod(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1) {
        i64 q = g / a1;
        std::swap(g, a1);
        a1 -= q * g;
        std::swap(x, x1);
        x1 -= q * x;
    }
    if (g != 1) throw std::domain_error("not invertible");
    return mod(x, m);
}

int valuation(i64 n, i64 p) {
    if (n == 0) return 1 << 20;
    int v = 0;
    while (n % p == 0) n /= p, ++v;
    return v;
}

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r = narrow((i128)r * b);
    return r;
}

}  // namespace relclass
