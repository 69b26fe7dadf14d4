#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "relclass/bound.hpp"

// Independent reference computations. None of these call the library's
// ideal arithmetic, class group, form reduction or character code.
namespace oracle {

using relclass::i64;

// primitive reduced positive definite forms of discriminant D < 0
std::vector<std::array<i64, 3>> reduced_forms(i64 D);
int class_number(i64 D);
// classes modulo inversion (a,b,c) -> (a,-b,c)
int conj_orbits(i64 D);
bool is_fundamental(i64 D);
// fundamental discriminants -dmax <= D < 0
std::vector<i64> neg_fundamentals(i64 dmax);
// number of primes dividing D
int omega(i64 D);

// Kronecker symbol (D/n), n > 0, by factoring n and Euler's criterion
int kronecker(i64 D, i64 n);

// p + 1 - #E(F_p) for y^2 + y = x^3 + x^2 - 23x - 50, Legendre sums via powmod
i64 ap_count(i64 p);

// class group of o_K by ideal enumeration: HNF sublattices of o_K closed under
// multiplication, principality by LLL plus box search
struct ClassGroup {
    int h = 0;
    int orbits = 0;  // modulo complex conjugation
    int ideals = 0;  // enumerated ideals of norm <= bound
    i64 bound = 0;
};
ClassGroup cm_class_group(const relclass::CMField& K);

// integer polynomial product, ascending coefficients
std::vector<i64> pmul(const std::vector<i64>& a, const std::vector<i64>& b);

// fixed-seed stream for property tests
struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    std::uint64_t next() { return g(); }
    i64 range(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(g); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }
};

}  // namespace oracle
