#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relclass/lattice.hpp"

namespace relclass {

// omega^2 = t*omega - nw; for n=1 the omega coordinate is always zero
struct FieldCore {
    int n = 1;
    i64 m = 0;
    i64 t = 0, nw = 0;
    bool mod4 = false;  // m = 1 mod 4
};

struct FElem {
    Rat a, b;
    const FieldCore* f = nullptr;

    FElem() = default;
    FElem(const FieldCore* core, Rat x, Rat y = 0) : a(x), b(y), f(core) {}

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool is_integral() const { return a.is_int() && b.is_int(); }
    FElem conj() const;
    Rat norm() const;
    Rat trace() const;
    FElem inv() const;
    // value under embedding k as A + B*sqrt(m)
    std::pair<Rat, Rat> surd(int k) const;
    int sign(int k) const;
    double embed(int k) const;
    bool is_totally_positive() const;
    bool is_totally_negative() const;
    i64 denom() const { return lcm64(a.q, b.q); }
    RVec coords() const;
    std::string str() const;
};

FElem operator+(const FElem& x, const FElem& y);
FElem operator-(const FElem& x, const FElem& y);
FElem operator-(const FElem& x);
FElem operator*(const FElem& x, const FElem& y);
FElem operator*(const FElem& x, const Rat& r);
FElem operator/(const FElem& x, const FElem& y);
bool operator==(const FElem& x, const FElem& y);
inline bool operator!=(const FElem& x, const FElem& y) { return !(x == y); }
bool operator<(const FElem& x, const FElem& y);  // lexicographic on coords

int surd_sign(const Rat& A, const Rat& B, i64 m);

// ideal of F: lattice over the basis (1, omega), or (1) for n=1
struct FIdeal {
    Lat L;
    const FieldCore* f = nullptr;
    Rat norm() const;
    bool is_integral() const;
    bool contains(const FElem& x) const;
    std::vector<FElem> basis() const;
    bool operator==(const FIdeal& o) const { return L == o.L; }
    bool operator!=(const FIdeal& o) const { return !(L == o.L); }
    bool operator<(const FIdeal& o) const { return L < o.L; }
    std::string str() const;
};

struct FPrime {
    i64 p = 0;
    int e = 1, f = 1;
    FIdeal P;
    FElem tau;  // tau/p has valuation -1 here and >= 0 at other primes over p
    FElem pi;   // uniformizer
    FElem rho;  // unit here, divisible by the other primes over p
    i64 norm() const { return ipow(p, f); }
    bool operator==(const FPrime& o) const { return P == o.P; }
};

struct SplittingType {
    i64 p = 0;
    std::vector<FPrime> primes;
    bool split() const { return primes.size() == 2; }
    bool ramified() const { return primes.size() == 1 && primes[0].e == 2; }
    bool inert() const { return primes.size() == 1 && primes[0].f == 2; }
};

class Field;

// residue ring o/p^N, used for local symbols and square tests
struct LocalRing {
    const Field* F = nullptr;
    FPrime P;
    int N = 1;
    FIdeal PN;
    std::vector<FElem> reps() const;
    FElem reduce(const FElem& x) const;  // x a p-adic integer
    FElem mul(const FElem& x, const FElem& y) const { return reduce(x * y); }
    FElem inv(const FElem& x) const;
    bool is_zero(const FElem& x) const { return reduce(x).is_zero(); }
    i64 size() const;
};

class Field {
public:
    std::shared_ptr<FieldCore> core;
    i64 dF = 1;
    FElem eps;
    double regulator = 1.0;
    double d0 = 0.0;
    int hF = 1;
    std::vector<FIdeal> class_reps;
    i64 unit_sq_index = 2;
    long long budget = 1000000;

    int n() const { return core->n; }
    i64 m() const { return core->m; }
    FElem elem(Rat a, Rat b = 0) const { return FElem(core.get(), a, b); }
    FElem omega() const { return elem(0, n() == 2 ? 1 : 0); }
    FElem one() const { return elem(1); }
    FIdeal unit_ideal() const;
    FIdeal principal(const FElem& x) const;
    FIdeal ideal_from(const std::vector<FElem>& gens) const;
    FIdeal mul(const FIdeal& a, const FIdeal& b) const;
    FIdeal add(const FIdeal& a, const FIdeal& b) const;
    FIdeal inverse(const FIdeal& a) const;
    FIdeal conj(const FIdeal& a) const;
    FIdeal pow(const FIdeal& a, int k) const;
    FIdeal scale(const FIdeal& a, const Rat& r) const;
    FIdeal integral_rat(i64 k) const { return principal(elem(k)); }

    SplittingType factor_prime(i64 p) const;
    // factorization of a fractional ideal into primes with exponents
    std::vector<std::pair<FPrime, int>> factor_ideal(const FIdeal& a) const;
    int valuation(const FPrime& P, const FElem& x) const;
    int valuation(const FPrime& P, const FIdeal& a) const;
    LocalRing local(const FPrime& P, int N) const;
    // x a unit at P; square in o_P?
    bool is_local_square(const FPrime& P, const FElem& x) const;
    bool is_square(const FElem& x, FElem* root = nullptr) const;

    // generator of a principal ideal, or nullopt
    std::optional<FElem> generator(const FIdeal& a) const;
    bool is_principal(const FIdeal& a) const { return generator(a).has_value(); }
    int class_index(const FIdeal& a) const;  // index into class_reps
    // totally-positive-first, minimal trace, then lexicographic
    FElem canonical_associate(const FElem& g) const;
    FElem unit_reduce(const FElem& g) const;  // log-embedding centred

    double embed(int k, const FElem& x) const { return x.embed(k); }
    std::vector<FIdeal> ideals_upto(i64 bound) const;
};

Field make_field(int n, i64 m = 0);
std::string field_json(const Field& F);

}  // namespace relclass
