#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "relclass/dirichlet.hpp"

namespace relclass {

// (p, index of the prime in F.factor_prime(p).primes)
using PKey = std::pair<i64, int>;
PKey prime_key(const Field& F, const FPrime& P);

// y^2 + y = x^3 + x^2 - 23x - 50
i64 ap_curve(i64 p);
inline constexpr i64 kCurveLevel = 37;
inline constexpr i64 kTwistDisc = -139;

struct QuadChar {
    int n = 1;
    std::string label;
    i64 disc = 0;  // Kronecker discriminant over Q, 0 if not of that shape
    std::map<PKey, int> cond;  // conductor exponents
    int sign_minus1 = 1;       // finite part at -1
    std::function<int(const FPrime&, const PKey&)> value;

    int operator()(const FPrime& P, const PKey& k) const;
    int cond_exp(const PKey& k) const {
        auto it = cond.find(k);
        return it == cond.end() ? 0 : it->second;
    }
    bool trivial() const { return cond.empty() && label == "trivial"; }
};

QuadChar trivial_char(const Field& F);
// Kronecker character of a fundamental discriminant D
QuadChar kronecker_char(i64 D);
// (., K/F)
QuadChar extension_char(const CMField& K);
// chi0 o N_{F/Q} for a Kronecker character chi0 whose primes are unramified in F
QuadChar norm_char(const Field& F, i64 D);
// arbitrary values at listed primes, 1 elsewhere
QuadChar synthetic_char(const Field& F, const std::map<PKey, int>& values, const std::map<PKey, int>& cond,
                        int sign_minus1);
// product over Q via the fundamental discriminant of D1 D2
QuadChar char_product(const QuadChar& a, const QuadChar& b);
i64 fundamental_disc(i64 D);

struct EigenvalueTable {
    std::shared_ptr<const Field> F;
    i64 pmax = 0;  // every prime of F above p <= pmax is present
    std::map<PKey, i64> lambda;
    std::map<PKey, i64> qnorm;
    std::map<PKey, int> level;  // exponents of the level
    int eps = 0;                // 0 unknown
    std::string provenance;     // point-count, twist, base-change, synthetic
    // a twist remembers the untwisted table and character
    std::shared_ptr<const EigenvalueTable> origin;
    std::shared_ptr<const QuadChar> origin_char;

    i64 at(const PKey& k) const;
    int level_exp(const PKey& k) const {
        auto it = level.find(k);
        return it == level.end() ? 0 : it->second;
    }
    i64 level_norm() const;
    bool level_squarefree() const;
};

EigenvalueTable curve_table(i64 pmax);
EigenvalueTable twist_table(const EigenvalueTable& T, const QuadChar& chi);
EigenvalueTable base_change_table(const EigenvalueTable& T, const Field& F);
// lambda listed prime by prime over Q
EigenvalueTable synthetic_table(const Field& F, const std::map<PKey, i64>& lambda,
                                const std::map<PKey, int>& level, int eps, i64 pmax);

// "norm,f,e,lambda" lines, level in "#level,p,idx,exp" lines
std::string table_to_text(const EigenvalueTable& T);
EigenvalueTable table_from_text(const Field& F, const std::string& text);

i64 hecke_prime_power(const EigenvalueTable& T, const PKey& k, int e);
i64 hecke_extend(const EigenvalueTable& T, const FIdeal& m);
// sum over ideals of norm n of lambda(m), by the Euler product
CoeffSeries hecke_series(const EigenvalueTable& T, i64 X);
// a_n for n <= X over Q, multiplicatively
std::vector<i64> hecke_coeffs_Q(const EigenvalueTable& T, i64 X);

// integer polynomial in X = |p|^{-s}, ascending coefficients
using Poly = std::vector<i64>;
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_trim(Poly a);
bool poly_equal(const Poly& a, const Poly& b);
std::string poly_str(const Poly& a);

// num / den
struct RatFn {
    Poly num{1}, den{1};
};

struct EulerFactors {
    PKey key;
    i64 q = 0;
    int psi_case = 1;  // 1: p not dividing a, 2: p | a but not case 3, 3: p^2 | gcd(a, d_chi^2)
    RatFn D, Dchi, Sym2, Psi, Phi;
    bool roots_ok = true;
    bool identity_ok = true;
};
// Sym2 is L_p(2s-1, sym^2)
EulerFactors euler_factors(const EigenvalueTable& f, const EigenvalueTable& fchi, const QuadChar& chi,
                           const PKey& k);
// largest |root| of 1 + c1 X + c2 X^2 = (1 - a X)(1 - b X), i.e. max(|a|, |b|)
double max_inverse_root(const Poly& p);

int epsilon_factor(const EigenvalueTable& f, const QuadChar& chi);

struct EpsilonNumeric {
    int eps = 0;
    double resid_plus = 0, resid_minus = 0, ratio = 0;
};
// |theta(1/t) -+ t^2 theta(t)| at a few t
EpsilonNumeric epsilon_numeric(const EigenvalueTable& T);

struct LValue {
    double value = 0;
    double tail = 0;  // truncation estimate
    bool exact_zero = false;
    i64 terms = 0;
};
LValue lvalue_numeric(const EigenvalueTable& T, int k, int eps);
double expint_e1(double x);

struct SymSq {
    double value = 0;
    double value_coarse = 0;  // at P/10
    double drift = 0;         // |log value - log value_coarse|
    i64 P = 0;
};
SymSq symsq_L1(const EigenvalueTable& T, i64 P);

}  // namespace relclass
