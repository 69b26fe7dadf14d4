#pragma once

#include <map>
#include <string>
#include <vector>

#include "relclass/hecke.hpp"
#include "relclass/interval.hpp"

namespace relclass {

struct LatticeConstants {
    int n = 1;
    i64 dF = 1;
    Iv d0{0}, T0{0}, CT0{0}, C1{0}, A1{0}, A2{0};
    double slack = 0;
};

Iv lattice_T0(const Field& F);
// certified upper bound for C_T by covering the fundamental parallelepipeds
Iv covering_constant(const Field& F, const Iv& T, double slack = 0);
LatticeConstants lattice_constants(const Field& F, double slack = 0);

struct BoxSpec {
    FIdeal a;
    std::vector<double> x0, c;
};
i64 count_box(const Field& F, const BoxSpec& b);

struct BoxReport {
    i64 count = 0;
    double bound = 0;
    double margin = 0;  // bound - count
    bool ok = true;
};
BoxReport box_bound_check(const Field& F, const BoxSpec& b, const LatticeConstants& L);

struct NormCountReport {
    i64 lhs = 0;
    double rhs = 0;
    Rat t;
    bool ok = true;
};
// (a): classes in N minus its minimal saturated line
NormCountReport norm_count_K(const CMField& K, const RelIdeal& N, const Rat& t, const LatticeConstants& L);
// (b)
NormCountReport norm_count_F(const Field& F, const FIdeal& a, const Rat& t, const LatticeConstants& L);

struct BoundParams {
    int n = 1, t = 0, hK = 0, h = 0;
    i64 idx = 2;
    int r = 1;          // minimal r with 2r^2 + 2r >= idx hK
    bool m_half = true; // m = 3/2
    double m = 1.5;
    i64 Nd = 0;         // |d_{K/F}|
    Iv V{0}, U{0};
    i64 R = 0;
    std::vector<i64> disc_norms;  // norms of the primes dividing d_{K/F}
    std::vector<i64> P_UK, P_K;   // norms
    int split_below_V = 0, split_below_U = 0;
    bool lemma1 = true, lemma2 = true, lemma3 = true;
};
// minimal r >= 1 with 2r^2 + 2r >= k
int min_r(i64 k);
BoundParams bound_params(const CMField& K, bool throw_on_violation = true);

struct DConst {
    Iv D1{0}, D2{0}, D3{0}, D4{0};
};
DConst D_constants(const BoundParams& bp);
DConst D_constants(double lambda, int n, i64 idx);
struct Domination {
    bool applies = false;  // |d| >= e^{lambda hK}
    bool d1 = true, d2 = true, d3 = true, d4 = true;
    bool ok() const { return d1 && d2 && d3 && d4; }
};
Domination D_domination(const BoundParams& bp, double lambda);

struct GOptions {
    i64 P = 10000;      // Euler truncation for L(1, sym^2) and its log derivative
    i64 P_contour = 1000;
    double eta = 0.125, eta2 = 0.125;
    double step = 0.01;
    double gamma_cut = 1e-12;
};

struct GConst {
    double G1 = 0, G2 = 0, G3 = 0;
    std::map<std::string, std::string> provenance;  // heuristic or injected
    // pieces
    i64 level_norm = 0;
    double Lsym = 0, Lsym_drift = 0, dlogL = 0;
    double rho = 1, c0 = 0;
    double zinv_d1 = 0, zinv_ratio = 0;
    double integral = 0, integral_half = 0, halving_drift = 0;
    double tail_cut = 0, tail_bound = 0;
};
GConst G_heuristic(const EigenvalueTable& f, const GOptions& o = {});
// any of G1, G2, G3 present in the map replace the heuristic values
GConst G_inject(const GConst& base, const std::map<std::string, double>& values);
GConst G_constants(const EigenvalueTable& f, const std::string& strategy,
                   const std::map<std::string, double>& injected = {}, const GOptions& o = {});

// residue and constant Laurent term of zeta_F at 1
struct ZetaLaurent {
    double rho = 1, c0 = 0;
    double rho_series = 1;  // from the character sum, as a check
};
ZetaLaurent zeta_laurent(const Field& F);
// Hurwitz zeta by Euler-Maclaurin, Re w > 0, w != 1
cplx hurwitz_zeta(cplx w, double x);
cplx zeta_F_complex(const Field& F, cplx w);

struct ZetaTwo {
    Iv value{0};
    i64 N = 0;
    double partial = 0;
    double tail = 0;  // |tail| <= tail
};
ZetaTwo zeta_F2(const Field& F, i64 N = 100000);

struct BConst {
    Iv Mp{0}, zeta2{0}, B1{0}, B2{0}, B3{0};
    bool log_branch = false;  // log(4^n M') > 2
};
BConst B_constants(const Field& F, const Iv& A1, const Iv& A2, const Iv& Mp);
Iv Mprime(const Field& F, i64 level_norm);

struct Bundle {
    int n = 1;
    i64 dF = 1, idx = 2;
    int hF = 1;
    LatticeConstants L;
    i64 level_norm = 0;
    Iv Mp{0};
    BConst B;
    GConst G;
    double eta = 0.125, eta2 = 0.125, sigma = 1.5;
    double F2_uniform = 0;
    int precision_bits = 128;
    std::map<std::string, std::string> rigor;
};
Bundle make_bundle(const Field& F, const EigenvalueTable& f, const GConst& G);

inline const std::vector<double> kDefaultGrid = {1, 2, 5, 10, 20, 50, 100, 200};
// default grid followed by decades 1e3 .. 1e20
std::vector<double> decade_grid();

struct LambdaRow {
    double lambda = 0;
    bool admissible = true;  // e^{lambda/2} > 2^n
    DConst D;
    Iv F1{0}, E1{0}, E2{0}, C{0};
    bool feasible = false;  // E2 > 0
};
struct FinalC {
    double lambda = 0;
    double C = 0;  // certified lower end, given the G inputs
    double F2 = 1;
    std::vector<LambdaRow> rows;
};
Iv F1_of(const Bundle& b, double lambda);
LambdaRow lambda_row(const Bundle& b, double F2, double lambda);
FinalC final_C(const Bundle& b, double F2, const std::vector<double>& grid);

double F2_of(const BoundParams& bp);
double F2_uniform(const Field& F);

struct FinalBound {
    BoundParams bp;
    int s = 0, e = 1, places37 = 0;
    double f = 1;
    bool split37 = false;
    double branch1 = 0, branch2 = 0, bound = 0;
    double factor = 1;  // product over P(K)
    double logd = 0;
    FinalC C;
    std::map<std::string, std::string> rigor;
    bool checked = false, ok = true;
};
// parity of n + s, s the number of primes of F above 37
bool parity_ok(const Field& F);
FinalBound final_bound(const CMField& K, const Bundle& b, const std::vector<double>& grid);

}  // namespace relclass
