#pragma once

#include <complex>
#include <string>
#include <vector>

#include "relclass/quadforms.hpp"

namespace relclass {

inline constexpr i64 kMaxTruncation = 10000;

// sum_{n <= X} v_n n^{-s}; v[0] unused
struct CoeffSeries {
    i64 X = 0;
    std::vector<Rat> v;
    std::string tag;  // ideal-count, euler-product, quotient
    Rat operator[](i64 n) const { return v[n]; }
};

CoeffSeries series_one(i64 X);
CoeffSeries series_mul(const CoeffSeries& a, const CoeffSeries& b);
CoeffSeries series_div(const CoeffSeries& a, const CoeffSeries& b);  // b_1 = 1
// replace n^{-s} by n^{-ks}
CoeffSeries series_dilate(const CoeffSeries& a, int k);
bool series_equal(const CoeffSeries& a, const CoeffSeries& b);

CoeffSeries zeta_enum(const Field& F, i64 X);
CoeffSeries zeta_euler(const Field& F, i64 X);
CoeffSeries zeta_enum(const CMField& K, i64 X);
CoeffSeries zeta_euler(const CMField& K, i64 X);
// both ways, compared coefficientwise
CoeffSeries zeta_coeffs(const Field& F, i64 X);
CoeffSeries zeta_coeffs(const CMField& K, i64 X);

// zeta_K(s) / zeta_F(2s)
CoeffSeries vseries_quotient(const CMField& K, i64 X);
CoeffSeries vseries_euler(const CMField& K, i64 X);
CoeffSeries vseries(const CMField& K, i64 X);

struct VsumReport {
    double threshold = 0;  // |d|^{1/2} / 2^n
    Rat partial_sum;
    int h = 0;
    bool ok = true;
    double margin = 0;
};
VsumReport vsum_check(const CMField& K, i64 X = kMaxTruncation);

using cplx = std::complex<double>;
cplx cgamma(cplx z);
cplx clgamma(cplx z);

// 1: Gamma(s-u); 2: h_K A1 2^{ns-n} s / ((s-1) |d|^{s/2}); 3: h_F sqrt(A2) s / (s-1/2)
struct MellinParams {
    double u = 0;
    int n = 1;
    double hK = 1, hF = 1, A1 = 1, A2 = 1, dnorm = 1;
};
cplx mellin_closed(int kind, const MellinParams& p, cplx s);
// int_0^inf t^{-s} e^{-1/t} t^{u-1} dt by quadrature
cplx mellin_quadrature(double u, cplx s);

struct StepMeasure {
    std::vector<std::pair<double, double>> atoms;  // location, mass
    // density c * t^g on [lo, inf)
    double c = 0, g = 0, lo = 0;
    // int_0^x mu([0,t]) dt
    double integral(double x) const;
};

// classes of alpha in N minus the line through ell, modulo units, with |N_{K/Q}(alpha)| <= T
std::vector<Rat> orbit_norms(const CMField& K, const RelIdeal& N, const KElem& ell, const Rat& T);
// classes of nonzero a in the F-ideal, modulo units, with |N(a)| <= T
std::vector<Rat> orbit_norms(const Field& F, const FIdeal& a, const Rat& T);

struct MinimalLine {
    KElem gen;       // L = coeff * gen
    FIdeal coeff;
    Rat value;       // |N_{K/Q}(L o_K)|
};
MinimalLine minimal_saturated_line(const CMField& K, const RelIdeal& N);

StepMeasure mu_K(const CMField& K, double xmax);
StepMeasure mu_K_majorant(const CMField& K, double A1);
StepMeasure mu_F(const Field& F, double xmax);
StepMeasure mu_F_majorant(const Field& F, double A2);

struct MeasureSample {
    double x = 0, lhs = 0, rhs = 0;
    bool ok = true;
};
struct MeasureReport {
    std::vector<MeasureSample> K, F;
    bool ok = true;
};
MeasureReport measure_compare(const CMField& K, const std::vector<double>& xs, double A1, double A2);

}  // namespace relclass
