#include "relclass/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace relclass {

CoeffSeries series_one(i64 X) {
    CoeffSeries s;
    s.X = X;
    s.v.assign(X + 1, Rat(0));
    if (X >= 1) s.v[1] = 1;
    s.tag = "one";
    return s;
}

CoeffSeries series_mul(const CoeffSeries& a, const CoeffSeries& b) {
    i64 X = std::min(a.X, b.X);
    CoeffSeries c = series_one(X);
    c.v[1] = 0;
    for (i64 i = 1; i <= X; ++i) {
        if (a.v[i].is_zero()) continue;
        for (i64 j = 1; i * j <= X; ++j)
            if (!b.v[j].is_zero()) c.v[i * j] = c.v[i * j] + a.v[i] * b.v[j];
    }
    c.tag = "product";
    return c;
}

CoeffSeries series_div(const CoeffSeries& a, const CoeffSeries& b) {
    if (b.X < 1 || b.v[1] != Rat(1)) throw PreconditionFailed("series_div needs b_1 = 1");
    i64 X = std::min(a.X, b.X);
    CoeffSeries c = series_one(X);
    for (i64 n = 1; n <= X; ++n) c.v[n] = a.v[n];
    // c_n = a_n - sum_{d | n, d > 1} b_d c_{n/d}
    for (i64 n = 1; n <= X; ++n) {
        if (c.v[n].is_zero()) continue;
        for (i64 d = 2; d * n <= X; ++d)
            if (!b.v[d].is_zero()) c.v[d * n] = c.v[d * n] - b.v[d] * c.v[n];
    }
    c.tag = "quotient";
    return c;
}

CoeffSeries series_dilate(const CoeffSeries& a, int k) {
    CoeffSeries c = series_one(a.X);
    c.v[1] = 0;
    for (i64 n = 1; n <= a.X; ++n) {
        i64 m = 1;
        bool ok = true;
        for (int i = 0; i < k; ++i) {
            if ((i128)m * n > a.X) { ok = false; break; }
            m *= n;
        }
        if (!ok) break;
        c.v[m] = a.v[n];
    }
    c.tag = a.tag;
    return c;
}

bool series_equal(const CoeffSeries& a, const CoeffSeries& b) {
    i64 X = std::min(a.X, b.X);
    for (i64 n = 1; n <= X; ++n)
        if (a.v[n] != b.v[n]) return false;
    return true;
}

static void check_X(i64 X) {
    if (X < 1) throw PreconditionFailed("truncation must be positive");
    if (X > kMaxTruncation) throw TruncationTooLarge("truncation " + std::to_string(X) + " exceeds " + std::to_string(kMaxTruncation));
}

// multiply in place by 1/(1 - q^{-s})
static void mul_geometric(CoeffSeries& s, i64 q) {
    for (i64 n = q; n <= s.X; ++n)
        if (n % q == 0) s.v[n] = s.v[n] + s.v[n / q];
}

// multiply in place by (1 + q^{-s})
static void mul_linear(CoeffSeries& s, i64 q) {
    for (i64 n = s.X; n >= q; --n)
        if (n % q == 0) s.v[n] = s.v[n] + s.v[n / q];
}

CoeffSeries zeta_enum(const Field& F, i64 X) {
    check_X(X);
    CoeffSeries s = series_one(X);
    s.v[1] = 0;
    auto ids = F.ideals_upto(X);
    std::set<FIdeal> seen;
    for (auto& I : ids) {
        if (!seen.insert(I).second) continue;
        Rat N = I.norm();
        if (!N.is_int() || N.p < 1 || N.p > X) throw std::logic_error("ideal norm out of range");
        s.v[N.p] = s.v[N.p] + Rat(1);
    }
    s.tag = "ideal-count";
    return s;
}

CoeffSeries zeta_euler(const Field& F, i64 X) {
    check_X(X);
    CoeffSeries s = series_one(X);
    for (i64 p : primes_upto(X))
        for (auto& P : F.factor_prime(p).primes)
            if (P.norm() <= X) mul_geometric(s, P.norm());
    s.tag = "euler-product";
    return s;
}

CoeffSeries zeta_enum(const CMField& K, i64 X) {
    check_X(X);
    CoeffSeries s = series_one(X);
    s.v[1] = 0;
    auto ids = K.ideals_upto(X);
    std::set<RelIdeal> seen;
    for (auto& I : ids) {
        if (!seen.insert(I).second) continue;
        if (!I.abs_norm.is_int() || I.abs_norm.p < 1 || I.abs_norm.p > X)
            throw std::logic_error("ideal norm out of range");
        s.v[I.abs_norm.p] = s.v[I.abs_norm.p] + Rat(1);
    }
    s.tag = "ideal-count";
    return s;
}

CoeffSeries zeta_euler(const CMField& K, i64 X) {
    check_X(X);
    CoeffSeries s = series_one(X);
    for (i64 p : primes_upto(X))
        for (auto& P : K.F.factor_prime(p).primes) {
            i64 q = P.norm();
            if (q > X) continue;
            KSplit ks = K.split(P);
            if (ks.kind == 'i') {
                if ((i128)q * q <= X) mul_geometric(s, q * q);
            } else {
                for (size_t i = 0; i < ks.primes.size(); ++i) mul_geometric(s, q);
            }
        }
    s.tag = "euler-product";
    return s;
}

static CoeffSeries checked(const CoeffSeries& a, const CoeffSeries& b, const char* what) {
    if (!series_equal(a, b)) {
        for (i64 n = 1; n <= std::min(a.X, b.X); ++n)
            if (a.v[n] != b.v[n])
                throw InequalityViolated(std::string(what) + ": coefficient " + std::to_string(n) + " differs (" +
                                         a.v[n].str() + " vs " + b.v[n].str() + ")");
    }
    return a;
}

CoeffSeries zeta_coeffs(const Field& F, i64 X) { return checked(zeta_enum(F, X), zeta_euler(F, X), "zeta_F"); }
CoeffSeries zeta_coeffs(const CMField& K, i64 X) { return checked(zeta_enum(K, X), zeta_euler(K, X), "zeta_K"); }

CoeffSeries vseries_quotient(const CMField& K, i64 X) {
    CoeffSeries zk = zeta_euler(K, X);
    CoeffSeries zf = series_dilate(zeta_euler(K.F, X), 2);
    CoeffSeries v = series_div(zk, zf);
    v.tag = "quotient";
    return v;
}

CoeffSeries vseries_euler(const CMField& K, i64 X) {
    check_X(X);
    CoeffSeries s = series_one(X);
    for (i64 p : primes_upto(X))
        for (auto& P : K.F.factor_prime(p).primes) {
            i64 q = P.norm();
            if (q > X) continue;
            KSplit ks = K.split(P);
            if (ks.kind == 's') {
                mul_linear(s, q);
                mul_geometric(s, q);
            } else if (ks.kind == 'r') {
                mul_linear(s, q);
            }
        }
    s.tag = "euler-product";
    return s;
}

CoeffSeries vseries(const CMField& K, i64 X) {
    CoeffSeries a = vseries_quotient(K, X), b = vseries_euler(K, X);
    for (i64 n = 1; n <= X; ++n)
        if (a.v[n].sign() < 0) throw InequalityViolated("negative coefficient at " + std::to_string(n));
    return checked(a, b, "v-series");
}

VsumReport vsum_check(const CMField& K, i64 X) {
    if (X > kMaxTruncation) throw TruncationTooLarge("truncation " + std::to_string(X) + " exceeds " + std::to_string(kMaxTruncation));
    if (!K.have_classes) throw PreconditionFailed("class data missing");
    VsumReport r;
    int n = K.n();
    Rat Nd = K.rel_disc.norm();
    if (!Nd.is_int()) throw std::logic_error("relative discriminant not integral");
    r.threshold = std::sqrt((double)Nd.p) / std::pow(2.0, n);
    // largest m with m^2 4^n < N(d)
    i64 top = 0;
    while ((i128)(top + 1) * (top + 1) * ((i128)1 << (2 * n)) < (i128)Nd.p) ++top;
    if (top >= X) throw TruncationTooLarge("threshold " + std::to_string(top) + " needs truncation beyond " + std::to_string(X));
    i64 Xe = std::max<i64>(top, 1);
    CoeffSeries v = vseries(K, Xe);
    r.partial_sum = 0;
    for (i64 m = 1; m <= top; ++m) r.partial_sum = r.partial_sum + v.v[m];
    r.h = K.h;
    r.ok = r.partial_sum <= Rat(r.h);
    r.margin = r.h - r.partial_sum.to_double();
    return r;
}

cplx cgamma(cplx z) {
    static const double g = 7;
    static const double c[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    const double pi = std::acos(-1.0);
    if (z.real() < 0.5) return pi / (std::sin(pi * z) * cgamma(1.0 - z));
    z -= 1.0;
    cplx x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + (double)i);
    cplx t = z + g + 0.5;
    return std::sqrt(2 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx clgamma(cplx z) {
    const double pi = std::acos(-1.0);
    if (z.real() < 0.5) return std::log(pi / std::sin(pi * z)) - clgamma(1.0 - z);
    static const double g = 7;
    static const double c[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    cplx x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + (double)i);
    cplx t = z + g + 0.5;
    return 0.5 * std::log(2 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx mellin_closed(int kind, const MellinParams& p, cplx s) {
    switch (kind) {
    case 1:
        if (s.real() <= p.u) throw OutOfRegion("need Re(s) > u");
        return cgamma(s - p.u);
    case 2:
        if (s.real() <= 1) throw OutOfRegion("need Re(s) > 1");
        return p.hK * p.A1 * std::pow(cplx(2.0), (double)p.n * s - (double)p.n) * s /
               ((s - 1.0) * std::pow(cplx(p.dnorm), s / 2.0));
    case 3:
        if (s.real() <= 0.5) throw OutOfRegion("need Re(s) > 1/2");
        return p.hF * std::sqrt(p.A2) * s / (s - 0.5);
    }
    throw PreconditionFailed("unknown transform kind");
}

cplx mellin_quadrature(double u, cplx s) {
    cplx a = s - u;
    if (a.real() <= 0) throw OutOfRegion("need Re(s) > u");
    // x = e^y turns the integral into int exp(a y - e^y) dy
    double lo = -std::min(745.0, 40.0 / a.real() + 5.0), hi = 5.0;
    int N = (int)std::ceil((hi - lo) / 0.01);
    double h = (hi - lo) / N;
    cplx sum = 0;
    for (int i = 0; i <= N; ++i) {
        double y = lo + i * h;
        cplx f = std::exp(a * y - std::exp(y));
        sum += (i == 0 || i == N) ? 0.5 * f : f;
    }
    return sum * h;
}

double StepMeasure::integral(double x) const {
    double s = 0;
    for (auto& [loc, mass] : atoms)
        if (x > loc) s += mass * (x - loc);
    if (c != 0 && x > lo) {
        double g1 = g + 1, g2 = g + 2;
        s += c / g1 * ((std::pow(x, g2) - std::pow(lo, g2)) / g2 - std::pow(lo, g1) * (x - lo));
    }
    return s;
}

static FElem big_unit(const Field& F) {
    FElem e = F.eps;
    if (e.embed(0) < 1) e = e.inv();
    return e;
}

// first nonzero coordinate positive
static bool sign_canonical(const RVec& c) {
    for (auto& x : c)
        if (!x.is_zero()) return x.sign() > 0;
    return false;
}

std::vector<Rat> orbit_norms(const CMField& K, const RelIdeal& N, const KElem& ell, const Rat& T) {
    if (!K.unit_equal) throw PreconditionFailed("extension has extra units");
    const Field& F = K.F;
    auto zb = K.zbasis(N);
    int d = (int)zb.size();
    RMat gram(d, RVec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) gram[i][j] = (zb[i].x * zb[j].x - K.delta * zb[i].y * zb[j].y).trace();
    Rat bound = T;
    FElem e, e2;
    if (K.n() == 2) {
        e = big_unit(F);
        e2 = e * e;
        // Tr a <= sqrt(N a) (eps + 1/eps) on the fundamental domain
        double B = std::sqrt(T.to_double()) * (e.embed(0) + 1.0 / e.embed(0));
        bound = Rat((i64)std::ceil(B + 1e-9) + 1);
    }
    KElem ellc = K.conj(ell);
    std::vector<Rat> out;
    enumerate_short(gram, bound, [&](const IVec& z) {
        KElem a{F.elem(0), F.elem(0)};
        for (int i = 0; i < d; ++i) a = K.add(a, K.scale(zb[i], F.elem(z[i])));
        if (!sign_canonical(K.coords(a))) return true;
        if (K.mul(a, ellc).y.is_zero()) return true;
        FElem nr = K.rel_norm(a);
        Rat v = nr.norm();
        if (v > T) return true;
        if (K.n() == 2) {
            FElem c = nr.conj();
            if ((nr * e2 - c).sign(0) < 0) return true;
            if ((nr - e2 * c).sign(0) >= 0) return true;
        }
        out.push_back(v);
        return true;
    }, K.budget * 10);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rat> orbit_norms(const Field& F, const FIdeal& a, const Rat& T) {
    auto bs = a.basis();
    std::vector<Rat> out;
    if (F.n() == 1) {
        Rat g = rabs(bs[0].a);
        for (i64 k = 1; Rat(k) * g <= T; ++k) out.push_back(Rat(k) * g);
        return out;
    }
    FElem e = big_unit(F), e2 = e * e;
    RMat gram(2, RVec(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) gram[i][j] = (bs[i] * bs[j]).trace();
    double B = T.to_double() * (e.embed(0) + 1.0 / e.embed(0));
    Rat bound((i64)std::ceil(B + 1e-9) + 1);
    enumerate_short(gram, bound, [&](const IVec& z) {
        FElem x = bs[0] * Rat(z[0]) + bs[1] * Rat(z[1]);
        if (!sign_canonical(x.coords())) return true;
        Rat v = rabs(x.norm());
        if (v > T) return true;
        FElem x2 = x * x, c2 = x.conj() * x.conj();
        // 1/eps <= |x1/x2| < eps
        if ((x2 * e2 - c2).sign(0) < 0) return true;
        if ((x2 - e2 * c2).sign(0) >= 0) return true;
        out.push_back(v);
        return true;
    }, F.budget * 10);
    std::sort(out.begin(), out.end());
    return out;
}

MinimalLine minimal_saturated_line(const CMField& K, const RelIdeal& N) {
    const Field& F = K.F;
    auto zb = K.zbasis(N);
    int d = (int)zb.size();
    RMat gram(d, RVec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) gram[i][j] = (zb[i].x * zb[j].x - K.delta * zb[i].y * zb[j].y).trace();
    auto elem_of = [&](const IVec& z) {
        KElem a{F.elem(0), F.elem(0)};
        for (int i = 0; i < d; ++i) a = K.add(a, K.scale(zb[i], F.elem(z[i])));
        return a;
    };
    // shortest vector by t2, then its norm as a first bound
    Rat best_t2(-1);
    IVec best;
    for (i64 B = 1;; B *= 2) {
        enumerate_short(gram, Rat(B), [&](const IVec& z) {
            Rat t = quad_eval(gram, z);
            if (best_t2.sign() < 0 || t < best_t2) best_t2 = t, best = z;
            return true;
        }, K.budget * 10);
        if (best_t2.sign() > 0) break;
    }
    Rat v0 = K.abs_norm(elem_of(best));
    // any saturated line c*alpha holds some beta with N(beta) <= M_F^2 N(c)^2 N(alpha)
    Rat factor(1);
    if (F.hF > 1) factor = Rat(F.dF, 4);
    Rat Nbound = v0 * factor;
    Rat tb = Nbound;
    if (K.n() == 2) {
        double e = big_unit(F).embed(0);
        tb = Rat((i64)std::ceil(std::sqrt(Nbound.to_double()) * (e + 1.0 / e)) + 1);
    }
    MinimalLine ml;
    ml.value = Rat(-1);
    enumerate_short(gram, tb, [&](const IVec& z) {
        KElem a = elem_of(z);
        Rat na = K.abs_norm(a);
        if (na > Nbound) return true;
        FIdeal c = K.intersect_F(K.scale(N, K.inv(a)));
        Rat val = c.norm() * c.norm() * na;
        if (ml.value.sign() < 0 || val < ml.value) {
            ml.value = val;
            ml.gen = a;
            ml.coeff = c;
        }
        return true;
    }, K.budget * 10);
    if (ml.value.sign() < 0) throw std::logic_error("no line found");
    return ml;
}

StepMeasure mu_K(const CMField& K, double xmax) {
    if (!K.have_classes) throw PreconditionFailed("class data missing");
    StepMeasure m;
    for (int i = 0; i < K.h; ++i) {
        const RelIdeal& Ni = K.N_reps[i];
        MinimalLine ml = minimal_saturated_line(K, Ni);
        for (auto& aj : K.a_reps) {
            Rat na = aj.norm();
            Rat na2 = na * na;
            RelIdeal M = K.mul(K.extend(K.F.inverse(aj)), Ni);
            double Tm = xmax * Ni.abs_norm.to_double() / na2.to_double();
            Rat T((i64)std::floor(Tm + 1e-9));
            for (auto& v : orbit_norms(K, M, ml.gen, T)) {
                double loc = (v * na2 / Ni.abs_norm).to_double();
                if (loc <= xmax) m.atoms.push_back({loc, 1.0});
            }
        }
    }
    return m;
}

StepMeasure mu_K_majorant(const CMField& K, double A1) {
    StepMeasure m;
    int n = K.n();
    double sd = std::sqrt((double)K.rel_disc.norm().to_double());
    double t0 = sd / std::pow(2.0, n);
    m.atoms.push_back({t0, A1 * K.hK / std::pow(2.0, n)});
    m.c = A1 * K.hK / sd;
    m.g = 0;
    m.lo = t0;
    return m;
}

StepMeasure mu_F(const Field& F, double xmax) {
    StepMeasure m;
    i64 X = (i64)std::floor(std::sqrt(xmax) + 1e-9);
    if (X < 1) return m;
    CoeffSeries z = zeta_euler(F, X);
    for (i64 k = 1; k <= X; ++k)
        if (!z.v[k].is_zero()) m.atoms.push_back({(double)k * k, z.v[k].to_double()});
    return m;
}

StepMeasure mu_F_majorant(const Field& F, double A2) {
    StepMeasure m;
    m.atoms.push_back({1.0, std::sqrt(A2) * F.hF});
    m.c = std::sqrt(A2) * F.hF / 2;
    m.g = -0.5;
    m.lo = 1;
    return m;
}

MeasureReport measure_compare(const CMField& K, const std::vector<double>& xs, double A1, double A2) {
    MeasureReport r;
    double xmax = 0;
    for (double x : xs) xmax = std::max(xmax, x);
    StepMeasure mk = mu_K(K, xmax), Mk = mu_K_majorant(K, A1);
    StepMeasure mf = mu_F(K.F, xmax), Mf = mu_F_majorant(K.F, A2);
    for (double x : xs) {
        MeasureSample a{x, mk.integral(x), Mk.integral(x)};
        a.ok = a.lhs <= a.rhs * (1 + 1e-12);
        MeasureSample b{x, mf.integral(x), Mf.integral(x)};
        b.ok = b.lhs <= b.rhs * (1 + 1e-12);
        r.ok = r.ok && a.ok && b.ok;
        r.K.push_back(a);
        r.F.push_back(b);
    }
    return r;
}

}  // namespace relclass
