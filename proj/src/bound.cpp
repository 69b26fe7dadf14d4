#include "relclass/bound.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace relclass {

int precision_bits() {
    const char* s = std::getenv("RELCLASS_PRECISION_BITS");
    if (!s || !*s) return 128;
    int b = std::atoi(s);
    if (b < 24) throw PreconditionFailed("RELCLASS_PRECISION_BITS must be at least 24");
    return b;
}

namespace {

const double kPi = std::acos(-1.0);
const double kEulerGamma = 0.57721566490153286061;

Iv itwo_pow(double e) { return ipow(Iv(2.0), e); }

// embedding of x with a generous error radius
Iv iemb(const FElem& x, int k) {
    double v = x.embed(k);
    double sm = x.f && x.f->n == 2 ? std::sqrt((double)std::llabs(x.f->m)) : 0.0;
    double err = 1e-13 * (std::fabs(x.a.to_double()) + std::fabs(x.b.to_double()) * (sm + 1) + 1);
    return Iv(down(v - err), up(v + err));
}

Iv inorm2(const Iv& a, const Iv& b) { return isqrt_iv(boost::numeric::square(a) + boost::numeric::square(b)); }

double dot_emb(const FElem& u, const FElem& v) { return u.embed(0) * v.embed(0) + u.embed(1) * v.embed(1); }

std::pair<FElem, FElem> gauss_reduce(FElem u, FElem v) {
    for (int it = 0; it < 200; ++it) {
        if (dot_emb(v, v) < dot_emb(u, u)) std::swap(u, v);
        double mu = std::round(dot_emb(u, v) / dot_emb(u, u));
        if (mu == 0) break;
        v = v - u * Rat((i64)mu);
    }
    return {u, v};
}

i128 powcap(i128 b, int k, i128 cap) {
    i128 r = 1;
    for (int i = 0; i < k; ++i) {
        r *= b;
        if (r > cap) return cap + 1;
    }
    return r;
}

}  // namespace

Iv lattice_T0(const Field& F) {
    int n = F.n();
    Iv d0 = n == 1 ? Iv(0.0) : isqrt_iv(Iv(2.0)) * ilog(iemb(F.eps, 0));
    Iv e = iexp(isqrt_iv(Iv((double)n * (n - 1))) * d0 / 2.0);
    return ipow(ipi(), n / 2.0) * e / (itwo_pow(n) * isqrt_iv(Iv((double)F.dF)));
}

Iv covering_constant(const Field& F, const Iv& T, double slack) {
    int n = F.n();
    if (slack < 0) throw PreconditionFailed("covering slack must be nonnegative");
    Iv d0 = n == 1 ? Iv(0.0) : isqrt_iv(Iv(2.0)) * ilog(iemb(F.eps, 0));
    double worst = 0;
    for (auto& a : F.class_reps) {
        Iv Na(a.norm().to_double());
        Iv D(0.0);
        if (n > 1) {
            Iv sn1 = isqrt_iv(Iv(n - 1.0));
            D = 4.0 * iexp(sn1 * d0 / (2.0 * isqrt_iv(Iv((double)n)))) * ipow(T * Na, 1.0 / n) * sn1;
        }
        auto bs = a.basis();
        Iv diam, smin;
        if (n == 1) {
            diam = iabs_iv(iemb(bs[0], 0));
            smin = diam;
        } else {
            auto [u, v] = gauss_reduce(bs[0], bs[1]);
            Iv u0 = iemb(u, 0), u1 = iemb(u, 1), v0 = iemb(v, 0), v1 = iemb(v, 1);
            Iv lu = inorm2(u0, u1), lv = inorm2(v0, v1);
            diam = imax(inorm2(u0 + v0, u1 + v1), inorm2(u0 - v0, u1 - v1));
            Iv det = iabs_iv(u0 * v1 - u1 * v0);
            smin = det / imax(lu, lv);
        }
        // lattice coordinates along one axis of a set of width L: at most floor(L / s) + 1
        double per_axis;
        if (n == 1) {
            double g = std::fabs(bs[0].a.to_double());
            per_axis = std::floor((g + slack) / g) + 1;
        } else {
            per_axis = std::floor(hi((D + diam + slack) / smin)) + 1;
        }
        worst = std::max(worst, std::pow(per_axis, n));
    }
    return Iv(2.0 * n * worst);
}

LatticeConstants lattice_constants(const Field& F, double slack) {
    LatticeConstants L;
    int n = L.n = F.n();
    L.dF = F.dF;
    L.slack = slack;
    L.d0 = n == 1 ? Iv(0.0) : isqrt_iv(Iv(2.0)) * ilog(iemb(F.eps, 0));
    L.T0 = lattice_T0(F);
    L.CT0 = covering_constant(F, L.T0, slack);
    L.C1 = covering_constant(F, Iv(1.0), slack);
    Iv sq = isqrt_iv(Iv((double)n * (n - 1))) * L.d0;
    Iv lead = itwo_pow(n) / isqrt_iv(Iv((double)F.dF));
    L.A1 = itwo_pow(n - 1) * iexp(sq) * (lead + 2.0 * n * L.CT0 / L.T0) * (lead + 2.0 * n * L.C1);
    L.A2 = iexp(sq / 2.0) * (lead + 2.0 * n * L.C1);
    return L;
}

i64 count_box(const Field& F, const BoxSpec& b) {
    int n = F.n();
    if ((int)b.x0.size() != n || (int)b.c.size() != n) throw PreconditionFailed("box dimension mismatch");
    for (double c : b.c)
        if (!(c > 0)) throw PreconditionFailed("box half-widths must be positive");
    auto tol = [&](int j) { return 1e-10 * (1 + std::fabs(b.c[j]) + std::fabs(b.x0[j])); };
    auto bs = b.a.basis();
    i64 count = 0;
    long long work = 0;
    if (n == 1) {
        long double g = std::fabs(bs[0].a.to_double());
        i64 k0 = (i64)std::floor((b.x0[0] - b.c[0]) / g) - 1, k1 = (i64)std::ceil((b.x0[0] + b.c[0]) / g) + 1;
        for (i64 k = k0; k <= k1; ++k)
            if (std::fabs(k * g - b.x0[0]) <= b.c[0] + tol(0)) ++count;
        return count;
    }
    long double u0 = bs[0].embed(0), u1 = bs[0].embed(1), v0 = bs[1].embed(0), v1 = bs[1].embed(1);
    long double det = u0 * v1 - u1 * v0;
    // alpha range over the box corners
    long double amin = INFINITY, amax = -INFINITY;
    for (int s0 = -1; s0 <= 1; s0 += 2)
        for (int s1 = -1; s1 <= 1; s1 += 2) {
            long double p0 = b.x0[0] + s0 * b.c[0], p1 = b.x0[1] + s1 * b.c[1];
            long double al = (p0 * v1 - p1 * v0) / det;
            amin = std::min(amin, al);
            amax = std::max(amax, al);
        }
    for (i64 al = (i64)std::floor(amin) - 1; al <= (i64)std::ceil(amax) + 1; ++al) {
        long double bmin = -INFINITY, bmax = INFINITY;
        long double U[2] = {u0, u1}, V[2] = {v0, v1};
        for (int j = 0; j < 2; ++j) {
            if (std::fabs(V[j]) < 1e-300) continue;
            long double e1 = (b.x0[j] - b.c[j] - al * U[j]) / V[j], e2 = (b.x0[j] + b.c[j] - al * U[j]) / V[j];
            bmin = std::max(bmin, std::min(e1, e2));
            bmax = std::min(bmax, std::max(e1, e2));
        }
        if (bmin > bmax + 1) continue;
        for (i64 be = (i64)std::floor(bmin) - 1; be <= (i64)std::ceil(bmax) + 1; ++be) {
            if (++work > F.budget * 10) throw SearchBudgetExceeded("box enumeration");
            bool in = true;
            for (int j = 0; j < 2 && in; ++j)
                in = std::fabs(al * U[j] + be * V[j] - b.x0[j]) <= b.c[j] + tol(j);
            if (in) ++count;
        }
    }
    return count;
}

BoxReport box_bound_check(const Field& F, const BoxSpec& b, const LatticeConstants& L) {
    int n = F.n();
    double prod = 1;
    for (double c : b.c) prod *= c;
    Iv Na(b.a.norm().to_double());
    if (prod < hi(L.T0 * Na)) throw PreconditionFailed("box volume below T0 |a|");
    BoxReport r;
    r.count = count_box(F, b);
    Iv bound = (itwo_pow(n) / isqrt_iv(Iv((double)F.dF)) + 2.0 * n * L.CT0 / L.T0) * Iv(prod) / Na;
    r.bound = lo(bound);
    r.margin = r.bound - (double)r.count;
    r.ok = (double)r.count <= r.bound;
    return r;
}

NormCountReport norm_count_K(const CMField& K, const RelIdeal& N, const Rat& t, const LatticeConstants& L) {
    NormCountReport r;
    r.t = t;
    MinimalLine ml = minimal_saturated_line(K, N);
    r.lhs = (i64)orbit_norms(K, N, ml.gen, t * N.abs_norm).size();
    Iv Nd(K.rel_disc.norm().to_double());
    r.rhs = lo(L.A1 * Iv(t.to_double()) / isqrt_iv(Nd));
    r.ok = (double)r.lhs <= r.rhs;
    return r;
}

NormCountReport norm_count_F(const Field& F, const FIdeal& a, const Rat& t, const LatticeConstants& L) {
    NormCountReport r;
    r.t = t;
    r.lhs = (i64)orbit_norms(F, a, t * a.norm()).size();
    r.rhs = lo(L.A2 * Iv(t.to_double()));
    r.ok = (double)r.lhs <= r.rhs;
    return r;
}

int min_r(i64 k) {
    int r = 1;
    while (2LL * r * r + 2LL * r < k) ++r;
    return r;
}

BoundParams bound_params(const CMField& K, bool throw_on_violation) {
    const Field& F = K.F;
    if (!K.have_classes) throw PreconditionFailed("class group not computed");
    BoundParams bp;
    int n = bp.n = F.n();
    Rat nd = K.rel_disc.norm();
    if (!nd.is_int()) throw PreconditionFailed("non-integral discriminant norm");
    bp.Nd = nd.p;
    i64 four_n = ipow(4, n);
    if (bp.Nd <= four_n) throw AssumptionViolated("|d_{K/F}| <= 4^n");
    if (!K.unit_equal) throw AssumptionViolated("unequal unit groups");
    bp.hK = K.hK;
    bp.h = K.h;
    bp.idx = F.unit_sq_index;
    bp.r = min_r(bp.idx * bp.hK);
    bp.m_half = bp.r < 2;
    bp.m = bp.m_half ? 1.5 : (double)bp.r;

    for (auto& [P, e] : F.factor_ideal(K.rel_disc)) {
        bp.disc_norms.push_back(P.norm());
        bp.R = std::max(bp.R, P.norm());
    }
    std::sort(bp.disc_norms.begin(), bp.disc_norms.end());
    bp.t = (int)bp.disc_norms.size();

    Iv Nd((double)bp.Nd);
    bp.V = ipow(Nd / (double)four_n, Iv(1.0) / (double)bp.h);
    bp.U = ipow(isqrt_iv(Nd) / itwo_pow(n), Iv(1.0) / bp.m);

    const i128 cap = (i128)1 << 100;
    // q < V  <=>  q^h 4^n < Nd
    auto below_V = [&](i64 q) { return powcap(q, bp.h, cap) * four_n < bp.Nd; };
    // q < U  <=>  q^{2m} 4^n < Nd
    auto below_U = [&](i64 q) { return powcap(q, bp.m_half ? 3 : 2 * bp.r, cap) * four_n < bp.Nd; };

    for (i64 q : bp.disc_norms) {
        if (below_U(q)) bp.P_UK.push_back(q);
        if (q < bp.R) bp.P_K.push_back(q);
    }

    i64 pmax = (i64)std::ceil(hi(imax(bp.V, bp.U))) + 1;
    for (i64 p : primes_upto(pmax)) {
        for (auto& P : F.factor_prime(p).primes) {
            i64 q = P.norm();
            bool bv = below_V(q), bu = below_U(q);
            if (!bv && !bu) continue;
            if (K.split(P).kind != 's') continue;
            if (bv) ++bp.split_below_V;
            if (bu) ++bp.split_below_U;
        }
    }
    bp.lemma1 = bp.split_below_V == 0;
    bp.lemma2 = bp.split_below_U <= 1;
    bp.lemma3 = !below_U(bp.R);
    if (throw_on_violation) {
        if (!bp.lemma1) throw LemmaViolation("split prime of norm below V");
        if (!bp.lemma2) throw LemmaViolation("two split primes of norm below U");
        if (!bp.lemma3) throw LemmaViolation("R < U");
    }
    return bp;
}

DConst D_constants(const BoundParams& bp) {
    DConst d;
    Iv V = bp.V, U = bp.U, h((double)bp.h);
    Iv iV = Iv(1.0) / V, iV2 = Iv(1.0) / isqrt_iv(V), iV4 = Iv(1.0) / isqrt_iv(isqrt_iv(V));
    d.D1 = (1.0 + h / U) * (1.0 + iV) / (1.0 - iV);
    d.D2 = boost::numeric::square((1.0 - iV2) / (1.0 + iV2));
    d.D3 = 4.0 * iV2 / (1.0 - iV2) * ilog(U);
    d.D4 = boost::numeric::square(1.0 + iV2) / ipow(1.0 - iV4, 4);
    return d;
}

DConst D_constants(double lambda, int n, i64 idx) {
    Iv lam(lambda);
    Iv x = iexp(-lam), y = iexp(-lam / 2.0), z = iexp(-lam / 4.0);
    Iv tn = itwo_pow(n), fn = tn * tn;
    if (!(lo(1.0 - tn * y) > 0)) throw LambdaTooSmall("need e^{lambda/2} > 2^n");
    // 16! 3^16 2^{2n/3+16} idx^8
    Iv k16 = Iv(20922789888000.0) * Iv(43046721.0) * itwo_pow(2.0 * n / 3.0 + 16) * ipow(Iv((double)idx), 8);
    DConst d;
    d.D1 = (1.0 + k16 / ipow(lam, 16)) * (1.0 + fn * x) / (1.0 - fn * x);
    d.D2 = boost::numeric::square((1.0 - tn * y) / (1.0 + tn * y));
    d.D3 = itwo_pow(n + 2) * y / (1.0 - tn * y);
    d.D4 = boost::numeric::square(1.0 + tn * y) / ipow(1.0 - itwo_pow(n / 2.0) * z, 4);
    return d;
}

Domination D_domination(const BoundParams& bp, double lambda) {
    Domination r;
    r.applies = std::log((long double)bp.Nd) >= (long double)lambda * bp.hK;
    if (!r.applies) return r;
    DConst k = D_constants(bp), l = D_constants(lambda, bp.n, bp.idx);
    r.d1 = lo(k.D1) <= hi(l.D1);
    r.d2 = hi(k.D2) >= lo(l.D2);
    r.d3 = lo(k.D3) <= hi(l.D3 * ilog(bp.U));
    r.d4 = lo(k.D4) <= hi(l.D4);
    return r;
}

// ---- zeta data ----

static const double kBern[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510};

cplx hurwitz_zeta(cplx w, double x) {
    if (std::abs(w - 1.0) < 1e-14) throw OutOfRegion("pole at 1");
    const int N = 20;
    cplx s = 0;
    for (int k = 0; k < N; ++k) s += std::pow(cplx(k + x), -w);
    double a = N + x;
    cplx aw = std::pow(cplx(a), -w);
    s += a * aw / (w - 1.0) + 0.5 * aw;
    cplx rising = w;  // w (w+1) ... (w+2j-2)
    double fact = 2;  // (2j)!
    cplx pw = aw / a;
    for (int j = 1; j <= 8; ++j) {
        s += kBern[j - 1] / fact * rising * pw;
        rising *= (w + (double)(2 * j - 1)) * (w + (double)(2 * j));
        fact *= (2.0 * j + 1) * (2.0 * j + 2);
        pw /= a * a;
    }
    return s;
}

static std::vector<int> char_table(i64 D) {
    std::vector<int> chi(D);
    for (i64 a = 0; a < D; ++a) chi[a] = kronecker(D, a);
    return chi;
}

cplx zeta_F_complex(const Field& F, cplx w) {
    cplx z = hurwitz_zeta(w, 1.0);
    if (F.n() == 1) return z;
    i64 D = F.dF;
    auto chi = char_table(D);
    cplx L = 0;
    for (i64 a = 1; a < D; ++a)
        if (chi[a]) L += (double)chi[a] * hurwitz_zeta(w, (double)a / D);
    return z * std::pow(cplx((double)D), -w) * L;
}

ZetaLaurent zeta_laurent(const Field& F) {
    ZetaLaurent z;
    if (F.n() == 1) {
        z.rho = z.rho_series = 1;
        z.c0 = kEulerGamma;
        return z;
    }
    i64 D = F.dF;
    auto chi = char_table(D);
    // partial sums averaged over one period past N
    const i64 N = (1000000 / D) * D;
    double s1 = 0, s2 = 0, avg1 = 0, avg2 = 0;
    for (i64 k = 1; k < N + D; ++k) {
        int c = chi[k % D];
        if (c) {
            s1 += c / (double)k;
            s2 -= c * std::log((double)k) / k;
        }
        if (k >= N) avg1 += s1, avg2 += s2;
    }
    avg1 /= D;
    avg2 /= D;
    z.rho = 2.0 * F.hF * F.regulator / std::sqrt((double)D);
    z.rho_series = avg1;
    z.c0 = kEulerGamma * z.rho + avg2;
    return z;
}

ZetaTwo zeta_F2(const Field& F, i64 N) {
    ZetaTwo r;
    r.N = N;
    Iv s(0.0);
    for (i64 k = N; k >= 1; --k) s += Iv(1.0) / boost::numeric::square(Iv((double)k));
    Iv z2 = s + Iv(down(1.0 / (N + 1.0)), up(1.0 / N));
    r.partial = mid(s);
    r.tail = 1.0 / N;
    if (F.n() == 1) {
        r.value = z2;
        return r;
    }
    i64 D = F.dF;
    auto chi = char_table(D);
    Iv l(0.0);
    for (i64 k = N; k >= 1; --k)
        if (chi[k % D]) l += (double)chi[k % D] / boost::numeric::square(Iv((double)k));
    r.value = z2 * (l + Iv(-up(1.0 / N), up(1.0 / N)));
    r.partial = mid(s) * mid(l);
    return r;
}

Iv Mprime(const Field& F, i64 level_norm) {
    Iv tp = 2.0 * ipi();
    return Iv((double)level_norm) * boost::numeric::square(Iv((double)F.dF)) / ipow(tp, 2 * F.n());
}

BConst B_constants(const Field& F, const Iv& A1, const Iv& A2, const Iv& Mp) {
    if (!(lo(A1) > 0 && lo(A2) > 0 && lo(Mp) > 0)) throw PreconditionFailed("B constants need positive inputs");
    BConst b;
    b.Mp = Mp;
    b.zeta2 = zeta_F2(F).value;
    Iv m32 = Mp * isqrt_iv(Mp);
    Iv gamma32 = isqrt_iv(ipi()) / 2.0;
    Iv lg = ilog(ipow(Iv(4.0), F.n()) * Mp);
    b.log_branch = lo(lg) > 2;
    b.B1 = A2 * (double)(F.hF * F.hF) * Mp / 96.0;
    b.B2 = 16.0 * A1 * m32 * gamma32 * b.zeta2;
    b.B3 = 4.0 * boost::numeric::square(A1) * iexp(Iv(1.0)) * m32 * imax(Iv(2.0), lg);
    return b;
}

// ---- G constants ----

namespace {

struct LevelPrime {
    i64 q;
    int e;
};

std::vector<LevelPrime> level_primes(const EigenvalueTable& f) {
    std::vector<LevelPrime> v;
    for (auto& [k, e] : f.level) {
        if (e <= 0) continue;
        auto it = f.qnorm.find(k);
        i64 q = it != f.qnorm.end() ? it->second : f.F->factor_prime(k.first).primes[k.second].norm();
        v.push_back({q, e});
    }
    return v;
}

// L_p(w, sym^2) with X = q^{-w}
cplx sym2_local(i64 lam, i64 q, int ea, cplx w) {
    cplx X = std::pow(cplx((double)q), -w);
    if (ea == 0) return 1.0 / (((1.0 + X) * (1.0 + X) - (double)(lam * lam) / q * X) * (1.0 - X));
    if (ea == 1) return 1.0 / (1.0 - X / (double)q);
    return 1.0;
}

cplx sym2_L(const EigenvalueTable& f, i64 P, cplx w) {
    cplx v = 1;
    for (auto& [k, q] : f.qnorm) {
        if (q > P) continue;
        int ea = f.level_exp(k);
        v *= sym2_local(ea == 0 ? f.at(k) : 0, q, ea, w);
    }
    return v;
}

// d/dw log L(w, sym^2) at w = 1, truncated
double sym2_logderiv(const EigenvalueTable& f, i64 P) {
    double s = 0;
    for (auto& [k, q] : f.qnorm) {
        if (q > P) continue;
        int ea = f.level_exp(k);
        double lq = std::log((double)q), X = 1.0 / q, dX = -lq * X;
        if (ea == 0) {
            double l2 = (double)f.at(k) * f.at(k) / q;
            double A = (1 + X) * (1 + X) - l2 * X;
            s -= (2 * (1 + X) - l2) * dX / A - dX / (1 - X);
        } else if (ea == 1) {
            s += (dX / q) / (1 - X / q);
        }
    }
    return s;
}

struct Contour {
    double value = 0, tail_cut = 0, tail_bound = 0;
};

Contour contour_integral(const EigenvalueTable& f, const GOptions& o, double h) {
    const Field& F = *f.F;
    int n = F.n();
    auto lp = level_primes(f);
    auto integrand = [&](cplx s) {
        cplx w = 2.0 * s;
        cplx zf = zeta_F_complex(F, w);
        for (auto& p : lp) zf *= 1.0 - std::pow(cplx((double)p.q), -w);
        cplx g = std::pow(cgamma(s + 0.5), 2 * n);
        cplx d = s - 0.5;
        return std::abs(g * sym2_L(f, o.P_contour, w) / zf / (d * d * d));
    };
    auto gamma_mod = [&](double t) { return std::pow(std::abs(cgamma(cplx(1.0, t))), 2 * n); };
    double T = o.eta2;
    while (gamma_mod(T) >= o.gamma_cut) T += 0.25;
    Contour c;
    c.tail_cut = T;
    // the integrand decays like e^{-n pi t}
    c.tail_bound = 2 * integrand(cplx(0.5, T)) / (n * kPi) / (2 * kPi);

    auto seg = [&](cplx a, cplx b) {
        double len = std::abs(b - a);
        int m = std::max(1, (int)std::ceil(len / h));
        double sum = 0;
        for (int i = 0; i <= m; ++i) {
            double wgt = (i == 0 || i == m) ? 0.5 : 1.0;
            sum += wgt * integrand(a + (b - a) * ((double)i / m));
        }
        return sum * len / m;
    };
    double e = o.eta, e2 = o.eta2;
    double total = 0;
    total += seg(cplx(0.5, -T), cplx(0.5, -e2));
    total += seg(cplx(0.5, -e2), cplx(0.5 - e, -e2));
    total += seg(cplx(0.5 - e, -e2), cplx(0.5 - e, e2));
    total += seg(cplx(0.5 - e, e2), cplx(0.5, e2));
    total += seg(cplx(0.5, e2), cplx(0.5, T));
    c.value = total / (2 * kPi);
    return c;
}

}  // namespace

GConst G_heuristic(const EigenvalueTable& f, const GOptions& o) {
    if (!f.F) throw PreconditionFailed("table without field");
    if (!(o.eta > 0 && o.eta < 0.25 && o.eta2 > 0 && o.eta2 < 0.25))
        throw PreconditionFailed("contour parameters must lie in (0, 1/4)");
    const Field& F = *f.F;
    int n = F.n();
    double dF = (double)F.dF;
    GConst g;
    g.level_norm = f.level_norm();
    double Na = (double)g.level_norm;
    auto lp = level_primes(f);

    SymSq ss = symsq_L1(f, o.P);
    g.Lsym = ss.value;
    g.Lsym_drift = ss.drift;
    g.dlogL = sym2_logderiv(f, o.P);

    ZetaLaurent zl = zeta_laurent(F);
    g.rho = zl.rho;
    g.c0 = zl.c0;
    double prod = 1, corr = 0;
    for (auto& p : lp) {
        double iq = 1.0 / p.q;
        prod /= 1 - iq;
        corr += std::log((double)p.q) * iq / (1 - iq);
    }
    g.zinv_d1 = prod / zl.rho;
    g.zinv_ratio = 2 * (-zl.c0 / zl.rho - corr);

    double tp2n = std::pow(2 * kPi, 2 * n);
    double sq_prod1 = 1, sq_sum2 = 0, sq_prod3 = 1;
    for (auto& p : lp) {
        if (p.e < 2) continue;
        double q = (double)p.q, sq = std::sqrt(q);
        sq_prod1 *= q / ((sq + 1) * (sq + 1));
        sq_sum2 += (2 * sq + 2) / ((sq - 1) * (sq - 1)) * std::log(q);
        sq_prod3 *= sq / ((std::pow(q, 0.25) - 1) * (std::pow(q, 0.25) - 1));
    }
    g.G1 = std::fabs(2 * dF * dF / (tp2n * std::pow(Na, n)) * g.Lsym * g.zinv_d1 * sq_prod1);
    g.G2 = std::fabs(std::log(Na * dF * dF / tp2n)) + 2 * n * (-kEulerGamma) + std::fabs(2 * g.dlogL) +
           std::fabs(g.zinv_ratio) + sq_sum2;

    Contour c1 = contour_integral(f, o, o.step), c2 = contour_integral(f, o, o.step / 2);
    g.integral = c1.value;
    g.integral_half = c2.value;
    g.halving_drift = std::fabs(c1.value - c2.value) / std::fabs(c2.value);
    g.tail_cut = c2.tail_cut;
    g.tail_bound = c2.tail_bound;
    double pre = std::max(Na * dF * dF / tp2n,
                          std::pow(dF, 1.5) / (std::pow(2 * kPi, 1.5 * n) * std::pow(Na, 0.75 * n)));
    g.G3 = pre * sq_prod3 * c2.value;
    for (auto k : {"G1", "G2", "G3"}) g.provenance[k] = "heuristic";
    return g;
}

GConst G_inject(const GConst& base, const std::map<std::string, double>& values) {
    GConst g = base;
    for (auto& [k, v] : values) {
        if (k != "G1" && k != "G2" && k != "G3") throw StrategyUnavailable("unknown injected constant " + k);
        if (!(v > 0)) throw PreconditionFailed("injected " + k + " must be positive");
        (k == "G1" ? g.G1 : k == "G2" ? g.G2 : g.G3) = v;
        g.provenance[k] = "injected";
    }
    return g;
}

GConst G_constants(const EigenvalueTable& f, const std::string& strategy, const std::map<std::string, double>& injected,
                   const GOptions& o) {
    if (strategy == "heuristic") return G_heuristic(f, o);
    if (strategy == "injected") {
        if (injected.empty()) throw StrategyUnavailable("injected strategy without values");
        return G_inject(G_heuristic(f, o), injected);
    }
    throw StrategyUnavailable("unknown strategy " + strategy);
}

// ---- cascade ----

Bundle make_bundle(const Field& F, const EigenvalueTable& f, const GConst& G) {
    Bundle b;
    b.n = F.n();
    b.dF = F.dF;
    b.idx = F.unit_sq_index;
    b.hF = F.hF;
    b.L = lattice_constants(F);
    b.level_norm = f.level_norm();
    b.Mp = Mprime(F, b.level_norm);
    b.B = B_constants(F, b.L.A1, b.L.A2, b.Mp);
    b.G = G;
    b.F2_uniform = F2_uniform(F);
    b.precision_bits = precision_bits();
    auto& r = b.rigor;
    r["d0"] = b.n == 1 ? "exact" : "interval";
    for (auto k : {"T0", "A1", "A2", "M'", "zeta_F(2)", "B1", "B2", "B3", "D1..D4", "F1", "F2", "V", "U"})
        r[k] = "interval";
    r["C_T0"] = "interval (covering upper bound)";
    r["C_1"] = "interval (covering upper bound)";
    r["R"] = "exact";
    for (auto& [k, v] : G.provenance) r[k] = v;
    bool heur = false, inj = false;
    for (auto& [k, v] : G.provenance) heur |= v == "heuristic", inj |= v == "injected";
    std::string dep = heur && inj ? "interval given heuristic and injected G" : heur ? "interval given heuristic G"
                                                                                     : "interval given injected G";
    for (auto k : {"E1", "E2", "C", "branch2", "bound"}) r[k] = dep;
    r["E1"] = "interval";
    r["branch1"] = "interval";
    return b;
}

std::vector<double> decade_grid() {
    std::vector<double> g = kDefaultGrid;
    for (int k = 3; k <= 20; ++k) g.push_back(std::pow(10.0, k));
    return g;
}

Iv F1_of(const Bundle& b, double lambda) {
    int n = b.n;
    Iv lam(lambda), idx((double)b.idx), f16(20922789888000.0);
    Iv B14 = ipow(b.B.B1, 0.25);
    Iv t1 = itwo_pow((n + 90) / 12.0) * ipow(Iv(3.0), 2.5) * ipow(f16, 3.0 / 32) * ipow(idx, 1.25) * B14 /
            ipow(lam, 1.5);
    Iv t2 = itwo_pow((n + 24) / 48.0) * isqrt_iv(Iv(3.0)) * ipow(f16, 1.0 / 32) * ipow(idx, 0.25) * B14 *
            (iabs_iv(ilog(b.Mp)) + 2.0 * n + 6.0) / isqrt_iv(lam);
    return ipow(t1 + t2, 4);
}

LambdaRow lambda_row(const Bundle& b, double F2, double lambda) {
    LambdaRow r;
    r.lambda = lambda;
    try {
        r.D = D_constants(lambda, b.n, b.idx);
    } catch (const LambdaTooSmall&) {
        r.admissible = false;
        return r;
    }
    Iv lam(lambda), G1(b.G.G1), G2(b.G.G2), G3(b.G.G3), idx((double)b.idx);
    r.F1 = F1_of(b, lambda);
    r.E1 = r.F1 + b.B.B2 * r.D.D1 + 2.0 * b.B.B3 / lam;
    Iv log2e = Iv(1.0) / ilog(Iv(2.0));
    r.E2 = 1.0 - (8.0 * idx * log2e / lam + r.D.D3 / 3.0 + G2 / lam + G3 * r.D.D4 * Iv(F2) * idx / (G1 * lam));
    r.feasible = lo(r.E2) > 0;
    r.C = imin(Iv(1.0) / lam, G1 * r.D.D2 * r.E2 / r.E1);
    return r;
}

FinalC final_C(const Bundle& b, double F2, const std::vector<double>& grid) {
    if (grid.empty()) throw PreconditionFailed("empty lambda grid");
    if (!(b.G.G1 > 0)) throw PreconditionFailed("G1 must be positive");
    FinalC fc;
    fc.F2 = F2;
    bool any = false;
    for (double lam : grid) {
        if (!(lam > 0)) throw PreconditionFailed("lambda must be positive");
        fc.rows.push_back(lambda_row(b, F2, lam));
        auto& r = fc.rows.back();
        if (r.admissible && r.feasible && (!any || lo(r.C) > fc.C)) {
            any = true;
            fc.C = lo(r.C);
            fc.lambda = lam;
        }
    }
    if (!any) throw NoFeasibleLambda("E2 <= 0 at every grid point");
    return fc;
}

static double F2_factor(i64 q) {
    Iv Q((double)q);
    Iv v = isqrt_iv(Q) / boost::numeric::square(ipow(Q, 0.25) - 1.0);
    return hi(v);
}

double F2_of(const BoundParams& bp) {
    double v = 1;
    for (i64 q : bp.P_UK)
        if (q <= 131) v *= F2_factor(q);
    return v;
}

double F2_uniform(const Field& F) {
    double v = 1;
    for (i64 p : primes_upto(131))
        for (auto& P : F.factor_prime(p).primes)
            if (P.norm() <= 131) v *= F2_factor(P.norm());
    return v;
}

bool parity_ok(const Field& F) {
    int s = (int)F.factor_prime(37).primes.size();
    return (F.n() + s) % 2 == 0;
}

FinalBound final_bound(const CMField& K, const Bundle& b, const std::vector<double>& grid) {
    const Field& F = K.F;
    FinalBound fb;
    auto st = F.factor_prime(37);
    fb.s = fb.places37 = (int)st.primes.size();
    fb.e = st.primes[0].e;
    fb.f = (double)F.n() / (fb.s * fb.e);
    if ((F.n() + fb.s) % 2 != 0) throw ParityFails("n + s is odd");
    fb.bp = bound_params(K);
    for (auto& P : st.primes)
        if (K.split(P).kind == 's') fb.split37 = true;

    int n = F.n();
    Iv Nd((double)fb.bp.Nd);
    Iv logd = ilog(Nd);
    fb.logd = mid(logd);
    Iv b1 = ilog(Nd / ipow(Iv(4.0), n)) / (Iv(fb.f) * ilog(Iv(37.0)));
    fb.branch1 = lo(b1);

    fb.C = final_C(b, F2_of(fb.bp), grid);
    Iv fac(1.0);
    for (i64 q : fb.bp.P_K) {
        Iv Q((double)q);
        fac *= 1.0 - 2.0 * isqrt_iv(Q) / (1.0 + Q);
    }
    fb.factor = lo(fac);
    fb.branch2 = lo(Iv(fb.C.C) * fac * logd);
    fb.bound = std::min(fb.branch1, fb.branch2);
    fb.rigor = b.rigor;
    fb.checked = K.have_classes;
    fb.ok = !fb.checked || fb.bound <= (double)K.hK;
    return fb;
}

}  // namespace relclass
