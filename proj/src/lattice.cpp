#include "relclass/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace relclass {

RMat rmat_mul(const RMat& a, const RMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RMat c(n, RVec(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
        }
    return c;
}

RVec rvec_mul(const RVec& v, const RMat& m) {
    RVec out(m.empty() ? 0 : m[0].size());
    for (size_t t = 0; t < v.size(); ++t) {
        if (v[t].is_zero()) continue;
        for (size_t j = 0; j < out.size(); ++j) out[j] += v[t] * m[t][j];
    }
    return out;
}

RMat rmat_transpose(const RMat& a) {
    if (a.empty()) return {};
    RMat t(a[0].size(), RVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

Rat rmat_det(RMat a) {
    size_t n = a.size();
    Rat det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c].is_zero()) ++piv;
        if (piv == n) return 0;
        if (piv != c) std::swap(a[piv], a[c]), det = -det;
        det *= a[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (a[r][c].is_zero()) continue;
            Rat f = a[r][c] / a[c][c];
            for (size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det;
}

RMat rmat_inverse(const RMat& a0) {
    size_t n = a0.size();
    RMat a = a0, inv(n, RVec(n));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("singular matrix");
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        Rat f = Rat(1) / a[c][c];
        for (size_t j = 0; j < n; ++j) a[c][j] *= f, inv[c][j] *= f;
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Rat g = a[r][c];
            for (size_t j = 0; j < n; ++j) a[r][j] -= g * a[c][j], inv[r][j] -= g * inv[c][j];
        }
    }
    return inv;
}

static void row_sub(IVec& r, const IVec& s, i64 q) {
    for (size_t j = 0; j < r.size(); ++j) r[j] = narrow((i128)r[j] - (i128)q * s[j]);
}

// |det| of d independent rows, or 0 if it does not fit
static i64 full_rank_det(const IMat& pool, int d) {
    try {
    RMat basis, echelon;
    for (auto& v : pool) {
        RVec r(v.begin(), v.end());
        RVec e = r;
        for (auto& b : echelon) {
            int piv = 0;
            while (b[piv].is_zero()) ++piv;
            if (!e[piv].is_zero()) {
                Rat f = e[piv] / b[piv];
                for (int j = 0; j < d; ++j) e[j] -= f * b[j];
            }
        }
        if (std::all_of(e.begin(), e.end(), [](const Rat& x) { return x.is_zero(); })) continue;
        basis.push_back(r);
        echelon.push_back(e);
        if ((int)basis.size() == d) break;
    }
    if ((int)basis.size() < d) throw std::domain_error("lattice not of full rank");
    Rat D = rabs(rmat_det(basis));
    if (D.p > ((i64)1 << 60)) return 0;
    return D.p;
    } catch (const ArithmeticOverflow&) {
        return 0;
    }
}

static i128 sub_mul(i128 a, i128 q, i128 b) {
    i128 t, r;
    if (__builtin_mul_overflow(q, b, &t) || __builtin_sub_overflow(a, t, &r)) throw ArithmeticOverflow("hnf");
    return r;
}

static i128 floordiv128(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

static i128 abs128(i128 a) { return a < 0 ? -a : a; }

// with D > 0 the lattice contains D*Z^d and entries are kept mod D
IMat hnf(IMat pool0, int d) {
    i128 D = full_rank_det(pool0, d);
    std::vector<std::vector<i128>> pool;
    for (auto& v : pool0) {
        std::vector<i128> r(v.begin(), v.end());
        if (D)
            for (auto& x : r) x = ((x % D) + D) % D;
        pool.push_back(r);
    }
    if (D)
        for (int j = 0; j < d; ++j) {
            std::vector<i128> e(d, 0);
            e[j] = D;
            pool.push_back(e);
        }
    std::vector<std::vector<i128>> H(d, std::vector<i128>(d, 0));
    for (int c = d - 1; c >= 0; --c) {
        while (true) {
            int best = -1;
            for (int i = 0; i < (int)pool.size(); ++i)
                if (pool[i][c] != 0 && (best < 0 || abs128(pool[i][c]) < abs128(pool[best][c]))) best = i;
            if (best < 0) throw std::domain_error("lattice not of full rank");
            bool clean = true;
            for (int i = 0; i < (int)pool.size(); ++i) {
                if (i == best || pool[i][c] == 0) continue;
                i128 q = floordiv128(pool[i][c], pool[best][c]);
                for (int j = 0; j <= c; ++j) {
                    pool[i][j] = sub_mul(pool[i][j], q, pool[best][j]);
                    if (D && j < c) pool[i][j] = ((pool[i][j] % D) + D) % D;
                }
                if (pool[i][c] != 0) clean = false;
            }
            if (clean) {
                auto r = pool[best];
                if (r[c] < 0)
                    for (auto& x : r) x = -x;
                H[c] = r;
                pool.erase(pool.begin() + best);
                pool.erase(std::remove_if(pool.begin(), pool.end(),
                                          [](const std::vector<i128>& v) {
                                              return std::all_of(v.begin(), v.end(), [](i128 x) { return x == 0; });
                                          }),
                           pool.end());
                break;
            }
        }
        if (c > 0 && pool.empty()) throw std::domain_error("lattice not of full rank");
    }
    for (int j = 1; j < d; ++j)
        for (int i = j - 1; i >= 0; --i) {
            i128 q = floordiv128(H[j][i], H[i][i]);
            for (int k = 0; k <= i; ++k) H[j][k] = sub_mul(H[j][k], q, H[i][k]);
        }
    IMat out(d, IVec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out[i][j] = narrow(H[i][j]);
    return out;
}

Lat Lat::from_gens(const RMat& gens, int d) {
    i64 den = 1;
    for (auto& v : gens)
        for (auto& x : v) den = lcm64(den, x.q);
    IMat pool;
    for (auto& v : gens) {
        IVec r(d);
        bool nz = false;
        for (int j = 0; j < d; ++j) {
            r[j] = narrow((i128)v[j].p * (den / v[j].q));
            nz |= r[j] != 0;
        }
        if (nz) pool.push_back(r);
    }
    Lat L;
    L.d = d;
    L.H = hnf(pool, d);
    i64 g = den;
    for (auto& r : L.H)
        for (auto x : r) g = gcd64(g, x);
    L.den = den / g;
    for (auto& r : L.H)
        for (auto& x : r) x /= g;
    return L;
}

Lat Lat::identity(int d) {
    Lat L;
    L.d = d;
    L.H.assign(d, IVec(d, 0));
    for (int i = 0; i < d; ++i) L.H[i][i] = 1;
    return L;
}

RVec Lat::row(int i) const {
    RVec v(d);
    for (int j = 0; j < d; ++j) v[j] = Rat(H[i][j], den);
    return v;
}

RMat Lat::basis() const {
    RMat b;
    for (int i = 0; i < d; ++i) b.push_back(row(i));
    return b;
}

bool Lat::contains(const RVec& v) const {
    std::vector<i128> x(d);
    for (int j = 0; j < d; ++j) {
        Rat s = v[j] * Rat(den);
        if (!s.is_int()) return false;
        x[j] = s.p;
    }
    for (int i = d - 1; i >= 0; --i) {
        if (x[i] % H[i][i] != 0) return false;
        i128 c = x[i] / H[i][i];
        if (c != 0)
            for (int j = 0; j <= i; ++j) x[j] -= c * H[i][j];
    }
    return true;
}

bool Lat::contains(const Lat& o) const {
    for (int i = 0; i < o.d; ++i)
        if (!contains(o.row(i))) return false;
    return true;
}

Rat Lat::covolume() const {
    Rat r = 1;
    for (int i = 0; i < d; ++i) r *= Rat(H[i][i], den);
    return r;
}

Lat Lat::scaled(const Rat& s) const {
    RMat b = basis();
    for (auto& v : b)
        for (auto& x : v) x *= s;
    return from_gens(b, d);
}

Lat lat_sum(const Lat& a, const Lat& b) {
    RMat g = a.basis();
    for (auto& v : b.basis()) g.push_back(v);
    return Lat::from_gens(g, a.d);
}

Lat lat_dual(const Lat& a) {
    RMat inv = rmat_inverse(a.basis());
    return Lat::from_gens(rmat_transpose(inv), a.d);
}

Lat lat_intersect(const Lat& a, const Lat& b) {
    return lat_dual(lat_sum(lat_dual(a), lat_dual(b)));
}

std::vector<RVec> coset_reps(const Lat& big, const Lat& small, i64 limit) {
    int d = big.d;
    RMat bb = big.basis();
    RMat inv = rmat_inverse(bb);
    RMat coords = rmat_mul(small.basis(), inv);
    IMat gens;
    for (auto& r : coords) {
        IVec v(d);
        for (int j = 0; j < d; ++j) {
            if (!r[j].is_int()) throw std::domain_error("not a sublattice");
            v[j] = r[j].p;
        }
        gens.push_back(v);
    }
    IMat T = hnf(gens, d);
    i128 count = 1;
    for (int i = 0; i < d; ++i) count *= T[i][i];
    if (count > limit) throw SearchBudgetExceeded("coset enumeration");
    std::vector<RVec> reps;
    IVec c(d, 0);
    while (true) {
        RVec v(d);
        for (int i = 0; i < d; ++i)
            if (c[i])
                for (int j = 0; j < d; ++j) v[j] += Rat(c[i]) * bb[i][j];
        reps.push_back(v);
        int k = 0;
        while (k < d && ++c[k] == T[k][k]) c[k++] = 0;
        if (k == d) break;
    }
    return reps;
}

IMat lll_transform(const std::vector<std::vector<double>>& g0) {
    int n = (int)g0.size();
    auto G = g0;
    IMat U(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) U[i][i] = 1;
    auto gso = [&](std::vector<std::vector<double>>& mu, std::vector<double>& B) {
        mu.assign(n, std::vector<double>(n, 0));
        B.assign(n, 0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                double s = G[i][j];
                for (int k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * B[k];
                mu[i][j] = s / B[j];
            }
            double s = G[i][i];
            for (int k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * B[k];
            B[i] = s;
        }
    };
    auto sub = [&](int i, int j, i64 q) {  // b_i -= q b_j
        for (int k = 0; k < n; ++k) U[i][k] -= q * U[j][k];
        double gii = G[i][i], gij = G[i][j], gjj = G[j][j], dq = (double)q;
        for (int k = 0; k < n; ++k) G[i][k] -= dq * G[j][k];
        G[i][i] = gii - 2 * dq * gij + dq * dq * gjj;
        for (int k = 0; k < n; ++k) G[k][i] = G[i][k];
    };
    std::vector<std::vector<double>> mu;
    std::vector<double> B;
    int k = 1, iters = 0;
    while (k < n && iters++ < 10000) {
        gso(mu, B);
        for (int j = k - 1; j >= 0; --j) {
            gso(mu, B);
            double q = std::round(mu[k][j]);
            if (q != 0) sub(k, j, (i64)q);
        }
        gso(mu, B);
        if (B[k] < (0.99 - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            std::swap(U[k], U[k - 1]);
            std::swap(G[k], G[k - 1]);
            for (int t = 0; t < n; ++t) std::swap(G[t][k], G[t][k - 1]);
            k = std::max(k - 1, 1);
        } else {
            ++k;
        }
    }
    return U;
}

Rat quad_eval(const RMat& gram, const IVec& z) {
    Rat s = 0;
    int d = (int)z.size();
    for (int i = 0; i < d; ++i) {
        if (!z[i]) continue;
        for (int j = 0; j < d; ++j)
            if (z[j]) s += gram[i][j] * Rat(narrow((i128)z[i] * z[j]));
    }
    return s;
}

void enumerate_short(const RMat& gram, const Rat& bound,
                     const std::function<bool(const IVec&)>& visit,
                     long long budget, bool include_zero) {
    int d = (int)gram.size();
    std::vector<std::vector<double>> gd(d, std::vector<double>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) gd[i][j] = gram[i][j].to_double();
    IMat U = lll_transform(gd);
    // reduced Gram in double
    std::vector<std::vector<double>> R(d, std::vector<double>(d, 0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = 0;
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) s += (double)U[i][a] * gd[a][b] * (double)U[j][b];
            R[i][j] = s;
        }
    // q(y) = sum_i Q[i][i] (y_i + sum_{j>i} Q[i][j] y_j)^2
    std::vector<std::vector<double>> Q = R;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            Q[j][i] = Q[i][j];
            Q[i][j] = Q[i][j] / Q[i][i];
        }
        for (int k = i + 1; k < d; ++k)
            for (int l = k; l < d; ++l) Q[k][l] -= Q[k][i] * Q[i][l];
    }
    double B = bound.to_double();
    double slack = B * 1e-9 + 1e-9;
    IVec y(d, 0), z(d);
    long long nodes = 0;
    bool stop = false;
    std::function<void(int, double)> rec = [&](int i, double T) {
        if (stop) return;
        double c = 0;
        for (int j = i + 1; j < d; ++j) c -= Q[i][j] * (double)y[j];
        double r = std::sqrt(std::max(0.0, T + slack) / Q[i][i]);
        i64 lo = (i64)std::ceil(c - r - 1e-9), hi = (i64)std::floor(c + r + 1e-9);
        for (i64 v = lo; v <= hi && !stop; ++v) {
            if (++nodes > budget) throw SearchBudgetExceeded("short vector enumeration");
            y[i] = v;
            double t = T - Q[i][i] * ((double)v - c) * ((double)v - c);
            if (t < -slack) continue;
            if (i > 0) {
                rec(i - 1, t);
            } else {
                bool zero = std::all_of(y.begin(), y.end(), [](i64 x) { return x == 0; });
                if (zero && !include_zero) continue;
                for (int k = 0; k < d; ++k) {
                    i64 s = 0;
                    for (int a = 0; a < d; ++a) s += y[a] * U[a][k];
                    z[k] = s;
                }
                if (quad_eval(gram, z) <= bound && !visit(z)) stop = true;
            }
        }
        y[i] = 0;
    };
    rec(d - 1, B);
}

}  // namespace relclass
