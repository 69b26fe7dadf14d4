#include "relclass/base_field.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace relclass {

static void same_field(const FElem& x, const FElem& y) {
    if (x.f && y.f && x.f != y.f && (x.f->m != y.f->m || x.f->n != y.f->n)) throw MixedFields();
}
static const FieldCore* pick(const FElem& x, const FElem& y) { return x.f ? x.f : y.f; }

FElem operator+(const FElem& x, const FElem& y) {
    same_field(x, y);
    return FElem(pick(x, y), x.a + y.a, x.b + y.b);
}
FElem operator-(const FElem& x) { return FElem(x.f, -x.a, -x.b); }
FElem operator-(const FElem& x, const FElem& y) { return x + (-y); }
FElem operator*(const FElem& x, const FElem& y) {
    same_field(x, y);
    const FieldCore* f = pick(x, y);
    if (x.b.is_zero() && y.b.is_zero()) return FElem(f, x.a * y.a, 0);
    Rat bb = x.b * y.b;
    return FElem(f, x.a * y.a - bb * Rat(f->nw), x.a * y.b + x.b * y.a + bb * Rat(f->t));
}
FElem operator*(const FElem& x, const Rat& r) { return FElem(x.f, x.a * r, x.b * r); }
FElem operator/(const FElem& x, const FElem& y) { return x * y.inv(); }
bool operator==(const FElem& x, const FElem& y) { return x.a == y.a && x.b == y.b; }
bool operator<(const FElem& x, const FElem& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

FElem FElem::conj() const {
    if (b.is_zero()) return *this;
    return FElem(f, a + b * Rat(f->t), -b);
}
Rat FElem::norm() const {
    if (f == nullptr || f->n == 1) return a;
    return a * a + a * b * Rat(f->t) + b * b * Rat(f->nw);
}
Rat FElem::trace() const {
    if (f == nullptr || f->n == 1) return a;
    return a * Rat(2) + b * Rat(f->t);
}
FElem FElem::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (f == nullptr || f->n == 1) return FElem(f, Rat(1) / a, 0);
    return conj() * (Rat(1) / norm());
}
std::pair<Rat, Rat> FElem::surd(int k) const {
    if (f == nullptr || f->n == 1) return {a, 0};
    Rat s = k == 0 ? Rat(1) : Rat(-1);
    if (f->mod4) return {a + b * Rat(1, 2), s * b * Rat(1, 2)};
    return {a, s * b};
}
int surd_sign(const Rat& A, const Rat& B, i64 m) {
    int sa = A.sign(), sb = B.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // compare A^2 with m B^2 as A.p^2 B.q^2 vs m B.p^2 A.q^2
    auto sq = [](i64 x) { return (long double)x * (long double)x; };
    long double l = sq(A.p) * sq(B.q), r = (long double)m * sq(B.p) * sq(A.q);
    if (l < 1e36L && r < 1e36L) {
        i128 li = (i128)A.p * A.p * B.q * B.q, ri = (i128)m * B.p * B.p * A.q * A.q;
        if (li == ri) return 0;
        return li > ri ? sa : sb;
    }
    if (std::fabs((double)((l - r) / (l + r))) < 1e-15) throw ArithmeticOverflow("surd sign undecided");
    return l > r ? sa : sb;
}
int FElem::sign(int k) const {
    auto [A, B] = surd(k);
    return surd_sign(A, B, f ? f->m : 0);
}
double FElem::embed(int k) const {
    auto [A, B] = surd(k);
    return A.to_double() + (B.is_zero() ? 0.0 : B.to_double() * std::sqrt((double)f->m));
}
bool FElem::is_totally_positive() const {
    int n = f ? f->n : 1;
    for (int k = 0; k < n; ++k)
        if (sign(k) <= 0) return false;
    return true;
}
bool FElem::is_totally_negative() const { return (-*this).is_totally_positive(); }
RVec FElem::coords() const {
    if (f == nullptr || f->n == 1) return {a};
    return {a, b};
}
std::string FElem::str() const {
    if (f == nullptr || f->n == 1 || b.is_zero()) return a.str();
    std::string w = f->mod4 ? "w" : "r" + std::to_string(f->m);
    return "(" + a.str() + (b.sign() < 0 ? "" : "+") + b.str() + "*" + w + ")";
}

Rat FIdeal::norm() const { return L.covolume(); }
bool FIdeal::is_integral() const { return L.den == 1; }
bool FIdeal::contains(const FElem& x) const { return L.contains(x.coords()); }
std::vector<FElem> FIdeal::basis() const {
    std::vector<FElem> out;
    for (int i = 0; i < L.d; ++i) {
        RVec r = L.row(i);
        out.push_back(FElem(f, r[0], L.d == 2 ? r[1] : Rat(0)));
    }
    return out;
}
std::string FIdeal::str() const {
    std::string s = "[";
    for (int i = 0; i < L.d; ++i) {
        s += i ? ";" : "";
        for (int j = 0; j <= i; ++j) s += (j ? "," : "") + Rat(L.H[i][j], L.den).str();
    }
    return s + "]";
}

FIdeal Field::unit_ideal() const { return FIdeal{Lat::identity(n()), core.get()}; }

FIdeal Field::ideal_from(const std::vector<FElem>& gens) const {
    RMat g;
    for (auto& x : gens) {
        g.push_back(x.coords());
        if (n() == 2) g.push_back((x * omega()).coords());
    }
    return FIdeal{Lat::from_gens(g, n()), core.get()};
}
FIdeal Field::principal(const FElem& x) const {
    if (x.is_zero()) throw std::domain_error("zero ideal");
    return ideal_from({x});
}
FIdeal Field::mul(const FIdeal& a, const FIdeal& b) const {
    RMat g;
    auto ba = a.basis(), bb = b.basis();
    for (auto& x : ba)
        for (auto& y : bb) g.push_back((x * y).coords());
    return FIdeal{Lat::from_gens(g, n()), core.get()};
}
FIdeal Field::add(const FIdeal& a, const FIdeal& b) const { return FIdeal{lat_sum(a.L, b.L), core.get()}; }
FIdeal Field::conj(const FIdeal& a) const {
    RMat g;
    for (auto& x : a.basis()) g.push_back(x.conj().coords());
    return FIdeal{Lat::from_gens(g, n()), core.get()};
}
FIdeal Field::scale(const FIdeal& a, const Rat& r) const { return FIdeal{a.L.scaled(r), core.get()}; }
FIdeal Field::inverse(const FIdeal& a) const {
    if (n() == 1) return principal(elem(Rat(1) / a.basis()[0].a));
    return scale(conj(a), Rat(1) / a.norm());
}
FIdeal Field::pow(const FIdeal& a, int k) const {
    if (k < 0) return pow(inverse(a), -k);
    FIdeal r = unit_ideal();
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

SplittingType Field::factor_prime(i64 p) const {
    if (!is_prime(p)) throw PreconditionFailed("factor_prime needs a prime");
    SplittingType st;
    st.p = p;
    auto mk = [&](int e, int f, const FIdeal& I, FElem tau, FElem rho) {
        FPrime P;
        P.p = p;
        P.e = e;
        P.f = f;
        P.P = I;
        P.tau = tau;
        P.rho = rho;
        P.pi = elem(p);
        return P;
    };
    if (n() == 1) {
        st.primes.push_back(mk(1, 1, principal(elem(p)), one(), one()));
        return st;
    }
    i64 t = core->t, nw = core->nw;
    std::vector<i64> roots;
    if (p == 2 || p < 50) {
        for (i64 r = 0; r < p; ++r)
            if (mod(r * r - t * r + nw, p) == 0) roots.push_back(r);
    } else {
        int l = legendre(dF, p);
        if (l >= 0) {
            i64 s = sqrtmod(mod(dF, p), p), i2 = invmod(2, p);
            roots.push_back(mod((i64)((i128)(t + s) * i2 % p), p));
            if (l == 1) roots.push_back(mod((i64)((i128)(t - s + p) * i2 % p), p));
        }
    }
    std::sort(roots.begin(), roots.end());
    if (roots.empty()) {
        st.primes.push_back(mk(1, 2, principal(elem(p)), one(), one()));
        return st;
    }
    bool ram = roots.size() == 1;
    for (i64 r : roots) {
        FIdeal I = ideal_from({elem(p), elem(-r, 1)});
        FElem tau = elem(t - r, -1);
        FPrime P = mk(ram ? 2 : 1, 1, I, tau, ram ? one() : tau);
        for (FElem c : {elem(-r, 1), elem(p - r, 1), elem(-r - p, 1)}) {
            if (valuation(P, c) == 1) {
                P.pi = c;
                break;
            }
        }
        if (valuation(P, P.pi) != 1) throw std::logic_error("no uniformizer");
        st.primes.push_back(P);
    }
    return st;
}

int Field::valuation(const FPrime& P, const FElem& x) const {
    if (x.is_zero()) return 1 << 20;
    i64 d = x.denom();
    int vd = relclass::valuation(d, P.p);
    FElem y = x * Rat(d);
    int k = 0;
    while (true) {
        FElem z = y * P.tau * Rat(1, P.p);
        if (!z.is_integral()) break;
        y = z;
        ++k;
    }
    return k - P.e * vd;
}

int Field::valuation(const FPrime& P, const FIdeal& a) const {
    int v = 1 << 20;
    for (auto& b : a.basis()) v = std::min(v, valuation(P, b));
    return v;
}

std::vector<std::pair<FPrime, int>> Field::factor_ideal(const FIdeal& a) const {
    Rat N = a.norm();
    std::vector<i64> ps;
    for (auto& [p, e] : factor(N.p)) ps.push_back(p);
    for (auto& [p, e] : factor(N.q)) ps.push_back(p);
    // denominators of the basis may hide primes cancelled in the norm
    for (auto& [p, e] : factor(a.L.den)) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::vector<std::pair<FPrime, int>> out;
    for (i64 p : ps) {
        for (auto& P : factor_prime(p).primes) {
            int v = valuation(P, a);
            if (v) out.push_back({P, v});
        }
    }
    return out;
}

LocalRing Field::local(const FPrime& P, int N) const {
    LocalRing R;
    R.F = this;
    R.P = P;
    R.N = N;
    R.PN = pow(P.P, N);
    return R;
}

i64 LocalRing::size() const { return ipow(P.norm(), N); }

std::vector<FElem> LocalRing::reps() const {
    std::vector<FElem> out;
    int d = PN.L.d;
    IVec c(d, 0);
    while (true) {
        out.push_back(F->elem(c[0], d == 2 ? Rat(c[1]) : Rat(0)));
        int k = 0;
        while (k < d && ++c[k] == PN.L.H[k][k]) c[k++] = 0;
        if (k == d) break;
    }
    return out;
}

static FElem reduce_int(const LocalRing& R, const FElem& y) {
    int d = R.PN.L.d;
    i64 x[2] = {y.a.p, d == 2 ? y.b.p : 0};
    const IMat& H = R.PN.L.H;
    for (int i = d - 1; i >= 0; --i) {
        i64 c = floordiv(x[i], H[i][i]);
        for (int j = 0; j <= i; ++j) x[j] = narrow((i128)x[j] - (i128)c * H[i][j]);
    }
    return R.F->elem(x[0], d == 2 ? Rat(x[1]) : Rat(0));
}

FElem LocalRing::reduce(const FElem& x) const {
    if (x.is_integral()) return reduce_int(*this, x);
    i64 d = x.denom();
    int k = relclass::valuation(d, P.p);
    i64 dp = d / ipow(P.p, k);
    i64 cap = ipow(P.p, (N + P.e - 1) / P.e + 1);
    i64 dinv = invmod(dp, cap);
    FElem z = x * Rat(dp);
    FElem rk = F->one();
    bool split = !(P.rho == F->one());
    if (split) {
        for (int i = 0; i < k; ++i) rk = reduce_int(*this, rk * P.rho);
        FElem rho_k = F->one();
        for (int i = 0; i < k; ++i) rho_k = rho_k * P.rho;
        z = z * rho_k;
    }
    if (!z.is_integral()) throw PreconditionFailed("reduce: element not integral at prime");
    FElem r = reduce_int(*this, z * Rat(dinv));
    if (split) r = mul(r, inv(rk));
    return r;
}

FElem LocalRing::inv(const FElem& x) const {
    i64 q = P.norm();
    i64 order = (q - 1) * ipow(q, N - 1);
    FElem base = reduce(x), r = F->one();
    i64 e = order - 1;
    while (e > 0) {
        if (e & 1) r = reduce(r * base);
        base = reduce(base * base);
        e >>= 1;
    }
    if (!reduce(r * x).is_zero() && reduce(r * x) == reduce(F->one())) return r;
    throw PreconditionFailed("not a unit at prime");
}

bool Field::is_local_square(const FPrime& P, const FElem& x) const {
    if (valuation(P, x) != 0) throw PreconditionFailed("is_local_square wants a unit");
    if (P.p != 2) {
        LocalRing R = local(P, 1);
        FElem base = R.reduce(x), r = one();
        i64 e = (P.norm() - 1) / 2;
        while (e > 0) {
            if (e & 1) r = R.reduce(r * base);
            base = R.reduce(base * base);
            e >>= 1;
        }
        return r == R.reduce(one());
    }
    LocalRing R = local(P, 2 * P.e + 1);
    FElem target = R.reduce(x);
    for (auto& y : R.reps())
        if (R.reduce(y * y) == target) return true;
    return false;
}

bool Field::is_square(const FElem& x, FElem* root) const {
    if (x.is_zero()) {
        if (root) *root = x;
        return true;
    }
    auto rat_sqrt = [](const Rat& r, Rat& out) {
        if (r.sign() < 0 || !relclass::is_square(r.p) || !relclass::is_square(r.q)) return false;
        out = Rat(isqrt(r.p), isqrt(r.q));
        return true;
    };
    if (n() == 1 || x.b.is_zero()) {
        Rat s;
        if (rat_sqrt(x.a, s)) {
            if (root) *root = elem(s);
            return true;
        }
        if (n() == 1) return false;
    }
    Rat s;
    if (!rat_sqrt(x.norm(), s)) return false;
    for (Rat ny : {s, -s}) {
        Rat T;
        if (!rat_sqrt(x.trace() + Rat(2) * ny, T)) continue;
        if (T.is_zero()) {
            // y = c * (omega - t/2) has zero trace
            FElem u = omega() - elem(Rat(core->t, 2));
            FElem q = x / (u * u);
            Rat c;
            if (q.b.is_zero() && rat_sqrt(q.a, c)) {
                if (root) *root = u * c;
                return true;
            }
            continue;
        }
        FElem y = (x + elem(ny)) * (Rat(1) / T);
        if (y * y == x) {
            if (root) *root = y;
            return true;
        }
    }
    return false;
}

static double t2(const FElem& x) {
    double s = 0;
    int n = x.f ? x.f->n : 1;
    for (int k = 0; k < n; ++k) s += x.embed(k) * x.embed(k);
    return s;
}

static Rat t2_exact(const FElem& x) { return (x * x).trace(); }

FElem Field::unit_reduce(const FElem& g) const {
    if (n() == 1) return g;
    FElem x = g, ei = eps.inv();
    while (true) {
        FElem up = x * eps, dn = x * ei;
        if (t2_exact(up) < t2_exact(x)) x = up;
        else if (t2_exact(dn) < t2_exact(x)) x = dn;
        else break;
    }
    return x;
}

FElem Field::canonical_associate(const FElem& g) const {
    if (n() == 1) return g.a.sign() < 0 ? -g : g;
    FElem x0 = unit_reduce(g), ei = eps.inv();
    std::vector<FElem> cands;
    FElem u = x0 * ei;
    for (int k = -1; k <= 1; ++k) {
        cands.push_back(u);
        cands.push_back(-u);
        u = u * eps;
    }
    auto key_less = [&](const FElem& a, const FElem& b) {
        bool pa = a.is_totally_positive(), pb = b.is_totally_positive();
        if (pa != pb) return pa;
        Rat ta = t2_exact(a), tb = t2_exact(b);
        if (ta != tb) return ta < tb;
        return a < b;
    };
    return *std::min_element(cands.begin(), cands.end(), key_less);
}

std::optional<FElem> Field::generator(const FIdeal& a) const {
    auto bs = a.basis();
    if (n() == 1) return canonical_associate(bs[0]);
    Rat N = a.norm();
    RMat gram(2, RVec(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) gram[i][j] = (bs[i] * bs[j]).trace();
    double e1 = eps.embed(0);
    Rat bound = N * Rat((i64)std::ceil(e1 + 1.0 / e1 + 1e-6) + 1);
    std::optional<FElem> found;
    enumerate_short(gram, bound, [&](const IVec& z) {
        FElem x = bs[0] * Rat(z[0]) + bs[1] * Rat(z[1]);
        if (rabs(x.norm()) == N) {
            found = x;
            return false;
        }
        return true;
    }, budget);
    if (!found) return std::nullopt;
    return canonical_associate(*found);
}

int Field::class_index(const FIdeal& a) const {
    if (hF == 1) return 0;
    for (int j = 0; j < (int)class_reps.size(); ++j)
        if (is_principal(mul(a, inverse(class_reps[j])))) return j;
    throw std::logic_error("ideal not in any class");
}

std::vector<FIdeal> Field::ideals_upto(i64 bound) const {
    std::vector<FPrime> ps;
    for (i64 p : primes_upto(bound))
        for (auto& P : factor_prime(p).primes)
            if (P.norm() <= bound) ps.push_back(P);
    std::vector<std::pair<i64, FIdeal>> out;
    std::function<void(size_t, i64, const FIdeal&)> rec = [&](size_t i, i64 nrm, const FIdeal& I) {
        if (i == ps.size()) {
            out.push_back({nrm, I});
            return;
        }
        rec(i + 1, nrm, I);
        i64 q = ps[i].norm();
        FIdeal J = I;
        i64 m = nrm;
        while ((i128)m * q <= bound) {
            m *= q;
            J = mul(J, ps[i].P);
            rec(i + 1, m, J);
        }
    };
    rec(0, 1, unit_ideal());
    std::sort(out.begin(), out.end(), [](auto& x, auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
    });
    std::vector<FIdeal> res;
    for (auto& [k, I] : out) res.push_back(I);
    return res;
}

static FElem fundamental_unit(const Field& F) {
    // continued fraction of omega = (P0 + sqrt(D))/Q0
    i64 m = F.m();
    i64 D = m, P = 0, Q = 1;
    if (F.core->mod4) P = 1, Q = 2;
    i64 s = isqrt(D);
    i64 p1 = 1, p0 = 0, q1 = 0, q0 = 1;  // p_{-1}, p_{-2}, q_{-1}, q_{-2}
    for (int it = 0; it < 10000; ++it) {
        if (Q <= 0) throw std::logic_error("continued fraction lost reduction");
        i64 a = floordiv(P + s, Q);
        i64 p2 = narrow((i128)a * p1 + p0), q2 = narrow((i128)a * q1 + q0);
        p0 = p1, p1 = p2, q0 = q1, q1 = q2;
        FElem u = F.elem(p1, -q1);  // p - q*omega
        Rat N = u.norm();
        if (N == Rat(1) || N == Rat(-1)) {
            FElem e = u.conj();
            if (e.sign(0) < 0) e = -e;
            if (e.embed(0) < 1) e = e.inv();
            return e;
        }
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    throw SearchBudgetExceeded("fundamental unit");
}

Field make_field(int n, i64 m) {
    if (n < 1 || n > 2) throw DegreeUnsupported("exact arithmetic supports n in {1,2}");
    Field F;
    F.core = std::make_shared<FieldCore>();
    F.core->n = n;
    F.unit_sq_index = n == 1 ? 2 : 4;
    if (n == 1) {
        F.eps = F.one();
        F.class_reps = {F.unit_ideal()};
        return F;
    }
    if (m < 2 || !is_squarefree(m)) throw NonSquarefree("m=" + std::to_string(m));
    F.core->m = m;
    F.core->mod4 = mod(m, 4) == 1;
    if (F.core->mod4) {
        F.core->t = 1;
        F.core->nw = (1 - m) / 4;
        F.dF = m;
    } else {
        F.core->t = 0;
        F.core->nw = -m;
        F.dF = 4 * m;
    }
    F.eps = fundamental_unit(F);
    F.regulator = std::log(F.eps.embed(0));
    F.d0 = std::sqrt(2.0) * F.regulator;
    // class group via ideals below the Minkowski bound sqrt(dF)/2
    i64 mb = (i64)std::floor(std::sqrt((double)F.dF) / 2.0 + 1e-9);
    F.class_reps = {F.unit_ideal()};
    for (auto& I : F.ideals_upto(std::max<i64>(mb, 1))) {
        bool found = false;
        for (auto& R : F.class_reps)
            if (F.is_principal(F.mul(I, F.inverse(R)))) {
                found = true;
                break;
            }
        if (!found) F.class_reps.push_back(I);
    }
    F.hF = (int)F.class_reps.size();
    return F;
}

}  // namespace relclass
