#include "relclass/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace relclass {

PKey prime_key(const Field& F, const FPrime& P) {
    auto st = F.factor_prime(P.p);
    for (int i = 0; i < (int)st.primes.size(); ++i)
        if (st.primes[i].P == P.P) return {P.p, i};
    throw std::logic_error("prime not found above " + std::to_string(P.p));
}

i64 ap_curve(i64 p) {
    if (!is_prime(p)) throw PreconditionFailed(std::to_string(p) + " is not prime");
    i64 count = 1;  // point at infinity
    if (p == 2) {
        for (i64 x = 0; x < 2; ++x)
            for (i64 y = 0; y < 2; ++y)
                if (mod(y * y + y - (x * x * x + x * x - 23 * x - 50), 2) == 0) ++count;
        return p + 1 - count;
    }
    // (2y+1)^2 = 4x^3 + 4x^2 - 92x - 199
    std::vector<char> sq(p, 0);
    for (i64 y = 1; y < p; ++y) sq[y * y % p] = 1;
    i64 c0 = mod(-199, p), c1 = mod(-92, p);
    for (i64 x = 0; x < p; ++x) {
        i64 r = (((4 * x + 4) % p * x % p + c1) % p * x % p + c0) % p;
        count += r == 0 ? 1 : (sq[r] ? 2 : 0);
    }
    return p + 1 - count;
}

int QuadChar::operator()(const FPrime& P, const PKey& k) const {
    if (cond_exp(k) > 0) return 0;
    int v = value ? value(P, k) : 1;
    if (v != 1 && v != -1) throw NonQuadraticCharacter(label + " takes value " + std::to_string(v));
    return v;
}

QuadChar trivial_char(const Field& F) {
    QuadChar c;
    c.n = F.n();
    c.label = "trivial";
    c.disc = 1;
    c.value = [](const FPrime&, const PKey&) { return 1; };
    return c;
}

i64 fundamental_disc(i64 D) {
    if (D == 0) throw PreconditionFailed("zero discriminant");
    i64 s = D < 0 ? -1 : 1;
    for (auto& [p, e] : factor(iabs(D)))
        if (e % 2) s *= p;
    return mod(s, 4) == 1 ? s : 4 * s;
}

QuadChar kronecker_char(i64 D) {
    if (fundamental_disc(D) != D) throw NonQuadraticCharacter(std::to_string(D) + " is not a fundamental discriminant");
    if (D == 1) return trivial_char(make_field(1));
    QuadChar c;
    c.n = 1;
    c.label = "kronecker(" + std::to_string(D) + ")";
    c.disc = D;
    for (auto& [p, e] : factor(iabs(D))) c.cond[{p, 0}] = e;
    c.sign_minus1 = D < 0 ? -1 : 1;
    c.value = [D](const FPrime& P, const PKey&) { return kronecker(D, P.p); };
    return c;
}

QuadChar extension_char(const CMField& K) {
    QuadChar c;
    c.n = K.n();
    c.label = "extension(" + K.delta.str() + ")";
    for (auto& [P, e] : K.F.factor_ideal(K.rel_disc)) c.cond[prime_key(K.F, P)] = e;
    c.sign_minus1 = K.n() % 2 ? -1 : 1;
    if (K.n() == 1) {
        i64 D = K.abs_disc < 0 ? K.abs_disc : -K.abs_disc;
        c.disc = D;
    }
    auto Kp = std::make_shared<CMField>(K);
    c.value = [Kp](const FPrime& P, const PKey&) {
        char t = Kp->split(P).kind;
        return t == 's' ? 1 : (t == 'i' ? -1 : 0);
    };
    return c;
}

QuadChar norm_char(const Field& F, i64 D) {
    if (fundamental_disc(D) != D) throw NonQuadraticCharacter(std::to_string(D) + " is not a fundamental discriminant");
    QuadChar c;
    c.n = F.n();
    c.label = "kronecker(" + std::to_string(D) + ")oN";
    if (F.n() == 1) c.disc = D;
    for (auto& [p, e] : factor(iabs(D))) {
        auto st = F.factor_prime(p);
        for (int i = 0; i < (int)st.primes.size(); ++i) {
            if (st.primes[i].e > 1) throw PreconditionFailed("character ramified where F is");
            c.cond[{p, i}] = e;
        }
    }
    int s = D < 0 ? -1 : 1;
    c.sign_minus1 = F.n() % 2 ? s : 1;
    c.value = [D](const FPrime& P, const PKey&) {
        int v = kronecker(D, P.p);
        return P.f % 2 ? v : v * v;
    };
    return c;
}

QuadChar synthetic_char(const Field& F, const std::map<PKey, int>& values, const std::map<PKey, int>& cond,
                        int sign_minus1) {
    for (auto& [k, v] : values) {
        if (v < -1 || v > 1) throw NonQuadraticCharacter("value " + std::to_string(v));
        bool in_cond = cond.count(k) && cond.at(k) > 0;
        if ((v == 0) != in_cond) throw NonQuadraticCharacter("zero values must match the conductor");
    }
    if (sign_minus1 != 1 && sign_minus1 != -1) throw NonQuadraticCharacter("sign at -1");
    QuadChar c;
    c.n = F.n();
    c.label = "synthetic";
    c.cond = cond;
    c.sign_minus1 = sign_minus1;
    c.value = [values](const FPrime&, const PKey& k) {
        auto it = values.find(k);
        return it == values.end() ? 1 : it->second;
    };
    return c;
}

QuadChar char_product(const QuadChar& a, const QuadChar& b) {
    if (a.n != 1 || b.n != 1) throw DegreeUnsupported("character products only over Q");
    if (a.disc == 0 || b.disc == 0) throw NonQuadraticCharacter("character without discriminant");
    i64 D = fundamental_disc(narrow((i128)a.disc * b.disc));
    return D == 1 ? trivial_char(make_field(1)) : kronecker_char(D);
}

i64 EigenvalueTable::at(const PKey& k) const {
    auto it = lambda.find(k);
    if (k.first > pmax || it == lambda.end())
        throw OutOfTableRange("no eigenvalue at prime above " + std::to_string(k.first));
    return it->second;
}

i64 EigenvalueTable::level_norm() const {
    i64 N = 1;
    for (auto& [k, e] : level) {
        auto it = qnorm.find(k);
        i64 q = it != qnorm.end() ? it->second : F->factor_prime(k.first).primes[k.second].norm();
        for (int i = 0; i < e; ++i) N = narrow((i128)N * q);
    }
    return N;
}

bool EigenvalueTable::level_squarefree() const {
    for (auto& [k, e] : level)
        if (e > 1) return false;
    return true;
}

EigenvalueTable curve_table(i64 pmax) {
    EigenvalueTable T;
    T.F = std::make_shared<Field>(make_field(1));
    T.pmax = pmax;
    for (i64 p : primes_upto(pmax)) {
        T.lambda[{p, 0}] = ap_curve(p);
        T.qnorm[{p, 0}] = p;
    }
    T.level[{kCurveLevel, 0}] = 1;
    T.provenance = "point-count";
    if (pmax >= (i64)std::ceil(10 * std::sqrt((double)kCurveLevel)) + 10) T.eps = epsilon_numeric(T).eps;
    return T;
}

static std::map<i64, SplittingType> splitting_cache(const Field& F, i64 pmax) {
    std::map<i64, SplittingType> m;
    for (i64 p : primes_upto(pmax)) m[p] = F.factor_prime(p);
    return m;
}

EigenvalueTable twist_table(const EigenvalueTable& T, const QuadChar& chi) {
    if (T.F->n() != chi.n) throw MixedFields("table and character over different fields");
    if (T.origin && T.origin_char && chi.n == 1 && chi.disc != 0 && T.origin_char->disc != 0) {
        QuadChar c = char_product(*T.origin_char, chi);
        if (c.label == "trivial") {
            EigenvalueTable R = *T.origin;
            R.provenance = T.origin->provenance + "+twist-back";
            return R;
        }
        return twist_table(*T.origin, c);
    }
    EigenvalueTable R;
    R.F = T.F;
    R.pmax = T.pmax;
    R.qnorm = T.qnorm;
    auto st = splitting_cache(*T.F, T.pmax);
    for (auto& [k, lam] : T.lambda) {
        int ea = T.level_exp(k), ce = chi.cond_exp(k);
        if (ce > 0) {
            if (ea >= 2) throw OutOfTableRange("twist at a prime dividing both the level squared and the conductor");
            R.lambda[k] = 0;
            R.level[k] = 2 * ce;
        } else {
            R.lambda[k] = chi(st.at(k.first).primes[k.second], k) * lam;
            if (ea) R.level[k] = ea;
        }
    }
    for (auto& [k, e] : T.level)
        if (!R.level.count(k)) R.level[k] = chi.cond_exp(k) > 0 ? 2 * chi.cond_exp(k) : e;
    for (auto& [k, e] : chi.cond)
        if (!R.level.count(k)) R.level[k] = 2 * e;
    if (T.eps != 0 && T.level_squarefree()) R.eps = epsilon_factor(T, chi);
    R.provenance = "twist";
    R.origin = std::make_shared<EigenvalueTable>(T);
    R.origin_char = std::make_shared<QuadChar>(chi);
    return R;
}

EigenvalueTable base_change_table(const EigenvalueTable& T, const Field& F) {
    if (T.F->n() != 1) throw DegreeUnsupported("source table must be over Q");
    if (F.n() != 2) throw DegreeUnsupported("base change only to quadratic fields");
    EigenvalueTable R;
    R.F = std::make_shared<Field>(F);
    R.pmax = T.pmax;
    for (i64 p : primes_upto(T.pmax)) {
        PKey k0{p, 0};
        i64 a = T.at(k0);
        int ea = T.level_exp(k0);
        auto st = F.factor_prime(p);
        for (int i = 0; i < (int)st.primes.size(); ++i) {
            const FPrime& P = st.primes[i];
            PKey k{p, i};
            R.qnorm[k] = P.norm();
            if (ea == 0) {
                R.lambda[k] = P.f == 1 ? a : a * a - 2 * p;
            } else if (ea == 1) {
                R.lambda[k] = P.f == 1 ? a : a * a;
                R.level[k] = 1;
            } else {
                if (P.e > 1) throw OutOfTableRange("base change at a ramified prime with p^2 in the level");
                R.lambda[k] = 0;
                R.level[k] = ea;
            }
        }
    }
    for (auto& [k, e] : T.level)
        if (k.first > T.pmax) throw OutOfTableRange("level prime beyond table");
    R.provenance = "base-change";
    return R;
}

EigenvalueTable synthetic_table(const Field& F, const std::map<PKey, i64>& lambda, const std::map<PKey, int>& level,
                                int eps, i64 pmax) {
    EigenvalueTable T;
    T.F = std::make_shared<Field>(F);
    T.pmax = pmax;
    for (i64 p : primes_upto(pmax)) {
        auto st = F.factor_prime(p);
        for (int i = 0; i < (int)st.primes.size(); ++i) {
            PKey k{p, i};
            T.qnorm[k] = st.primes[i].norm();
            auto it = lambda.find(k);
            T.lambda[k] = it == lambda.end() ? 0 : it->second;
        }
    }
    T.level = level;
    T.eps = eps;
    T.provenance = "synthetic";
    return T;
}

std::string table_to_text(const EigenvalueTable& T) {
    std::ostringstream os;
    auto st = splitting_cache(*T.F, T.pmax);
    for (auto& [k, e] : T.level) os << "#level," << k.first << "," << k.second << "," << e << "\n";
    if (T.eps) os << "#eps," << T.eps << "\n";
    for (auto& [k, lam] : T.lambda) {
        const FPrime& P = st.at(k.first).primes[k.second];
        os << P.norm() << "," << P.f << "," << P.e << "," << lam << "\n";
    }
    return os.str();
}

EigenvalueTable table_from_text(const Field& F, const std::string& text) {
    EigenvalueTable T;
    T.F = std::make_shared<Field>(F);
    T.provenance = "file";
    std::istringstream is(text);
    std::string line;
    std::map<i64, int> seen;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<i64> v;
        std::string head;
        std::istringstream ls(line);
        std::string tok;
        bool first = true;
        while (std::getline(ls, tok, ',')) {
            if (first && tok[0] == '#') head = tok;
            else v.push_back(std::stoll(tok));
            first = false;
        }
        if (head == "#level" && v.size() == 3) T.level[{v[0], (int)v[1]}] = (int)v[2];
        else if (head == "#eps" && v.size() == 1) T.eps = (int)v[0];
        else if (!head.empty()) continue;
        else {
            if (v.size() != 4) throw PreconditionFailed("bad table line: " + line);
            i64 q = v[0];
            int f = (int)v[1];
            i64 p = q;
            if (f == 2) p = isqrt(q);
            if (!is_prime(p) || ipow(p, f) != q) throw PreconditionFailed("bad prime norm: " + line);
            PKey k{p, seen[p]++};
            T.lambda[k] = v[3];
            T.qnorm[k] = q;
            T.pmax = std::max(T.pmax, p);
        }
    }
    // pmax is the largest p with a complete prefix
    for (i64 p : primes_upto(T.pmax)) {
        if ((int)F.factor_prime(p).primes.size() != seen[p]) {
            T.pmax = p - 1;
            break;
        }
    }
    return T;
}

i64 hecke_prime_power(const EigenvalueTable& T, const PKey& k, int e) {
    if (e == 0) return 1;
    i64 lam = T.at(k);
    int ea = T.level_exp(k);
    if (ea >= 2) return 0;
    if (ea == 1) {
        i64 r = 1;
        for (int i = 0; i < e; ++i) r = narrow((i128)r * lam);
        return r;
    }
    i64 q = T.qnorm.at(k);
    i64 prev = 1, cur = lam;
    for (int i = 1; i < e; ++i) {
        i64 nxt = narrow((i128)lam * cur - (i128)q * prev);
        prev = cur;
        cur = nxt;
    }
    return cur;
}

i64 hecke_extend(const EigenvalueTable& T, const FIdeal& m) {
    if (!m.is_integral()) throw NotIntegral("ideal is not integral");
    i64 r = 1;
    for (auto& [P, e] : T.F->factor_ideal(m)) r = narrow((i128)r * hecke_prime_power(T, prime_key(*T.F, P), e));
    return r;
}

CoeffSeries hecke_series(const EigenvalueTable& T, i64 X) {
    if (X > T.pmax) throw OutOfTableRange("series beyond table range");
    CoeffSeries s = series_one(X);
    for (auto& [k, q] : T.qnorm) {
        if (q > X) continue;
        std::vector<i64> loc{1};
        for (i64 m = q; m <= X; m *= q) {
            loc.push_back(hecke_prime_power(T, k, (int)loc.size()));
            if ((i128)m * q > X) break;
        }
        std::vector<Rat> nv(X + 1, Rat(0));
        for (i64 n = 1; n <= X; ++n) {
            if (s.v[n].is_zero()) continue;
            i64 m = n;
            for (size_t j = 0; j < loc.size() && m <= X; ++j) {
                nv[m] = nv[m] + s.v[n] * Rat(loc[j]);
                if ((i128)m * q > X) break;
                m *= q;
            }
        }
        s.v = nv;
    }
    s.tag = "euler-product";
    return s;
}

std::vector<i64> hecke_coeffs_Q(const EigenvalueTable& T, i64 X) {
    if (T.F->n() != 1) throw DegreeUnsupported("coefficients over Q only");
    if (X > T.pmax) throw InsufficientCoefficients("need primes up to " + std::to_string(X));
    std::vector<i64> spf(X + 1, 0), a(X + 1, 0);
    for (i64 i = 2; i <= X; ++i)
        if (!spf[i])
            for (i64 j = i; j <= X; j += i)
                if (!spf[j]) spf[j] = i;
    if (X >= 1) a[1] = 1;
    for (i64 n = 2; n <= X; ++n) {
        i64 p = spf[n], m = n;
        int e = 0;
        while (m % p == 0) m /= p, ++e;
        a[n] = narrow((i128)a[m] * hecke_prime_power(T, {p, 0}, e));
    }
    return a;
}

Poly poly_trim(Poly a) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    if (a.empty()) a.push_back(0);
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = narrow((i128)c[i + j] + (i128)a[i] * b[j]);
    return poly_trim(c);
}

bool poly_equal(const Poly& a, const Poly& b) { return poly_trim(a) == poly_trim(b); }

std::string poly_str(const Poly& a) {
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0 && a.size() > 1) continue;
        std::string c = std::to_string(a[i]);
        if (!s.empty()) s += a[i] < 0 ? " - " : " + ", c = std::to_string(iabs(a[i]));
        s += c;
        if (i >= 1) s += "X";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

using RPoly = std::vector<Rat>;

static RPoly rtrim(RPoly a) {
    while (a.size() > 1 && a.back().is_zero()) a.pop_back();
    if (a.empty()) a.push_back(Rat(0));
    return a;
}

static void rdivmod(RPoly a, RPoly b, RPoly& q, RPoly& r) {
    a = rtrim(a);
    b = rtrim(b);
    if (a.size() < b.size()) {
        q = {Rat(0)};
        r = a;
        return;
    }
    size_t nb = b.size();
    q.assign(a.size() - nb + 1, Rat(0));
    for (size_t i = a.size() - nb + 1; i-- > 0;) {
        Rat c = a[i + nb - 1] / b.back();
        q[i] = c;
        for (size_t j = 0; j < nb; ++j) a[i + j] = a[i + j] - c * b[j];
    }
    a.resize(nb > 1 ? nb - 1 : 1);
    if (nb == 1) a[0] = Rat(0);
    r = rtrim(a);
}

static bool rzero(const RPoly& a) { return a.size() == 1 && a[0].is_zero(); }

static RatFn reduce(const Poly& num, const Poly& den) {
    RPoly a(num.begin(), num.end()), b(den.begin(), den.end());
    a = rtrim(a);
    b = rtrim(b);
    RPoly x = a, y = b, q, r;
    while (!rzero(y)) {
        rdivmod(x, y, q, r);
        x = y;
        y = r;
    }
    // normalize gcd to constant term 1
    Rat c0 = x[0];
    if (c0.is_zero()) throw std::logic_error("gcd with zero constant term");
    for (auto& c : x) c = c / c0;
    RPoly qa, ra, qb, rb;
    rdivmod(a, x, qa, ra);
    rdivmod(b, x, qb, rb);
    auto to_int = [](const RPoly& p) {
        Poly out;
        for (auto& c : p) {
            if (!c.is_int()) throw std::logic_error("non-integral reduced Euler factor");
            out.push_back(c.p);
        }
        return poly_trim(out);
    };
    RatFn f{to_int(qa), to_int(qb)};
    if (f.den[0] < 0) {
        for (auto& c : f.num) c = -c;
        for (auto& c : f.den) c = -c;
    }
    return f;
}

double max_inverse_root(const Poly& p0) {
    Poly p = poly_trim(p0);
    if (p.size() <= 1) return 0;
    double c0 = (double)p[0];
    if (p.size() == 2) return std::fabs(p[1] / c0);
    if (p.size() > 3) throw PreconditionFailed("degree above 2");
    // (1 - aX)(1 - bX): a + b = -c1, ab = c2
    double s = -p[1] / c0, t = p[2] / c0, disc = s * s - 4 * t;
    if (disc < 0) return std::sqrt(std::fabs(t));
    double r = std::sqrt(disc);
    return std::max(std::fabs((s + r) / 2), std::fabs((s - r) / 2));
}

static Poly local_den(i64 lam, i64 q, int ea) {
    if (ea == 0) return {1, -lam, q};
    if (ea == 1) return {1, -lam};
    return {1};
}

EulerFactors euler_factors(const EigenvalueTable& f, const EigenvalueTable& fchi, const QuadChar& chi,
                           const PKey& k) {
    EulerFactors E;
    E.key = k;
    E.q = f.qnorm.at(k);
    i64 q = E.q, lam = f.at(k), lamc = fchi.at(k);
    int ea = f.level_exp(k), eac = fchi.level_exp(k), ce = chi.cond_exp(k);
    E.D = {{1}, local_den(lam, q, ea)};
    E.Dchi = {{1}, local_den(lamc, q, eac)};
    if (ea == 0) {
        E.Sym2.den = poly_mul(poly_mul({1, -lam, q}, {1, 0, -q}), {1, lam, q});
    } else if (ea == 1) {
        E.Sym2.den = {1, 0, -1};
    }
    if (ea == 0) {
        E.psi_case = 1;
        E.Psi = reduce({1, 0, -q}, E.Sym2.den);
    } else if (std::min(ea, 2 * ce) >= 2) {
        E.psi_case = 3;
        E.Psi = E.Dchi;
    } else {
        E.psi_case = 2;
        E.Psi = E.Sym2;
    }
    E.Phi = reduce(E.Psi.den, poly_mul(poly_mul(E.D.den, E.Dchi.den), E.Psi.num));
    Poly lhs = poly_mul(poly_mul(E.Phi.num, E.Psi.num), poly_mul(E.D.den, E.Dchi.den));
    Poly rhs = poly_mul(poly_mul(E.Phi.den, E.Psi.den), poly_mul(E.D.num, E.Dchi.num));
    E.identity_ok = poly_equal(lhs, rhs);
    double sq = std::sqrt((double)q) * (1 + 1e-12);
    E.roots_ok = E.Phi.num.size() <= 3 && E.Phi.den.size() <= 3 && max_inverse_root(E.Phi.num) <= sq &&
                 max_inverse_root(E.Phi.den) <= sq;
    return E;
}

int epsilon_factor(const EigenvalueTable& f, const QuadChar& chi) {
    if (!f.level_squarefree()) throw LevelNotSquarefree("level has a square factor");
    if (f.eps == 0) throw PreconditionFailed("sign of the form is unknown");
    if (f.F->n() != chi.n) throw MixedFields("table and character over different fields");
    int e = chi.sign_minus1 * f.eps;
    for (auto& [k, ex] : f.level) {
        if (chi.cond_exp(k) > 0) {
            e *= (int)-f.at(k);
        } else {
            FPrime P = f.F->factor_prime(k.first).primes[k.second];
            e *= chi(P, k);
        }
    }
    return e;
}

EpsilonNumeric epsilon_numeric(const EigenvalueTable& T) {
    if (T.F->n() != 1) throw DegreeUnsupported("numeric sign over Q only");
    double N = (double)T.level_norm(), sN = std::sqrt(N);
    i64 M = (i64)std::ceil(10 * sN) + 10;
    if (M > T.pmax) throw InsufficientCoefficients("need primes up to " + std::to_string(M));
    auto a = hecke_coeffs_Q(T, M);
    const double pi = std::acos(-1.0);
    auto theta = [&](double t) {
        double s = 0;
        for (i64 n = 1; n <= M; ++n)
            if (a[n]) s += a[n] * std::exp(-2 * pi * n * t / sN);
        return s;
    };
    EpsilonNumeric r;
    double scale = 0;
    for (double t : {1.1, 1.25, 1.4}) {
        double lhs = theta(1 / t), rhs = t * t * theta(t);
        r.resid_plus += std::fabs(lhs - rhs);
        r.resid_minus += std::fabs(lhs + rhs);
        scale += std::fabs(lhs) + std::fabs(rhs);
    }
    r.resid_plus /= scale;
    r.resid_minus /= scale;
    r.eps = r.resid_plus <= r.resid_minus ? 1 : -1;
    r.ratio = std::min(r.resid_plus, r.resid_minus) / std::max(r.resid_plus, r.resid_minus);
    return r;
}

double expint_e1(double x) { return -std::expint(-x); }

LValue lvalue_numeric(const EigenvalueTable& T, int k, int eps) {
    if (T.F->n() != 1) throw DegreeUnsupported("L-values over Q only");
    if (k != 0 && k != 1) throw PreconditionFailed("derivative order must be 0 or 1");
    if (eps == 0) eps = T.eps;
    if (eps == 0) throw PreconditionFailed("sign unknown");
    double N = (double)T.level_norm(), sN = std::sqrt(N);
    const double pi = std::acos(-1.0), gamma = 0.57721566490153286;
    double A = sN / (2 * pi);
    LValue r;
    if (k == 0 && eps == -1) {
        r.exact_zero = true;
        return r;
    }
    i64 M = (i64)std::ceil(50 * sN);
    if (M > T.pmax) throw InsufficientCoefficients("need primes up to " + std::to_string(M));
    auto a = hecke_coeffs_Q(T, M);
    r.terms = M;
    double s = 0;
    bool use_e1 = k == 1 && eps == -1;
    for (i64 n = 1; n <= M; ++n) {
        if (!a[n]) continue;
        double x = n / A;
        s += (double)a[n] / n * (use_e1 ? expint_e1(x) : std::exp(-x));
    }
    double tail = 2 * std::exp(-M / A) / (1 - std::exp(-1 / A));
    if (use_e1) {
        r.value = 2 * s;
        r.tail = 2 * tail;
    } else {
        double L1 = 2 * s;
        r.tail = 2 * tail;
        r.value = k == 0 ? L1 : -(std::log(A) - gamma) * L1;
        if (k == 1) r.tail *= std::fabs(std::log(A) - gamma);
    }
    return r;
}

static double symsq_partial(const EigenvalueTable& T, i64 P) {
    double v = 1;
    for (auto& [k, q] : T.qnorm) {
        if (q > P) continue;
        int ea = T.level_exp(k);
        double iq = 1.0 / q;
        if (ea == 0) {
            double lam = (double)T.at(k);
            v /= ((1 + iq) * (1 + iq) - lam * lam * iq * iq) * (1 - iq);
        } else if (ea == 1) {
            v /= 1 - iq * iq;
        }
    }
    return v;
}

SymSq symsq_L1(const EigenvalueTable& T, i64 P) {
    if (P > T.pmax) throw OutOfTableRange("product beyond table range");
    SymSq r;
    r.P = P;
    r.value = symsq_partial(T, P);
    r.value_coarse = symsq_partial(T, std::max<i64>(P / 10, 1));
    r.drift = std::fabs(std::log(r.value) - std::log(r.value_coarse));
    return r;
}

}  // namespace relclass
