#include "relclass/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace relclass {

FIdeal PseudoForm::steinitz() const { return F->mul(I1, I2); }

std::string PseudoForm::str() const {
    std::string s = "[" + a.str() + "," + b.str() + "," + c.str() + "]";
    if (I1 != F->unit_ideal() || I2 != F->unit_ideal()) s += " on " + I1.str() + "+" + I2.str();
    return s;
}

PseudoForm make_form(const Field& F, const FElem& a, const FElem& b, const FElem& c) {
    return make_form(F, a, b, c, F.unit_ideal());
}

PseudoForm make_form(const Field& F, const FElem& a, const FElem& b, const FElem& c, const FIdeal& st) {
    if (a.f != F.core.get() || b.f != F.core.get() || c.f != F.core.get()) throw MixedFields("form coefficients");
    PseudoForm Q;
    Q.F = &F;
    Q.I1 = F.unit_ideal();
    Q.I2 = st;
    Q.a = a;
    Q.b = b;
    Q.c = c;
    return Q;
}

PseudoForm transform(const PseudoForm& Q, const FElem& t11, const FElem& t12, const FElem& t21,
                     const FElem& t22, const FIdeal& I1, const FIdeal& I2) {
    PseudoForm R = Q;
    R.a = Q.value(t11, t21);
    R.c = Q.value(t12, t22);
    R.b = Q.a * t11 * t12 * Rat(2) + Q.b * (t11 * t22 + t12 * t21) + Q.c * t21 * t22 * Rat(2);
    R.I1 = I1;
    R.I2 = I2;
    return R;
}

PseudoForm scale_form(const PseudoForm& Q, const FElem& u) {
    PseudoForm R = Q;
    R.a = Q.a * u;
    R.b = Q.b * u;
    R.c = Q.c * u;
    return R;
}

// rational primes that can carry a nonzero valuation of the listed data
static std::vector<i64> support(const std::vector<FElem>& xs, const std::vector<FIdeal>& Is) {
    std::set<i64> ps = {2};
    auto addn = [&](i64 v) {
        for (auto& [p, e] : factor(iabs(v))) ps.insert(p);
    };
    for (auto& x : xs) {
        if (x.is_zero()) continue;
        Rat N = x.norm();
        addn(N.p);
        addn(N.q);
        addn(x.denom());
    }
    for (auto& I : Is) {
        Rat N = I.norm();
        addn(N.p);
        addn(N.q);
        addn(I.L.den);
    }
    ps.erase(1);
    ps.erase(0);
    return {ps.begin(), ps.end()};
}

static std::vector<FPrime> support_primes(const Field& F, const std::vector<FElem>& xs,
                                          const std::vector<FIdeal>& Is) {
    std::vector<FPrime> out;
    for (i64 p : support(xs, Is))
        for (auto& P : F.factor_prime(p).primes) out.push_back(P);
    return out;
}

static FElem pi_pow(const Field& F, const FPrime& P, int k) {
    FElem r = F.one(), base = k >= 0 ? P.pi : P.pi.inv();
    for (int i = 0; i < std::abs(k); ++i) r = r * base;
    return r;
}

FIdeal disc_ideal(const PseudoForm& Q) {
    const Field& F = *Q.F;
    FElem d = Q.field_disc();
    if (d.is_zero()) throw DegenerateForm(Q.str());
    FIdeal out = F.unit_ideal();
    for (auto& P : support_primes(F, {Q.a, Q.b, Q.c, d}, {Q.I1, Q.I2})) {
        int v = 2 * (F.valuation(P, Q.I1) + F.valuation(P, Q.I2)) + F.valuation(P, d);
        if (v) out = F.mul(out, F.pow(P.P, v));
    }
    return out;
}

FIdeal norm_ideal(const PseudoForm& Q) {
    const Field& F = *Q.F;
    std::vector<FIdeal> parts;
    if (!Q.a.is_zero()) parts.push_back(F.mul(F.principal(Q.a), F.mul(Q.I1, Q.I1)));
    if (!Q.b.is_zero()) parts.push_back(F.mul(F.principal(Q.b), F.mul(Q.I1, Q.I2)));
    if (!Q.c.is_zero()) parts.push_back(F.mul(F.principal(Q.c), F.mul(Q.I2, Q.I2)));
    if (parts.empty()) throw DegenerateForm("zero form");
    FIdeal r = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) r = F.add(r, parts[i]);
    return r;
}

bool is_definite(const PseudoForm& Q) {
    FElem d = Q.field_disc();
    if (d.is_zero()) throw DegenerateForm(Q.str());
    for (int k = 0; k < Q.F->n(); ++k)
        if (d.sign(k) >= 0) return false;
    return true;
}

bool is_positive_definite(const PseudoForm& Q) {
    if (!is_definite(Q)) return false;
    for (int k = 0; k < Q.F->n(); ++k)
        if (Q.a.sign(k) <= 0) return false;
    return true;
}

bool qr_mod4(const Field& F, const FPrime& P, const FElem& d) {
    LocalRing R = F.local(P, 2 * P.e);
    FElem t = R.reduce(d);
    for (auto& u : R.reps())
        if (R.reduce(u * u) == t) return true;
    return false;
}

bool local_fundamental(const Field& F, const FPrime& P, const FElem& d) {
    int v = F.valuation(P, d);
    if (v < 0) throw PreconditionFailed("local_fundamental: not integral at the prime");
    if (P.p != 2) return v <= 1;
    if (!qr_mod4(F, P, d)) return false;
    if (v < 2) return true;
    return !qr_mod4(F, P, d * pi_pow(F, P, -2));
}

// d_Q / n_Q^2 at P as an element of F
static FElem local_normalized_disc(const PseudoForm& Q, const FIdeal& n, const FPrime& P) {
    const Field& F = *Q.F;
    int k = F.valuation(P, Q.I1) + F.valuation(P, Q.I2) - F.valuation(P, n);
    FElem x = pi_pow(F, P, k);
    return Q.field_disc() * x * x;
}

bool fundamental_by_definition(const PseudoForm& Q) {
    const Field& F = *Q.F;
    FElem d = Q.field_disc();
    if (d.is_zero()) throw DegenerateForm(Q.str());
    FIdeal n = norm_ideal(Q);
    for (auto& P : support_primes(F, {Q.a, Q.b, Q.c, d}, {Q.I1, Q.I2, n}))
        if (!local_fundamental(F, P, local_normalized_disc(Q, n, P))) return false;
    return true;
}

bool fundamental_by_discriminant(const PseudoForm& Q) {
    const Field& F = *Q.F;
    FElem d = Q.field_disc();
    if (d.is_zero()) throw DegenerateForm(Q.str());
    FIdeal n = norm_ideal(Q), dq = disc_ideal(Q);
    for (auto& P : support_primes(F, {Q.a, Q.b, Q.c, d}, {Q.I1, Q.I2, n})) {
        int lhs = F.valuation(P, dq) - 2 * F.valuation(P, n);
        FElem D = local_normalized_disc(Q, n, P);
        // split at P: the extension is trivial locally
        int rhs;
        if (F.valuation(P, D) % 2 == 0 && F.is_local_square(P, D * pi_pow(F, P, -F.valuation(P, D))))
            rhs = 0;
        else
            rhs = local_disc_exponent(F, P, D);
        if (lhs != rhs) return false;
    }
    return true;
}

bool is_fundamental(const PseudoForm& Q) {
    bool a = fundamental_by_definition(Q);
    bool b = fundamental_by_discriminant(Q);
    if (a != b) throw std::logic_error("fundamentality tests disagree on " + Q.str());
    return a;
}

IdealForm ideal_to_form(const CMField& K, const RelIdeal& A) {
    const Field& F = K.F;
    PseudoBasis pb = K.steinitz_basis(A);
    KElem al = pb.alpha, be = pb.beta;
    FIdeal st = pb.b;
    if (auto g = F.generator(st)) {
        be = K.scale(be, *g);
        st = F.unit_ideal();
    }
    IdealForm out;
    out.alpha = al;
    out.beta = be;
    out.raw = make_form(F, K.rel_norm(al), K.rel_trace(K.mul(K.conj(al), be)), K.rel_norm(be), st);
    const PseudoForm& Q = out.raw;
    if (!is_positive_definite(Q)) throw std::logic_error("norm form not positive definite");
    if (!F.is_square(Q.field_disc() / K.delta)) throw std::logic_error("norm form field differs from K");
    FIdeal NA = K.rel_norm(A);
    if (norm_ideal(Q) != NA) throw std::logic_error("norm ideal differs from N(A)");
    if (disc_ideal(Q) != F.mul(K.rel_disc, F.mul(NA, NA))) throw std::logic_error("disc ideal differs from d N(A)^2");
    if (!is_fundamental(Q)) throw std::logic_error("norm form not fundamental");
    if (auto g = F.generator(NA)) {
        out.normalized_ok = true;
        out.gamma = *g;
        out.normalized = scale_form(Q, g->inv());
    }
    return out;
}

FormIdeal form_to_ideal(const CMField& K, const PseudoForm& Q) {
    const Field& F = K.F;
    if (!is_definite(Q)) throw PreconditionFailed("form not definite");
    if (!is_fundamental(Q)) throw NotFundamental(Q.str());
    FElem r;
    if (!F.is_square(Q.field_disc() / K.delta, &r)) throw PreconditionFailed("form does not belong to K");
    if (r.sign(0) < 0) r = -r;
    FormIdeal out;
    out.img_alpha = K.from_F(Q.a * Rat(-2));
    out.img_beta = KElem{-Q.b, r};
    out.scale = Q.a * Rat(4);
    RMat g;
    for (auto& x : Q.I1.basis()) g.push_back(K.coords(K.scale(out.img_alpha, x)));
    for (auto& y : Q.I2.basis()) g.push_back(K.coords(K.scale(out.img_beta, y)));
    Lat L = Lat::from_gens(g, K.dim());
    for (auto& o : K.zbasis(K.OK))
        for (auto& v : K.zbasis(L))
            if (!L.contains(K.coords(K.mul(o, v)))) throw std::logic_error("form_to_ideal: lattice not an ideal");
    out.A = K.make_ideal(L);
    auto chk = [&](const FElem& x, const FElem& y) {
        KElem z = K.add(K.scale(out.img_alpha, x), K.scale(out.img_beta, y));
        if (K.rel_norm(z) != out.scale * Q.value(x, y)) throw std::logic_error("form_to_ideal: scale identity fails");
    };
    chk(F.one(), F.elem(0));
    chk(F.elem(0), F.one());
    chk(F.one(), F.one());
    return out;
}

bool weakly_equivalent(const CMField& K, const PseudoForm& Q1, const PseudoForm& Q2) {
    int c1 = K.class_index(form_to_ideal(K, Q1).A);
    int c2 = K.class_index(form_to_ideal(K, Q2).A);
    return c1 == c2 || c1 == K.conj_of[c2];
}

static std::vector<FElem> unit_reps(const Field& F) {
    std::vector<FElem> u = {F.one(), -F.one()};
    if (F.n() == 2) {
        u.push_back(F.eps);
        u.push_back(-F.eps);
    }
    return u;
}

Classification classify(const CMField& K) {
    if (!K.have_classes) throw std::logic_error("class group not computed");
    const Field& F = K.F;
    Classification C;
    C.hK = K.hK;
    for (int i = 0; i < K.hK; ++i) {
        if (K.conj_of[i] < i) continue;
        IdealForm f = ideal_to_form(K, K.classes[i]);
        int back = K.class_index(form_to_ideal(K, f.raw).A);
        if (back != i && back != K.conj_of[i]) throw std::logic_error("form/ideal round trip left the orbit");
        C.class_of_weak.push_back(i);
        C.weak.push_back(f);
    }
    auto U = unit_reps(F);
    for (int w = 0; w < (int)C.weak.size(); ++w) {
        const IdealForm& f = C.weak[w];
        if (!f.normalized_ok) continue;
        int i = C.class_of_weak[w];
        std::vector<FElem> stab = {F.one()};
        if (K.conj_of[i] == i) {
            const RelIdeal& N = K.classes[i];
            auto kap = K.generator(K.mul(K.conj(N), K.inverse(N)));
            if (!kap) throw std::logic_error("ambiguous class without generator");
            FElem u0 = K.rel_norm(*kap);
            if (!F.is_square(u0)) stab.push_back(u0);
        }
        std::vector<FElem> kept;
        for (auto& u : U) {
            bool dup = false;
            for (auto& k : kept)
                for (auto& s : stab)
                    if (F.is_square(u / (k * s))) dup = true;
            if (dup) continue;
            kept.push_back(u);
            C.strong.push_back(StrongClass{w, u, scale_form(f.normalized, u)});
        }
    }
    return C;
}

std::string Place::label() const {
    if (real) return "inf" + std::to_string(emb);
    return P.P.str();
}

std::vector<Place> genus_places(const CMField& K) {
    std::vector<Place> out;
    for (int k = 0; k < K.n(); ++k) {
        Place v;
        v.real = true;
        v.emb = k;
        out.push_back(v);
    }
    for (auto& [P, e] : K.F.factor_ideal(K.rel_disc)) {
        Place v;
        v.real = false;
        v.P = P;
        out.push_back(v);
    }
    return out;
}

static int residue_legendre(const Field& F, const FPrime& P, const FElem& u) {
    LocalRing R = F.local(P, 1);
    FElem base = R.reduce(u), r = F.one();
    i64 e = (P.norm() - 1) / 2;
    while (e > 0) {
        if (e & 1) r = R.reduce(r * base);
        base = R.reduce(base * base);
        e >>= 1;
    }
    if (r == R.reduce(F.one())) return 1;
    if (r == R.reduce(-F.one())) return -1;
    throw std::logic_error("Euler criterion gave neither 1 nor -1");
}

// z^2 = s x^2 + d y^2 solvable over the completion at a dyadic P, with
// v(s) in {0,1} and v(d) = 0
static bool dyadic_soluble(const Field& F, const FPrime& P, const FElem& s, const FElem& d) {
    LocalRing R = F.local(P, 2 * P.e + 1);
    std::vector<FElem> sq;
    for (auto& x : R.reps()) {
        FElem t = R.reduce(x * x);
        if (std::find(sq.begin(), sq.end(), t) == sq.end()) sq.push_back(t);
    }
    FElem one = R.reduce(F.one());
    FElem sr = R.reduce(s), dr = R.reduce(d);
    auto is_sq = [&](const FElem& t) { return std::find(sq.begin(), sq.end(), t) != sq.end(); };
    // z a unit, scaled to 1: s X + d Y = 1 with X, Y squares
    for (auto& X : sq)
        for (auto& Y : sq)
            if (R.reduce(sr * X + dr * Y) == one) return true;
    // y a unit: Z - s X = d
    for (auto& X : sq)
        for (auto& Z : sq)
            if (R.reduce(Z - sr * X) == dr) return true;
    // x a unit; impossible with z, y in P when v(s) = 1
    if (F.valuation(P, s) == 0)
        for (auto& Y : sq)
            for (auto& Z : sq)
                if (R.reduce(Z - dr * Y) == sr) return true;
    return false;
}

int hilbert_symbol(const Field& F, const FElem& s0, const FElem& d0, const Place& v) {
    if (s0.is_zero() || d0.is_zero()) throw PreconditionFailed("hilbert symbol of zero");
    if (v.real) return (s0.sign(v.emb) < 0 && d0.sign(v.emb) < 0) ? -1 : 1;
    const FPrime& P = v.P;
    int al = F.valuation(P, s0), be = F.valuation(P, d0);
    if (P.p != 2) {
        FElem u = s0 * pi_pow(F, P, -al), w = d0 * pi_pow(F, P, -be);
        i64 q = P.norm();
        int r = ((i64)al * be % 2 != 0 && ((q - 1) / 2) % 2 != 0) ? -1 : 1;
        if (be % 2) r *= residue_legendre(F, P, u);
        if (al % 2) r *= residue_legendre(F, P, w);
        return r;
    }
    FElem s = s0 * pi_pow(F, P, -2 * (int)std::floor(al / 2.0));
    FElem d = d0 * pi_pow(F, P, -2 * (int)std::floor(be / 2.0));
    int vs = F.valuation(P, s), vd = F.valuation(P, d);
    if (vs == 1 && vd == 1) {
        d = -(s * d) * pi_pow(F, P, -2);
        vd = 0;
    }
    if (vd == 1) std::swap(s, d);
    return dyadic_soluble(F, P, s, d) ? 1 : -1;
}

int hilbert_product(const Field& F, const FElem& s, const FElem& d) {
    int r = 1;
    Place v;
    for (int k = 0; k < F.n(); ++k) {
        v.real = true;
        v.emb = k;
        r *= hilbert_symbol(F, s, d, v);
    }
    v.real = false;
    for (auto& P : support_primes(F, {s, d}, {}))
        if (P.p == 2 || F.valuation(P, s) != 0 || F.valuation(P, d) != 0) {
            v.P = P;
            r *= hilbert_symbol(F, s, d, v);
        }
    return r;
}

int genus_char(const PseudoForm& Q, const Place& v, const FElem& s) {
    if (s.is_zero()) throw PreconditionFailed("genus character needs a nonzero value");
    return hilbert_symbol(*Q.F, s, Q.field_disc(), v);
}

int genus_char(const PseudoForm& Q, const Place& v) {
    if (!Q.a.is_zero()) return genus_char(Q, v, Q.a);
    if (!Q.c.is_zero()) return genus_char(Q, v, Q.c);
    throw NoRepresentedValueFound(Q.str());
}

std::vector<int> genus_vector(const CMField& K, const PseudoForm& Q) {
    std::vector<int> out;
    for (auto& v : genus_places(K)) out.push_back(genus_char(Q, v));
    return out;
}

bool representable_criterion(const CMField& K, const FElem& s) {
    if (s.is_zero()) throw PreconditionFailed("s = 0");
    for (auto& [P, k] : K.F.factor_ideal(K.F.principal(s)))
        if (k % 2 != 0 && K.split(P).kind == 'i') return false;
    return true;
}

Representation represent_search(const CMField& K, const FElem& s) {
    const Field& F = K.F;
    if (!s.is_integral()) throw NotIntegral(s.str());
    if (!representable_criterion(K, s)) throw CriterionFails(s.str());
    RelIdeal B = K.unit_ideal();
    for (auto& [P, k] : F.factor_ideal(F.principal(s))) {
        KSplit sp = K.split(P);
        if (sp.kind == 'i')
            B = K.mul(B, K.pow(K.extend(P.P), k / 2));
        else
            B = K.mul(B, K.pow(sp.primes[0].P, k));
    }
    if (K.rel_norm(B) != F.principal(s)) throw std::logic_error("norm of B is not (s)");
    for (auto& R : K.classes) {
        auto z = K.generator(K.mul(R, B));
        if (!z) continue;
        Representation rep;
        rep.form = ideal_to_form(K, R);
        rep.form.gamma = K.rel_norm(*z) / s;
        rep.form.normalized_ok = true;
        rep.form.normalized = scale_form(rep.form.raw, rep.form.gamma.inv());
        rep.z = *z;
        const KElem& al = rep.form.alpha;
        const KElem& be = rep.form.beta;
        FElem det = al.x * be.y - be.x * al.y;
        rep.x = (z->x * be.y - be.x * z->y) / det;
        rep.y = (al.x * z->y - z->x * al.y) / det;
        const PseudoForm& Q = rep.form.normalized;
        if (!Q.I1.contains(rep.x) || !Q.I2.contains(rep.y)) throw std::logic_error("witness outside the module");
        if (Q.value(rep.x, rep.y) != s) throw std::logic_error("witness value mismatch");
        return rep;
    }
    throw SearchBudgetExceeded("no class representative makes A*B principal");
}

Representation prescribe_genus(const CMField& K, const std::vector<int>& signs, long long budget) {
    const Field& F = K.F;
    auto places = genus_places(K);
    if (signs.size() != places.size()) throw PreconditionFailed("sign vector length");
    int prod = 1;
    for (int s : signs) {
        if (s != 1 && s != -1) throw PreconditionFailed("signs must be +-1");
        prod *= s;
    }
    if (prod != 1) throw PreconditionFailed("product of prescribed signs must be 1");
    long long tried = 0;
    auto attempt = [&](const FElem& e0) -> std::optional<Representation> {
        ++tried;
        for (int k = 0; k < F.n(); ++k)
            if (e0.sign(k) != signs[k]) return std::nullopt;
        for (size_t i = F.n(); i < places.size(); ++i)
            if (hilbert_symbol(F, e0, K.delta, places[i]) != signs[i]) return std::nullopt;
        if (!representable_criterion(K, e0)) return std::nullopt;
        Representation rep = represent_search(K, e0);
        if (genus_vector(K, rep.form.normalized) != signs) throw std::logic_error("prescribed genus not attained");
        return rep;
    };
    if (F.n() == 1) {
        for (i64 q = 2; tried < budget; ++q) {
            if (!is_prime(q)) continue;
            if (auto r = attempt(F.elem(signs[0] * q))) return *r;
        }
    } else {
        for (i64 R = 1; tried < budget; ++R)
            for (i64 a = -R; a <= R; ++a)
                for (i64 b = -R; b <= R; ++b) {
                    if (std::max(iabs(a), iabs(b)) != R) continue;
                    FElem x = F.elem(a, b);
                    Rat N = x.norm();
                    if (!N.is_int() || !is_prime(iabs(N.p))) continue;
                    if (auto r = attempt(x)) return *r;
                }
    }
    throw SearchBudgetExceeded("prescribe_genus");
}

GenusBound lower_bound_t(const CMField& K) {
    GenusBound g;
    g.t = (int)K.F.factor_ideal(K.rel_disc).size();
    g.bound = Rat(ipow(2, g.t + K.n() - 1), K.F.unit_sq_index);
    g.hK = K.hK;
    g.ok = g.bound <= Rat(K.hK);
    return g;
}

FIdeal value_ideal(const PseudoForm& Q, const FIdeal& coeff, const FElem& x, const FElem& y) {
    const Field& F = *Q.F;
    return F.mul(F.mul(coeff, coeff), F.principal(Q.value(x, y)));
}

Line saturate(const PseudoForm& Q, const FElem& x, const FElem& y) {
    const Field& F = *Q.F;
    if (x.is_zero() && y.is_zero()) throw PreconditionFailed("zero direction");
    std::optional<FIdeal> c;
    if (!x.is_zero()) c = F.mul(Q.I1, F.principal(x.inv()));
    if (!y.is_zero()) {
        FIdeal cy = F.mul(Q.I2, F.principal(y.inv()));
        c = c ? FIdeal{lat_intersect(c->L, cy.L), F.core.get()} : cy;
    }
    Line l;
    l.x = x;
    l.y = y;
    if (auto g = F.generator(*c)) {
        l.x = x * *g;
        l.y = y * *g;
        c = F.unit_ideal();
    }
    l.coeff = *c;
    l.value = value_ideal(Q, *c, x, y);
    l.value_norm = l.value.norm();
    return l;
}

std::vector<Line> lines_below(const PseudoForm& Q, long long budget) {
    const Field& F = *Q.F;
    if (!is_definite(Q)) throw PreconditionFailed("lines_below wants a definite form");
    int n = F.n();
    Rat dnorm = disc_ideal(Q).norm();
    Rat four_n = Rat(ipow(4, n));
    double T = std::sqrt(dnorm.to_double()) / std::pow(2.0, n);
    int sg = Q.a.sign(0) > 0 ? 1 : -1;
    std::vector<std::pair<FElem, FElem>> basis;
    for (auto& x : Q.I1.basis()) basis.push_back({x, F.elem(0)});
    for (auto& y : Q.I2.basis()) basis.push_back({F.elem(0), y});
    int d = (int)basis.size();
    auto tr = [&](const FElem& x, const FElem& y) { return (Q.value(x, y) * Rat(sg)).trace(); };
    RMat gram(d, RVec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Rat tij = tr(basis[i].first + basis[j].first, basis[i].second + basis[j].second);
            gram[i][j] = (tij - tr(basis[i].first, basis[i].second) - tr(basis[j].first, basis[j].second)) * Rat(1, 2);
        }
    double bound;
    if (n == 1) {
        bound = T;
    } else {
        double MF = std::sqrt((double)F.dF) / 2;
        double e1 = F.eps.embed(0);
        bound = std::sqrt(MF * MF * T) * (e1 + 1 / e1);
    }
    Rat B((i64)std::ceil(bound * (1 + 1e-9)) + 1);
    std::map<std::pair<int, FElem>, Line> found;
    enumerate_short(gram, B, [&](const IVec& z) {
        FElem x = F.elem(0), y = F.elem(0);
        for (int i = 0; i < d; ++i) {
            x = x + basis[i].first * Rat(z[i]);
            y = y + basis[i].second * Rat(z[i]);
        }
        std::pair<int, FElem> key = x.is_zero() ? std::make_pair(1, F.elem(0)) : std::make_pair(0, y / x);
        if (found.count(key)) return true;
        Line l = saturate(Q, x, y);
        if (l.value_norm * l.value_norm * four_n < dnorm) found.emplace(key, l);
        return true;
    }, budget);
    std::vector<Line> out;
    for (auto& [k, l] : found) out.push_back(l);
    return out;
}

std::optional<Line> minimal_line(const PseudoForm& Q) {
    auto ls = lines_below(Q);
    if (ls.size() > 1) throw LemmaViolation("two saturated lines below the threshold for " + Q.str());
    if (ls.empty()) return std::nullopt;
    return ls[0];
}

}  // namespace relclass
