#include "relclass/cm_ext.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace relclass {

KElem CMField::mul(const KElem& a, const KElem& b) const {
    return KElem{a.x * b.x + delta * a.y * b.y, a.x * b.y + a.y * b.x};
}

KElem CMField::inv(const KElem& a) const {
    FElem nr = rel_norm(a).inv();
    return KElem{a.x * nr, -(a.y * nr)};
}

RVec CMField::coords(const KElem& a) const {
    if (n() == 1) return {a.x.a, a.y.a};
    return {a.x.a, a.x.b, a.y.a, a.y.b};
}

KElem CMField::from_coords(const RVec& v) const {
    if (n() == 1) return KElem{F.elem(v[0]), F.elem(v[1])};
    return KElem{F.elem(v[0], v[1]), F.elem(v[2], v[3])};
}

bool CMField::is_integral(const KElem& a) const { return OK.contains(coords(a)); }

std::string CMField::elem_str(const KElem& a) const {
    return a.x.str() + "+" + a.y.str() + "*sqrt(" + delta.str() + ")";
}

RelIdeal CMField::make_ideal(const Lat& L) const { return RelIdeal{L, L.covolume() / OK_covol}; }

std::vector<KElem> CMField::zbasis(const Lat& L) const {
    std::vector<KElem> out;
    for (int i = 0; i < L.d; ++i) out.push_back(from_coords(L.row(i)));
    return out;
}
std::vector<KElem> CMField::zbasis(const RelIdeal& a) const { return zbasis(a.L); }

RelIdeal CMField::ideal_from(const std::vector<KElem>& gens) const {
    RMat g;
    auto ob = zbasis(OK);
    for (auto& x : gens)
        for (auto& o : ob) g.push_back(coords(mul(x, o)));
    return make_ideal(Lat::from_gens(g, dim()));
}

RelIdeal CMField::principal(const KElem& g) const {
    if (g.is_zero()) throw std::domain_error("zero ideal");
    return ideal_from({g});
}

RelIdeal CMField::extend(const FIdeal& a) const {
    std::vector<KElem> gens;
    for (auto& x : a.basis()) gens.push_back(from_F(x));
    return ideal_from(gens);
}

RelIdeal CMField::mul(const RelIdeal& a, const RelIdeal& b) const {
    RMat g;
    auto ba = zbasis(a), bb = zbasis(b);
    for (auto& x : ba)
        for (auto& y : bb) g.push_back(coords(mul(x, y)));
    return make_ideal(Lat::from_gens(g, dim()));
}

RelIdeal CMField::add(const RelIdeal& a, const RelIdeal& b) const { return make_ideal(lat_sum(a.L, b.L)); }

RelIdeal CMField::conj(const RelIdeal& a) const {
    RMat g;
    for (auto& x : zbasis(a)) g.push_back(coords(conj(x)));
    return make_ideal(Lat::from_gens(g, dim()));
}

RelIdeal CMField::scale(const RelIdeal& a, const KElem& c) const {
    RMat g;
    for (auto& x : zbasis(a)) g.push_back(coords(mul(x, c)));
    return make_ideal(Lat::from_gens(g, dim()));
}

RelIdeal CMField::inverse(const RelIdeal& a) const {
    // x in a^{-1} iff x*a_i in o_K for each basis a_i: dual of the span of
    // the columns of M(a_i) B^{-1}
    int d = dim();
    RMat Binv = rmat_inverse(OK.basis());
    auto eb = zbasis(Lat::identity(d));
    RMat cols;
    for (auto& ai : zbasis(a)) {
        RMat M;
        for (auto& e : eb) M.push_back(coords(mul(e, ai)));
        RMat C = rmat_mul(M, Binv);
        for (int j = 0; j < d; ++j) {
            RVec col(d);
            for (int i = 0; i < d; ++i) col[i] = C[i][j];
            cols.push_back(col);
        }
    }
    return make_ideal(lat_dual(Lat::from_gens(cols, d)));
}

RelIdeal CMField::pow(const RelIdeal& a, int k) const {
    if (k < 0) return pow(inverse(a), -k);
    RelIdeal r = unit_ideal();
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

FIdeal CMField::intersect_F(const RelIdeal& a) const {
    RMat g;
    for (int i = 0; i < n(); ++i) {
        RVec r = a.L.row(i);
        g.push_back(RVec(r.begin(), r.begin() + n()));
    }
    return FIdeal{Lat::from_gens(g, n()), F.core.get()};
}

FIdeal CMField::rel_norm(const RelIdeal& a) const { return intersect_F(mul(a, conj(a))); }

PseudoBasis CMField::pseudo_basis(const Lat& M, const KElem& alpha) const {
    int nn = n();
    bool use_sqrt = !alpha.x.is_zero();
    KElem beta0 = use_sqrt ? sqrt_delta() : from_F(F.one());
    if (!use_sqrt && alpha.y.is_zero()) throw std::domain_error("alpha is zero");
    auto to_ce = [&](const KElem& z) {
        FElem c, e;
        if (use_sqrt) {
            c = z.x / alpha.x;
            e = z.y - c * alpha.y;
        } else {
            c = z.y / alpha.y;
            e = z.x - c * alpha.x;
        }
        RVec v = c.coords();
        for (auto& t : e.coords()) v.push_back(t);
        return v;
    };
    RMat g;
    for (auto& z : zbasis(M)) g.push_back(to_ce(z));
    Lat T = Lat::from_gens(g, 2 * nn);
    auto fe = [&](const RVec& r, int off) { return F.elem(r[off], nn == 2 ? r[off + 1] : Rat(0)); };
    RMat cg, bg;
    std::vector<FElem> bj, uj;
    for (int i = 0; i < nn; ++i) {
        RVec r = T.row(i);
        cg.push_back(RVec(r.begin(), r.begin() + nn));
    }
    for (int i = nn; i < 2 * nn; ++i) {
        RVec r = T.row(i);
        bj.push_back(fe(r, nn));
        uj.push_back(fe(r, 0));
        bg.push_back(RVec(r.begin() + nn, r.end()));
    }
    FIdeal C{Lat::from_gens(cg, nn), F.core.get()};
    FIdeal B{Lat::from_gens(bg, nn), F.core.get()};
    // x0 with b_j x0 - u_j in C for all j
    int best = 0;
    for (int j = 1; j < nn; ++j)
        if (rabs(bj[j].norm()) < rabs(bj[best].norm())) best = j;
    FElem bs = bj[best], us = uj[best];
    FIdeal big = F.scale(C, Rat(1));
    big = F.mul(C, F.principal(bs.inv()));
    FIdeal small = F.mul(C, F.inverse(B));
    FElem shift = us / bs;
    std::optional<FElem> x0;
    for (auto& r : coset_reps(big.L, small.L, 100000)) {
        FElem cand = shift + fe(r, 0);
        bool ok = true;
        for (int j = 0; j < nn && ok; ++j) ok = C.contains(bj[j] * cand - uj[j]);
        if (ok) {
            x0 = cand;
            break;
        }
    }
    if (!x0) throw std::logic_error("pseudo-basis section not found");
    PseudoBasis pb;
    pb.c = C;
    pb.alpha = alpha;
    pb.b = B;
    pb.beta = add(beta0, scale(alpha, *x0));
    return pb;
}

// beta += t*alpha with t in b^{-1}, t close to -Tr(conj(alpha) beta) / 2N(alpha)
void CMField::reduce_pair(PseudoBasis& pb) const {
    pb.alpha = canonical_associate(pb.alpha);
    pb.beta = canonical_associate(pb.beta);
    auto bi = F.inverse(pb.b).basis();
    for (int it = 0; it < 16; ++it) {
        const KElem& a = pb.alpha;
        const KElem& b = pb.beta;
        FElem t0 = -(a.x * b.x - delta * a.y * b.y) / rel_norm(a);
        std::vector<i64> u(n());
        if (n() == 1) {
            u[0] = (i64)std::llround((t0 / bi[0]).a.to_double());
        } else {
            double m00 = bi[0].embed(0), m01 = bi[1].embed(0), m10 = bi[0].embed(1), m11 = bi[1].embed(1);
            double r0 = t0.embed(0), r1 = t0.embed(1), det = m00 * m11 - m01 * m10;
            u[0] = (i64)std::llround((r0 * m11 - r1 * m01) / det);
            u[1] = (i64)std::llround((m00 * r1 - m10 * r0) / det);
        }
        FElem t = F.elem(0);
        for (int i = 0; i < n(); ++i) t = t + bi[i] * Rat(u[i]);
        if (t.is_zero()) break;
        KElem nb = canonical_associate(add(b, scale(a, t)));
        if (!(t2(nb) < t2(b))) break;
        pb.beta = nb;
    }
}

PseudoBasis CMField::steinitz_basis(const RelIdeal& M) const {
    auto try_alpha = [&](const KElem& a, PseudoBasis& out) {
        PseudoBasis pb = pseudo_basis(M.L, a);
        auto g = F.generator(pb.c);
        if (!g) return false;
        pb.alpha = scale(a, *g);
        pb.c = F.unit_ideal();
        reduce_pair(pb);
        out = pb;
        return true;
    };
    PseudoBasis pb;
    if (try_alpha(from_F(F.one()), pb)) return pb;
    auto zb = zbasis(M);
    RMat gram(dim(), RVec(dim()));
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) gram[i][j] = (zb[i].x * zb[j].x - delta * zb[i].y * zb[j].y).trace();
    Rat bound = M.abs_norm * Rat(64);
    bool done = false;
    enumerate_short(gram, bound, [&](const IVec& z) {
        KElem a{F.elem(0), F.elem(0)};
        for (int i = 0; i < dim(); ++i) a = add(a, scale(zb[i], F.elem(z[i])));
        if (a.x.is_zero() && a.y.is_zero()) return true;
        if (try_alpha(a, pb)) {
            done = true;
            return false;
        }
        return true;
    }, budget);
    if (!done) throw SearchBudgetExceeded("steinitz basis");
    return pb;
}

KSplit CMField::split(const FPrime& P) const {
    KSplit ks;
    // eta = b*beta with v_P(b) = v_P(bideal) generates o_K locally
    const PseudoBasis& rb = rel_basis;
    FElem b;
    int vb = 1 << 30;
    for (auto& x : rb.b.basis()) {
        int v = F.valuation(P, x);
        if (v < vb) vb = v, b = x;
    }
    KElem eta = scale(rb.beta, b);
    FElem tr = rel_trace(eta), nr = rel_norm(eta);
    LocalRing R = F.local(P, 1);
    std::vector<FElem> roots;
    for (auto& r : R.reps()) {
        FElem v = r * r - tr * r + nr;
        if (F.valuation(P, v) >= 1) roots.push_back(r);
    }
    RelIdeal Pe = extend(P.P);
    auto mk = [&](const RelIdeal& I, int e, int f) {
        KPrime kp;
        kp.below = P;
        kp.e = e;
        kp.f = f;
        kp.P = I;
        kp.norm = ipow(P.norm(), f);
        return kp;
    };
    if (roots.empty()) {
        ks.kind = 'i';
        ks.primes.push_back(mk(Pe, 1, 2));
    } else if (roots.size() == 1) {
        ks.kind = 'r';
        ks.primes.push_back(mk(add(Pe, principal(sub(eta, from_F(roots[0])))), 2, 1));
    } else {
        ks.kind = 's';
        for (auto& r : roots) ks.primes.push_back(mk(add(Pe, principal(sub(eta, from_F(r)))), 1, 1));
    }
    for (auto& kp : ks.primes)
        if (kp.P.abs_norm != Rat(kp.norm)) throw std::logic_error("prime above has wrong norm");
    return ks;
}

std::vector<RelIdeal> CMField::ideals_upto(i64 bound) const {
    std::vector<KPrime> ps;
    for (i64 p : primes_upto(bound))
        for (auto& P : F.factor_prime(p).primes) {
            if (P.norm() > bound) continue;
            for (auto& kp : split(P).primes)
                if (kp.norm <= bound) ps.push_back(kp);
        }
    std::vector<RelIdeal> out;
    std::function<void(size_t, i64, const RelIdeal&)> rec = [&](size_t i, i64 nrm, const RelIdeal& I) {
        if (i == ps.size()) {
            out.push_back(I);
            return;
        }
        rec(i + 1, nrm, I);
        RelIdeal J = I;
        i64 m = nrm;
        while ((i128)m * ps[i].norm <= bound) {
            m *= ps[i].norm;
            J = mul(J, ps[i].P);
            rec(i + 1, m, J);
        }
    };
    rec(0, 1, unit_ideal());
    std::sort(out.begin(), out.end());
    return out;
}

double CMField::minkowski_bound() const {
    int nn = n(), d = 2 * nn;
    double fact = 1;
    for (int i = 2; i <= d; ++i) fact *= i;
    return std::pow(4.0 / M_PI, nn) * fact / std::pow((double)d, d) * std::sqrt((double)abs_disc);
}

std::optional<KElem> CMField::generator(const RelIdeal& a) const {
    auto zb = zbasis(a);
    int d = dim();
    RMat gram(d, RVec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) gram[i][j] = (zb[i].x * zb[j].x - delta * zb[i].y * zb[j].y).trace();
    Rat N = a.abs_norm;
    Rat bound = N;
    if (n() == 2) {
        double e1 = F.eps.embed(0);
        bound = Rat((i64)std::ceil(std::sqrt(N.to_double()) * (e1 + 1.0 / e1) * (1 + 1e-9)) + 1);
    }
    std::optional<KElem> found;
    enumerate_short(gram, bound, [&](const IVec& z) {
        KElem g{F.elem(0), F.elem(0)};
        for (int i = 0; i < d; ++i)
            if (z[i]) g = add(g, scale(zb[i], F.elem(z[i])));
        if (abs_norm(g) == N) {
            found = g;
            return false;
        }
        return true;
    }, budget);
    if (!found) return std::nullopt;
    return canonical_associate(*found);
}

KElem CMField::canonical_associate(const KElem& g) const {
    KElem x = g;
    if (n() == 2) {
        KElem e = from_F(F.eps), ei = from_F(F.eps.inv());
        while (true) {
            KElem up = mul(x, e), dn = mul(x, ei);
            if (t2(up) < t2(x)) x = up;
            else if (t2(dn) < t2(x)) x = dn;
            else break;
        }
    }
    std::vector<KElem> cands;
    if (n() == 2) {
        KElem e = from_F(F.eps), u = mul(x, from_F(F.eps.inv()));
        for (int k = -1; k <= 1; ++k) {
            cands.push_back(u);
            u = mul(u, e);
        }
    } else {
        cands.push_back(x);
    }
    size_t m = cands.size();
    for (size_t i = 0; i < m; ++i) cands.push_back(KElem{-cands[i].x, -cands[i].y});
    auto less = [&](const KElem& a, const KElem& b) {
        Rat ta = t2(a), tb = t2(b);
        if (ta != tb) return ta < tb;
        return coords(a) < coords(b);
    };
    return *std::min_element(cands.begin(), cands.end(), less);
}

static i64 to_int(const Rat& r) {
    if (!r.is_int()) throw std::logic_error("expected integer");
    return r.p;
}

std::array<i64, 3> reduced_form_key(const CMField& K, const RelIdeal& A) {
    auto zb = K.zbasis(A);
    KElem b1 = zb[0], b2 = zb[1];
    Rat det = b1.x.a * b2.y.a - b2.x.a * b1.y.a;
    if (det.sign() < 0) b2 = KElem{-b2.x, -b2.y};
    Rat N = A.abs_norm;
    i64 a = to_int(K.abs_norm(b1) / N);
    i64 c = to_int(K.abs_norm(b2) / N);
    i64 b = to_int(K.rel_norm(K.add(b1, b2)).a / N) - a - c;
    i64 D = b * b - 4 * a * c;
    while (true) {
        if (b > a || b <= -a) {
            i64 k = floordiv(a - b, 2 * a);
            b = b + 2 * a * k;
            c = (b * b - D) / (4 * a);
        }
        if (c < a) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        break;
    }
    if (a == c && b < 0) b = -b;
    return {a, b, c};
}

void CMField::class_group() {
    if (have_classes) return;
    i64 mb = std::max<i64>(1, (i64)std::floor(minkowski_bound() + 1e-9));
    auto ideals = ideals_upto(mb);
    classes.clear();
    key_index.clear();
    bool easy = F.hF == 1;
    auto equiv = [&](const RelIdeal& I, const RelIdeal& R) {
        if (easy) return is_principal(mul(I, conj(R)));
        return is_principal(mul(I, inverse(R)));
    };
    for (auto& I : ideals) {
        if (n() == 1) {
            auto key = reduced_form_key(*this, I);
            auto it = key_index.find(key);
            if (it != key_index.end()) {
                if (!equiv(I, classes[it->second])) throw std::logic_error("form key disagrees with principality");
                continue;
            }
            key_index[key] = (int)classes.size();
            classes.push_back(I);
            continue;
        }
        bool found = false;
        for (auto& R : classes)
            if (equiv(I, R)) {
                found = true;
                break;
            }
        if (!found) classes.push_back(I);
    }
    hK = (int)classes.size();
    have_classes = true;
    conj_of.assign(hK, -1);
    for (int i = 0; i < hK; ++i) conj_of[i] = class_index(conj(classes[i]));
    orbits = 0;
    for (int i = 0; i < hK; ++i)
        if (conj_of[i] >= i) ++orbits;
    // image of Cl_F
    phi_image.clear();
    a_reps.clear();
    std::vector<int> seen;
    for (auto& a : F.class_reps) {
        int c = class_index(extend(a));
        if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
            seen.push_back(c);
            a_reps.push_back(a);
            phi_image.push_back(c);
        }
    }
    h_prime = (int)seen.size();
    // cosets of im(phi)
    N_index.clear();
    N_reps.clear();
    std::vector<int> coset(hK, -1);
    for (int i = 0; i < hK; ++i) {
        if (coset[i] >= 0) continue;
        int id = (int)N_index.size();
        N_index.push_back(i);
        N_reps.push_back(classes[i]);
        for (auto& a : a_reps) coset[class_index(mul(a, classes[i]))] = id;
    }
    h = (int)N_index.size();
    if (h * h_prime != hK) throw std::logic_error("h*h' != h_K");
}

int CMField::class_index(const RelIdeal& a) const {
    if (!have_classes) throw std::logic_error("class group not computed");
    bool easy = F.hF == 1;
    auto equiv = [&](const RelIdeal& I, const RelIdeal& R) {
        if (easy) return is_principal(mul(I, conj(R)));
        return is_principal(mul(I, inverse(R)));
    };
    if (n() == 1) {
        // move to an integral ideal with the same class
        RelIdeal I = a;
        if (!is_integral(I)) I = scale(I, from_F(F.elem(I.L.den)));
        auto it = key_index.find(reduced_form_key(*this, I));
        if (it == key_index.end() || !equiv(I, classes[it->second])) throw std::logic_error("class lookup failed");
        return it->second;
    }
    for (int j = 0; j < hK; ++j)
        if (equiv(a, classes[j])) return j;
    throw std::logic_error("ideal not in any class");
}

Decomposition CMField::decompose(const RelIdeal& M) const {
    if (!have_classes) throw std::logic_error("class group not computed");
    for (int k = 0; k < h; ++k) {
        RelIdeal MN = mul(M, N_reps[k]);
        for (int j = 0; j < (int)a_reps.size(); ++j) {
            RelIdeal T = mul(MN, inverse(extend(a_reps[j])));
            auto alpha = generator(T);
            if (!alpha) continue;
            FIdeal c = pseudo_basis(N_reps[k].L, *alpha).c;
            for (int jj = 0; jj < (int)a_reps.size(); ++jj) {
                auto g = F.generator(F.mul(c, F.inverse(a_reps[jj])));
                if (!g) continue;
                Decomposition d;
                d.i = k;
                d.aj = jj;
                d.a = F.mul(a_reps[j], F.inverse(c));
                d.gen = canonical_associate(scale(*alpha, *g));
                d.line_OK = mul(extend(a_reps[jj]), principal(d.gen));
                if (!d.a.is_integral()) throw DecompositionFailed("coefficient ideal not integral");
                if (recompose(d) != M) throw DecompositionFailed("reconstruction mismatch");
                return d;
            }
            throw DecompositionFailed("line class outside the chosen representatives");
        }
    }
    throw DecompositionFailed("no class representative matched");
}

RelIdeal CMField::recompose(const Decomposition& d) const {
    return mul(mul(extend(d.a), d.line_OK), inverse(N_reps[d.i]));
}

int local_disc_exponent(const Field& F, const FPrime& P, const FElem& delta) {
    int v = F.valuation(P, delta);
    if (P.p != 2) return v % 2;
    int v4d = 2 * P.e + v;
    int cmax = 0;
    for (int c = 1; 2 * c <= v4d; ++c) {
        LocalRing R = F.local(P, 2 * c);
        bool ok = false;
        for (auto& x : R.reps()) {
            if (F.valuation(P, x * Rat(2)) < c) continue;
            if (F.valuation(P, x * x - delta) >= 2 * c) {
                ok = true;
                break;
            }
        }
        if (!ok) break;
        cmax = c;
    }
    return v4d - 2 * cmax;
}

std::vector<FElem> exceptional_radicands(const Field& F) {
    std::vector<FElem> cands = {F.elem(-3), F.elem(-1)};
    if (F.n() == 2)
        for (FElem u : {F.eps, -F.eps})
            if (u.is_totally_negative()) cands.push_back(u);
    // Q(sqrt5) is the real subfield of Q(zeta_5); (zeta - 1/zeta)^2 = -2 - omega
    if (F.n() == 2 && F.m() == 5) cands.push_back(F.elem(-2, -1));
    std::vector<FElem> out;
    for (auto& v : cands) {
        bool dup = false;
        for (auto& w : out)
            if (F.is_square(v / w)) dup = true;
        if (!dup) out.push_back(v);
    }
    return out;
}

bool has_extra_units(const Field& F, const FElem& delta) {
    for (auto& v : exceptional_radicands(F))
        if (F.is_square(delta / v)) return true;
    return false;
}

std::vector<CMField> exceptional_extensions(const Field& F) {
    std::vector<CMField> out;
    for (auto& v : exceptional_radicands(F)) out.push_back(make_cm(F, v, false));
    return out;
}

bool torsion_unit_search(const CMField& K) {
    auto zb = K.zbasis(K.OK);
    int d = K.dim();
    RMat gram(d, RVec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) gram[i][j] = (zb[i].x * zb[j].x - K.delta * zb[i].y * zb[j].y).trace();
    Rat bound = 1;
    if (K.n() == 2) {
        double e1 = K.F.eps.embed(0);
        bound = Rat((i64)std::ceil(e1 + 1.0 / e1) + 1);
    }
    bool extra = false;
    enumerate_short(gram, bound, [&](const IVec& z) {
        KElem g{K.F.elem(0), K.F.elem(0)};
        for (int i = 0; i < d; ++i) g = K.add(g, K.scale(zb[i], K.F.elem(z[i])));
        if (!g.y.is_zero() && K.abs_norm(g) == Rat(1)) {
            extra = true;
            return false;
        }
        return true;
    }, K.budget);
    return extra;
}

CMField make_cm(const Field& F, const FElem& delta, bool with_classes) {
    if (!delta.is_totally_negative()) throw NotTotallyNegative(delta.str());
    if (!delta.is_integral()) throw NotIntegral(delta.str());
    CMField K;
    K.F = F;
    K.delta = delta;
    int n = F.n(), d = 2 * n;
    // candidates (x + y sqrt(delta)) with 2x in o and 2k y in o
    i64 k = 1;
    for (auto& [p, e] : factor(delta.norm().p)) k *= ipow(p, e / 2);
    RMat gens;
    auto push = [&](const KElem& z) {
        gens.push_back(K.coords(z));
        if (n == 2) gens.push_back(K.coords(K.mul(z, K.from_F(F.omega()))));
    };
    push(K.from_F(F.one()));
    push(K.sqrt_delta());
    i64 ky = 2 * k;
    long long total = (long long)ipow(2, n) * ipow(ky, n);
    if (total > 4000000) throw SearchBudgetExceeded("maximal order candidates");
    for (i64 xa = 0; xa < 2; ++xa)
        for (i64 xb = 0; xb < (n == 2 ? 2 : 1); ++xb)
            for (i64 ya = 0; ya < ky; ++ya)
                for (i64 yb = 0; yb < (n == 2 ? ky : 1); ++yb) {
                    KElem z{F.elem(Rat(xa, 2), Rat(xb, 2)), F.elem(Rat(ya, ky), Rat(yb, ky))};
                    FElem tr = z.x * Rat(2), nr = K.rel_norm(z);
                    if (tr.is_integral() && nr.is_integral()) push(z);
                }
    K.OK = Lat::from_gens(gens, d);
    K.OK_covol = K.OK.covolume();
    K.rel_basis = K.pseudo_basis(K.OK, K.from_F(F.one()));
    if (K.rel_basis.c != F.unit_ideal()) throw std::logic_error("o_K meets F in more than o_F");
    FElem db = K.rel_basis.beta.y * Rat(2);
    K.rel_disc = F.mul(F.mul(K.rel_basis.b, K.rel_basis.b), F.principal(db * db * delta));
    Rat nd = K.rel_disc.norm();
    if (!nd.is_int()) throw std::logic_error("relative discriminant not integral");
    K.abs_disc = narrow((i128)F.dF * F.dF * nd.p);
    // local cross-check at every prime dividing 2*delta
    std::vector<i64> ps = {2};
    for (auto& [p, e] : factor(delta.norm().p)) ps.push_back(p);
    for (i64 p : ps)
        for (auto& P : F.factor_prime(p).primes)
            if (F.valuation(P, K.rel_disc) != local_disc_exponent(F, P, delta))
                throw std::logic_error("relative discriminant: local and global disagree");
    K.unit_equal = !has_extra_units(F, delta);
    if (with_classes) K.class_group();
    return K;
}

}  // namespace relclass
