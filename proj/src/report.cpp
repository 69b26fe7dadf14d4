#include "relclass/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace relclass {

json num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

json iv_json(const Iv& a) { return json::array({num(lo(a)), num(hi(a))}); }

std::string field_label(const Field& F) { return F.n() == 1 ? "Q" : "Q(sqrt" + std::to_string(F.m()) + ")"; }

std::string cm_label(const CMField& K) { return field_label(K.F) + "(sqrt(" + K.delta.str() + "))"; }

static json ideal_list(const std::vector<FIdeal>& v) {
    json a = json::array();
    for (auto& I : v) a.push_back(I.str());
    return a;
}

json field_report(const Field& F) {
    json j;
    j["field"] = field_label(F);
    j["n"] = F.n();
    j["m"] = F.m();
    j["dF"] = F.dF;
    j["hF"] = F.hF;
    j["eps"] = F.eps.str();
    j["regulator"] = num(F.n() == 1 ? 0.0 : F.regulator);
    j["d0"] = num(F.d0);
    j["unit_sq_index"] = F.unit_sq_index;
    j["class_reps"] = ideal_list(F.class_reps);
    json ex = json::array();
    for (auto& v : exceptional_radicands(F)) ex.push_back(v.str());
    j["extra_unit_radicands"] = ex;
    j["lattice"] = lattice_json(lattice_constants(F));
    return j;
}

std::string field_json(const Field& F) { return field_report(F).dump(2); }

json cm_report(const CMField& K) {
    json j;
    j["K"] = cm_label(K);
    j["delta"] = K.delta.str();
    j["rel_disc"] = K.rel_disc.str();
    j["rel_disc_norm"] = K.rel_disc.norm().str();
    j["abs_disc"] = K.abs_disc;
    j["unit_equal"] = K.unit_equal;
    if (K.have_classes) {
        j["hK"] = K.hK;
        j["conj_orbits"] = K.orbits;
        j["h"] = K.h;
        j["h_prime"] = K.h_prime;
    }
    return j;
}

json classification_report(const CMField& K, const Classification& C) {
    json j = cm_report(K);
    j["weak_classes"] = C.weak.size();
    j["strong_classes"] = C.strong.size();
    j["bijection"] = (int)C.weak.size() == K.orbits;
    j["weak_bounds"] = C.weak.size() <= (size_t)K.hK && (size_t)K.hK <= 2 * C.weak.size();
    json forms = json::array();
    for (auto& w : C.weak) forms.push_back(w.normalized_ok ? w.normalized.str() : w.raw.str());
    j["forms"] = forms;
    auto g = lower_bound_t(K);
    j["t"] = g.t;
    j["genus_bound"] = g.bound.str();
    return j;
}

json lattice_json(const LatticeConstants& L) {
    json j;
    j["d0"] = iv_json(L.d0);
    j["T0"] = iv_json(L.T0);
    j["C_T0"] = iv_json(L.CT0);
    j["C_1"] = iv_json(L.C1);
    j["A1"] = iv_json(L.A1);
    j["A2"] = iv_json(L.A2);
    j["slack"] = num(L.slack);
    return j;
}

json bound_params_json(const BoundParams& bp) {
    json j;
    j["t"] = bp.t;
    j["hK"] = bp.hK;
    j["h"] = bp.h;
    j["m"] = num(bp.m);
    j["Nd"] = bp.Nd;
    j["V"] = iv_json(bp.V);
    j["U"] = iv_json(bp.U);
    j["R"] = bp.R;
    j["P_UK"] = bp.P_UK;
    j["P_K"] = bp.P_K;
    j["split_below_V"] = bp.split_below_V;
    j["split_below_U"] = bp.split_below_U;
    j["lemma"] = json::array({bp.lemma1, bp.lemma2, bp.lemma3});
    return j;
}

json g_json(const GConst& G) {
    json j;
    j["G1"] = num(G.G1);
    j["G2"] = num(G.G2);
    j["G3"] = num(G.G3);
    json p;
    for (auto& [k, v] : G.provenance) p[k] = v;
    j["provenance"] = p;
    j["level_norm"] = G.level_norm;
    j["L_sym2_1"] = num(G.Lsym);
    j["L_sym2_drift"] = num(G.Lsym_drift);
    j["L_sym2_logderiv"] = num(G.dlogL);
    j["zeta_residue"] = num(G.rho);
    j["zeta_c0"] = num(G.c0);
    j["zeta_inv_d1"] = num(G.zinv_d1);
    j["zeta_inv_ratio"] = num(G.zinv_ratio);
    j["contour_integral"] = num(G.integral_half);
    j["halving_drift"] = num(G.halving_drift);
    j["tail_cut"] = num(G.tail_cut);
    j["tail_bound"] = num(G.tail_bound);
    return j;
}

json bundle_json(const Bundle& b) {
    json j;
    j["n"] = b.n;
    j["dF"] = b.dF;
    j["unit_sq_index"] = b.idx;
    j["hF"] = b.hF;
    j["lattice"] = lattice_json(b.L);
    j["level_norm"] = b.level_norm;
    j["M'"] = iv_json(b.Mp);
    j["zeta_F(2)"] = iv_json(b.B.zeta2);
    j["B1"] = iv_json(b.B.B1);
    j["B2"] = iv_json(b.B.B2);
    j["B3"] = iv_json(b.B.B3);
    j["G"] = g_json(b.G);
    j["eta"] = num(b.eta);
    j["eta'"] = num(b.eta2);
    j["sigma"] = num(b.sigma);
    j["F2_uniform"] = num(b.F2_uniform);
    j["precision_bits"] = b.precision_bits;
    json r;
    for (auto& [k, v] : b.rigor) r[k] = v;
    j["rigor"] = r;
    return j;
}

json lambda_row_json(const LambdaRow& r) {
    json j;
    j["lambda"] = num(r.lambda);
    j["admissible"] = r.admissible;
    if (!r.admissible) return j;
    j["D"] = json::array({iv_json(r.D.D1), iv_json(r.D.D2), iv_json(r.D.D3), iv_json(r.D.D4)});
    j["F1"] = iv_json(r.F1);
    j["E1"] = iv_json(r.E1);
    j["E2"] = iv_json(r.E2);
    j["C"] = iv_json(r.C);
    j["feasible"] = r.feasible;
    return j;
}

json final_bound_json(const FinalBound& fb) {
    json j;
    j["params"] = bound_params_json(fb.bp);
    j["s"] = fb.s;
    j["places_above_37"] = fb.places37;
    j["e"] = fb.e;
    j["f"] = num(fb.f);
    j["split37"] = fb.split37;
    j["branch1"] = num(fb.branch1);
    j["branch2"] = num(fb.branch2);
    j["bound"] = num(fb.bound);
    j["P_K_factor"] = num(fb.factor);
    j["log_d"] = num(fb.logd);
    j["lambda"] = num(fb.C.lambda);
    j["C"] = num(fb.C.C);
    j["F2"] = num(fb.C.F2);
    json rows = json::array();
    for (auto& r : fb.C.rows) rows.push_back(lambda_row_json(r));
    j["lambda_scan"] = rows;
    json r;
    for (auto& [k, v] : fb.rigor) r[k] = v;
    j["rigor"] = r;
    j["checked_against_hK"] = fb.checked;
    j["ok"] = fb.ok;
    return j;
}

}  // namespace relclass
