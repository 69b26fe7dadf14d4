#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relclass/base_field.hpp"

namespace relclass {

// x + y*sqrt(delta)
struct KElem {
    FElem x, y;
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
};

struct RelIdeal {
    Lat L;
    Rat abs_norm;
    bool operator==(const RelIdeal& o) const { return L == o.L; }
    bool operator!=(const RelIdeal& o) const { return !(L == o.L); }
    bool operator<(const RelIdeal& o) const {
        if (abs_norm != o.abs_norm) return abs_norm < o.abs_norm;
        return L < o.L;
    }
};

// M = c*alpha + b*beta as o_F-modules
struct PseudoBasis {
    FIdeal c;
    KElem alpha;
    FIdeal b;
    KElem beta;
};

struct KPrime {
    FPrime below;
    int e = 1, f = 1;
    RelIdeal P;
    i64 norm = 0;  // absolute
};

struct KSplit {
    char kind = 'i';  // 's' split, 'i' inert, 'r' ramified
    std::vector<KPrime> primes;
};

// M = a * L * N_i^{-1} with L = a_reps[aj] * gen saturated in N_i
struct Decomposition {
    int i = 0;
    FIdeal a;
    int aj = 0;
    KElem gen;
    RelIdeal line_OK;  // L o_K
};

class CMField {
public:
    Field F;
    FElem delta;
    Lat OK;
    Rat OK_covol;
    PseudoBasis rel_basis;  // o_K = o_F*1 + b*beta
    FIdeal rel_disc;
    i64 abs_disc = 0;
    bool unit_equal = true;
    long long budget = 1000000;

    // class data, filled by class_group()
    bool have_classes = false;
    int hK = 0;
    std::vector<RelIdeal> classes;
    std::vector<int> conj_of;
    int orbits = 0;
    int h = 0, h_prime = 0;
    std::vector<int> N_index;         // classes[N_index[i]] = N_i
    std::vector<RelIdeal> N_reps;
    std::vector<FIdeal> a_reps;       // representatives of Cl_F / ker(phi)
    std::vector<int> phi_image;       // class index of a_j o_K
    std::map<std::array<i64, 3>, int> key_index;

    int n() const { return F.n(); }
    int dim() const { return 2 * F.n(); }

    KElem elem(const FElem& x, const FElem& y) const { return KElem{x, y}; }
    KElem from_F(const FElem& x) const { return KElem{x, F.elem(0)}; }
    KElem sqrt_delta() const { return KElem{F.elem(0), F.elem(1)}; }
    KElem mul(const KElem& a, const KElem& b) const;
    KElem add(const KElem& a, const KElem& b) const { return KElem{a.x + b.x, a.y + b.y}; }
    KElem sub(const KElem& a, const KElem& b) const { return KElem{a.x - b.x, a.y - b.y}; }
    KElem scale(const KElem& a, const FElem& c) const { return KElem{a.x * c, a.y * c}; }
    KElem conj(const KElem& a) const { return KElem{a.x, -a.y}; }
    KElem inv(const KElem& a) const;
    FElem rel_norm(const KElem& a) const { return a.x * a.x - delta * a.y * a.y; }
    FElem rel_trace(const KElem& a) const { return a.x * Rat(2); }
    Rat abs_norm(const KElem& a) const { return rel_norm(a).norm(); }
    RVec coords(const KElem& a) const;
    KElem from_coords(const RVec& v) const;
    bool is_integral(const KElem& a) const;
    Rat t2(const KElem& a) const { return rel_norm(a).trace(); }

    RelIdeal make_ideal(const Lat& L) const;
    RelIdeal unit_ideal() const { return make_ideal(OK); }
    RelIdeal principal(const KElem& g) const;
    RelIdeal extend(const FIdeal& a) const;
    RelIdeal ideal_from(const std::vector<KElem>& gens) const;  // o_K-span
    RelIdeal mul(const RelIdeal& a, const RelIdeal& b) const;
    RelIdeal mul(const FIdeal& a, const RelIdeal& b) const { return mul(extend(a), b); }
    RelIdeal add(const RelIdeal& a, const RelIdeal& b) const;
    RelIdeal conj(const RelIdeal& a) const;
    RelIdeal inverse(const RelIdeal& a) const;
    RelIdeal pow(const RelIdeal& a, int k) const;
    RelIdeal scale(const RelIdeal& a, const KElem& g) const;
    FIdeal rel_norm(const RelIdeal& a) const;
    FIdeal intersect_F(const RelIdeal& a) const;
    bool contains(const RelIdeal& a, const KElem& x) const { return a.L.contains(coords(x)); }
    bool is_integral(const RelIdeal& a) const { return OK.contains(a.L); }
    std::vector<KElem> zbasis(const RelIdeal& a) const;
    std::vector<KElem> zbasis(const Lat& L) const;

    // M = c*alpha + b*beta with alpha given
    PseudoBasis pseudo_basis(const Lat& M, const KElem& alpha) const;
    // M = o*alpha + a*beta (first coefficient ideal trivial)
    PseudoBasis steinitz_basis(const RelIdeal& M) const;
    void reduce_pair(PseudoBasis& pb) const;

    KSplit split(const FPrime& P) const;
    std::vector<RelIdeal> ideals_upto(i64 bound) const;
    double minkowski_bound() const;

    std::optional<KElem> generator(const RelIdeal& a) const;
    bool is_principal(const RelIdeal& a) const { return generator(a).has_value(); }
    KElem canonical_associate(const KElem& g) const;

    void class_group();
    int class_index(const RelIdeal& a) const;
    // M = a * L * N_i^{-1}, L saturated
    Decomposition decompose(const RelIdeal& M) const;
    RelIdeal recompose(const Decomposition& d) const;

    std::string elem_str(const KElem& a) const;
};

CMField make_cm(const Field& F, const FElem& delta, bool with_classes = true);

// local exponent of the relative discriminant at P, from delta alone
int local_disc_exponent(const Field& F, const FPrime& P, const FElem& delta);

// radicands v with F(sqrt v) having extra units, up to squares
std::vector<FElem> exceptional_radicands(const Field& F);
std::vector<CMField> exceptional_extensions(const Field& F);
bool has_extra_units(const Field& F, const FElem& delta);
// independent check: search o_K for a unit outside F
bool torsion_unit_search(const CMField& K);

// reduced binary form (a,b,c) for an ideal of an imaginary quadratic field
std::array<i64, 3> reduced_form_key(const CMField& K, const RelIdeal& A);

}  // namespace relclass
