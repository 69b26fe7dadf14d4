#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relclass/cm_ext.hpp"

namespace relclass {

// q(x*alpha + y*beta) = a x^2 + b x y + c y^2 on M = I1*alpha + I2*beta.
// The usual shape has I1 = o and I2 the Steinitz ideal.
struct PseudoForm {
    const Field* F = nullptr;
    FIdeal I1, I2;
    FElem a, b, c;

    FElem field_disc() const { return b * b - a * c * Rat(4); }
    FElem value(const FElem& x, const FElem& y) const { return a * x * x + b * x * y + c * y * y; }
    FIdeal steinitz() const;
    std::string str() const;
};

PseudoForm make_form(const Field& F, const FElem& a, const FElem& b, const FElem& c);
PseudoForm make_form(const Field& F, const FElem& a, const FElem& b, const FElem& c, const FIdeal& steinitz);
// new basis alpha' = t11 alpha + t21 beta, beta' = t12 alpha + t22 beta
PseudoForm transform(const PseudoForm& Q, const FElem& t11, const FElem& t12, const FElem& t21,
                     const FElem& t22, const FIdeal& I1, const FIdeal& I2);
PseudoForm scale_form(const PseudoForm& Q, const FElem& u);

FIdeal disc_ideal(const PseudoForm& Q);
FIdeal norm_ideal(const PseudoForm& Q);
bool is_definite(const PseudoForm& Q);
bool is_positive_definite(const PseudoForm& Q);

// local test at every prime, compared with the discriminant identity
bool is_fundamental(const PseudoForm& Q);
bool fundamental_by_definition(const PseudoForm& Q);
bool fundamental_by_discriminant(const PseudoForm& Q);
// d in o_P fundamental at P
bool local_fundamental(const Field& F, const FPrime& P, const FElem& d);
// u^2 = d mod 4 o_P for some u in o_P
bool qr_mod4(const Field& F, const FPrime& P, const FElem& d);

struct IdealForm {
    PseudoForm raw;  // Q_A on a pseudo-basis of A
    KElem alpha, beta;
    bool normalized_ok = false;  // N(A) principal
    FElem gamma;
    PseudoForm normalized;  // Q_A / gamma
};
IdealForm ideal_to_form(const CMField& K, const RelIdeal& A);

struct FormIdeal {
    RelIdeal A;
    FElem scale;  // 4a: 4a*Q = Q_A o phi
    KElem img_alpha, img_beta;
};
FormIdeal form_to_ideal(const CMField& K, const PseudoForm& Q);
bool weakly_equivalent(const CMField& K, const PseudoForm& Q1, const PseudoForm& Q2);

struct StrongClass {
    int weak = 0;  // index into Classification::weak
    FElem unit;
    PseudoForm form;
};
struct Classification {
    std::vector<int> class_of_weak;  // class index of the ideal behind each weak class
    std::vector<IdealForm> weak;
    std::vector<StrongClass> strong;
    int hK = 0;
};
Classification classify(const CMField& K);

struct Place {
    bool real = true;
    int emb = 0;
    FPrime P;
    std::string label() const;
};
// real places then primes dividing the relative discriminant
std::vector<Place> genus_places(const CMField& K);
int hilbert_symbol(const Field& F, const FElem& s, const FElem& d, const Place& v);
// product of all local symbols; 1 by reciprocity
int hilbert_product(const Field& F, const FElem& s, const FElem& d);
int genus_char(const PseudoForm& Q, const Place& v, const FElem& s);
int genus_char(const PseudoForm& Q, const Place& v);
std::vector<int> genus_vector(const CMField& K, const PseudoForm& Q);

bool representable_criterion(const CMField& K, const FElem& s);
struct Representation {
    IdealForm form;  // form.normalized = Q_A / gamma represents s
    KElem z;
    FElem x, y;  // z = x alpha + y beta
};
Representation represent_search(const CMField& K, const FElem& s);
// signs indexed like genus_places(K)
Representation prescribe_genus(const CMField& K, const std::vector<int>& signs, long long budget = 20000);

struct GenusBound {
    int t = 0;
    Rat bound;
    int hK = 0;
    bool ok = true;
};
GenusBound lower_bound_t(const CMField& K);

struct Line {
    FElem x, y;     // direction
    FIdeal coeff;   // N = coeff * (x, y)
    FIdeal value;   // I(Q, N)
    Rat value_norm;
};
FIdeal value_ideal(const PseudoForm& Q, const FIdeal& coeff, const FElem& x, const FElem& y);
Line saturate(const PseudoForm& Q, const FElem& x, const FElem& y);
// every saturated line with |I(Q,N)| < |d_Q|^{1/2} / 2^n
std::vector<Line> lines_below(const PseudoForm& Q, long long budget = 1000000);
std::optional<Line> minimal_line(const PseudoForm& Q);

}  // namespace relclass
