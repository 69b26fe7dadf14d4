#pragma once

#include <functional>
#include <vector>

#include "relclass/arith.hpp"

namespace relclass {

using RVec = std::vector<Rat>;
using RMat = std::vector<RVec>;
using IVec = std::vector<i64>;
using IMat = std::vector<IVec>;

RMat rmat_mul(const RMat& a, const RMat& b);
RMat rmat_inverse(const RMat& a);  // throws on singular
Rat rmat_det(RMat a);
RMat rmat_transpose(const RMat& a);
RVec rvec_mul(const RVec& v, const RMat& m);

// Row-style HNF: lower triangular, positive diagonal, entries below the
// diagonal reduced into [0, H[i][i]). Rows are the basis.
IMat hnf(IMat gens, int d);

// A full-rank Z-lattice in Q^d stored as H/den with H in HNF.
struct Lat {
    int d = 0;
    i64 den = 1;
    IMat H;

    static Lat from_gens(const RMat& gens, int d);
    static Lat identity(int d);
    RMat basis() const;
    RVec row(int i) const;
    bool contains(const RVec& v) const;
    bool contains(const Lat& o) const;
    Rat covolume() const;  // |det| of the basis
    Lat scaled(const Rat& s) const;
    bool operator==(const Lat& o) const { return d == o.d && den == o.den && H == o.H; }
    bool operator<(const Lat& o) const {
        if (den != o.den) return den < o.den;
        return H < o.H;
    }
};

Lat lat_sum(const Lat& a, const Lat& b);
// dual lattice {x : x.v in Z for every v in L}
Lat lat_dual(const Lat& a);
Lat lat_intersect(const Lat& a, const Lat& b);
// representatives of big/small for small a sublattice of big
std::vector<RVec> coset_reps(const Lat& big, const Lat& small, i64 limit = 1000000);

// Integral LLL on a positive definite Gram matrix (double); returns a
// unimodular U with reduced basis U*B.
IMat lll_transform(const std::vector<std::vector<double>>& gram);

// Enumerate nonzero integer coordinate vectors z with z G z^T <= bound,
// G given exactly. Visitor returns false to stop. Throws
// SearchBudgetExceeded past budget visited nodes.
void enumerate_short(const RMat& gram, const Rat& bound,
                     const std::function<bool(const IVec&)>& visit,
                     long long budget = 1000000, bool include_zero = false);

Rat quad_eval(const RMat& gram, const IVec& z);

}  // namespace relclass
