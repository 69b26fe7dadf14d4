#pragma once

#include <boost/numeric/interval.hpp>
#include <cmath>
#include <string>

namespace relclass {

namespace ivl = boost::numeric::interval_lib;
using Iv = boost::numeric::interval<
    double, ivl::policies<ivl::save_state<ivl::rounded_arith_std<double>>, ivl::checking_base<double>>>;

// libm results are widened by a few ulps in each direction
inline double down(double x, int k = 2) {
    for (int i = 0; i < k; ++i) x = std::nextafter(x, -INFINITY);
    return x;
}
inline double up(double x, int k = 2) {
    for (int i = 0; i < k; ++i) x = std::nextafter(x, INFINITY);
    return x;
}
inline Iv iv(double x) { return Iv(x); }
inline Iv iv_loose(double x) { return Iv(down(x), up(x)); }
inline double lo(const Iv& a) { return a.lower(); }
inline double hi(const Iv& a) { return a.upper(); }
inline double mid(const Iv& a) { return 0.5 * (a.lower() + a.upper()); }
inline bool contains(const Iv& a, long double x) { return a.lower() <= x && x <= a.upper(); }

inline Iv iexp(const Iv& a) {
    return Iv(std::max(0.0, down(std::exp(a.lower()))), up(std::exp(a.upper())));
}
// a > 0
inline Iv ilog(const Iv& a) { return Iv(down(std::log(a.lower())), up(std::log(a.upper()))); }
inline Iv isqrt_iv(const Iv& a) { return boost::numeric::sqrt(a); }
inline Iv ipow(const Iv& a, const Iv& b) { return iexp(b * ilog(a)); }
inline Iv ipow(const Iv& a, double b) { return ipow(a, Iv(b)); }
inline Iv ipow(const Iv& a, int k) { return boost::numeric::pow(a, k); }
inline Iv ipi() { return ivl::pi<Iv>(); }
inline Iv imax(const Iv& a, const Iv& b) { return boost::numeric::max(a, b); }
inline Iv imin(const Iv& a, const Iv& b) { return boost::numeric::min(a, b); }
inline Iv iabs_iv(const Iv& a) { return boost::numeric::abs(a); }

// RELCLASS_PRECISION_BITS, default 128
int precision_bits();

}  // namespace relclass
