#pragma once

#include <cmath>
#include <gmpxx.h>
#include <string>

namespace dyn {

// Scalar kinds: double, mpf_class (per-object precision), mpq_class (exact).
template <class S> struct scalar_traits;

template <> struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double zero_like(const double&) { return 0.0; }
    static double from_int(long v, const double&) { return double(v); }
    static double from_double(double v, const double&) { return v; }
    static double to_double(const double& x) { return x; }
    static unsigned bits(const double&) { return 53; }
    static double abs(const double& x) { return std::fabs(x); }
};

template <> struct scalar_traits<mpf_class> {
    static constexpr bool exact = false;
    static mpf_class zero_like(const mpf_class& x) { return mpf_class(0, x.get_prec()); }
    static mpf_class from_int(long v, const mpf_class& x) { return mpf_class(v, x.get_prec()); }
    static mpf_class from_double(double v, const mpf_class& x) { return mpf_class(v, x.get_prec()); }
    static double to_double(const mpf_class& x) { return x.get_d(); }
    static unsigned bits(const mpf_class& x) { return unsigned(x.get_prec()); }
    static mpf_class abs(const mpf_class& x) {
        mpf_class r(0, x.get_prec());
        mpf_abs(r.get_mpf_t(), x.get_mpf_t());
        return r;
    }
};

template <> struct scalar_traits<mpq_class> {
    static constexpr bool exact = true;
    static mpq_class zero_like(const mpq_class&) { return mpq_class(0); }
    static mpq_class from_int(long v, const mpq_class&) { return mpq_class(v); }
    static mpq_class from_double(double v, const mpq_class&) { return mpq_class(v); }
    static double to_double(const mpq_class& x) { return x.get_d(); }
    static unsigned bits(const mpq_class&) { return 0; }
    static mpq_class abs(const mpq_class& x) { return x < 0 ? mpq_class(-x) : x; }
};

// gmpxx expression templates do not mix with std::max.
template <class S> S smax(const S& x, const S& y) { return x < y ? y : x; }
template <class S> S smin(const S& x, const S& y) { return y < x ? y : x; }

inline std::string to_string(const mpz_class& z) { return z.get_str(); }
inline std::string to_string(const mpq_class& q) { return q.get_str(); }
std::string to_string(const mpf_class& f, int digits = 30);
std::string to_string(double d, int digits = 17);

mpq_class parse_rational(const std::string& s);

}  // namespace dyn
