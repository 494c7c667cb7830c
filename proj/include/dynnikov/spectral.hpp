#pragma once

#include <string>
#include <vector>

#include "dynnikov/matrix.hpp"
#include "dynnikov/polynomial.hpp"

namespace dyn {

// det(xI - M), division-free (Berkowitz).
Poly char_poly(const IntMatrix& m);

// Largest real root of p to within 2^-bits (absolute). Throws NoDominantRealRoot if p has no real root.
mpf_class largest_real_root(const Poly& p, unsigned bits = 160);

// Moduli of all roots of p divided by r (Durand-Kerner on the rescaled polynomial).
std::vector<double> relative_root_moduli(const Poly& p, const mpf_class& r);

// Spectral radius as a dominant real eigenvalue > 1; default accuracy 1e-30.
mpf_class dilatation(const IntMatrix& m, int digits = 30);

enum class StripMode { exact, roots_of_unity_and_zeros, eigenvalues_one };
StripMode parse_strip_mode(const std::string& s);
std::string to_string(StripMode m);

struct StrippedFactor {
    std::string kind;  // "x", "Phi", "x-1"
    unsigned d = 0;    // cyclotomic index for "Phi"
    unsigned multiplicity = 0;
    bool operator==(const StrippedFactor&) const = default;
};

Poly strip_trivial_factors(const Poly& p, StripMode mode, std::vector<StrippedFactor>* factors = nullptr);

struct SpectrumReport {
    StripMode mode = StripMode::exact;
    Poly poly1, poly2;
    Poly stripped1, stripped2;
    std::vector<StrippedFactor> factors1, factors2;
    bool isospectral = false;
};

SpectrumReport isospectral_up_to(const IntMatrix& m1, const IntMatrix& m2, StripMode mode);
SpectrumReport compare_polys(const Poly& p1, const Poly& p2, StripMode mode);

IntMatrix double_cover_lift(const IntMatrix& a, const IntMatrix& b);

// Eigenvector of m for a (simple) real eigenvalue lambda by inverse iteration; unit Euclidean norm.
std::vector<mpf_class> eigenvector(const IntMatrix& m, const mpf_class& lambda);

}  // namespace dyn
