#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

namespace dyn {

// Integer polynomial, coefficients lowest degree first, no trailing zeros.
struct Poly {
    std::vector<mpz_class> c;

    Poly() = default;
    explicit Poly(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly monomial(unsigned deg, const mpz_class& coef = 1);
    static Poly x_minus(const mpz_class& r);  // x - r

    int degree() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const mpz_class& lead() const { return c.back(); }
    mpz_class coeff(std::size_t i) const { return i < c.size() ? c[i] : mpz_class(0); }
    void trim();

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return c != o.c; }
};

Poly operator*(const Poly& p, const Poly& q);
Poly operator+(const Poly& p, const Poly& q);
Poly operator-(const Poly& p, const Poly& q);
Poly pow(const Poly& p, unsigned e);

// Exact division by a divisor with leading coefficient +-1; false if it leaves a remainder.
bool divide_exact(const Poly& p, const Poly& d, Poly& quotient);

Poly derivative(const Poly& p);
// Square-free part over Q, made primitive with positive leading coefficient.
Poly squarefree_part(const Poly& p);
Poly cyclotomic(unsigned d);
unsigned euler_phi(unsigned d);

std::string to_string(const Poly& p);
std::vector<std::string> coefficient_strings(const Poly& p);

}  // namespace dyn
