#include "dynnikov/polynomial.hpp"

#include <sstream>

#include "dynnikov/errors.hpp"

namespace dyn {

void Poly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Poly Poly::monomial(unsigned deg, const mpz_class& coef) {
    std::vector<mpz_class> v(deg + 1, 0);
    v[deg] = coef;
    return Poly(std::move(v));
}

Poly Poly::x_minus(const mpz_class& r) { return Poly({mpz_class(-r), mpz_class(1)}); }

Poly operator*(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return Poly();
    std::vector<mpz_class> v(p.c.size() + q.c.size() - 1, 0);
    for (std::size_t i = 0; i < p.c.size(); ++i)
        for (std::size_t j = 0; j < q.c.size(); ++j) v[i + j] += p.c[i] * q.c[j];
    return Poly(std::move(v));
}

Poly operator+(const Poly& p, const Poly& q) {
    std::vector<mpz_class> v(std::max(p.c.size(), q.c.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = p.coeff(i) + q.coeff(i);
    return Poly(std::move(v));
}

Poly operator-(const Poly& p, const Poly& q) {
    std::vector<mpz_class> v(std::max(p.c.size(), q.c.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = p.coeff(i) - q.coeff(i);
    return Poly(std::move(v));
}

Poly pow(const Poly& p, unsigned e) {
    Poly r({mpz_class(1)});
    for (unsigned i = 0; i < e; ++i) r = r * p;
    return r;
}

bool divide_exact(const Poly& p, const Poly& d, Poly& quotient) {
    if (d.is_zero()) throw DomainError("division by the zero polynomial");
    if (d.lead() != 1 && d.lead() != -1) throw DomainError("divisor must have unit leading coefficient");
    if (p.degree() < d.degree()) {
        if (!p.is_zero()) return false;
        quotient = Poly();
        return true;
    }
    std::vector<mpz_class> r = p.c, q(std::size_t(p.degree() - d.degree() + 1), 0);
    for (int i = p.degree() - d.degree(); i >= 0; --i) {
        mpz_class f = r[std::size_t(i + d.degree())] * d.lead();  // lead is +-1
        q[std::size_t(i)] = f;
        if (f == 0) continue;
        for (std::size_t j = 0; j < d.c.size(); ++j) r[std::size_t(i) + j] -= f * d.c[j];
    }
    for (const auto& e : r)
        if (e != 0) return false;
    quotient = Poly(std::move(q));
    return true;
}

Poly derivative(const Poly& p) {
    std::vector<mpz_class> v;
    for (std::size_t i = 1; i < p.c.size(); ++i) v.push_back(p.c[i] * long(i));
    return Poly(std::move(v));
}

namespace {

using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qrem(QPoly a, const QPoly& b) {
    qtrim(a);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
        a.pop_back();
        qtrim(a);
    }
    return a;
}

QPoly qdiv(QPoly a, const QPoly& b) {
    qtrim(a);
    if (a.size() < b.size()) return {};
    QPoly q(a.size() - b.size() + 1, 0);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
        a.pop_back();
        qtrim(a);
    }
    return q;
}

QPoly to_q(const Poly& p) {
    QPoly q;
    for (const auto& e : p.c) q.emplace_back(e);
    return q;
}

Poly primitive(const QPoly& q) {
    mpz_class l = 1;
    for (const auto& e : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
    std::vector<mpz_class> v;
    mpz_class g = 0;
    for (const auto& e : q) {
        mpq_class s = e * l;
        v.push_back(s.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.back().get_mpz_t());
    }
    if (g == 0) return Poly();
    for (auto& e : v) e /= g;
    Poly out(std::move(v));
    if (out.lead() < 0)
        for (auto& e : out.c) e = -e;
    return out;
}

}  // namespace

Poly squarefree_part(const Poly& p) {
    if (p.degree() <= 0) return p;
    QPoly a = to_q(p), b = to_q(derivative(p));
    QPoly g = a, h = b;
    while (!h.empty()) {
        QPoly r = qrem(g, h);
        g = h;
        h = r;
    }
    return primitive(qdiv(a, g));
}

unsigned euler_phi(unsigned d) {
    unsigned result = d, m = d;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

int moebius(unsigned m) {
    int s = 1;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        m /= p;
        if (m % p == 0) return 0;
        s = -s;
    }
    if (m > 1) s = -s;
    return s;
}

}  // namespace

// Phi_d = prod_{e | d} (x^e - 1)^{mu(d/e)}
Poly cyclotomic(unsigned d) {
    if (d == 0) throw DomainError("cyclotomic index must be positive");
    Poly num({mpz_class(1)}), den({mpz_class(1)});
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e) continue;
        int mu = moebius(d / e);
        if (mu == 0) continue;
        Poly b = Poly::monomial(e) - Poly({mpz_class(1)});
        if (mu > 0) num = num * b;
        else den = den * b;
    }
    Poly q;
    if (!divide_exact(num, den, q)) throw DomainError("cyclotomic construction failed");
    return q;
}

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        mpz_class a = p.c[std::size_t(i)];
        if (a == 0) continue;
        bool neg = a < 0;
        if (neg) a = -a;
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        if (i == 0 || a != 1) os << a.get_str() << (i ? "*" : "");
        if (i >= 1) os << 'x';
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

std::vector<std::string> coefficient_strings(const Poly& p) {
    std::vector<std::string> out;
    for (const auto& e : p.c) out.push_back(e.get_str());
    return out;
}

}  // namespace dyn
