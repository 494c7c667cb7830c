#include "dynnikov/spectral.hpp"

#include <complex>
#include <cmath>

#include "dynnikov/errors.hpp"
#include "dynnikov/scalar.hpp"

namespace dyn {

Poly char_poly(const IntMatrix& m) {
    if (!m.square()) throw DomainError("characteristic polynomial of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Poly({mpz_class(1)});
    // v holds coefficients highest degree first for the trailing principal submatrix.
    std::vector<mpz_class> v{1, mpz_class(-m(n - 1, n - 1))};
    for (std::size_t kk = n - 1; kk-- > 0;) {
        const std::size_t sz = n - kk;  // size of submatrix starting at kk
        std::vector<mpz_class> t(sz + 1, 0);
        t[0] = 1;
        t[1] = -m(kk, kk);
        // powers: y = A1^j C
        std::vector<mpz_class> y(sz - 1);
        for (std::size_t i = 0; i + 1 < sz; ++i) y[i] = m(kk + 1 + i, kk);
        for (std::size_t j = 0; j + 1 < sz; ++j) {
            mpz_class s = 0;
            for (std::size_t i = 0; i + 1 < sz; ++i) s += m(kk, kk + 1 + i) * y[i];
            t[j + 2] = -s;
            if (j + 2 >= sz) break;
            std::vector<mpz_class> ny(sz - 1, 0);
            for (std::size_t r = 0; r + 1 < sz; ++r)
                for (std::size_t c = 0; c + 1 < sz; ++c) ny[r] += m(kk + 1 + r, kk + 1 + c) * y[c];
            y = std::move(ny);
        }
        std::vector<mpz_class> nv(sz + 1, 0);
        for (std::size_t i = 0; i <= sz; ++i)
            for (std::size_t j = 0; j <= std::min(i, sz - 1); ++j) nv[i] += t[i - j] * v[j];
        v = std::move(nv);
    }
    std::vector<mpz_class> low(v.rbegin(), v.rend());
    return Poly(std::move(low));
}

namespace {

using QPoly = std::vector<mpq_class>;

mpq_class qeval(const QPoly& p, const mpq_class& x) {
    mpq_class s = 0;
    for (std::size_t i = p.size(); i-- > 0;) s = s * x + p[i];
    return s;
}

QPoly qrem_neg(const QPoly& a, const QPoly& b) {
    QPoly r = a;
    while (!r.empty() && r.back() == 0) r.pop_back();
    while (r.size() >= b.size() && !r.empty()) {
        mpq_class f = r.back() / b.back();
        std::size_t shift = r.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= f * b[j];
        r.pop_back();
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    for (auto& e : r) e = -e;
    return r;
}

struct Sturm {
    std::vector<QPoly> seq;
    explicit Sturm(const Poly& p) {
        QPoly a, b;
        for (const auto& e : p.c) a.emplace_back(e);
        Poly d = derivative(p);
        for (const auto& e : d.c) b.emplace_back(e);
        seq.push_back(a);
        if (!b.empty()) seq.push_back(b);
        while (seq.back().size() > 1) {
            QPoly r = qrem_neg(seq[seq.size() - 2], seq.back());
            if (r.empty()) break;
            seq.push_back(r);
        }
    }
    int variations(const mpq_class& x) const {
        int count = 0, last = 0;
        for (const auto& s : seq) {
            int sg = sgn(qeval(s, x));
            if (sg == 0) continue;
            if (last != 0 && sg != last) ++count;
            last = sg;
        }
        return count;
    }
};

}  // namespace

mpf_class largest_real_root(const Poly& p0, unsigned bits) {
    if (p0.degree() < 1) throw NoDominantRealRoot("constant polynomial has no roots");
    Poly p = squarefree_part(p0);
    mpq_class bound = 0;
    for (const auto& e : p.c) {
        mpq_class r(e, p.lead());
        if (r < 0) r = -r;
        if (r > bound) bound = r;
    }
    bound += 1;
    Sturm st(p);
    mpq_class lo = -bound, hi = bound;
    int vhi = st.variations(hi);
    if (st.variations(lo) - vhi < 1) throw NoDominantRealRoot("polynomial has no real root");
    QPoly q;
    for (const auto& e : p.c) q.emplace_back(e);
    mpq_class eps(1);
    eps /= mpz_class(1) << bits;
    bool isolated = false;
    while (hi - lo > eps) {
        mpq_class mid = (lo + hi) / 2;
        if (qeval(q, mid) == 0 && st.variations(mid) - vhi == 0) {
            lo = hi = mid;
            break;
        }
        if (!isolated) {
            int above = st.variations(mid) - vhi;
            if (above >= 1) lo = mid;
            else hi = mid;
            isolated = st.variations(lo) - vhi == 1;
        } else {
            // single root in (lo, hi]: keep the sign change
            if (sgn(qeval(q, mid)) == sgn(qeval(q, hi))) hi = mid;
            else lo = mid;
        }
    }
    mpf_class out(0, bits + 64);
    out = (lo + hi) / 2;
    return out;
}

std::vector<double> relative_root_moduli(const Poly& p, const mpf_class& r) {
    int d = p.degree();
    if (d < 1) return {};
    // monic rescaled coefficients: y = x / r
    std::vector<std::complex<double>> a(std::size_t(d) + 1);
    for (int i = 0; i <= d; ++i) {
        mpf_class s(p.c[std::size_t(i)], r.get_prec());
        s /= mpf_class(p.lead(), r.get_prec());
        mpf_class pw(1, r.get_prec());
        for (int j = i; j < d; ++j) pw /= r;
        s *= pw;
        a[std::size_t(i)] = s.get_d();
    }
    std::vector<std::complex<double>> z(static_cast<std::size_t>(d));
    const std::complex<double> seed(0.4, 0.9);
    std::complex<double> s = 1.0;
    for (auto& e : z) {
        e = s;
        s *= seed;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = 0;
        for (std::size_t i = a.size(); i-- > 0;) v = v * x + a[i];
        return v;
    };
    for (int it = 0; it < 2000; ++it) {
        double change = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            std::complex<double> den = 1;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i) den *= (z[i] - z[j]);
            if (std::abs(den) == 0) den = 1e-300;
            std::complex<double> step = eval(z[i]) / den;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-15) break;
    }
    std::vector<double> out;
    for (const auto& e : z) out.push_back(std::abs(e));
    return out;
}

mpf_class dilatation(const IntMatrix& m, int digits) {
    Poly p = char_poly(m);
    unsigned bits = unsigned(std::ceil(digits * 3.3219280948873623)) + 8;
    mpf_class lambda = largest_real_root(p, bits);
    if (!(lambda > 1)) throw NoDominantRealRoot("largest real eigenvalue is not greater than 1");
    Poly q = squarefree_part(p);
    auto mods = relative_root_moduli(q, lambda);
    std::size_t self = 0;
    for (std::size_t i = 0; i < mods.size(); ++i)
        if (std::fabs(mods[i] - 1) < std::fabs(mods[self] - 1)) self = i;
    for (std::size_t i = 0; i < mods.size(); ++i)
        if (i != self && mods[i] >= 1 - 1e-9)
            throw NoDominantRealRoot("another eigenvalue has modulus at least lambda");
    return lambda;
}

StripMode parse_strip_mode(const std::string& s) {
    if (s == "exact") return StripMode::exact;
    if (s == "roots_of_unity_and_zeros" || s == "roots") return StripMode::roots_of_unity_and_zeros;
    if (s == "eigenvalues_one" || s == "ones") return StripMode::eigenvalues_one;
    throw ParseError("unknown comparison mode '" + s + "'");
}

std::string to_string(StripMode m) {
    switch (m) {
        case StripMode::exact: return "exact";
        case StripMode::roots_of_unity_and_zeros: return "roots_of_unity_and_zeros";
        case StripMode::eigenvalues_one: return "eigenvalues_one";
    }
    return "?";
}

Poly strip_trivial_factors(const Poly& p0, StripMode mode, std::vector<StrippedFactor>* factors) {
    Poly p = p0;
    std::vector<StrippedFactor> fs;
    if (mode == StripMode::eigenvalues_one) {
        unsigned j = 0;
        Poly q;
        while (p.degree() >= 1 && divide_exact(p, Poly::x_minus(1), q)) {
            p = q;
            ++j;
        }
        if (j) fs.push_back({"x-1", 1, j});
    } else if (mode == StripMode::roots_of_unity_and_zeros) {
        unsigned k = 0;
        while (p.degree() >= 1 && p.c[0] == 0) {
            p.c.erase(p.c.begin());
            ++k;
        }
        if (k) fs.push_back({"x", 0, k});
        const unsigned deg0 = unsigned(std::max(0, p.degree()));
        for (unsigned d = 1; d <= 2 * deg0 * deg0 && p.degree() >= 1; ++d) {
            if (euler_phi(d) > unsigned(p.degree())) continue;
            Poly phi = cyclotomic(d), q;
            unsigned mult = 0;
            while (p.degree() >= phi.degree() && divide_exact(p, phi, q)) {
                p = q;
                ++mult;
            }
            if (mult) fs.push_back({"Phi", d, mult});
        }
    }
    if (factors) *factors = std::move(fs);
    return p;
}

SpectrumReport compare_polys(const Poly& p1, const Poly& p2, StripMode mode) {
    SpectrumReport r;
    r.mode = mode;
    r.poly1 = p1;
    r.poly2 = p2;
    r.stripped1 = strip_trivial_factors(p1, mode, &r.factors1);
    r.stripped2 = strip_trivial_factors(p2, mode, &r.factors2);
    r.isospectral = r.stripped1 == r.stripped2;
    return r;
}

SpectrumReport isospectral_up_to(const IntMatrix& m1, const IntMatrix& m2, StripMode mode) {
    return compare_polys(char_poly(m1), char_poly(m2), mode);
}

IntMatrix double_cover_lift(const IntMatrix& a, const IntMatrix& b) {
    if (!a.square() || a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError("lift blocks must be square and of equal size");
    std::size_t k = a.rows();
    IntMatrix out(2 * k, 2 * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            out(i, j) = a(i, j);
            out(i, j + k) = b(i, j);
            out(i + k, j) = b(i, j);
            out(i + k, j + k) = a(i, j);
        }
    return out;
}

std::vector<mpf_class> eigenvector(const IntMatrix& m, const mpf_class& lambda) {
    const std::size_t n = m.rows();
    const auto prec = lambda.get_prec();
    mpf_class shift(lambda, prec), tiny(1, prec);
    for (unsigned i = 0; i < prec / 3; ++i) tiny /= 2;
    shift += lambda * tiny;
    std::vector<mpf_class> x(n, mpf_class(1, prec));
    for (int it = 0; it < 6; ++it) {
        std::vector<std::vector<mpf_class>> a(n, std::vector<mpf_class>(n + 1, mpf_class(0, prec)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
            a[i][i] -= shift;
            a[i][n] = x[i];
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            for (std::size_t r = c + 1; r < n; ++r)
                if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
            std::swap(a[piv], a[c]);
            if (a[c][c] == 0) a[c][c] = tiny * tiny;
            for (std::size_t r = c + 1; r < n; ++r) {
                mpf_class f(a[r][c] / a[c][c], prec);
                for (std::size_t j = c; j <= n; ++j) a[r][j] -= f * a[c][j];
            }
        }
        for (std::size_t c = n; c-- > 0;) {
            mpf_class s(a[c][n], prec);
            for (std::size_t j = c + 1; j < n; ++j) s -= a[c][j] * x[j];
            x[c] = s / a[c][c];
        }
        mpf_class norm(0, prec);
        for (const auto& e : x) norm += e * e;
        norm = sqrt(norm);
        for (auto& e : x) e /= norm;
    }
    mpf_class sum(0, prec);
    for (const auto& e : x) sum += e;
    if (sum < 0)
        for (auto& e : x) e = -e;
    return x;
}

}  // namespace dyn
