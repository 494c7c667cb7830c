#pragma once

#include <string>
#include <vector>

#include "dynnikov/errors.hpp"
#include "dynnikov/scalar.hpp"

namespace dyn {

// Point of S_n stored flat as (a_1..a_{n-2}, b_1..b_{n-2}).
template <class S>
struct DynnikovVector {
    int n = 3;
    std::vector<S> x;

    std::size_t k() const { return x.size() / 2; }
    S& a(std::size_t i) { return x[i - 1]; }
    S& b(std::size_t i) { return x[k() + i - 1]; }
    const S& a(std::size_t i) const { return x[i - 1]; }
    const S& b(std::size_t i) const { return x[k() + i - 1]; }
    bool operator==(const DynnikovVector&) const = default;
};

template <class S>
struct TriangleCoords {
    std::vector<S> alpha;  // 2n-4 entries
    std::vector<S> beta;   // n-1 entries
};

template <class S>
bool is_zero(const DynnikovVector<S>& v) {
    for (const auto& e : v.x)
        if (e != 0) return false;
    return true;
}

template <class S>
DynnikovVector<S> make_vector(int n, std::vector<S> a, std::vector<S> b) {
    if (n < 3) throw DomainError("strand count must be at least 3");
    if (a.size() != std::size_t(n - 2) || b.size() != std::size_t(n - 2))
        throw DomainError("coordinate vector must have n-2 entries in each of a and b");
    DynnikovVector<S> v{n, std::move(a)};
    v.x.insert(v.x.end(), b.begin(), b.end());
    if (is_zero(v)) throw DomainError("the zero vector is not a point of S_n");
    return v;
}

// Flat form: (a_1..a_{n-2}, b_1..b_{n-2}).
template <class S>
DynnikovVector<S> make_vector(int n, const std::vector<S>& flat) {
    if (flat.size() != std::size_t(2 * n - 4)) throw DomainError("coordinate vector must have 2n-4 entries");
    std::size_t k = std::size_t(n - 2);
    return make_vector<S>(n, std::vector<S>(flat.begin(), flat.begin() + long(k)),
                          std::vector<S>(flat.begin() + long(k), flat.end()));
}

template <class S>
DynnikovVector<S> from_triangle(const TriangleCoords<S>& t) {
    if (t.beta.size() < 2 || t.alpha.size() != 2 * (t.beta.size() - 1))
        throw DomainError("triangle coordinates need 2n-4 alphas and n-1 betas");
    for (const auto& e : t.alpha)
        if (e < 0) throw DomainError("arc measures must be nonnegative");
    for (const auto& e : t.beta)
        if (e < 0) throw DomainError("arc measures must be nonnegative");
    std::size_t k = t.beta.size() - 1;
    std::vector<S> a(k), b(k);
    for (std::size_t i = 0; i < k; ++i) {
        a[i] = (t.alpha[2 * i + 1] - t.alpha[2 * i]) / 2;
        b[i] = (t.beta[i] - t.beta[i + 1]) / 2;
    }
    DynnikovVector<S> v{int(k + 2), a};
    v.x.insert(v.x.end(), b.begin(), b.end());
    if (is_zero(v)) throw DomainError("triangle coordinates give the zero vector");
    return v;
}

template <class S>
S sup_norm(const std::vector<S>& x) {
    S m = x.empty() ? S(0) : scalar_traits<S>::zero_like(x[0]);
    for (const auto& e : x) m = smax(m, scalar_traits<S>::abs(e));
    return m;
}

template <class S>
DynnikovVector<S> scale(const DynnikovVector<S>& v, const S& lambda) {
    if (!(lambda > 0)) throw DomainError("scale factor must be positive");
    DynnikovVector<S> out = v;
    for (auto& e : out.x) e = e * lambda;
    return out;
}

// Divide by the sup norm (no sign change).
template <class S>
DynnikovVector<S> normalize(const DynnikovVector<S>& v) {
    S m = sup_norm(v.x);
    if (m == 0) throw DomainError("cannot normalize the zero vector");
    DynnikovVector<S> out = v;
    for (auto& e : out.x) e = e / m;
    return out;
}

// Sup-normalised, sign fixed so the first nonzero entry is positive.
template <class S>
DynnikovVector<S> canonical(const DynnikovVector<S>& v) {
    DynnikovVector<S> out = normalize(v);
    for (const auto& e : out.x) {
        if (e == 0) continue;
        if (e < 0)
            for (auto& f : out.x) f = -f;
        break;
    }
    return out;
}

// Distance between sup-normalised representatives, no sign quotient.
template <class S>
S positive_distance(const DynnikovVector<S>& v1, const DynnikovVector<S>& v2) {
    if (v1.x.size() != v2.x.size()) throw DomainError("dimension mismatch");
    auto p = normalize(v1), q = normalize(v2);
    S d = scalar_traits<S>::zero_like(p.x[0]);
    for (std::size_t i = 0; i < p.x.size(); ++i) d = smax(d, scalar_traits<S>::abs(p.x[i] - q.x[i]));
    return d;
}

template <class S>
S projective_distance(const DynnikovVector<S>& v1, const DynnikovVector<S>& v2) {
    if (v1.x.size() != v2.x.size()) throw DomainError("dimension mismatch");
    auto p = normalize(v1), q = normalize(v2);
    S plus = scalar_traits<S>::zero_like(p.x[0]), minus = plus;
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        plus = smax(plus, scalar_traits<S>::abs(p.x[i] - q.x[i]));
        minus = smax(minus, scalar_traits<S>::abs(p.x[i] + q.x[i]));
    }
    return smin(plus, minus);
}

template <class To, class From>
DynnikovVector<To> convert(const DynnikovVector<From>& v, const To& like) {
    DynnikovVector<To> out{v.n, {}};
    out.x.reserve(v.x.size());
    for (const auto& e : v.x) {
        To t = scalar_traits<To>::zero_like(like);
        t = e;
        out.x.push_back(t);
    }
    return out;
}

std::vector<double> to_doubles(const DynnikovVector<mpf_class>& v);
std::vector<double> to_doubles(const DynnikovVector<mpq_class>& v);

}  // namespace dyn
