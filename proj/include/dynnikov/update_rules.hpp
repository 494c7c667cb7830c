#pragma once

#include <cstdint>
#include <vector>

#include "dynnikov/braid.hpp"
#include "dynnikov/coords.hpp"
#include "dynnikov/matrix.hpp"

namespace dyn {

struct NodeRecord {
    std::uint8_t arity = 0;
    std::uint8_t winner = 0;
    bool tie = false;
    bool operator==(const NodeRecord&) const = default;
};

struct BranchSignature {
    std::vector<std::vector<NodeRecord>> letters;

    bool has_tie() const {
        for (const auto& l : letters)
            for (const auto& n : l)
                if (n.tie) return true;
        return false;
    }
    // Same winners at every node where neither side reports a tie.
    bool agrees_off_ties(const BranchSignature& o) const {
        if (letters.size() != o.letters.size()) return false;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            if (letters[i].size() != o.letters[i].size()) return false;
            for (std::size_t j = 0; j < letters[i].size(); ++j) {
                const auto &p = letters[i][j], &q = o.letters[i][j];
                if (!p.tie && !q.tie && p.winner != q.winner) return false;
            }
        }
        return true;
    }
    bool operator==(const BranchSignature&) const = default;
};

namespace detail {

// The update formulas, written once over a value type T and a max provider.
// x = (a_1..a_k, b_1..b_k), k = n-2. Letter index i, 1-based.
template <class T, class Ops>
void apply_letter(std::vector<T>& x, int n, const Letter& l, Ops& ops) {
    const std::size_t k = std::size_t(n - 2);
    const T zero = ops.zero();
    if (l.index == 1) {
        T& a = x[0];
        T& b = x[k];
        if (l.sign > 0) {
            T m = ops.max3(a, zero, b);
            T pb = ops.max2(zero, b);
            T na = a + b - m;
            T nb = pb - a;
            a = na;
            b = nb;
        } else {
            T pb = ops.max2(zero, b);
            T s = a + pb;
            T m = ops.max2(zero, s);
            T na = m - b;
            a = na;
            b = s;
        }
        return;
    }
    if (l.index == n - 1) {
        T& a = x[k - 1];
        T& b = x[2 * k - 1];
        if (l.sign > 0) {
            T pb = ops.max2(zero, b);
            T s = a + pb;
            T na = ops.max2(s, b);
            T nb = b - s;
            a = na;
            b = nb;
        } else {
            T ab = a + b;
            T m = ops.max3(ab, zero, b);
            T pb = ops.max2(zero, b);
            T na = a - m;
            T nb = ab - pb;
            a = na;
            b = nb;
        }
        return;
    }
    const std::size_t p = std::size_t(l.index) - 2, q = std::size_t(l.index) - 1;
    T& ap = x[p];
    T& aq = x[q];
    T& bp = x[k + p];
    T& bq = x[k + q];
    T P = ops.max2(zero, bp);
    T Q = ops.max2(zero, bq);
    if (l.sign > 0) {
        T apP = ap + P;
        T aqbp = aq + bp;
        T X = ops.max2(apP, aqbp);
        T apPQ = apP + Q;
        T Y = ops.max2(apPQ, aqbp);
        T apQ = ap + Q;
        T Z = ops.max2(apQ, aq);
        T nap = X;
        T nbp = aqbp + bq - Y;
        T naq = ap + aq + bq - Z;
        T nbq = Y - aq;
        ap = nap;
        bp = nbp;
        aq = naq;
        bq = nbq;
    } else {
        T apbp = ap + bp;
        T aqP = aq + P;
        T X = ops.max2(apbp, aqP);
        T aqPQ = aqP + Q;
        T Y = ops.max2(apbp, aqPQ);
        T aqQ = aq + Q;
        T Z = ops.max2(ap, aqQ);
        T nap = ap + aq - X;
        T nbp = apbp + bq - Y;
        T naq = Z - bq;
        T nbq = Y - ap;
        ap = nap;
        bp = nbp;
        aq = naq;
        bq = nbq;
    }
}

template <class S>
struct PlainOps {
    S z;
    S zero() const { return z; }
    S max2(const S& x, const S& y) { return smax(x, y); }
    S max3(const S& x, const S& y, const S& w) { return smax(smax(x, y), w); }
};

// Value plus its linear form in the current letter's input coordinates.
template <class S>
struct Tracked {
    S v;
    std::vector<long> f;
};

template <class S>
Tracked<S> operator+(const Tracked<S>& x, const Tracked<S>& y) {
    Tracked<S> r{x.v + y.v, x.f};
    for (std::size_t i = 0; i < r.f.size(); ++i) r.f[i] += y.f[i];
    return r;
}

template <class S>
Tracked<S> operator-(const Tracked<S>& x, const Tracked<S>& y) {
    Tracked<S> r{x.v - y.v, x.f};
    for (std::size_t i = 0; i < r.f.size(); ++i) r.f[i] -= y.f[i];
    return r;
}

template <class S>
struct TraceOps {
    Tracked<S> z;
    S tol;  // tie threshold for this letter (0 for exact)
    std::vector<NodeRecord> nodes;
    std::vector<std::vector<long>> constraints;  // local forms c with c.x >= 0

    Tracked<S> zero() const { return z; }

    Tracked<S> pick(std::initializer_list<const Tracked<S>*> args) {
        std::uint8_t w = 0, i = 0;
        const Tracked<S>* best = *args.begin();
        for (auto* a : args) {
            if (best->v < a->v) {
                best = a;
                w = i;
            }
            ++i;
        }
        bool tie = false;
        i = 0;
        for (auto* a : args) {
            if (i != w) {
                S gap = best->v - a->v;
                if (scalar_traits<S>::exact ? gap == 0 : !(gap > tol)) tie = true;
                std::vector<long> c = best->f;
                bool nonzero = false;
                for (std::size_t j = 0; j < c.size(); ++j) {
                    c[j] -= a->f[j];
                    nonzero |= c[j] != 0;
                }
                if (nonzero) constraints.push_back(std::move(c));
            }
            ++i;
        }
        nodes.push_back({std::uint8_t(args.size()), w, tie});
        return *best;
    }
    Tracked<S> max2(const Tracked<S>& x, const Tracked<S>& y) { return pick({&x, &y}); }
    Tracked<S> max3(const Tracked<S>& x, const Tracked<S>& y, const Tracked<S>& w) {
        return pick({&x, &y, &w});
    }
};

template <class S>
S tie_tolerance(const std::vector<S>& x) {
    if constexpr (scalar_traits<S>::exact) {
        return S(0);
    } else {
        S m = sup_norm(x);
        S t = m;
        unsigned bits = scalar_traits<S>::bits(x[0]);
        for (unsigned i = 0; i < bits / 2; ++i) t = t / 2;
        return t;
    }
}

}  // namespace detail

template <class S>
void check_letter(const DynnikovVector<S>& v, const Letter& l) {
    if (l.index < 1 || l.index > v.n - 1) throw DomainError("generator index out of range");
}

template <class S>
DynnikovVector<S> apply_generator(const DynnikovVector<S>& v, int i, int sign) {
    Letter l{i, sign};
    check_letter(v, l);
    if (sign != 1 && sign != -1) throw DomainError("letter sign must be +1 or -1");
    DynnikovVector<S> out = v;
    detail::PlainOps<S> ops{scalar_traits<S>::zero_like(v.x[0])};
    detail::apply_letter(out.x, v.n, l, ops);
    return out;
}

template <class S>
DynnikovVector<S> apply_braid(const DynnikovVector<S>& v, const BraidWord& w) {
    if (w.strands() != v.n) throw DomainError("strand mismatch between braid and vector");
    DynnikovVector<S> out = v;
    detail::PlainOps<S> ops{scalar_traits<S>::zero_like(v.x[0])};
    for (const auto& l : w.letters()) detail::apply_letter(out.x, v.n, l, ops);
    return out;
}

template <class S>
struct TraceResult {
    DynnikovVector<S> value;
    BranchSignature signature;
    IntMatrix matrix;                               // value = matrix * input on the region
    std::vector<std::vector<mpz_class>> region;     // rows c with c . x >= 0
    std::vector<IntMatrix> elementary;              // per letter, in action order
    bool has_tie = false;
};

std::vector<mpz_class> pull_back(const std::vector<long>& c, const IntMatrix& m);
void add_constraint(std::vector<std::vector<mpz_class>>& region, std::vector<mpz_class> c);

template <class S>
TraceResult<S> traced_apply(const DynnikovVector<S>& v, const BraidWord& w, bool keep_elementary = true) {
    if (w.strands() != v.n) throw DomainError("strand mismatch between braid and vector");
    const std::size_t d = v.x.size();
    TraceResult<S> res;
    res.matrix = IntMatrix::identity(d);
    std::vector<S> cur = v.x;
    const S zero = scalar_traits<S>::zero_like(v.x[0]);
    for (const auto& l : w.letters()) {
        check_letter(v, l);
        std::vector<detail::Tracked<S>> x(d);
        for (std::size_t i = 0; i < d; ++i) {
            x[i].v = cur[i];
            x[i].f.assign(d, 0);
            x[i].f[i] = 1;
        }
        detail::TraceOps<S> ops{{zero, std::vector<long>(d, 0)}, detail::tie_tolerance(cur), {}, {}};
        detail::apply_letter(x, v.n, l, ops);
        IntMatrix e(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            cur[i] = x[i].v;
            for (std::size_t j = 0; j < d; ++j) e(i, j) = x[i].f[j];
        }
        for (const auto& c : ops.constraints) add_constraint(res.region, pull_back(c, res.matrix));
        for (const auto& n : ops.nodes) res.has_tie |= n.tie;
        res.signature.letters.push_back(std::move(ops.nodes));
        res.matrix = e * res.matrix;
        if (keep_elementary) res.elementary.push_back(std::move(e));
    }
    res.value = DynnikovVector<S>{v.n, std::move(cur)};
    return res;
}

// c . x for an integer row and a scalar vector.
template <class S>
S evaluate_form(const std::vector<mpz_class>& c, const std::vector<S>& x) {
    S s = scalar_traits<S>::zero_like(x[0]);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        S ci = scalar_traits<S>::zero_like(x[0]);
        ci = c[i];
        s = s + ci * x[i];
    }
    return s;
}

template <class S>
std::vector<S> apply_matrix(const IntMatrix& m, const std::vector<S>& x) {
    std::vector<S> out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(evaluate_form(m.row(i), x));
    return out;
}

}  // namespace dyn
