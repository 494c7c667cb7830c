// Shared oracles, generators and reference data for the unit tests and the acceptance binary.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dynnikov/braid.hpp"
#include "dynnikov/coords.hpp"
#include "dynnikov/json_io.hpp"
#include "dynnikov/matrix.hpp"
#include "dynnikov/polynomial.hpp"
#include "dynnikov/traintrack.hpp"

namespace testing_support {

using namespace dyn;

inline std::string fixture(const std::string& name) { return std::string(DYNNIKOV_FIXTURES) + "/" + name; }

// ---- reference braids and matrices ----

inline const char* kThreeStrand = "1 -2";
inline const char* kFiveStrand = "1 2 3 -4";
inline const char* kB4 = "1 -2 3 3 3 2 1 -2";
inline const char* kGamma = "1 1 2 2 1 2 3 3 2 1 1 1 1 2 1 1 3 3 2 1";

inline BraidWord long_braid() {
    return parse_braid(read_text_file(fixture("long_braid.txt")), 4);
}

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    IntMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline IntMatrix five_strand_d1() {
    return int_matrix({{-1, 1, 0, 0, 0, 0},
                       {0, 0, 0, 1, 1, 0},
                       {0, 0, 2, -1, -1, 1},
                       {0, 0, 0, 0, 1, 0},
                       {-1, 0, 1, -1, -1, 1},
                       {0, 0, 1, 0, 0, 1}});
}

inline IntMatrix five_strand_d2() {
    return int_matrix({{0, 0, 0, 1, 0, 0},
                       {0, 0, 0, 1, 1, 0},
                       {0, 0, 2, -1, -1, 1},
                       {-1, 1, 0, -1, 1, 0},
                       {0, -1, 1, 0, -1, 1},
                       {0, 0, 1, 0, 0, 1}});
}

inline IntMatrix b4_d() { return int_matrix({{5, -2, 3, 1}, {3, 0, 1, -2}, {1, -1, 1, 1}, {1, 1, 0, -2}}); }

inline std::vector<IntMatrix> circle_matrices() {
    return {int_matrix({{1, -1}, {1, 0}}),  int_matrix({{1, -1}, {-1, 2}}), int_matrix({{0, 1}, {-1, 2}}),
            int_matrix({{2, -1}, {1, 0}}),  int_matrix({{0, 1}, {-1, 1}}),  int_matrix({{2, 1}, {1, 1}})};
}

inline IntMatrix long_braid_matrix() {
    IntMatrix m(4, 4);
    const char* e[4][4] = {{"-68900596045753", "200002959211464", "146825523685804", "-943752747512"},
                           {"-181490417757959", "526825930446403", "386751743244292", "-2485930314639"},
                           {"-188609831321041", "547491989409364", "401923043417627", "-2583447121425"},
                           {"76020009608848", "-220669018174468", "-161996823859176", "1041269554295"}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = mpz_class(e[i][j]);
    return m;
}

// ---- random data ----

inline mpq_class random_rational(std::mt19937_64& rng, long lo, long hi, long max_den = 7) {
    std::uniform_int_distribution<long> num(lo * max_den, hi * max_den), den(1, max_den);
    long q = den(rng);
    mpq_class r(num(rng) * q / max_den, q);
    r.canonicalize();
    return r;
}

inline DynnikovVector<mpq_class> random_vector(std::mt19937_64& rng, int n, long range = 20) {
    for (;;) {
        std::vector<mpq_class> flat;
        for (int i = 0; i < 2 * n - 4; ++i) flat.push_back(random_rational(rng, -range, range));
        bool zero = std::all_of(flat.begin(), flat.end(), [](const mpq_class& q) { return q == 0; });
        if (!zero) return make_vector<mpq_class>(n, flat);
    }
}

inline BraidWord random_braid(std::mt19937_64& rng, int n, int len) {
    std::uniform_int_distribution<int> idx(1, n - 1), sg(0, 1);
    std::vector<Letter> ls;
    for (int i = 0; i < len; ++i) ls.push_back({idx(rng), sg(rng) ? 1 : -1});
    return BraidWord(n, ls);
}

inline IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
    return m;
}

// ---- oracles ----

// det(xI - M) by Laplace expansion along the first row of a polynomial matrix.
inline Poly laplace_det(const std::vector<std::vector<Poly>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    Poly total;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j].is_zero()) continue;
        std::vector<std::vector<Poly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(std::move(row));
        }
        Poly term = a[0][j] * laplace_det(minor);
        total = (j % 2 == 0) ? total + term : total - term;
    }
    return total;
}

inline Poly cofactor_char_poly(const IntMatrix& m) {
    std::vector<std::vector<Poly>> a(m.rows(), std::vector<Poly>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Poly e(std::vector<mpz_class>{-m(i, j)});
            a[i][j] = i == j ? e + Poly::monomial(1) : e;
        }
    return laplace_det(a);
}

// Branch-count vector of the switch equations: rows are switches.
inline RatMatrix switch_matrix(const TrainTrack& t) {
    RatMatrix a(t.switches.size(), t.branches.size());
    for (std::size_t s = 0; s < t.switches.size(); ++s) {
        for (const auto& h : t.switches[s].side(Side::A)) a(s, std::size_t(h.branch)) += 1;
        for (const auto& h : t.switches[s].side(Side::B)) a(s, std::size_t(h.branch)) -= 1;
    }
    return a;
}

inline bool all_positive(const std::vector<mpq_class>& v) {
    return std::all_of(v.begin(), v.end(), [](const mpq_class& q) { return q > 0; });
}

inline std::vector<mpq_class> apply(const RatMatrix& m, const std::vector<mpq_class>& v) {
    std::vector<mpq_class> out(m.rows(), mpq_class(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

// Rejection sampling of positive measures through the parameter branches.
inline std::vector<mpq_class> random_parameter_measure(const TrainTrack& t, std::mt19937_64& rng, long range = 30) {
    std::uniform_int_distribution<long> d(1, range);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<mpq_class> p;
        for (std::size_t i = 0; i < t.parameter_branches().size(); ++i) {
            mpq_class q(d(rng), d(rng) % 3 + 1);
            q.canonicalize();
            p.push_back(q);
        }
        auto mu = measure_from_parameters(t, p);
        if (all_positive(mu)) return mu;
    }
    throw std::runtime_error("no positive measure found");
}

// ---- generated tracks ----
//
// Nested loops hung from switches. A loop rooted at switch r leaves and re-enters r on one side,
// passing through bead switches; each bead carries a pendant loop, hung towards the inside of
// its parent loop (or, for the top loop, towards the exterior). The region inside a loop has one
// cusp at its root and one per inward bead.

struct PolygonSpec {
    int vertices = 1;
    bool punctured = true;
    auto operator<=>(const PolygonSpec&) const = default;
};

struct GeneratedTrack {
    TrainTrack track;
    std::vector<PolygonSpec> regions;                             // every region, sorted
    std::function<std::vector<mpq_class>(std::mt19937_64&)> sample;  // random positive measure
};

namespace gen {

struct Node {
    bool punctured = true;
    std::vector<Node> children;
};

struct Builder {
    std::vector<Switch> sw;
    std::vector<Branch> br;
    std::vector<std::pair<std::multiset<int>, bool>> regions;  // cusp switches, punctured

    int add_switch() {
        sw.push_back(Switch{"s" + std::to_string(sw.size()), {}});
        return int(sw.size()) - 1;
    }
    int add_branch() {
        br.push_back(Branch{"e" + std::to_string(br.size()), true, {}});
        return int(br.size()) - 1;
    }

    struct Loop {
        std::vector<int> segments;
        std::vector<int> beads;
        std::vector<Loop> children;
    };

    // outward: children hang outside this loop, so its region has the root cusp only.
    Loop build(int root, Side side, const Node& node, bool outward, std::multiset<int>* outer) {
        Loop l;
        int first = add_branch();
        l.segments.push_back(first);
        sw[std::size_t(root)].side(side).push_back({first, End::From});
        std::multiset<int> cusps{root};
        for (const auto& child : node.children) {
            int t = add_switch();
            l.beads.push_back(t);
            sw[std::size_t(t)].side(Side::A).push_back({l.segments.back(), End::To});
            int next = add_branch();
            if (outward) {
                l.children.push_back(build(t, Side::B, child, false, nullptr));
                sw[std::size_t(t)].side(Side::B).push_back({next, End::From});
                if (outer) outer->insert(t);
            } else {
                sw[std::size_t(t)].side(Side::B).push_back({next, End::From});
                l.children.push_back(build(t, Side::B, child, false, nullptr));
                cusps.insert(t);
            }
            l.segments.push_back(next);
        }
        sw[std::size_t(root)].side(side).push_back({l.segments.back(), End::To});
        regions.push_back({cusps, node.punctured});
        return l;
    }
};

// Segment weights: the last segment is free, each bead adds both ends of its pendant.
inline std::pair<mpq_class, mpq_class> weigh(const Builder::Loop& l, std::vector<mpq_class>& mu,
                                             std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(1, 12);
    std::size_t b = l.beads.size();
    mpq_class w(d(rng), d(rng) % 4 + 1);
    w.canonicalize();
    mu[std::size_t(l.segments[b])] = w;
    for (std::size_t i = b; i-- > 0;) {
        auto [f, e] = weigh(l.children[i], mu, rng);
        mu[std::size_t(l.segments[i])] = mu[std::size_t(l.segments[i + 1])] + f + e;
    }
    return {mu[std::size_t(l.segments.front())], mu[std::size_t(l.segments.back())]};
}

}  // namespace gen

// Realise a multiset of regions (together with punctured monogons as filler).
// The first punctured entry, if any, becomes the exterior region.
inline GeneratedTrack generate_track(std::vector<PolygonSpec> targets) {
    using gen::Node;
    for (const auto& p : targets)
        if (p.vertices < 1 || (!p.punctured && p.vertices < 3)) throw DomainError("unrealisable polygon");
    PolygonSpec exterior{1, true};
    auto ext = std::find_if(targets.begin(), targets.end(), [](const PolygonSpec& p) { return p.punctured; });
    if (ext != targets.end()) {
        exterior = *ext;
        targets.erase(ext);
    }
    std::size_t next = 0;
    std::function<Node()> make = [&]() -> Node {
        if (next >= targets.size()) return Node{true, {}};
        PolygonSpec p = targets[next++];
        Node n{p.punctured, {}};
        for (int i = 1; i < p.vertices; ++i) n.children.push_back(make());
        return n;
    };
    Node top{true, {}};
    for (int i = 0; i < exterior.vertices; ++i) top.children.push_back(make());
    while (next < targets.size()) top.children.front().children.push_back(make());  // unreachable in practice

    gen::Builder b;
    int r0 = b.add_switch();
    auto x = b.build(r0, Side::A, Node{true, {}}, false, nullptr);
    std::multiset<int> outer;
    auto y = b.build(r0, Side::B, top, true, &outer);
    b.regions.push_back({outer, true});

    TrainTrack t;
    t.switches = b.sw;
    t.branches = b.br;
    locate_ends(t.switches, t.branches);
    auto faces = trace_faces(t.switches, t.branches);
    int punctured = 0;
    for (const auto& f : faces) {
        std::multiset<int> cs;
        for (const auto& c : f.cusps) cs.insert(c.sw);
        auto it = std::find_if(b.regions.begin(), b.regions.end(), [&](const auto& r) { return r.first == cs; });
        if (it == b.regions.end()) throw std::logic_error("generated region not recognised");
        if (it->second) {
            ++punctured;
            const Step& s = f.steps.front();
            t.puncture_markers.insert(BranchSide{s.branch, s.dir > 0});
        }
    }
    t.n = punctured - 1;
    t.rebuild();

    GeneratedTrack g;
    g.track = t;
    for (const auto& f : t.faces) g.regions.push_back({f.vertices(), f.punctured});
    std::sort(g.regions.begin(), g.regions.end());
    std::size_t nb = t.branches.size();
    g.sample = [x, y, nb](std::mt19937_64& rng) {
        std::vector<mpq_class> mu(nb);
        auto [f, e] = gen::weigh(y, mu, rng);
        mpq_class half = (f + e) / 2;
        mu[std::size_t(x.segments.front())] = half;
        return mu;
    };
    return g;
}

// Every multiset of incomplete regions with at most max_total vertices in total.
inline std::vector<std::vector<PolygonSpec>> incomplete_multisets(int max_total) {
    std::vector<PolygonSpec> kinds;
    for (int v = 2; v <= max_total; ++v) kinds.push_back({v, true});
    for (int v = 4; v <= max_total; ++v) kinds.push_back({v, false});
    std::vector<std::vector<PolygonSpec>> out;
    std::vector<PolygonSpec> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int budget) {
        out.push_back(cur);
        for (std::size_t k = from; k < kinds.size(); ++k) {
            if (kinds[k].vertices > budget) continue;
            cur.push_back(kinds[k]);
            rec(k, budget - kinds[k].vertices);
            cur.pop_back();
        }
    };
    rec(0, max_total);
    return out;
}

// Catalan product over regions, computed independently of the library.
inline mpz_class catalan_product(const std::vector<PolygonSpec>& regions) {
    auto cat = [](unsigned k) {
        mpz_class c = 1;
        for (unsigned i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
        return c;
    };
    mpz_class total = 1;
    for (const auto& r : regions) {
        if (r.punctured) total *= r.vertices * cat(unsigned(r.vertices - 1));
        else total *= cat(unsigned(r.vertices - 2));
    }
    return total;
}

}  // namespace testing_support
