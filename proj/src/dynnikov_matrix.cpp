#include "dynnikov/dynnikov_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "dynnikov/spectral.hpp"

namespace dyn {

void IterationOptions::validate() const {
    if (ladder.empty()) throw DomainError("precision ladder is empty");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (ladder[i] < 24) throw DomainError("precision below 24 bits");
        if (i && ladder[i] <= ladder[i - 1]) throw DomainError("precision ladder must be strictly increasing");
    }
    if (max_iters <= 0 || probe_radius <= 0 || axis_factor < 0 || random_factor < 0 || tol < 0)
        throw DomainError("iteration options must be positive");
}

namespace {
constexpr unsigned kEigenBits = 384;
constexpr double kEigenTol = 1e-50;
}  // namespace

double rung_tolerance(unsigned bits) { return std::pow(10.0, -std::max(12.0, bits / 8.0)); }

namespace {

std::vector<double> seed_vector(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-99, 99);
    const int k = n - 2;
    std::vector<double> x(std::size_t(2 * k));
    for (int i = 0; i < k; ++i) x[std::size_t(i)] = dist(rng);
    for (int i = 0; i < k; ++i) x[std::size_t(k + i)] = -1000 + dist(rng);
    return x;
}

struct RungResult {
    bool converged = false;
    std::vector<mpf_class> point;
    mpf_class lambda;
    int iterations = 0;
};

template <class S>
RungResult run_rung(const BraidWord& w, const std::vector<mpf_class>& start, const S& like, int max_iters,
                    double tol, unsigned out_bits) {
    DynnikovVector<S> v{w.strands(), {}};
    for (const auto& e : start) {
        S s = scalar_traits<S>::zero_like(like);
        if constexpr (std::is_same_v<S, double>) s = e.get_d();
        else s = e;
        v.x.push_back(s);
    }
    v = normalize(v);
    S tol_s = scalar_traits<S>::from_double(tol, like);
    S lambda = scalar_traits<S>::zero_like(like);
    RungResult r;
    for (int it = 1; it <= max_iters; ++it) {
        auto u = apply_braid(v, w);
        lambda = sup_norm(u.x);
        if (lambda == 0) throw NonConvergence("iterate collapsed to zero");
        for (auto& e : u.x) e = e / lambda;
        S d = scalar_traits<S>::zero_like(like);
        for (std::size_t i = 0; i < u.x.size(); ++i) d = smax(d, scalar_traits<S>::abs(u.x[i] - v.x[i]));
        v = std::move(u);
        r.iterations = it;
        if (d < tol_s) {
            r.converged = true;
            break;
        }
    }
    for (const auto& e : v.x) {
        mpf_class f(0, out_bits);
        f = e;
        r.point.push_back(f);
    }
    r.lambda = mpf_class(0, out_bits);
    r.lambda = lambda;
    return r;
}

}  // namespace

UnstableDirection find_unstable_direction(const BraidWord& w, const IterationOptions& opts) {
    opts.validate();
    std::vector<mpf_class> start;
    for (double d : seed_vector(w.strands(), opts.seed)) start.emplace_back(d, 64);

    bool have_prev = false;
    BranchSignature prev_sig;
    UnstableDirection best;
    bool have_best = false;
    int total = 0;
    for (std::size_t r = 0; r < opts.ladder.size(); ++r) {
        const unsigned bits = opts.ladder[r];
        const double tol = opts.tol > 0 ? opts.tol : rung_tolerance(bits);
        RungResult rr = bits <= 53 ? run_rung<double>(w, start, 0.0, opts.max_iters, tol, 64)
                                   : run_rung<mpf_class>(w, start, mpf_class(0, bits), opts.max_iters, tol, bits);
        total += rr.iterations;
        start = rr.point;
        if (!rr.converged) {
            have_prev = false;
            continue;
        }
        if (!(rr.lambda > 1 + 1e-9))
            throw NonConvergence("no expanding direction: growth factor " + to_string(rr.lambda, 12));
        DynnikovVector<mpf_class> p{w.strands(), rr.point};
        if (bits <= 53)
            for (auto& e : p.x) e.set_prec(64);
        auto tr = traced_apply(p, w, false);
        best = UnstableDirection{p, rr.lambda, total, std::max(bits, 64u), tol, tr.signature};
        have_best = true;
        if (have_prev && tr.signature.agrees_off_ties(prev_sig) && bits > 53) return best;
        prev_sig = tr.signature;
        have_prev = true;
    }
    if (!have_best)
        throw NonConvergence("projective iteration did not converge within " + std::to_string(opts.max_iters) +
                             " iterations at any precision");
    return best;
}

UnstableDirection stable_direction(const BraidWord& w, const IterationOptions& opts) {
    return find_unstable_direction(inverse(w), opts);
}

bool region_contains(const std::vector<std::vector<mpz_class>>& region, const std::vector<mpf_class>& p,
                     double tol) {
    for (const auto& c : region) {
        mpf_class s = evaluate_form(c, p);
        mpz_class l1 = 0;
        for (const auto& e : c) l1 += abs(e);
        mpf_class bound(l1, p[0].get_prec());
        bound *= -tol;
        if (s < bound) return false;
    }
    return true;
}

std::vector<DynnikovMatrix> dynnikov_matrices(const BraidWord& w, const IterationOptions& opts) {
    return dynnikov_matrices(w, find_unstable_direction(w, opts), opts);
}

std::vector<DynnikovMatrix> dynnikov_matrices(const BraidWord& w, const UnstableDirection& u,
                                              const IterationOptions& opts) {
    const unsigned bits = std::max(u.precision, opts.probe_bits);
    const std::size_t dim = u.point.x.size();
    std::vector<mpf_class> p;
    for (const auto& e : u.point.x) p.emplace_back(e, bits);
    const double contain_tol = std::max(1e-40, u.tolerance * 1e4);
    mpf_class lambda(u.lambda, bits);

    std::map<IntMatrix, DynnikovMatrix> found;
    auto probe = [&](const std::vector<mpf_class>& x) {
        DynnikovVector<mpf_class> v{w.strands(), x};
        auto tr = traced_apply(v, w, false);
        if (tr.has_tie) return;
        if (found.count(tr.matrix)) return;
        found.emplace(tr.matrix, DynnikovMatrix{tr.matrix, std::move(tr.region), std::move(tr.signature)});
    };

    double delta = opts.probe_radius;
    for (int attempt = 0; attempt < 5; ++attempt, delta *= 1e-3) {
        found.clear();
        probe(p);
        mpf_class dl(delta, bits);
        for (int f = 0; f < opts.axis_factor; ++f)
            for (std::size_t j = 0; j < dim; ++j)
                for (int s : {1, -1}) {
                    auto x = p;
                    mpf_class step(dl, bits);
                    step *= s * (f + 1);
                    x[j] += step;
                    probe(x);
                }
        std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ULL + 17);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (std::size_t r = 0; r < std::size_t(opts.random_factor) * dim; ++r) {
            std::vector<double> dir(dim);
            double m = 0;
            for (auto& e : dir) {
                e = unif(rng);
                m = std::max(m, std::fabs(e));
            }
            auto x = p;
            for (std::size_t j = 0; j < dim; ++j) {
                mpf_class step(dir[j] / m, bits);
                step *= dl;
                x[j] += step;
            }
            probe(x);
        }

        std::vector<DynnikovMatrix> out;
        std::vector<mpf_class> radii;
        bool escaped = false;
        for (auto& [m, dm] : found) {
            if (!region_contains(dm.region, p, contain_tol)) continue;
            auto mp = apply_matrix(m, p);
            mpz_class rowmax = 0;
            for (std::size_t i = 0; i < m.rows(); ++i) {
                mpz_class s = 0;
                for (std::size_t j = 0; j < m.cols(); ++j) s += abs(m(i, j));
                rowmax = std::max(rowmax, s);
            }
            mpf_class scale(rowmax, bits);
            for (std::size_t i = 0; i < dim; ++i) {
                mpf_class err = mp[i] - lambda * p[i];
                if (abs(err) > scale * 1e-9)
                    throw VerificationFailed("matrix " + format_matrix(m) +
                                             " does not fix the unstable direction");
            }
            // The candidate's own eigenvector must sit in its closed region; a neighbouring
            // region that merely grazes p fixes a different direction.
            mpf_class rho = largest_real_root(char_poly(m), kEigenBits);
            auto v = eigenvector(m, rho);
            mpf_class dot(0, kEigenBits);
            for (std::size_t i = 0; i < dim; ++i) dot += v[i] * p[i];
            if (dot < 0)
                for (auto& e : v) e = -e;
            if (!region_contains(dm.region, v, kEigenTol)) {
                escaped = true;
                continue;
            }
            out.push_back(dm);
            radii.push_back(rho);
        }
        if (out.empty()) {
            if (escaped) throw VerificationFailed("every candidate matrix's eigenvector escapes its region");
            continue;
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (abs(radii[i] - lambda) / lambda > 1e-9)
                throw VerificationFailed("spectral radius of " + format_matrix(out[i].matrix) +
                                         " disagrees with the growth factor");
            if (abs(radii[i] - radii[0]) / radii[0] > 1e-12)
                throw VerificationFailed("Dynnikov matrices disagree in spectral radius");
        }
        return out;
    }
    throw VerificationFailed("no tie-free probe produced a region containing the unstable direction");
}

namespace {

// Point on the boundary of [-1,1]^2 for parameter s in [0, 8).
std::vector<mpq_class> square_point(const mpq_class& s0) {
    mpq_class s = s0;
    if (s < 2) return {mpq_class(1), s - 1};
    if (s < 4) return {1 - (s - 2), mpq_class(1)};
    if (s < 6) return {mpq_class(-1), 1 - (s - 4)};
    return {-1 + (s - 6), mpq_class(-1)};
}

double angle_of(const mpq_class& s) {
    auto pt = square_point(s);
    double a = std::atan2(pt[1].get_d(), pt[0].get_d());
    if (a < 0) a += 2 * std::numbers::pi;
    // Bisection cuts approach a wall from one side; a wall at angle 0 reads as 2pi - eps.
    if (a > 2 * std::numbers::pi - 1e-12) a = 0;
    return a;
}

IntMatrix matrix_at(const BraidWord& w, const mpq_class& s) {
    DynnikovVector<mpq_class> v{w.strands(), square_point(s)};
    return traced_apply(v, w, false).matrix;
}

void refine(const BraidWord& w, const mpq_class& l, const mpq_class& r, const IntMatrix& ml, const IntMatrix& mr,
            int depth, std::vector<std::pair<mpq_class, IntMatrix>>& cuts) {
    if (ml == mr) return;
    mpq_class mid = (l + r) / 2;
    if (depth == 0) {
        cuts.emplace_back(mid, mr);
        return;
    }
    IntMatrix mm = matrix_at(w, mid);
    refine(w, l, mid, ml, mm, depth - 1, cuts);
    refine(w, mid, r, mm, mr, depth - 1, cuts);
}

}  // namespace

std::vector<Arc> enumerate_regions_n3(const BraidWord& w, int grid, int depth) {
    if (w.strands() != 3) throw DomainError("region enumeration is only available for 3 strands");
    if (grid < 8) throw DomainError("grid too coarse");
    std::vector<mpq_class> s;
    for (int j = 0; j < grid; ++j) s.push_back(mpq_class(8 * (7 * j + 1), 7 * grid));
    std::vector<IntMatrix> ms;
    for (const auto& e : s) ms.push_back(matrix_at(w, e));

    std::vector<std::pair<mpq_class, IntMatrix>> cuts;
    for (int j = 0; j < grid; ++j) {
        int nj = (j + 1) % grid;
        mpq_class r = nj ? s[std::size_t(nj)] : s[0] + 8;
        refine(w, s[std::size_t(j)], r, ms[std::size_t(j)], ms[std::size_t(nj)], depth, cuts);
    }
    if (cuts.empty()) return {Arc{0, 2 * std::numbers::pi, ms[0], true}};

    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const auto& [start, m] = cuts[i];
        const mpq_class& end = cuts[(i + 1) % cuts.size()].first;
        mpq_class st = start >= 8 ? mpq_class(start - 8) : start;
        mpq_class en = end >= 8 ? mpq_class(end - 8) : end;
        if (!arcs.empty() && arcs.back().matrix == m) {
            arcs.back().end = angle_of(en);
            continue;
        }
        arcs.push_back(Arc{angle_of(st), angle_of(en), m, false});
    }
    if (arcs.size() > 1 && arcs.front().matrix == arcs.back().matrix) {
        arcs.front().start = arcs.back().start;
        arcs.pop_back();
    }
    if (arcs.size() == 1) arcs[0].full_circle = true;
    return arcs;
}

IntMatrix matrix_at_direction(const BraidWord& w, double angle) {
    if (w.strands() != 3) throw DomainError("directions are only parametrised for 3 strands");
    DynnikovVector<mpq_class> v{3, {mpq_class(std::cos(angle)), mpq_class(std::sin(angle))}};
    return traced_apply(v, w, false).matrix;
}

}  // namespace dyn
