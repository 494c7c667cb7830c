#include <fstream>
#include <functional>

#include "dynnikov/spectral.hpp"
#include "dynnikov/traintrack.hpp"

namespace dyn {

using nlohmann::json;

namespace {

// Switch conditions followed by "branch p = value" rows.
RatMatrix balance_system(const TrainTrack& t, const std::vector<int>& params) {
    const std::size_t e = t.branches.size();
    RatMatrix a(t.switches.size() + params.size(), e);
    for (std::size_t s = 0; s < t.switches.size(); ++s) {
        for (const auto& h : t.switches[s].side(Side::A)) a(s, std::size_t(h.branch)) += 1;
        for (const auto& h : t.switches[s].side(Side::B)) a(s, std::size_t(h.branch)) -= 1;
    }
    for (std::size_t i = 0; i < params.size(); ++i) a(t.switches.size() + i, std::size_t(params[i])) = 1;
    return a;
}

}  // namespace

std::vector<mpq_class> measure_from_parameters(const TrainTrack& t, const std::vector<mpq_class>& values) {
    auto params = t.parameter_branches();
    if (values.size() != params.size())
        throw DomainError("expected " + std::to_string(params.size()) + " parameter values");
    RatMatrix a = balance_system(t, params);
    std::vector<mpq_class> rhs(a.rows(), mpq_class(0));
    for (std::size_t i = 0; i < params.size(); ++i) rhs[t.switches.size() + i] = values[i];
    try {
        return solve_unique(a, rhs);
    } catch (const DomainError&) {
        throw DomainError("parameter branches do not determine the measure");
    }
}

RatMatrix parameter_basis(const TrainTrack& t) {
    auto params = t.parameter_branches();
    RatMatrix basis(t.branches.size(), params.size());
    for (std::size_t j = 0; j < params.size(); ++j) {
        std::vector<mpq_class> unit(params.size(), mpq_class(0));
        unit[j] = 1;
        auto mu = measure_from_parameters(t, unit);
        for (std::size_t i = 0; i < mu.size(); ++i) basis(i, j) = mu[i];
    }
    return basis;
}

std::vector<mpq_class> parameters_of(const TrainTrack& t, const std::vector<mpq_class>& mu) {
    if (mu.size() != t.branches.size()) throw DomainError("measure does not cover every branch");
    std::vector<mpq_class> v;
    for (int p : t.parameter_branches()) v.push_back(mu[std::size_t(p)]);
    return v;
}

Lin operator+(const Lin& x, const Lin& y) {
    Lin r{x.v + y.v, x.g.size() >= y.g.size() ? x.g : y.g};
    const auto& s = x.g.size() >= y.g.size() ? y.g : x.g;
    for (std::size_t i = 0; i < s.size(); ++i) r.g[i] += s[i];
    return r;
}

Lin operator-(const Lin& x, const Lin& y) { return x + (-1L) * y; }

Lin operator*(long k, const Lin& x) {
    Lin r{k * x.v, x.g};
    for (auto& e : r.g) e *= k;
    return r;
}

namespace {

bool same_gradient(const Lin& x, const Lin& y) {
    std::size_t n = std::max(x.g.size(), y.g.size());
    for (std::size_t i = 0; i < n; ++i) {
        mpq_class a = i < x.g.size() ? x.g[i] : mpq_class(0);
        mpq_class b = i < y.g.size() ? y.g[i] : mpq_class(0);
        if (a != b) return false;
    }
    return true;
}

}  // namespace

Lin LinOps::min(const Lin& x, const Lin& y) const {
    if (x.v < y.v) return x;
    if (y.v < x.v) return y;
    if (!same_gradient(x, y)) throw TieAtBasepoint("measure lies on a linearity wall of a train-path measure");
    return x;
}

Lin LinOps::max(const Lin& x, const Lin& y) const {
    if (x.v > y.v) return x;
    if (y.v > x.v) return y;
    if (!same_gradient(x, y)) throw TieAtBasepoint("measure lies on a linearity wall of a train-path measure");
    return x;
}

mpq_class path_measure(const TrainTrack& t, const TrainPath& p, const std::vector<mpq_class>& mu) {
    if (mu.size() != t.branches.size()) throw DomainError("measure does not cover every branch");
    return path_measure_generic(t, p, mu, mpq_class(0), ExactOps{});
}

namespace {

template <class T, class Ops>
T arc_measure_generic(const TrainTrack& t, const std::string& arc, const std::vector<T>& mu, const T& zero,
                      const Ops& ops) {
    auto it = t.annotations.find(arc);
    if (it == t.annotations.end()) throw DomainError("no annotation for arc " + arc);
    T total = zero;
    for (const auto& [b, c] : it->second.counts) total = total + c * mu[std::size_t(b)];
    for (const auto& p : it->second.paths) total = total - 2L * path_measure_generic(t, p, mu, zero, ops);
    return total;
}

template <class T, class Ops>
std::vector<T> dynnikov_from_arcs(const TrainTrack& t, const std::vector<T>& mu, const T& zero, const Ops& ops,
                                  const std::function<T(const T&)>& half) {
    const int k = t.n - 2;
    std::vector<T> alpha, beta;
    for (int i = 1; i <= 2 * k; ++i) alpha.push_back(arc_measure_generic(t, "alpha_" + std::to_string(i), mu, zero, ops));
    for (int i = 1; i <= k + 1; ++i) beta.push_back(arc_measure_generic(t, "beta_" + std::to_string(i), mu, zero, ops));
    std::vector<T> x;
    for (int i = 0; i < k; ++i) x.push_back(half(alpha[std::size_t(2 * i + 1)] - alpha[std::size_t(2 * i)]));
    for (int i = 0; i < k; ++i) x.push_back(half(beta[std::size_t(i)] - beta[std::size_t(i + 1)]));
    return x;
}

}  // namespace

mpq_class arc_measure(const TrainTrack& t, const std::string& arc, const std::vector<mpq_class>& mu) {
    if (mu.size() != t.branches.size()) throw DomainError("measure does not cover every branch");
    return arc_measure_generic(t, arc, mu, mpq_class(0), ExactOps{});
}

DynnikovVector<mpq_class> change_of_coords(const TrainTrack& t, const std::vector<mpq_class>& mu) {
    if (mu.size() != t.branches.size()) throw DomainError("measure does not cover every branch");
    if (!check_switch_conditions(t, mu)) throw DomainError("measure violates the switch conditions");
    TriangleCoords<mpq_class> tc;
    const int k = t.n - 2;
    for (int i = 1; i <= 2 * k; ++i) tc.alpha.push_back(arc_measure(t, "alpha_" + std::to_string(i), mu));
    for (int i = 1; i <= k + 1; ++i) tc.beta.push_back(arc_measure(t, "beta_" + std::to_string(i), mu));
    return from_triangle(tc);
}

RatMatrix linearize_change_of_coords(const TrainTrack& t, const std::vector<mpq_class>& mu) {
    if (mu.size() != t.branches.size()) throw DomainError("measure does not cover every branch");
    if (!check_switch_conditions(t, mu)) throw DomainError("measure violates the switch conditions");
    RatMatrix basis = parameter_basis(t);
    std::vector<Lin> lin;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        Lin l{mu[i], {}};
        for (std::size_t j = 0; j < basis.cols(); ++j) l.g.push_back(basis(i, j));
        lin.push_back(l);
    }
    Lin zero{0, std::vector<mpq_class>(basis.cols(), mpq_class(0))};
    auto rows = dynnikov_from_arcs<Lin, LinOps>(t, lin, zero, LinOps{}, [](const Lin& x) {
        Lin r = x;
        r.v /= 2;
        for (auto& e : r.g) e /= 2;
        return r;
    });
    RatMatrix l(rows.size(), basis.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < basis.cols(); ++j) l(i, j) = j < rows[i].g.size() ? rows[i].g[j] : mpq_class(0);
    return l;
}

IntMatrix TransitionMatrix::main_block() const {
    IntMatrix t(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) t(i, j) = matrix(i, j);
    return t;
}

TransitionMatrix load_transition(const json& doc) {
    TransitionMatrix t;
    const json& rows = doc.is_array() ? doc : doc.at("matrix");
    if (!rows.is_array() || rows.empty()) throw ParseError("transition matrix must be a nonempty array of rows");
    const std::size_t n = rows.size();
    t.matrix = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n) throw ParseError("transition matrix must be square");
        for (std::size_t j = 0; j < n; ++j) {
            const json& e = rows[i][j];
            mpz_class v;
            if (e.is_number_integer()) v = e.get<long>();
            else if (e.is_string()) {
                if (v.set_str(e.get<std::string>(), 10) != 0) throw ParseError("bad integer entry");
            } else throw ParseError("transition matrix entries must be integers");
            if (v < 0) throw DomainError("transition matrix entries must be nonnegative");
            t.matrix(i, j) = v;
        }
    }
    t.m = doc.is_object() && doc.contains("m") ? doc.at("m").get<std::size_t>() : n;
    if (t.m == 0 || t.m > n) throw DomainError("main branch count out of range");
    for (std::size_t i = 0; i < t.m; ++i)
        for (std::size_t j = t.m; j < n; ++j)
            if (t.matrix(i, j) != 0) throw DomainError("transition matrix is not block lower-triangular");
    for (std::size_t i = t.m; i < n; ++i) {
        int ones = 0;
        for (std::size_t j = t.m; j < n; ++j) {
            if (t.matrix(i, j) == 1) ++ones;
            else if (t.matrix(i, j) != 0) ones = 99;
        }
        if (ones != 1) throw DomainError("infinitesimal block is not a permutation matrix");
    }
    for (std::size_t j = t.m; j < n; ++j) {
        int ones = 0;
        for (std::size_t i = t.m; i < n; ++i) ones += t.matrix(i, j) == 1;
        if (ones != 1) throw DomainError("infinitesimal block is not a permutation matrix");
    }
    if (doc.is_object() && doc.contains("permutation")) {
        for (const auto& p : doc.at("permutation")) t.permutation.push_back(p.get<std::size_t>());
        if (t.permutation.size() != n - t.m) throw DomainError("permutation length does not match the block");
        for (std::size_t k = 0; k < t.permutation.size(); ++k) {
            std::size_t img = t.permutation[k];
            if (img >= n - t.m || t.matrix(t.m + img, t.m + k) != 1)
                throw DomainError("permutation disagrees with the infinitesimal block");
        }
    }
    return t;
}

TransitionMatrix load_transition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return load_transition(doc);
}

bool strongly_connected(const IntMatrix& m) {
    const std::size_t n = m.rows();
    auto reach = [&](bool transpose) {
        std::vector<char> seen(n, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j)
                if (!seen[j] && (transpose ? m(j, i) : m(i, j)) != 0) {
                    seen[j] = 1;
                    stack.push_back(j);
                }
        }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    };
    return n > 0 && reach(false) && reach(true);
}

PerronFrobenius perron_frobenius(const IntMatrix& m, unsigned bits) {
    if (!m.square()) throw DomainError("matrix must be square");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) < 0) throw DomainError("Perron-Frobenius needs a nonnegative matrix");
    if (!strongly_connected(m)) throw NotIrreducible("matrix is not irreducible");
    PerronFrobenius r;
    r.lambda = largest_real_root(char_poly(m), bits);
    r.vector = eigenvector(m, r.lambda);
    mpf_class eps(1, bits);
    for (unsigned i = 0; i < bits / 2; ++i) eps /= 2;
    for (const auto& e : r.vector)
        if (e <= eps) throw NotIrreducible("Perron-Frobenius eigenvector has a zero entry");
    return r;
}

PerronFrobenius transition_pf(const TransitionMatrix& t, unsigned bits) {
    return perron_frobenius(t.main_block(), bits);
}

bool verify_conjugacy(const IntMatrix& d, const RatMatrix& l, const IntMatrix& tp) {
    if (!d.square() || !l.square() || !tp.square() || d.rows() != l.rows() || tp.rows() != l.rows())
        throw DomainError("conjugacy check needs square matrices of one size");
    if (determinant(l) == 0) throw DomainError("change-of-coordinates matrix is singular");
    return to_rational(d) * l == l * to_rational(tp);
}

RatMatrix solve_completion(const IntMatrix& d, const RatMatrix& l,
                           const std::vector<std::vector<std::optional<mpq_class>>>& tp) {
    const std::size_t n = l.rows();
    if (!d.square() || d.rows() != n || !l.square() || tp.size() != n)
        throw DomainError("conjugacy check needs square matrices of one size");
    if (determinant(l) == 0) throw DomainError("change-of-coordinates matrix is singular");
    std::vector<std::pair<std::size_t, std::size_t>> unknown;
    for (std::size_t i = 0; i < n; ++i) {
        if (tp[i].size() != n) throw DomainError("conjugacy check needs square matrices of one size");
        for (std::size_t j = 0; j < n; ++j)
            if (!tp[i][j]) unknown.emplace_back(i, j);
    }
    RatMatrix full(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (tp[i][j]) full(i, j) = *tp[i][j];
    if (unknown.empty()) {
        if (!(to_rational(d) * l == l * full)) throw VerificationFailed("D L != L Tp");
        return full;
    }
    // (D L)_{ij} - (L Tp_known)_{ij} = sum over unknowns (k, j) of L_{ik} u_{kj}
    RatMatrix dl = to_rational(d) * l, lk = l * full;
    RatMatrix a(n * n, unknown.size());
    std::vector<mpq_class> rhs(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rhs[i * n + j] = dl(i, j) - lk(i, j);
            for (std::size_t u = 0; u < unknown.size(); ++u)
                if (unknown[u].second == j) a(i * n + j, u) = l(i, unknown[u].first);
        }
    auto sol = solve_unique(a, rhs);
    for (std::size_t u = 0; u < unknown.size(); ++u) full(unknown[u].first, unknown[u].second) = sol[u];
    return full;
}

}  // namespace dyn
