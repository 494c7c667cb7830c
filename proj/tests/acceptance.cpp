// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "dynnikov/dynnikov_matrix.hpp"
#include "dynnikov/spectral.hpp"
#include "dynnikov/update_rules.hpp"
#include "support.hpp"

using namespace dyn;
using namespace testing_support;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream note;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) note << "failed: ";
            else note << "; ";
            note << what;
            ok = false;
        }
    }
};

std::set<IntMatrix> matrix_set(const std::vector<DynnikovMatrix>& ms) {
    std::set<IntMatrix> s;
    for (const auto& m : ms) s.insert(m.matrix);
    return s;
}

double d(const mpf_class& x) { return x.get_d(); }

void sample_action(Check& c) {
    std::vector<mpq_class> x{-1, -1, 0, -1};
    auto r = apply_braid(make_vector<mpq_class>(4, x), parse_braid("-3 2 -1", 4));
    c.require(r.x == std::vector<mpq_class>{2, -3, -1, 0}, "action result");
    c.note << "(2,-3,-1,0)";
}

void example12(Check& c) {
    auto w = parse_braid(kThreeStrand, 3);
    auto ms = dynnikov_matrices(w);
    c.require(matrix_set(ms) == std::set<IntMatrix>{int_matrix({{2, 1}, {1, 1}})}, "matrix set");
    double lambda = d(dilatation(ms.at(0).matrix));
    c.require(std::abs(lambda - (3 + std::sqrt(5.0)) / 2) < 1e-12, "dilatation");
    auto arcs = enumerate_regions_n3(w);
    std::set<IntMatrix> got, want;
    double total = 0;
    for (const auto& a : arcs) {
        got.insert(a.matrix);
        double len = a.end - a.start;
        if (len <= 0) len += 2 * M_PI;
        total += len;
    }
    for (const auto& m : circle_matrices()) want.insert(m);
    c.require(arcs.size() == 6 && got == want, "circle decomposition matrices");
    c.require(std::abs(total - 2 * M_PI) < 1e-9, "arcs cover the circle");
    c.note << "lambda=" << lambda << ", " << arcs.size() << " arcs";
}

void example15(Check& c) {
    auto w = parse_braid(kFiveStrand, 5);
    auto u = find_unstable_direction(w);
    auto ms = dynnikov_matrices(w, u);
    c.require(matrix_set(ms) == std::set<IntMatrix>{five_strand_d1(), five_strand_d2()}, "matrix set");
    c.require(std::abs(d(dilatation(five_strand_d1())) - d(dilatation(five_strand_d2()))) < 1e-12, "equal radius");
    bool nonpos = true;
    for (const auto& e : u.point.x) nonpos &= e <= 0;
    c.require(nonpos, "direction entries <= 0");
    const auto& p = u.point;
    c.require(std::abs(d(p.a(2) - p.a(1) - p.b(1))) < 1e-9, "a2 = a1 + b1");
    c.note << ms.size() << " matrices, lambda=" << d(u.lambda);
}

void b4(Check& c) {
    auto ms = dynnikov_matrices(parse_braid(kB4, 4));
    c.require(matrix_set(ms) == std::set<IntMatrix>{b4_d()}, "D");
    auto t = load_transition_file(fixture("b4_T.json"));
    c.require(char_poly(b4_d()) == char_poly(t.main_block()), "char_poly(D) = char_poly(T)");
    double lambda = d(dilatation(b4_d()));
    c.require(std::abs(lambda - 4.61158) < 5e-6, "dilatation");
    auto pf = transition_pf(t);
    std::vector<double> want{0.50135, 0.59215, 0.41871, 0.47190};
    for (std::size_t i = 0; i < 4; ++i) c.require(std::abs(d(pf.vector[i]) - want[i]) < 5e-5, "PF vector entry");
    c.note << "lambda=" << lambda;
}

void gamma_example(Check& c) {
    auto dm = load_int_matrix(read_json_file(fixture("gamma_D.json")));
    auto ms = dynnikov_matrices(parse_braid(kGamma, 4));
    c.require(matrix_set(ms) == std::set<IntMatrix>{dm}, "D");
    auto t = load_transition_file(fixture("gamma_T.json"));
    auto rep = isospectral_up_to(dm, t.main_block(), StripMode::eigenvalues_one);
    unsigned m1 = 0, m2 = 0;
    for (const auto& f : rep.factors1) m1 += f.multiplicity;
    for (const auto& f : rep.factors2) m2 += f.multiplicity;
    c.require(rep.isospectral && m1 == m2 + 1, "isospectral with one extra (x-1)");
    auto pf = transition_pf(t);
    double r2 = std::sqrt(2.0);
    c.require(std::abs(d(pf.lambda) - (17 + 12 * r2)) < 1e-9, "PF eigenvalue");
    c.require(std::abs(d(pf.vector[1] / pf.vector[0]) - (1 + r2)) < 1e-9 &&
                  std::abs(d(pf.vector[2] / pf.vector[0]) - (1 + r2)) < 1e-9,
              "PF vector");
    auto tp = load_int_matrix(read_json_file(fixture("gamma_Tp.json")));
    auto unknown = load_partial_matrix(read_json_file(fixture("gamma_Tp_unknown.json")));
    for (const char* lf : {"gamma_L1.json", "gamma_L2.json"}) {
        auto l = load_rat_matrix(read_json_file(fixture(lf)));
        c.require(verify_conjugacy(dm, l, tp), std::string("conjugacy with ") + lf);
        auto solved = solve_completion(dm, l, unknown);
        c.require(solved(3, 0) == 2 && solved(3, 1) == 3 && solved(3, 2) == 1, "solved (x,y,z)");
    }
    c.note << "lambda=" << d(pf.lambda) << ", (x,y,z)=(2,3,1)";
}

void long_braid_check(Check& c) {
    auto t0 = std::chrono::steady_clock::now();
    auto ms = dynnikov_matrices(long_braid());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(matrix_set(ms) == std::set<IntMatrix>{long_braid_matrix()}, "matrix");
    double log_lambda = std::log(d(dilatation(long_braid_matrix())));
    c.require(std::abs(log_lambda - 34.38) < 0.01, "log dilatation");
    c.require(secs < 10, "wall clock");
    c.note << "log lambda=" << log_lambda << ", " << secs << " s";
}

void action_properties(Check& c) {
    std::mt19937_64 rng(7001);
    int inv = 0, hom = 0, lin = 0, det = 0;
    for (int rep = 0; rep < 600; ++rep) {
        int n = 3 + rep % 6;
        auto v = random_vector(rng, n);
        int i = 1 + int(rng() % std::uint64_t(n - 1));
        c.require(apply_generator(apply_generator(v, i, 1), i, -1) == v, "involution");
        ++inv;
        auto w = random_braid(rng, n, 1 + rep % 10);
        mpq_class k = random_rational(rng, 1, 9);
        c.require(apply_braid(scale(v, k), w) == scale(apply_braid(v, w), k), "homogeneity");
        ++hom;
        auto tr = traced_apply(v, w);
        for (const auto& e : tr.elementary) {
            mpq_class dt = determinant(to_rational(e));
            c.require(dt == 1 || dt == -1, "elementary determinant");
            ++det;
        }
    }
    for (int attempt = 0; lin < 500 && attempt < 6000; ++attempt) {
        int n = 3 + attempt % 5;
        auto v = random_vector(rng, n);
        auto w = random_braid(rng, n, 1 + attempt % 10);
        auto tr = traced_apply(v, w);
        if (tr.has_tie) continue;
        auto dir = random_vector(rng, n);
        auto p = v;
        for (std::size_t i = 0; i < p.x.size(); ++i) p.x[i] += mpq_class(1, 1000) * dir.x[i];
        auto tp = traced_apply(p, w);
        if (tp.has_tie || !(tp.signature == tr.signature)) continue;
        c.require(apply_braid(p, w).x == apply_matrix(tr.matrix, p.x), "local linearity");
        ++lin;
    }
    c.require(inv >= 500 && hom >= 500 && lin >= 500 && det >= 500, "case counts");
    c.note << inv << " involution, " << hom << " homogeneity, " << lin << " linearity, " << det << " determinant cases";
}

Poly P(std::vector<long> v) {
    std::vector<mpz_class> z(v.begin(), v.end());
    return Poly(z);
}

void spectral_properties(Check& c) {
    std::mt19937_64 rng(8001);
    int oracle = 0, blocks = 0, strips = 0;
    for (std::size_t n = 1; n <= 6; ++n)
        for (int rep = 0; rep < 40; ++rep) {
            auto m = random_int_matrix(rng, n, -9, 9);
            c.require(char_poly(m) == cofactor_char_poly(m), "cofactor oracle");
            ++oracle;
        }
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t n = 1 + std::size_t(rep % 4);
        auto a = random_int_matrix(rng, n, -5, 5), b = random_int_matrix(rng, n, -5, 5);
        c.require(char_poly(double_cover_lift(a, b)) == char_poly(a + b) * char_poly(a - b), "block identity");
        ++blocks;
    }
    std::vector<Poly> bases{P({1, -3, 1}), P({-1, -1, 0, 1}), P({1, -1, -1, -1, 1})};
    for (const auto& base : bases)
        for (int rep = 0; rep < 30; ++rep) {
            unsigned k = unsigned(rng() % 4), j = unsigned(rng() % 4), dd = 2 + unsigned(rng() % 11);
            Poly planted = base * pow(Poly::monomial(1), k) * cyclotomic(dd) * pow(Poly::x_minus(1), j);
            Poly s = strip_trivial_factors(planted, StripMode::roots_of_unity_and_zeros);
            c.require(s == base, "round trip");
            c.require(strip_trivial_factors(s, StripMode::roots_of_unity_and_zeros) == s, "idempotence");
            Poly t = strip_trivial_factors(base * pow(Poly::x_minus(1), j), StripMode::eigenvalues_one);
            c.require(t == base && strip_trivial_factors(t, StripMode::eigenvalues_one) == t, "(x-1) strip");
            ++strips;
        }
    c.note << oracle << " oracle, " << blocks << " block, " << strips << " strip cases";
}

void check_psi(Check& c, const MoveResult& r, const std::vector<mpq_class>& mu) {
    auto nu = testing_support::apply(r.psi, mu);
    c.require(check_switch_conditions(r.track, nu), "psi switch conditions");
    bool nonneg = true;
    for (const auto& e : nu) nonneg &= e >= 0;
    c.require(nonneg, "psi positivity");
}

void traintrack_properties(Check& c) {
    std::mt19937_64 rng(9001);
    int pinches = 0, multisets = 0;
    for (const auto& ms : incomplete_multisets(6)) {
        auto gen = generate_track(ms);
        const auto& t = gen.track;
        for (std::size_t f = 0; f < t.faces.size(); ++f) {
            const auto& face = t.faces[f];
            if (face.punctured ? face.vertices() < 2 : face.vertices() < 4) continue;
            for (int e = 1; e <= face.vertices(); ++e) {
                MoveResult r;
                try {
                    r = face.punctured ? pinch_punctured(t, f, e) : pinch_unpunctured(t, f, e);
                } catch (const DomainError&) {
                    continue;
                }
                c.require(r.track.rank() == t.rank() + 1, "rank increment");
                check_psi(c, r, gen.sample(rng));
                ++pinches;
            }
        }
        auto exts = enumerate_diagonal_extensions(t);
        c.require(mpz_class(exts.size()) == catalan_product(gen.regions), "extension count");
        auto mu = gen.sample(rng);
        for (const auto& e : exts) check_psi(c, e, mu);
        ++multisets;
    }
    auto ex = load_track_file(fixture("sample_track.json"));
    const auto& p1 = ex.annotations.at("alpha_2").paths.at(0);
    const auto& p2 = ex.annotations.at("alpha_4").paths.at(0);
    auto w = [&](const std::vector<mpq_class>& mu, const char* id) { return mu[std::size_t(ex.branch_index(id))]; };
    for (int rep = 0; rep < 100; ++rep) {
        auto mu = random_parameter_measure(ex, rng);
        c.require(path_measure(ex, p1, mu) == smin(w(mu, "m2"), w(mu, "m6")), "min(m2,m6)");
        c.require(path_measure(ex, p2, mu) == smin(w(mu, "d"), w(mu, "m3")), "min(d,m3)");
        mpq_class a = w(mu, "a"), b = w(mu, "b"), cc = w(mu, "c"), dd = w(mu, "d");
        auto v = change_of_coords(ex, mu);
        c.require(v.a(1) == (smax(a, cc) - b) / 2 && v.a(2) == smax(mpq_class(-cc), mpq_class(-dd)) / 2 &&
                      v.b(1) == (a - cc) / 2 && v.b(2) == (cc - dd) / 2,
                  "closed form");
    }
    c.note << multisets << " polygon multisets, " << pinches << " pinches, 100 measures";
}

}  // namespace

int main() {
    std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
        {"four-strand sample action", sample_action},
        {"three-strand example and circle decomposition", example12},
        {"five-strand example", example15},
        {"B4 example", b4},
        {"gamma example", gamma_example},
        {"high-entropy braid", long_braid_check},
        {"action property suites", action_properties},
        {"spectral property suites", spectral_properties},
        {"train-track property suites", traintrack_properties},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.note << " exception: " << e.what();
        }
        std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << c.note.str() << ")" << std::endl;
        failures += !c.ok;
    }
    return failures ? 1 : 0;
}
