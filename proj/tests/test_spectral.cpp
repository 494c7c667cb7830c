#include "doctest.h"

#include <cmath>

#include "dynnikov/spectral.hpp"
#include "support.hpp"

using namespace dyn;
using namespace testing_support;

namespace {

Poly P(std::vector<long> c) {
    std::vector<mpz_class> z(c.begin(), c.end());
    return Poly(z);
}

double to_d(const mpf_class& x) { return x.get_d(); }

// Polynomials without roots of unity, zeros or eigenvalue 1 (dominant real roots > 1).
std::vector<Poly> hyperbolic_bases() {
    return {P({1, -3, 1}), P({1, -4, 1}), P({-1, -1, 1}), P({-1, -1, 0, 1}), P({1, -1, -1, -1, 1}),
            P({-1, -2, 1})};
}

}  // namespace

TEST_CASE("characteristic polynomial of small examples") {
    CHECK(char_poly(int_matrix({{2, 1}, {1, 1}})) == P({1, -3, 1}));
    CHECK(char_poly(IntMatrix::identity(3)) == P({-1, 3, -3, 1}));
    CHECK(char_poly(int_matrix({{0}})) == P({0, 1}));
    CHECK(to_string(char_poly(b4_d())) == to_string(char_poly(load_int_matrix(read_json_file(fixture("b4_T.json"))))));
    CHECK_THROWS_AS(char_poly(IntMatrix(2, 3)), DomainError);
}

TEST_CASE("char_poly agrees with cofactor expansion") {
    std::mt19937_64 rng(201);
    for (std::size_t n = 1; n <= 6; ++n)
        for (int rep = 0; rep < 60; ++rep) {
            auto m = random_int_matrix(rng, n, -9, 9);
            CHECK(char_poly(m) == cofactor_char_poly(m));
        }
    auto big = random_int_matrix(rng, 5, -1000000000, 1000000000);
    CHECK(char_poly(big) == cofactor_char_poly(big));
}

TEST_CASE("block identity for the double cover lift") {
    std::mt19937_64 rng(202);
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t n = 1 + std::size_t(rep % 4);
        auto a = random_int_matrix(rng, n, -5, 5), b = random_int_matrix(rng, n, -5, 5);
        auto lift = double_cover_lift(a, b);
        CHECK(char_poly(lift) == char_poly(a + b) * char_poly(a - b));
    }
    CHECK_THROWS_AS(double_cover_lift(IntMatrix(2, 2), IntMatrix(3, 3)), DomainError);
}

TEST_CASE("largest real root and dilatation") {
    mpf_class r = largest_real_root(P({-2, 0, 1}), 200);
    mpf_class s2 = sqrt(mpf_class(2, 256));
    CHECK(std::abs(to_d(r - s2)) < 1e-50);
    CHECK_THROWS_AS(largest_real_root(P({1, 0, 1})), NoDominantRealRoot);

    mpf_class lambda = dilatation(int_matrix({{2, 1}, {1, 1}}), 40);
    mpf_class exact = (3 + sqrt(mpf_class(5, 256))) / 2;
    mpf_class diff = lambda - exact;
    CHECK(std::abs(to_d(diff)) < 1e-35);

    CHECK_THROWS_AS(dilatation(IntMatrix::identity(3)), NoDominantRealRoot);
    CHECK_THROWS_AS(dilatation(int_matrix({{0, -1}, {1, 0}})), NoDominantRealRoot);
    // -lambda as large in modulus as lambda: not dominant.
    CHECK_THROWS_AS(dilatation(int_matrix({{0, 4}, {1, 0}})), NoDominantRealRoot);
}

TEST_CASE("relative root moduli") {
    auto mods = relative_root_moduli(P({1, -3, 1}), mpf_class((3 + std::sqrt(5.0)) / 2));
    std::sort(mods.begin(), mods.end());
    REQUIRE(mods.size() == 2);
    CHECK(mods[1] == doctest::Approx(1.0));
    CHECK(mods[0] == doctest::Approx(1 / std::pow((3 + std::sqrt(5.0)) / 2, 2)));
}

TEST_CASE("eigenvector of a simple real eigenvalue") {
    auto m = int_matrix({{2, 1}, {1, 1}});
    auto v = eigenvector(m, dilatation(m));
    REQUIRE(v.size() == 2);
    double a = to_d(v[0]), b = to_d(v[1]);
    CHECK(a * a + b * b == doctest::Approx(1.0));
    CHECK(a / b == doctest::Approx((1 + std::sqrt(5.0)) / 2));
}

TEST_CASE("stripping planted trivial factors") {
    std::mt19937_64 rng(203);
    std::uniform_int_distribution<int> kd(0, 3), dd(1, 12), jd(0, 3);
    for (const auto& base : hyperbolic_bases())
        for (int rep = 0; rep < 40; ++rep) {
            unsigned k = unsigned(kd(rng)), j = unsigned(jd(rng));
            unsigned d1 = unsigned(dd(rng)), d2 = unsigned(dd(rng));
            if (d1 == 1) d1 = 2;
            if (d2 == 1) d2 = 5;
            Poly planted = base * pow(Poly::monomial(1), k) * cyclotomic(d1) * cyclotomic(d2) *
                           pow(Poly::x_minus(1), j);

            std::vector<StrippedFactor> fs;
            Poly s = strip_trivial_factors(planted, StripMode::roots_of_unity_and_zeros, &fs);
            CHECK(s == base);
            unsigned found_x = 0, found_one = 0, found_cyc = 0;
            for (const auto& f : fs) {
                if (f.kind == "x") found_x += f.multiplicity;
                if (f.kind == "Phi" && f.d == 1) found_one += f.multiplicity;
                if (f.kind == "Phi" && f.d > 1) found_cyc += f.multiplicity;
            }
            CHECK(found_x == k);
            CHECK(found_one == j);
            CHECK(found_cyc == 2);
            CHECK(strip_trivial_factors(s, StripMode::roots_of_unity_and_zeros) == s);

            Poly ones = base * pow(Poly::x_minus(1), j);
            Poly t = strip_trivial_factors(ones, StripMode::eigenvalues_one, &fs);
            CHECK(t == base);
            CHECK(fs.size() == (j ? 1u : 0u));
            if (j) CHECK(fs[0].multiplicity == j);
            CHECK(strip_trivial_factors(t, StripMode::eigenvalues_one) == t);
            CHECK(strip_trivial_factors(planted, StripMode::exact) == planted);
        }
}

TEST_CASE("isospectrality reports") {
    std::mt19937_64 rng(204);
    for (int rep = 0; rep < 50; ++rep) {
        auto m = random_int_matrix(rng, 4, -4, 4);
        for (auto mode : {StripMode::exact, StripMode::roots_of_unity_and_zeros, StripMode::eigenvalues_one})
            CHECK(isospectral_up_to(m, m, mode).isospectral);
    }
    auto gd = load_int_matrix(read_json_file(fixture("gamma_D.json")));
    auto gt = load_int_matrix(read_json_file(fixture("gamma_T.json")));
    CHECK_FALSE(isospectral_up_to(gd, gt, StripMode::exact).isospectral);
    auto rep = isospectral_up_to(gd, gt, StripMode::eigenvalues_one);
    CHECK(rep.isospectral);
    CHECK(rep.factors1.at(0).multiplicity - rep.factors2.at(0).multiplicity == 1);

    CHECK(parse_strip_mode("eigenvalues_one") == StripMode::eigenvalues_one);
    CHECK(parse_strip_mode(to_string(StripMode::roots_of_unity_and_zeros)) == StripMode::roots_of_unity_and_zeros);
    CHECK_THROWS_AS(parse_strip_mode("nope"), ParseError);
}

TEST_CASE("polynomial helpers") {
    CHECK(cyclotomic(1) == P({-1, 1}));
    CHECK(cyclotomic(6) == P({1, -1, 1}));
    CHECK(cyclotomic(12).degree() == int(euler_phi(12)));
    Poly q;
    CHECK(divide_exact(P({-1, 0, 1}), P({-1, 1}), q));
    CHECK(q == P({1, 1}));
    CHECK_FALSE(divide_exact(P({1, 0, 1}), P({-1, 1}), q));
    CHECK(squarefree_part(P({-1, 1}) * P({-1, 1}) * P({2, 1})) == P({-2, 1, 1}));
}
