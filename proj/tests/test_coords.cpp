#include "doctest.h"

#include "support.hpp"

using namespace dyn;
using namespace testing_support;

TEST_CASE("flat layout and accessors") {
    auto v = make_vector<mpq_class>(5, {1, 2, 3}, {4, 5, 6});
    CHECK(v.k() == 3);
    CHECK(v.a(1) == 1);
    CHECK(v.a(3) == 3);
    CHECK(v.b(1) == 4);
    CHECK(v.b(3) == 6);
    CHECK(make_vector<mpq_class>(5, std::vector<mpq_class>{1, 2, 3, 4, 5, 6}) == v);
}

TEST_CASE("invalid vectors") {
    CHECK_THROWS_AS(make_vector<mpq_class>(3, std::vector<mpq_class>{0, 0}), DomainError);
    CHECK_THROWS_AS(make_vector<mpq_class>(4, std::vector<mpq_class>{1, 2}), DomainError);
    CHECK_THROWS_AS(make_vector<mpq_class>(2, std::vector<mpq_class>{}), DomainError);
    CHECK_THROWS_AS(make_vector<mpq_class>(4, {1}, {1, 2}), DomainError);
}

TEST_CASE("triangle coordinates") {
    TriangleCoords<mpq_class> t{{1, 4, 2, 2}, {6, 2, 3}};
    auto v = from_triangle(t);
    CHECK(v.n == 4);
    CHECK(v.a(1) == mpq_class(3, 2));
    CHECK(v.a(2) == 0);
    CHECK(v.b(1) == 2);
    CHECK(v.b(2) == mpq_class(-1, 2));
    CHECK_THROWS_AS(from_triangle(TriangleCoords<mpq_class>{{1, 1}, {1, 1, 1}}), DomainError);
    CHECK_THROWS_AS(from_triangle(TriangleCoords<mpq_class>{{-1, 1}, {1, 1}}), DomainError);
    CHECK_THROWS_AS(from_triangle(TriangleCoords<mpq_class>{{1, 1}, {2, 2}}), DomainError);
}

TEST_CASE("normalisation and distances") {
    auto v = make_vector<mpq_class>(4, std::vector<mpq_class>{-4, 2, 1, 0});
    auto n = normalize(v);
    CHECK(n.x == std::vector<mpq_class>{-1, mpq_class(1, 2), mpq_class(1, 4), 0});
    auto c = canonical(v);
    CHECK(c.x[0] == 1);
    CHECK(sup_norm(v.x) == 4);
    CHECK(scale(v, mpq_class(3)).x[0] == -12);
    CHECK_THROWS_AS(scale(v, mpq_class(-1)), DomainError);

    auto neg = v;
    for (auto& e : neg.x) e = -e;
    CHECK(projective_distance(v, neg) == 0);
    CHECK(positive_distance(v, neg) == 2);
    CHECK(positive_distance(v, scale(v, mpq_class(7, 3))) == 0);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto p = random_vector(rng, 5), q = random_vector(rng, 5);
        CHECK(projective_distance(p, q) == projective_distance(q, p));
        CHECK(projective_distance(p, q) <= positive_distance(p, q));
    }
}

TEST_CASE("scalar conversions") {
    auto v = make_vector<mpq_class>(3, std::vector<mpq_class>{mpq_class(1, 3), -2});
    auto f = convert(v, mpf_class(0, 128));
    CHECK(f.x[0].get_prec() >= 128);
    CHECK(std::abs(to_doubles(f)[0] - 1.0 / 3) < 1e-15);
    CHECK(to_doubles(v)[1] == -2.0);
}
