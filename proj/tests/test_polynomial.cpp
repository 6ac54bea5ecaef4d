#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <symbasis/bases.hpp>
#include <symbasis/polynomial.hpp>
#include <symbasis/serde.hpp>

#include "oracles.hpp"

using namespace symbasis;

namespace {

GradedPoly t(int i) { return GradedPoly::var(i); }

// small pseudo-random polynomial of bounded degree
GradedPoly random_poly(std::mt19937& rng, int max_degree) {
    std::uniform_int_distribution<int> nterms(1, 5), var(1, max_degree), num(-4, 4),
        den(1, 3);
    GradedPoly f;
    for (int k = nterms(rng); k > 0; --k) {
        Monomial m;
        int budget = max_degree;
        while (budget > 0) {
            int v = var(rng);
            if (v > budget) break;
            m = m * Monomial::var(v);
            budget -= v;
        }
        f.add_term(m, Rat(num(rng), den(rng)));
    }
    return f;
}

} // namespace

TEST_CASE("ring arithmetic") {
    CHECK(t(1) * t(1) == GradedPoly::term(Monomial::var(1, 2), 1));

    SECTION("cancellation prunes terms") {
        GradedPoly a = Rat(1, 2) * (t(1) * t(1)) + t(2);
        GradedPoly b = Rat(1, 2) * (t(1) * t(1)) - t(2);
        GradedPoly sum = a + b;
        CHECK(sum == t(1) * t(1));
        CHECK(sum.term_count() == 1);
        CHECK((a - a).is_zero());
    }

    SECTION("grading is additive under multiplication") {
        GradedPoly f = schur(Partition{2, 1});      // degree 3
        GradedPoly g = schur(Partition{2});         // degree 2
        CHECK(f.homogeneous_degree() == 3);
        CHECK(g.homogeneous_degree() == 2);
        CHECK((f * g).homogeneous_degree() == 5);
    }

    SECTION("monomial degree weights the variable index") {
        CHECK(Monomial::var(3, 2).degree() == 6);
        CHECK((Monomial::var(1) * Monomial::var(4)).degree() == 5);
        CHECK(Monomial().degree() == 0);
    }
}

TEST_CASE("variable stretching") {
    CHECK(stretch(t(1), 2) == t(2));
    CHECK(stretch(GradedPoly::constant(7), 2) == GradedPoly::constant(7));
    CHECK(stretch(schur(Partition{2}), 2) ==
          Rat(1, 2) * (t(2) * t(2)) + t(4));

    SECTION("ring homomorphism, injective on nonzero input") {
        std::mt19937 rng(2024);
        for (int trial = 0; trial < 20; ++trial) {
            GradedPoly f = random_poly(rng, 4), g = random_poly(rng, 4);
            CHECK(stretch(f * g, 3) == stretch(f, 3) * stretch(g, 3));
            CHECK(stretch(f + g, 3) == stretch(f, 3) + stretch(g, 3));
            if (!f.is_zero()) CHECK_FALSE(stretch(f, 3).is_zero());
        }
    }
}

TEST_CASE("killing variables with index divisible by p") {
    CHECK(reduce_p(schur(Partition{2}), 2) == Rat(1, 2) * (t(1) * t(1)));
    CHECK(reduce_p(t(3), 3).is_zero());

    GradedPoly odd_only = t(1) * t(3) + Rat(2) * t(5);
    CHECK(reduce_p(odd_only, 2) == odd_only);

    SECTION("idempotent") {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            GradedPoly f = random_poly(rng, 6);
            for (int p : {2, 3}) {
                GradedPoly once = reduce_p(f, p);
                CHECK(reduce_p(once, p) == once);
            }
        }
    }
}

TEST_CASE("inner products on monomials") {
    CHECK(inner_product(t(1), t(1), Pairing::schur) == 1);
    CHECK(inner_product(t(1), t(2), Pairing::schur) == 0);
    CHECK(inner_product(t(2), t(2), Pairing::schur) == Rat(1, 2));
    CHECK(inner_product(t(1), t(1), Pairing::q) == 2);

    SECTION("zero across different degrees") {
        CHECK(inner_product(schur(Partition{2}), schur(Partition{3}), Pairing::schur) == 0);
        CHECK(inner_product(t(1) * t(1), t(2) * t(2), Pairing::q) == 0);
    }

    SECTION("symmetric and bilinear") {
        std::mt19937 rng(99);
        for (int trial = 0; trial < 10; ++trial) {
            GradedPoly f = random_poly(rng, 5), g = random_poly(rng, 5), h = random_poly(rng, 5);
            for (Pairing v : {Pairing::schur, Pairing::q}) {
                CHECK(inner_product(f, g, v) == inner_product(g, f, v));
                CHECK(inner_product(f + h, g, v) ==
                      inner_product(f, g, v) + inner_product(h, g, v));
                CHECK(inner_product(Rat(3, 2) * f, g, v) == Rat(3, 2) * inner_product(f, g, v));
            }
        }
    }
}

TEST_CASE("closed-form pairing agrees with literal differentiation") {
    using oracles::literal_inner_product;

    SECTION("structured cases") {
        for (Pairing v : {Pairing::schur, Pairing::q}) {
            for (int n = 0; n <= 5; ++n) {
                for (const auto& l : partitions_of(n))
                    for (const auto& m : partitions_of(n)) {
                        GradedPoly f = schur(l), g = schur(m);
                        CHECK(inner_product(f, g, v) == literal_inner_product(f, g, v));
                    }
                for (const auto& l : strict_partitions(n))
                    for (const auto& m : strict_partitions(n)) {
                        GradedPoly f = qfun(l), g = qfun(m);
                        CHECK(inner_product(f, g, v) == literal_inner_product(f, g, v));
                    }
            }
        }
    }

    SECTION("random polynomials of degree <= 6") {
        std::mt19937 rng(5150);
        for (int trial = 0; trial < 25; ++trial) {
            GradedPoly f = random_poly(rng, 6), g = random_poly(rng, 6);
            for (Pairing v : {Pairing::schur, Pairing::q})
                CHECK(inner_product(f, g, v) == literal_inner_product(f, g, v));
        }
    }
}

TEST_CASE("polynomial JSON round trip") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        GradedPoly f = random_poly(rng, 6);
        CHECK(poly_from_json(poly_to_json(f)) == f);
    }
    GradedPoly q = qfun(Partition{3, 2, 1});
    CHECK(poly_from_json(poly_to_json(q)) == q);

    SECTION("coefficient strings stay exact") {
        json j = poly_to_json(Rat(1, 3) * t(2));
        CHECK(j[0]["coef"] == "1/3");
        CHECK(poly_to_json(Rat(-7) * t(1))[0]["coef"] == "-7");
        CHECK(rat_from_string("22/7") == Rat(22, 7));
        CHECK_THROWS_AS(rat_from_string("x"), parse_error);
        CHECK_THROWS_AS(rat_from_string("1/0"), parse_error);
    }
}

TEST_CASE("deterministic text form") {
    CHECK(schur(Partition{2}).to_string() == "t1^2/2 + t2");
    CHECK(qfun(Partition{2, 1}).to_string() == "t1^3/6 - 2*t3");
    CHECK(GradedPoly().to_string() == "0");
    CHECK(GradedPoly::constant(Rat(-3, 4)).to_string() == "-3/4");
}
