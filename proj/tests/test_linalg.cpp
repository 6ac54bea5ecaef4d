#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <symbasis/bases.hpp>
#include <symbasis/exact_matrix.hpp>
#include <symbasis/serde.hpp>

#include "oracles.hpp"

using namespace symbasis;

namespace {

ExactMatrix from_grid(std::vector<std::vector<int>> grid) {
    ExactMatrix m(static_cast<int>(grid.size()), grid.empty() ? 0 : static_cast<int>(grid[0].size()));
    for (size_t i = 0; i < grid.size(); ++i)
        for (size_t j = 0; j < grid[i].size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = grid[i][j];
    return m;
}

std::vector<Int> divisors_of(std::vector<std::vector<int>> grid) {
    return smith_normal_form(from_grid(std::move(grid)));
}

} // namespace

TEST_CASE("determinant") {
    CHECK(determinant(ExactMatrix::identity(4)) == 1);
    CHECK(determinant(from_grid({{1, 1}, {1, -1}})) == -2);
    CHECK(determinant(from_grid({{5, 3, 1}, {3, 5, 3}, {1, 3, 3}})) == 16);
    CHECK(determinant(from_grid({{0, 1}, {1, 0}})) == -1);
    CHECK(determinant(from_grid({{0, 0}, {0, 0}})) == 0);
    CHECK_THROWS_AS(determinant(ExactMatrix(2, 3)), std::invalid_argument);

    SECTION("bareiss agrees with cofactor expansion up to size 6") {
        std::mt19937 rng(12);
        for (int size = 1; size <= 6; ++size)
            for (int trial = 0; trial < 8; ++trial) {
                ExactMatrix m = oracles::random_int_matrix(rng, size, size, 6);
                CHECK(determinant(m) == oracles::cofactor_determinant(m));
            }
    }

    SECTION("rational entries") {
        ExactMatrix m(2, 2);
        m.at(0, 0) = Rat(1, 2);
        m.at(0, 1) = Rat(1, 3);
        m.at(1, 0) = Rat(1, 5);
        m.at(1, 1) = Rat(1, 7);
        CHECK(determinant(m) == Rat(1, 14) - Rat(1, 15));
    }
}

TEST_CASE("solve_expansion") {
    SECTION("a basis expands over itself as the identity") {
        std::vector<GradedPoly> basis;
        for (const auto& l : partitions_of(4)) basis.push_back(schur(l));
        ExactMatrix x = solve_expansion(basis, basis);
        CHECK(x == ExactMatrix::identity(static_cast<int>(basis.size())));
    }

    SECTION("recovers a random integer recombination") {
        std::mt19937 rng(77);
        std::vector<GradedPoly> basis;
        for (const auto& l : partitions_of(5)) basis.push_back(w_basis(l));
        std::uniform_int_distribution<int> coef(-5, 5);
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<std::vector<int>> chosen;
            std::vector<GradedPoly> targets;
            for (int r = 0; r < 3; ++r) {
                std::vector<int> row;
                GradedPoly f;
                for (const auto& b : basis) {
                    int c = coef(rng);
                    row.push_back(c);
                    f += Rat(c) * b;
                }
                chosen.push_back(std::move(row));
                targets.push_back(std::move(f));
            }
            ExactMatrix x = solve_expansion(targets, basis);
            for (size_t i = 0; i < chosen.size(); ++i)
                for (size_t j = 0; j < basis.size(); ++j)
                    CHECK(x.at(static_cast<int>(i), static_cast<int>(j)) == chosen[i][j]);
        }
    }

    SECTION("dependent basis is reported with its index") {
        std::vector<GradedPoly> basis = {schur(Partition{2}), schur(Partition{1, 1}),
                                         schur(Partition{2}) + schur(Partition{1, 1})};
        try {
            solve_expansion({schur(Partition{2})}, basis);
            FAIL("expected rank_error");
        } catch (const rank_error& e) {
            CHECK(e.index() == 2);
        }
    }

    SECTION("target outside the span is reported") {
        std::vector<GradedPoly> basis = {qfun(Partition{3})}; // misses t1*t2 direction
        CHECK_THROWS_AS(solve_expansion({schur(Partition{2, 1})}, basis), rank_error);
    }

    SECTION("degree mismatches are rejected") {
        CHECK_THROWS_AS(solve_expansion({schur(Partition{2})}, {schur(Partition{3})}),
                        std::invalid_argument);
        GradedPoly mixed = schur(Partition{2}) + schur(Partition{3});
        CHECK_THROWS_AS(solve_expansion({mixed}, {schur(Partition{2})}), std::invalid_argument);
    }
}

TEST_CASE("smith normal form") {
    CHECK(divisors_of({{1, 0}, {0, 1}}) == std::vector<Int>{1, 1});
    CHECK(divisors_of({{2, 0}, {0, 3}}) == std::vector<Int>{1, 6});
    CHECK(divisors_of({{5, 3, 1}, {3, 5, 3}, {1, 3, 3}}) == std::vector<Int>{1, 2, 8});
    CHECK(divisors_of({{2, 0}, {0, 0}}) == std::vector<Int>{2, 0});
    CHECK(divisors_of({{4, 2}, {2, 3}}) == std::vector<Int>{1, 8});

    SECTION("divisibility chain whose product is |det|") {
        std::mt19937 rng(3);
        for (int trial = 0; trial < 30; ++trial) {
            int size = 2 + trial % 4;
            ExactMatrix m = oracles::random_int_matrix(rng, size, size, 7);
            auto d = smith_normal_form(m);
            Int prod = 1;
            for (size_t i = 0; i < d.size(); ++i) {
                CHECK(d[i] >= 0);
                if (i + 1 < d.size() && d[i + 1] != 0) {
                    REQUIRE(d[i] != 0);
                    CHECK(d[i + 1] % d[i] == 0);
                }
                if (d[i] != 0) prod *= d[i];
            }
            Int det = numerator(determinant(m));
            if (det != 0) CHECK(prod == abs(det));
        }
    }

    SECTION("invariant under unimodular column mixes") {
        std::mt19937 rng(8);
        for (int trial = 0; trial < 10; ++trial) {
            ExactMatrix m = oracles::random_int_matrix(rng, 4, 3, 5);
            ExactMatrix mixed = oracles::random_column_mix(rng, m, 12);
            CHECK(smith_normal_form(m) == smith_normal_form(mixed));
        }
    }

    SECTION("rational entries are rejected") {
        ExactMatrix half(1, 1);
        half.at(0, 0) = Rat(1, 2);
        CHECK_THROWS_AS(smith_normal_form(half), std::invalid_argument);
        CHECK_THROWS_AS(hermite_normal_form(half), std::invalid_argument);
    }
}

TEST_CASE("hermite normal form") {
    SECTION("fixed point on an already reduced matrix") {
        ExactMatrix h = from_grid({{1, 0}, {0, 1}, {1, 0}});
        CHECK(hermite_normal_form(h) == h);
    }

    SECTION("idempotent and unimodular-invariant") {
        std::mt19937 rng(41);
        for (int trial = 0; trial < 15; ++trial) {
            ExactMatrix m = oracles::random_int_matrix(rng, 5, 3, 6);
            ExactMatrix h = hermite_normal_form(m);
            CHECK(hermite_normal_form(h) == h);
            ExactMatrix mixed = oracles::random_column_mix(rng, m, 10);
            CHECK(hermite_normal_form(mixed) == h);
        }
    }

    SECTION("detects column-inequivalent matrices") {
        ExactMatrix a = from_grid({{1, 0}, {0, 1}});
        ExactMatrix b = from_grid({{2, 0}, {0, 1}});
        CHECK_FALSE(hermite_normal_form(a) == hermite_normal_form(b));
    }
}

TEST_CASE("block decomposition") {
    SECTION("diagonal matrix with singleton keys") {
        std::vector<BasisLabel> labels;
        for (int i = 1; i <= 3; ++i) labels.push_back(BasisLabel::single(Partition{i}));
        ExactMatrix m(labels, labels);
        for (int i = 0; i < 3; ++i) m.at(i, i) = i + 1;
        auto blocks = block_decompose(m, [](const BasisLabel& l) {
            return std::pair<int, int>{l.part().weight(), 0};
        });
        REQUIRE(blocks.size() == 3);
        for (const auto& [key, b] : blocks) CHECK(b.row_count() == 1);
    }

    SECTION("off-block entries raise structure_error with the position") {
        std::vector<BasisLabel> labels = {BasisLabel::single(Partition{1}),
                                          BasisLabel::single(Partition{2})};
        ExactMatrix m(labels, labels);
        m.at(0, 1) = 1;
        try {
            block_decompose(m, [](const BasisLabel& l) {
                return std::pair<int, int>{l.part().weight(), 0};
            });
            FAIL("expected structure_error");
        } catch (const structure_error& e) {
            CHECK(std::string(e.what()).find("[1]") != std::string::npos);
            CHECK(std::string(e.what()).find("[2]") != std::string::npos);
        }
    }

    SECTION("blocks reassemble the original matrix") {
        std::vector<BasisLabel> labels;
        for (const auto& l : partitions_of(4)) labels.push_back(BasisLabel::single(l));
        ExactMatrix m(labels, labels);
        for (int i = 0; i < m.row_count(); ++i)
            for (int j = 0; j < m.col_count(); ++j)
                if (labels[i].part().length() == labels[j].part().length())
                    m.at(i, j) = 10 * i + j + 1;
        auto blocks = block_decompose(
            m, [](const BasisLabel& l) { return std::pair<int, int>{l.part().length(), 0}; });
        ExactMatrix back(labels, labels);
        for (const auto& [key, b] : blocks)
            for (int i = 0; i < b.row_count(); ++i)
                for (int j = 0; j < b.col_count(); ++j)
                    back.at(back.row_index(b.row_labels()[i]), back.col_index(b.col_labels()[j])) =
                        b.at(i, j);
        CHECK(back == m);
    }
}

TEST_CASE("matrix serialization") {
    std::vector<BasisLabel> rows = {BasisLabel::single(Partition{2}),
                                    BasisLabel::single(Partition{1, 1})};
    std::vector<BasisLabel> cols = {BasisLabel::pair(Partition{2}, Partition()),
                                    BasisLabel::pair(Partition(), Partition{1})};
    ExactMatrix m(rows, cols);
    m.at(0, 0) = 1;
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    m.at(1, 1) = -1;

    SECTION("JSON round trip") { CHECK(matrix_from_json(matrix_to_json(m)) == m); }

    SECTION("CSV is deterministic and quoted") {
        CHECK(matrix_to_csv(m) ==
              ",\"([2],[])\",\"([],[1])\"\n"
              "[2],1,1\n"
              "\"[1,1]\",1,-1\n");
    }

    SECTION("markdown uses compact labels") {
        std::string md = matrix_to_md(m);
        CHECK(md.find("(2,∅)") != std::string::npos);
        CHECK(md.find("(1^2)") != std::string::npos);
    }

    SECTION("label strings parse back") {
        for (const auto& l : cols) CHECK(BasisLabel::parse(l.to_string()) == l);
        CHECK(BasisLabel::parse("([2,1],[1])") == BasisLabel::pair(Partition{2, 1}, Partition{1}));
        CHECK_THROWS_AS(BasisLabel::parse("(oops)"), parse_error);
    }

    SECTION("reordering by labels") {
        ExactMatrix r = m.reordered({rows[1], rows[0]}, {cols[1], cols[0]});
        CHECK(r.at(0, 0) == -1);
        CHECK(r.at(1, 1) == 1);
        CHECK(r.reordered(rows, cols) == m);
    }
}
