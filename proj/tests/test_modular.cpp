#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include <symbasis/modular_data.hpp>
#include <symbasis/transition.hpp>

using namespace symbasis;

#ifndef SYMBASIS_REPO_ROOT
#define SYMBASIS_REPO_ROOT "."
#endif

namespace {

const std::string kRoot = SYMBASIS_REPO_ROOT;

DatasetStore p2_store() {
    DatasetStore s;
    s.load_directory(kRoot + "/data/modular/p2");
    return s;
}

} // namespace

TEST_CASE("dataset files load and validate") {
    for (int n = 1; n <= 5; ++n) {
        ModularDataset ds = load_dataset(kRoot + "/data/modular/p2/n" + std::to_string(n) + ".json");
        CHECK(ds.p == 2);
        CHECK(ds.n == n);
        CHECK(ds.decomposition.has_value());
        CHECK(ds.regular_labels == strict_partitions(n));
    }
    ModularDataset boot = load_dataset(kRoot + "/data/modular/p3/n5.json");
    CHECK(boot.p == 3);
    CHECK(boot.regular_labels.size() == 5);
    CHECK(boot.decomposition.has_value());
    REQUIRE(boot.brauer_polys.has_value());
    // pair columns need the weight-2 entries as well
    CHECK(boot.brauer_polys->count(Partition{2}) == 1);
    CHECK(boot.brauer_polys->count(Partition{1, 1}) == 1);
}

TEST_CASE("dataset save/load round trip") {
    ModularDataset ds = load_dataset(kRoot + "/data/modular/p3/n5.json");
    std::string tmp = (std::filesystem::temp_directory_path() / "symbasis_ds_roundtrip.json").string();
    save_dataset(ds, tmp);
    ModularDataset back = load_dataset(tmp);
    std::remove(tmp.c_str());
    CHECK(back.p == ds.p);
    CHECK(back.n == ds.n);
    CHECK(back.regular_labels == ds.regular_labels);
    CHECK(*back.decomposition == *ds.decomposition);
    CHECK(*back.brauer_polys == *ds.brauer_polys);
    CHECK(back.source_note == ds.source_note);
}

TEST_CASE("dataset validation rejects bad payloads") {
    json good = dataset_to_json(load_dataset(kRoot + "/data/modular/p2/n3.json"));

    SECTION("negative decomposition entry, named") {
        json bad = good;
        bad["decomposition"]["entries"][2][0] = "-1";
        try {
            validate_dataset(dataset_from_json(bad));
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find("[1,1,1]") != std::string::npos);
        }
    }

    SECTION("broken unit diagonal") {
        json bad = good;
        bad["decomposition"]["entries"][0][0] = "2";
        CHECK_THROWS_AS(validate_dataset(dataset_from_json(bad)), parse_error);
    }

    SECTION("wrong regular label set") {
        json bad = good;
        bad["regular"] = {"[3]"};
        CHECK_THROWS_AS(validate_dataset(dataset_from_json(bad)), parse_error);
    }

    SECTION("inconsistent double payload cites the first bad row") {
        // attach correct-looking polynomials, then perturb one decomposition row
        ModularDataset ds = dataset_from_json(good);
        DatasetStore store(ds);
        std::map<Partition, GradedPoly, CanonicalLess> polys;
        for (const auto& mu : ds.regular_labels) polys[mu] = store.brauer(mu, 2);
        ds.brauer_polys = polys;
        CHECK_NOTHROW(validate_dataset(ds));
        json bad = dataset_to_json(ds);
        bad["decomposition"]["entries"][2][0] = "2"; // row [1,1,1]
        try {
            validate_dataset(dataset_from_json(bad));
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find("inconsistent") != std::string::npos);
            CHECK(std::string(e.what()).find("[1,1,1]") != std::string::npos);
        }
    }

    SECTION("polynomials on a killed variable are rejected") {
        ModularDataset ds = dataset_from_json(good);
        std::map<Partition, GradedPoly, CanonicalLess> polys;
        polys[Partition{3}] = GradedPoly::var(2) * GradedPoly::var(1); // uses t2 at p=2
        polys[Partition{2, 1}] = qfun(Partition{2, 1});
        ds.brauer_polys = polys;
        CHECK_THROWS_AS(validate_dataset(ds), parse_error);
    }
}

TEST_CASE("brauer polynomials from decomposition payloads") {
    DatasetStore store = p2_store();

    SECTION("frozen small values") {
        CHECK(store.brauer(Partition{1}, 2) == GradedPoly::var(1));
        CHECK(store.brauer(Partition{2}, 2) == qfun(Partition{2}));
        GradedPoly b21 = store.brauer(Partition{2, 1}, 2);
        CHECK(b21 == p_reduced_schur(Partition{2, 1}, 2)); // row (2,1) of the n=3 table is a unit row
        CHECK(b21 == Rat(1, 3) * (GradedPoly::var(1) * GradedPoly::var(1) * GradedPoly::var(1)) -
                         GradedPoly::var(3));
    }

    SECTION("supported on odd variables, homogeneous") {
        for (int n = 1; n <= 5; ++n)
            for (const auto& mu : strict_partitions(n)) {
                GradedPoly b = store.brauer(mu, 2);
                CHECK(b.homogeneous_degree() == n);
                CHECK(reduce_p(b, 2) == b);
            }
    }

    SECTION("defining relation across all of P(n)") {
        for (int n = 1; n <= 5; ++n) {
            const ModularDataset& ds = store.get(2, n);
            const ExactMatrix& d = *ds.decomposition;
            for (int i = 0; i < d.row_count(); ++i) {
                GradedPoly sum;
                for (int j = 0; j < d.col_count(); ++j)
                    if (d.at(i, j) != 0)
                        sum += d.at(i, j) * store.brauer(d.col_labels()[j].part(), 2);
                CHECK(sum == p_reduced_schur(d.row_labels()[i].part(), 2));
            }
        }
    }

    SECTION("semisimple fallback below p") {
        DatasetStore empty;
        CHECK(empty.brauer(Partition(), 5) == GradedPoly::one());
        CHECK(empty.brauer(Partition{1}, 2) == GradedPoly::var(1));
        CHECK(empty.brauer(Partition{2, 1}, 5) == schur(Partition{2, 1}));
    }

    SECTION("missing data names the gap") {
        DatasetStore empty;
        try {
            empty.brauer(Partition{3, 2}, 3);
            FAIL("expected data_not_found");
        } catch (const data_not_found& e) {
            CHECK(std::string(e.what()).find("p=3") != std::string::npos);
            CHECK(std::string(e.what()).find("n=5") != std::string::npos);
        }
    }
}

TEST_CASE("cartan matrices") {
    SECTION("one-dimensional case") {
        ModularDataset ds = load_dataset(kRoot + "/data/modular/p2/n1.json");
        ExactMatrix c = cartan(ds);
        REQUIRE(c.row_count() == 1);
        CHECK(c.at(0, 0) == 1);
    }

    SECTION("cartan and stembridge gram share elementary divisors, n <= 5") {
        DatasetStore store = p2_store();
        for (int n = 1; n <= 5; ++n) {
            auto snf_c = smith_normal_form(cartan(store.get(2, n)));
            auto snf_g = smith_normal_form(gram_of(stembridge_submatrix(build_transition(n))));
            INFO("n = " << n);
            CHECK(snf_c == snf_g);
        }
    }

    SECTION("p = 3, n = 5 divisors follow the glaisher excess") {
        ModularDataset ds = load_dataset(kRoot + "/data/modular/p3/n5.json");
        CHECK(smith_normal_form(cartan(ds)) == std::vector<Int>{1, 1, 1, 3, 3});
    }

    SECTION("missing payload raises data_not_found") {
        ModularDataset ds = load_dataset(kRoot + "/data/modular/p3/n5.json");
        ds.decomposition.reset();
        CHECK_THROWS_AS(cartan(ds), data_not_found);
    }
}

TEST_CASE("bootstrap derivation") {
    SECTION("closed loop through the p = 3 reference table") {
        ExactMatrix a_ref = load_matrix_file(kRoot + "/fixtures/p3/A5.json");
        ModularDataset ds = derive_bootstrap(a_ref, 3, 5);
        DatasetStore store(ds);
        ExactMatrix rebuilt = build_transition_p(5, 3, store);
        CHECK(rebuilt.reordered(a_ref.row_labels(), a_ref.col_labels()) == a_ref);
    }

    SECTION("p = 2 recovers q-consistent data at small weight") {
        ExactMatrix a2 = load_matrix_file(kRoot + "/fixtures/p2/A2.json");
        ModularDataset ds = derive_bootstrap(a2, 2, 2);
        CHECK(ds.brauer_polys->at(Partition{2}) == qfun(Partition{2}));
        DatasetStore store(ds);
        CHECK(store.brauer(Partition{1}, 2) == GradedPoly::var(1)); // fallback below p
    }

    SECTION("identity table at n = 1") {
        std::vector<BasisLabel> rows = {BasisLabel::single(Partition{1})};
        std::vector<BasisLabel> cols = {BasisLabel::pair(Partition{1}, Partition())};
        ExactMatrix a(rows, cols);
        a.at(0, 0) = 1;
        ModularDataset ds = derive_bootstrap(a, 3, 1);
        CHECK(ds.brauer_polys->at(Partition{1}) == GradedPoly::var(1));
    }

    SECTION("a transcription slip is caught by the factorization check") {
        ExactMatrix a_ref = load_matrix_file(kRoot + "/fixtures/p3/A5.json");
        a_ref.at(0, 5) = 2; // (5) row, (2,[1]) column
        CHECK_THROWS_AS(derive_bootstrap(a_ref, 3, 5), std::exception);
    }

    SECTION("singular input is rejected") {
        std::vector<BasisLabel> rows = {BasisLabel::single(Partition{2}),
                                        BasisLabel::single(Partition{1, 1})};
        std::vector<BasisLabel> cols = {BasisLabel::pair(Partition{2}, Partition()),
                                        BasisLabel::pair(Partition(), Partition{1})};
        ExactMatrix a(rows, cols); // all zero
        CHECK_THROWS_AS(derive_bootstrap(a, 2, 2), std::invalid_argument);
    }
}

TEST_CASE("general-p compound basis elements") {
    DatasetStore store;
    store.load_file(kRoot + "/data/modular/p3/n5.json");

    SECTION("regular partitions give back their brauer polynomial") {
        for (const auto& mu : regular_partitions(5, 3))
            CHECK(w_basis_p(mu, 3, store) == store.brauer(mu, 3));
    }

    SECTION("divided component lands in the stretched variables") {
        GradedPoly w = w_basis_p(Partition{2, 1, 1, 1}, 3, store); // splits to ((2), (1))
        CHECK(w == store.brauer(Partition{2}, 3) * GradedPoly::var(3));
    }

    SECTION("p = 2 brauer-compound differs from the q-compound but spans the same space") {
        DatasetStore p2 = p2_store();
        ExactMatrix a_q = build_transition(3);
        ExactMatrix a_b = build_transition_p(3, 2, p2);
        CHECK_FALSE(a_q == a_b);
        // mutual expansion succeeds both ways, so the spans agree
        std::vector<GradedPoly> wq, wb;
        for (const auto& l : partitions_of(3)) {
            wq.push_back(w_basis(l));
            wb.push_back(w_basis_p(l, 2, p2));
        }
        CHECK_NOTHROW(solve_expansion(wq, wb));
        CHECK_NOTHROW(solve_expansion(wb, wq));
    }

    SECTION("q-compound and brauer-compound transition dets share the 2-power") {
        DatasetStore p2 = p2_store();
        for (int n = 1; n <= 5; ++n) {
            Int det_b = numerator(determinant(build_transition_p(n, 2, p2)));
            CHECK(Int(abs(det_b)) == int_pow(Int(2), det_exponent(n, 2)));
        }
    }
}

TEST_CASE("verify_all with datasets") {
    SECTION("p = 3, n = 5 against the bootstrap dataset") {
        DatasetStore store;
        store.load_file(kRoot + "/data/modular/p3/n5.json");
        TransitionReport r = verify_all(5, 3, &store);
        for (const auto& c : r.checks) {
            INFO(c.name << ": " << c.lhs << " vs " << c.rhs);
            CHECK(c.pass);
        }
        REQUIRE(r.blocks.size() == 2);
        CHECK(Int(abs(r.blocks[0].det)) == 9);
        CHECK(Int(abs(r.blocks[1].det)) == 9);
        CHECK(r.blocks[0].expected_exponent == 2);
        CHECK(r.blocks[1].expected_exponent == 2);
        CHECK(r.k == 2);
    }

    SECTION("gram of the p = 3 table matches its reference fixture") {
        DatasetStore store;
        store.load_file(kRoot + "/data/modular/p3/n5.json");
        ExactMatrix g = gram(build_transition_p(5, 3, store));
        ExactMatrix ref = load_matrix_file(kRoot + "/fixtures/p3/gram5.json");
        CHECK(g.reordered(ref.row_labels(), ref.col_labels()) == ref);
    }

    SECTION("p > 2 without data is an explicit gap") {
        CHECK_THROWS_AS(verify_all(5, 3, nullptr), data_not_found);
    }
}

TEST_CASE("decomposition comparison") {
    DatasetStore store = p2_store();
    for (int n = 1; n <= 5; ++n) {
        DecompositionComparison r = compare_decomposition(n, store);
        REQUIRE_FALSE(r.skipped);
        INFO("n = " << n);
        CHECK(r.all_pass());
    }

    SECTION("reports itself skipped without data") {
        DatasetStore empty;
        DecompositionComparison r = compare_decomposition(4, empty);
        CHECK(r.skipped);
        CHECK_FALSE(r.reason.empty());
    }
}
