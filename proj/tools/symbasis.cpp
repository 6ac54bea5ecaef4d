// Command-line front end: computes basis polynomials and transition matrices,
// runs the verification sweeps, and manages modular datasets.
//
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 missing data.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <symbasis/symbasis.hpp>

namespace {

using namespace symbasis;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMissingData = 3;

struct Options {
    int p = 2;
    std::vector<std::string> dataset_paths;
    std::string format = "md";
    std::string out;
    std::string paper_order;
    bool strict = false;
};

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) std::cout << text;
    else write_text_file(opt.out, text);
}

std::string dataset_root() {
    if (const char* env = std::getenv("SYMBASIS_DATA_DIR")) return env;
    return "data/modular";
}

// Loads the --dataset paths, or falls back to <root>/p<p> when none given.
DatasetStore resolve_store(const Options& opt) {
    DatasetStore store;
    if (!opt.dataset_paths.empty()) {
        for (const auto& path : opt.dataset_paths) store.load_path(path);
        return store;
    }
    std::string dir = dataset_root() + "/p" + std::to_string(opt.p);
    if (std::filesystem::is_directory(dir)) store.load_directory(dir);
    return store;
}

std::string render_poly(const GradedPoly& f, const std::string& format) {
    if (format == "json") return poly_to_json(f).dump(2) + "\n";
    if (format == "csv") return poly_to_csv(f);
    return f.to_string() + "\n";
}

std::string render_matrix(const ExactMatrix& m, const std::string& format) {
    if (format == "json") return matrix_to_json(m).dump(2) + "\n";
    if (format == "csv") return matrix_to_csv(m);
    return matrix_to_md(m);
}

struct Range {
    int lo = 0, hi = 0;
};

Range parse_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            int v = std::stoi(text);
            return {v, v};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw std::invalid_argument("bad range '" + text + "', expected N or LO..HI");
    }
}

int cmd_basis(const std::string& kind, const std::string& partition_text, const Options& opt) {
    Partition lambda = Partition::parse(partition_text);
    GradedPoly f;
    if (kind == "schur") {
        f = schur(lambda);
    } else if (kind == "q") {
        f = qfun(lambda);
    } else if (kind == "w") {
        f = w_basis(lambda);
    } else if (kind == "reduced") {
        f = p_reduced_schur(lambda, opt.p);
    } else if (kind == "brauer") {
        f = resolve_store(opt).brauer(lambda, opt.p);
    } else if (kind == "wp") {
        DatasetStore store = resolve_store(opt);
        f = w_basis_p(lambda, opt.p, store);
    } else {
        throw CLI::ValidationError("basis", "unknown basis kind '" + kind + "'");
    }
    emit(opt, render_poly(f, opt.format));
    return kExitOk;
}

ExactMatrix build_matrix(const std::string& kind, int n, const Options& opt) {
    auto transition = [&] {
        if (opt.p == 2 && opt.dataset_paths.empty()) return build_transition(n);
        DatasetStore store = resolve_store(opt);
        return build_transition_p(n, opt.p, store);
    };
    if (kind == "A") return transition();
    if (kind == "gram") return gram(transition());
    if (kind == "stembridge") return stembridge_submatrix(transition());
    if (kind == "cartan") {
        DatasetStore store = resolve_store(opt);
        return cartan(store.get(opt.p, n));
    }
    throw CLI::ValidationError("matrix", "unknown matrix kind '" + kind + "'");
}

int cmd_matrix(const std::string& kind, int n, const Options& opt) {
    ExactMatrix m = build_matrix(kind, n, opt);
    if (!opt.paper_order.empty()) {
        ExactMatrix ref = load_matrix_file(opt.paper_order);
        m = m.reordered(ref.row_labels(), ref.col_labels());
    }
    emit(opt, render_matrix(m, opt.format));
    return kExitOk;
}

int cmd_snf(const std::string& what, std::optional<int> n, const Options& opt) {
    ExactMatrix m;
    if (n) m = build_matrix(what, *n, opt);
    else m = load_matrix_file(what);
    auto divisors = smith_normal_form(m);
    if (opt.format == "json") {
        json j = json::array();
        for (const auto& d : divisors) j.push_back(d.str());
        emit(opt, j.dump() + "\n");
    } else {
        std::string s = "[";
        for (size_t i = 0; i < divisors.size(); ++i) {
            if (i) s += ",";
            s += divisors[i].str();
        }
        emit(opt, s + "]\n");
    }
    return kExitOk;
}

int cmd_verify(const std::string& scope, const std::string& range_text, const Options& opt) {
    Range range = parse_range(range_text);
    json runs = json::array();
    bool failed = false;
    bool skipped = false;
    std::string lines;

    auto note = [&](int n, const std::string& name, bool pass, const std::string& lhs,
                    const std::string& rhs) {
        if (!pass) failed = true;
        lines += std::string(pass ? "pass" : "FAIL") + "  n=" + std::to_string(n) + "  " + name;
        if (!pass) lines += "  [" + lhs + " != " + rhs + "]";
        lines += "\n";
    };

    DatasetStore store;
    bool store_loaded = false;
    auto the_store = [&]() -> DatasetStore& {
        if (!store_loaded) {
            store = resolve_store(opt);
            store_loaded = true;
        }
        return store;
    };

    for (int n = range.lo; n <= range.hi; ++n) {
        if (scope == "lengths" || scope == "all") {
            LengthReport r = verify_length_identities(n);
            json checks = json::array();
            for (const auto& c : r.checks) {
                note(n, c.name, c.pass, std::to_string(c.values.front()), "all equal");
                json values = json::array();
                for (long long v : c.values) values.push_back(v);
                checks.push_back({{"name", c.name}, {"pass", c.pass}, {"values", values}});
            }
            runs.push_back({{"n", n}, {"kind", "lengths"}, {"checks", checks}});
        }
        if (scope == "det" || scope == "blocks" || scope == "divisors" || scope == "all") {
            const DatasetStore* sp = nullptr;
            if (opt.p != 2 || !opt.dataset_paths.empty()) {
                if (the_store().empty())
                    throw data_not_found("no datasets found for p=" + std::to_string(opt.p));
                sp = &the_store();
            }
            TransitionReport r = verify_all(n, opt.p, sp);
            for (const auto& c : r.checks) {
                bool relevant = scope == "all" || (scope == "det" && c.name.find("det") != std::string::npos &&
                                                   c.name.find("block") == std::string::npos) ||
                                (scope == "det" && c.name.find("exponent") != std::string::npos) ||
                                (scope == "blocks" && c.name.find("block") != std::string::npos) ||
                                (scope == "divisors" && c.name.find("divisors") != std::string::npos);
                if (relevant) note(n, c.name, c.pass, c.lhs, c.rhs);
            }
            runs.push_back(report_to_json(r));
        }
        if (scope == "decomp" || scope == "all") {
            if (opt.p != 2) throw std::invalid_argument("decomposition comparison is a p=2 check");
            DecompositionComparison r = compare_decomposition(n, the_store());
            if (r.skipped) {
                skipped = true;
                lines += "skip  n=" + std::to_string(n) + "  " + r.reason + "\n";
                runs.push_back({{"n", n}, {"kind", "decomp"}, {"skipped", true}, {"reason", r.reason}});
            } else {
                json checks = json::array();
                for (const auto& c : r.checks) {
                    note(n, c.name, c.pass, c.lhs, c.rhs);
                    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"lhs", c.lhs}, {"rhs", c.rhs}});
                }
                runs.push_back({{"n", n}, {"kind", "decomp"}, {"skipped", false}, {"checks", checks}});
            }
        }
    }

    if (skipped && opt.strict) failed = true;
    if (opt.format == "json") {
        json out = {{"scope", scope}, {"p", opt.p}, {"pass", !failed}, {"runs", runs}};
        emit(opt, out.dump(2) + "\n");
    } else {
        emit(opt, lines + (failed ? "FAILED\n" : "OK\n"));
    }
    return failed ? kExitCheckFailed : kExitOk;
}

int cmd_dataset_validate(const std::string& path, const Options& opt) {
    ModularDataset ds = load_dataset(path);
    emit(opt, "valid: p=" + std::to_string(ds.p) + " n=" + std::to_string(ds.n) + " regular=" +
                  std::to_string(ds.regular_labels.size()) +
                  (ds.decomposition ? " +decomposition" : "") + (ds.brauer_polys ? " +polys" : "") +
                  "\n");
    return kExitOk;
}

int cmd_dataset_bootstrap(const std::string& from, int p, int n, const Options& opt) {
    ExactMatrix a_ref = load_matrix_file(from);
    ModularDataset ds = derive_bootstrap(a_ref, p, n);
    ds.source_note = "Bootstrap dataset derived mechanically from the reference p=" +
                     std::to_string(p) + ", n=" + std::to_string(n) + " transition table (" + from +
                     ") by inverting it over the Schur basis and factoring the stretched Schur"
                     " polynomials out of the pair columns. Regenerate with: symbasis dataset"
                     " bootstrap --from " + from + " --p " + std::to_string(p) + " --n " +
                     std::to_string(n);
    if (opt.out.empty()) {
        std::cout << dataset_to_json(ds).dump(2) << "\n";
    } else {
        save_dataset(ds, opt.out);
        std::cout << "wrote " << opt.out << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact symmetric-function bases, transition matrices, and their verification"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--p", opt.p, "prime (default 2)");
    app.add_option("--dataset", opt.dataset_paths, "dataset file or directory (repeatable)");
    app.add_option("--format", opt.format, "output format: json, csv, or md")
        ->check(CLI::IsMember({"json", "csv", "md"}));
    app.add_option("--out", opt.out, "write output to a file instead of stdout");
    app.add_flag("--strict", opt.strict, "treat skipped checks as failures");

    std::string basis_kind, basis_partition;
    auto* basis = app.add_subcommand("basis", "print a basis polynomial");
    basis->fallthrough();
    basis->add_option("kind", basis_kind, "schur | q | w | wp | reduced | brauer")->required();
    basis->add_option("partition", basis_partition, "partition, e.g. [2,1] or 2.1")->required();

    std::string matrix_kind;
    int matrix_n = 0;
    auto* matrix = app.add_subcommand("matrix", "print a transition/gram/stembridge/cartan matrix");
    matrix->fallthrough();
    matrix->add_option("kind", matrix_kind, "A | gram | stembridge | cartan")->required();
    matrix->add_option("n", matrix_n, "weight")->required();
    matrix->add_option("--paper-order", opt.paper_order,
                       "reorder rows/columns to match a fixture matrix JSON");

    std::string snf_what, snf_n;
    auto* snf = app.add_subcommand("snf", "elementary divisors of a matrix");
    snf->fallthrough();
    snf->add_option("what", snf_what, "matrix kind (with n) or a matrix JSON path")->required();
    snf->add_option("n", snf_n, "weight, when 'what' is a matrix kind");

    std::string verify_scope, verify_range;
    auto* verify = app.add_subcommand("verify", "run verification checks over a range of weights");
    verify->fallthrough();
    verify->add_option("scope", verify_scope, "all | lengths | det | blocks | divisors | decomp")
        ->required()
        ->check(CLI::IsMember({"all", "lengths", "det", "blocks", "divisors", "decomp"}));
    verify->add_option("range", verify_range, "weight or range LO..HI")->required();

    auto* dataset = app.add_subcommand("dataset", "validate or derive modular datasets");
    dataset->fallthrough();
    dataset->require_subcommand(1);
    std::string ds_path;
    auto* ds_validate = dataset->add_subcommand("validate", "load a dataset file and check every invariant");
    ds_validate->fallthrough();
    ds_validate->add_option("path", ds_path, "dataset JSON path")->required();
    std::string boot_from;
    int boot_p = 3, boot_n = 0;
    auto* ds_bootstrap =
        dataset->add_subcommand("bootstrap", "derive a dataset from a reference transition matrix");
    ds_bootstrap->fallthrough();
    ds_bootstrap->add_option("--from", boot_from, "reference matrix JSON")->required();
    ds_bootstrap->add_option("--p", boot_p, "prime")->required();
    ds_bootstrap->add_option("--n", boot_n, "weight")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (basis->parsed()) return cmd_basis(basis_kind, basis_partition, opt);
        if (matrix->parsed()) return cmd_matrix(matrix_kind, matrix_n, opt);
        if (snf->parsed()) {
            std::optional<int> n;
            if (!snf_n.empty()) n = std::stoi(snf_n);
            return cmd_snf(snf_what, n, opt);
        }
        if (verify->parsed()) return cmd_verify(verify_scope, verify_range, opt);
        if (ds_validate->parsed()) return cmd_dataset_validate(ds_path, opt);
        if (ds_bootstrap->parsed()) return cmd_dataset_bootstrap(boot_from, boot_p, boot_n, opt);
    } catch (const data_not_found& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMissingData;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
