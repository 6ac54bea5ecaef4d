#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <symbasis/bases.hpp>
#include <symbasis/exact_matrix.hpp>
#include <symbasis/serde.hpp>

namespace symbasis {

/// External modular-representation data for one (p, n): the p-regular labels
/// of weight n plus one or both payloads. Brauer character values are never
/// computed from group theory here; they arrive as data with a provenance
/// note. brauer_polys may also carry lower-weight polynomials (a bootstrap
/// dataset ships the entries needed by the pair columns of its transition
/// matrix).
struct ModularDataset {
    int p = 2;
    int n = 0;
    std::vector<Partition> regular_labels;                      // weight n, canonical order
    std::optional<ExactMatrix> decomposition;                   // rows P(n), cols regular_labels
    std::optional<std::map<Partition, GradedPoly, CanonicalLess>> brauer_polys;
    std::string source_note;
};

namespace detail {

inline void validate_brauer_poly(const Partition& label, const GradedPoly& poly, int p) {
    if (!label.is_regular(p))
        throw parse_error("brauer_polys label " + label.to_string() + " is not " +
                          std::to_string(p) + "-regular");
    auto deg = poly.homogeneous_degree();
    if (label.weight() > 0 && (!deg || *deg != label.weight()))
        throw parse_error("brauer_polys entry " + label.to_string() +
                          " is not homogeneous of its label weight");
    for (const auto& [m, c] : poly.terms())
        if (m.uses_index_divisible_by(p))
            throw parse_error("brauer_polys entry " + label.to_string() +
                              " uses a variable with index divisible by " + std::to_string(p));
}

} // namespace detail

/// Validates every invariant of a dataset: label sets, shape and sign of the
/// decomposition matrix, unit diagonal, dominance triangularity where
/// comparable, p-class-regular support of the polynomials, and, when both
/// payloads are present, the defining relation
///   p_reduced_schur(lambda) = sum_mu d[lambda][mu] * B_mu
/// coefficientwise for every lambda of weight n.
inline void validate_dataset(const ModularDataset& ds) {
    require_prime(ds.p);
    auto expected = regular_partitions(ds.n, ds.p);
    if (ds.regular_labels != expected)
        throw parse_error("regular label list is not the canonical set of " +
                          std::to_string(ds.p) + "-regular partitions of " + std::to_string(ds.n));

    if (ds.decomposition) {
        const ExactMatrix& d = *ds.decomposition;
        std::vector<BasisLabel> want_rows, want_cols;
        for (const auto& l : partitions_of(ds.n)) want_rows.push_back(BasisLabel::single(l));
        for (const auto& l : ds.regular_labels) want_cols.push_back(BasisLabel::single(l));
        if (d.row_labels() != want_rows || d.col_labels() != want_cols)
            throw parse_error("decomposition matrix labels must be P(n) by the regular labels, "
                              "both canonical");
        if (!d.is_integral()) throw parse_error("decomposition entries must be integers");
        for (int i = 0; i < d.row_count(); ++i) {
            const Partition& row = d.row_labels()[i].part();
            for (int j = 0; j < d.col_count(); ++j) {
                const Partition& col = d.col_labels()[j].part();
                const Rat& e = d.at(i, j);
                if (e < 0)
                    throw parse_error("negative decomposition entry at (" + row.to_string() + ", " +
                                      col.to_string() + ")");
                if (row == col && e != 1)
                    throw parse_error("decomposition diagonal entry at " + row.to_string() +
                                      " must be 1");
                if (e != 0 && !(row == col) && dominates(row, col))
                    throw parse_error("decomposition entry at (" + row.to_string() + ", " +
                                      col.to_string() + ") violates dominance triangularity");
            }
        }
    }

    if (ds.brauer_polys)
        for (const auto& [label, poly] : *ds.brauer_polys)
            detail::validate_brauer_poly(label, poly, ds.p);

    if (ds.decomposition && ds.brauer_polys) {
        const ExactMatrix& d = *ds.decomposition;
        for (const auto& mu : ds.regular_labels)
            if (!ds.brauer_polys->count(mu))
                throw parse_error("both payloads present but brauer_polys lacks " + mu.to_string());
        for (int i = 0; i < d.row_count(); ++i) {
            const Partition& lambda = d.row_labels()[i].part();
            GradedPoly sum;
            for (int j = 0; j < d.col_count(); ++j)
                sum += d.at(i, j) * ds.brauer_polys->at(d.col_labels()[j].part());
            if (!(sum == p_reduced_schur(lambda, ds.p)))
                throw parse_error("payloads are inconsistent at " + lambda.to_string() +
                                  ": decomposition row does not reproduce the reduced Schur "
                                  "polynomial");
        }
    }
}

inline json dataset_to_json(const ModularDataset& ds) {
    json j;
    j["p"] = ds.p;
    j["n"] = ds.n;
    json reg = json::array();
    for (const auto& l : ds.regular_labels) reg.push_back(l.to_string());
    j["regular"] = std::move(reg);
    j["decomposition"] = ds.decomposition ? matrix_to_json(*ds.decomposition) : json(nullptr);
    if (ds.brauer_polys) {
        json polys = json::object();
        for (const auto& [label, poly] : *ds.brauer_polys) polys[label.to_string()] = poly_to_json(poly);
        j["brauer_polys"] = std::move(polys);
    } else {
        j["brauer_polys"] = nullptr;
    }
    j["source_note"] = ds.source_note;
    return j;
}

inline ModularDataset dataset_from_json(const json& j) {
    ModularDataset ds;
    ds.p = j.at("p").get<int>();
    ds.n = j.at("n").get<int>();
    for (const auto& s : j.at("regular")) ds.regular_labels.push_back(Partition::parse(s.get<std::string>()));
    if (!j.at("decomposition").is_null()) ds.decomposition = matrix_from_json(j.at("decomposition"));
    if (!j.at("brauer_polys").is_null()) {
        std::map<Partition, GradedPoly, CanonicalLess> polys;
        for (const auto& [key, value] : j.at("brauer_polys").items())
            polys.emplace(Partition::parse(key), poly_from_json(value));
        ds.brauer_polys = std::move(polys);
    }
    if (j.contains("source_note")) ds.source_note = j.at("source_note").get<std::string>();
    return ds;
}

/// Loads one dataset file and validates every invariant before returning it.
inline ModularDataset load_dataset(const std::string& path) {
    ModularDataset ds = dataset_from_json(load_json_file(path));
    try {
        validate_dataset(ds);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
    return ds;
}

inline void save_dataset(const ModularDataset& ds, const std::string& path) {
    write_text_file(path, dataset_to_json(ds).dump(2) + "\n");
}

/// Collection of loaded datasets with a Brauer-polynomial lookup. Resolution
/// order for B_mu at prime p:
///   1. an explicit brauer_polys entry in any loaded dataset for p,
///   2. the solved triangular system of a decomposition payload of weight(mu),
///   3. weight(mu) < p, where the reduction is semisimple and B_mu is the
///      Schur polynomial itself.
/// Anything else raises data_not_found naming (p, weight).
class DatasetStore {
public:
    DatasetStore() = default;
    explicit DatasetStore(ModularDataset ds) { add(std::move(ds)); }

    void add(ModularDataset ds) {
        validate_dataset(ds);
        datasets_[{ds.p, ds.n}] = std::move(ds);
    }

    void load_file(const std::string& path) { add(load_dataset(path)); }

    /// Loads every *.json in a directory (non-recursive).
    void load_directory(const std::string& dir) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) load_file(f.string());
    }

    /// Loads a file or a directory, whichever the path names.
    void load_path(const std::string& path) {
        if (std::filesystem::is_directory(path)) load_directory(path);
        else load_file(path);
    }

    bool empty() const { return datasets_.empty(); }

    const ModularDataset* find(int p, int n) const {
        auto it = datasets_.find({p, n});
        return it == datasets_.end() ? nullptr : &it->second;
    }

    const ModularDataset& get(int p, int n) const {
        if (const ModularDataset* ds = find(p, n)) return *ds;
        throw data_not_found("no dataset loaded for (p=" + std::to_string(p) +
                             ", n=" + std::to_string(n) + ")");
    }

    GradedPoly brauer(const Partition& mu, int p) const {
        require_prime(p);
        if (!mu.is_regular(p))
            throw std::invalid_argument("brauer: " + mu.to_string() + " is not " +
                                        std::to_string(p) + "-regular");
        const int n = mu.weight();
        if (auto it = cache_.find({p, mu}); it != cache_.end()) return it->second;
        for (const auto& [key, ds] : datasets_) {
            if (key.first != p || !ds.brauer_polys) continue;
            if (auto it = ds.brauer_polys->find(mu); it != ds.brauer_polys->end())
                return cache_[{p, mu}] = it->second;
        }
        if (const ModularDataset* ds = find(p, n); ds && ds->decomposition) {
            solve_from_decomposition(*ds);
            return cache_.at({p, mu});
        }
        if (n < p) return cache_[{p, mu}] = schur(mu); // semisimple range
        throw data_not_found("no Brauer data covering (p=" + std::to_string(p) +
                             ", n=" + std::to_string(n) + ") for " + mu.to_string());
    }

private:
    // The regular-by-regular corner of a decomposition matrix is unitriangular
    // in the canonical order, so the defining relation solves for the B's by
    // forward substitution.
    void solve_from_decomposition(const ModularDataset& ds) const {
        const ExactMatrix& d = *ds.decomposition;
        std::vector<GradedPoly> solved;
        for (size_t i = 0; i < ds.regular_labels.size(); ++i) {
            const Partition& lambda = ds.regular_labels[i];
            const int row = d.row_index(BasisLabel::single(lambda));
            for (size_t j = i + 1; j < ds.regular_labels.size(); ++j)
                if (d.at(row, d.col_index(BasisLabel::single(ds.regular_labels[j]))) != 0)
                    throw invariant_error("decomposition matrix is not triangular at row " +
                                          lambda.to_string());
            GradedPoly b = p_reduced_schur(lambda, ds.p);
            for (size_t j = 0; j < i; ++j) {
                Rat c = d.at(row, d.col_index(BasisLabel::single(ds.regular_labels[j])));
                if (c != 0) b -= c * solved[j];
            }
            solved.push_back(std::move(b));
        }
        for (size_t i = 0; i < ds.regular_labels.size(); ++i)
            cache_[{ds.p, ds.regular_labels[i]}] = solved[i];
    }

    struct CacheKeyLess {
        bool operator()(const std::pair<int, Partition>& a,
                        const std::pair<int, Partition>& b) const {
            if (a.first != b.first) return a.first < b.first;
            return canonical_before(a.second, b.second);
        }
    };

    std::map<std::pair<int, int>, ModularDataset> datasets_;
    mutable std::map<std::pair<int, Partition>, GradedPoly, CacheKeyLess> cache_;
};

/// Brauer-Schur polynomial of a p-regular partition, resolved through a store.
inline GradedPoly brauer_schur(const Partition& mu, const DatasetStore& store, int p) {
    return store.brauer(mu, p);
}

inline GradedPoly brauer_schur(const Partition& mu, const ModularDataset& ds) {
    return DatasetStore(ds).brauer(mu, ds.p);
}

/// General-p compound basis element: the Brauer-Schur polynomial of the
/// p-regular component times the Schur polynomial of the divided component in
/// the p-stretched variables. For p = 2 this is a different basis from
/// w_basis (Q's are replaced by Brauer-Schur polynomials); both are exposed.
inline GradedPoly w_basis_p(const Partition& lambda, int p, const DatasetStore& store) {
    SplitPair sp = split_mod_p(lambda, p);
    return store.brauer(sp.first, p) * stretch(schur(sp.second), p);
}

/// Cartan matrix t(D) * D of the decomposition payload, indexed by the
/// regular labels.
inline ExactMatrix cartan(const ModularDataset& ds) {
    if (!ds.decomposition)
        throw data_not_found("dataset (p=" + std::to_string(ds.p) + ", n=" + std::to_string(ds.n) +
                             ") has no decomposition payload");
    return gram_of(*ds.decomposition);
}

/// Reconstructs a dataset from a reference transition matrix: solves
/// W = A^{-1} S in monomial coordinates, reads the Brauer-Schur polynomials
/// off the (mu, empty) columns, and factors the stretched Schur polynomial
/// out of every pair column to recover the lower-weight entries. The columns
/// with empty second component are also exactly the decomposition matrix, so
/// the result carries both payloads and closes the loop: rebuilding the
/// transition matrix from the derived dataset must reproduce the input.
inline ModularDataset derive_bootstrap(const ExactMatrix& a_ref, int p, int n) {
    require_prime(p);
    if (!a_ref.is_square()) throw std::invalid_argument("derive_bootstrap: matrix must be square");

    // The rows of A express the Schur polynomials over the compound basis, so
    // A^{-1} expresses the compound basis over the Schur polynomials. Invert
    // [A | I] exactly.
    std::vector<GradedPoly> schur_targets;
    for (const auto& l : a_ref.row_labels()) schur_targets.push_back(schur(l.part()));
    const int dim = a_ref.row_count();
    std::vector<std::vector<Rat>> aug(dim, std::vector<Rat>(2 * dim, Rat(0)));
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) aug[i][j] = a_ref.at(i, j);
        aug[i][dim + i] = 1;
    }
    for (int col = 0; col < dim; ++col) {
        int piv = -1;
        for (int i = col; i < dim; ++i)
            if (aug[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw std::invalid_argument("derive_bootstrap: reference matrix is singular");
        std::swap(aug[col], aug[piv]);
        Rat invp = Rat(1) / aug[col][col];
        for (int j = 0; j < 2 * dim; ++j) aug[col][j] *= invp;
        for (int i = 0; i < dim; ++i) {
            if (i == col || aug[i][col] == 0) continue;
            Rat f = aug[i][col];
            for (int j = 0; j < 2 * dim; ++j) aug[i][j] -= f * aug[col][j];
        }
    }

    std::map<Partition, GradedPoly, CanonicalLess> polys;
    for (int col = 0; col < dim; ++col) {
        const BasisLabel& label = a_ref.col_labels()[col];
        if (!label.is_pair())
            throw std::invalid_argument("derive_bootstrap: column labels must be pairs");
        GradedPoly w;
        for (int r = 0; r < dim; ++r) {
            // A^{-1}[col][r] is the S_r-coefficient of W_col
            if (aug[col][dim + r] != 0) w += aug[col][dim + r] * schur_targets[r];
        }
        GradedPoly b;
        if (label.second().empty()) {
            b = w;
        } else {
            // W = B (x) S_nu(t_{p.}): pick the leading stretched monomial of
            // the divisor, collect the matching terms of W, strip and rescale,
            // then verify the product reproduces W exactly.
            GradedPoly divisor = stretch(schur(label.second()), p);
            const auto& lead = *divisor.terms().rbegin();
            for (const auto& [mono, c] : w.terms()) {
                std::map<int, int> free_part, p_part;
                for (const auto& [idx, e] : mono.exponents())
                    (idx % p == 0 ? p_part : free_part)[idx] = e;
                if (Monomial::from_exponents(p_part) == lead.first)
                    b.add_term(Monomial::from_exponents(free_part), c / lead.second);
            }
            if (!(b * divisor == w))
                throw invariant_error("derive_bootstrap: column " + label.to_string() +
                                      " does not factor through the stretched Schur polynomial; "
                                      "the reference table is inconsistent");
        }
        const Partition& mu = label.first();
        if (auto it = polys.find(mu); it != polys.end()) {
            if (!(it->second == b))
                throw invariant_error("derive_bootstrap: columns disagree on " + mu.to_string());
        } else {
            polys.emplace(mu, std::move(b));
        }
    }

    ModularDataset ds;
    ds.p = p;
    ds.n = n;
    ds.regular_labels = regular_partitions(n, p);

    // principal columns, reordered canonically, are the decomposition matrix
    std::vector<BasisLabel> col_labels;
    std::vector<int> col_idx;
    for (const auto& mu : ds.regular_labels) {
        col_idx.push_back(a_ref.col_index(BasisLabel::pair(mu, Partition())));
        col_labels.push_back(BasisLabel::single(mu));
    }
    ExactMatrix d = a_ref.columns(col_idx, col_labels);
    std::vector<BasisLabel> want_rows;
    for (const auto& l : partitions_of(n)) want_rows.push_back(BasisLabel::single(l));
    ds.decomposition = d.reordered(want_rows, col_labels);
    ds.brauer_polys = std::move(polys);
    ds.source_note = "derived mechanically from a reference transition matrix (p=" +
                     std::to_string(p) + ", n=" + std::to_string(n) + ")";
    validate_dataset(ds);
    return ds;
}

} // namespace symbasis
