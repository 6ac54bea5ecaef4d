#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <symbasis/bases.hpp>
#include <symbasis/exact_matrix.hpp>
#include <symbasis/modular_data.hpp>
#include <symbasis/serde.hpp>

namespace symbasis {

namespace detail {

/// Column labels of the transition matrix at prime p: pairs (mu, nu) with mu
/// p-regular of weight n0, nu arbitrary of weight n1, n0 + p*n1 = n, ordered
/// by n1 ascending and then canonically within each component.
inline std::vector<BasisLabel> compound_labels(int n, int p) {
    std::vector<BasisLabel> labels;
    for (int n1 = 0; p * n1 <= n; ++n1) {
        int n0 = n - p * n1;
        auto firsts = p == 2 ? strict_partitions(n0) : regular_partitions(n0, p);
        auto seconds = partitions_of(n1);
        for (const auto& mu : firsts)
            for (const auto& nu : seconds) labels.push_back(BasisLabel::pair(mu, nu));
    }
    return labels;
}

inline ExactMatrix build_transition_impl(int n, int p,
                                         const std::function<GradedPoly(const BasisLabel&)>& basis_of) {
    std::vector<BasisLabel> rows;
    std::vector<GradedPoly> targets;
    for (const auto& lambda : partitions_of(n)) {
        rows.push_back(BasisLabel::single(lambda));
        targets.push_back(schur(lambda));
    }
    std::vector<BasisLabel> cols = compound_labels(n, p);
    std::vector<GradedPoly> basis;
    for (const auto& l : cols) basis.push_back(basis_of(l));
    ExactMatrix a = solve_expansion(targets, basis, rows, cols);
    if (!a.is_integral())
        throw invariant_error("transition matrix for n=" + std::to_string(n) +
                              " has a non-integer entry");
    return a;
}

} // namespace detail

/// Transition matrix from the Schur basis to the compound (Q x stretched
/// Schur) basis: rows indexed by P(n) canonically, columns by the parity
/// pairs; entries are integers.
inline ExactMatrix build_transition(int n) {
    return detail::build_transition_impl(
        n, 2, [](const BasisLabel& l) { return qfun(l.first()) * stretch(schur(l.second()), 2); });
}

/// Transition matrix to the general-p compound basis (Brauer-Schur times
/// p-stretched Schur), with the Brauer data resolved through the store.
inline ExactMatrix build_transition_p(int n, int p, const DatasetStore& store) {
    require_prime(p);
    return detail::build_transition_impl(
        n, p, [&](const BasisLabel& l) { return store.brauer(l.first(), p) * stretch(schur(l.second()), p); });
}

/// Columns of a transition matrix whose second component is empty, with the
/// pair labels collapsed to the bare partitions. For p = 2 these are the
/// Stembridge coefficients; in general the decomposition numbers. Entries
/// must be nonnegative integers.
inline ExactMatrix stembridge_submatrix(const ExactMatrix& a) {
    std::vector<int> idx;
    std::vector<BasisLabel> labels;
    for (int j = 0; j < a.col_count(); ++j) {
        const BasisLabel& l = a.col_labels()[j];
        if (l.is_pair() && l.second().empty()) {
            idx.push_back(j);
            labels.push_back(BasisLabel::single(l.first()));
        }
    }
    ExactMatrix g = a.columns(idx, labels);
    for (int i = 0; i < g.row_count(); ++i)
        for (int j = 0; j < g.col_count(); ++j)
            if (g.at(i, j) < 0 || denominator(g.at(i, j)) != 1)
                throw invariant_error("principal column entry at (" +
                                      g.row_labels()[i].to_string() + ", " +
                                      g.col_labels()[j].to_string() +
                                      ") is not a nonnegative integer: " + rat_to_string(g.at(i, j)));
    return g;
}

/// t(A) * A, the Gram matrix of the transition matrix; block diagonal under
/// the (n0, n1) keys of its pair labels.
inline ExactMatrix gram(const ExactMatrix& a) { return gram_of(a); }

inline std::pair<int, int> pair_weights(const BasisLabel& l) { return {l.n0(), l.n1()}; }

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string lhs, rhs;
};

struct BlockResult {
    std::pair<int, int> key;
    Int det = 0;
    long long expected_exponent = 0;
    bool det_ok = false;
    std::vector<Int> divisors;
};

/// Aggregated verification for one (n, p): integrality, the determinant power
/// law through both exponent routes, Gram block structure, the per-block
/// determinant law, and the principal-block elementary divisors against the
/// Glaisher excess multiset. Failures are recorded, never thrown.
struct TransitionReport {
    int n = 0;
    int p = 2;
    ExactMatrix matrix;
    long long k = 0;
    bool integral_ok = false;
    bool det_ok = false;
    bool block_ok = false;
    std::vector<BlockResult> blocks;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    }
};

inline json report_to_json(const TransitionReport& r, std::optional<std::string> matrix_ref = {}) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"lhs", c.lhs}, {"rhs", c.rhs}});
    return {{"n", r.n},
            {"p", r.p},
            {"checks", std::move(checks)},
            {"matrix_ref", matrix_ref ? json(*matrix_ref) : json(nullptr)}};
}

namespace detail {

inline std::string divisors_to_string(const std::vector<Int>& d) {
    std::string s = "[";
    for (size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += d[i].str();
    }
    return s + "]";
}

} // namespace detail

/// Runs every determinant/block/divisor claim for one (n, p). A store is
/// required for p > 2, and selects the Brauer-based basis when given for
/// p = 2; without it the p = 2 compound basis uses Q polynomials.
inline TransitionReport verify_all(int n, int p, const DatasetStore* store = nullptr) {
    require_prime(p);
    TransitionReport r;
    r.n = n;
    r.p = p;
    auto check = [&](std::string name, bool pass, std::string lhs, std::string rhs) {
        r.checks.push_back({std::move(name), pass, std::move(lhs), std::move(rhs)});
        return pass;
    };

    if (p != 2 && !store)
        throw data_not_found("verify_all needs a dataset store for p=" + std::to_string(p));
    r.matrix = (p == 2 && !store) ? build_transition(n) : build_transition_p(n, p, *store);
    r.integral_ok = check("integral entries", r.matrix.is_integral(), "integer matrix", "required");

    // |det A| = p^k with k from the divided-component lengths; for p = 2 the
    // Glaisher-excess route must agree with it.
    r.k = det_exponent(n, p);
    Int det = numerator(determinant(r.matrix));
    Int expected = int_pow(Int(p), r.k);
    r.det_ok = check("|det| = p^k", abs(det) == expected, Int(abs(det)).str(),
                     std::to_string(p) + "^" + std::to_string(r.k) + " = " + expected.str());
    if (p == 2) {
        long long alt = det_exponent_glaisher(n);
        check("exponent via Glaisher excess", alt == r.k, std::to_string(alt), std::to_string(r.k));
    }

    ExactMatrix g = gram(r.matrix);
    std::vector<std::pair<std::pair<int, int>, ExactMatrix>> blocks;
    try {
        blocks = block_decompose(g, pair_weights);
        r.block_ok = check("Gram block-diagonal", true, "block diagonal", "required");
    } catch (const structure_error& e) {
        r.block_ok = check("Gram block-diagonal", false, e.what(), "zero outside blocks");
        return r;
    }

    Int block_product = 1;
    for (const auto& [key, block] : blocks) {
        BlockResult br;
        br.key = key;
        br.det = numerator(determinant(block));
        br.expected_exponent = block_det_exponent(key.first, key.second, p);
        Int want = int_pow(Int(p), br.expected_exponent);
        br.det_ok = abs(br.det) == want;
        br.divisors = smith_normal_form(block);
        block_product *= abs(br.det);
        std::string tag = "(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
        check("block det " + tag, br.det_ok, Int(abs(br.det)).str(),
              std::to_string(p) + "^" + std::to_string(br.expected_exponent) + " = " + want.str());
        if (key.second == 0) {
            // principal block: elementary divisors are the Glaisher excess
            // powers of the regular labels
            std::vector<Int> want_divs;
            for (const auto& mu : regular_partitions(n, p)) {
                long long excess = glaisher(mu, p).length() - mu.length();
                want_divs.push_back(int_pow(Int(p), excess / (p - 1)));
            }
            std::sort(want_divs.begin(), want_divs.end());
            check("principal divisors", br.divisors == want_divs,
                  detail::divisors_to_string(br.divisors), detail::divisors_to_string(want_divs));
        }
        r.blocks.push_back(std::move(br));
    }
    check("det^2 = product of block dets", abs(det) * abs(det) == block_product,
          Int(abs(det) * abs(det)).str(), block_product.str());
    return r;
}

struct DecompositionComparison {
    bool skipped = false;
    std::string reason;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    }
};

/// Column-equivalence and Cartan-divisor comparison between the Stembridge
/// matrix and the 2-modular decomposition matrix for one n. Reports itself
/// skipped when no dataset with a decomposition payload is loaded.
inline DecompositionComparison compare_decomposition(int n, const DatasetStore& store) {
    DecompositionComparison r;
    const ModularDataset* ds = store.find(2, n);
    if (!ds || !ds->decomposition) {
        r.skipped = true;
        r.reason = "no 2-modular decomposition data loaded for n=" + std::to_string(n);
        return r;
    }
    ExactMatrix gamma = stembridge_submatrix(build_transition(n));
    const ExactMatrix& d = *ds->decomposition;

    ExactMatrix h_gamma = hermite_normal_form(gamma);
    ExactMatrix h_d = hermite_normal_form(d.reordered(gamma.row_labels(), d.col_labels()));
    bool hnf_equal = [&] {
        if (h_gamma.row_count() != h_d.row_count() || h_gamma.col_count() != h_d.col_count())
            return false;
        for (int i = 0; i < h_gamma.row_count(); ++i)
            for (int j = 0; j < h_gamma.col_count(); ++j)
                if (h_gamma.at(i, j) != h_d.at(i, j)) return false;
        return true;
    }();
    r.checks.push_back({"column equivalence (equal Hermite forms)", hnf_equal,
                        "HNF(stembridge)", "HNF(decomposition)"});

    auto snf_gamma = smith_normal_form(gram_of(gamma));
    auto snf_d = smith_normal_form(gram_of(d));
    r.checks.push_back({"equal Cartan elementary divisors", snf_gamma == snf_d,
                        detail::divisors_to_string(snf_gamma),
                        detail::divisors_to_string(snf_d)});
    return r;
}

} // namespace symbasis
