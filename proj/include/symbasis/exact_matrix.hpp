#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <symbasis/errors.hpp>
#include <symbasis/labels.hpp>
#include <symbasis/numeric.hpp>
#include <symbasis/polynomial.hpp>

namespace symbasis {

/// Dense matrix of exact rationals with optional row/column labels. Labels,
/// when present, are unique and match the grid dimensions.
class ExactMatrix {
public:
    ExactMatrix() = default;

    ExactMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(rows, std::vector<Rat>(cols, Rat(0))) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    ExactMatrix(std::vector<BasisLabel> row_labels, std::vector<BasisLabel> col_labels)
        : ExactMatrix(static_cast<int>(row_labels.size()), static_cast<int>(col_labels.size())) {
        set_row_labels(std::move(row_labels));
        set_col_labels(std::move(col_labels));
    }

    static ExactMatrix identity(int n) {
        ExactMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int row_count() const { return rows_; }
    int col_count() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rat& at(int i, int j) { return a_.at(i).at(j); }
    const Rat& at(int i, int j) const { return a_.at(i).at(j); }

    bool has_labels() const { return !row_labels_.empty() || !col_labels_.empty(); }
    const std::vector<BasisLabel>& row_labels() const { return row_labels_; }
    const std::vector<BasisLabel>& col_labels() const { return col_labels_; }

    void set_row_labels(std::vector<BasisLabel> labels) {
        check_labels(labels, rows_, "row");
        row_labels_ = std::move(labels);
    }
    void set_col_labels(std::vector<BasisLabel> labels) {
        check_labels(labels, cols_, "column");
        col_labels_ = std::move(labels);
    }

    int row_index(const BasisLabel& l) const { return find_label(row_labels_, l, "row"); }
    int col_index(const BasisLabel& l) const { return find_label(col_labels_, l, "column"); }

    bool is_integral() const {
        for (const auto& row : a_)
            for (const auto& x : row)
                if (denominator(x) != 1) return false;
        return true;
    }

    ExactMatrix transposed() const {
        ExactMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        t.row_labels_ = col_labels_;
        t.col_labels_ = row_labels_;
        return t;
    }

    /// Copy with rows/columns rearranged to match the given label lists;
    /// label sets must agree. This is how computed matrices are compared with
    /// reference tables printed in a different order.
    ExactMatrix reordered(const std::vector<BasisLabel>& new_rows,
                          const std::vector<BasisLabel>& new_cols) const {
        if (static_cast<int>(new_rows.size()) != rows_ || static_cast<int>(new_cols.size()) != cols_)
            throw std::invalid_argument("reordered: label count mismatch");
        ExactMatrix m(new_rows, new_cols);
        for (int i = 0; i < rows_; ++i) {
            int si = row_index(new_rows[i]);
            for (int j = 0; j < cols_; ++j) m.at(i, j) = at(si, col_index(new_cols[j]));
        }
        return m;
    }

    /// Column submatrix in the given order; keeps row labels.
    ExactMatrix columns(const std::vector<int>& idx, std::vector<BasisLabel> labels = {}) const {
        ExactMatrix m(rows_, static_cast<int>(idx.size()));
        for (int i = 0; i < rows_; ++i)
            for (size_t j = 0; j < idx.size(); ++j) m.at(i, static_cast<int>(j)) = at(i, idx[j]);
        m.row_labels_ = row_labels_;
        if (!labels.empty()) m.set_col_labels(std::move(labels));
        return m;
    }

    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

private:
    static void check_labels(const std::vector<BasisLabel>& labels, int expected, const char* what) {
        if (static_cast<int>(labels.size()) != expected)
            throw std::invalid_argument(std::string(what) + " label count does not match dimension");
        for (size_t i = 0; i < labels.size(); ++i)
            for (size_t j = i + 1; j < labels.size(); ++j)
                if (labels[i] == labels[j])
                    throw std::invalid_argument("duplicate " + std::string(what) + " label " +
                                                labels[i].to_string());
    }

    static int find_label(const std::vector<BasisLabel>& labels, const BasisLabel& l, const char* what) {
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == l) return static_cast<int>(i);
        throw std::invalid_argument("no " + std::string(what) + " labeled " + l.to_string());
    }

    int rows_ = 0, cols_ = 0;
    std::vector<std::vector<Rat>> a_;
    std::vector<BasisLabel> row_labels_, col_labels_;
};

/// t(M) * M; inherits the column labels on both axes.
inline ExactMatrix gram_of(const ExactMatrix& m) {
    ExactMatrix g(m.col_count(), m.col_count());
    for (int i = 0; i < m.col_count(); ++i)
        for (int j = i; j < m.col_count(); ++j) {
            Rat s = 0;
            for (int r = 0; r < m.row_count(); ++r) s += m.at(r, i) * m.at(r, j);
            g.at(i, j) = s;
            g.at(j, i) = s;
        }
    if (!m.col_labels().empty()) {
        g.set_row_labels(m.col_labels());
        g.set_col_labels(m.col_labels());
    }
    return g;
}

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
inline Rat determinant(const ExactMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    const int n = m.row_count();
    if (n == 0) return 1;
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);

    Rat prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return 0;
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// Expands each target over the given basis: the returned matrix X satisfies
/// target[i] = sum_j X[i][j] * basis[j], exactly. All polynomials must be
/// homogeneous of one common degree. A dependent basis vector or a target
/// outside the span raises rank_error naming the offending index.
inline ExactMatrix solve_expansion(const std::vector<GradedPoly>& targets,
                                   const std::vector<GradedPoly>& basis,
                                   std::vector<BasisLabel> row_labels = {},
                                   std::vector<BasisLabel> col_labels = {}) {
    std::optional<int> degree;
    auto check_degree = [&](const GradedPoly& f, const char* what, size_t i) {
        auto d = f.homogeneous_degree();
        if (!d) {
            if (!f.is_zero())
                throw std::invalid_argument(std::string(what) + " " + std::to_string(i) +
                                            " is not homogeneous");
            return;
        }
        if (degree && *degree != *d)
            throw std::invalid_argument(std::string(what) + " " + std::to_string(i) +
                                        " has mismatched degree");
        degree = d;
    };
    for (size_t i = 0; i < basis.size(); ++i) check_degree(basis[i], "basis vector", i);
    for (size_t i = 0; i < targets.size(); ++i) check_degree(targets[i], "target", i);

    // coordinates over the union of monomial supports
    std::map<Monomial, int> coord;
    for (const auto& f : basis)
        for (const auto& [mono, c] : f.terms()) coord.emplace(mono, 0);
    for (const auto& f : targets)
        for (const auto& [mono, c] : f.terms()) coord.emplace(mono, 0);
    int dim = 0;
    for (auto& [mono, idx] : coord) idx = dim++;

    const int k = static_cast<int>(basis.size());
    const int t = static_cast<int>(targets.size());
    // aug = [basis^T | targets^T], one row per monomial coordinate
    std::vector<std::vector<Rat>> aug(dim, std::vector<Rat>(k + t, Rat(0)));
    for (int j = 0; j < k; ++j)
        for (const auto& [mono, c] : basis[j].terms()) aug[coord[mono]][j] = c;
    for (int j = 0; j < t; ++j)
        for (const auto& [mono, c] : targets[j].terms()) aug[coord[mono]][k + j] = c;

    // Gauss-Jordan on the basis columns
    std::vector<int> pivot_row_of_col(k, -1);
    int rank = 0;
    for (int col = 0; col < k; ++col) {
        int piv = -1;
        for (int i = rank; i < dim; ++i)
            if (aug[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) {
            std::string name = col_labels.empty() ? std::to_string(col) : col_labels[col].to_string();
            throw rank_error("basis is linearly dependent at vector " + name, col);
        }
        std::swap(aug[rank], aug[piv]);
        Rat inv = Rat(1) / aug[rank][col];
        for (int j = col; j < k + t; ++j) aug[rank][j] *= inv;
        for (int i = 0; i < dim; ++i) {
            if (i == rank || aug[i][col] == 0) continue;
            Rat f = aug[i][col];
            for (int j = col; j < k + t; ++j) aug[i][j] -= f * aug[rank][j];
        }
        pivot_row_of_col[col] = rank;
        ++rank;
    }
    // rows below the rank must carry no target component
    for (int i = rank; i < dim; ++i)
        for (int j = 0; j < t; ++j)
            if (aug[i][k + j] != 0) {
                std::string name = row_labels.empty() ? std::to_string(j) : row_labels[j].to_string();
                throw rank_error("target " + name + " lies outside the span of the basis", j);
            }

    ExactMatrix x(t, k);
    for (int j = 0; j < t; ++j)
        for (int col = 0; col < k; ++col) x.at(j, col) = aug[pivot_row_of_col[col]][k + j];
    if (!row_labels.empty()) x.set_row_labels(std::move(row_labels));
    if (!col_labels.empty()) x.set_col_labels(std::move(col_labels));
    return x;
}

namespace detail {

inline std::vector<std::vector<Int>> integer_grid(const ExactMatrix& m, const char* who) {
    if (!m.is_integral())
        throw std::invalid_argument(std::string(who) + " requires integer entries");
    std::vector<std::vector<Int>> a(m.row_count(), std::vector<Int>(m.col_count()));
    for (int i = 0; i < m.row_count(); ++i)
        for (int j = 0; j < m.col_count(); ++j) a[i][j] = numerator(m.at(i, j));
    return a;
}

} // namespace detail

/// Elementary divisors d_1 | d_2 | ... of an integer matrix (the diagonal of
/// its Smith normal form), nonnegative, with trailing zeros when the rank is
/// deficient. Pivoting on the entry of least magnitude.
inline std::vector<Int> smith_normal_form(const ExactMatrix& m) {
    auto a = detail::integer_grid(m, "smith_normal_form");
    const int rows = m.row_count(), cols = m.col_count();
    const int dim = std::min(rows, cols);
    std::vector<Int> divisors(dim, 0);

    for (int t = 0; t < dim; ++t) {
        // locate the smallest nonzero entry in the trailing block
        auto pick_pivot = [&]() -> bool {
            int bi = -1, bj = -1;
            Int best = 0;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j) {
                    if (a[i][j] == 0) continue;
                    Int mag = abs(a[i][j]);
                    if (bi < 0 || mag < best) {
                        best = mag;
                        bi = i;
                        bj = j;
                    }
                }
            if (bi < 0) return false;
            std::swap(a[t], a[bi]);
            for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][bj]);
            return true;
        };
        if (!pick_pivot()) break;

        for (;;) {
            // clear the pivot column, then the pivot row; remainders shrink
            // the pivot, so re-pick and repeat until both are clean
            bool dirty = false;
            for (int i = t; i < rows; ++i) {
                if (i == t || a[i][t] == 0) continue;
                Int q = a[i][t] / a[t][t];
                for (int j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) dirty = true;
            }
            for (int j = t; j < cols; ++j) {
                if (j == t || a[t][j] == 0) continue;
                Int q = a[t][j] / a[t][t];
                for (int i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) dirty = true;
            }
            if (dirty) {
                pick_pivot();
                continue;
            }
            // divisibility repair: the pivot must divide the trailing block
            bool repaired = false;
            for (int i = t + 1; i < rows && !repaired; ++i)
                for (int j = t + 1; j < cols && !repaired; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (int jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
                        repaired = true;
                    }
            if (!repaired) break;
        }
        divisors[t] = abs(a[t][t]);
    }
    return divisors;
}

/// Canonical column-style Hermite normal form H = M * U with U unimodular:
/// pivots positive and strictly descending the rows, zeros to the right of
/// each pivot, entries to the left reduced into [0, pivot). Two integer
/// matrices are column-equivalent over the integers iff their forms agree.
/// Row labels carry over; column labels do not survive column mixing.
inline ExactMatrix hermite_normal_form(const ExactMatrix& m) {
    auto a = detail::integer_grid(m, "hermite_normal_form");
    const int rows = m.row_count(), cols = m.col_count();
    int c = 0;
    for (int r = 0; r < rows && c < cols; ++r) {
        // gcd-combine columns c.. so that row r has a single entry at column c
        int nz = -1;
        for (int j = c; j < cols; ++j)
            if (a[r][j] != 0) {
                nz = j;
                break;
            }
        if (nz < 0) continue;
        std::swap(a[r][c], a[r][nz]);
        for (int i = 0; i < rows; ++i)
            if (i != r) std::swap(a[i][c], a[i][nz]);
        for (int j = c + 1; j < cols; ++j) {
            while (a[r][j] != 0) {
                Int q = a[r][c] / a[r][j];
                for (int i = 0; i < rows; ++i) a[i][c] -= q * a[i][j];
                for (int i = 0; i < rows; ++i) std::swap(a[i][c], a[i][j]);
            }
        }
        if (a[r][c] < 0)
            for (int i = 0; i < rows; ++i) a[i][c] = -a[i][c];
        for (int j = 0; j < c; ++j) {
            // floor division keeps the reduced entry in [0, pivot)
            Int q = a[r][j] / a[r][c];
            if (q * a[r][c] > a[r][j]) q -= 1;
            if (q != 0)
                for (int i = 0; i < rows; ++i) a[i][j] -= q * a[i][c];
        }
        ++c;
    }
    ExactMatrix h(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) h.at(i, j) = a[i][j];
    if (!m.row_labels().empty()) h.set_row_labels(m.row_labels());
    return h;
}

/// Splits a square matrix with identical row and column labels into diagonal
/// blocks grouped by key(label), verifying that every entry joining two
/// different keys is exactly zero. Blocks come back in order of first
/// appearance.
inline std::vector<std::pair<std::pair<int, int>, ExactMatrix>>
block_decompose(const ExactMatrix& m,
                const std::function<std::pair<int, int>(const BasisLabel&)>& key) {
    if (m.row_labels().empty() || !(m.row_labels() == m.col_labels()))
        throw std::invalid_argument("block_decompose requires identical row and column labels");
    const int n = m.row_count();
    std::vector<std::pair<int, int>> keys(n);
    for (int i = 0; i < n; ++i) keys[i] = key(m.row_labels()[i]);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (keys[i] != keys[j] && m.at(i, j) != 0)
                throw structure_error(
                    "nonzero entry outside the block structure at (" + m.row_labels()[i].to_string() +
                    ", " + m.col_labels()[j].to_string() + "): " + rat_to_string(m.at(i, j)));

    std::vector<std::pair<int, int>> order;
    std::map<std::pair<int, int>, std::vector<int>> members;
    for (int i = 0; i < n; ++i) {
        if (!members.count(keys[i])) order.push_back(keys[i]);
        members[keys[i]].push_back(i);
    }

    std::vector<std::pair<std::pair<int, int>, ExactMatrix>> blocks;
    for (const auto& k : order) {
        const auto& idx = members[k];
        std::vector<BasisLabel> labels;
        for (int i : idx) labels.push_back(m.row_labels()[i]);
        ExactMatrix b(labels, labels);
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j)
                b.at(static_cast<int>(i), static_cast<int>(j)) = m.at(idx[i], idx[j]);
        blocks.emplace_back(k, std::move(b));
    }
    return blocks;
}

} // namespace symbasis
