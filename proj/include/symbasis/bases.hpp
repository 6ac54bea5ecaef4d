#pragma once

#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <vector>

#include <symbasis/bijections.hpp>
#include <symbasis/partition.hpp>
#include <symbasis/polynomial.hpp>

namespace symbasis {

namespace detail {

// One-row generating series, all defined by r*f_r = sum_j c_j * j * t_j * f_{r-j}:
//   complete homogeneous:  c_j = 1 for all j
//   elementary:            c_j = (-1)^{j-1}
//   Q rows:                c_j = 1 for odd j, 0 for even j
// Caches are thread_local: results are identical on every thread, each thread
// just fills its own copy. Deque keeps returned references stable while the
// table grows.
enum class Series { homogeneous, elementary, qrow };

inline const GradedPoly& one_row(Series kind, int r) {
    thread_local std::map<Series, std::deque<GradedPoly>> cache;
    auto& table = cache[kind];
    if (table.empty()) table.push_back(GradedPoly::one());
    while (static_cast<int>(table.size()) <= r) {
        int k = static_cast<int>(table.size());
        GradedPoly sum;
        for (int j = 1; j <= k; ++j) {
            Rat c;
            switch (kind) {
            case Series::homogeneous: c = 1; break;
            case Series::elementary: c = (j % 2 == 1) ? 1 : -1; break;
            case Series::qrow: c = (j % 2 == 1) ? 1 : 0; break;
            }
            if (c == 0) continue;
            sum += (c * Rat(j)) * (GradedPoly::var(j) * table[k - j]);
        }
        sum *= Rat(1, k);
        table.push_back(std::move(sum));
    }
    return table[r];
}

} // namespace detail

/// h_r: coefficient of z^r in exp(sum_j t_j z^j).
inline const GradedPoly& complete_homogeneous(int r) {
    if (r < 0) throw std::invalid_argument("negative series index");
    return detail::one_row(detail::Series::homogeneous, r);
}

/// e_r: coefficient of z^r in exp(sum_j (-1)^{j-1} t_j z^j).
inline const GradedPoly& elementary(int r) {
    if (r < 0) throw std::invalid_argument("negative series index");
    return detail::one_row(detail::Series::elementary, r);
}

/// One-row Q polynomial: coefficient of z^r in exp(sum_{j odd} t_j z^j).
inline const GradedPoly& qfun_row(int r) {
    if (r < 0) throw std::invalid_argument("negative series index");
    return detail::one_row(detail::Series::qrow, r);
}

namespace detail {

// Determinant of a square polynomial matrix by Laplace expansion over column
// subsets. entry(i, j) must be valid for 0 <= i, j < k.
template <class Entry>
GradedPoly subset_determinant(int k, const Entry& entry) {
    if (k == 0) return GradedPoly::one();
    // memo[mask] = det over the last popcount(mask) rows and the columns in
    // mask; iterate masks by popcount so dependencies are ready
    std::map<std::uint64_t, GradedPoly> memo;
    memo[0] = GradedPoly::one();
    std::vector<std::vector<std::uint64_t>> by_count(k + 1);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask)
        by_count[std::popcount(mask)].push_back(mask);
    for (int cnt = 1; cnt <= k; ++cnt) {
        for (std::uint64_t mask : by_count[cnt]) {
            int row = k - cnt;
            GradedPoly det;
            int pos = 0;
            for (int j = 0; j < k; ++j) {
                if (!(mask >> j & 1)) continue;
                const GradedPoly& e = entry(row, j);
                if (!e.is_zero()) {
                    GradedPoly term = e * memo[mask ^ (std::uint64_t(1) << j)];
                    if (pos % 2) det -= term;
                    else det += term;
                }
                ++pos;
            }
            memo[mask] = std::move(det);
        }
    }
    return memo[(std::uint64_t(1) << k) - 1];
}

} // namespace detail

/// Schur polynomial, computed from the Jacobi-Trudi determinant over the
/// one-row series (using the conjugate shape when that gives a smaller
/// determinant). The character-sum description is cross-checked against the
/// Murnaghan-Nakayama oracle in the test suite.
inline GradedPoly schur(const Partition& lambda) {
    thread_local std::map<Partition, GradedPoly, CanonicalLess> cache;
    if (auto it = cache.find(lambda); it != cache.end()) return it->second;

    const bool use_conjugate = lambda.max_part() < lambda.length();
    const Partition shape = use_conjugate ? lambda.conjugate() : lambda;
    const auto& parts = shape.parts();
    const int k = shape.length();
    auto entry = [&](int i, int j) -> const GradedPoly& {
        static const GradedPoly zero;
        int r = parts[i] - i + j;
        if (r < 0) return zero;
        return use_conjugate ? elementary(r) : complete_homogeneous(r);
    };
    GradedPoly result = detail::subset_determinant(k, entry);
    cache.emplace(lambda, result);
    return result;
}

/// Two-row Q polynomial for a > b >= 0:
///   Q_{(a,b)} = Q_a Q_b + 2 * sum_{i=1..b} (-1)^i Q_{a+i} Q_{b-i}.
/// The sign convention is pinned by Q-orthogonality and the golden n = 3
/// transition table.
inline GradedPoly qfun_two_row(int a, int b) {
    if (a <= b || b < 0) throw std::invalid_argument("qfun_two_row needs a > b >= 0");
    GradedPoly f = qfun_row(a) * qfun_row(b);
    for (int i = 1; i <= b; ++i) {
        GradedPoly term = qfun_row(a + i) * qfun_row(b - i);
        term *= Rat(i % 2 ? -2 : 2);
        f += term;
    }
    return f;
}

/// Q polynomial of a strict partition: one- and two-row cases directly, the
/// Pfaffian of the two-row matrix in general (padding with a zero part when
/// the length is odd).
inline GradedPoly qfun(const Partition& lambda) {
    if (!lambda.is_strict())
        throw std::invalid_argument("qfun: " + lambda.to_string() + " is not strict");
    thread_local std::map<Partition, GradedPoly, CanonicalLess> cache;
    if (auto it = cache.find(lambda); it != cache.end()) return it->second;

    std::vector<int> parts = lambda.parts();
    if (parts.size() % 2) parts.push_back(0);
    const int k = static_cast<int>(parts.size());

    GradedPoly result;
    if (lambda.empty()) {
        result = GradedPoly::one();
    } else if (k == 2) {
        result = parts[1] == 0 ? qfun_row(parts[0]) : qfun_two_row(parts[0], parts[1]);
    } else {
        // Pfaffian by expansion along the first remaining index, with
        // memoization over index subsets.
        std::vector<std::vector<GradedPoly>> entry(k, std::vector<GradedPoly>(k));
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                entry[i][j] = parts[j] == 0 ? qfun_row(parts[i]) : qfun_two_row(parts[i], parts[j]);
        std::map<std::uint64_t, GradedPoly> memo;
        auto pf = [&](auto&& self, std::uint64_t mask) -> const GradedPoly& {
            auto it = memo.find(mask);
            if (it != memo.end()) return it->second;
            GradedPoly value;
            if (mask == 0) {
                value = GradedPoly::one();
            } else {
                std::vector<int> idx;
                for (int i = 0; i < k; ++i)
                    if (mask >> i & 1) idx.push_back(i);
                for (size_t pos = 1; pos < idx.size(); ++pos) {
                    std::uint64_t rest =
                        mask ^ (std::uint64_t(1) << idx[0]) ^ (std::uint64_t(1) << idx[pos]);
                    GradedPoly term = entry[idx[0]][idx[pos]] * self(self, rest);
                    if (pos % 2) value += term;
                    else value -= term;
                }
            }
            return memo.emplace(mask, std::move(value)).first->second;
        };
        result = pf(pf, (std::uint64_t(1) << k) - 1);
    }
    cache.emplace(lambda, result);
    return result;
}

namespace detail {

inline std::vector<int> beta_numbers(const Partition& lambda) {
    const auto& parts = lambda.parts();
    int len = lambda.length();
    std::vector<int> betas(len);
    for (int i = 0; i < len; ++i) betas[i] = parts[i] + (len - 1 - i);
    return betas;
}

inline Partition partition_from_betas(std::vector<int> betas) {
    std::sort(betas.begin(), betas.end(), std::greater<int>());
    int len = static_cast<int>(betas.size());
    std::vector<int> parts;
    for (int i = 0; i < len; ++i) {
        int p = betas[i] - (len - 1 - i);
        if (p > 0) parts.push_back(p);
    }
    return Partition(std::move(parts));
}

using MnMemo = std::map<std::pair<std::vector<int>, size_t>, Int>;

inline Int mn_recurse(const Partition& shape, const std::vector<int>& cls, size_t idx,
                      MnMemo& memo) {
    if (idx == cls.size()) return shape.empty() ? 1 : 0;
    auto key = std::make_pair(shape.parts(), idx);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const int strip = cls[idx];
    std::vector<int> betas = beta_numbers(shape);
    Int total = 0;
    for (size_t i = 0; i < betas.size(); ++i) {
        int target = betas[i] - strip;
        if (target < 0) continue;
        if (std::find(betas.begin(), betas.end(), target) != betas.end()) continue;
        int crossed = 0;
        for (int b : betas)
            if (b > target && b < betas[i]) ++crossed;
        std::vector<int> next = betas;
        next[i] = target;
        Int sub = mn_recurse(partition_from_betas(std::move(next)), cls, idx + 1, memo);
        total += (crossed % 2 ? -sub : sub);
    }
    memo.emplace(std::move(key), total);
    return total;
}

} // namespace detail

/// Irreducible symmetric group character value chi^shape at the class cls,
/// by border-strip removal on beta numbers. Independent of the Schur
/// construction; serves as its oracle.
inline Int murnaghan_nakayama(const Partition& shape, const Partition& cls) {
    if (shape.weight() != cls.weight())
        throw std::invalid_argument("murnaghan_nakayama: weight mismatch between " +
                                    shape.to_string() + " and " + cls.to_string());
    detail::MnMemo memo;
    return detail::mn_recurse(shape, cls.parts(), 0, memo);
}

/// Coefficient extraction: the character value encoded in a character-sum
/// polynomial is the coefficient of t^cls times the product of the
/// multiplicity factorials.
inline Rat character_from_poly(const GradedPoly& f, const Partition& cls) {
    Rat c = f.coefficient(Monomial::from_class(cls));
    for (const auto& [part, m] : cls.multiplicities()) c *= factorial(m);
    return c;
}

/// Spin character value extracted from the Q polynomial: undoes the 2-power
/// and factorial normalization of the character-sum form. The result must be
/// an integer; a fractional value signals a construction bug.
inline Int spin_character(const Partition& shape, const Partition& cls) {
    if (!shape.is_strict())
        throw std::invalid_argument("spin_character: shape must be strict");
    if (!cls.is_odd())
        throw std::invalid_argument("spin_character: class must be odd");
    if (shape.weight() != cls.weight())
        throw std::invalid_argument("spin_character: weight mismatch");
    Rat value = character_from_poly(qfun(shape), cls);
    int diff = shape.length() - cls.length();
    int eps = ((diff % 2) + 2) % 2;
    int exp = (diff + eps) / 2; // may be negative
    if (exp >= 0) value /= int_pow(Int(2), exp);
    else value *= int_pow(Int(2), -exp);
    if (denominator(value) != 1)
        throw invariant_error("spin character of " + shape.to_string() + " at " + cls.to_string() +
                              " is not integral: " + rat_to_string(value));
    return numerator(value);
}

/// Compound basis element: Q of the strict component times the Schur
/// polynomial of the divided component in the doubled variables.
inline GradedPoly w_basis(const Partition& lambda) {
    SplitPair sp = split_parity(lambda);
    return qfun(sp.first) * stretch(schur(sp.second), 2);
}

/// Schur polynomial with every variable t_{jp} killed.
inline GradedPoly p_reduced_schur(const Partition& lambda, int p) {
    return reduce_p(schur(lambda), p);
}

} // namespace symbasis
