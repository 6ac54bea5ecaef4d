#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <symbasis/numeric.hpp>

namespace symbasis {

/// A monomial in the variables t_1, t_2, ... with deg t_j = j. Stored as a
/// sparse exponent map; the empty map is the constant monomial.
class Monomial {
public:
    Monomial() = default;

    static Monomial var(int index, int exp = 1) {
        Monomial m;
        if (index < 1) throw std::invalid_argument("variable index must be >= 1");
        if (exp < 0) throw std::invalid_argument("exponent must be nonnegative");
        if (exp > 0) m.exps_[index] = exp;
        return m;
    }

    static Monomial from_exponents(std::map<int, int> exps) {
        Monomial m;
        for (const auto& [idx, e] : exps) {
            if (idx < 1 || e < 0) throw std::invalid_argument("bad monomial exponent map");
            if (e > 0) m.exps_[idx] = e;
        }
        return m;
    }

    /// Exponent map recording the multiplicities of a class partition: the
    /// monomial t_1^{m_1} t_2^{m_2} ...
    template <class PartitionLike>
    static Monomial from_class(const PartitionLike& rho) {
        Monomial m;
        for (int part : rho.parts()) ++m.exps_[part];
        return m;
    }

    const std::map<int, int>& exponents() const { return exps_; }
    bool is_constant() const { return exps_.empty(); }
    int exponent(int index) const {
        auto it = exps_.find(index);
        return it == exps_.end() ? 0 : it->second;
    }

    int degree() const {
        int d = 0;
        for (const auto& [idx, e] : exps_) d += idx * e;
        return d;
    }

    Monomial operator*(const Monomial& other) const {
        Monomial m = *this;
        for (const auto& [idx, e] : other.exps_) m.exps_[idx] += e;
        return m;
    }

    /// Substitution t_j -> t_{pj}; multiplies the degree by p.
    Monomial stretched(int p) const {
        Monomial m;
        for (const auto& [idx, e] : exps_) m.exps_[idx * p] = e;
        return m;
    }

    bool uses_index_divisible_by(int p) const {
        for (const auto& [idx, e] : exps_)
            if (idx % p == 0) return true;
        return false;
    }

    std::string to_string() const {
        if (exps_.empty()) return "1";
        std::string s;
        for (const auto& [idx, e] : exps_) {
            if (!s.empty()) s += '*';
            s += "t" + std::to_string(idx);
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s;
    }

    /// Graded order: degree first, then the exponent maps lexicographically.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.exps_ < b.exps_;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::map<int, int> exps_; // index -> exponent, zeros never stored
};

/// Element of the graded polynomial ring Q[t_j; j >= 1] with exact rational
/// coefficients. Zero coefficients are pruned eagerly, so equality of term
/// maps is equality of polynomials.
class GradedPoly {
public:
    GradedPoly() = default;

    static GradedPoly constant(Rat c) {
        GradedPoly f;
        f.add_term(Monomial(), c);
        return f;
    }

    static GradedPoly one() { return constant(1); }

    static GradedPoly term(Monomial m, Rat c) {
        GradedPoly f;
        f.add_term(m, c);
        return f;
    }

    static GradedPoly var(int index) { return term(Monomial::var(index), 1); }

    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    Rat coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    /// Common degree of all monomials, or nullopt if the polynomial is zero
    /// or inhomogeneous.
    std::optional<int> homogeneous_degree() const {
        if (terms_.empty()) return std::nullopt;
        int d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) return std::nullopt;
        return d;
    }

    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    GradedPoly& operator+=(const GradedPoly& g) {
        for (const auto& [m, c] : g.terms_) add_term(m, c);
        return *this;
    }
    GradedPoly& operator-=(const GradedPoly& g) {
        for (const auto& [m, c] : g.terms_) add_term(m, -c);
        return *this;
    }
    GradedPoly& operator*=(const Rat& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, coef] : terms_) coef *= c;
        return *this;
    }

    friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
    friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
    friend GradedPoly operator*(GradedPoly a, const Rat& c) { return a *= c; }
    friend GradedPoly operator*(const Rat& c, GradedPoly a) { return a *= c; }

    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
        GradedPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    friend GradedPoly operator-(const GradedPoly& a) {
        GradedPoly r = a;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            Int num = numerator(c), den = denominator(c);
            bool neg = num < 0;
            if (neg) num = -num;
            s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            if (m.is_constant()) {
                s += num.str();
                if (den != 1) s += "/" + den.str();
                continue;
            }
            if (num != 1) s += num.str() + "*";
            s += m.to_string();
            if (den != 1) s += "/" + den.str();
        }
        return s;
    }

    friend bool operator==(const GradedPoly&, const GradedPoly&) = default;

private:
    std::map<Monomial, Rat> terms_;
};

/// Ring map t_j -> t_{pj}. Injective; multiplies degrees by p.
inline GradedPoly stretch(const GradedPoly& f, int p) {
    if (p < 1) throw std::invalid_argument("stretch factor must be >= 1");
    GradedPoly r;
    for (const auto& [m, c] : f.terms()) r.add_term(m.stretched(p), c);
    return r;
}

/// Kills every variable t_{jp}: drops all monomials that use an index
/// divisible by p. Idempotent projection onto the p-free subring.
inline GradedPoly reduce_p(const GradedPoly& f, int p) {
    require_prime(p);
    GradedPoly r;
    for (const auto& [m, c] : f.terms())
        if (!m.uses_index_divisible_by(p)) r.add_term(m, c);
    return r;
}

enum class Pairing { schur, q };

/// The two differential inner products, evaluated via their closed form on
/// monomials: <t^a, t^a> = prod a_j! / j^{a_j} for the Schur pairing and
/// prod a_j! * (2/j)^{a_j} for the Q pairing; distinct monomials pair to 0.
/// A literal apply-the-differential-operator oracle lives in the test suite.
inline Rat inner_product(const GradedPoly& f, const GradedPoly& g, Pairing variant) {
    const auto& small = f.term_count() <= g.term_count() ? f : g;
    const auto& large = f.term_count() <= g.term_count() ? g : f;
    Rat total = 0;
    for (const auto& [m, cf] : small.terms()) {
        Rat cg = large.coefficient(m);
        if (cg == 0) continue;
        Rat w = 1;
        for (const auto& [idx, e] : m.exponents()) {
            w *= factorial(e);
            w /= int_pow(Int(idx), e);
            if (variant == Pairing::q) w *= int_pow(Int(2), e);
        }
        total += cf * cg * w;
    }
    return total;
}

} // namespace symbasis
