#pragma once

#include <string>
#include <string_view>

#include <symbasis/partition.hpp>

namespace symbasis {

/// Row/column index of a labeled matrix: either a single partition or a pair
/// (first, second) naming a compound-basis element. Pair labels carry their
/// component weights (n0, n1) implicitly.
class BasisLabel {
public:
    BasisLabel() = default;

    static BasisLabel single(Partition p) {
        BasisLabel l;
        l.first_ = std::move(p);
        return l;
    }

    static BasisLabel pair(Partition first, Partition second) {
        BasisLabel l;
        l.is_pair_ = true;
        l.first_ = std::move(first);
        l.second_ = std::move(second);
        return l;
    }

    bool is_pair() const { return is_pair_; }

    const Partition& part() const {
        if (is_pair_) throw std::invalid_argument("label is a pair, not a single partition");
        return first_;
    }
    const Partition& first() const { return first_; }
    const Partition& second() const {
        if (!is_pair_) throw std::invalid_argument("label is a single partition, not a pair");
        return second_;
    }
    int n0() const { return first_.weight(); }
    int n1() const { return is_pair_ ? second_.weight() : 0; }

    std::string to_string() const {
        if (!is_pair_) return first_.to_string();
        return "(" + first_.to_string() + "," + second_.to_string() + ")";
    }

    /// Table-style rendering: "(3.1^2)" or "(2.1,∅)".
    std::string to_compact() const {
        if (!is_pair_) return "(" + (first_.empty() ? std::string("∅") : first_.to_compact()) + ")";
        return "(" + first_.to_compact() + "," + second_.to_compact() + ")";
    }

    static BasisLabel parse(std::string_view text) {
        auto fail = [&] { return parse_error("bad label literal: '" + std::string(text) + "'"); };
        std::string s;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s += c;
        if (s.empty()) throw fail();
        if (s.front() == '[') return single(Partition::parse(s));
        if (s.front() != '(' || s.back() != ')') throw fail();
        std::string body = s.substr(1, s.size() - 2);
        // the component split is the comma between the two bracketed lists
        int depth = 0;
        size_t split = std::string::npos;
        for (size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '[') ++depth;
            else if (body[i] == ']') --depth;
            else if (body[i] == ',' && depth == 0) {
                split = i;
                break;
            }
        }
        if (split == std::string::npos) throw fail();
        return pair(Partition::parse(body.substr(0, split)), Partition::parse(body.substr(split + 1)));
    }

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;

private:
    bool is_pair_ = false;
    Partition first_;
    Partition second_;
};

/// Canonical order. Singles sort before pairs; pairs sort by second-component
/// weight ascending, then each component canonically, matching the column
/// layout of the transition matrices.
inline bool canonical_before(const BasisLabel& a, const BasisLabel& b) {
    if (a.is_pair() != b.is_pair()) return !a.is_pair();
    if (!a.is_pair()) return canonical_before(a.part(), b.part());
    if (a.n1() != b.n1()) return a.n1() < b.n1();
    if (!(a.first() == b.first())) return canonical_before(a.first(), b.first());
    return canonical_before(a.second(), b.second());
}

struct LabelLess {
    bool operator()(const BasisLabel& a, const BasisLabel& b) const { return canonical_before(a, b); }
};

} // namespace symbasis
