#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <symbasis/errors.hpp>
#include <symbasis/numeric.hpp>

namespace symbasis {

/// Cap on partition weights accepted by the enumeration routines, so that an
/// exhaustive sweep cannot silently explode. Exceeding the cap is an error.
inline std::atomic<int>& weight_limit_store() {
    static std::atomic<int> limit{64};
    return limit;
}
inline int weight_limit() { return weight_limit_store().load(); }
inline void set_weight_limit(int n) {
    if (n < 0) throw std::invalid_argument("weight limit must be nonnegative");
    weight_limit_store().store(n);
}

/// An integer partition: weakly decreasing positive parts. Immutable value
/// type; multiplicities are computed views, never stored state. The empty
/// partition is valid (weight 0, length 0).
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (int p : parts_)
            if (p <= 0) throw std::invalid_argument("partition parts must be positive");
        std::sort(parts_.begin(), parts_.end(), std::greater<int>());
        weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    int weight() const { return weight_; }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int max_part() const { return parts_.empty() ? 0 : parts_.front(); }

    int multiplicity(int part) const {
        return static_cast<int>(std::count(parts_.begin(), parts_.end(), part));
    }

    /// part value -> multiplicity, nonzero entries only.
    std::map<int, int> multiplicities() const {
        std::map<int, int> m;
        for (int p : parts_) ++m[p];
        return m;
    }

    bool is_strict() const {
        return std::adjacent_find(parts_.begin(), parts_.end()) == parts_.end();
    }

    bool is_odd() const {
        return std::all_of(parts_.begin(), parts_.end(), [](int p) { return p % 2 == 1; });
    }

    /// No part repeated p or more times (2-regular == strict).
    bool is_regular(int p) const {
        require_prime(p);
        int run = 1;
        for (size_t i = 1; i < parts_.size(); ++i) {
            run = (parts_[i] == parts_[i - 1]) ? run + 1 : 1;
            if (run >= p) return false;
        }
        return true;
    }

    /// No part divisible by p (2-class-regular == odd).
    bool is_class_regular(int p) const {
        require_prime(p);
        return std::none_of(parts_.begin(), parts_.end(), [p](int x) { return x % p == 0; });
    }

    Partition conjugate() const {
        std::vector<int> c;
        for (int col = 1; col <= max_part(); ++col) {
            int cnt = 0;
            for (int p : parts_)
                if (p >= col) ++cnt;
            c.push_back(cnt);
        }
        return Partition(std::move(c));
    }

    /// Bracketed form used in every textual interface: "[5,4,4,2,1]", "[]".
    std::string to_string() const {
        std::string s = "[";
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s + "]";
    }

    /// Exponent form for table rendering: "5.4^2.2", empty partition "∅".
    std::string to_compact() const {
        if (parts_.empty()) return "∅";
        std::string s;
        size_t i = 0;
        while (i < parts_.size()) {
            size_t j = i;
            while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
            if (!s.empty()) s += '.';
            s += std::to_string(parts_[i]);
            if (j - i > 1) s += "^" + std::to_string(j - i);
            i = j;
        }
        return s;
    }

    /// Accepts the bracketed form and the exponent shorthand ("5.4^2.2").
    static Partition parse(std::string_view text);

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

/// Canonical order: by weight, then lexicographically descending on parts, so
/// that within a fixed weight (n) comes first and (1^n) last.
inline bool canonical_before(const Partition& a, const Partition& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    return a.parts() > b.parts(); // lex on weakly decreasing part lists
}

struct CanonicalLess {
    bool operator()(const Partition& a, const Partition& b) const { return canonical_before(a, b); }
};

/// Dominance order on partitions of equal weight: every prefix sum of a is >=
/// the corresponding prefix sum of b.
inline bool dominates(const Partition& a, const Partition& b) {
    if (a.weight() != b.weight()) return false;
    long long sa = 0, sb = 0;
    size_t n = std::max(a.parts().size(), b.parts().size());
    for (size_t i = 0; i < n; ++i) {
        sa += i < a.parts().size() ? a.parts()[i] : 0;
        sb += i < b.parts().size() ? b.parts()[i] : 0;
        if (sa < sb) return false;
    }
    return true;
}

inline Partition partition_from_multiplicities(const std::map<int, int>& mult) {
    std::vector<int> parts;
    for (const auto& [part, m] : mult) {
        if (m < 0) throw invariant_error("negative multiplicity");
        for (int i = 0; i < m; ++i) parts.push_back(part);
    }
    return Partition(std::move(parts));
}

inline Partition Partition::parse(std::string_view text) {
    auto fail = [&] { return parse_error("bad partition literal: '" + std::string(text) + "'"); };
    // strip whitespace
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty() || s == "[]" || s == "∅") return Partition();
    std::vector<int> parts;
    if (s.front() == '[') {
        if (s.back() != ']') throw fail();
        std::string body = s.substr(1, s.size() - 2);
        size_t pos = 0;
        while (pos < body.size()) {
            size_t comma = body.find(',', pos);
            std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                parts.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw fail();
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    } else {
        // exponent shorthand: dot-separated "part" or "part^mult" tokens
        size_t pos = 0;
        while (pos <= s.size()) {
            size_t dot = s.find('.', pos);
            std::string tok = s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
            size_t caret = tok.find('^');
            try {
                int part = std::stoi(caret == std::string::npos ? tok : tok.substr(0, caret));
                int mult = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
                if (mult <= 0) throw fail();
                for (int i = 0; i < mult; ++i) parts.push_back(part);
            } catch (const std::exception&) {
                throw fail();
            }
            if (dot == std::string::npos) break;
            pos = dot + 1;
        }
    }
    if (std::any_of(parts.begin(), parts.end(), [](int p) { return p <= 0; })) throw fail();
    return Partition(std::move(parts));
}

namespace detail {

// Emits partitions of n with parts <= max_part in lexicographically descending
// order. allowed() filters part values, max_mult caps run lengths.
template <class Pred>
void generate_partitions(int n, int max_part, int max_mult, const Pred& allowed,
                         std::vector<int>& prefix, std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(Partition(prefix));
        return;
    }
    for (int v = std::min(max_part, n); v >= 1; --v) {
        if (!allowed(v)) continue;
        for (int m = std::min(max_mult, n / v); m >= 1; --m) {
            prefix.insert(prefix.end(), m, v);
            generate_partitions(n - m * v, v - 1, max_mult, allowed, prefix, out);
            prefix.resize(prefix.size() - m);
        }
    }
}

template <class Pred>
std::vector<Partition> enumerate(int n, int max_mult, const Pred& allowed) {
    if (n < 0) throw std::invalid_argument("partition weight must be nonnegative");
    if (n > weight_limit())
        throw std::invalid_argument("weight " + std::to_string(n) + " exceeds the configured limit " +
                                    std::to_string(weight_limit()));
    std::vector<Partition> out;
    std::vector<int> prefix;
    generate_partitions(n, n, max_mult, allowed, prefix, out);
    if (n == 0) return {Partition()};
    return out;
}

inline constexpr auto any_part = [](int) { return true; };

} // namespace detail

/// All partitions of n in canonical order: (n) first, (1^n) last.
inline std::vector<Partition> partitions_of(int n) {
    return detail::enumerate(n, n == 0 ? 1 : n, detail::any_part);
}

/// Partitions with distinct parts (= 2-regular).
inline std::vector<Partition> strict_partitions(int n) {
    return detail::enumerate(n, 1, detail::any_part);
}

/// Partitions with all parts odd (= 2-class-regular).
inline std::vector<Partition> odd_partitions(int n) {
    return detail::enumerate(n, std::max(n, 1), [](int v) { return v % 2 == 1; });
}

/// Partitions with no part repeated p or more times.
inline std::vector<Partition> regular_partitions(int n, int p) {
    require_prime(p);
    return detail::enumerate(n, p - 1, detail::any_part);
}

/// Partitions with no part divisible by p.
inline std::vector<Partition> class_regular_partitions(int n, int p) {
    require_prime(p);
    return detail::enumerate(n, std::max(n, 1), [p](int v) { return v % p != 0; });
}

} // namespace symbasis
