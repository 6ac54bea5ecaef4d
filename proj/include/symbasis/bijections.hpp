#pragma once

#include <map>
#include <string>
#include <vector>

#include <symbasis/partition.hpp>

namespace symbasis {

/// Result of one of the partition splits: a pair (first, second) together
/// with the component weights (n0, n1). Which linear relation n0 and n1
/// satisfy depends on the split that produced the pair.
struct SplitPair {
    int n0 = 0;
    int n1 = 0;
    Partition first;
    Partition second;

    friend bool operator==(const SplitPair&, const SplitPair&) = default;
};

inline SplitPair make_split_pair(Partition first, Partition second) {
    SplitPair sp;
    sp.n0 = first.weight();
    sp.n1 = second.weight();
    sp.first = std::move(first);
    sp.second = std::move(second);
    return sp;
}

/// Parity split: the multiplicity of each part goes (m mod 2) into the strict
/// component and floor(m/2) into the divided component. weight = n0 + 2*n1.
inline SplitPair split_parity(const Partition& lambda) {
    std::map<int, int> r, d;
    for (const auto& [part, m] : lambda.multiplicities()) {
        if (m % 2) r[part] = 1;
        if (m / 2) d[part] = m / 2;
    }
    return make_split_pair(partition_from_multiplicities(r), partition_from_multiplicities(d));
}

inline Partition merge_parity(const Partition& first, const Partition& second) {
    std::map<int, int> m;
    for (const auto& [part, k] : first.multiplicities()) m[part] += k;
    for (const auto& [part, k] : second.multiplicities()) m[part] += 2 * k;
    return partition_from_multiplicities(m);
}

/// Even/odd split: first = the odd parts, second = the halved even parts.
/// weight = n0 + 2*n1.
inline SplitPair split_even_odd(const Partition& lambda) {
    std::vector<int> odd, half;
    for (int p : lambda.parts())
        (p % 2 ? odd : half).push_back(p % 2 ? p : p / 2);
    return make_split_pair(Partition(std::move(odd)), Partition(std::move(half)));
}

inline Partition merge_even_odd(const Partition& first, const Partition& second) {
    if (!first.is_odd()) throw std::invalid_argument("merge_even_odd: first component must be odd");
    std::vector<int> parts = first.parts();
    for (int p : second.parts()) parts.push_back(2 * p);
    return Partition(std::move(parts));
}

/// Mod-p split: multiplicity m goes (m mod p) into the p-regular component and
/// (m - m mod p)/p into the divided component. weight = n0 + p*n1. For p = 2
/// this is exactly split_parity.
inline SplitPair split_mod_p(const Partition& lambda, int p) {
    require_prime(p);
    std::map<int, int> r, d;
    for (const auto& [part, m] : lambda.multiplicities()) {
        if (m % p) r[part] = m % p;
        if (m / p) d[part] = m / p;
    }
    return make_split_pair(partition_from_multiplicities(r), partition_from_multiplicities(d));
}

inline Partition merge_mod_p(const Partition& first, const Partition& second, int p) {
    require_prime(p);
    std::map<int, int> m;
    for (const auto& [part, k] : first.multiplicities()) m[part] += k;
    for (const auto& [part, k] : second.multiplicities()) m[part] += p * k;
    return partition_from_multiplicities(m);
}

/// Glaisher map: writes each part as p^e * q with q prime to p and adds p^e
/// copies of q. Bijection from p-regular onto p-class-regular partitions of
/// the same weight.
inline Partition glaisher(const Partition& lambda, int p) {
    require_prime(p);
    if (!lambda.is_regular(p))
        throw std::invalid_argument("glaisher: " + lambda.to_string() + " is not " +
                                    std::to_string(p) + "-regular");
    std::map<int, int> m;
    for (int part : lambda.parts()) {
        int q = part, pw = 1;
        while (q % p == 0) {
            q /= p;
            pw *= p;
        }
        m[q] += pw;
    }
    return partition_from_multiplicities(m);
}

/// The fiber of the mod-p split over regular weight n0 and divided weight n1:
/// all partitions of n0 + p*n1 whose split lands in that component pair.
inline std::vector<Partition> fiber(int n0, int n1, int p) {
    require_prime(p);
    std::vector<Partition> out;
    for (const auto& lambda : partitions_of(n0 + p * n1))
        if (split_mod_p(lambda, p).n0 == n0) out.push_back(lambda);
    return out;
}

/// Exponent of p in |det| of the transition matrix: the total length of the
/// divided components over all partitions of n.
inline long long det_exponent(int n, int p) {
    require_prime(p);
    long long k = 0;
    for (const auto& lambda : partitions_of(n)) k += split_mod_p(lambda, p).second.length();
    return k;
}

/// Equivalent route for p = 2: total Glaisher length excess of the strict
/// components.
inline long long det_exponent_glaisher(int n) {
    long long k = 0;
    for (const auto& lambda : partitions_of(n)) {
        Partition r = split_parity(lambda).first;
        k += glaisher(r, 2).length() - r.length();
    }
    return k;
}

/// Exponent of p in the determinant of the Gram block indexed by (n0, n1):
/// sum over regular x arbitrary pairs of Glaisher excess / (p-1) plus the
/// length of the second component. The division is always exact.
inline long long block_det_exponent(int n0, int n1, int p) {
    require_prime(p);
    long long total = 0;
    const auto nus = partitions_of(n1);
    for (const auto& mu : regular_partitions(n0, p)) {
        long long excess = glaisher(mu, p).length() - mu.length();
        if (excess % (p - 1) != 0)
            throw invariant_error("Glaisher length excess of " + mu.to_string() +
                                  " is not divisible by p-1");
        for (const auto& nu : nus) total += excess / (p - 1) + nu.length();
    }
    return total;
}

struct IdentityCheck {
    std::string name;
    std::vector<long long> values; // all members of the identity family
    bool pass = false;
};

struct LengthReport {
    int n = 0;
    std::vector<IdentityCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Checks the four families of length identities relating the parity split,
/// the even/odd split, and the Glaisher map, over all of P(n) and over every
/// fiber of the parity split.
inline LengthReport verify_length_identities(int n) {
    LengthReport report;
    report.n = n;

    auto push = [&](std::string name, std::vector<long long> values) {
        IdentityCheck c;
        c.name = std::move(name);
        c.pass = std::all_of(values.begin(), values.end(),
                             [&](long long v) { return v == values.front(); });
        c.values = std::move(values);
        report.checks.push_back(std::move(c));
    };

    struct Sums {
        long long len = 0, split4 = 0, evenodd = 0, glaisher4 = 0;
        long long twod = 0, twoe = 0, excess3 = 0, glexcess4 = 0;
    };
    auto accumulate = [](Sums& s, const Partition& lambda) {
        SplitPair phi = split_parity(lambda);
        SplitPair psi = split_even_odd(lambda);
        long long lr = phi.first.length(), ld = phi.second.length();
        long long lo = psi.first.length(), le = psi.second.length();
        long long lgr = glaisher(phi.first, 2).length();
        s.len += lambda.length();
        s.split4 += lr + 2 * ld;
        s.evenodd += lo + le;
        s.glaisher4 += lgr + le;
        s.twod += 2 * ld;
        s.twoe += 2 * le;
        s.excess3 += lo + le - lr;
        s.glexcess4 += lgr - lr + le;
    };

    Sums all;
    for (const auto& lambda : partitions_of(n)) accumulate(all, lambda);
    push("P(" + std::to_string(n) + "): total length",
         {all.len, all.split4, all.evenodd, all.glaisher4});
    push("P(" + std::to_string(n) + "): doubled-part count",
         {all.twod, all.twoe, all.excess3, all.glexcess4});

    for (int n1 = 0; 2 * n1 <= n; ++n1) {
        int n0 = n - 2 * n1;
        Sums fs;
        for (const auto& lambda : fiber(n0, n1, 2)) accumulate(fs, lambda);
        std::string tag = "fiber(" + std::to_string(n0) + "," + std::to_string(n1) + ")";
        push(tag + ": total length", {fs.len, fs.split4, fs.evenodd});
        push(tag + ": doubled-part count", {fs.twod, fs.excess3});
    }
    return report;
}

} // namespace symbasis
