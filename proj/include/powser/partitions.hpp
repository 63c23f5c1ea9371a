#ifndef POWSER_PARTITIONS_HPP
#define POWSER_PARTITIONS_HPP

// Brute-force integer partition enumeration. This is the test oracle for the
// coefficient recurrence; enumeration cost is the partition count, so calls
// above the configured limit are refused rather than attempted.

#include <string>
#include <vector>

#include "powser/errors.hpp"

namespace powser {

inline constexpr int kDefaultEnumerationLimit = 40; // p(40) = 37338

struct Partition {
    std::vector<int> parts; // weakly decreasing, all >= 1

    int sum() const {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }

    /// (part size j, multiplicity m_j), largest part first.
    std::vector<std::pair<int, int>> multiplicities() const {
        std::vector<std::pair<int, int>> out;
        for (int p : parts) {
            if (!out.empty() && out.back().first == p)
                ++out.back().second;
            else
                out.push_back({p, 1});
        }
        return out;
    }
};

namespace detail {
inline void extend_partitions(int n, int max_part, std::vector<int>& acc,
                              std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(Partition{acc});
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        acc.push_back(p);
        extend_partitions(n - p, p, acc, out);
        acc.pop_back();
    }
}
} // namespace detail

/// Every partition of n with all parts <= max_part, each exactly once.
/// n = 0 yields exactly the empty partition.
inline std::vector<Partition> enumerate_partitions(int n, int max_part,
                                                   int limit = kDefaultEnumerationLimit) {
    if (n < 0) throw InputError("enumerate_partitions: n must be >= 0");
    if (max_part < 1) throw InputError("enumerate_partitions: max_part must be >= 1");
    if (n > limit)
        throw InputError("enumerate_partitions: n = " + std::to_string(n) +
                         " exceeds the enumeration limit " + std::to_string(limit));
    std::vector<Partition> out;
    std::vector<int> acc;
    detail::extend_partitions(n, max_part, acc, out);
    return out;
}

} // namespace powser

#endif // POWSER_PARTITIONS_HPP
