#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "powser/partitions.hpp"

using namespace powser;

namespace {

// Independent counting oracle: DP over largest part.
long long count_partitions_dp(int n, int max_part) {
    std::vector<long long> ways(static_cast<std::size_t>(n) + 1, 0);
    ways[0] = 1;
    for (int p = 1; p <= max_part; ++p)
        for (int s = p; s <= n; ++s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - p)];
    return ways[static_cast<std::size_t>(n)];
}

} // namespace

TEST_CASE("classical small counts") {
    CHECK(enumerate_partitions(4, 4).size() == 5);
    CHECK(enumerate_partitions(0, 3).size() == 1);
    CHECK(enumerate_partitions(0, 3).front().parts.empty());
}

TEST_CASE("cap restricts the parts") {
    const auto parts = enumerate_partitions(4, 2);
    REQUIRE(parts.size() == 3);
    std::set<std::vector<int>> got;
    for (const auto& p : parts) got.insert(p.parts);
    const std::set<std::vector<int>> want = {{2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
    CHECK(got == want);
}

TEST_CASE("enumeration agrees with the DP count") {
    for (int n = 0; n <= 18; ++n)
        for (int cap = 1; cap <= n + 1; ++cap)
            CHECK(static_cast<long long>(enumerate_partitions(n, cap).size()) ==
                  count_partitions_dp(n, cap));
}

TEST_CASE("every partition is well-formed and unique") {
    const int n = 9;
    const auto parts = enumerate_partitions(n, n);
    std::set<std::vector<int>> seen;
    for (const auto& lambda : parts) {
        CHECK(lambda.sum() == n);
        CHECK(std::is_sorted(lambda.parts.rbegin(), lambda.parts.rend()));
        for (int p : lambda.parts) CHECK(p >= 1);
        int from_mults = 0;
        for (const auto& [part, mult] : lambda.multiplicities()) from_mults += part * mult;
        CHECK(from_mults == n);
        CHECK(seen.insert(lambda.parts).second);
    }
}

TEST_CASE("size refusal names the limit") {
    CHECK_THROWS_WITH(enumerate_partitions(41, 41), Catch::Matchers::ContainsSubstring("40"));
    CHECK_NOTHROW(enumerate_partitions(41, 41, 50));
    CHECK_THROWS_AS(enumerate_partitions(-1, 3), InputError);
    CHECK_THROWS_AS(enumerate_partitions(3, 0), InputError);
}
