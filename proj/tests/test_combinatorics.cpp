#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrea/combinatorics.hpp"

using namespace qrea;

TEST_CASE("lex order") {
    CHECK(lex_cmp({1, 3}, {2, 3}) == std::strong_ordering::less);
    CHECK(lex_cmp({1, 4}, {1, 5}) == std::strong_ordering::less);
    CHECK(lex_cmp({2, 4}, {2, 4}) == std::strong_ordering::equal);
    CHECK_THROWS_AS(lex_cmp({1}, {1, 2}), std::invalid_argument);
}

TEST_CASE("dominance order") {
    CHECK(dominance({1, 2}, {2, 3}) == Dominance::precedes);
    CHECK(dominance({1, 4}, {2, 3}) == Dominance::incomparable);
    CHECK(dominance({2, 3}, {2, 3}) == Dominance::equal);
    CHECK(dominance({2, 3}, {1, 3}) == Dominance::succeeds);
    CHECK_THROWS_AS(dominance({1}, {}), std::invalid_argument);
}

TEST_CASE("dominance refines lex, exhaustive N <= 6") {
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; k <= n; ++k) {
            auto all = subsets(n, k);
            CHECK(all.size() == binomial(n, k));
            for (std::size_t a = 0; a < all.size(); ++a) {
                CHECK(subset_rank(all[a], n) == a);
                for (const auto& J : all)
                    if (dominance(all[a], J) == Dominance::precedes) CHECK(lex_cmp(all[a], J) < 0);
            }
        }
}

TEST_CASE("selection") {
    auto [in, out] = select({2, 5, 7}, {1, 3});
    CHECK(in == IndexSet{2, 7});
    CHECK(out == IndexSet{5});
    CHECK(select({2, 5, 7}, {1, 2, 3}).second.empty());
    CHECK(select({2, 5, 7}, {}).second == IndexSet{2, 5, 7});
    CHECK_THROWS_AS(select({2, 5}, {3}), std::out_of_range);
    for (int n = 1; n <= 5; ++n)
        for (const auto& I : subsets(n, 3))
            for (const auto& K : subsets(3, 2)) {
                auto [a, b] = select(I, K);
                CHECK(set_union(a, b) == I);
                CHECK(set_intersection(a, b).empty());
            }
}

TEST_CASE("weights and inversions") {
    CHECK(wt({1, 3, 4}) == 8);
    CHECK(inversions({2, 1}) == 1);
    CHECK(inversions({1, 2, 3}) == 0);
    CHECK(inversions({3, 2, 1}) == 3);
    CHECK(descents_below({1, 2, 3}, {1, 2, 3}) == 0);
    CHECK(descents_below({1, 3}, {3, 1}) == 1);
    CHECK_THROWS_AS(inversions({1, 1}), std::invalid_argument);
}

TEST_CASE("pair order compares J first") {
    CHECK(pair_cmp({1}, {3}, {2}, {1}) == std::strong_ordering::less);
    CHECK(pair_cmp({1}, {1}, {1}, {2}) == std::strong_ordering::less);
}
