#pragma once

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

namespace qrea {

// Strictly increasing subset of [1..N], stored as a plain vector.
using IndexSet = std::vector<int>;

enum class Dominance { precedes, succeeds, equal, incomparable };

// Throws std::invalid_argument unless |I| = |J|.
std::strong_ordering lex_cmp(const IndexSet& I, const IndexSet& J);
Dominance dominance(const IndexSet& I, const IndexSet& J);
bool dominated_by(const IndexSet& J, const IndexSet& I);  // J ⪯ I

// (J,I) < (J',I'): lex on the pair, comparing J first.
std::strong_ordering pair_cmp(const IndexSet& J, const IndexSet& I, const IndexSet& Jp, const IndexSet& Ip);

// Positions K (1-based) of I -> (I_K, I^K).
std::pair<IndexSet, IndexSet> select(const IndexSet& I, const IndexSet& K);

int wt(const IndexSet& I);

// sigma[p] is the image of the p-th element of an ordered domain; images must be distinct.
int inversions(const std::vector<int>& sigma);
// a(σ) for σ given as images of the points domain[p].
int descents_below(const std::vector<int>& domain, const std::vector<int>& sigma);

bool is_index_set(const IndexSet& I, int n);
std::vector<IndexSet> subsets(int n, int k);
// Rank of I among subsets(n, |I|) in lex order.
std::size_t subset_rank(const IndexSet& I, int n);
std::uint64_t binomial(int n, int k);

IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_minus(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
IndexSet range_set(int lo, int hi);  // {lo..hi}

}  // namespace qrea
