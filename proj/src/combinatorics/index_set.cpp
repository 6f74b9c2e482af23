#include "qrea/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace qrea {

namespace {

void require_same_size(const IndexSet& I, const IndexSet& J) {
    if (I.size() != J.size()) throw std::invalid_argument("index sets of different sizes");
}

void subsets_rec(int n, int k, int start, IndexSet& cur, std::vector<IndexSet>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int x = start; x <= n - (k - static_cast<int>(cur.size())) + 1; ++x) {
        cur.push_back(x);
        subsets_rec(n, k, x + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::strong_ordering lex_cmp(const IndexSet& I, const IndexSet& J) {
    require_same_size(I, J);
    for (std::size_t p = 0; p < I.size(); ++p) {
        if (I[p] != J[p]) return I[p] <=> J[p];
    }
    return std::strong_ordering::equal;
}

Dominance dominance(const IndexSet& I, const IndexSet& J) {
    require_same_size(I, J);
    bool le = true, ge = true;
    for (std::size_t p = 0; p < I.size(); ++p) {
        if (I[p] > J[p]) le = false;
        if (I[p] < J[p]) ge = false;
    }
    if (le && ge) return Dominance::equal;
    if (le) return Dominance::precedes;
    if (ge) return Dominance::succeeds;
    return Dominance::incomparable;
}

bool dominated_by(const IndexSet& J, const IndexSet& I) {
    auto d = dominance(J, I);
    return d == Dominance::precedes || d == Dominance::equal;
}

std::strong_ordering pair_cmp(const IndexSet& J, const IndexSet& I, const IndexSet& Jp, const IndexSet& Ip) {
    auto c = lex_cmp(J, Jp);
    if (c != std::strong_ordering::equal) return c;
    return lex_cmp(I, Ip);
}

std::pair<IndexSet, IndexSet> select(const IndexSet& I, const IndexSet& K) {
    std::vector<bool> picked(I.size(), false);
    for (int p : K) {
        if (p < 1 || p > static_cast<int>(I.size())) throw std::out_of_range("selection position out of range");
        picked[p - 1] = true;
    }
    IndexSet in, out;
    for (std::size_t p = 0; p < I.size(); ++p) (picked[p] ? in : out).push_back(I[p]);
    return {in, out};
}

int wt(const IndexSet& I) {
    int s = 0;
    for (int x : I) s += x;
    return s;
}

int inversions(const std::vector<int>& sigma) {
    std::vector<int> sorted = sigma;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("not a bijection: repeated image");
    }
    int n = 0;
    for (std::size_t a = 0; a < sigma.size(); ++a)
        for (std::size_t b = a + 1; b < sigma.size(); ++b)
            if (sigma[a] > sigma[b]) ++n;
    return n;
}

int descents_below(const std::vector<int>& domain, const std::vector<int>& sigma) {
    if (domain.size() != sigma.size()) throw std::invalid_argument("domain/image size mismatch");
    int n = 0;
    for (std::size_t p = 0; p < domain.size(); ++p)
        if (sigma[p] < domain[p]) ++n;
    return n;
}

bool is_index_set(const IndexSet& I, int n) {
    for (std::size_t p = 0; p < I.size(); ++p) {
        if (I[p] < 1 || I[p] > n) return false;
        if (p > 0 && I[p] <= I[p - 1]) return false;
    }
    return true;
}

std::vector<IndexSet> subsets(int n, int k) {
    std::vector<IndexSet> out;
    if (k < 0 || k > n) return out;
    IndexSet cur;
    subsets_rec(n, k, 1, cur, out);
    return out;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

std::size_t subset_rank(const IndexSet& I, int n) {
    std::size_t r = 0;
    int k = static_cast<int>(I.size());
    int prev = 0;
    for (int p = 0; p < k; ++p) {
        for (int x = prev + 1; x < I[p]; ++x) r += binomial(n - x, k - p - 1);
        prev = I[p];
    }
    return r;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

IndexSet range_set(int lo, int hi) {
    IndexSet r;
    for (int x = lo; x <= hi; ++x) r.push_back(x);
    return r;
}

}  // namespace qrea
