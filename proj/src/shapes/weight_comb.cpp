#include <algorithm>
#include <stdexcept>

#include "qrea/shapes.hpp"

namespace qrea {

int WeightCombinatorics::cycle_of(int i) const {
    for (std::size_t c = 0; c < cycles.size(); ++c)
        if (std::find(cycles[c].begin(), cycles[c].end(), i) != cycles[c].end()) return static_cast<int>(c);
    return -1;
}

IndexSet WeightCombinatorics::closure(const IndexSet& I, const IndexSet& J) const {
    int top = -1;
    for (int i : set_union(I, J)) {
        int c = cycle_of(i);
        if (c < 0) throw std::invalid_argument("closure needs indices inside the support");
        top = std::max(top, c);
    }
    IndexSet K;
    for (int c = 0; c <= top; ++c) K = set_union(K, cycles[c]);
    return K;
}

double WeightCombinatorics::w_r_of(const IndexSet& X) const {
    double s = 0.0;
    IndexSet covered;
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        if (set_intersection(cycles[c], X).empty()) continue;
        if (set_intersection(cycles[c], X).size() != cycles[c].size()) {
            throw std::invalid_argument("W_r needs a union of whole cycles");
        }
        s += w_r[c];
        covered = set_union(covered, cycles[c]);
    }
    if (covered != X) throw std::invalid_argument("W_r argument leaves the support");
    return s;
}

WeightCombinatorics weight_combinatorics(const Shape& S, const std::vector<double>& r) {
    if (!S.is_self_adjoint()) throw ShapeError("weight combinatorics need a self-adjoint shape");
    const int M = S.rank();
    if (static_cast<int>(r.size()) != M) throw std::invalid_argument("need one weight entry per support point");
    WeightCombinatorics W;
    for (int i : S.support()) {
        int t = S.tau[i - 1];
        if (t < i) continue;
        W.cycles.push_back(t == i ? IndexSet{i} : IndexSet{i, t});
    }
    std::sort(W.cycles.begin(), W.cycles.end(), [](const IndexSet& a, const IndexSet& b) { return a.back() < b.back(); });
    int next = 0;
    for (const auto& c : W.cycles) {
        std::vector<int> block;
        double s = 0.0;
        for (std::size_t p = 0; p < c.size(); ++p, ++next) {
            block.push_back(next + 1);
            s += r[next];
        }
        W.r_blocks.push_back(block);
        W.w_r.push_back(s);
        if (c.size() == 2) W.w_eps.push_back(block.back());
    }
    return W;
}

std::vector<int> frak_n(const Shape& S, const WeightCombinatorics& W, int k) {
    IndexSet P = S.leading(k);
    std::vector<int> out;
    for (int j : P)
        if (!std::binary_search(P.begin(), P.end(), S.tau[j - 1])) out.push_back(W.cycle_of(j));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> frak_c(const Shape& S, const WeightCombinatorics& W, int k) {
    IndexSet P = S.leading(k);
    IndexSet TP = S.image(P);
    auto nset = frak_n(S, W, k);
    std::vector<int> out;
    for (std::size_t i = 0; i < nset.size(); ++i) {
        IndexSet drop;
        for (std::size_t p = 0; p < i; ++p) drop = set_union(drop, W.cycles[nset[nset.size() - 1 - p]]);
        IndexSet I = set_minus(TP, drop), J = set_minus(P, drop);
        out.push_back(static_cast<int>(W.closure(I, J).size()));
    }
    return out;
}

IdealMinors ideal_minors(const Shape& S) {
    if (!S.is_self_adjoint()) throw ShapeError("ideal minors need a self-adjoint shape");
    IdealMinors out;
    const int N = S.n, M = S.rank();
    for (int k = 1; k <= M; ++k) {
        IndexSet P = S.leading(k), TP = S.image(P);
        out.zsk.push_back({TP, P});
        for (const auto& I : subsets(N, k))
            for (const auto& J : subsets(N, k))
                if (pair_cmp(J, I, P, TP) < 0) out.vanishing.push_back({I, J});
    }
    if (M < N)
        for (const auto& I : subsets(N, M + 1))
            for (const auto& J : subsets(N, M + 1)) out.vanishing.push_back({I, J});
    Shape cur = S;
    while (cur.n > 1) {
        cur = restrict_shape(cur);
        std::vector<IndexPair> level;
        for (int k = 1; k <= cur.rank(); ++k) {
            IndexSet P = cur.leading(k);
            level.push_back({cur.image(P), P});
        }
        out.restricted.push_back(level);
    }
    return out;
}

}  // namespace qrea
