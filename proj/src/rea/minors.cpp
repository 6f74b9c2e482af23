#include <algorithm>
#include <stdexcept>

#include "qrea/rea.hpp"

namespace qrea {

Minors::Minors(std::shared_ptr<const Rea> rea) : rea_(std::move(rea)) {}

const NCPoly& Minors::minor(const IndexSet& I, const IndexSet& J) const {
    if (I.size() != J.size()) throw std::invalid_argument("quantum minor needs |I| = |J|");
    if (!is_index_set(I, n()) || !is_index_set(J, n())) throw std::out_of_range("minor index set out of range");
    auto key = std::make_pair(I, J);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;
    }
    NCPoly value;
    if (I.empty()) value = rea_->one();
    else if (I.size() == 1) value = rea_->generator(I[0], J[0]);
    else value = laplace(1, I, J, 1, {1});
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = cache_.emplace(key, std::make_unique<NCPoly>(std::move(value)));
    return *it->second;
}

NCPoly Minors::laplace(int which, const IndexSet& I, const IndexSet& J, int m, const IndexSet& K) const {
    const int N = n();
    const int k = static_cast<int>(I.size());
    if (static_cast<int>(J.size()) != k) throw std::invalid_argument("Laplace expansion needs |I| = |J|");
    if (m < 0 || m > k || static_cast<int>(K.size()) != m) throw std::invalid_argument("bad Laplace block size");
    auto table = minor_coeffs(N, m, k - m);
    const auto ms = subsets(N, m);
    const auto rs = subsets(N, k - m);
    auto [IK, IuK] = select(I, K);
    auto [JK, JuK] = select(J, K);
    NCPoly res;
    res.n = N;
    for (const auto& P : subsets(k, m)) {
        auto [IP, IuP] = select(I, P);
        auto [JP, JuP] = select(J, P);
        ExactQ sign = ExactQ::neg_qpow(wt(P) - wt(K));
        for (const auto& S : ms)
            for (const auto& T : ms)
                for (const auto& Sp : rs)
                    for (const auto& Tp : rs) {
                        ExactQ c;
                        const IndexSet *a1, *a2, *b1, *b2;
                        switch (which) {
                            case 1: {
                                const ExactQ& x = table->inverse_coeff(S, IK, IuK, Tp);
                                if (x.is_zero()) continue;
                                c = x * table->coeff(JP, T, Tp, Sp);
                                a1 = &S; a2 = &T; b1 = &Sp; b2 = &JuP;
                                break;
                            }
                            case 2: {
                                const ExactQ& x = table->inverse_coeff(T, JK, JuK, Sp);
                                if (x.is_zero()) continue;
                                c = x * table->coeff(IP, S, Sp, Tp);
                                a1 = &IuP; a2 = &Tp; b1 = &S; b2 = &T;
                                break;
                            }
                            case 3: {
                                const ExactQ& x = table->inverse_coeff(S, IP, IuP, Tp);
                                if (x.is_zero()) continue;
                                c = x * table->coeff(JK, T, Tp, Sp);
                                a1 = &S; a2 = &T; b1 = &Sp; b2 = &JuK;
                                break;
                            }
                            case 4: {
                                const ExactQ& x = table->inverse_coeff(T, JP, JuP, Sp);
                                if (x.is_zero()) continue;
                                c = x * table->coeff(IK, S, Sp, Tp);
                                a1 = &IuK; a2 = &Tp; b1 = &S; b2 = &T;
                                break;
                            }
                            default:
                                throw std::invalid_argument("Laplace variant must be 1..4");
                        }
                        if (c.is_zero()) continue;
                        res.add(rea_->mul(minor(*a1, *a2), minor(*b1, *b2)), sign * c);
                    }
    }
    return res;
}

std::shared_ptr<const Minors> minors_for(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const Minors>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    return cache.emplace(n, std::make_shared<const Minors>(rea_for(n))).first->second;
}

NCPoly quantum_minor(int n, const IndexSet& I, const IndexSet& J) { return minors_for(n)->minor(I, J); }

NCPoly sigma(int k, int n) {
    if (k < 1 || k > n) throw std::invalid_argument("sigma index must satisfy 1 <= k <= N");
    const Rea& A = *rea_for(n);
    NCPoly free;
    free.n = n;
    for (const auto& I : subsets(n, k)) {
        IndexSet perm = I;
        do {
            // σ as a permutation of all of [N], fixing the complement of I
            std::vector<int> full = range_set(1, n);
            for (int p = 0; p < k; ++p) full[I[p] - 1] = perm[p];
            int l = inversions(full);
            int a = descents_below(I, perm);
            Word w;
            for (int p = k - 1; p >= 0; --p) w.push_back(A.gen(I[p], perm[p]));
            std::int64_t e = 2LL * n * k - 2LL * wt(I) - l - a;
            free.add(w, ExactQ::monomial(Gaussian(l % 2 == 0 ? 1 : -1), e));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return A.normal_form(free);
}

NCPoly project_quotient(const NCPoly& p, int M) {
    const int N = p.n;
    if (M < 0 || M >= N) throw std::invalid_argument("quotient needs 0 <= M < N");
    if (M == 0) return p;
    const Rea& B = *rea_for(N - M);
    NCPoly free;
    free.n = N - M;
    for (const auto& [w, c] : p.terms) {
        Word nw;
        bool killed = false;
        for (auto g : w) {
            int i = g / N + 1, j = g % N + 1;
            if (i <= M || j <= M) {
                killed = true;
                break;
            }
            nw.push_back(B.gen(i - M, j - M));
        }
        if (!killed) free.add(nw, c);
    }
    return B.normal_form(free);
}

}  // namespace qrea
