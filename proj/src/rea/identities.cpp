#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "qrea/rea.hpp"

namespace qrea {

namespace {

std::string sstr(const IndexSet& I) {
    std::string s = "{";
    for (std::size_t p = 0; p < I.size(); ++p) s += (p ? "," : "") + std::to_string(I[p]);
    return s + "}";
}

struct Instance {
    std::string witness;
    std::function<NCPoly()> residual;
};

void run(IdentityReport& rep, std::vector<Instance> all, const VerifyParams& params) {
    if (params.samples > 0 && params.samples < all.size()) {
        std::mt19937_64 rng(params.seed);
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(params.samples);
    }
    for (auto& inst : all) {
        ++rep.instances;
        NCPoly r = inst.residual();
        if (!r.is_zero()) rep.failures.push_back({inst.witness, r.str()});
    }
}

NCPoly difference(NCPoly a, const NCPoly& b) {
    a.add(b, ExactQ(-1));
    return a;
}

// Both sides of the general commutation relation of two minors, subtracted.
NCPoly general_comm(const Minors& Mn, const IndexSet& I, const IndexSet& J, const IndexSet& Ip, const IndexSet& Jp) {
    const int N = Mn.n();
    const int k = static_cast<int>(I.size()), l = static_cast<int>(Ip.size());
    auto t_lk = minor_coeffs(N, l, k);
    auto t_kl = minor_coeffs(N, k, l);
    const Rea& A = Mn.rea();
    NCPoly res;
    res.n = N;
    for (const auto& K : subsets(N, k))
        for (const auto& L : subsets(N, k))
            for (const auto& Lp : subsets(N, l)) {
                ExactQ c1, c2;
                for (const auto& Pp : subsets(N, l)) {
                    const ExactQ& x = t_kl->coeff(I, L, Pp, Lp);
                    if (!x.is_zero()) c1 += t_lk->coeff(Pp, Ip, J, K) * x;
                    const ExactQ& y = t_kl->coeff(I, L, Pp, Jp);
                    if (!y.is_zero()) c2 += t_lk->coeff(Pp, Lp, J, K) * y;
                }
                if (!c1.is_zero()) res.add(A.mul(Mn.minor(K, L), Mn.minor(Lp, Jp)), c1);
                if (!c2.is_zero()) res.add(A.mul(Mn.minor(Ip, Lp), Mn.minor(K, L)), -c2);
            }
    return res;
}

// Muir-type identities. variant 0 is the common left side, 1 and 2 the two expansions.
NCPoly muir(const Minors& Mn, const IndexSet& I, const IndexSet& J, const IndexSet& F, const IndexSet& G,
            const IndexSet& K, const IndexSet& Kp, int variant) {
    const int N = Mn.n();
    const int k = static_cast<int>(I.size());
    const int r = k - static_cast<int>(F.size());
    const int l = static_cast<int>(K.size());
    const Rea& A = Mn.rea();
    auto [IF, IuF] = select(I, F);
    auto [JG, JuG] = select(J, G);
    NCPoly res;
    res.n = N;
    if (variant == 0) {
        if (K != Kp) return res;
        auto t = minor_coeffs(N, k, k - r);
        for (const auto& S : subsets(N, k))
            for (const auto& H : subsets(N, k - r)) {
                const ExactQ& x = t->inverse_coeff(S, I, IF, H);
                if (x.is_zero()) continue;
                for (const auto& T : subsets(N, k))
                    for (const auto& L : subsets(N, k - r)) {
                        const ExactQ& y = t->coeff(J, T, H, L);
                        if (y.is_zero()) continue;
                        res.add(A.mul(Mn.minor(S, T), Mn.minor(L, JG)), x * y);
                    }
            }
        return res;
    }
    auto t = minor_coeffs(N, k - r + l, k - l);
    auto [IK, IuK] = select(IuF, K);
    auto [IKp, IuKp] = select(IuF, Kp);
    auto JK = select(JuG, K).first;
    auto JuKp = select(JuG, Kp).second;
    for (const auto& P : subsets(r, l)) {
        auto [IP, IuP] = select(IuF, P);
        auto [JP, JuP] = select(JuG, P);
        ExactQ sign = ExactQ::neg_qpow(wt(P) - wt(K));
        IndexSet r1 = variant == 1 ? set_union(IF, IK) : set_union(IF, IP);
        IndexSet r2 = variant == 1 ? set_union(IF, IuKp) : set_union(IF, IuP);
        IndexSet c1 = variant == 1 ? set_union(JG, JP) : set_union(JG, JK);
        IndexSet c2 = variant == 1 ? set_union(JG, JuP) : set_union(JG, JuKp);
        for (const auto& Aa : subsets(N, k - r + l))
            for (const auto& B : subsets(N, k - l)) {
                const ExactQ& x = t->inverse_coeff(Aa, r1, r2, B);
                if (x.is_zero()) continue;
                for (const auto& C : subsets(N, k - r + l))
                    for (const auto& D : subsets(N, k - l)) {
                        const ExactQ& y = t->coeff(c1, C, B, D);
                        if (y.is_zero()) continue;
                        res.add(A.mul(Mn.minor(Aa, C), Mn.minor(D, c2)), sign * x * y);
                    }
            }
    }
    return res;
}

}  // namespace

IdentityReport verify_identity(const std::string& id, int N, const VerifyParams& params) {
    IdentityReport rep;
    rep.id = id;
    rep.n = N;
    auto Mn = minors_for(N);
    const Rea& A = Mn->rea();
    std::vector<Instance> inst;

    if (id == "laplace-agreement") {
        for (int k = 1; k <= N; ++k)
            for (const auto& I : subsets(N, k))
                for (const auto& J : subsets(N, k))
                    for (int m = 1; m <= k; ++m)
                        for (const auto& K : subsets(k, m))
                            for (int which = 1; which <= 4; ++which) {
                                std::ostringstream w;
                                w << "laplace-" << which << " I=" << sstr(I) << " J=" << sstr(J) << " K=" << sstr(K);
                                inst.push_back({w.str(), [=] {
                                                    return difference(Mn->laplace(which, I, J, m, K), Mn->minor(I, J));
                                                }});
                            }
    } else if (id == "general-comm") {
        for (int k = 1; k <= N; ++k)
            for (int l = 1; l <= N; ++l)
                for (const auto& I : subsets(N, k))
                    for (const auto& J : subsets(N, k))
                        for (const auto& Ip : subsets(N, l))
                            for (const auto& Jp : subsets(N, l)) {
                                std::string w = "I=" + sstr(I) + " J=" + sstr(J) + " I'=" + sstr(Ip) + " J'=" + sstr(Jp);
                                inst.push_back({w, [=] { return general_comm(*Mn, I, J, Ip, Jp); }});
                            }
    } else if (id == "muir-1" || id == "muir-2") {
        const int variant = id == "muir-1" ? 1 : 2;
        for (int k = 1; k <= N; ++k)
            for (int r = 1; r <= k; ++r)
                for (int l = 0; l <= r; ++l)
                    for (const auto& I : subsets(N, k))
                        for (const auto& J : subsets(N, k))
                            for (const auto& F : subsets(k, k - r))
                                for (const auto& G : subsets(k, k - r))
                                    for (const auto& K : subsets(r, l))
                                        for (const auto& Kp : subsets(r, l)) {
                                            std::string w = "I=" + sstr(I) + " J=" + sstr(J) + " F=" + sstr(F) +
                                                            " G=" + sstr(G) + " K=" + sstr(K) + " K'=" + sstr(Kp);
                                            inst.push_back({w, [=] {
                                                                return difference(muir(*Mn, I, J, F, G, K, Kp, 0),
                                                                                  muir(*Mn, I, J, F, G, K, Kp, variant));
                                                            }});
                                        }
    } else if (id == "centrality") {
        for (int k = 1; k <= N; ++k) {
            auto s = std::make_shared<NCPoly>(sigma(k, N));
            inst.push_back({"star sigma_" + std::to_string(k), [=, &A] { return difference(A.star(*s), *s); }});
            for (int i = 1; i <= N; ++i)
                for (int j = 1; j <= N; ++j)
                    inst.push_back({"sigma_" + std::to_string(k) + " vs Z" + std::to_string(i) + std::to_string(j),
                                    [=, &A] { return A.commutator(*s, A.generator(i, j)); }});
        }
    } else if (id == "qdet-sigma") {
        inst.push_back({"Z_[N] vs sigma_N", [=] {
                            IndexSet all = range_set(1, N);
                            return difference(Mn->minor(all, all),
                                              sigma(N, N).scaled(ExactQ::qpow(-static_cast<std::int64_t>(N) * (N - 1))));
                        }});
    } else if (id == "laplace-star-link") {
        for (int k = 1; k <= N; ++k)
            for (const auto& I : subsets(N, k))
                for (const auto& J : subsets(N, k))
                    inst.push_back({"I=" + sstr(I) + " J=" + sstr(J), [=, &A] {
                                        return difference(A.star(Mn->minor(I, J)), Mn->minor(J, I));
                                    }});
    } else {
        throw std::invalid_argument("unknown identity '" + id + "'");
    }
    run(rep, std::move(inst), params);
    return rep;
}

}  // namespace qrea
