#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "qrea/braid.hpp"

namespace qrea {

namespace {

using TensorWord = std::vector<int>;
using TensorVec = std::map<TensorWord, ExactQ>;

std::string set_str(const IndexSet& I) {
    std::string s;
    for (int x : I) s += std::to_string(x);
    return s.empty() ? "-" : s;
}

TensorVec wedge(const IndexSet& I) {
    TensorVec v;
    std::vector<int> perm(I.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        TensorWord w;
        for (int p : perm) w.push_back(I[p]);
        v[w] += ExactQ::neg_qpow(inversions(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return v;
}

TensorVec tensor(const TensorVec& a, const TensorVec& b) {
    TensorVec out;
    for (const auto& [x, cx] : a) {
        for (const auto& [y, cy] : b) {
            TensorWord w = x;
            w.insert(w.end(), y.begin(), y.end());
            out[w] += cx * cy;
        }
    }
    return out;
}

// R̂ (or R̂^{-1} = R̂ − (q^{-1}−q)) on tensor legs p, p+1.
TensorVec apply_r(const TensorVec& v, int p, bool inverse) {
    const ExactQ gap = ExactQ::hecke_gap();
    TensorVec out;
    for (const auto& [w, c] : v) {
        int a = w[p], b = w[p + 1];
        TensorWord sw = w;
        std::swap(sw[p], sw[p + 1]);
        out[sw] += c * ExactQ::qpow(a == b ? -1 : 0);
        if (b < a) out[w] += c * gap;
        if (inverse) out[w] -= c * gap;
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero()) it = out.erase(it); else ++it;
    }
    return out;
}

// Moves a k-block past an l-block, one leg of the l-block at a time.
std::vector<int> block_ops(int k, int l) {
    std::vector<int> ops;
    for (int j = 0; j < l; ++j)
        for (int p = k + j - 1; p >= j; --p) ops.push_back(p);
    return ops;
}

TensorWord concat(const IndexSet& a, const IndexSet& b) {
    TensorWord w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

}  // namespace

MinorCoeffTable::MinorCoeffTable(int n, int k, int l)
    : n_(n), k_(k), l_(l), nk_(binomial(n, k)), nl_(binomial(n, l)) {
    if (n < 1 || k < 0 || l < 0 || k > n || l > n) throw std::invalid_argument("minor ranks out of range");
    coeffs_.assign(nk_ * nk_ * nl_ * nl_, ExactQ());
    inverse_.assign(coeffs_.size(), ExactQ());
    const auto ks = subsets(n, k);
    const auto ls = subsets(n, l);
    const auto ops = block_ops(k, l);

    // R̂^{IJ}_{I'J'}: component along e_{I'} ⊗ e_J of the braiding applied to e_I ⊗ e_{J'}.
    for (const auto& I : ks) {
        for (const auto& Jp : ls) {
            TensorVec v = tensor(wedge(I), wedge(Jp));
            for (int p : ops) v = apply_r(v, p, false);
            for (const auto& Ip : ls) {
                for (const auto& J : ks) {
                    auto it = v.find(concat(Ip, J));
                    if (it != v.end()) coeffs_[index(I, J, Ip, Jp)] = it->second;
                }
            }
        }
    }
    // (R̂^{-1})^{IJ}_{I'J'}: component along e_J ⊗ e_{I'} of the inverse braiding on e_{J'} ⊗ e_I.
    for (const auto& Jp : ls) {
        for (const auto& I : ks) {
            TensorVec v = tensor(wedge(Jp), wedge(I));
            for (auto it = ops.rbegin(); it != ops.rend(); ++it) v = apply_r(v, *it, true);
            for (const auto& J : ks) {
                for (const auto& Ip : ls) {
                    auto f = v.find(concat(J, Ip));
                    if (f != v.end()) inverse_[index(I, J, Ip, Jp)] = f->second;
                }
            }
        }
    }
}

std::size_t MinorCoeffTable::index(const IndexSet& I, const IndexSet& J, const IndexSet& Ip,
                                   const IndexSet& Jp) const {
    if (static_cast<int>(I.size()) != k_ || static_cast<int>(J.size()) != k_ ||
        static_cast<int>(Ip.size()) != l_ || static_cast<int>(Jp.size()) != l_) {
        throw std::invalid_argument("index set sizes do not match the table ranks");
    }
    std::size_t r = subset_rank(I, n_);
    r = r * nk_ + subset_rank(J, n_);
    r = r * nl_ + subset_rank(Ip, n_);
    r = r * nl_ + subset_rank(Jp, n_);
    return r;
}

const ExactQ& MinorCoeffTable::coeff(const IndexSet& I, const IndexSet& J, const IndexSet& Ip,
                                     const IndexSet& Jp) const {
    return coeffs_[index(I, J, Ip, Jp)];
}

const ExactQ& MinorCoeffTable::inverse_coeff(const IndexSet& I, const IndexSet& J, const IndexSet& Ip,
                                             const IndexSet& Jp) const {
    return inverse_[index(I, J, Ip, Jp)];
}

std::string MinorCoeffTable::dump() const {
    std::ostringstream os;
    os << "N=" << n_ << " k=" << k_ << " l=" << l_ << "\n";
    const auto ks = subsets(n_, k_);
    const auto ls = subsets(n_, l_);
    for (int inv = 0; inv < 2; ++inv) {
        for (const auto& I : ks)
            for (const auto& J : ks)
                for (const auto& Ip : ls)
                    for (const auto& Jp : ls) {
                        const ExactQ& c = inv ? inverse_coeff(I, J, Ip, Jp) : coeff(I, J, Ip, Jp);
                        if (c.is_zero()) continue;
                        os << (inv ? "inv " : "fwd ") << set_str(I) << "|" << set_str(J) << "|" << set_str(Ip)
                           << "|" << set_str(Jp) << " = " << c.str() << "\n";
                    }
    }
    return os.str();
}

std::vector<std::string> MinorCoeffTable::check_support() const {
    std::vector<std::string> bad;
    const auto ks = subsets(n_, k_);
    const auto ls = subsets(n_, l_);
    for (const auto& I : ks)
        for (const auto& J : ks)
            for (const auto& Ip : ls)
                for (const auto& Jp : ls) {
                    bool allowed = dominated_by(J, I) && dominated_by(Jp, Ip) &&
                                   set_minus(J, I) == set_minus(Jp, Ip) && set_minus(I, J) == set_minus(Ip, Jp);
                    if (!allowed && !coeff(I, J, Ip, Jp).is_zero()) {
                        bad.push_back("support " + set_str(I) + "|" + set_str(J) + "|" + set_str(Ip) + "|" +
                                      set_str(Jp) + " = " + coeff(I, J, Ip, Jp).str());
                    }
                }
    return bad;
}

std::vector<std::string> MinorCoeffTable::check_diagonal() const {
    std::vector<std::string> bad;
    for (const auto& I : subsets(n_, k_)) {
        for (const auto& Ip : subsets(n_, l_)) {
            auto m = static_cast<std::int64_t>(set_intersection(I, Ip).size());
            if (coeff(I, I, Ip, Ip) != ExactQ::qpow(-m)) {
                bad.push_back("diagonal " + set_str(I) + "|" + set_str(Ip) + " = " + coeff(I, I, Ip, Ip).str());
            }
            if (inverse_coeff(I, I, Ip, Ip) != ExactQ::qpow(m)) {
                bad.push_back("inverse diagonal " + set_str(I) + "|" + set_str(Ip) + " = " +
                              inverse_coeff(I, I, Ip, Ip).str());
            }
        }
    }
    return bad;
}

std::vector<std::string> MinorCoeffTable::check_inverse() const {
    // Σ_{X',Y} (R̂^{-1})^{Y A}_{A' X'} R̂^{I Y}_{X' J'} = δ_{A,I} δ_{A',J'}
    std::vector<std::string> bad;
    const auto ks = subsets(n_, k_);
    const auto ls = subsets(n_, l_);
    for (const auto& A : ks)
        for (const auto& Ap : ls)
            for (const auto& I : ks)
                for (const auto& Jp : ls) {
                    ExactQ s;
                    for (const auto& Xp : ls)
                        for (const auto& Y : ks) {
                            const ExactQ& a = inverse_coeff(Y, A, Ap, Xp);
                            if (a.is_zero()) continue;
                            const ExactQ& b = coeff(I, Y, Xp, Jp);
                            if (!b.is_zero()) s += a * b;
                        }
                    ExactQ want = (A == I && Ap == Jp) ? ExactQ(1) : ExactQ();
                    if (s != want) {
                        bad.push_back("inverse " + set_str(A) + "|" + set_str(Ap) + "|" + set_str(I) + "|" +
                                      set_str(Jp) + " residual " + (s - want).str());
                    }
                }
    return bad;
}

std::shared_ptr<const MinorCoeffTable> minor_coeffs(int N, int k, int l) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const MinorCoeffTable>> cache;
    auto key = std::make_tuple(N, k, l);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto table = std::make_shared<const MinorCoeffTable>(N, k, l);
    auto bad = table->check_diagonal();
    auto sup = table->check_support();
    bad.insert(bad.end(), sup.begin(), sup.end());
    if (!bad.empty()) {
        throw CalibrationError("minor coefficient table N=" + std::to_string(N) + " k=" + std::to_string(k) +
                               " l=" + std::to_string(l) + " failed: " + bad.front());
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, table).first->second;
}

}  // namespace qrea
