#include <mutex>

#include "qrea/braid.hpp"
#include "qrea/reps.hpp"

namespace qrea {

namespace {

// One step of the first Laplace expansion with m = 1, K = {1}: Z_{IJ} = Σ c · Z_{s,t} Z_{I',J'}.
struct LaplaceTerm {
    int s, t;
    IndexSet I, J;
    ExactQ c;
};

const std::vector<LaplaceTerm>& laplace_terms(int N, const IndexSet& I, const IndexSet& J) {
    static std::mutex mu;
    static std::map<std::tuple<int, IndexSet, IndexSet>, std::vector<LaplaceTerm>> cache;
    auto key = std::make_tuple(N, I, J);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const int k = static_cast<int>(I.size());
    auto table = minor_coeffs(N, 1, k - 1);
    const auto singles = subsets(N, 1);
    const auto rest = subsets(N, k - 1);
    auto [IK, IuK] = select(I, {1});
    std::vector<LaplaceTerm> terms;
    for (int p = 1; p <= k; ++p) {
        auto [JP, JuP] = select(J, {p});
        ExactQ sign = ExactQ::neg_qpow(p - 1);
        for (const auto& S : singles)
            for (const auto& Tp : rest) {
                const ExactQ& x = table->inverse_coeff(S, IK, IuK, Tp);
                if (x.is_zero()) continue;
                for (const auto& T : singles)
                    for (const auto& Sp : rest) {
                        ExactQ c = x * table->coeff(JP, T, Tp, Sp);
                        if (c.is_zero()) continue;
                        terms.push_back({S[0], T[0], Sp, JuP, sign * c});
                    }
            }
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(terms)).first->second;
}

}  // namespace

template <class Block>
MinorEvaluator<Block>::MinorEvaluator(const OperatorGrid& rep, Block base) : rep_(rep), base_(std::move(base)) {}

template <class Block>
const Block& MinorEvaluator<Block>::apply(const IndexSet& I, const IndexSet& J) {
    if (I.size() != J.size()) throw std::invalid_argument("minor needs |I| = |J|");
    if (I.empty()) return base_;
    auto key = std::make_pair(I, J);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Block out;
    if (I.size() == 1) {
        out = rep_.z(I[0], J[0]) * base_;
    } else {
        out = Block(base_.rows(), base_.cols());
        out.setZero();
        for (const auto& t : laplace_terms(rep_.n, I, J)) {
            if (rep_.z(t.s, t.t).nonZeros() == 0) continue;
            const Block& inner = apply(t.I, t.J);
            Block term = rep_.z(t.s, t.t) * inner;
            out += t.c.eval(rep_.q0) * term;
        }
    }
    return cache_.emplace(key, std::move(out)).first->second;
}

template class MinorEvaluator<Mat>;
template class MinorEvaluator<SpMat>;

SpMat minor_op(const OperatorGrid& rep, const IndexSet& I, const IndexSet& J) {
    SpMat id(rep.dim, rep.dim);
    id.setIdentity();
    MinorEvaluator<SpMat> ev(rep, id);
    SpMat out = ev.apply(I, J);
    out.prune(Cplx(0), 1e-300);
    return out;
}

Mat eval_poly(const OperatorGrid& rep, const NCPoly& p, const Mat& V) {
    if (p.n != rep.n) throw std::invalid_argument("polynomial and representation disagree on N");
    Mat out = Mat::Zero(V.rows(), V.cols());
    for (const auto& [w, c] : p.terms) {
        Mat cur = V;
        for (auto g = w.rbegin(); g != w.rend(); ++g) cur = rep.z(*g / rep.n + 1, *g % rep.n + 1) * cur;
        out += c.eval(rep.q0) * cur;
    }
    return out;
}

namespace {

// σ_k by its defining sum, evaluated directly on the block.
Mat sigma_apply(const OperatorGrid& rep, int k, const Mat& V) {
    const int N = rep.n;
    const double q = rep.q0;
    Mat out = Mat::Zero(V.rows(), V.cols());
    for (const auto& I : subsets(N, k)) {
        IndexSet perm = I;
        do {
            std::vector<int> full = range_set(1, N);
            for (int p = 0; p < k; ++p) full[static_cast<std::size_t>(I[p] - 1)] = perm[p];
            const int l = inversions(full);
            const int a = descents_below(I, perm);
            const double coef = (l % 2 ? -1.0 : 1.0) * std::pow(q, 2 * N * k - 2 * wt(I) - l - a);
            Mat cur = V;
            for (int p = 0; p < k; ++p) cur = rep.z(I[p], perm[p]) * cur;
            out += coef * cur;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

}  // namespace

CentralValues central_values(const OperatorGrid& rep, std::uint64_t seed) {
    Mat V = test_vectors(rep, rep.n, 3, seed);
    CentralValues cv;
    for (int k = 1; k <= rep.n; ++k) {
        Mat S = sigma_apply(rep, k, V);
        Cplx s = (V.adjoint() * S).trace() / static_cast<double>(V.cols());
        cv.values.push_back(s.real());
        cv.imag_part = std::max(cv.imag_part, std::abs(s.imag()));
        cv.scalar_defect = std::max(cv.scalar_defect, (S - s * V).norm() / std::max(1.0, std::abs(s)));
    }
    return cv;
}

}  // namespace qrea
