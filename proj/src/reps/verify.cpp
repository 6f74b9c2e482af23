#include <algorithm>
#include <cmath>
#include <sstream>

#include "qrea/reps.hpp"

namespace qrea {

namespace {

std::string pair_str(const IndexSet& I, const IndexSet& J) {
    std::ostringstream os;
    os << "Z[";
    for (int i : I) os << i;
    os << ",";
    for (int j : J) os << j;
    os << "]";
    return os.str();
}

int count_in(const IndexSet& A, const IndexSet& B) { return static_cast<int>(set_intersection(A, B).size()); }

SpMat sparse_identity(int d) {
    SpMat I(d, d);
    I.setIdentity();
    return I;
}

// Products of minors on blocks of test vectors. Every instance declares its total degree; instances
// whose degree exceeds the available headroom are skipped.
class Checker {
public:
    Checker(const std::string& id, const OperatorGrid& rep, const Mat& V)
        : rep_(rep), fixed_(V), ops_(rep, sparse_identity(rep.dim)) {
        out.id = id;
        for (const auto& A : rep.Z)
            for (int k = 0; k < A.outerSize(); ++k)
                for (SpMat::InnerIterator it(A, k); it; ++it) scale_ = std::max(scale_, std::abs(it.value()));
    }

    const SpMat& op(const IndexSet& I, const IndexSet& J) { return ops_.apply(I, J); }
    double q() const { return rep_.q0; }

    // nullptr when no vectors are exact to the degree.
    const Mat* block(int degree) {
        if (fixed_.size()) return &fixed_;
        auto it = blocks_.find(degree);
        if (it == blocks_.end()) {
            Mat B;
            if (!rep_.interior(degree).empty()) B = test_vectors(rep_, degree, 4, 17 + static_cast<std::uint64_t>(degree));
            it = blocks_.emplace(degree, std::move(B)).first;
        }
        return it->second.cols() ? &it->second : nullptr;
    }

    // Relative residual; both sides below 1e-6·scale^degree count as absolute.
    void record(const Mat& lhs, const Mat& rhs, int degree, const std::string& what) {
        const double floor = 1e-6 * std::pow(scale_, degree);
        const double denom = std::max({lhs.norm(), rhs.norm(), floor});
        note((lhs - rhs).norm() / denom, what);
    }

    void note(double r, const std::string& what) {
        ++out.instances;
        if (out.worst.empty() || r > out.max_residual) {
            out.max_residual = r;
            out.worst = what;
        }
    }

    // Absolute residual in units of scale^degree.
    void record_abs(const Mat& lhs, const Mat& rhs, int degree, const std::string& what) {
        note((lhs - rhs).norm() / std::pow(scale_, degree), what);
    }

    void skip() { ++out.skipped; }

    RepCheck out;

private:
    const OperatorGrid& rep_;
    Mat fixed_;
    MinorEvaluator<SpMat> ops_;
    std::map<int, Mat> blocks_;
    double scale_ = 1.0;
};

// Z_{R,k} Z_{IJ} = q^e Z_{IJ} Z_{R,k} for every rank k of R and all I, J ⊆ [N].
void check_qcomm(Checker& C, int N, const Shape& R, const std::string& tag) {
    for (int k = 1; k <= R.rank(); ++k) {
        IndexSet P = R.leading(k), TP = R.image(P);
        const SpMat Zs = C.op(TP, P);
        for (int s = 1; s <= N; ++s)
            for (const auto& I : subsets(N, s))
                for (const auto& J : subsets(N, s)) {
                    const int deg = k + s;
                    const Mat* V = C.block(deg);
                    if (!V) {
                        C.skip();
                        continue;
                    }
                    const int e = count_in(I, P) + count_in(I, TP) - count_in(J, P) - count_in(J, TP);
                    const SpMat& Zij = C.op(I, J);
                    Mat lhs = Zs * (Zij * *V);
                    Mat rhs = std::pow(C.q(), e) * (Zij * (Zs * *V));
                    C.record(lhs, rhs, deg, tag + " k=" + std::to_string(k) + " " + pair_str(I, J));
                }
    }
}

void check_rel1(Checker& C, const Shape& S) {
    const int M = S.rank();
    for (int k = 1; k < M; ++k) {
        IndexSet P = S.leading(k), TP = S.image(P);
        IndexSet out_of = set_minus(P, TP);  // i ∈ P with τ(i) ∉ P
        if (out_of.size() != 1) continue;
        const int i = out_of[0], ti = S.tau[static_cast<std::size_t>(i - 1)];
        const Mat* V = C.block(2 * k);
        if (!V) {
            C.skip();
            continue;
        }
        IndexSet big = set_union(P, {ti}), small = set_minus(P, {i});
        Mat lhs = C.op(big, big) * (C.op(small, small) * *V);
        Mat rhs = -std::pow(C.q(), -2) * (C.op(TP, P) * (C.op(P, TP) * *V));
        C.record(lhs, rhs, 2 * k, "k=" + std::to_string(k) + " i=" + std::to_string(i));
    }
}

void check_rel2(Checker& C, const Shape& S) {
    const int M = S.rank();
    std::vector<double> zero(static_cast<std::size_t>(M), 0.0);
    WeightCombinatorics W = weight_combinatorics(S, zero);
    for (int k = 1; k <= M; ++k) {
        auto nset = frak_n(S, W, k);
        if (nset.size() < 2) continue;
        IndexSet P = S.leading(k), TP = S.image(P);
        const IndexSet& t = W.cycles[static_cast<std::size_t>(nset.back())];
        IndexSet K = W.closure(TP, P);
        const int c0 = static_cast<int>(K.size());
        Shape Sp = S;
        while (Sp.n > K.back()) Sp = restrict_shape(Sp);
        IndexSet Pp = Sp.leading(c0 - 1), TPp = Sp.image(Pp);
        const int deg = c0 + k - 1;
        const Mat* V = C.block(deg);
        if (!V) {
            C.skip();
            continue;
        }
        Mat lhs = C.op(K, K) * (C.op(set_minus(P, t), set_minus(TP, t)) * *V);
        const double sign = ((k - c0 - 1) % 2 == 0) ? 1.0 : -1.0;
        Mat rhs = -sign * std::pow(C.q(), k - c0 - 1) * (C.op(TPp, Pp) * (C.op(P, TP) * *V));
        C.record(lhs, rhs, deg, "k=" + std::to_string(k) + " closure size " + std::to_string(c0));
    }
}

void check_gen41(Checker& C, const Shape& S) {
    const int M = S.rank();
    const double q = C.q();
    for (int m = 1; m < M; ++m) {
        IndexSet P = S.leading(m);
        const int k = P.back();
        if (S.tau[static_cast<std::size_t>(k - 1)] != k + 1) continue;
        IndexSet Pm1 = S.leading(m - 1);
        if (S.image(Pm1) != Pm1) continue;
        IndexSet TP = S.image(P), Pp1 = S.leading(m + 1);
        const int deg = 2 * m;
        const Mat* V = C.block(deg);
        if (!V) {
            C.skip();
            continue;
        }
        const SpMat& Zpp = C.op(P, P);
        const SpMat& Ztt = C.op(TP, TP);
        Mat base = -q * q * (C.op(Pp1, Pp1) * (C.op(Pm1, Pm1) * *V));
        Mat mix = q * q * (Zpp * (Zpp * *V)) + Ztt * (Zpp * *V);
        Mat sq = Zpp * (Zpp * *V);
        Mat lhs1 = C.op(P, TP) * (C.op(TP, P) * *V);
        C.record(lhs1, base + mix - sq, deg, "first m=" + std::to_string(m));
        Mat lhs2 = C.op(TP, P) * (C.op(P, TP) * *V);
        C.record(lhs2, base + q * q * mix - std::pow(q, 4) * sq, deg, "second m=" + std::to_string(m));
    }
}

void check_annihilation(Checker& C, const OperatorGrid& rep, const Shape& S, const Vec& v0) {
    const int N = S.n, M = S.rank();
    std::vector<double> zero(static_cast<std::size_t>(M), 0.0);
    WeightCombinatorics W = weight_combinatorics(S, zero);
    Mat v = v0;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            const bool ui = !S.u[static_cast<std::size_t>(i - 1)].is_zero(), uj = !S.u[static_cast<std::size_t>(j - 1)].is_zero();
            bool listed = !ui && uj;
            if (ui && uj) listed = W.cycle_of(i) > W.cycle_of(j);
            if (!listed) continue;
            Mat lhs = rep.z(i, j) * v;
            C.record_abs(lhs, Mat::Zero(v.rows(), 1), 1, pair_str({i}, {j}));
        }
}

void check_zs0(Checker& C, const OperatorGrid& rep, const Shape& S, const Vec& v0) {
    const int N = S.n, M = S.rank();
    Mat v = v0;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            if (i == j) continue;
            bool commutes = true;
            for (int k = 1; k <= M && commutes; ++k) {
                IndexSet P = S.leading(k), TP = S.image(P);
                commutes = count_in({i}, P) + count_in({i}, TP) - count_in({j}, P) - count_in({j}, TP) == 0;
            }
            if (!commutes) continue;
            IndexPair zs{S.image(S.leading(1)), S.leading(1)};
            if (M >= 1 && zs.I == IndexSet{i} && zs.J == IndexSet{j}) continue;
            Mat w = rep.z(i, j) * v;
            Cplx lam = (v.adjoint() * w)(0, 0);
            C.record_abs(w, lam * v, 1, pair_str({i}, {j}));
        }
}

}  // namespace

RepCheck verify_in_rep(const std::string& id, const OperatorGrid& rep, const Shape& S, const Mat& V, const Vec& hw) {
    if (S.n != rep.n) throw std::invalid_argument("shape and representation disagree on N");
    Checker C(id, rep, V);
    if (id == "qcomm") {
        check_qcomm(C, rep.n, S, "S");
    } else if (id == "qcomm-restricted") {
        Shape R = S;
        for (int m = 1; R.n > 1; ++m) {
            R = restrict_shape(R);
            check_qcomm(C, rep.n, R, "m=" + std::to_string(m));
        }
    } else if (id == "weight-rel-1") {
        check_rel1(C, S);
    } else if (id == "weight-rel-2") {
        check_rel2(C, S);
    } else if (id == "gen-rel-4.1") {
        check_gen41(C, S);
    } else if (id == "AS-annihilation" || id == "ZS0-scalar") {
        if (hw.size() != rep.dim) throw std::invalid_argument(id + " needs a highest-weight vector");
        if (id == "AS-annihilation") check_annihilation(C, rep, S, hw.normalized());
        else check_zs0(C, rep, S, hw.normalized());
    } else {
        throw std::invalid_argument("unknown identity id: " + id);
    }
    return C.out;
}

}  // namespace qrea
