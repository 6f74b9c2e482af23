#include "qrea/braid.hpp"

namespace qrea {

namespace {

// Sparse columns: cols[c] lists (row, value).
struct SparseOp {
    int dim = 0;
    std::vector<std::vector<std::pair<int, ExactQ>>> cols;
};

SparseOp from_dense(const BraidOp& R) {
    SparseOp S;
    S.dim = R.size();
    S.cols.resize(S.dim);
    for (int c = 0; c < S.dim; ++c)
        for (int r = 0; r < S.dim; ++r)
            if (!R.at(r, c).is_zero()) S.cols[c].emplace_back(r, R.at(r, c));
    return S;
}

// R̂ acting on legs (leg, leg+1) of (ℂ^N)^{⊗3}.
SparseOp on_legs(const BraidOp& R, int leg) {
    const int N = R.n;
    SparseOp S;
    S.dim = N * N * N;
    S.cols.resize(S.dim);
    for (int c = 0; c < S.dim; ++c) {
        int d[3] = {c / (N * N), (c / N) % N, c % N};
        int pair_col = d[leg] * N + d[leg + 1];
        for (int r2 = 0; r2 < N * N; ++r2) {
            const ExactQ& v = R.at(r2, pair_col);
            if (v.is_zero()) continue;
            int e[3] = {d[0], d[1], d[2]};
            e[leg] = r2 / N;
            e[leg + 1] = r2 % N;
            S.cols[c].emplace_back((e[0] * N + e[1]) * N + e[2], v);
        }
    }
    return S;
}

SparseOp compose(const SparseOp& A, const SparseOp& B) {
    SparseOp C;
    C.dim = A.dim;
    C.cols.resize(C.dim);
    for (int c = 0; c < C.dim; ++c) {
        std::vector<ExactQ> acc(C.dim);
        std::vector<bool> touched(C.dim, false);
        for (const auto& [k, b] : B.cols[c]) {
            for (const auto& [r, a] : A.cols[k]) {
                acc[r] += a * b;
                touched[r] = true;
            }
        }
        for (int r = 0; r < C.dim; ++r)
            if (touched[r] && !acc[r].is_zero()) C.cols[c].emplace_back(r, acc[r]);
    }
    return C;
}

SparseOp add(const SparseOp& A, const SparseOp& B, const ExactQ& b_scale) {
    SparseOp C;
    C.dim = A.dim;
    C.cols.resize(C.dim);
    for (int c = 0; c < C.dim; ++c) {
        std::vector<ExactQ> acc(C.dim);
        for (const auto& [r, a] : A.cols[c]) acc[r] += a;
        for (const auto& [r, b] : B.cols[c]) acc[r] += b * b_scale;
        for (int r = 0; r < C.dim; ++r)
            if (!acc[r].is_zero()) C.cols[c].emplace_back(r, acc[r]);
    }
    return C;
}

SparseOp scalar_identity(int dim, const ExactQ& s) {
    SparseOp I;
    I.dim = dim;
    I.cols.resize(dim);
    if (!s.is_zero())
        for (int c = 0; c < dim; ++c) I.cols[c].emplace_back(c, s);
    return I;
}

void collect_nonzero(const SparseOp& S, const std::string& what, IdentityReport& rep) {
    for (int c = 0; c < S.dim; ++c) {
        for (const auto& [r, v] : S.cols[c]) {
            rep.failures.push_back({what + " entry (" + std::to_string(r) + "," + std::to_string(c) + ")", v.str()});
            return;
        }
    }
}

void append(IdentityReport& rep, const std::vector<std::string>& bad) {
    for (const auto& b : bad) rep.failures.push_back({b, "nonzero"});
}

}  // namespace

IdentityReport verify_braid(const std::string& id, int N) {
    IdentityReport rep;
    rep.id = id;
    rep.n = N;
    BraidOp R = build_rhat(N);
    if (id == "braid") {
        SparseOp A = on_legs(R, 0), B = on_legs(R, 1);
        SparseOp lhs = compose(A, compose(B, A));
        SparseOp rhs = compose(B, compose(A, B));
        rep.instances = 1;
        collect_nonzero(add(lhs, rhs, ExactQ(-1)), "braid residual", rep);
    } else if (id == "hecke") {
        SparseOp S = from_dense(R);
        SparseOp left = add(S, scalar_identity(S.dim, ExactQ::qpow(-1)), ExactQ(-1));
        SparseOp right = add(S, scalar_identity(S.dim, ExactQ::qpow(1)), ExactQ(1));
        rep.instances = 1;
        collect_nonzero(compose(left, right), "hecke residual", rep);
    } else if (id == "selfadjoint") {
        rep.instances = 1;
        for (int r = 0; r < R.size(); ++r)
            for (int c = 0; c < R.size(); ++c)
                if (R.at(r, c) != R.at(c, r).star()) {
                    rep.failures.push_back({"entry (" + std::to_string(r) + "," + std::to_string(c) + ")",
                                            (R.at(r, c) - R.at(c, r).star()).str()});
                }
    } else if (id == "coeff-support" || id == "coeff-diagonal" || id == "coeff-inverse") {
        for (int k = 1; k <= N; ++k) {
            for (int l = 1; l <= N; ++l) {
                MinorCoeffTable T(N, k, l);
                ++rep.instances;
                if (id == "coeff-support") append(rep, T.check_support());
                else if (id == "coeff-diagonal") append(rep, T.check_diagonal());
                else append(rep, T.check_inverse());
            }
        }
    } else {
        throw std::invalid_argument("unknown braid identity '" + id + "'");
    }
    return rep;
}

}  // namespace qrea
