#include <algorithm>
#include <cmath>
#include <sstream>

#include "qrea/reps.hpp"

namespace qrea {

namespace {

std::vector<IndexPair> pairs_in_order(int N, int k) {
    std::vector<IndexPair> out;
    for (const auto& I : subsets(N, k))
        for (const auto& J : subsets(N, k)) out.push_back({I, J});
    std::sort(out.begin(), out.end(),
              [](const IndexPair& a, const IndexPair& b) { return pair_cmp(a.J, a.I, b.J, b.I) < 0; });
    return out;
}

double max_col_norm(const Mat& A) {
    double m = 0.0;
    for (int c = 0; c < A.cols(); ++c) m = std::max(m, A.col(c).norm());
    return m;
}

}  // namespace

ShapeDetection detect_shape(const OperatorGrid& rep, const Mat& V0, const DetectOptions& opt) {
    const int N = rep.n;
    Mat V = V0.size() ? V0 : test_vectors(rep, N, opt.vectors, opt.seed);
    MinorEvaluator<Mat> ev(rep, V);
    ShapeDetection out;
    out.shape = Shape::zero(N);
    double rank1_scale = 0.0;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) rank1_scale = std::max(rank1_scale, max_col_norm(ev.apply({i}, {j})));

    std::vector<int> tau_of(static_cast<std::size_t>(N + 1), 0);
    std::vector<int> order;  // p_1, p_2, ...
    IndexSet prevJ, prevI;
    Cplx prevU = 1.0;
    std::vector<Cplx> u(static_cast<std::size_t>(N + 1), 0.0);
    for (int k = 1; k <= N; ++k) {
        auto pairs = pairs_in_order(N, k);
        std::vector<double> norms;
        double top = 0.0;
        for (const auto& p : pairs) {
            norms.push_back(max_col_norm(ev.apply(p.I, p.J)));
            top = std::max(top, norms.back());
        }
        if (top <= opt.tol * std::pow(std::max(rank1_scale, 1e-300), k) || top == 0.0) break;
        std::size_t lead = 0;
        while (norms[lead] <= opt.tol * top) {
            out.max_vanishing = std::max(out.max_vanishing, norms[lead] / top);
            ++lead;
        }
        const IndexPair& P = pairs[lead];
        auto newJ = set_minus(P.J, prevJ), newI = set_minus(P.I, prevI);
        if (newJ.size() != 1 || newI.size() != 1 || set_minus(prevJ, P.J).size() || set_minus(prevI, P.I).size()) {
            std::ostringstream os;
            os << "leading minors are not nested at rank " << k;
            throw RepError(os.str());
        }
        const int pk = newJ[0];
        if (!order.empty() && pk < order.back()) throw RepError("leading minor support is not increasing");
        order.push_back(pk);
        tau_of[static_cast<std::size_t>(pk)] = newI[0];
        std::vector<int> img;
        for (int j : P.J) img.push_back(tau_of[static_cast<std::size_t>(j)]);
        const int l = inversions(img);
        const Mat& ZV = ev.apply(P.I, P.J);
        Cplx tr = (V.adjoint() * ZV).trace();
        Cplx Uk = (l % 2 ? -1.0 : 1.0) * tr / std::abs(tr);
        u[static_cast<std::size_t>(pk)] = Uk / prevU;
        // positivity of ū_{P_[k]} (−1)^l Z_{S,k} on the examined span
        Mat A = (l % 2 ? -1.0 : 1.0) * std::conj(Uk) * (V.adjoint() * ZV);
        Mat H = 0.5 * (A + A.adjoint());
        const double an = std::max(A.norm(), 1e-300);
        Eigen::SelfAdjointEigenSolver<Mat> es(H);
        double defect = std::max(0.0, -es.eigenvalues().minCoeff()) / an;
        defect = std::max(defect, 0.5 * (A - A.adjoint()).norm() / an);
        out.positivity_defect = std::max(out.positivity_defect, defect);
        out.leading.push_back(P);
        out.norms.push_back(norms[lead]);
        prevJ = P.J;
        prevI = P.I;
        prevU = Uk;
    }

    // complete τ to a permutation: support by detection, the rest matched in increasing order
    IndexSet support(order.begin(), order.end());
    std::sort(support.begin(), support.end());
    IndexSet image;
    for (int p : support) image.push_back(tau_of[static_cast<std::size_t>(p)]);
    std::sort(image.begin(), image.end());
    auto free_dom = set_minus(range_set(1, N), support), free_img = set_minus(range_set(1, N), image);
    Shape S;
    S.n = N;
    S.tau.assign(static_cast<std::size_t>(N), 0);
    S.u.assign(static_cast<std::size_t>(N), UnitValue::zero());
    for (int p : support) {
        S.tau[static_cast<std::size_t>(p - 1)] = tau_of[static_cast<std::size_t>(p)];
        S.u[static_cast<std::size_t>(p - 1)] = UnitValue::from_complex(u[static_cast<std::size_t>(p)], 1e-6);
    }
    for (std::size_t x = 0; x < free_dom.size(); ++x) S.tau[static_cast<std::size_t>(free_dom[x] - 1)] = free_img[x];
    out.shape = S;
    return out;
}

SplitBlocks split_blocks(const OperatorGrid& rep, const IndexSet& pm, const Mat& W0, int keep, double res_tol) {
    const int deg = static_cast<int>(pm.size());
    SplitBlocks out;
    out.pm = pm;
    Mat OW, W;
    if (W0.size()) {
        W = W0;
        MinorEvaluator<Mat> ev(rep, W);
        OW = ev.apply(pm, pm);
    } else {
        auto idx = rep.interior(std::max(rep.n, deg) + 1);
        if (idx.empty()) throw RepError("no interior vectors for split separation");
        SpMat sel(rep.dim, static_cast<int>(idx.size()));
        for (std::size_t c = 0; c < idx.size(); ++c) sel.insert(idx[c], static_cast<int>(c)) = 1.0;
        MinorEvaluator<SpMat> ev(rep, sel);
        OW = Mat(ev.apply(pm, pm));
        W = Mat(sel);
    }
    Mat A = W.adjoint() * OW;
    A = 0.5 * (A + A.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    const auto& lam = es.eigenvalues();
    const double scale = std::max(lam.cwiseAbs().maxCoeff(), 1e-300);
    std::vector<int> ord(static_cast<std::size_t>(lam.size()));
    for (int i = 0; i < lam.size(); ++i) ord[static_cast<std::size_t>(i)] = i;
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return std::abs(lam(a)) > std::abs(lam(b)); });
    std::vector<Vec> plus, minus;
    for (int e : ord) {
        if (std::abs(lam(e)) <= 1e-9 * scale) break;
        Vec y = es.eigenvectors().col(e);
        Vec x = W * y;
        double res = (OW * y - lam(e) * x).norm() / std::abs(lam(e));
        if (res > res_tol) continue;
        auto& bucket = lam(e) > 0 ? plus : minus;
        auto& eigs = lam(e) > 0 ? out.plus_eigs : out.minus_eigs;
        if (static_cast<int>(bucket.size()) >= keep) continue;
        bucket.push_back(x);
        eigs.push_back(lam(e));
    }
    auto pack = [&](const std::vector<Vec>& cols) {
        Mat M(rep.dim, static_cast<int>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) M.col(static_cast<int>(c)) = cols[c];
        if (M.cols() == 0) return M;
        Eigen::HouseholderQR<Mat> qr(M);
        return Mat(qr.householderQ() * Mat::Identity(rep.dim, M.cols()));
    };
    out.plus = pack(plus);
    out.minus = pack(minus);
    return out;
}

std::pair<double, double> split_weights(double w_tau, double w_plus, double w_minus, double q0, double tol) {
    double disc = w_tau * w_tau - 4.0 * q0 * q0 * w_plus * w_minus;
    if (disc < -tol * std::max(1.0, w_tau * w_tau)) throw std::domain_error("split weights need a nonnegative discriminant");
    double root = std::sqrt(std::max(disc, 0.0));
    return {0.5 * (w_tau + root), 0.5 * (w_tau - root)};
}

std::vector<IndexPair> weight_coordinates(const Shape& S) {
    std::vector<Shape> levels{S};
    while (levels.back().n > 1) levels.push_back(restrict_shape(levels.back()));
    std::vector<IndexPair> out;
    const int N = S.n;
    for (int m = std::max(N - 2, 0); m >= 0; --m) {
        const Shape& R = levels[static_cast<std::size_t>(m)];
        for (int k = 1; k <= R.rank(); ++k) {
            IndexSet P = R.leading(k);
            out.push_back({R.image(P), P});
        }
    }
    return out;
}

WeightReport weight_analysis(const OperatorGrid& rep, const Shape& S, const Mat& W, double cluster_tol) {
    WeightReport out;
    out.operators = weight_coordinates(S);
    if (W.cols() == 0) throw RepError("weight analysis needs a nonempty subspace");
    Mat cur = W;
    for (const auto& op : out.operators) {
        MinorEvaluator<Mat> ev(rep, cur);
        Mat A = cur.adjoint() * ev.apply(op.I, op.J);
        Eigen::ComplexEigenSolver<Mat> es(A);
        const auto& lam = es.eigenvalues();
        double top = 0.0;
        for (int i = 0; i < lam.size(); ++i) top = std::max(top, std::abs(lam(i)));
        // the cluster of largest modulus; ties broken towards the larger real part
        int best = 0;
        for (int i = 1; i < lam.size(); ++i) {
            double a = std::abs(lam(i)), b = std::abs(lam(best));
            if (a > b + cluster_tol * top || (std::abs(a - b) <= cluster_tol * top && lam(i).real() > lam(best).real()))
                best = i;
        }
        std::vector<int> members;
        for (int i = 0; i < lam.size(); ++i)
            if (std::abs(lam(i) - lam(best)) <= cluster_tol * std::max(top, 1e-300)) members.push_back(i);
        Mat Y(cur.cols(), static_cast<int>(members.size()));
        for (std::size_t c = 0; c < members.size(); ++c) Y.col(static_cast<int>(c)) = es.eigenvectors().col(members[c]);
        Eigen::HouseholderQR<Mat> qr(Y);
        Mat Q = qr.householderQ() * Mat::Identity(Y.rows(), Y.cols());
        cur = cur * Q;
        out.hw_eigen.push_back(lam(best));
        out.hw.push_back(std::abs(lam(best)));
    }
    out.hw_multiplicity = static_cast<int>(cur.cols());
    out.hw_vector = cur.col(0);
    Mat v = out.hw_vector;
    MinorEvaluator<Mat> ev(rep, v);
    for (std::size_t c = 0; c < out.operators.size(); ++c) {
        const auto& op = out.operators[c];
        double r = (ev.apply(op.I, op.J) - out.hw_eigen[c] * v).norm() / std::max(1.0, std::abs(out.hw_eigen[c]));
        out.eigen_residual = std::max(out.eigen_residual, r);
    }
    return out;
}

}  // namespace qrea
