#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "qrea/braid.hpp"
#include "qrea/reps.hpp"

namespace qrea {

std::vector<int> OperatorGrid::interior(int degree) const {
    std::vector<int> out;
    for (int v = 0; v < dim; ++v)
        if (headroom[static_cast<std::size_t>(v)] >= degree) out.push_back(v);
    return out;
}

OperatorGrid OperatorGrid::restricted() const {
    if (n < 2) throw RepError("restriction needs N >= 2");
    OperatorGrid out;
    out.n = n - 1;
    out.q0 = q0;
    out.dim = dim;
    out.tol = tol;
    out.headroom = headroom;
    out.provenance = provenance;
    out.provenance["restricted"] = provenance.value("restricted", 0) + 1;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) out.Z.push_back(z(i, j));
    return out;
}

OperatorGrid OperatorGrid::compressed(const Mat& V, int degree_budget) const {
    OperatorGrid out;
    out.n = n;
    out.q0 = q0;
    out.dim = static_cast<int>(V.cols());
    out.tol = tol;
    out.headroom.assign(static_cast<std::size_t>(out.dim), degree_budget);
    out.provenance = provenance;
    out.provenance["compressed"] = out.dim;
    for (const auto& A : Z) {
        Mat B = V.adjoint() * (A * V);
        out.Z.push_back(B.sparseView(1e-300, 1.0));
    }
    return out;
}

namespace {

void check_q(double q0) {
    if (!(q0 > 0.0 && q0 < 1.0)) throw std::invalid_argument("q0 must lie in (0,1)");
}

SpMat scalar_matrix(Cplx c) {
    SpMat m(1, 1);
    if (c != Cplx(0)) m.insert(0, 0) = c;
    return m;
}

SpMat identity(int d) {
    SpMat I(d, d);
    I.setIdentity();
    return I;
}

}  // namespace

Mat character_matrix(const CharacterParams& p) {
    const int N = p.n, k = p.k, l = p.l;
    if (N < 1 || k < 0 || l < 0 || k + l > N - l) throw std::invalid_argument("character needs k, l >= 0 and k + l <= N - l");
    if (!(p.a > 0.0)) throw std::invalid_argument("character needs a > 0");
    if (p.c == 0.0) throw std::invalid_argument("character needs c != 0");
    if (static_cast<int>(p.y_theta.size()) != l) throw std::invalid_argument("character needs one phase per antidiagonal pair");
    Mat M = Mat::Zero(N, N);
    for (int i = k + l + 1; i <= N; ++i) M(i - 1, i - 1) += p.a;
    for (int i = N - l + 1; i <= N; ++i) M(i - 1, i - 1) -= 1.0 / p.a;
    for (int i = 0; i < l; ++i) {
        Cplx y = std::polar(1.0, p.y_theta[static_cast<std::size_t>(i)]);
        M(k + i, N - i - 1) += y;
        M(N - i - 1, k + i) += std::conj(y);
    }
    return p.c * M;
}

OperatorGrid character_rep(const CharacterParams& p, double q0) {
    check_q(q0);
    Mat M = character_matrix(p);
    OperatorGrid g;
    g.n = p.n;
    g.q0 = q0;
    g.dim = 1;
    g.headroom = {kUnbounded};
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j) g.Z.push_back(scalar_matrix(M(i, j)));
    g.provenance = {{"q", q0},
                    {"base", {{"character", {{"N", p.n}, {"k", p.k}, {"l", p.l}, {"a", p.a}, {"c", p.c}, {"y", p.y_theta}}}}},
                    {"chain", nlohmann::json::array()}};
    return g;
}

Su2Rep su2_s(int d, double q0) {
    check_q(q0);
    if (d < 1) throw std::invalid_argument("su2 truncation needs d >= 1");
    SpMat X11(d, d), X21(d, d);
    for (int n = 1; n < d; ++n) X11.insert(n - 1, n) = std::sqrt(1.0 - std::pow(q0, 2 * n));
    for (int n = 0; n < d; ++n) X21.insert(n, n) = std::pow(q0, n);
    Su2Rep s;
    s.X11 = X11;
    s.X21 = X21;
    s.X12 = SpMat(-q0 * SpMat(X21.adjoint()));
    s.X22 = SpMat(X11.adjoint());
    return s;
}

namespace {

// X_ab of the s_i leg embedded in O_q(U(N)); `trivial` replaces s by the counit.
std::vector<SpMat> embedded_leg(int N, int i, int d, double q0, bool trivial) {
    std::vector<SpMat> X(static_cast<std::size_t>(N * N), SpMat(d, d));
    Su2Rep s = trivial ? Su2Rep{identity(d), SpMat(d, d), SpMat(d, d), identity(d)} : su2_s(d, q0);
    const SpMat* blk[2][2] = {{&s.X11, &s.X12}, {&s.X21, &s.X22}};
    for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b) {
            auto& x = X[static_cast<std::size_t>((a - 1) * N + (b - 1))];
            bool in_a = a == i || a == i + 1, in_b = b == i || b == i + 1;
            if (in_a && in_b) x = *blk[a - i][b - i];
            else if (a == b) x = identity(d);
        }
    return X;
}

OperatorGrid coact(const OperatorGrid& rep, const std::vector<SpMat>& X, int d, const std::vector<int>& leg_headroom) {
    const int N = rep.n;
    OperatorGrid out;
    out.n = N;
    out.q0 = rep.q0;
    out.dim = rep.dim * d;
    out.tol = rep.tol;
    out.provenance = rep.provenance;
    auto x = [&](int a, int b) -> const SpMat& { return X[static_cast<std::size_t>((a - 1) * N + (b - 1))]; };
    for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b) {
            SpMat acc(out.dim, out.dim);
            for (int k = 1; k <= N; ++k) {
                if (x(k, a).nonZeros() == 0) continue;
                for (int l = 1; l <= N; ++l) {
                    if (x(l, b).nonZeros() == 0 || rep.z(k, l).nonZeros() == 0) continue;
                    SpMat P = SpMat(x(k, a).adjoint()) * x(l, b);
                    P.prune(Cplx(0), 1e-300);
                    if (P.nonZeros() == 0) continue;
                    SpMat K = Eigen::kroneckerProduct(rep.z(k, l), P);
                    acc += K;
                }
            }
            acc.prune(Cplx(0), 1e-300);
            acc.makeCompressed();
            out.Z.push_back(acc);
        }
    out.headroom.resize(static_cast<std::size_t>(out.dim));
    for (int v = 0; v < rep.dim; ++v)
        for (int n = 0; n < d; ++n)
            out.headroom[static_cast<std::size_t>(v * d + n)] =
                std::min(rep.headroom[static_cast<std::size_t>(v)], leg_headroom[static_cast<std::size_t>(n)]);
    return out;
}

}  // namespace

OperatorGrid apply_alpha(const OperatorGrid& rep, int i, int d) {
    if (i < 1 || i >= rep.n) throw std::invalid_argument("alpha index must satisfy 1 <= i <= N-1");
    std::vector<int> leg(static_cast<std::size_t>(d));
    for (int n = 0; n < d; ++n) leg[static_cast<std::size_t>(n)] = (d - n) / 2;
    OperatorGrid out = coact(rep, embedded_leg(rep.n, i, d, rep.q0, false), d, leg);
    out.provenance["chain"].push_back({{"alpha", i}, {"d", d}});
    return out;
}

OperatorGrid apply_alpha_trivial(const OperatorGrid& rep, int i) {
    if (i < 1 || i >= rep.n) throw std::invalid_argument("alpha index must satisfy 1 <= i <= N-1");
    // the trivial O_q(SU(2)) representation is one-dimensional and exact
    OperatorGrid out = coact(rep, embedded_leg(rep.n, i, 1, rep.q0, true), 1, {kUnbounded});
    out.provenance["chain"].push_back({{"alpha", i}, {"d", 1}, {"trivial", true}});
    return out;
}

OperatorGrid uq_limit(const OperatorGrid& rep) {
    const auto& p = rep.provenance;
    if (!p.is_object() || !p.contains("base") || !p.contains("chain")) throw RepError("uq_limit needs a chain provenance");
    if (p.contains("restricted") || p.contains("compressed")) throw RepError("uq_limit needs an unmodified chain");
    nlohmann::json base = p;
    base["chain"] = nlohmann::json::array();
    OperatorGrid cur = build_from_spec(base);
    for (const auto& step : p["chain"]) {
        if (!step.contains("alpha")) throw RepError("uq_limit only replays alpha steps");
        cur = apply_alpha_trivial(cur, step["alpha"].get<int>());
    }
    return cur;
}

OperatorGrid apply_t_coaction(const OperatorGrid& rep, const VermaModule& V) {
    const int N = rep.n;
    if (V.n != N) throw std::invalid_argument("T-coaction needs a module of the same N");
    for (int e : V.eps)
        if (e != 1) throw std::invalid_argument("T-coaction needs an all-positive eps module");
    const int d = V.dim;
    std::vector<SpMat> X(static_cast<std::size_t>(N * N), SpMat(d, d));
    for (int a = 1; a <= N; ++a)
        for (int b = a; b <= N; ++b) X[static_cast<std::size_t>((a - 1) * N + (b - 1))] = V.t(a, b).cast<Cplx>().sparseView();
    std::vector<int> leg(static_cast<std::size_t>(d));
    for (int v = 0; v < d; ++v) leg[static_cast<std::size_t>(v)] = V.headroom(v);
    OperatorGrid out = coact(rep, X, d, leg);
    nlohmann::json r = V.r;
    out.provenance["chain"].push_back({{"verma", {{"eps", V.eps}, {"r", r}, {"cutoff", V.cutoff}}}});
    return out;
}

namespace {

Mat rhat_numeric(int N, double q0) {
    BraidOp R = build_rhat(N);
    Mat M(N * N, N * N);
    for (int r = 0; r < N * N; ++r)
        for (int c = 0; c < N * N; ++c) M(r, c) = R.at(r, c).eval(q0);
    return M;
}

using BlockVec = std::vector<SpMat>;  // N² row blocks

BlockVec apply_R(const Mat& R, const BlockVec& v) {
    const int n2 = static_cast<int>(v.size());
    BlockVec out(v.size(), SpMat(v[0].rows(), v[0].cols()));
    for (int p = 0; p < n2; ++p)
        for (int r = 0; r < n2; ++r)
            if (R(p, r) != Cplx(0) && v[static_cast<std::size_t>(r)].nonZeros() > 0)
                out[static_cast<std::size_t>(p)] += R(p, r) * v[static_cast<std::size_t>(r)];
    return out;
}

// Z_23 acting on the block vector: (a,k) <- Σ_l Z_kl (a,l).
BlockVec apply_Z(const OperatorGrid& g, const BlockVec& v) {
    const int N = g.n;
    BlockVec out(v.size(), SpMat(v[0].rows(), v[0].cols()));
    for (int a = 0; a < N; ++a)
        for (int k = 1; k <= N; ++k)
            for (int l = 1; l <= N; ++l) {
                const auto& src = v[static_cast<std::size_t>(a * N + l - 1)];
                if (src.nonZeros() == 0 || g.z(k, l).nonZeros() == 0) continue;
                out[static_cast<std::size_t>(a * N + k - 1)] += g.z(k, l) * src;
            }
    return out;
}

}  // namespace

double re_residual(const OperatorGrid& rep) {
    const int N = rep.n;
    const auto cols = rep.interior(2);
    if (cols.empty()) throw RepError("no interior vectors for the reflection-equation check");
    SpMat sel(rep.dim, static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) sel.insert(cols[c], static_cast<int>(c)) = 1.0;
    Mat R = rhat_numeric(N, rep.q0);
    double scale = 1.0;
    for (const auto& A : rep.Z)
        for (int k = 0; k < A.outerSize(); ++k)
            for (SpMat::InnerIterator it(A, k); it; ++it) scale = std::max(scale, std::abs(it.value()));
    double worst = 0.0;
    for (int c = 0; c < N * N; ++c) {
        BlockVec v(static_cast<std::size_t>(N * N), SpMat(rep.dim, sel.cols()));
        v[static_cast<std::size_t>(c)] = sel;
        // R Z R Z v against Z R Z R v, rightmost factor first
        BlockVec a = apply_Z(rep, v);
        a = apply_R(R, a);
        a = apply_Z(rep, a);
        a = apply_R(R, a);
        BlockVec b = apply_R(R, v);
        b = apply_Z(rep, b);
        b = apply_R(R, b);
        b = apply_Z(rep, b);
        for (std::size_t p = 0; p < a.size(); ++p) {
            SpMat diff = a[p] - b[p];
            for (int k = 0; k < diff.outerSize(); ++k)
                for (SpMat::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
        }
    }
    return worst / (scale * scale);
}

double hermiticity_defect(const OperatorGrid& rep) {
    double worst = 0.0;
    for (int i = 1; i <= rep.n; ++i)
        for (int j = 1; j <= rep.n; ++j) {
            SpMat d = rep.z(i, j) - SpMat(rep.z(j, i).adjoint());
            for (int k = 0; k < d.outerSize(); ++k)
                for (SpMat::InnerIterator it(d, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
        }
    return worst;
}

Mat test_vectors(const OperatorGrid& rep, int degree, int count, std::uint64_t seed) {
    auto idx = rep.interior(degree);
    if (idx.empty()) throw RepError("no basis vectors exact to degree " + std::to_string(degree));
    const int m = std::min<int>(count, static_cast<int>(idx.size()));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Mat A = Mat::Zero(rep.dim, m);
    for (int c = 0; c < m; ++c)
        for (int v : idx) A(v, c) = Cplx(g(rng), g(rng));
    Eigen::HouseholderQR<Mat> qr(A);
    return qr.householderQ() * Mat::Identity(rep.dim, m);
}

std::vector<Mat> irreducible_blocks(const OperatorGrid& rep, std::uint64_t seed, double tol) {
    const int D = rep.dim;
    if (D > 64) throw RepError("commutant splitting is limited to dimension 64");
    const int D2 = D * D;
    Mat L = Mat::Zero(D2, D2);
    Mat I = Mat::Identity(D, D);
    for (const auto& Zs : rep.Z) {
        Mat A(Zs);
        Mat C = Eigen::kroneckerProduct(I, A).eval() - Eigen::kroneckerProduct(A.transpose(), I).eval();
        L += C.adjoint() * C;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(L);
    const double top = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Mat H = Mat::Zero(D, D);
    for (int s = 0; s < D2; ++s) {
        if (es.eigenvalues()(s) > tol * top) break;
        Mat X = Eigen::Map<const Mat>(es.eigenvectors().col(s).data(), D, D);
        H += g(rng) * (X + X.adjoint());
    }
    Eigen::SelfAdjointEigenSolver<Mat> hs(H);
    const auto& ev = hs.eigenvalues();
    const double spread = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    std::vector<Mat> blocks;
    int start = 0;
    for (int i = 1; i <= D; ++i) {
        if (i == D || ev(i) - ev(i - 1) > 1e-6 * spread) {
            blocks.push_back(hs.eigenvectors().middleCols(start, i - start));
            start = i;
        }
    }
    return blocks;
}

}  // namespace qrea
