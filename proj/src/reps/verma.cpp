#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "qrea/braid.hpp"
#include "qrea/classify.hpp"
#include "qrea/reps.hpp"

namespace qrea {

namespace {

// Generators of O_q^ε(T(N)): t_ij (i ≤ j) and s_ij = t_ij^* (i < j).
struct Gen {
    int kind;  // 0: t_ij with i < j, 1: t_ii, 2: s_ij
    int i, j;
};

using GWord = std::vector<std::uint8_t>;
using Lin = std::map<GWord, double>;
using FMat = std::map<std::pair<int, int>, Lin>;

class TAlgebra {
public:
    // With magnitudes set, every coefficient is replaced by its absolute value; the result bounds
    // the cancellation in the signed computation.
    TAlgebra(int n, const std::vector<int>& eps, const std::vector<double>& rfull, double q0, bool magnitudes = false)
        : n_(n), q0_(q0), rfull_(rfull), abs_(magnitudes) {
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j) gens_.push_back({i == j ? 1 : 0, i, j});
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) gens_.push_back({2, i, j});
        build_rules(eps);
    }

    int n() const { return n_; }
    const std::vector<Gen>& gens() const { return gens_; }
    std::uint8_t t(int i, int j) const { return find(i <= j ? (i == j ? 1 : 0) : -1, i, j); }
    std::uint8_t s(int i, int j) const { return find(2, i, j); }
    std::uint8_t star(std::uint8_t g) const {
        const Gen& x = gens_[g];
        if (x.kind == 0) return find(2, x.i, x.j);
        if (x.kind == 2) return find(0, x.i, x.j);
        return g;
    }

    // g · (w v₀) as a combination of PBW words applied to v₀.
    const Lin& act(std::uint8_t g, const GWord& w) {
        auto key = std::make_pair(g, w);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Lin out = compute_act(g, w);
        return memo_.emplace(std::move(key), std::move(out)).first->second;
    }

    Lin apply_word(const GWord& u, const GWord& w) {
        Lin v{{w, 1.0}};
        for (auto g = u.rbegin(); g != u.rend(); ++g) {
            Lin nv;
            for (const auto& [ww, cc] : v)
                for (const auto& [w2, c2] : act(*g, ww)) nv[w2] += cc * c2;
            v = std::move(nv);
        }
        return v;
    }

private:
    std::uint8_t find(int kind, int i, int j) const {
        for (std::size_t g = 0; g < gens_.size(); ++g)
            if (gens_[g].kind == kind && gens_[g].i == i && gens_[g].j == j) return static_cast<std::uint8_t>(g);
        throw std::logic_error("unknown T generator");
    }

    bool bad(std::uint8_t x, std::uint8_t y) const {
        const Gen &a = gens_[x], &b = gens_[y];
        if (b.kind != 0) return false;
        if (a.kind == 0) return std::make_pair(a.i, a.j) > std::make_pair(b.i, b.j);
        return true;
    }

    Mat rhat(const std::vector<int>* eps) const {
        BraidOp R = eps ? build_rhat_eps(n_, *eps) : build_rhat(n_);
        Mat M(n_ * n_, n_ * n_);
        for (int r = 0; r < n_ * n_; ++r)
            for (int c = 0; c < n_ * n_; ++c) M(r, c) = R.at(r, c).eval(q0_);
        return M;
    }

    FMat scalar(const Mat& R) const {
        FMat out;
        for (int r = 0; r < R.rows(); ++r)
            for (int c = 0; c < R.cols(); ++c)
                if (R(r, c) != Cplx(0)) out[{r, c}][GWord{}] = R(r, c).real();
        return out;
    }

    // F(a,c) as an operator on the first (leg1) or second (leg2) tensor factor.
    template <class F>
    FMat leg(F f, bool first) const {
        FMat out;
        const int N = n_;
        for (int a = 1; a <= N; ++a)
            for (int b = 1; b <= N; ++b)
                for (int c = 1; c <= N; ++c) {
                    int g = first ? f(a, c) : f(b, c);
                    if (g < 0) continue;
                    int row = (a - 1) * N + (b - 1);
                    int col = first ? (c - 1) * N + (b - 1) : (a - 1) * N + (c - 1);
                    out[{row, col}][GWord{static_cast<std::uint8_t>(g)}] = 1.0;
                }
        return out;
    }

    static FMat mul(const FMat& A, const FMat& B) {
        FMat C;
        for (const auto& [rk, x] : A)
            for (const auto& [kc, y] : B) {
                if (rk.second != kc.first) continue;
                Lin& e = C[{rk.first, kc.second}];
                for (const auto& [w1, c1] : x)
                    for (const auto& [w2, c2] : y) {
                        GWord w = w1;
                        w.insert(w.end(), w2.begin(), w2.end());
                        e[w] += c1 * c2;
                    }
            }
        return C;
    }

    void collect(const FMat& A, const FMat& B) {
        std::map<std::pair<int, int>, Lin> diff;
        for (const auto& [k, x] : A)
            for (const auto& [w, c] : x) diff[k][w] += c;
        for (const auto& [k, x] : B)
            for (const auto& [w, c] : x) diff[k][w] -= c;
        for (auto& [k, x] : diff) {
            Lin clean;
            for (const auto& [w, c] : x)
                if (std::abs(c) > 1e-12) clean[w] = c;
            if (!clean.empty()) relations_.push_back(std::move(clean));
        }
    }

    void build_rules(const std::vector<int>& eps) {
        auto T = [this](int i, int j) { return i <= j ? static_cast<int>(t(i, j)) : -1; };
        auto Ts = [this](int i, int j) {
            if (j > i) return -1;
            if (i == j) return static_cast<int>(t(i, i));
            return static_cast<int>(s(j, i));
        };
        FMat R = scalar(rhat(nullptr)), Re = scalar(rhat(&eps));
        FMat T13 = leg(T, true), T23 = leg(T, false), Ts13 = leg(Ts, true), Ts23 = leg(Ts, false);
        collect(mul(mul(R, T13), T23), mul(mul(T13, T23), R));
        collect(mul(mul(Ts23, Ts13), R), mul(mul(R, Ts23), Ts13));
        collect(mul(mul(T23, R), Ts23), mul(mul(Ts13, Re), T13));

        std::vector<std::pair<std::uint8_t, std::uint8_t>> need;
        for (std::size_t x = 0; x < gens_.size(); ++x)
            for (std::size_t y = 0; y < gens_.size(); ++y)
                if (bad(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)))
                    need.push_back({static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)});
        // greedy: solve a relation for a bad pair once every other bad pair in it has a rule
        bool progress = true;
        while (progress) {
            progress = false;
            for (const auto& b : need) {
                if (rules_.count(b)) continue;
                GWord bw{b.first, b.second};
                for (const auto& rel : relations_) {
                    auto it = rel.find(bw);
                    if (it == rel.end()) continue;
                    bool ok = true;
                    for (const auto& [w, c] : rel)
                        if (w != bw && w.size() == 2 && bad(w[0], w[1]) && !rules_.count({w[0], w[1]})) ok = false;
                    if (!ok) continue;
                    Lin rule;
                    for (const auto& [w, c] : rel)
                        if (w != bw) rule[w] = -c / it->second;
                    rules_[b] = std::move(rule);
                    progress = true;
                    break;
                }
            }
        }
        if (rules_.size() != need.size()) throw std::logic_error("T-algebra rewriting rules incomplete");
    }

    Lin compute_act(std::uint8_t x, const GWord& w) {
        const Gen& g = gens_[x];
        if (w.empty()) {
            if (g.kind == 0) return {{GWord{x}, 1.0}};
            if (g.kind == 1) return {{GWord{}, std::pow(q0_, rfull_[static_cast<std::size_t>(g.i - 1)])}};
            return {};
        }
        const std::uint8_t y = w[0];
        if (g.kind == 0 && !bad(x, y)) {
            GWord nw{x};
            nw.insert(nw.end(), w.begin(), w.end());
            return {{nw, 1.0}};
        }
        GWord rest(w.begin() + 1, w.end());
        Lin out;
        for (const auto& [u, c] : rules_.at({x, y})) {
            Lin v{{rest, abs_ ? std::abs(c) : c}};
            for (auto gi = u.rbegin(); gi != u.rend(); ++gi) {
                Lin nv;
                for (const auto& [ww, cc] : v)
                    for (const auto& [w2, c2] : act(*gi, ww)) nv[w2] += cc * c2;
                v = std::move(nv);
            }
            for (const auto& [ww, cc] : v) out[ww] += abs_ ? std::abs(cc) : cc;
        }
        for (auto it = out.begin(); it != out.end();) it = it->second == 0.0 ? out.erase(it) : std::next(it);
        return out;
    }

    int n_;
    double q0_;
    std::vector<double> rfull_;
    bool abs_ = false;
    std::vector<Gen> gens_;
    std::vector<Lin> relations_;
    std::map<std::pair<std::uint8_t, std::uint8_t>, Lin> rules_;
    std::map<std::pair<std::uint8_t, GWord>, Lin> memo_;
};

}  // namespace

int VermaModule::headroom(int v) const {
    if (complete || n == 1) return kUnbounded;
    return (cutoff - height[static_cast<std::size_t>(v)]) / (n - 1);
}

VermaModule verma_module(const std::vector<int>& eps, const std::vector<double>& r, int cutoff, double q0) {
    if (!(q0 > 0.0 && q0 < 1.0)) throw std::invalid_argument("q0 must lie in (0,1)");
    require_standard_form(eps);
    const int N = static_cast<int>(eps.size());
    if (N < 1) throw std::invalid_argument("eps must be nonempty");
    int M = 0;
    for (int e : eps) M += e != 0;
    if (static_cast<int>(r.size()) != M) throw std::invalid_argument("weight needs one entry per nonzero eps");
    if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
    std::vector<double> rfull(r);
    rfull.resize(static_cast<std::size_t>(N), 0.0);

    TAlgebra A(N, eps, rfull, q0), Aabs(N, eps, rfull, q0, true);
    std::vector<std::uint8_t> offs;
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) offs.push_back(A.t(i, j));
    auto ht = [&](std::uint8_t g) { return A.gens()[g].j - A.gens()[g].i; };

    std::vector<GWord> basis;
    std::function<void(std::size_t, GWord&, int)> grow = [&](std::size_t start, GWord& cur, int h) {
        basis.push_back(cur);
        for (std::size_t k = start; k < offs.size(); ++k) {
            if (h + ht(offs[k]) > cutoff) continue;
            cur.push_back(offs[k]);
            grow(k, cur, h + ht(offs[k]));
            cur.pop_back();
        }
    };
    GWord empty;
    grow(0, empty, 0);
    const int nb = static_cast<int>(basis.size());
    std::map<GWord, int> index;
    for (int b = 0; b < nb; ++b) index[basis[static_cast<std::size_t>(b)]] = b;

    auto weight = [&](const GWord& w) {
        std::vector<int> wt(static_cast<std::size_t>(N), 0);
        for (auto g : w) {
            --wt[static_cast<std::size_t>(A.gens()[g].i - 1)];
            ++wt[static_cast<std::size_t>(A.gens()[g].j - 1)];
        }
        return wt;
    };
    std::map<std::vector<int>, std::vector<int>> blocks;
    for (int b = 0; b < nb; ++b) blocks[weight(basis[static_cast<std::size_t>(b)])].push_back(b);

    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nb, nb), Gabs = Eigen::MatrixXd::Zero(nb, nb);
    for (const auto& [wt, ids] : blocks)
        for (int a : ids) {
            GWord u;
            const auto& wa = basis[static_cast<std::size_t>(a)];
            for (auto g = wa.rbegin(); g != wa.rend(); ++g) u.push_back(A.star(*g));
            for (int b : ids) {
                Lin v = A.apply_word(u, basis[static_cast<std::size_t>(b)]);
                auto it = v.find(GWord{});
                G(a, b) = it == v.end() ? 0.0 : it->second;
                Lin va = Aabs.apply_word(u, basis[static_cast<std::size_t>(b)]);
                auto ia = va.find(GWord{});
                Gabs(a, b) = ia == va.end() ? 0.0 : ia->second;
            }
        }

    VermaModule V;
    V.n = N;
    V.q0 = q0;
    V.eps = eps;
    V.r = rfull;
    V.cutoff = cutoff;
    V.pbw_size = static_cast<std::size_t>(nb);
    std::vector<Eigen::VectorXd> cols;
    std::vector<int> counts(static_cast<std::size_t>(cutoff) + 1, 0);
    for (const auto& [wt, ids] : blocks) {
        const int m = static_cast<int>(ids.size());
        Eigen::MatrixXd Gb(m, m);
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y) Gb(x, y) = 0.5 * (G(ids[x], ids[y]) + G(ids[y], ids[x]));
        Eigen::MatrixXd Gb_abs(m, m);
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y) Gb_abs(x, y) = std::max(Gabs(ids[x], ids[y]), Gabs(ids[y], ids[x]));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Gb);
        // eigenvalues below the rounding scale of the block are zero
        const double noise = 1e-9 * Gb_abs.norm();
        const double top = std::max({es.eigenvalues().cwiseAbs().maxCoeff(), noise, 1e-300});
        int h = 0;
        for (auto g : basis[static_cast<std::size_t>(ids[0])]) h += ht(g);
        for (int e = 0; e < m; ++e) {
            double lam = es.eigenvalues()(e);
            if (std::abs(lam) <= noise) continue;
            if (lam / top < V.min_gram_ratio) {
                V.min_gram_ratio = lam / top;
                std::ostringstream os;
                os << "weight [";
                for (std::size_t p = 0; p < wt.size(); ++p) os << (p ? "," : "") << wt[p];
                os << "] height " << h << " eigenvalue ratio " << lam / top;
                V.gram_witness = os.str();
            }
            if (lam <= 1e-10 * top) continue;
            Eigen::VectorXd c = Eigen::VectorXd::Zero(nb);
            for (int x = 0; x < m; ++x) c(ids[x]) = es.eigenvectors()(x, e) / std::sqrt(lam);
            cols.push_back(c);
            V.height.push_back(h);
            ++counts[static_cast<std::size_t>(h)];
        }
    }
    const int d = static_cast<int>(cols.size());
    V.dim = d;
    Eigen::MatrixXd C(nb, d);
    for (int c = 0; c < d; ++c) C.col(c) = cols[static_cast<std::size_t>(c)];

    if (N == 1) V.complete = true;
    for (int h0 = 1; !V.complete && h0 + N - 2 <= cutoff; ++h0) {
        bool empty_run = true;
        for (int h = h0; h <= h0 + N - 2; ++h) empty_run = empty_run && counts[static_cast<std::size_t>(h)] == 0;
        V.complete = empty_run;
    }

    Eigen::MatrixXd GC = G * C;
    V.T.assign(static_cast<std::size_t>(N * N), Eigen::MatrixXd::Zero(d, d));
    for (int i = 1; i <= N; ++i)
        for (int j = i; j <= N; ++j) {
            std::uint8_t g = A.t(i, j);
            Eigen::MatrixXd Ag = Eigen::MatrixXd::Zero(nb, nb);
            for (int b = 0; b < nb; ++b)
                for (const auto& [w, c] : A.act(g, basis[static_cast<std::size_t>(b)])) {
                    auto it = index.find(w);
                    if (it != index.end()) Ag(it->second, b) += c;
                }
            V.T[static_cast<std::size_t>((i - 1) * N + (j - 1))] = GC.transpose() * Ag * C;
        }
    return V;
}

OperatorGrid verma_big_cell(const std::vector<int>& eps, const std::vector<double>& r, int cutoff, double q0) {
    require_standard_form(eps);
    int M = 0;
    for (int e : eps) M += e != 0;
    if (static_cast<int>(r.size()) != M) throw std::invalid_argument("weight needs one entry per nonzero eps");
    if (!is_epsilon_adapted(eps, r)) throw std::invalid_argument("highest weight r is not eps-adapted");
    VermaModule V = verma_module(eps, r, cutoff, q0);
    if (V.min_gram_ratio < -1e-10) throw UnitarityError("Gram form not positive: " + V.gram_witness);
    const int N = V.n, d = V.dim;
    OperatorGrid g;
    g.n = N;
    g.q0 = q0;
    g.dim = d;
    std::vector<double> prefix(static_cast<std::size_t>(N));
    for (int i = 1; i <= N; ++i) prefix[static_cast<std::size_t>(i - 1)] = eps_interval(eps, 0, i);
    for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l) {
            Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d, d);
            for (int i = 1; i <= std::min(k, l); ++i) {
                double e = prefix[static_cast<std::size_t>(i - 1)];
                if (e != 0.0) acc += e * V.t(i, k).transpose() * V.t(i, l);
            }
            g.Z.push_back(acc.cast<Cplx>().sparseView(1e-300, 1.0));
        }
    g.headroom.resize(static_cast<std::size_t>(d));
    for (int v = 0; v < d; ++v) g.headroom[static_cast<std::size_t>(v)] = V.headroom(v);
    nlohmann::json rj = r;
    g.provenance = {{"q", q0},
                    {"base", {{"verma", {{"eps", eps}, {"r", rj}, {"cutoff", cutoff}}}}},
                    {"chain", nlohmann::json::array()}};
    return g;
}

}  // namespace qrea
