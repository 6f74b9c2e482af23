#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "qrea/braid.hpp"
#include "qrea/classify.hpp"

namespace qrea {

namespace {

int rank_of(const std::vector<int>& eps) {
    int M = 0;
    for (int e : eps) M += e != 0;
    return M;
}

void check_weight(const std::vector<int>& eps, const std::vector<double>& r) {
    require_standard_form(eps);
    if (static_cast<int>(r.size()) != rank_of(eps)) throw std::invalid_argument("weight needs one entry per nonzero eps");
}

double log_q(double x, double q0) { return std::log(x) / std::log(q0); }

}  // namespace

bool is_epsilon_adapted(const std::vector<int>& eps, const std::vector<double>& r, double tol) {
    check_weight(eps, r);
    const int M = static_cast<int>(r.size());
    for (int s = 1; s <= M; ++s)
        for (int t = s + 1; t <= M; ++t) {
            if (eps_interval(eps, s, t) != 1) continue;
            const double d = (r[static_cast<std::size_t>(t - 1)] + t) - (r[static_cast<std::size_t>(s - 1)] + s);
            if (std::abs(d - std::round(d)) > tol || std::round(d) < 1) return false;
        }
    return true;
}

std::vector<double> hc_arguments(const std::vector<int>& eps, const std::vector<double>& r, double q0) {
    check_weight(eps, r);
    check_q0(q0);
    const int N = static_cast<int>(eps.size());
    std::vector<double> x(static_cast<std::size_t>(N), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const int p = eps_interval(eps, 0, static_cast<int>(i) + 1);
        x[i] = p * std::pow(q0, 2.0 * r[i] + 2.0 * static_cast<double>(i));
    }
    return x;
}

CentralCharacter central_from_weight(const std::vector<int>& eps, const std::vector<double>& r, double q0) {
    auto x = hc_arguments(eps, r, q0);
    const int N = static_cast<int>(x.size());
    // e_k by the usual recurrence
    std::vector<double> e(static_cast<std::size_t>(N + 1), 0.0);
    e[0] = 1.0;
    for (double v : x)
        for (int k = N; k >= 1; --k) e[static_cast<std::size_t>(k)] += v * e[static_cast<std::size_t>(k - 1)];
    return {std::vector<double>(e.begin() + 1, e.end())};
}

std::vector<std::complex<double>> central_roots(const CentralCharacter& s) {
    int N = static_cast<int>(s.values.size());
    if (N == 0) return {};
    // Trailing zero values are zero roots; deflate them so repeated zeros do not perturb the rest.
    double big = 1.0;
    for (double v : s.values) big = std::max(big, std::abs(v));
    std::vector<std::complex<double>> out;
    while (N > 0 && std::abs(s.values[static_cast<std::size_t>(N - 1)]) <= 1e-12 * big) {
        out.emplace_back(0.0, 0.0);
        --N;
    }
    if (N == 0) return out;
    // t^N + c_1 t^{N-1} + … + c_N with c_k = (−1)^k s_k
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(N, N);
    for (int k = 1; k <= N; ++k) C(0, k - 1) = -((k % 2) ? -1.0 : 1.0) * s.values[static_cast<std::size_t>(k - 1)];
    for (int i = 1; i < N; ++i) C(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    for (int i = 0; i < N; ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

WeightDecoding weight_from_central(const CentralCharacter& s, const std::vector<int>& pattern, double q0, double tol) {
    check_q0(q0);
    const int N = static_cast<int>(s.values.size());
    if (static_cast<int>(pattern.size()) != N) throw ClassifyError("sign pattern length differs from N");
    auto roots = central_roots(s);
    double top = 0.0;
    for (const auto& z : roots) top = std::max(top, std::abs(z));
    std::vector<double> pos, neg;
    int zeros = 0;
    for (const auto& z : roots) {
        const double scale = tol * std::max(1.0, top);
        if (std::abs(z) <= scale) {
            ++zeros;
            continue;
        }
        if (std::abs(z.imag()) > tol * std::max(1.0, std::abs(z))) {
            std::ostringstream os;
            os << "central character has a non-real root " << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
            throw ClassifyError(os.str());
        }
        (z.real() > 0 ? pos : neg).push_back(z.real());
    }
    const int want_pos = static_cast<int>(std::count(pattern.begin(), pattern.end(), 1));
    const int want_neg = static_cast<int>(std::count(pattern.begin(), pattern.end(), -1));
    if (static_cast<int>(pos.size()) != want_pos || static_cast<int>(neg.size()) != want_neg || zeros != N - want_pos - want_neg) {
        std::ostringstream os;
        os << "root signs (" << pos.size() << "," << neg.size() << "," << zeros << ") do not match the signature ("
           << want_pos << "," << want_neg << "," << N - want_pos - want_neg << ")";
        throw ClassifyError(os.str());
    }
    for (std::size_t i = 0; i < pattern.size(); ++i)
        if (pattern[i] == 0 && std::count(pattern.begin() + static_cast<long>(i), pattern.end(), 0) != static_cast<long>(pattern.size() - i))
            throw ClassifyError("zero entries of the sign pattern must come last");
    auto by_modulus = [](double a, double b) { return std::abs(a) > std::abs(b); };
    std::sort(pos.begin(), pos.end(), by_modulus);
    std::sort(neg.begin(), neg.end(), by_modulus);
    WeightDecoding out;
    out.roots.assign(static_cast<std::size_t>(N), 0.0);
    std::size_t ip = 0, in = 0;
    for (int i = 1; i <= N; ++i) {
        const int p = pattern[static_cast<std::size_t>(i - 1)];
        if (p == 0) break;
        const double x = p > 0 ? pos[ip++] : neg[in++];
        out.roots[static_cast<std::size_t>(i - 1)] = x;
        out.weight.r.push_back((log_q(std::abs(x), q0) - 2.0 * i + 2.0) / 2.0);
    }
    out.weight.eps = eps_from_prefix(pattern);
    return out;
}

WeightDecoding weight_from_central(const CentralCharacter& s, const Signature& sig, double q0, double tol) {
    std::vector<int> pattern;
    for (int i = 0; i < sig.n_plus; ++i) pattern.push_back(1);
    for (int i = 0; i < sig.n_minus; ++i) pattern.push_back(-1);
    for (int i = 0; i < sig.n_zero; ++i) pattern.push_back(0);
    return weight_from_central(s, pattern, q0, tol);
}

std::vector<int> eps_from_prefix(const std::vector<int>& prefix) {
    std::vector<int> eps;
    int prev = 1;
    for (int p : prefix) {
        if (p != 0 && p != 1 && p != -1) throw std::invalid_argument("prefix entries must be 0 or ±1");
        if (prev == 0 && p != 0) throw std::invalid_argument("prefix cannot leave zero");
        eps.push_back(prev == 0 ? 0 : p * prev);
        prev = p;
    }
    return eps;
}

std::vector<int> shape_sign_pattern(const Shape& S) {
    const int M = S.rank();
    WeightCombinatorics W = weight_combinatorics(S, std::vector<double>(static_cast<std::size_t>(M), 0.0));
    std::vector<int> pattern;
    int running = 1;
    for (const auto& c : W.cycles) {
        if (c.size() == 1) {
            running = S.u[static_cast<std::size_t>(c[0] - 1)].value().real() > 0 ? 1 : -1;
            pattern.push_back(running);
        } else {
            pattern.push_back(running);
            running = -running;
            pattern.push_back(running);
        }
    }
    pattern.resize(static_cast<std::size_t>(S.n), 0);
    return pattern;
}

double zsk_weight_formula(const Shape& S, const std::vector<double>& r, int k) {
    if (k < 1 || k > S.rank()) throw std::out_of_range("k must lie in 1..rank");
    WeightCombinatorics W = weight_combinatorics(S, r);
    IndexSet P = S.leading(k), TP = S.image(P);
    auto nset = frak_n(S, W, k);
    if (nset.empty()) return 2.0 * W.w_r_of(P);
    auto c = frak_c(S, W, k);
    double e = W.w_r_of(set_union(P, TP)) - static_cast<double>(c.size()) * k;
    for (std::size_t i = 0; i < c.size(); ++i) e += c[i] + static_cast<double>(i);
    return e;
}

CharacterWeights character_hw(int N, int k, int eps1, double r1, double rx, double q0) {
    check_q0(q0);
    if (eps1 != 1 && eps1 != -1) throw std::invalid_argument("eps1 must be ±1");
    const int x = N - 2 * k + 4;
    if (k < 2 || k >= N || x < 2 || x > N) {
        std::ostringstream os;
        os << "character weight index " << x << " is outside 2.." << N << " for N=" << N << ", k=" << k;
        throw ClassifyError(os.str());
    }
    CharacterWeights w;
    w.index = x;
    w.z_kk = eps1 * std::pow(q0, 2 * r1);
    w.z_n1_abs = std::pow(q0, r1 + rx + N - 2 * k + 3);
    w.z_nn = eps1 * (std::pow(q0, 2 * r1) - std::pow(q0, 2 * rx + 2 * N - 4 * k + 6));
    return w;
}

CharacterWeightFit character_hw_fit(int N, int k, double z_kk, double z_nn, double q0) {
    check_q0(q0);
    const int x = N - 2 * k + 4;
    if (k < 2 || k >= N || x < 2 || x > N) throw ClassifyError("character weight index out of range");
    if (z_kk == 0.0) throw ClassifyError("Z_kk must be nonzero");
    CharacterWeightFit f;
    f.index = x;
    f.eps1 = z_kk > 0 ? 1 : -1;
    f.r1 = log_q(std::abs(z_kk), q0) / 2.0;
    const double rest = std::abs(z_kk) - f.eps1 * z_nn;
    if (!(rest > 0.0)) throw ClassifyError("Z_NN is not below Z_kk in the eps1 direction");
    f.rx = (log_q(rest, q0) - (2.0 * N - 4.0 * k + 6.0)) / 2.0;
    return f;
}

BigCellWeight shifted_permutation(const BigCellWeight& w, int i, int j) {
    check_weight(w.eps, w.r);
    const int M = static_cast<int>(w.r.size());
    if (i < 1 || j <= i || j > M) throw std::out_of_range("shifted permutation needs 1 <= i < j <= M");
    const int N = static_cast<int>(w.eps.size());
    std::vector<int> prefix(static_cast<std::size_t>(N));
    for (int a = 1; a <= N; ++a) prefix[static_cast<std::size_t>(a - 1)] = eps_interval(w.eps, 0, a);
    std::swap(prefix[static_cast<std::size_t>(i - 1)], prefix[static_cast<std::size_t>(j - 1)]);
    BigCellWeight out;
    out.eps = eps_from_prefix(prefix);
    out.r = w.r;
    out.r[static_cast<std::size_t>(j - 1)] = w.r[static_cast<std::size_t>(i - 1)] - (j - i);
    out.r[static_cast<std::size_t>(i - 1)] = w.r[static_cast<std::size_t>(j - 1)] + (j - i);
    return out;
}

}  // namespace qrea
