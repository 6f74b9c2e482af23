#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "qrea/shapes.hpp"

namespace qrea {

UnitValue UnitValue::from_complex(FloatC z, double tol) {
    if (std::abs(z) <= tol) return zero();
    if (std::abs(z - 1.0) <= tol) return of_sign(1);
    if (std::abs(z + 1.0) <= tol) return of_sign(-1);
    return of_phase(std::arg(z));
}

FloatC UnitValue::value() const {
    switch (kind) {
        case Kind::zero: return 0.0;
        case Kind::sign: return static_cast<double>(sign);
        case Kind::phase: return std::polar(1.0, theta);
    }
    return 0.0;
}

UnitValue UnitValue::conj() const {
    if (kind == Kind::phase) return of_phase(-theta);
    return *this;
}

Shape Shape::identity(int n) {
    Shape S;
    S.n = n;
    S.tau.resize(n);
    std::iota(S.tau.begin(), S.tau.end(), 1);
    S.u.assign(n, UnitValue::of_sign(1));
    return S;
}

Shape Shape::zero(int n) {
    Shape S = identity(n);
    S.u.assign(n, UnitValue::zero());
    return S;
}

int Shape::rank() const {
    int r = 0;
    for (const auto& x : u) r += x.is_zero() ? 0 : 1;
    return r;
}

IndexSet Shape::support() const {
    IndexSet P;
    for (int i = 1; i <= n; ++i)
        if (!u[i - 1].is_zero()) P.push_back(i);
    return P;
}

IndexSet Shape::leading(int k) const {
    IndexSet P = support();
    if (k < 0 || k > static_cast<int>(P.size())) throw std::out_of_range("leading set beyond the rank");
    P.resize(k);
    return P;
}

IndexSet Shape::image(const IndexSet& I) const {
    IndexSet r;
    for (int i : I) r.push_back(tau[i - 1]);
    std::sort(r.begin(), r.end());
    return r;
}

bool Shape::is_self_adjoint(double tol) const {
    for (int i = 1; i <= n; ++i) {
        int t = tau[i - 1];
        if (tau[t - 1] != i) return false;
        if (std::abs(u[t - 1].value() - std::conj(u[i - 1].value())) > tol) return false;
    }
    return true;
}

bool Shape::is_big_cell() const {
    int M = rank();
    for (int i = 1; i <= n; ++i) {
        if (tau[i - 1] != i) return false;
        bool nz = !u[i - 1].is_zero();
        if (nz != (i <= M)) return false;
        if (nz && std::abs(std::abs(u[i - 1].value().real()) - 1.0) > 1e-9) return false;
        if (nz && std::abs(u[i - 1].value().imag()) > 1e-9) return false;
    }
    return true;
}

bool Shape::approx_equal(const Shape& o, double tol) const {
    if (n != o.n || tau != o.tau) return false;
    for (int i = 0; i < n; ++i) {
        if (u[i].is_zero() != o.u[i].is_zero()) return false;
        if (std::abs(u[i].value() - o.u[i].value()) > tol) return false;
    }
    return true;
}

std::string Shape::str() const {
    std::ostringstream os;
    os << "tau=(";
    for (int i = 0; i < n; ++i) os << (i ? "," : "") << tau[i];
    os << ") u=(";
    for (int i = 0; i < n; ++i) {
        os << (i ? "," : "");
        switch (u[i].kind) {
            case UnitValue::Kind::zero: os << "0"; break;
            case UnitValue::Kind::sign: os << (u[i].sign > 0 ? "+1" : "-1"); break;
            case UnitValue::Kind::phase: os << "e^{i" << u[i].theta << "}"; break;
        }
    }
    os << ")";
    return os.str();
}

Eigen::MatrixXcd encode(const Shape& S) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(S.n, S.n);
    for (int i = 1; i <= S.n; ++i) M(S.tau[i - 1] - 1, i - 1) = S.u[i - 1].value();
    return M;
}

Shape decode(const Eigen::MatrixXcd& M, double tol) {
    if (M.rows() != M.cols()) throw ShapeError("shape matrix must be square");
    const int n = static_cast<int>(M.rows());
    Shape S;
    S.n = n;
    S.tau.assign(n, 0);
    S.u.assign(n, UnitValue::zero());
    std::vector<bool> hit(n, false);
    for (int c = 0; c < n; ++c) {
        int row = -1;
        for (int r = 0; r < n; ++r) {
            double a = std::abs(M(r, c));
            if (a <= tol) continue;
            if (std::abs(a - 1.0) > tol) {
                throw ShapeError("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") is not unimodular");
            }
            if (row >= 0) throw ShapeError("column " + std::to_string(c + 1) + " has more than one nonzero entry");
            row = r;
        }
        if (row >= 0) {
            S.tau[c] = row + 1;
            S.u[c] = UnitValue::from_complex(M(row, c), tol);
        }
    }
    for (int c = 0; c < n; ++c)
        if (S.tau[c] != 0) {
            if (hit[S.tau[c] - 1]) throw ShapeError("two columns share a row: not a permutation pattern");
            hit[S.tau[c] - 1] = true;
        }
    for (int c = 0; c < n; ++c) {
        if (S.tau[c] != 0) continue;
        if (hit[c]) throw ShapeError("zero column " + std::to_string(c + 1) + " whose row is occupied");
        S.tau[c] = c + 1;
        hit[c] = true;
    }
    return S;
}

nlohmann::json shape_to_json(const Shape& S) {
    nlohmann::json j;
    j["n"] = S.n;
    j["tau"] = S.tau;
    nlohmann::json u = nlohmann::json::array();
    for (const auto& x : S.u) {
        switch (x.kind) {
            case UnitValue::Kind::zero: u.push_back({{"zero", true}}); break;
            case UnitValue::Kind::sign: u.push_back({{"sign", x.sign}}); break;
            case UnitValue::Kind::phase: u.push_back({{"phase", x.theta}}); break;
        }
    }
    j["u"] = u;
    return j;
}

Shape shape_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("tau") || !j.contains("u")) {
        throw ShapeError("shape JSON needs keys n, tau, u");
    }
    Shape S;
    S.n = j.at("n").get<int>();
    if (S.n < 1) throw ShapeError("shape size must be positive");
    S.tau = j.at("tau").get<std::vector<int>>();
    const auto& u = j.at("u");
    if (static_cast<int>(S.tau.size()) != S.n || !u.is_array() || static_cast<int>(u.size()) != S.n) {
        throw ShapeError("tau and u must have length n");
    }
    std::vector<bool> seen(S.n, false);
    for (int t : S.tau) {
        if (t < 1 || t > S.n || seen[t - 1]) throw ShapeError("tau is not a permutation of [n]");
        seen[t - 1] = true;
    }
    for (const auto& x : u) {
        if (x.is_string() && x.get<std::string>() == "zero") S.u.push_back(UnitValue::zero());
        else if (x.is_object() && x.contains("zero")) S.u.push_back(UnitValue::zero());
        else if (x.is_object() && x.contains("sign")) {
            int s = x.at("sign").get<int>();
            if (s != 1 && s != -1) throw ShapeError("sign entries must be +1 or -1");
            S.u.push_back(UnitValue::of_sign(s));
        } else if (x.is_object() && x.contains("phase")) {
            S.u.push_back(UnitValue::of_phase(x.at("phase").get<double>()));
        } else {
            throw ShapeError("u entries must be {\"zero\":true}, {\"sign\":±1} or {\"phase\":θ}");
        }
    }
    for (int i = 1; i <= S.n; ++i)
        if (S.u[i - 1].is_zero() && S.tau[i - 1] != i) throw ShapeError("u vanishes at a point moved by tau");
    return S;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& M) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < M.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < M.cols(); ++c) row.push_back({M(r, c).real(), M(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

Shape restrict_shape(const Shape& S) {
    if (!S.is_self_adjoint()) throw ShapeError("restriction needs a self-adjoint shape");
    if (S.n < 2) throw ShapeError("cannot restrict a shape of size 1");
    Shape R;
    R.n = S.n - 1;
    R.tau.assign(S.tau.begin(), S.tau.end() - 1);
    R.u.assign(S.u.begin(), S.u.end() - 1);
    int a = S.tau[S.n - 1];
    if (a != S.n) {
        R.tau[a - 1] = a;
        R.u[a - 1] = UnitValue::zero();
    }
    return R;
}

Shape conjugate_shape(const Shape& S, int k) {
    if (k < 1 || k >= S.n) throw std::out_of_range("transposition index out of range");
    auto c = [k](int i) { return i == k ? k + 1 : (i == k + 1 ? k : i); };
    Shape R = S;
    for (int i = 1; i <= S.n; ++i) {
        R.tau[c(i) - 1] = c(S.tau[i - 1]);
        R.u[c(i) - 1] = S.u[i - 1];
    }
    return R;
}

std::strong_ordering leading_minor_order(const Shape& a, const Shape& b) {
    int Ma = a.rank(), Mb = b.rank();
    for (int k = 1; k <= std::min(Ma, Mb); ++k) {
        IndexSet Pa = a.leading(k), Pb = b.leading(k);
        auto c = pair_cmp(Pa, a.image(Pa), Pb, b.image(Pb));
        if (c != std::strong_ordering::equal) return c;
    }
    return Ma <=> Mb;
}

std::vector<Shape> alpha_transform(const Shape& S, int k) {
    if (!S.is_self_adjoint()) throw ShapeError("coaction transform needs a self-adjoint shape");
    if (k < 1 || k >= S.n) throw std::out_of_range("coaction index out of range");
    if (S.tau[k - 1] == k + 1) {
        std::vector<Shape> out;
        for (int s : {1, -1}) {
            Shape R = S;
            R.tau[k - 1] = k;
            R.tau[k] = k + 1;
            R.u[k - 1] = UnitValue::of_sign(s);
            R.u[k] = UnitValue::of_sign(-s);
            out.push_back(R);
        }
        return out;
    }
    Shape C = conjugate_shape(S, k);
    if (leading_minor_order(C, S) < 0) return {C};
    return {S};
}

std::vector<int> eps_of_big_cell(const Shape& B) {
    if (!B.is_big_cell()) throw ShapeError("not a big-cell shape: " + B.str());
    std::vector<int> eps(B.n, 0);
    int prev = 1;
    for (int i = 0; i < B.n; ++i) {
        if (B.u[i].is_zero()) break;
        int s = B.u[i].value().real() > 0 ? 1 : -1;
        eps[i] = s * prev;
        prev = s;
    }
    return eps;
}

Shape big_cell_shape(const std::vector<int>& eps) {
    const int n = static_cast<int>(eps.size());
    Shape B = Shape::identity(n);
    int acc = 1;
    for (int i = 0; i < n; ++i) {
        acc *= eps[i];
        B.u[i] = acc == 0 ? UnitValue::zero() : UnitValue::of_sign(acc);
    }
    return B;
}

BigCellReduction reduce_to_big_cell(const Shape& S, int first_sign) {
    if (!S.is_self_adjoint()) throw ShapeError("reduction needs a self-adjoint shape");
    if (first_sign != 1 && first_sign != -1) throw std::invalid_argument("branch sign must be ±1");
    BigCellReduction out;
    Shape cur = S;
    const int N = S.n;
    const int budget = N * N * N + 1;
    for (int guard = 0; !cur.is_big_cell(); ++guard) {
        if (guard > budget) throw std::logic_error("big-cell reduction did not terminate: " + S.str());
        int i = 1;
        while (i <= N && !cur.u[i - 1].is_zero() && cur.tau[i - 1] == i &&
               std::abs(cur.u[i - 1].value().imag()) < 1e-12)
            ++i;
        if (i > N) throw std::logic_error("unsettled shape with no unsettled position: " + cur.str());
        ReductionStep step;
        if (cur.u[i - 1].is_zero()) {
            int j = i + 1;
            while (j <= N && cur.u[j - 1].is_zero()) ++j;
            if (j > N) throw std::logic_error("zero tail should already be big cell: " + cur.str());
            step.k = j - 1;
        } else if (cur.tau[i - 1] == i + 1) {
            int s = i == 1 ? first_sign : (cur.u[i - 2].value().real() > 0 ? 1 : -1);
            auto branches = alpha_transform(cur, i);
            step.k = i;
            step.split = true;
            step.chosen_sign = s;
            step.alternative = s > 0 ? branches[1] : branches[0];
            cur = s > 0 ? branches[0] : branches[1];
            out.word.push_back(step);
            continue;
        } else if (cur.tau[i - 1] > i + 1) {
            step.k = cur.tau[i - 1] - 1;
        } else {
            throw std::logic_error("unexpected pattern at position " + std::to_string(i) + ": " + cur.str());
        }
        auto next = alpha_transform(cur, step.k);
        if (next.size() != 1 || next[0].approx_equal(cur)) {
            throw std::logic_error("reduction step made no progress: " + cur.str());
        }
        cur = next[0];
        out.word.push_back(step);
    }
    out.big_cell = cur;
    out.eps = eps_of_big_cell(cur);
    return out;
}

Signature signature_of_eps(const std::vector<int>& eps) {
    Signature s;
    int acc = 1;
    for (int e : eps) {
        acc *= e;
        if (acc > 0) ++s.n_plus;
        else if (acc < 0) ++s.n_minus;
        else ++s.n_zero;
    }
    return s;
}

Signature signature(const Shape& S) {
    if (!S.is_self_adjoint()) throw ShapeError("signature needs a self-adjoint shape");
    Signature from_eps = signature_of_eps(reduce_to_big_cell(S).eps);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(encode(S));
    Signature from_matrix;
    for (int i = 0; i < S.n; ++i) {
        double ev = es.eigenvalues()(i);
        if (ev > 0.5) ++from_matrix.n_plus;
        else if (ev < -0.5) ++from_matrix.n_minus;
        else ++from_matrix.n_zero;
    }
    if (!(from_eps == from_matrix)) {
        throw std::logic_error("signature mismatch between the big-cell reduction and the eigenvalues of " + S.str());
    }
    return from_matrix;
}

Shape character_shape(int N, int k, int l, int c_sign, const std::vector<double>& y_theta) {
    if (k < 0 || l < 0 || k + l > N - l) throw std::invalid_argument("character needs k,l >= 0 and k + 2l <= N");
    if (c_sign != 1 && c_sign != -1) throw std::invalid_argument("c_sign must be ±1");
    if (!y_theta.empty() && static_cast<int>(y_theta.size()) != l) throw std::invalid_argument("need one phase per y_i");
    Shape S = Shape::identity(N);
    for (int i = 1; i <= k; ++i) S.u[i - 1] = UnitValue::zero();
    for (int i = k + 1; i <= N; ++i) S.u[i - 1] = UnitValue::of_sign(c_sign);
    for (int i = 0; i < l; ++i) {
        int a = k + i + 1, b = N - i;
        double th = y_theta.empty() ? 0.0 : y_theta[i];
        S.tau[a - 1] = b;
        S.tau[b - 1] = a;
        // S e_a = u_a e_b mirrors the entry c·ȳ_i at (b, a)
        UnitValue ua = UnitValue::from_complex(static_cast<double>(c_sign) * std::polar(1.0, -th));
        S.u[a - 1] = ua;
        S.u[b - 1] = ua.conj();
    }
    return S;
}

bool equal_up_to_cycle_phases(const Shape& a, const Shape& b, double tol) {
    if (a.n != b.n || a.tau != b.tau) return false;
    for (int i = 0; i < a.n; ++i) {
        if (a.u[i].is_zero() != b.u[i].is_zero()) return false;
        if (a.tau[i] == i + 1 && std::abs(a.u[i].value() - b.u[i].value()) > tol) return false;
    }
    return true;
}

bool is_character_shape(const Shape& S) {
    for (int l = 0; 2 * l <= S.n; ++l)
        for (int k = 0; k + 2 * l <= S.n; ++k)
            for (int c : {1, -1})
                if (equal_up_to_cycle_phases(S, character_shape(S.n, k, l, c))) return true;
    return false;
}

std::vector<Shape> enumerate_self_adjoint_shapes(int N, int rank) {
    std::vector<Shape> out;
    // involutions via recursive pairing
    std::vector<int> tau(N, 0);
    std::function<void(int)> rec = [&](int i) {
        while (i <= N && tau[i - 1] != 0) ++i;
        if (i > N) {
            int pairs = 0;
            std::vector<int> fixed;
            for (int x = 1; x <= N; ++x) {
                if (tau[x - 1] == x) fixed.push_back(x);
                else if (tau[x - 1] > x) ++pairs;
            }
            int need = rank - 2 * pairs;
            if (need < 0 || need > static_cast<int>(fixed.size())) return;
            // fixed points: u ∈ {0, +1, −1} with exactly `need` nonzero
            int F = static_cast<int>(fixed.size());
            int total = 1;
            for (int x = 0; x < F; ++x) total *= 3;
            for (int code = 0; code < total; ++code) {
                Shape S;
                S.n = N;
                S.tau = tau;
                S.u.assign(N, UnitValue::zero());
                int c = code, nz = 0;
                for (int x = 0; x < F; ++x, c /= 3) {
                    int d = c % 3;
                    if (d) {
                        S.u[fixed[x] - 1] = UnitValue::of_sign(d == 1 ? 1 : -1);
                        ++nz;
                    }
                }
                if (nz != need) continue;
                for (int x = 1; x <= N; ++x) {
                    if (tau[x - 1] > x) {
                        S.u[x - 1] = UnitValue::of_phase(0.0);
                        S.u[tau[x - 1] - 1] = UnitValue::of_phase(0.0);
                    }
                }
                out.push_back(S);
            }
            return;
        }
        tau[i - 1] = i;
        rec(i + 1);
        tau[i - 1] = 0;
        for (int j = i + 1; j <= N; ++j) {
            if (tau[j - 1] != 0) continue;
            tau[i - 1] = j;
            tau[j - 1] = i;
            rec(i + 1);
            tau[i - 1] = 0;
            tau[j - 1] = 0;
        }
    };
    rec(1);
    return out;
}

}  // namespace qrea
