#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qrea/combinatorics.hpp"
#include "qrea/scalars.hpp"

namespace qrea {

// Entry of u: zero, an exact sign ±1, or a numeric phase e^{iθ}.
struct UnitValue {
    enum class Kind { zero, sign, phase };
    Kind kind = Kind::zero;
    int sign = 0;
    double theta = 0.0;

    static UnitValue zero() { return {}; }
    static UnitValue of_sign(int s) { return {Kind::sign, s, 0.0}; }
    static UnitValue of_phase(double t) { return {Kind::phase, 0, t}; }
    // Sign tag when the value is ±1 within tol, otherwise a phase; zero when |z| ≤ tol.
    static UnitValue from_complex(FloatC z, double tol = 1e-9);

    bool is_zero() const { return kind == Kind::zero; }
    FloatC value() const;
    UnitValue conj() const;
};

struct Shape {
    int n = 0;
    std::vector<int> tau;      // tau[i-1] = τ(i)
    std::vector<UnitValue> u;  // u[i-1]

    static Shape identity(int n);
    static Shape zero(int n);

    int rank() const;
    IndexSet support() const;          // P = {i : u_i ≠ 0}, increasing
    IndexSet leading(int k) const;     // P_[k]
    IndexSet image(const IndexSet& I) const;  // τ(I), sorted
    bool is_self_adjoint(double tol = 1e-9) const;
    bool is_big_cell() const;
    bool approx_equal(const Shape& o, double tol = 1e-9) const;
    std::string str() const;
};

struct Signature {
    int n_plus = 0, n_minus = 0, n_zero = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Eigen::MatrixXcd encode(const Shape& S);
// Throws ShapeError on a non-unimodular entry, several nonzeros in a column, or a non-permutation pattern.
Shape decode(const Eigen::MatrixXcd& M, double tol = 1e-9);

nlohmann::json shape_to_json(const Shape& S);
Shape shape_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& M);

Shape restrict_shape(const Shape& S);

// c_k S c_k, with c_k the transposition of k, k+1.
Shape conjugate_shape(const Shape& S, int k);
// Predicted shape(s) of α_k V: two when τ(k) = k+1, otherwise c_kSc_k if it sits strictly lower
// in the leading-minor order, else S.
std::vector<Shape> alpha_transform(const Shape& S, int k);
// Sequence of (P_[k], τ(P_[k])) compared lexicographically with pair_cmp; shorter support ranks first.
std::strong_ordering leading_minor_order(const Shape& a, const Shape& b);

struct ReductionStep {
    int k = 0;
    bool split = false;
    int chosen_sign = 0;  // sign placed at position k by the chosen branch
    Shape alternative;    // the other branch (split steps only)
};

struct BigCellReduction {
    std::vector<int> eps;
    std::vector<ReductionStep> word;
    Shape big_cell;
};

// first_sign selects the branch of a split occurring at position 1.
BigCellReduction reduce_to_big_cell(const Shape& S, int first_sign = 1);
std::vector<int> eps_of_big_cell(const Shape& B);
Shape big_cell_shape(const std::vector<int>& eps);

Signature signature(const Shape& S);
Signature signature_of_eps(const std::vector<int>& eps);

// Shape of χ_{k,l,a,c,y} (a > 0): c_sign = sign of c, y_theta[i] the phase of y_i.
Shape character_shape(int N, int k, int l, int c_sign = 1, const std::vector<double>& y_theta = {});
// Equality ignoring the phases on 2-cycles (a convention of the coaction); fixed points must agree.
bool equal_up_to_cycle_phases(const Shape& a, const Shape& b, double tol = 1e-9);
// Some character_shape(N, k, l, ±1, ·) up to 2-cycle phases.
bool is_character_shape(const Shape& S);

struct WeightCombinatorics {
    std::vector<IndexSet> cycles;        // τ-cycles on P ordered by max element
    std::vector<double> w_r;             // W_r(t_i)
    std::vector<std::vector<int>> r_blocks;  // indices of r assigned to each cycle
    IndexSet w_eps;

    int cycle_of(int i) const;  // position in `cycles`, −1 if i ∉ P
    IndexSet closure(const IndexSet& I, const IndexSet& J) const;
    double w_r_of(const IndexSet& X) const;  // X must be a union of cycles
};

WeightCombinatorics weight_combinatorics(const Shape& S, const std::vector<double>& r);
// 𝔑_{S,k} as cycle positions, increasing in the cycle order.
std::vector<int> frak_n(const Shape& S, const WeightCombinatorics& W, int k);
// 𝔠_{S,k} = (𝔠_0, …, 𝔠_{|𝔑|−1}).
std::vector<int> frak_c(const Shape& S, const WeightCombinatorics& W, int k);

struct IndexPair {
    IndexSet I, J;
    friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

struct IdealMinors {
    std::vector<IndexPair> vanishing;
    std::vector<IndexPair> zsk;                     // Z_{S,k} = (τ(P_[k]), P_[k]), k = 1..M
    std::vector<std::vector<IndexPair>> restricted;  // restricted[m-1]: Z_{↓^m S, k}
};

IdealMinors ideal_minors(const Shape& S);

// Self-adjoint shapes of the given rank; fixed points carry u ∈ {±1}, 2-cycles one representative phase.
std::vector<Shape> enumerate_self_adjoint_shapes(int N, int rank);

}  // namespace qrea
