#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrea/shapes.hpp"

namespace qrea {

struct CentralCharacter {
    std::vector<double> values;  // s_1..s_N
};

struct BigCellWeight {
    std::vector<int> eps;   // standard form, length N
    std::vector<double> r;  // length M = rank(eps)
};

class ClassifyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

bool is_epsilon_adapted(const std::vector<int>& eps, const std::vector<double>& r, double tol = 1e-9);

// x_i = ε_{(0,i]} q^{2 r_i + 2i − 2}, zero beyond the rank.
std::vector<double> hc_arguments(const std::vector<int>& eps, const std::vector<double>& r, double q0);
CentralCharacter central_from_weight(const std::vector<int>& eps, const std::vector<double>& r, double q0);

// Roots of t^N − s_1 t^{N−1} + s_2 t^{N−2} − … by companion-matrix eigensolve.
std::vector<std::complex<double>> central_roots(const CentralCharacter& s);

struct WeightDecoding {
    BigCellWeight weight;
    std::vector<double> roots;  // x_1..x_N as assigned
};

// sign_pattern gives ε_{(0,i]} for i = 1..N (0 beyond the rank). Within each sign class the roots
// are assigned to increasing positions by decreasing modulus.
WeightDecoding weight_from_central(const CentralCharacter& s, const std::vector<int>& sign_pattern, double q0,
                                   double tol = 1e-8);
// Default pattern (+…+, −…−, 0…0).
WeightDecoding weight_from_central(const CentralCharacter& s, const Signature& sig, double q0, double tol = 1e-8);

// ε_{(0,i]} pattern for a shape: cycles in ◁ order, a fixed point contributes u_i, a 2-cycle
// contributes (+1, −1) relative to the running sign so that ε_j = −1 on W_ε.
std::vector<int> shape_sign_pattern(const Shape& S);
std::vector<int> eps_from_prefix(const std::vector<int>& prefix);

double zsk_weight_formula(const Shape& S, const std::vector<double>& r, int k);

// Character highest weights at the displayed index x = N − 2k + 4.
struct CharacterWeights {
    int index = 0;
    double z_kk = 0, z_n1_abs = 0, z_nn = 0;
};
CharacterWeights character_hw(int N, int k, int eps1, double r1, double rx, double q0);
// Inverse: recover (ε₁, r₁, r_x) from measured Z_kk and Z_NN.
struct CharacterWeightFit {
    int index = 0;
    int eps1 = 0;
    double r1 = 0, rx = 0;
};
CharacterWeightFit character_hw_fit(int N, int k, double z_kk, double z_nn, double q0);

// Shifted permutation exchanging positions i < j of an adapted weight.
BigCellWeight shifted_permutation(const BigCellWeight& w, int i, int j);

struct Label {
    Shape shape;
    CentralCharacter central;
    std::optional<BigCellWeight> weight;
};

struct LabelVerdict {
    bool valid = false;
    std::string reason;
    std::optional<BigCellWeight> weight;
};

LabelVerdict validate_label(const Shape& S, const CentralCharacter& s, double q0);
// Sample labels: every self-adjoint shape of the rank with `per_shape` adapted weights.
std::vector<Label> enumerate_labels(int N, int rank, std::size_t limit, double q0, int per_shape = 2);

nlohmann::json label_to_json(const Label& L);
Label label_from_json(const nlohmann::json& j);

}  // namespace qrea
