#pragma once

#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <json.hpp>

#include "qrea/combinatorics.hpp"
#include "qrea/rea.hpp"
#include "qrea/shapes.hpp"

namespace qrea {

using Cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<Cplx>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr int kUnbounded = std::numeric_limits<int>::max() / 4;

class RepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// π(Z_ij) on a (possibly truncated) space. headroom[v] is the largest polynomial degree in the Z_ij
// whose action on basis vector v is unaffected by truncation; kUnbounded for exact spaces.
struct OperatorGrid {
    int n = 0;
    double q0 = 0.5;
    int dim = 0;
    std::vector<SpMat> Z;  // (i-1)*n + (j-1)
    std::vector<int> headroom;
    double tol = 1e-8;
    nlohmann::json provenance;

    const SpMat& z(int i, int j) const { return Z[static_cast<std::size_t>((i - 1) * n + (j - 1))]; }
    SpMat& z(int i, int j) { return Z[static_cast<std::size_t>((i - 1) * n + (j - 1))]; }
    // Basis indices exact up to the given degree.
    std::vector<int> interior(int degree) const;
    // The O_q(H(n-1)) representation given by the Z_ij with i,j < n.
    OperatorGrid restricted() const;
    // Compression onto an orthonormal block V whose columns stay inside the exact region.
    OperatorGrid compressed(const Mat& V, int degree_budget) const;
};

struct CharacterParams {
    int n = 1, k = 0, l = 0;
    double a = 1.0, c = 1.0;
    std::vector<double> y_theta;  // phases of y_0..y_{l-1}
};

OperatorGrid character_rep(const CharacterParams& p, double q0);
Mat character_matrix(const CharacterParams& p);

struct Su2Rep {
    SpMat X11, X12, X21, X22;
};
Su2Rep su2_s(int d, double q0);

// (id ⊗ s_i) ∘ Ad: Z'_ab = Σ Z_kl ⊗ X_ka^† X_lb on the new leg of size d.
OperatorGrid apply_alpha(const OperatorGrid& rep, int i, int d);
// Same coaction with the s-factor replaced by the counit.
OperatorGrid apply_alpha_trivial(const OperatorGrid& rep, int i);

// RE residual max-entry over interior columns (degree-2 exact region).
double re_residual(const OperatorGrid& rep);
double hermiticity_defect(const OperatorGrid& rep);

// Highest-weight module of O_q^ε(T(N)) truncated at total lowering height `cutoff`.
struct VermaModule {
    int n = 0;
    double q0 = 0.5;
    std::vector<int> eps;
    std::vector<double> r;  // length n; entries beyond the rank are 0
    int cutoff = 0;
    int dim = 0;
    std::vector<Eigen::MatrixXd> T;  // upper triangle, (i-1)*n + (j-1)
    std::vector<int> height;         // per orthonormal vector
    bool complete = false;           // N-1 consecutive empty heights below the cutoff
    double min_gram_ratio = 0.0;     // most negative block eigenvalue / block max
    std::string gram_witness;
    std::size_t pbw_size = 0;

    const Eigen::MatrixXd& t(int i, int j) const { return T[static_cast<std::size_t>((i - 1) * n + (j - 1))]; }
    int headroom(int v) const;
};

class UnitarityError : public RepError {
public:
    using RepError::RepError;
};

// Builds the module regardless of adaptedness; Gram failures are recorded, not thrown.
VermaModule verma_module(const std::vector<int>& eps, const std::vector<double>& r, int cutoff, double q0);
// Z = T^* 1_ε T. Throws on non-adapted r or a Gram negative beyond tolerance.
OperatorGrid verma_big_cell(const std::vector<int>& eps, const std::vector<double>& r, int cutoff, double q0);
// Ad^T with a module of O_q(T(N)) (all-positive ε): Z'_ab = Σ Z_kl ⊗ T_ka^* T_lb.
OperatorGrid apply_t_coaction(const OperatorGrid& rep, const VermaModule& V);

// Evaluates quantum minors by the numeric Laplace recursion, on a fixed block of vectors.
template <class Block>
class MinorEvaluator {
public:
    MinorEvaluator(const OperatorGrid& rep, Block base);
    const Block& apply(const IndexSet& I, const IndexSet& J);

private:
    const OperatorGrid& rep_;
    Block base_;
    std::map<std::pair<IndexSet, IndexSet>, Block> cache_;
};

SpMat minor_op(const OperatorGrid& rep, const IndexSet& I, const IndexSet& J);
// Evaluates an REA element on the columns of V (words act right to left).
Mat eval_poly(const OperatorGrid& rep, const NCPoly& p, const Mat& V);

// Seeded random combinations of basis vectors exact up to `degree`; orthonormal columns.
Mat test_vectors(const OperatorGrid& rep, int degree, int count, std::uint64_t seed);

struct CentralValues {
    std::vector<double> values;
    double scalar_defect = 0.0;  // max over k of ‖σ_k v − s_k v‖ on the test block
    double imag_part = 0.0;
};
CentralValues central_values(const OperatorGrid& rep, std::uint64_t seed = 7);

struct DetectOptions {
    double tol = 1e-7;  // relative vanishing threshold
    int vectors = 4;
    std::uint64_t seed = 11;
};

struct ShapeDetection {
    Shape shape;
    std::vector<IndexPair> leading;  // detected Z_{S,k}
    std::vector<double> norms;       // ‖Z_{S,k} V‖
    double max_vanishing = 0.0;      // largest relative norm among pairs declared zero
    double positivity_defect = 0.0;
};

// Detect on the span of V (orthonormal columns, exact for degree n); empty V uses test_vectors.
ShapeDetection detect_shape(const OperatorGrid& rep, const Mat& V = Mat(), const DetectOptions& opt = {});

// Orthonormal bases of the two blocks of α_k V separated by the sign of α_k(Z_{P_[m],P_[m]}).
struct SplitBlocks {
    IndexSet pm;  // P_[m] of the input shape
    Mat plus, minus;
    std::vector<double> plus_eigs, minus_eigs;  // kept eigenvalues, by decreasing modulus
};
// W restricts the search to a subspace (orthonormal columns); empty W uses the basis exact to degree N+1.
// Eigenvectors are kept when ‖Ox − λx‖ ≤ res_tol·|λ|.
SplitBlocks split_blocks(const OperatorGrid& rep, const IndexSet& pm, const Mat& W = Mat(), int keep = 6,
                         double res_tol = 1e-9);

std::pair<double, double> split_weights(double w_tau, double w_plus, double w_minus, double q0, double tol = 1e-10);

struct WeightReport {
    std::vector<IndexPair> operators;  // ordered coordinates
    std::vector<double> hw;            // |eigenvalue| per coordinate on the highest-weight space
    std::vector<Cplx> hw_eigen;
    int hw_multiplicity = 0;
    Vec hw_vector;
    double eigen_residual = 0.0;  // max ‖Ov − λv‖ / max(1,|λ|) for the reported vector
};

std::vector<IndexPair> weight_coordinates(const Shape& S);
// Greedy lexicographic maximization over compressions to the span of W.
WeightReport weight_analysis(const OperatorGrid& rep, const Shape& S, const Mat& W, double cluster_tol = 1e-7);

struct RepCheck {
    std::string id;
    std::size_t instances = 0, skipped = 0;
    double max_residual = 0.0;
    std::string worst;
    bool pass(double tol) const { return max_residual <= tol; }
};

// ids: qcomm, qcomm-restricted, weight-rel-1, weight-rel-2, gen-rel-4.1, AS-annihilation, ZS0-scalar.
// hw is the highest-weight vector for the last two (ignored otherwise).
RepCheck verify_in_rep(const std::string& id, const OperatorGrid& rep, const Shape& S, const Mat& V,
                       const Vec& hw = Vec());

// Replays a chain spec with every s-factor replaced by the trivial representation.
OperatorGrid uq_limit(const OperatorGrid& rep);

// Chain-spec JSON -> representation.
OperatorGrid build_from_spec(const nlohmann::json& spec);

// Finite-dimensional splitting through a random hermitian commutant element.
std::vector<Mat> irreducible_blocks(const OperatorGrid& rep, std::uint64_t seed = 5, double tol = 1e-9);

}  // namespace qrea
