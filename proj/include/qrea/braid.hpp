#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrea/combinatorics.hpp"
#include "qrea/scalars.hpp"

namespace qrea {

class NonStandardEpsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// N²×N² matrix over ExactQ; basis e_i⊗e_j has index (i-1)*N + (j-1).
struct BraidOp {
    int n = 0;
    std::vector<ExactQ> entries;  // row-major

    const ExactQ& at(int row, int col) const { return entries[static_cast<std::size_t>(row) * n * n + col]; }
    ExactQ& at(int row, int col) { return entries[static_cast<std::size_t>(row) * n * n + col]; }
    int size() const { return n * n; }
};

// Product ε_{(i,j]} = ε_{i+1}⋯ε_j (1-based, i < j).
int eps_interval(const std::vector<int>& eps, int i, int j);
bool is_standard_form(const std::vector<int>& eps);
void require_standard_form(const std::vector<int>& eps);

BraidOp build_rhat(int N);
BraidOp build_rhat_eps(int N, const std::vector<int>& eps);

// Coefficients R̂^{IJ}_{I'J'} (|I|=|J|=k, |I'|=|J'|=l) and their inverses, read off
// the braiding Λ_q^k ⊗ Λ_q^l → Λ_q^l ⊗ Λ_q^k.
class MinorCoeffTable {
public:
    MinorCoeffTable(int n, int k, int l);

    int n() const { return n_; }
    int k() const { return k_; }
    int l() const { return l_; }

    const ExactQ& coeff(const IndexSet& I, const IndexSet& J, const IndexSet& Ip, const IndexSet& Jp) const;
    const ExactQ& inverse_coeff(const IndexSet& I, const IndexSet& J, const IndexSet& Ip, const IndexSet& Jp) const;

    // Sorted "I|J|I'|J' = value" lines, zero entries omitted.
    std::string dump() const;

    // Witness descriptions of violated invariants; empty when all hold.
    std::vector<std::string> check_support() const;
    std::vector<std::string> check_diagonal() const;
    std::vector<std::string> check_inverse() const;

private:
    std::size_t index(const IndexSet& I, const IndexSet& J, const IndexSet& Ip, const IndexSet& Jp) const;

    int n_, k_, l_;
    std::size_t nk_, nl_;
    std::vector<ExactQ> coeffs_;
    std::vector<ExactQ> inverse_;
};

// Cached per (N,k,l); 0 ≤ k,l ≤ N. Throws CalibrationError if an invariant fails.
std::shared_ptr<const MinorCoeffTable> minor_coeffs(int N, int k, int l);

struct IdentityFailure {
    std::string witness;
    std::string residual;
};

struct IdentityReport {
    std::string id;
    int n = 0;
    std::size_t instances = 0;
    std::vector<IdentityFailure> failures;
    bool pass() const { return failures.empty(); }
};

// id ∈ {braid, hecke, selfadjoint, coeff-support, coeff-diagonal, coeff-inverse}
IdentityReport verify_braid(const std::string& id, int N);

}  // namespace qrea
