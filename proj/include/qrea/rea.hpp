#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "qrea/braid.hpp"
#include "qrea/combinatorics.hpp"
#include "qrea/scalars.hpp"

namespace qrea {

// Generator Z_ij is stored as the byte (i-1)*N + (j-1); this is also the row-major key order.
using Word = std::vector<std::uint8_t>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

struct NCPoly {
    int n = 0;
    std::map<Word, ExactQ> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const Word& w, const ExactQ& c);
    void add(const NCPoly& p, const ExactQ& scale = ExactQ(1));
    NCPoly scaled(const ExactQ& c) const;
    // "(<coeff>)*Z[i,j]*Z[k,l] + ..." in word order; "0" when empty.
    std::string str() const;
    friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.n == b.n && a.terms == b.terms; }
};

class RewriteBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Normal-form engine for O_q(H(N)).
class Rea {
public:
    explicit Rea(int n);

    int n() const { return n_; }
    std::uint8_t gen(int i, int j) const;
    std::pair<int, int> indices(std::uint8_t g) const { return {g / n_ + 1, g % n_ + 1}; }

    NCPoly one() const;
    NCPoly generator(int i, int j) const;
    NCPoly word(const Word& w) const;  // normal form of a free word

    NCPoly normal_form(const NCPoly& p) const;
    // Rewrites a uniformly random out-of-order adjacent pair at each step; no word memo.
    NCPoly normal_form_randomized(const NCPoly& p, std::mt19937_64& rng) const;
    bool is_normal(const Word& w) const;

    NCPoly mul(const NCPoly& a, const NCPoly& b) const;
    NCPoly commutator(const NCPoly& a, const NCPoly& b) const;
    NCPoly star(const NCPoly& p) const;

    // Terms of the reflection-equation relation for the pair Z_ij Z_kl, as a free expression equal to zero.
    std::map<Word, ExactQ> relation(int i, int j, int k, int l) const;
    // Normal form of the out-of-order product g1*g2 (g1 > g2).
    const NCPoly& rule(std::uint8_t g1, std::uint8_t g2) const;

    static constexpr std::size_t kStepBudget = 1000000;

private:
    const NCPoly& word_nf(const Word& w, std::size_t& steps) const;
    NCPoly compute_word_nf(const Word& w, std::size_t& steps) const;

    int n_;
    std::vector<NCPoly> rules_;  // indexed g1 * n² + g2
    std::vector<bool> rule_ready_;
    mutable std::mutex mu_;
    mutable std::unordered_map<Word, std::unique_ptr<NCPoly>, WordHash> memo_;
};

// Shared engine per N.
std::shared_ptr<const Rea> rea_for(int n);

// Quantum minors by Laplace recursion, memoized per engine.
class Minors {
public:
    explicit Minors(std::shared_ptr<const Rea> rea);

    const Rea& rea() const { return *rea_; }
    int n() const { return rea_->n(); }

    // Z_{I,J}; the empty minor is 1. First expansion with m = 1, K = {1}.
    const NCPoly& minor(const IndexSet& I, const IndexSet& J) const;
    // which ∈ {1,2,3,4}: the four Laplace expansions with general m and K ⊆ [k], |K| = m.
    NCPoly laplace(int which, const IndexSet& I, const IndexSet& J, int m, const IndexSet& K) const;

private:
    std::shared_ptr<const Rea> rea_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<IndexSet, IndexSet>, std::unique_ptr<NCPoly>> cache_;
};

std::shared_ptr<const Minors> minors_for(int n);

NCPoly quantum_minor(int n, const IndexSet& I, const IndexSet& J);
NCPoly sigma(int k, int n);

// Kills Z_ij with i ≤ M or j ≤ M, relabels by −M, renormalizes in O_q(H(N−M)).
NCPoly project_quotient(const NCPoly& p, int M);

struct VerifyParams {
    std::size_t samples = 0;  // 0: exhaustive
    std::uint64_t seed = 1;
};

// id ∈ {laplace-agreement, general-comm, muir-1, muir-2, centrality, qdet-sigma, laplace-star-link}
IdentityReport verify_identity(const std::string& id, int n, const VerifyParams& params = {});

}  // namespace qrea
